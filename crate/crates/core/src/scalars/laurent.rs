//! Laurent polynomials in `s` over Q(i), with the univariate gcd machinery
//! needed to keep fractions in lowest terms.

use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRat;

/// Sparse Laurent polynomial. Terms are sorted by ascending exponent and
/// never carry a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(i32, GaussRat)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: GaussRat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (i32, GaussRat)>>(it: I) -> Self {
        let mut v: Vec<(i32, GaussRat)> = it.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, GaussRat)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i32, GaussRat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True when the polynomial has no `s` dependence (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| *e == 0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&GaussRat> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> GaussRat {
        self.terms
            .binary_search_by_key(&exp, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    /// Substitution `s -> s^-1`.
    pub fn invert_var(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval_at_one(&self) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (_, c) in &self.terms {
            acc += c;
        }
        acc
    }

    /// Shifts so that the lowest exponent is zero.
    fn normalized_shift(&self) -> Self {
        match self.min_exp() {
            Some(m) if m != 0 => self.shift(-m),
            _ => self.clone(),
        }
    }

    fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Polynomial long division for exponents >= 0. Returns `(quotient, remainder)`.
    fn poly_div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dmax = divisor.max_exp().expect("division by zero polynomial");
        let dlc_inv = divisor.leading_coeff().unwrap().inv().unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(rmax) = rem.max_exp() {
            if rmax < dmax {
                break;
            }
            let c = rem.leading_coeff().unwrap() * &dlc_inv;
            let k = rmax - dmax;
            rem = &rem - &divisor.shift(k).scale(&c);
            quot.push((k, c));
        }
        (Self::from_terms(quot), rem)
    }

    /// Monic gcd, normalized to lowest exponent zero. Units `c s^k` are ignored.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalized_shift();
        let mut b = other.normalized_shift();
        while !b.is_zero() {
            let (_, r) = a.poly_div_rem(&b);
            a = b;
            b = r.normalized_shift();
        }
        a.normalized_shift().make_monic()
    }

    /// Exact division by a polynomial `g` with nonzero constant term.
    /// Panics when the division leaves a remainder.
    pub fn exact_div(&self, g: &Self) -> Self {
        let m = self.min_exp().unwrap_or(0);
        let (q, r) = self.shift(-m).poly_div_rem(g);
        assert!(r.is_zero(), "inexact Laurent division");
        q.shift(m)
    }

    /// Degree spread `max - min`; zero for constants and the zero polynomial.
    pub fn spread(&self) -> i32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc.push((ea + eb, ca * cb));
            }
        }
        Laurent::from_terms(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().map(|&(e, c)| (e, GaussRat::from_int(c))))
    }

    #[test]
    fn gcd_of_q_minus_qinv_and_s_minus_sinv() {
        // s^2 - s^-2 and s - s^-1 share the factor s^2 - 1 after clearing powers of s.
        let a = p(&[(-2, -1), (2, 1)]);
        let b = p(&[(-1, -1), (1, 1)]);
        assert_eq!(a.gcd(&b), p(&[(0, -1), (2, 1)]));
    }

    #[test]
    fn exact_division_keeps_negative_exponents() {
        let g = p(&[(0, 1), (1, 1)]);
        let a = &g * &p(&[(-3, 2), (1, 5)]);
        assert_eq!(a.exact_div(&g), p(&[(-3, 2), (1, 5)]));
    }

    #[test]
    fn invert_var_reverses_exponents() {
        let a = p(&[(-1, 3), (2, 1)]);
        assert_eq!(a.invert_var(), p(&[(-2, 1), (1, 3)]));
    }
}
