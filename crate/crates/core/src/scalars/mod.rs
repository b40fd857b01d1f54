//! Exact coefficient arithmetic.
//!
//! Every coefficient in the library is a [`Scalar`]: a fraction whose
//! numerator lives in `L[t]/(t^2 - s - s^-1)` and whose denominator lives in
//! `L`, where `L = Q(i)[s, s^-1]` and `s = q^{1/2}`. The deformation parameter
//! itself is `q = s^2`. Values are kept in a unique canonical form, so equality
//! is structural.

mod gauss;
mod laurent;
mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gauss::GaussRat;
pub use laurent::Laurent;
pub use text::ParseScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at s = 1")]
    PoleAtOne,
    #[error("t-dependence remains; classical limit undefined")]
    ResidualT,
}

/// Which reality regime the deformation parameter lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjRegime {
    /// `q` real: bar conjugates coefficients and fixes `s`.
    #[serde(rename = "real")]
    RealQ,
    /// `|q| = 1`: bar conjugates coefficients and sends `s` to `s^-1`.
    #[serde(rename = "unit")]
    UnitModulusQ,
}

impl fmt::Display for ConjRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjRegime::RealQ => "real",
            ConjRegime::UnitModulusQ => "unit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `(num + tnum * t) / den`, canonical: `gcd(num, tnum, den) = 1`, `den` is a
/// monic polynomial in `s` with nonzero constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    tnum: Laurent,
    den: Laurent,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: Laurent::zero(),
            tnum: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRat::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_gauss(GaussRat::from_int(v))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }

    pub fn from_laurent(p: Laurent) -> Self {
        Self {
            num: p,
            tnum: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    /// `s^k = q^{k/2}`.
    pub fn s_pow(k: i32) -> Self {
        Self::from_laurent(Laurent::monomial(k, GaussRat::one()))
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// The adjoined square root `t` with `t^2 = s + s^-1`.
    pub fn t() -> Self {
        Self {
            num: Laurent::zero(),
            tnum: Laurent::one(),
            den: Laurent::one(),
        }
    }

    /// Assembles `(num + tnum * t) / den` and brings it to canonical form.
    pub fn from_parts(num: Laurent, tnum: Laurent, den: Laurent) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self { num, tnum, den }.normalized())
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn t_numerator(&self) -> &Laurent {
        &self.tnum
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() && self.tnum.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.tnum.is_zero() && self.den.is_one()
    }

    /// True when the value is a Gaussian rational (no `s`, no `t`, no fraction).
    pub fn is_constant(&self) -> bool {
        self.tnum.is_zero() && self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn has_t(&self) -> bool {
        !self.tnum.is_zero()
    }

    /// Rough size measure used for pivot selection.
    pub fn complexity(&self) -> usize {
        self.num.len() + self.tnum.len() + self.den.len()
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() && self.tnum.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return self;
        }
        let Scalar {
            mut num,
            mut tnum,
            mut den,
        } = self;
        let mut g = den.gcd(&num);
        if !tnum.is_zero() && g.spread() > 0 {
            g = g.gcd(&tnum);
        }
        if g.spread() > 0 {
            num = num.exact_div(&g);
            tnum = tnum.exact_div(&g);
            den = den.exact_div(&g);
        }
        let m = den.min_exp().unwrap();
        if m != 0 {
            num = num.shift(-m);
            tnum = tnum.shift(-m);
            den = den.shift(-m);
        }
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            tnum = tnum.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, tnum, den }
    }

    fn t_squared() -> Laurent {
        Laurent::from_terms([(-1, GaussRat::one()), (1, GaussRat::one())])
    }

    /// `(a + b t)(c + d t)` reduced by `t^2 = s + s^-1`.
    fn mul_t(a: &Laurent, b: &Laurent, c: &Laurent, d: &Laurent) -> (Laurent, Laurent) {
        let mut plain = a * c;
        if !b.is_zero() && !d.is_zero() {
            plain = &plain + &(&(b * d) * &Self::t_squared());
        }
        let tpart = &(a * d) + &(b * c);
        (plain, tpart)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // 1/(a + b t) = (a - b t) / (a^2 - b^2 (s + s^-1))
        let norm = &(&self.num * &self.num) - &(&(&self.tnum * &self.tnum) * &Self::t_squared());
        let num = &self.den * &self.num;
        let tnum = -&(&self.den * &self.tnum);
        Self::from_parts(num, tnum, norm)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Entry point mirroring the four field operations.
    pub fn arith(a: &Self, b: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        Ok(match op {
            ArithOp::Add => a + b,
            ArithOp::Sub => a - b,
            ArithOp::Mul => a * b,
            ArithOp::Div => a.checked_div(b)?,
        })
    }

    /// Complex conjugation of the coefficient field, extended per regime.
    /// `t` is fixed in both regimes since `s + s^-1` is.
    pub fn bar(&self, regime: ConjRegime) -> Self {
        match regime {
            ConjRegime::RealQ => Self {
                num: self.num.conj(),
                tnum: self.tnum.conj(),
                den: self.den.conj(),
            },
            ConjRegime::UnitModulusQ => Self {
                num: self.num.conj().invert_var(),
                tnum: self.tnum.conj().invert_var(),
                den: self.den.conj().invert_var(),
            }
            .normalized(),
        }
    }

    /// Evaluation at `s = 1`.
    pub fn classical_limit(&self) -> Result<GaussRat, ScalarError> {
        if self.has_t() {
            return Err(ScalarError::ResidualT);
        }
        let d = self.den.eval_at_one();
        let inv = d.inv().ok_or(ScalarError::PoleAtOne)?;
        Ok(&self.num.eval_at_one() * &inv)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::from_gauss(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let out = Scalar {
                num: &self.num + &rhs.num,
                tnum: &self.tnum + &rhs.tnum,
                den: self.den.clone(),
            };
            return out.normalized();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let tnum = &(&self.tnum * &rhs.den) + &(&rhs.tnum * &self.den);
        Scalar {
            num,
            tnum,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            tnum: -&self.tnum,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let (num, tnum) = Scalar::mul_t(&self.num, &self.tnum, &rhs.num, &rhs.tnum);
        let out = Scalar {
            num,
            tnum,
            den: &self.den * &rhs.den,
        };
        if self.den.is_one() && rhs.den.is_one() {
            if out.num.is_zero() && out.tnum.is_zero() {
                return Scalar::zero();
            }
            return out;
        }
        out.normalized()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_factor() {
        let a = Scalar::q() - Scalar::q_pow(-1);
        assert_eq!(&a * &Scalar::one(), a);
        assert_eq!(a.to_string(), "-1/1*s^-2 + 1/1*s^2");
    }

    #[test]
    fn t_squares_to_s_plus_sinv() {
        let tt = &Scalar::t() * &Scalar::t();
        assert_eq!(tt, Scalar::s_pow(1) + Scalar::s_pow(-1));
    }

    #[test]
    fn quotient_cancels_to_polynomial() {
        let a = Scalar::s_pow(2) - Scalar::s_pow(-2);
        let b = Scalar::s_pow(1) - Scalar::s_pow(-1);
        let c = Scalar::arith(&a, &b, ArithOp::Div).unwrap();
        assert_eq!(c, Scalar::s_pow(1) + Scalar::s_pow(-1));
        assert!(c.denominator().is_one());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            Scalar::arith(&Scalar::one(), &Scalar::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn bar_per_regime() {
        assert_eq!(Scalar::q().bar(ConjRegime::RealQ), Scalar::q());
        assert_eq!(Scalar::q().bar(ConjRegime::UnitModulusQ), Scalar::q_pow(-1));
        let is = &Scalar::i() * &Scalar::s_pow(1);
        let expected = -(&Scalar::i() * &Scalar::s_pow(-1));
        assert_eq!(is.bar(ConjRegime::UnitModulusQ), expected);
    }

    #[test]
    fn classical_limits() {
        let dq = Scalar::q() - Scalar::q_pow(-1);
        assert!(dq.classical_limit().unwrap().is_zero());
        assert!(Scalar::s_pow(-2).classical_limit().unwrap().is_one());
        let ds = Scalar::s_pow(1) - Scalar::s_pow(-1);
        let ratio = dq.checked_div(&ds).unwrap();
        assert_eq!(ratio.classical_limit().unwrap(), GaussRat::from_int(2));
    }

    #[test]
    fn classical_limit_errors() {
        let pole = Scalar::one().checked_div(&(Scalar::q() - Scalar::one())).unwrap();
        assert_eq!(pole.classical_limit(), Err(ScalarError::PoleAtOne));
        assert_eq!(Scalar::t().classical_limit(), Err(ScalarError::ResidualT));
    }

    #[test]
    fn inverse_of_t_expression() {
        let x = Scalar::one() + &Scalar::t() * &Scalar::s_pow(1);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn denominator_is_monic_with_unit_constant_shift() {
        let x = Scalar::one()
            .checked_div(&(Scalar::from_int(2) * Scalar::s_pow(3) + Scalar::s_pow(5)))
            .unwrap();
        assert_eq!(x.denominator().min_exp(), Some(0));
        assert!(x.denominator().leading_coeff().unwrap().is_one());
    }
}
