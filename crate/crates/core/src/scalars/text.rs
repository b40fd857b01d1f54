//! Canonical text form: terms `c*s^k` or `c*t*s^k`, `k` ascending, joined by
//! ` + `; the empty sum prints `0`. Fractions print as `(num)/(den)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{GaussRat, Laurent, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse scalar from {0:?}")]
pub struct ParseScalarError(pub String);

fn write_terms(f: &mut fmt::Formatter<'_>, plain: &Laurent, tpart: &Laurent) -> fmt::Result {
    let mut all: Vec<(i32, u8, &GaussRat)> = plain
        .terms()
        .iter()
        .map(|(e, c)| (*e, 0u8, c))
        .chain(tpart.terms().iter().map(|(e, c)| (*e, 1u8, c)))
        .collect();
    if all.is_empty() {
        return f.write_str("0");
    }
    all.sort_by_key(|(e, t, _)| (*e, *t));
    for (idx, (e, t, c)) in all.iter().enumerate() {
        if idx > 0 {
            f.write_str(" + ")?;
        }
        if *t == 1 {
            write!(f, "{c}*t*s^{e}")?;
        } else {
            write!(f, "{c}*s^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_terms(f, &self.num, &self.tnum);
        }
        f.write_str("(")?;
        write_terms(f, &self.num, &self.tnum)?;
        f.write_str(")/(")?;
        write_terms(f, &self.den, &Laurent::zero())?;
        f.write_str(")")
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn parse_coeff(s: &str) -> Option<GaussRat> {
    match s.strip_suffix("*i") {
        Some(body) => {
            // `a/b+c/d`; the separator is the first '+' after the real part's '/'.
            let slash = body.find('/')?;
            let plus = slash + body[slash..].find('+')?;
            let re = parse_ratio(&body[..plus])?;
            let im = parse_ratio(&body[plus + 1..])?;
            Some(GaussRat::new(re, im))
        }
        None => Some(GaussRat::real(parse_ratio(s)?)),
    }
}

fn parse_terms(s: &str) -> Option<(Laurent, Laurent)> {
    if s == "0" {
        return Some((Laurent::zero(), Laurent::zero()));
    }
    let mut plain = Vec::new();
    let mut tpart = Vec::new();
    for term in s.split(" + ") {
        let (head, exp) = term.rsplit_once("*s^")?;
        let exp: i32 = exp.parse().ok()?;
        match head.strip_suffix("*t") {
            Some(c) => tpart.push((exp, parse_coeff(c)?)),
            None => plain.push((exp, parse_coeff(head)?)),
        }
    }
    Some((Laurent::from_terms(plain), Laurent::from_terms(tpart)))
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (n, d) = inner.split_once(")/(").ok_or_else(err)?;
            let (num, tnum) = parse_terms(n).ok_or_else(err)?;
            let (den, dt) = parse_terms(d).ok_or_else(err)?;
            if !dt.is_zero() {
                return Err(err());
            }
            return Scalar::from_parts(num, tnum, den).map_err(|_| err());
        }
        let (num, tnum) = parse_terms(s).ok_or_else(err)?;
        Scalar::from_parts(num, tnum, Laurent::one()).map_err(|_| err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!("0".parse::<Scalar>().unwrap(), Scalar::zero());
    }

    #[test]
    fn mixed_terms_order_by_exponent_then_t() {
        let x = Scalar::t() * Scalar::s_pow(-1) + Scalar::s_pow(-1) + Scalar::i();
        assert_eq!(x.to_string(), "1/1*s^-1 + 1/1*t*s^-1 + 0/1+1/1*i*s^0");
        assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn fraction_round_trip() {
        let x = Scalar::one().checked_div(&(Scalar::q() + Scalar::q_pow(-1))).unwrap();
        let text = x.to_string();
        assert_eq!(text, "(1/1*s^2)/(1/1*s^0 + 1/1*s^4)");
        assert_eq!(text.parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn rejects_garbage() {
        assert!("s^2".parse::<Scalar>().is_err());
        assert!("1/0*s^0".parse::<Scalar>().is_err());
    }
}
