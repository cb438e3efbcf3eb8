//! Exact rational arithmetic helpers.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Serde helper writing a rational as `"p/q"` (or `"p"` for integers).
pub fn serialize_str<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(200, 3), BigInt::from(1_313_400));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(ratio(10, 6).to_string(), "5/3");
        assert_eq!(integer(2).to_string(), "2");
        assert_eq!(parse_rational("8/5"), Some(ratio(8, 5)));
        assert_eq!(parse_rational("2"), Some(integer(2)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
