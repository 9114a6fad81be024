use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Canonical text form: `"p/q"` in lowest terms with `q > 1`, a bare integer
/// when the denominator is 1, and `"0"` for zero. Negative values carry the
/// sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses the canonical form written by [`format_rational`]. Anything that
/// would not be written back byte-for-byte (`"2/4"`, `"3/1"`, `"+1"`, `"1/-2"`)
/// is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parsed: Rational = s
        .parse()
        .map_err(|e| Error::parse(format!("rational {s:?}"), e))?;
    if format_rational(&parsed) != s {
        return Err(Error::parse(format!("rational {s:?}"), "not in canonical form"));
    }
    Ok(parsed)
}

/// Positive rational `c` such that `c * v` is a primitive integer vector
/// (integer entries with gcd 1). Returns 1 for the zero vector.
pub fn primitive_scale(v: &[Rational]) -> Rational {
    let mut lcm_den = BigInt::one();
    for x in v.iter().filter(|x| !x.is_zero()) {
        lcm_den = lcm_den.lcm(x.denom());
    }
    let mut g = BigInt::zero();
    for x in v.iter().filter(|x| !x.is_zero()) {
        let scaled = x.numer() * (&lcm_den / x.denom());
        g = g.gcd(&scaled);
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(lcm_den, g.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rational(&q(0, 5)), "0");
        assert_eq!(format_rational(&q(6, 4)), "3/2");
        assert_eq!(format_rational(&q(3, -9)), "-1/3");
        assert_eq!(format_rational(&q(7, 1)), "7");
    }

    #[test]
    fn rejects_non_canonical() {
        for bad in ["2/4", "3/1", "+1", "1/-2", "0/3", "", "x", "-0"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![q(1, 2), q(0, 1), q(-3, 4)];
        let c = primitive_scale(&v);
        let w: Vec<Rational> = v.iter().map(|x| x * &c).collect();
        assert_eq!(w, vec![q(2, 1), q(0, 1), q(-3, 1)]);
        assert_eq!(primitive_scale(&[q(0, 1)]), q(1, 1));
    }

    proptest! {
        #[test]
        fn text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = q(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
