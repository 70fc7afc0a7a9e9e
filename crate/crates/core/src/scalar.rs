//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// `(-1)^e` as a scalar.
pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always emits `num/den`, with the denominator positive.
pub fn format(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Compact human form used in labels and reports: `2`, `-1/2`.
pub fn display(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders `Σ c_k name_k` as `2*e - 1/2*h`; `0` for the empty sum.
pub fn render_sum<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Scalar, String)>,
{
    let mut out = String::new();
    for (c, name) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(&name);
        } else if name == "1" {
            out.push_str(&display(&mag));
        } else {
            out.push_str(&display(&mag));
            out.push('*');
            out.push_str(&name);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
