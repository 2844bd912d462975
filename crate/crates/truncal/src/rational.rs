//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Q::from_integer(acc)
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Exponent rendering: parenthesised when fractional or negative fractional.
pub fn fmt_exp(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("({})", fmt_q(v))
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

pub fn is_pos(v: &Q) -> bool {
    v.is_positive()
}

/// Largest integer `k` with `k * step <= limit` for `step > 0`.
pub fn floor_div(limit: &Q, step: &Q) -> i64 {
    let r = limit / step;
    let f = r.floor();
    use num_traits::ToPrimitive;
    f.to_integer().to_i64().unwrap_or(i64::MAX)
}
