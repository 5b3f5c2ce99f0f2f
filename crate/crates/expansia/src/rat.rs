//! Exact rational arithmetic helpers: parsing, formatting, circle distance.
//!
//! All coordinates, distances and constants in this crate are exact
//! [`BigRational`] values; nothing is ever rounded.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

/// `num/den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"` (optionally signed). Returns a plain message on
/// failure so callers can attach source positions.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| format!("bad integer `{num}`"))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| format!("bad integer `{d}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical `"p/q"` form (`"p"` when the denominator is one).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reduce into the fundamental domain `[0, 1)`.
pub fn mod1(r: &Rat) -> Rat {
    r - r.floor()
}

/// Distance on the circle `R/Z`: `min(t, 1 - t)` for `t = (a - b) mod 1`.
pub fn circle_dist(a: &Rat, b: &Rat) -> Rat {
    let t = mod1(&(a - b));
    let one_minus = Rat::one() - &t;
    if t <= one_minus {
        t
    } else {
        one_minus
    }
}

pub fn rat_min(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn rat_max(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Absolute value, for symmetry checks.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
