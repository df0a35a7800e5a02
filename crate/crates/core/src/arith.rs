//! Small exact-integer helpers shared across modules.

use crate::{Error, Result};

/// Returns `Some(r)` with `r*r == n`, or `None` when `n` is not a square.
pub(crate) fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// `c * t^2` as an unsigned value, checked.
pub(crate) fn weighted_square(c: u64, t: i64) -> Result<u64> {
    let sq = (t.unsigned_abs() as u128) * (t.unsigned_abs() as u128);
    let v = sq
        .checked_mul(c as u128)
        .ok_or(Error::Overflow("weighted square"))?;
    u64::try_from(v).map_err(|_| Error::Overflow("weighted square"))
}

/// `sum_i coeffs[i] * coords[i]^2`, checked.
pub(crate) fn quadratic_value(coeffs: &[u64], coords: &[i64]) -> Result<u64> {
    coeffs.iter().zip(coords).try_fold(0u64, |acc, (&c, &t)| {
        acc.checked_add(weighted_square(c, t)?)
            .ok_or(Error::Overflow("quadratic value"))
    })
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> Result<u64> {
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

pub(crate) fn coprime_to(t: i64, q: u64) -> bool {
    gcd(t.unsigned_abs(), q) == 1
}

pub(crate) fn is_odd(t: i64) -> bool {
    t.rem_euclid(2) == 1
}
