//! Generalized m-gonal numbers `p_m(x) = (m-2) x (x-1) / 2 + x` for `x` in Z.

use std::fmt;

use crate::{Error, Result};

/// The order `m >= 3` of a polygonal family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygonalKind(u64);

/// A signed index into a generalized polygonal family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedIndex(pub i64);

impl From<i64> for GeneralizedIndex {
    fn from(x: i64) -> Self {
        GeneralizedIndex(x)
    }
}

/// Square completion data for one polygonal order:
/// `scale * p_m(x) + offset == (slope * x - shift)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareCompletion {
    pub scale: u64,
    pub offset: u64,
    pub slope: u64,
    pub shift: i64,
}

impl SquareCompletion {
    /// The coordinate `t(x) = slope * x - shift`.
    pub fn coordinate(&self, x: i64) -> Result<i64> {
        (self.slope as i64)
            .checked_mul(x)
            .and_then(|v| v.checked_sub(self.shift))
            .ok_or(Error::Overflow("square completion coordinate"))
    }

    /// Inverse of [`Self::coordinate`] up to sign: an index `x` with
    /// `t(x) == ±t`. When both signs decode, the index with smaller `|x|`
    /// wins, nonnegative on ties.
    pub fn index_of(&self, t: i64) -> Option<i64> {
        let slope = self.slope as i64;
        [t, t.checked_neg()?]
            .into_iter()
            .filter_map(|s| {
                let num = s.checked_add(self.shift)?;
                (num % slope == 0).then(|| num / slope)
            })
            .min_by_key(|&x| (x.unsigned_abs(), x < 0))
    }
}

impl PolygonalKind {
    pub fn new(m: u64) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidOrder(m));
        }
        Ok(PolygonalKind(m))
    }

    pub fn order(self) -> u64 {
        self.0
    }

    /// `p_m(x)`, exact. Overflow of `u64` is reported, never wrapped.
    pub fn eval(self, x: impl Into<GeneralizedIndex>) -> Result<u64> {
        let x = x.into().0 as i128;
        let overflow = Error::Overflow("polygonal value");
        // x(x-1) is even and nonnegative for every integer x.
        let pair = x.checked_mul(x - 1).ok_or(overflow.clone())? / 2;
        let v = pair
            .checked_mul(self.0 as i128 - 2)
            .and_then(|v| v.checked_add(x))
            .ok_or(overflow.clone())?;
        u64::try_from(v).map_err(|_| overflow)
    }

    /// A witness `x` with `p_m(x) == n`, smallest `|x|` first and `x >= 0`
    /// preferred on ties.
    pub fn is_generalized(self, n: u64) -> Option<GeneralizedIndex> {
        // |p_m(x)| grows monotonically in |x| along each direction, so the
        // scan stops once both directions have passed n.
        for k in 0i64.. {
            let mut both_above = true;
            for x in [k, -k] {
                match self.eval(x) {
                    Ok(v) if v == n => return Some(GeneralizedIndex(x)),
                    Ok(v) if v < n => both_above = false,
                    _ => {}
                }
            }
            if both_above {
                return None;
            }
        }
        None
    }

    /// All values `p_m(x)` with `x` in Z that lie in `[0, bound]`, sorted
    /// and deduplicated.
    pub fn values_up_to(self, bound: u64) -> Vec<u64> {
        self.collect_values(bound, true)
    }

    /// Like [`Self::values_up_to`] but restricted to indices `x >= 0`.
    pub fn values_up_to_naturals(self, bound: u64) -> Vec<u64> {
        self.collect_values(bound, false)
    }

    fn collect_values(self, bound: u64, negative: bool) -> Vec<u64> {
        let mut out = Vec::new();
        let directions: &[i64] = if negative { &[1, -1] } else { &[1] };
        for &dir in directions {
            for k in 0i64.. {
                match self.eval(dir * k) {
                    Ok(v) if v <= bound => out.push(v),
                    _ => break,
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `8(m-2) p_m(x) + (m-4)^2 == (2(m-2) x - (m-4))^2`.
    pub fn square_completion(self) -> SquareCompletion {
        let m = self.0;
        SquareCompletion {
            scale: 8 * (m - 2),
            offset: (m as i64 - 4).unsigned_abs().pow(2),
            slope: 2 * (m - 2),
            shift: m as i64 - 4,
        }
    }
}

impl fmt::Display for PolygonalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}
