//! Value-preserving rewrites of diagonal representations.
//!
//! Each rewrite consumes a few coordinates of a representation and returns
//! new coordinates with the same quadratic value but stronger congruence
//! properties (parity, coprimality to 3 or 6). A [`Chain`] applies rewrites
//! to a full diagonal representation and records every application as a
//! [`RewriteStep`], which can later be replayed bit-exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{coprime_to, exact_sqrt, is_odd, quadratic_value};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `x^2 + 3y^2 = ((x+3y)/2)^2 + 3((x-y)/2)^2`, applied to `(x, sign*y)`.
    Shift,
    /// Rewrites `x^2 + 3y^2 = 4 (mod 8)` with both coordinates odd.
    OddPair,
    /// Rewrites `x^2 + 3y^2` (x, y odd, 3 not dividing x) with both
    /// coordinates coprime to 6.
    Coprime6Pair,
    /// `3(x^2+y^2+z^2) = (x+y+z)^2 + 2((x+y-2z)/2)^2 + 6((x-y)/2)^2`.
    Jacobi,
    /// Rewrites a positive multiple of 3 of the form `u^2 + 2v^2` with both
    /// coordinates coprime to 3.
    Coprime3Pair,
    /// `a^2 + b^2 = 5(x^2 + y^2)` with `x = (2a+b)/5`, `y = (a-2b)/5`.
    FiveSplit,
    /// Exchanges two terms (coefficient and coordinate).
    Swap,
    /// Replaces a coordinate by its negation.
    Negate,
    /// `k (d r)^2 = (k d^2) r^2`.
    ExtractFactor,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Shift,
        Rule::OddPair,
        Rule::Coprime6Pair,
        Rule::Jacobi,
        Rule::Coprime3Pair,
        Rule::FiveSplit,
        Rule::Swap,
        Rule::Negate,
        Rule::ExtractFactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Shift => "shift",
            Rule::OddPair => "odd-pair",
            Rule::Coprime6Pair => "coprime6-pair",
            Rule::Jacobi => "jacobi",
            Rule::Coprime3Pair => "coprime3-pair",
            Rule::FiveSplit => "five-split",
            Rule::Swap => "swap",
            Rule::Negate => "negate",
            Rule::ExtractFactor => "extract-factor",
        }
    }

    /// Number of coordinates the rule reads (and writes).
    pub fn arity(self) -> usize {
        match self {
            Rule::Jacobi => 3,
            Rule::Negate | Rule::ExtractFactor => 1,
            _ => 2,
        }
    }

    /// Whether the rule takes a trailing integer parameter after its
    /// operands (the sign for `shift`, the divisor for `extract-factor`).
    pub fn has_param(self) -> bool {
        matches!(self, Rule::Shift | Rule::ExtractFactor)
    }

    /// Computes the rule's outputs from its recorded inputs (operands,
    /// then the parameter if any).
    pub fn apply(self, inputs: &[i64]) -> Result<Vec<i64>> {
        let want = self.arity() + usize::from(self.has_param());
        if inputs.len() != want {
            return Err(Error::precondition(
                self,
                format!("expected {want} inputs, got {}", inputs.len()),
            ));
        }
        let pair = |(u, v): (i64, i64)| vec![u, v];
        Ok(match self {
            Rule::Shift => pair(shift(inputs[0], inputs[1], inputs[2])?),
            Rule::OddPair => pair(to_odd_pair(inputs[0], inputs[1])?),
            Rule::Coprime6Pair => pair(to_coprime6_pair(inputs[0], inputs[1])?),
            Rule::Jacobi => {
                let (u, v, w) = jacobi_split(inputs[0], inputs[1], inputs[2])?;
                vec![u, v, w]
            }
            Rule::Coprime3Pair => pair(to_coprime3_pair(inputs[0], inputs[1])?),
            Rule::FiveSplit => pair(five_split(inputs[0], inputs[1])?),
            Rule::Swap => vec![inputs[1], inputs[0]],
            Rule::Negate => vec![inputs[0].checked_neg().ok_or(Error::Overflow("negate"))?],
            Rule::ExtractFactor => vec![extract_factor(inputs[0], inputs[1])?],
        })
    }

    /// Coefficients of the written terms given the coefficients of the read
    /// terms, or a precondition error when the rule does not fit them.
    pub fn coefficients(self, input: &[u64]) -> Result<Vec<u64>> {
        let bad = |what: &str| Err(Error::precondition(self, format!("{what}, got {input:?}")));
        match (self, input) {
            (Rule::Shift | Rule::OddPair | Rule::Coprime6Pair, &[k, l]) => {
                if Some(l) == k.checked_mul(3) {
                    Ok(vec![k, l])
                } else {
                    bad("coefficients must be k, 3k")
                }
            }
            (Rule::Coprime3Pair, &[k, l]) => {
                if Some(l) == k.checked_mul(2) {
                    Ok(vec![k, l])
                } else {
                    bad("coefficients must be k, 2k")
                }
            }
            (Rule::Jacobi, &[k, l, m]) => {
                if k == l && l == m {
                    let mul = |f: u64| k.checked_mul(f).ok_or(Error::Overflow("coefficient"));
                    Ok(vec![k, mul(2)?, mul(6)?])
                } else {
                    bad("coefficients must be equal")
                }
            }
            (Rule::FiveSplit, &[k, l]) => {
                if k == l {
                    let k5 = k.checked_mul(5).ok_or(Error::Overflow("coefficient"))?;
                    Ok(vec![k5, k5])
                } else {
                    bad("coefficients must be equal")
                }
            }
            (Rule::Swap, &[k, l]) => Ok(vec![l, k]),
            (Rule::Negate, &[k]) => Ok(vec![k]),
            // ExtractFactor needs the divisor; handled by `Chain`.
            (Rule::ExtractFactor, &[k]) => Ok(vec![k]),
            _ => bad("wrong number of terms"),
        }
    }

    /// Factor by which the represented value changes.
    pub fn value_factor(self) -> u64 {
        match self {
            Rule::Jacobi => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

fn value_x2_ky2(x: i64, y: i64, k: u64) -> Result<u64> {
    quadratic_value(&[1, k], &[x, y])
}

/// `(x, y, sign) -> ((x + 3 sign y)/2, (x - sign y)/2)`.
pub fn shift(x: i64, y: i64, sign: i64) -> Result<(i64, i64)> {
    if sign != 1 && sign != -1 {
        return Err(Error::precondition(
            Rule::Shift,
            format!("sign must be +1 or -1, got {sign}"),
        ));
    }
    let (x, y) = (x as i128, sign as i128 * y as i128);
    if (x - y).rem_euclid(2) != 0 {
        return Err(Error::precondition(
            Rule::Shift,
            format!("{x} and {y} have different parity"),
        ));
    }
    Ok((
        to_i64((x + 3 * y) / 2, "shift")?,
        to_i64((x - y) / 2, "shift")?,
    ))
}

/// Canonical `(u, v)` with `u^2 + k v^2 = w` satisfying `pred`: least
/// `(|u|, |v|)`, nonnegative coordinates first.
fn canonical_pair(k: u64, w: u64, pred: impl Fn(i64, i64) -> bool) -> Option<(i64, i64)> {
    let mut au = 0u64;
    while au * au <= w {
        let rest = w - au * au;
        if rest.is_multiple_of(k) {
            if let Some(av) = exact_sqrt(rest / k) {
                for su in [au as i64, -(au as i64)] {
                    for sv in [av as i64, -(av as i64)] {
                        if pred(su, sv) {
                            return Some((su, sv));
                        }
                    }
                }
            }
        }
        au += 1;
    }
    None
}

/// Rewrites `x^2 + 3y^2 = 4 (mod 8)` as `u^2 + 3v^2` with `u`, `v` odd.
///
/// Odd inputs are returned unchanged. Otherwise the shift identity is
/// tried with both signs, iterating a bounded number of times, before
/// falling back to the canonical odd pair found by exhaustive search.
pub fn to_odd_pair(x: i64, y: i64) -> Result<(i64, i64)> {
    let w = value_x2_ky2(x, y, 3)?;
    if w % 8 != 4 {
        return Err(Error::precondition(
            Rule::OddPair,
            format!("{x}^2 + 3*{y}^2 = {w} is not 4 mod 8"),
        ));
    }
    let both_odd = |(u, v): (i64, i64)| is_odd(u) && is_odd(v);
    let mut current = (x, y);
    for _ in 0..4 {
        if both_odd(current) {
            return Ok(current);
        }
        let mut next = None;
        for sign in [1, -1] {
            if let Ok(candidate) = shift(current.0, current.1, sign) {
                if both_odd(candidate) {
                    return Ok(candidate);
                }
                next.get_or_insert(candidate);
            }
        }
        match next {
            Some(n) => current = n,
            None => break,
        }
    }
    canonical_pair(3, w, |u, v| is_odd(u) && is_odd(v)).ok_or(Error::SearchExhausted("odd pair"))
}

/// Rewrites `x^2 + 3y^2` with `x`, `y` odd and `3 ∤ x` as `u^2 + 3v^2` with
/// `u`, `v` coprime to 6.
pub fn to_coprime6_pair(x: i64, y: i64) -> Result<(i64, i64)> {
    if !is_odd(x) || !is_odd(y) {
        return Err(Error::precondition(
            Rule::Coprime6Pair,
            format!("{x} and {y} must both be odd"),
        ));
    }
    if x % 3 == 0 {
        return Err(Error::precondition(
            Rule::Coprime6Pair,
            format!("{x} must not be divisible by 3"),
        ));
    }
    if y % 3 != 0 {
        return Ok((x, y));
    }
    // For odd x, y exactly one of x - y, x + y is 2 mod 4.
    let sign = if (x as i128 - y as i128).rem_euclid(4) != 0 {
        1
    } else {
        -1
    };
    shift(x, y, sign)
}

/// `(x, y, z) -> (x+y+z, (x+y-2z)/2, (x-y)/2)` for `x = y (mod 2)`.
pub fn jacobi_split(x: i64, y: i64, z: i64) -> Result<(i64, i64, i64)> {
    let (x, y, z) = (x as i128, y as i128, z as i128);
    if (x - y).rem_euclid(2) != 0 {
        return Err(Error::precondition(
            Rule::Jacobi,
            format!("{x} and {y} have different parity"),
        ));
    }
    Ok((
        to_i64(x + y + z, "jacobi")?,
        to_i64((x + y - 2 * z) / 2, "jacobi")?,
        to_i64((x - y) / 2, "jacobi")?,
    ))
}

/// Rewrites a positive multiple of 3 of the form `u^2 + 2v^2` as
/// `a^2 + 2b^2` with `a`, `b` coprime to 3 (the canonical such pair).
pub fn to_coprime3_pair(u: i64, v: i64) -> Result<(i64, i64)> {
    let w = value_x2_ky2(u, v, 2)?;
    if w == 0 || w % 3 != 0 {
        return Err(Error::precondition(
            Rule::Coprime3Pair,
            format!("{u}^2 + 2*{v}^2 = {w} must be a positive multiple of 3"),
        ));
    }
    canonical_pair(2, w, |a, b| coprime_to(a, 3) && coprime_to(b, 3))
        .ok_or(Error::SearchExhausted("coprime-to-3 pair"))
}

/// Splits `a^2 + b^2` (a, b odd, divisible by 5) as `5(x^2 + y^2)` with
/// `x`, `y` odd. `a` is replaced by `-a` first if needed so that
/// `a = 2b (mod 5)`.
pub fn five_split(a: i64, b: i64) -> Result<(i64, i64)> {
    let w = value_x2_ky2(a, b, 1)?;
    if w % 5 != 0 {
        return Err(Error::precondition(
            Rule::FiveSplit,
            format!("{a}^2 + {b}^2 = {w} is not divisible by 5"),
        ));
    }
    if !is_odd(a) || !is_odd(b) {
        return Err(Error::precondition(
            Rule::FiveSplit,
            format!("{a} and {b} must both be odd"),
        ));
    }
    let (a, b) = (a as i128, b as i128);
    // a^2 = (2b)^2 (mod 5), so one of a, -a is 2b mod 5.
    let a = if (a - 2 * b).rem_euclid(5) == 0 {
        a
    } else {
        -a
    };
    Ok((
        to_i64((2 * a + b) / 5, "five split")?,
        to_i64((a - 2 * b) / 5, "five split")?,
    ))
}

fn extract_factor(t: i64, d: i64) -> Result<i64> {
    if d < 2 {
        return Err(Error::precondition(
            Rule::ExtractFactor,
            format!("factor must be at least 2, got {d}"),
        ));
    }
    if t % d != 0 {
        return Err(Error::precondition(
            Rule::ExtractFactor,
            format!("{d} does not divide {t}"),
        ));
    }
    Ok(t / d)
}

/// One recorded application of a [`Rule`] inside a [`Chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    /// Term positions read and written, in operand order.
    pub positions: Vec<usize>,
    /// Operand coordinates followed by the parameter, if the rule has one.
    pub inputs: Vec<i64>,
    pub outputs: Vec<i64>,
    /// Value of the whole representation after the step.
    pub value: u64,
}

/// A diagonal representation `sum coeffs[i] * coords[i]^2` under rewriting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    initial: Vec<i64>,
    coeffs: Vec<u64>,
    coords: Vec<i64>,
    steps: Vec<RewriteStep>,
}

impl Chain {
    pub fn new(coeffs: Vec<u64>, coords: Vec<i64>) -> Result<Self> {
        if coeffs.len() != coords.len() || coeffs.contains(&0) {
            return Err(Error::InvalidConstraint(format!(
                "coefficients {coeffs:?} do not fit coordinates {coords:?}"
            )));
        }
        quadratic_value(&coeffs, &coords)?;
        Ok(Chain {
            initial: coords.clone(),
            coeffs,
            coords,
            steps: Vec::new(),
        })
    }

    /// Coordinates before any step was applied.
    pub fn initial(&self) -> &[i64] {
        &self.initial
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn steps(&self) -> &[RewriteStep] {
        &self.steps
    }

    pub fn value(&self) -> Result<u64> {
        quadratic_value(&self.coeffs, &self.coords)
    }

    /// Applies `rule` to the terms at `positions` and records the step.
    pub fn apply(
        &mut self,
        rule: Rule,
        positions: &[usize],
        param: Option<i64>,
    ) -> Result<&RewriteStep> {
        let mut inputs: Vec<i64> = positions
            .iter()
            .map(|&p| self.coords.get(p).copied())
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::precondition(rule, format!("positions {positions:?} out of range"))
            })?;
        inputs.extend(param);
        let outputs = rule.apply(&inputs)?;
        let step = self.transition(rule, positions, inputs, outputs)?;
        self.steps.push(step);
        Ok(self.steps.last().expect("just pushed"))
    }

    /// Like [`Self::apply`], but a step that leaves every term unchanged is
    /// checked and then dropped instead of recorded. Returns whether a step
    /// was recorded.
    pub fn apply_effective(
        &mut self,
        rule: Rule,
        positions: &[usize],
        param: Option<i64>,
    ) -> Result<bool> {
        let before = (self.coeffs.clone(), self.coords.clone());
        self.apply(rule, positions, param)?;
        if (&self.coeffs, &self.coords) == (&before.0, &before.1) {
            self.steps.pop();
            return Ok(false);
        }
        Ok(true)
    }

    /// Replays a recorded step, checking that its inputs match the current
    /// coordinates and that recomputing the rule reproduces its outputs.
    pub fn replay(&mut self, step: &RewriteStep) -> std::result::Result<(), String> {
        let rule = step.rule;
        if step.positions.len() != rule.arity() {
            return Err(format!("{rule} expects {} positions", rule.arity()));
        }
        for (i, &p) in step.positions.iter().enumerate() {
            match self.coords.get(p) {
                Some(&t) if step.inputs.get(i) == Some(&t) => {}
                Some(&t) => {
                    return Err(format!(
                        "{rule} input {i} is {:?} but position {p} holds {t}",
                        step.inputs.get(i)
                    ))
                }
                None => return Err(format!("{rule} position {p} out of range")),
            }
        }
        let outputs = rule.apply(&step.inputs).map_err(|e| e.to_string())?;
        if outputs != step.outputs {
            return Err(format!(
                "{rule} recomputes {outputs:?} but recorded {:?}",
                step.outputs
            ));
        }
        let replayed = self
            .transition(rule, &step.positions, step.inputs.clone(), outputs)
            .map_err(|e| e.to_string())?;
        if replayed.value != step.value {
            return Err(format!(
                "{rule} yields value {} but recorded {}",
                replayed.value, step.value
            ));
        }
        self.steps.push(replayed);
        Ok(())
    }

    fn transition(
        &mut self,
        rule: Rule,
        positions: &[usize],
        inputs: Vec<i64>,
        outputs: Vec<i64>,
    ) -> Result<RewriteStep> {
        let mut distinct = positions.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != positions.len() || positions.len() != rule.arity() {
            return Err(Error::precondition(
                rule,
                format!("bad positions {positions:?}"),
            ));
        }
        let before = self.value()?;
        let old: Vec<u64> = positions.iter().map(|&p| self.coeffs[p]).collect();
        let mut new = rule.coefficients(&old)?;
        if rule == Rule::ExtractFactor {
            let d = inputs[1].unsigned_abs();
            new[0] = new[0]
                .checked_mul(d * d)
                .ok_or(Error::Overflow("coefficient"))?;
        }
        let mut coeffs = self.coeffs.clone();
        let mut coords = self.coords.clone();
        for ((&p, &c), &t) in positions.iter().zip(&new).zip(&outputs) {
            coeffs[p] = c;
            coords[p] = t;
        }
        let after = quadratic_value(&coeffs, &coords)?;
        let expected = before
            .checked_mul(rule.value_factor())
            .ok_or(Error::Overflow("value"))?;
        if after != expected {
            return Err(Error::precondition(
                rule,
                format!("value changed from {before} to {after}"),
            ));
        }
        self.coeffs = coeffs;
        self.coords = coords;
        Ok(RewriteStep {
            rule,
            positions: positions.to_vec(),
            inputs,
            outputs,
            value: after,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        assert_eq!(shift(1, 3, 1).unwrap(), (5, -1));
        assert_eq!(shift(2, 0, 1).unwrap(), (1, 1));
        assert_eq!(shift(1, 1, 1).unwrap(), (2, 0));
        assert!(shift(1, 2, 1).is_err());
        assert!(shift(1, 1, 0).is_err());
    }

    #[test]
    fn odd_pair_examples() {
        assert_eq!(to_odd_pair(2, 0).unwrap(), (1, 1));
        assert_eq!(to_odd_pair(4, 2).unwrap(), (5, 1));
        // Already odd: 76 = 1 + 75, which is also the canonical odd pair.
        assert_eq!(to_odd_pair(1, 5).unwrap(), (1, 5));
        assert!(matches!(to_odd_pair(1, 0), Err(Error::Precondition { .. })));
    }

    #[test]
    fn coprime6_pair_examples() {
        assert_eq!(to_coprime6_pair(1, 1).unwrap(), (1, 1));
        assert_eq!(to_coprime6_pair(1, 3).unwrap(), (5, -1));
        assert_eq!(to_coprime6_pair(5, 3).unwrap(), (7, 1));
        assert!(to_coprime6_pair(3, 1).is_err());
        assert!(to_coprime6_pair(2, 1).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_split(1, 1, 1).unwrap(), (3, 0, 0));
        assert_eq!(jacobi_split(3, 1, 1).unwrap(), (5, 1, 1));
        assert_eq!(jacobi_split(5, 1, 1).unwrap(), (7, 2, 2));
        assert!(jacobi_split(2, 1, 1).is_err());
    }

    #[test]
    fn coprime3_pair_examples() {
        assert_eq!(to_coprime3_pair(1, 1).unwrap(), (1, 1));
        assert_eq!(to_coprime3_pair(3, 0).unwrap(), (1, 2));
        assert_eq!(to_coprime3_pair(0, 3).unwrap(), (4, 1));
        assert!(to_coprime3_pair(0, 0).is_err());
        assert!(to_coprime3_pair(1, 0).is_err());
    }

    #[test]
    fn coprime3_matches_exhaustive_oracle() {
        for w in (3..3000u64).step_by(3) {
            let mut best = None;
            'search: for a in 0..=w.isqrt() as i64 {
                for b in 0..=w.isqrt() as i64 {
                    if (a * a + 2 * b * b) as u64 == w && a % 3 != 0 && b % 3 != 0 {
                        best = Some((a, b));
                        break 'search;
                    }
                }
            }
            // Any representation of w serves as the input.
            let input = (0..=w.isqrt() as i64).find_map(|u| {
                let rest = w as i64 - u * u;
                (rest % 2 == 0)
                    .then(|| (rest / 2).isqrt())
                    .filter(|v| 2 * v * v == rest)
                    .map(|v| (u, v))
            });
            if let Some((u, v)) = input {
                match best {
                    Some(b) => assert_eq!(to_coprime3_pair(u, v).unwrap(), b, "w = {w}"),
                    None => assert!(to_coprime3_pair(u, v).is_err(), "w = {w}"),
                }
            }
        }
    }

    #[test]
    fn five_split_examples() {
        assert_eq!(five_split(1, 3).unwrap(), (1, -1));
        assert_eq!(five_split(7, 1).unwrap(), (3, 1));
        assert_eq!(five_split(5, 5).unwrap(), (3, -1));
        assert!(five_split(1, 1).is_err());
        assert!(five_split(2, 4).is_err());
    }

    #[test]
    fn rule_names_roundtrip() {
        for rule in Rule::ALL {
            assert_eq!(rule.name().parse::<Rule>().unwrap(), rule);
        }
        assert!("rotate".parse::<Rule>().is_err());
    }

    #[test]
    fn chain_applies_and_replays() {
        let mut chain = Chain::new(vec![1, 1, 3], vec![0, 7, 2]).unwrap();
        chain.apply(Rule::Swap, &[0, 1], None).unwrap();
        chain.apply(Rule::OddPair, &[1, 2], None).unwrap();
        chain.apply(Rule::ExtractFactor, &[1], Some(3)).unwrap();
        assert_eq!(chain.coeffs(), &[1, 9, 3]);
        assert_eq!(chain.coords(), &[7, 1, -1]);
        assert_eq!(chain.value().unwrap(), 61);

        let mut replay = Chain::new(vec![1, 1, 3], vec![0, 7, 2]).unwrap();
        for step in chain.steps() {
            replay.replay(step).unwrap();
        }
        assert_eq!(replay, chain);
    }

    #[test]
    fn no_op_steps_are_not_recorded() {
        let mut chain = Chain::new(vec![1, 3], vec![1, 1]).unwrap();
        assert!(!chain
            .apply_effective(Rule::Coprime6Pair, &[0, 1], None)
            .unwrap());
        assert!(chain.steps().is_empty());
        assert!(chain.apply_effective(Rule::Negate, &[1], None).unwrap());
        assert_eq!(chain.steps().len(), 1);
        assert!(chain
            .apply_effective(Rule::Coprime6Pair, &[1, 0], None)
            .is_err());
    }

    #[test]
    fn chain_rejects_mismatched_coefficients() {
        let mut chain = Chain::new(vec![1, 1, 3], vec![1, 1, 1]).unwrap();
        assert!(chain.apply(Rule::Coprime6Pair, &[0, 1], None).is_err());
        assert!(chain.apply(Rule::Swap, &[0, 0], None).is_err());
        assert!(chain.apply(Rule::Swap, &[0, 5], None).is_err());
    }

    #[test]
    fn jacobi_triples_the_value() {
        let mut chain = Chain::new(vec![1, 1, 1], vec![3, 1, 1]).unwrap();
        let step = chain.apply(Rule::Jacobi, &[0, 1, 2], None).unwrap();
        assert_eq!(step.value, 33);
        assert_eq!(chain.coeffs(), &[1, 2, 6]);
    }
}
