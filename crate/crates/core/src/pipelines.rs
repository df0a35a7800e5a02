//! End-to-end witness construction.
//!
//! A sum `e1*p_i + e2*p_j + e3*p_k` is reduced by square completion to a
//! diagonal ternary form with congruence conditions on each coordinate
//! ([`ReductionTarget`]). Each supported sum then has a fixed chain: an
//! initial representation from exhaustive search, followed by rewrites from
//! [`crate::transforms`] that bring the representation into the
//! constrained shape. The chain is recorded as a [`Certificate`].
//!
//! Choices that admit several alternatives are made deterministically:
//! coordinate swaps are tried before sign flips, lower positions first, and
//! `+` before `-`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, is_odd, lcm};
use crate::certify::{Certificate, Source, SourceKind, CERTIFICATE_VERSION};
use crate::polygonal::PolygonalKind;
use crate::ternary::{self, Constraint, CoordConstraint, DiagonalForm, Representation};
use crate::transforms::{Chain, Rule};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    Naturals,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Integers => "Z",
            Domain::Naturals => "N",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Domain::Integers),
            "N" | "n" => Ok(Domain::Naturals),
            _ => Err(Error::SumSyntax {
                input: s.to_string(),
                reason: "domain must be Z or N".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: u64,
    pub kind: PolygonalKind,
}

/// `sum coefficient * p_m(index)` over 1 to 3 terms, with indices drawn
/// from `domain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumForm {
    terms: Vec<Term>,
    pub domain: Domain,
}

impl SumForm {
    pub fn new(terms: &[(u64, u64)], domain: Domain) -> Result<Self> {
        if terms.is_empty() || terms.len() > 3 {
            return Err(Error::SumSyntax {
                input: format!("{terms:?}"),
                reason: "a sum has 1 to 3 terms".into(),
            });
        }
        let terms = terms
            .iter()
            .map(|&(coefficient, m)| {
                if coefficient == 0 {
                    return Err(Error::SumSyntax {
                        input: format!("{terms:?}"),
                        reason: "coefficients must be positive".into(),
                    });
                }
                Ok(Term {
                    coefficient,
                    kind: PolygonalKind::new(m)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SumForm { terms, domain })
    }

    /// `p5 + b*p5 + c*p5` over Z.
    pub fn pentagonal(b: u64, c: u64) -> Result<Self> {
        SumForm::new(&[(1, 5), (b, 5), (c, 5)], Domain::Integers)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// Value of the sum at `indices` (one per term). Indices outside the
    /// domain are rejected.
    pub fn eval(&self, indices: &[i64]) -> Result<u64> {
        if indices.len() != self.terms.len() {
            return Err(Error::SumSyntax {
                input: self.to_string(),
                reason: format!(
                    "expected {} indices, got {}",
                    self.terms.len(),
                    indices.len()
                ),
            });
        }
        if self.domain == Domain::Naturals && indices.iter().any(|&x| x < 0) {
            return Err(Error::SumSyntax {
                input: self.to_string(),
                reason: "negative index over N".into(),
            });
        }
        self.terms
            .iter()
            .zip(indices)
            .try_fold(0u64, |acc, (t, &x)| {
                t.kind
                    .eval(x)?
                    .checked_mul(t.coefficient)
                    .and_then(|v| v.checked_add(acc))
                    .ok_or(Error::Overflow("sum value"))
            })
    }

    /// Terms sorted by (order, coefficient), and the position each sorted
    /// term had in `self`.
    fn canonical(&self) -> (SumForm, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.terms.len()).collect();
        order.sort_by_key(|&i| (self.terms[i].kind, self.terms[i].coefficient));
        let terms = order.iter().map(|&i| self.terms[i]).collect();
        (
            SumForm {
                terms,
                domain: self.domain,
            },
            order,
        )
    }
}

impl fmt::Display for SumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.coefficient != 1 {
                write!(f, "{}", t.coefficient)?;
            }
            write!(f, "{}", t.kind)?;
        }
        Ok(())
    }
}

/// Parses `[a[*]]pM[+...]` with 1 to 3 terms, e.g. `p5+2p5+6p5` or
/// `3*p3+p5+p7`. The domain defaults to Z.
impl FromStr for SumForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::SumSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            let (coef, order) = raw
                .split_once('p')
                .ok_or_else(|| err("each term needs pM"))?;
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let coefficient = if coef.is_empty() {
                1
            } else {
                coef.parse::<u64>().map_err(|_| err("bad coefficient"))?
            };
            if order.is_empty() || !order.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("bad polygonal order"));
            }
            let m = order
                .parse::<u64>()
                .map_err(|_| err("polygonal order out of range"))?;
            terms.push((coefficient, m));
        }
        SumForm::new(&terms, Domain::Integers).map_err(|e| match e {
            Error::InvalidOrder(m) => err(&format!("polygonal order must be at least 3, got {m}")),
            Error::SumSyntax { reason, .. } => err(&reason),
            other => other,
        })
    }
}

/// How a form coordinate maps back to a polygonal index:
/// `t = scale * (slope * x - shift)` up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decoder {
    pub kind: PolygonalKind,
    pub scale: u64,
}

impl Decoder {
    pub fn index_of(&self, t: i64) -> Option<i64> {
        let d = self.scale as i64;
        if t % d != 0 {
            return None;
        }
        self.kind.square_completion().index_of(t / d)
    }

    /// The coordinate condition equivalent to decodability.
    pub fn constraint(&self) -> Constraint {
        let sc = self.kind.square_completion();
        match (self.kind.order(), self.scale) {
            (5, 1) => Constraint::CoprimeTo6,
            (3, 1) => Constraint::Odd,
            (_, d) => {
                let q = sc.slope as i64;
                let d = d as i64;
                Constraint::residues(
                    (d * q) as u64,
                    [d * sc.shift.rem_euclid(q), d * (-sc.shift).rem_euclid(q)],
                )
                .expect("positive modulus")
            }
        }
    }
}

/// `multiplier * n + constant = form(x, y, z)` with `x, y, z` satisfying
/// `constraints`, where coordinate `i` decodes to the index of term `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTarget {
    pub multiplier: u64,
    pub constant: u64,
    pub form: DiagonalForm,
    pub constraints: CoordConstraint,
    pub decoders: [Decoder; 3],
}

impl ReductionTarget {
    pub fn target(&self, n: u64) -> Result<u64> {
        n.checked_mul(self.multiplier)
            .and_then(|v| v.checked_add(self.constant))
            .ok_or(Error::Overflow("reduction target"))
    }

    /// Moves a square factor `d^2` of coefficient `i` into the coordinate.
    pub fn with_scaled_coordinate(mut self, i: usize, d: u64) -> Result<Self> {
        let mut coeffs = self.form.coefficients();
        if d == 0 || !coeffs[i].is_multiple_of(d * d) {
            return Err(Error::InvalidConstraint(format!(
                "{d}^2 does not divide coefficient {}",
                coeffs[i]
            )));
        }
        coeffs[i] /= d * d;
        self.form = DiagonalForm::new(coeffs[0], coeffs[1], coeffs[2])?;
        self.decoders[i].scale *= d;
        self.constraints.0[i] = self.decoders[i].constraint();
        Ok(self)
    }

    pub fn decode(&self, r: &Representation) -> Result<[i64; 3]> {
        let mut out = [0; 3];
        for (i, t) in r.coords().into_iter().enumerate() {
            out[i] = self.decoders[i].index_of(t).ok_or_else(|| {
                Error::pipeline(
                    "decode",
                    format!(
                        "coordinate {t} does not decode to a {} index",
                        self.decoders[i].kind
                    ),
                )
            })?;
        }
        Ok(out)
    }
}

/// Square completion data for order `m`.
pub fn square_complete(m: u64) -> Result<crate::polygonal::SquareCompletion> {
    Ok(PolygonalKind::new(m)?.square_completion())
}

/// Reduction of a three-term sum over Z to a diagonal form.
pub fn reduce(sum: &SumForm) -> Result<ReductionTarget> {
    let terms = sum.terms();
    if terms.len() != 3 {
        return Err(Error::UnsupportedSum(sum.to_string()));
    }
    let completions: Vec<_> = terms.iter().map(|t| t.kind.square_completion()).collect();
    let multiplier = terms
        .iter()
        .zip(&completions)
        .try_fold(1u64, |acc, (t, sc)| {
            lcm(acc, sc.scale / gcd(sc.scale, t.coefficient))
        })?;
    let mut coeffs = [0u64; 3];
    let mut constant = 0u64;
    for (i, (t, sc)) in terms.iter().zip(&completions).enumerate() {
        coeffs[i] = multiplier
            .checked_mul(t.coefficient)
            .ok_or(Error::Overflow("reduction"))?
            / sc.scale;
        constant = coeffs[i]
            .checked_mul(sc.offset)
            .and_then(|v| v.checked_add(constant))
            .ok_or(Error::Overflow("reduction"))?;
    }
    let decoders = [0, 1, 2].map(|i| Decoder {
        kind: terms[i].kind,
        scale: 1,
    });
    Ok(ReductionTarget {
        multiplier,
        constant,
        form: DiagonalForm::new(coeffs[0], coeffs[1], coeffs[2])?,
        constraints: CoordConstraint(decoders.map(|d| d.constraint())),
        decoders,
    })
}

/// `24n + b + c + 1 = x^2 + b y^2 + c z^2` with `x, y, z` coprime to 6.
pub fn reduce_pentagonal(b: u64, c: u64) -> Result<ReductionTarget> {
    reduce(&SumForm::pentagonal(b, c)?)
}

/// Pairs `(b, c)` for which `p5 + b*p5 + c*p5` has a witness pipeline.
pub const PENTAGONAL_PAIRS: [(u64, u64); 6] = [(1, 3), (2, 3), (2, 6), (3, 3), (3, 4), (3, 9)];

/// The eight sums with witness pipelines, in canonical term order.
pub fn supported_sums() -> Vec<SumForm> {
    let mut out: Vec<SumForm> = PENTAGONAL_PAIRS
        .iter()
        .map(|&(b, c)| SumForm::pentagonal(b, c).expect("valid"))
        .collect();
    out.push(p3_p5_p11());
    out.push(three_p3_p5_p7());
    out
}

/// Whether [`witness`] has a pipeline for `sum`, in any term order.
pub fn is_supported(sum: &SumForm) -> bool {
    sum.domain == Domain::Integers && supported_sums().contains(&sum.canonical().0)
}

fn p3_p5_p11() -> SumForm {
    SumForm::new(&[(1, 3), (1, 5), (1, 11)], Domain::Integers).expect("valid")
}

fn three_p3_p5_p7() -> SumForm {
    SumForm::new(&[(3, 3), (1, 5), (1, 7)], Domain::Integers).expect("valid")
}

/// Indices and certificate for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: [i64; 3],
    pub certificate: Certificate,
}

/// Witness for any supported sum, with indices in the caller's term order.
pub fn witness(sum: &SumForm, n: u64) -> Result<Witness> {
    if sum.domain != Domain::Integers {
        return Err(Error::UnsupportedSum(format!("{sum} over N")));
    }
    let (canonical, order) = sum.canonical();
    let mut w = if canonical == p3_p5_p11() {
        witness_p3_p5_p11(n)?
    } else if canonical == three_p3_p5_p7() {
        witness_3p3_p5_p7(n)?
    } else {
        match canonical.terms() {
            [Term {
                coefficient: 1,
                kind: k1,
            }, Term {
                coefficient: b,
                kind: k2,
            }, Term {
                coefficient: c,
                kind: k3,
            }] if [k1, k2, k3].iter().all(|k| k.order() == 5) => witness_pentagonal(*b, *c, n)
                .map_err(|e| match e {
                    Error::UnsupportedSum(_) => Error::UnsupportedSum(sum.to_string()),
                    other => other,
                })?,
            _ => return Err(Error::UnsupportedSum(sum.to_string())),
        }
    };
    let canonical_indices = w.indices;
    for (sorted_pos, &caller_pos) in order.iter().enumerate() {
        w.indices[caller_pos] = canonical_indices[sorted_pos];
    }
    Ok(w)
}

/// Applies a rewrite, recording it only when it changes the representation.
fn run(chain: &mut Chain, rule: Rule, positions: &[usize], param: Option<i64>) -> Result<()> {
    chain
        .apply_effective(rule, positions, param)
        .map(|_| ())
        .map_err(|e| Error::pipeline(rule.name(), e))
}

fn search(form: DiagonalForm, value: u64, constraints: CoordConstraint) -> Result<(Source, Chain)> {
    let r = ternary::represent(&form, value, &constraints).ok_or_else(|| {
        Error::pipeline(
            SourceKind::DirectSearch.name(),
            format!("{value} has no representation by {form} under {constraints:?}"),
        )
    })?;
    let source = Source {
        kind: SourceKind::DirectSearch,
        form,
        constraints,
        value,
    };
    let chain = Chain::new(form.coefficients().to_vec(), r.coords().to_vec())?;
    Ok((source, chain))
}

fn odd(chain: &Chain, p: usize) -> bool {
    is_odd(chain.coords()[p])
}

fn finish(
    sum: SumForm,
    n: u64,
    reduction: ReductionTarget,
    source: Source,
    chain: Chain,
    fallback: bool,
) -> Result<Witness> {
    if chain.coeffs() != reduction.form.coefficients() {
        return Err(Error::pipeline(
            "finish",
            format!(
                "chain ends on form {:?}, expected {}",
                chain.coeffs(),
                reduction.form
            ),
        ));
    }
    let coords = chain.coords();
    let final_rep = Representation::new(coords[0], coords[1], coords[2]);
    if !reduction.constraints.matches(&final_rep) {
        return Err(Error::pipeline(
            "finish",
            format!("{final_rep} violates the coordinate constraints"),
        ));
    }
    let indices = reduction.decode(&final_rep)?;
    let value = sum.eval(&indices)?;
    if value != n {
        return Err(Error::pipeline(
            "finish",
            format!("indices evaluate to {value}, not {n}"),
        ));
    }
    Ok(Witness {
        indices,
        certificate: Certificate {
            version: CERTIFICATE_VERSION,
            sum,
            n,
            reduction,
            source,
            initial: chain.initial().to_vec(),
            steps: chain.steps().to_vec(),
            final_representation: final_rep,
            indices,
            fallback,
        },
    })
}

/// Witness for `n = p5(x) + b p5(y) + c p5(z)` over Z,
/// `(b, c)` one of [`PENTAGONAL_PAIRS`].
pub fn witness_pentagonal(b: u64, c: u64, n: u64) -> Result<Witness> {
    let sum = SumForm::pentagonal(b, c)?;
    let reduction = reduce(&sum)?;
    let target = reduction.target(n)?;
    let (source, chain) = match (b, c) {
        (1, 3) => chain_113(target)?,
        (2, 3) => chain_123(target)?,
        (3, 3) => chain_133(target)?,
        (3, 4) => chain_134(target)?,
        (3, 9) => chain_139(target)?,
        (2, 6) => chain_126(n)?,
        _ => return Err(Error::UnsupportedSum(sum.to_string())),
    };
    finish(sum, n, reduction, source, chain, false)
}

/// `x^2 + y^2 + 3z^2`: odd-pair on the last two terms, then coprime6-pair.
fn chain_113(target: u64) -> Result<(Source, Chain)> {
    let (source, mut chain) = search(
        DiagonalForm::new(1, 1, 3)?,
        target,
        CoordConstraint::unconstrained(),
    )?;
    if !odd(&chain, 0) {
        run(&mut chain, Rule::Swap, &[0, 1], None)?;
    }
    run(&mut chain, Rule::OddPair, &[1, 2], None)?;
    run(&mut chain, Rule::Coprime6Pair, &[1, 2], None)?;
    Ok((source, chain))
}

/// `x^2 + 2y^2 + 3z^2`: the middle coordinate is forced odd.
fn chain_123(target: u64) -> Result<(Source, Chain)> {
    let (source, mut chain) = search(
        DiagonalForm::new(1, 2, 3)?,
        target,
        CoordConstraint::unconstrained(),
    )?;
    run(&mut chain, Rule::OddPair, &[0, 2], None)?;
    run(&mut chain, Rule::Coprime3Pair, &[0, 1], None)?;
    run(&mut chain, Rule::Coprime6Pair, &[0, 2], None)?;
    Ok((source, chain))
}

/// `x^2 + 3y^2 + 3z^2`: make the last coordinate odd, then two
/// coprime6-pair rewrites through the first term.
fn chain_133(target: u64) -> Result<(Source, Chain)> {
    let (source, mut chain) = search(
        DiagonalForm::new(1, 3, 3)?,
        target,
        CoordConstraint::unconstrained(),
    )?;
    if !odd(&chain, 2) {
        run(&mut chain, Rule::Swap, &[1, 2], None)?;
    }
    run(&mut chain, Rule::OddPair, &[0, 1], None)?;
    run(&mut chain, Rule::Coprime6Pair, &[0, 1], None)?;
    run(&mut chain, Rule::Coprime6Pair, &[0, 2], None)?;
    Ok((source, chain))
}

/// `x^2 + 3y^2 + 4z^2` from `u^2 + v^2 + 3w^2` with `w` odd and `u = 2r`.
fn chain_134(target: u64) -> Result<(Source, Chain)> {
    let (source, mut chain) = search(
        DiagonalForm::new(1, 1, 3)?,
        target,
        CoordConstraint([Constraint::Any, Constraint::Any, Constraint::Odd]),
    )?;
    if odd(&chain, 0) {
        run(&mut chain, Rule::Swap, &[0, 1], None)?;
    }
    run(&mut chain, Rule::ExtractFactor, &[0], Some(2))?;
    run(&mut chain, Rule::Coprime6Pair, &[1, 2], None)?;
    // (4, 1, 3) -> (1, 3, 4)
    run(&mut chain, Rule::Swap, &[0, 1], None)?;
    run(&mut chain, Rule::Swap, &[1, 2], None)?;
    Ok((source, chain))
}

/// `x^2 + 3y^2 + 9z^2` from `u^2 + s^2 + 3t^2` with `s = 3r`.
fn chain_139(target: u64) -> Result<(Source, Chain)> {
    let (source, mut chain) = search(
        DiagonalForm::new(1, 1, 3)?,
        target,
        CoordConstraint::unconstrained(),
    )?;
    if !odd(&chain, 0) {
        run(&mut chain, Rule::Swap, &[0, 1], None)?;
    }
    run(&mut chain, Rule::OddPair, &[1, 2], None)?;
    if chain.coords()[0] % 3 == 0 {
        run(&mut chain, Rule::Swap, &[0, 1], None)?;
    }
    run(&mut chain, Rule::ExtractFactor, &[1], Some(3))?;
    run(&mut chain, Rule::Coprime6Pair, &[0, 2], None)?;
    // 3 y0^2 + 9 r^2 = 3 (y0^2 + 3 r^2)
    run(&mut chain, Rule::Coprime6Pair, &[2, 1], None)?;
    // (1, 9, 3) -> (1, 3, 9)
    run(&mut chain, Rule::Swap, &[1, 2], None)?;
    Ok((source, chain))
}

/// `x^2 + 2y^2 + 6z^2` from three odd squares summing to `8n + 3`.
fn chain_126(n: u64) -> Result<(Source, Chain)> {
    let r = ternary::three_squares_odd(n)
        .map_err(|e| Error::pipeline(SourceKind::ThreeSquares.name(), e))?;
    let value = 8 * n + 3;
    let source = Source {
        kind: SourceKind::ThreeSquares,
        form: DiagonalForm::new(1, 1, 1)?,
        constraints: CoordConstraint::all(Constraint::Odd),
        value,
    };
    let mut chain = Chain::new(vec![1, 1, 1], r.coords().to_vec())?;
    let differ_mod4 =
        |c: &Chain, i: usize, j: usize| (c.coords()[i] - c.coords()[j]).rem_euclid(4) != 0;
    if !differ_mod4(&chain, 0, 1) {
        if differ_mod4(&chain, 0, 2) {
            run(&mut chain, Rule::Swap, &[1, 2], None)?;
        } else if differ_mod4(&chain, 1, 2) {
            run(&mut chain, Rule::Swap, &[0, 2], None)?;
        } else {
            run(&mut chain, Rule::Negate, &[1], None)?;
        }
    }
    run(&mut chain, Rule::Jacobi, &[0, 1, 2], None)?;
    run(&mut chain, Rule::Coprime3Pair, &[0, 1], None)?;
    run(&mut chain, Rule::Coprime6Pair, &[1, 2], None)?;
    Ok((source, chain))
}

/// Witness for `n = p3(x) + p5(y) + p11(z)` over Z.
///
/// `72n + 61 = 24(3n + 2) + 13`, so the `x^2 + 3y^2 + 9z^2` chain applies;
/// reversing the terms gives `9u^2 + 3v^2 + w^2` with `w = ±7 (mod 9)`.
pub fn witness_p3_p5_p11(n: u64) -> Result<Witness> {
    let sum = p3_p5_p11();
    let reduction = reduce(&sum)?;
    let inner = n
        .checked_mul(3)
        .and_then(|m| m.checked_add(2))
        .ok_or(Error::Overflow("3n+2"))?;
    let target = reduce_pentagonal(3, 9)?.target(inner)?;
    let (source, mut chain) = chain_139(target)?;
    run(&mut chain, Rule::Swap, &[0, 2], None)?;
    finish(sum, n, reduction, source, chain, false)
}

fn reduction_3p3_p5_p7() -> Result<ReductionTarget> {
    // 45 (2x+1)^2 is written 5 (3(2x+1))^2.
    reduce(&three_p3_p5_p7())?.with_scaled_coordinate(0, 3)
}

/// Witness for `n = 3 p3(x) + p5(y) + p7(z)` over Z, through
/// `120n + 77 = 5(3(2x+1))^2 + 5(6y-1)^2 + 3(10z-3)^2`.
pub fn witness_3p3_p5_p7(n: u64) -> Result<Witness> {
    let reduction = reduction_3p3_p5_p7()?;
    let target = reduction.target(n)?;
    let (source, mut chain) = search(
        DiagonalForm::new(1, 1, 3)?,
        target,
        CoordConstraint::unconstrained(),
    )?;
    if !odd(&chain, 0) {
        run(&mut chain, Rule::Swap, &[0, 1], None)?;
    }
    run(&mut chain, Rule::OddPair, &[1, 2], None)?;
    if !reach_c_mod5(&mut chain)? {
        return witness_3p3_p5_p7_fallback(n);
    }
    split_3p3_p5_p7(n, reduction, source, chain, false)
}

/// Brings `a^2 + b^2 + 3c^2` (all odd) to `c = ±2 (mod 5)`. Returns false
/// when the case analysis does not apply, which would indicate a bug.
fn reach_c_mod5(chain: &mut Chain) -> Result<bool> {
    let m5 = |t: i64| t.rem_euclid(5);
    match m5(chain.coords()[2]) {
        2 | 3 => return Ok(true),
        1 | 4 => {
            // u^2 + v^2 = -1 (mod 5): one of u, v is divisible by 5.
            if m5(chain.coords()[1]) != 0 {
                if m5(chain.coords()[0]) != 0 {
                    return Ok(false);
                }
                run(chain, Rule::Swap, &[0, 1], None)?;
            }
        }
        _ => {
            // u^2 = v^2 = 1 (mod 5)
            if !matches!(m5(chain.coords()[1]), 1 | 4) {
                return Ok(false);
            }
        }
    }
    let [v, w] = [chain.coords()[1], chain.coords()[2]];
    let sign = if (v - w).rem_euclid(4) != 0 { 1 } else { -1 };
    run(chain, Rule::Shift, &[1, 2], Some(sign))?;
    let [v, w] = [chain.coords()[1], chain.coords()[2]];
    Ok(is_odd(v) && is_odd(w) && matches!(m5(w), 2 | 3))
}

fn split_3p3_p5_p7(
    n: u64,
    reduction: ReductionTarget,
    source: Source,
    mut chain: Chain,
    fallback: bool,
) -> Result<Witness> {
    run(&mut chain, Rule::FiveSplit, &[0, 1], None)?;
    if chain.coords()[0] % 3 != 0 {
        run(&mut chain, Rule::Swap, &[0, 1], None)?;
    }
    finish(three_p3_p5_p7(), n, reduction, source, chain, fallback)
}

/// The constrained-search route for `3p3 + p5 + p7`: odd `a, b, c` with
/// `c = ±2 (mod 5)` found directly, certificate flagged as fallback.
pub(crate) fn witness_3p3_p5_p7_fallback(n: u64) -> Result<Witness> {
    let reduction = reduction_3p3_p5_p7()?;
    let target = reduction.target(n)?;
    let (source, chain) = search(
        DiagonalForm::new(1, 1, 3)?,
        target,
        CoordConstraint([
            Constraint::Odd,
            Constraint::Odd,
            Constraint::residues(10, [3, 7])?,
        ]),
    )?;
    split_3p3_p5_p7(n, reduction, source, chain, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sum_syntax() {
        let s: SumForm = "p5+2p5+6p5".parse().unwrap();
        assert_eq!(s, SumForm::pentagonal(2, 6).unwrap());
        assert_eq!(s.to_string(), "p5+2p5+6p5");
        let s: SumForm = "3*p3+p5+p7".parse().unwrap();
        assert_eq!(s.to_string(), "3p3+p5+p7");
        assert_eq!("p4".parse::<SumForm>().unwrap().terms().len(), 1);
        for bad in [
            "",
            "p",
            "q5",
            "p2+p5",
            "p5+p5+p5+p5",
            "0p5",
            "xp5",
            "p5+",
            "p-5",
        ] {
            assert!(bad.parse::<SumForm>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn square_complete_examples() {
        let sc = square_complete(5).unwrap();
        assert_eq!((sc.scale, sc.offset), (24, 1));
        assert_eq!(sc.coordinate(1).unwrap(), 5);
        let sc = square_complete(3).unwrap();
        assert_eq!((sc.scale, sc.offset), (8, 1));
        assert_eq!(sc.coordinate(0).unwrap(), 1);
        let sc = square_complete(11).unwrap();
        assert_eq!((sc.scale, sc.offset), (72, 49));
        assert_eq!(sc.coordinate(1).unwrap(), 11);
        assert!(square_complete(2).is_err());
    }

    #[test]
    fn pentagonal_reductions() {
        let r = reduce_pentagonal(1, 3).unwrap();
        assert_eq!((r.multiplier, r.constant), (24, 5));
        assert_eq!(r.form, DiagonalForm::new(1, 1, 3).unwrap());
        assert_eq!(r.constraints, CoordConstraint::all(Constraint::CoprimeTo6));
        let r = reduce_pentagonal(3, 3).unwrap();
        assert_eq!((r.multiplier, r.constant), (24, 7));
        assert_eq!(r.form, DiagonalForm::new(1, 3, 3).unwrap());
        let r = reduce_pentagonal(2, 6).unwrap();
        assert_eq!((r.multiplier, r.constant), (24, 9));
        assert_eq!(r.form, DiagonalForm::new(1, 2, 6).unwrap());
    }

    #[test]
    fn mixed_reductions() {
        let r = reduce(&p3_p5_p11()).unwrap();
        assert_eq!((r.multiplier, r.constant), (72, 61));
        assert_eq!(r.form, DiagonalForm::new(9, 3, 1).unwrap());
        assert_eq!(
            r.constraints.0[2],
            Constraint::residues(18, [7, 11]).unwrap()
        );
        let r = reduction_3p3_p5_p7().unwrap();
        assert_eq!((r.multiplier, r.constant), (120, 77));
        assert_eq!(r.form, DiagonalForm::new(5, 5, 3).unwrap());
        assert_eq!(r.constraints.0[0], Constraint::residues(6, [3]).unwrap());
        assert_eq!(
            r.constraints.0[2],
            Constraint::residues(10, [3, 7]).unwrap()
        );
    }

    #[test]
    fn decode_accepts_exactly_units_mod_six() {
        let d = Decoder {
            kind: PolygonalKind::new(5).unwrap(),
            scale: 1,
        };
        for t in -300i64..=300 {
            let decodable = d.index_of(t).is_some();
            assert_eq!(decodable, Constraint::CoprimeTo6.matches(t), "t = {t}");
            if let Some(x) = d.index_of(t) {
                let back = d.kind.square_completion().coordinate(x).unwrap();
                assert_eq!(back.abs(), t.abs());
            }
        }
    }

    #[test]
    fn pentagonal_witness_examples() {
        assert_eq!(witness_pentagonal(1, 3, 0).unwrap().indices, [0, 0, 0]);
        assert_eq!(witness_pentagonal(1, 3, 1).unwrap().indices, [0, 1, 0]);
        let w = witness_pentagonal(2, 3, 2).unwrap();
        assert_eq!(w.indices, [0, 1, 0]);
        assert_eq!(
            w.certificate.final_representation,
            Representation::new(1, 5, 1)
        );
        assert!(matches!(
            witness_pentagonal(1, 1, 5),
            Err(Error::UnsupportedSum(_))
        ));
    }

    #[test]
    fn mixed_witness_examples() {
        assert_eq!(witness_p3_p5_p11(0).unwrap().indices, [0, 0, 0]);
        assert_eq!(witness_p3_p5_p11(1).unwrap().indices, [0, 1, 0]);
        assert_eq!(witness_p3_p5_p11(2).unwrap().indices, [0, 1, 1]);
        assert_eq!(witness_3p3_p5_p7(0).unwrap().indices, [0, 0, 0]);
        assert_eq!(witness_3p3_p5_p7(1).unwrap().indices, [0, 1, 0]);
        assert_eq!(witness_3p3_p5_p7(2).unwrap().indices, [0, -1, 0]);
    }

    #[test]
    fn witness_respects_caller_term_order() {
        let sum: SumForm = "p11+p3+p5".parse().unwrap();
        let w = witness(&sum, 2).unwrap();
        assert_eq!(w.indices, [1, 0, 1]);
        assert_eq!(sum.eval(&w.indices).unwrap(), 2);
        let sum: SumForm = "3p5+p5+p5".parse().unwrap();
        let w = witness(&sum, 40).unwrap();
        assert_eq!(sum.eval(&w.indices).unwrap(), 40);
        assert!(matches!(
            witness(&"p5+p5+p5".parse().unwrap(), 3),
            Err(Error::UnsupportedSum(_))
        ));
        let over_n = SumForm::pentagonal(1, 3)
            .unwrap()
            .with_domain(Domain::Naturals);
        assert!(witness(&over_n, 3).is_err());
    }

    #[test]
    fn fallback_route_is_sound() {
        for n in 0..200 {
            let w = witness_3p3_p5_p7_fallback(n).unwrap();
            assert!(w.certificate.fallback);
            assert_eq!(three_p3_p5_p7().eval(&w.indices).unwrap(), n);
        }
    }

    #[test]
    fn small_range_soundness() {
        for sum in supported_sums() {
            for n in 0..500 {
                let w = witness(&sum, n).unwrap_or_else(|e| panic!("{sum} n={n}: {e}"));
                assert_eq!(sum.eval(&w.indices).unwrap(), n, "{sum} n={n}");
                assert!(!w.certificate.fallback, "{sum} n={n} took the fallback");
            }
        }
    }
}
