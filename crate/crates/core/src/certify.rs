//! Certificates: replayable records of a witness construction, an
//! independent verifier, and a canonical JSON encoding.
//!
//! The verifier never calls pipeline code. It re-checks the initial
//! representation, replays every step through [`Chain`], checks the final
//! representation against the reduction, checks the reduction itself
//! against the sum by square completion, and evaluates the decoded indices.
//!
//! # JSON layout
//!
//! Fields appear in a fixed order. Every mathematical integer is a decimal
//! string; term positions are plain numbers.
//!
//! ```text
//! {
//!   "version": 1,
//!   "sum": "p5+p5+3p5",
//!   "domain": "Z",
//!   "n": "1",
//!   "reduction": {
//!     "multiplier": "24", "constant": "5",
//!     "form": ["1", "1", "3"],
//!     "constraints": ["coprime6", "coprime6", "coprime6"],
//!     "scales": ["1", "1", "1"]
//!   },
//!   "source": {
//!     "kind": "direct-search", "form": ["1", "1", "3"],
//!     "constraints": ["any", "any", "any"], "value": "29"
//!   },
//!   "initial": ["1", "1", "3"],
//!   "steps": [
//!     { "rule": "odd-pair", "positions": [1, 2], "inputs": ["1", "3"],
//!       "outputs": ["1", "3"], "value": "29" }
//!   ],
//!   "final": ["1", "5", "1"],
//!   "indices": ["0", "1", "0"],
//!   "fallback": false
//! }
//! ```
//!
//! Known rules: `shift`, `odd-pair`, `coprime6-pair`, `jacobi`,
//! `coprime3-pair`, `five-split`, `swap`, `negate`, `extract-factor`.
//! Source kinds: `direct-search`, `three-squares`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::is_odd;
use crate::pipelines::{Decoder, Domain, ReductionTarget, SumForm};
use crate::ternary::{Constraint, CoordConstraint, DiagonalForm, Representation};
use crate::transforms::{Chain, RewriteStep, Rule};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    /// Canonical representation found by [`crate::ternary::represent`].
    DirectSearch,
    /// Three odd squares summing to `8n + 3`.
    ThreeSquares,
}

impl SourceKind {
    pub fn name(self) -> &'static str {
        match self {
            SourceKind::DirectSearch => "direct-search",
            SourceKind::ThreeSquares => "three-squares",
        }
    }
}

impl FromStr for SourceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct-search" => Ok(SourceKind::DirectSearch),
            "three-squares" => Ok(SourceKind::ThreeSquares),
            _ => Err(format!("unknown source kind {s:?}")),
        }
    }
}

/// Where the initial representation came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub kind: SourceKind,
    pub form: DiagonalForm,
    pub constraints: CoordConstraint,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub version: u32,
    pub sum: SumForm,
    pub n: u64,
    pub reduction: ReductionTarget,
    pub source: Source,
    pub initial: Vec<i64>,
    pub steps: Vec<RewriteStep>,
    pub final_representation: Representation,
    pub indices: [i64; 3],
    /// Set when the constrained-search route replaced a rewrite chain.
    pub fallback: bool,
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection(pub String);

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Rejection {}

macro_rules! reject {
    ($($arg:tt)*) => {
        return Err(Rejection(format!($($arg)*)))
    };
}

fn checked_affine(n: u64, mul: u64, add: u64) -> Option<u64> {
    n.checked_mul(mul)?.checked_add(add)
}

/// Checks a certificate from scratch.
pub fn verify(cert: &Certificate) -> Result<(), Rejection> {
    if cert.version != CERTIFICATE_VERSION {
        reject!("unsupported certificate version {}", cert.version);
    }
    let terms = cert.sum.terms();
    if terms.len() != 3 {
        reject!("sum {} does not have three terms", cert.sum);
    }
    if cert.sum.domain != Domain::Integers {
        reject!("certificates cover sums over Z only");
    }
    let red = &cert.reduction;
    let target = checked_affine(cert.n, red.multiplier, red.constant)
        .ok_or_else(|| Rejection("reduction target overflows".into()))?;

    check_reduction(cert)?;

    // Initial representation.
    let src = &cert.source;
    if cert.initial.len() != 3 {
        reject!(
            "initial representation has {} coordinates",
            cert.initial.len()
        );
    }
    let initial = Representation::new(cert.initial[0], cert.initial[1], cert.initial[2]);
    match src.kind {
        SourceKind::DirectSearch => {
            if src.value != target {
                reject!(
                    "source value {} differs from reduction target {target}",
                    src.value
                );
            }
        }
        SourceKind::ThreeSquares => {
            let want =
                checked_affine(cert.n, 8, 3).ok_or_else(|| Rejection("8n+3 overflows".into()))?;
            if src.value != want {
                reject!(
                    "three-squares source value {} is not 8n+3 = {want}",
                    src.value
                );
            }
            if src.form.coefficients() != [1, 1, 1] {
                reject!("three-squares source must use the form 1,1,1");
            }
            if !initial.coords().into_iter().all(is_odd) {
                reject!("three-squares source {initial} has an even coordinate");
            }
        }
    }
    match src.form.value(&initial) {
        Ok(v) if v == src.value => {}
        Ok(v) => reject!(
            "initial {initial} has value {v} under {}, not {}",
            src.form,
            src.value
        ),
        Err(e) => reject!("initial {initial}: {e}"),
    }
    if !src.constraints.matches(&initial) {
        reject!("initial {initial} violates the source constraints");
    }

    // Replay.
    let mut chain = Chain::new(src.form.coefficients().to_vec(), cert.initial.clone())
        .map_err(|e| Rejection(e.to_string()))?;
    for (i, step) in cert.steps.iter().enumerate() {
        chain
            .replay(step)
            .map_err(|e| Rejection(format!("step {i}: {e}")))?;
    }
    let fin = cert.final_representation;
    if chain.coords() != fin.coords() {
        reject!(
            "replay ends at {:?}, certificate claims {fin}",
            chain.coords()
        );
    }
    if chain.coeffs() != red.form.coefficients() {
        reject!(
            "replay ends on form {:?}, reduction uses {}",
            chain.coeffs(),
            red.form
        );
    }
    match red.form.value(&fin) {
        Ok(v) if v == target => {}
        Ok(v) => reject!("final {fin} has value {v}, expected {target}"),
        Err(e) => reject!("final {fin}: {e}"),
    }
    if !red.constraints.matches(&fin) {
        reject!("final {fin} violates the reduction constraints");
    }

    // Decoded indices.
    for (i, (&x, t)) in cert.indices.iter().zip(fin.coords()).enumerate() {
        let dec = &red.decoders[i];
        let coord = dec
            .kind
            .square_completion()
            .coordinate(x)
            .ok()
            .and_then(|c| c.checked_mul(dec.scale as i64));
        if coord.map(i64::unsigned_abs) != Some(t.unsigned_abs()) {
            reject!("index {x} does not encode coordinate {t}");
        }
    }
    let mut total = 0u64;
    for (term, &x) in terms.iter().zip(&cert.indices) {
        let v = term
            .kind
            .eval(x)
            .ok()
            .and_then(|p| p.checked_mul(term.coefficient))
            .and_then(|p| p.checked_add(total));
        total = v.ok_or_else(|| Rejection("sum value overflows".into()))?;
    }
    if total != cert.n {
        reject!(
            "indices {:?} evaluate to {total}, not {}",
            cert.indices,
            cert.n
        );
    }
    Ok(())
}

/// The reduction must be the square completion of the sum:
/// `L e_i = coef_i scale_i^2 A_i` and `K = sum coef_i scale_i^2 B_i`.
fn check_reduction(cert: &Certificate) -> Result<(), Rejection> {
    let red = &cert.reduction;
    let coeffs = red.form.coefficients();
    let mut constant: u128 = 0;
    for (i, term) in cert.sum.terms().iter().enumerate() {
        let dec = &red.decoders[i];
        if dec.kind != term.kind {
            reject!(
                "coordinate {i} decodes to {}, term is {}",
                dec.kind,
                term.kind
            );
        }
        if red.constraints.0[i] != dec.constraint() {
            reject!(
                "coordinate {i} constraint {} is not the decoding condition {}",
                red.constraints.0[i],
                dec.constraint()
            );
        }
        let sc = term.kind.square_completion();
        let weight = coeffs[i] as u128 * (dec.scale as u128).pow(2);
        if red.multiplier as u128 * term.coefficient as u128 != weight * sc.scale as u128 {
            reject!(
                "reduction coefficient {} does not match term {i}",
                coeffs[i]
            );
        }
        constant += weight * sc.offset as u128;
    }
    if constant != red.constant as u128 {
        reject!("reduction constant {} should be {constant}", red.constant);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    version: u32,
    sum: String,
    domain: String,
    n: String,
    reduction: ReductionDoc,
    source: SourceDoc,
    initial: Vec<String>,
    steps: Vec<StepDoc>,
    #[serde(rename = "final")]
    final_representation: Vec<String>,
    indices: Vec<String>,
    fallback: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReductionDoc {
    multiplier: String,
    constant: String,
    form: Vec<String>,
    constraints: Vec<String>,
    scales: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceDoc {
    kind: String,
    form: Vec<String>,
    constraints: Vec<String>,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    rule: String,
    positions: Vec<usize>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    value: String,
}

/// A certificate that could not be parsed, with the offending location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// `line:column` for syntax errors, a field path otherwise.
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

fn strs<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

impl Certificate {
    /// Canonical pretty-printed JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let red = &self.reduction;
        let doc = CertificateDoc {
            version: self.version,
            sum: self.sum.to_string(),
            domain: self.sum.domain.to_string(),
            n: self.n.to_string(),
            reduction: ReductionDoc {
                multiplier: red.multiplier.to_string(),
                constant: red.constant.to_string(),
                form: strs(&red.form.coefficients()),
                constraints: strs(&red.constraints.0),
                scales: red.decoders.iter().map(|d| d.scale.to_string()).collect(),
            },
            source: SourceDoc {
                kind: self.source.kind.name().to_string(),
                form: strs(&self.source.form.coefficients()),
                constraints: strs(&self.source.constraints.0),
                value: self.source.value.to_string(),
            },
            initial: strs(&self.initial),
            steps: self
                .steps
                .iter()
                .map(|s| StepDoc {
                    rule: s.rule.name().to_string(),
                    positions: s.positions.clone(),
                    inputs: strs(&s.inputs),
                    outputs: strs(&s.outputs),
                    value: s.value.to_string(),
                })
                .collect(),
            final_representation: strs(&self.final_representation.coords()),
            indices: strs(&self.indices),
            fallback: self.fallback,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| ParseError {
            location: format!("{}:{}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        doc.into_certificate()
    }
}

fn field_err(path: &str, message: impl ToString) -> ParseError {
    ParseError {
        location: path.to_string(),
        message: message.to_string(),
    }
}

fn parse_num<T: FromStr>(path: &str, s: &str) -> Result<T, ParseError> {
    // Only plain decimal: no '+', no whitespace.
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(field_err(path, format!("{s:?} is not a decimal integer")));
    }
    s.parse()
        .map_err(|_| field_err(path, format!("{s:?} is out of range")))
}

fn parse_list<T: FromStr>(path: &str, items: &[String]) -> Result<Vec<T>, ParseError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_num(&format!("{path}[{i}]"), s))
        .collect()
}

fn parse_triple<T: FromStr + Copy>(path: &str, items: &[String]) -> Result<[T; 3], ParseError> {
    let v: Vec<T> = parse_list(path, items)?;
    <[T; 3]>::try_from(v)
        .map_err(|v| field_err(path, format!("expected 3 entries, got {}", v.len())))
}

fn parse_form(path: &str, items: &[String]) -> Result<DiagonalForm, ParseError> {
    let [a, b, c] = parse_triple::<u64>(path, items)?;
    DiagonalForm::new(a, b, c).map_err(|e| field_err(path, e))
}

fn parse_constraints(path: &str, items: &[String]) -> Result<CoordConstraint, ParseError> {
    if items.len() != 3 {
        return Err(field_err(
            path,
            format!("expected 3 entries, got {}", items.len()),
        ));
    }
    let parse = |i: usize| {
        items[i]
            .parse::<Constraint>()
            .map_err(|e| field_err(&format!("{path}[{i}]"), e))
    };
    Ok(CoordConstraint([parse(0)?, parse(1)?, parse(2)?]))
}

impl CertificateDoc {
    fn into_certificate(self) -> Result<Certificate, ParseError> {
        let domain: Domain = self.domain.parse().map_err(|e| field_err("domain", e))?;
        let sum = self
            .sum
            .parse::<SumForm>()
            .map_err(|e| field_err("sum", e))?
            .with_domain(domain);
        if sum.terms().len() != 3 {
            return Err(field_err("sum", "expected three terms"));
        }
        let r = &self.reduction;
        let scales = parse_triple::<u64>("reduction.scales", &r.scales)?;
        if scales.contains(&0) {
            return Err(field_err("reduction.scales", "scales must be positive"));
        }
        let decoders = [0, 1, 2].map(|i| Decoder {
            kind: sum.terms()[i].kind,
            scale: scales[i],
        });
        let reduction = ReductionTarget {
            multiplier: parse_num("reduction.multiplier", &r.multiplier)?,
            constant: parse_num("reduction.constant", &r.constant)?,
            form: parse_form("reduction.form", &r.form)?,
            constraints: parse_constraints("reduction.constraints", &r.constraints)?,
            decoders,
        };
        let s = &self.source;
        let source = Source {
            kind: s.kind.parse().map_err(|e| field_err("source.kind", e))?,
            form: parse_form("source.form", &s.form)?,
            constraints: parse_constraints("source.constraints", &s.constraints)?,
            value: parse_num("source.value", &s.value)?,
        };
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, st)| {
                let path = format!("steps[{i}]");
                Ok(RewriteStep {
                    rule: st
                        .rule
                        .parse::<Rule>()
                        .map_err(|e| field_err(&format!("{path}.rule"), e))?,
                    positions: st.positions.clone(),
                    inputs: parse_list(&format!("{path}.inputs"), &st.inputs)?,
                    outputs: parse_list(&format!("{path}.outputs"), &st.outputs)?,
                    value: parse_num(&format!("{path}.value"), &st.value)?,
                })
            })
            .collect::<Result<_, ParseError>>()?;
        let fin = parse_triple::<i64>("final", &self.final_representation)?;
        Ok(Certificate {
            version: self.version,
            sum,
            n: parse_num("n", &self.n)?,
            reduction,
            source,
            initial: parse_list("initial", &self.initial)?,
            steps,
            final_representation: Representation::from(fin),
            indices: parse_triple("indices", &self.indices)?,
            fallback: self.fallback,
        })
    }
}

/// Serializes and parses back.
pub fn roundtrip(cert: &Certificate) -> Result<Certificate, ParseError> {
    Certificate::from_json(&cert.to_json())
}
