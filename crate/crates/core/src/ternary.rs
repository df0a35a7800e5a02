//! Representations by diagonal ternary forms `a x^2 + b y^2 + c z^2` under
//! per-coordinate congruence constraints.
//!
//! The canonical representation of `n` is the least triple under the order
//! `(|x|, |y|, |z|)` followed by the sign pattern, where a nonnegative
//! coordinate precedes its negation. Every search in this module returns
//! that triple, so results are stable for golden tests and certificates.

use std::fmt;
use std::str::FromStr;

use crate::arith::{coprime_to, exact_sqrt, is_odd, quadratic_value};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl DiagonalForm {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::InvalidForm(a, b, c));
        }
        Ok(DiagonalForm { a, b, c })
    }

    pub fn coefficients(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn value(&self, r: &Representation) -> Result<u64> {
        quadratic_value(&self.coefficients(), &r.coords())
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConstraint(format!("bad form {s:?}, expected a,b,c"));
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match parts[..] {
            [a, b, c] => DiagonalForm::new(a, b, c),
            _ => Err(bad()),
        }
    }
}

/// A congruence condition on one coordinate. Conditions are tested on the
/// signed coordinate itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constraint {
    Any,
    Odd,
    CoprimeTo3,
    CoprimeTo6,
    /// `t mod modulus` lies in `residues` (sorted, reduced, nonempty).
    Residues {
        modulus: u64,
        residues: Vec<u64>,
    },
}

impl Constraint {
    pub fn residues(modulus: u64, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidConstraint("modulus must be positive".into()));
        }
        let mut set: Vec<u64> = residues
            .into_iter()
            .map(|r| r.rem_euclid(modulus as i64) as u64)
            .collect();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(Error::InvalidConstraint("empty residue set".into()));
        }
        Ok(Constraint::Residues {
            modulus,
            residues: set,
        })
    }

    pub fn matches(&self, t: i64) -> bool {
        match self {
            Constraint::Any => true,
            Constraint::Odd => is_odd(t),
            Constraint::CoprimeTo3 => coprime_to(t, 3),
            Constraint::CoprimeTo6 => coprime_to(t, 6),
            Constraint::Residues { modulus, residues } => {
                let r = t.rem_euclid(*modulus as i64) as u64;
                residues.binary_search(&r).is_ok()
            }
        }
    }

    fn admits_magnitude(&self, t: u64) -> bool {
        let t = t as i64;
        self.matches(t) || self.matches(-t)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Any => f.write_str("any"),
            Constraint::Odd => f.write_str("odd"),
            Constraint::CoprimeTo3 => f.write_str("coprime3"),
            Constraint::CoprimeTo6 => f.write_str("coprime6"),
            Constraint::Residues { modulus, residues } => {
                let list: Vec<String> = residues.iter().map(u64::to_string).collect();
                write!(f, "{} mod {}", list.join(","), modulus)
            }
        }
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "any" => Ok(Constraint::Any),
            "odd" => Ok(Constraint::Odd),
            "coprime3" => Ok(Constraint::CoprimeTo3),
            "coprime6" => Ok(Constraint::CoprimeTo6),
            other => {
                let bad = || Error::InvalidConstraint(format!("unrecognized constraint {other:?}"));
                let (list, modulus) = other.split_once(" mod ").ok_or_else(bad)?;
                let modulus: u64 = modulus.trim().parse().map_err(|_| bad())?;
                let residues = list
                    .split(',')
                    .map(|r| r.trim().parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Constraint::residues(modulus, residues)
            }
        }
    }
}

/// One [`Constraint`] per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordConstraint(pub [Constraint; 3]);

impl CoordConstraint {
    pub fn unconstrained() -> Self {
        Self::all(Constraint::Any)
    }

    pub fn all(c: Constraint) -> Self {
        CoordConstraint([c.clone(), c.clone(), c])
    }

    pub fn matches(&self, r: &Representation) -> bool {
        self.0.iter().zip(r.coords()).all(|(c, t)| c.matches(t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Representation {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Representation {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Representation { x, y, z }
    }

    pub fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[i64; 3]> for Representation {
    fn from([x, y, z]: [i64; 3]) -> Self {
        Representation { x, y, z }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Signed candidates for a magnitude, nonnegative first.
fn signed(t: u64) -> impl Iterator<Item = i64> {
    let t = t as i64;
    std::iter::once(t).chain((t != 0).then_some(-t))
}

/// The canonical representation of `n` by `form` whose coordinates satisfy
/// `cons`, or `None` when no such representation exists.
pub fn represent(form: &DiagonalForm, n: u64, cons: &CoordConstraint) -> Option<Representation> {
    let [a, b, c] = form.coefficients();
    let [cx, cy, _] = &cons.0;
    let mut ax = 0u64;
    while a * ax * ax <= n {
        if cx.admits_magnitude(ax) {
            let rest_x = n - a * ax * ax;
            let mut ay = 0u64;
            while b * ay * ay <= rest_x {
                let rest_y = rest_x - b * ay * ay;
                if cy.admits_magnitude(ay) && rest_y.is_multiple_of(c) {
                    if let Some(az) = exact_sqrt(rest_y / c) {
                        if let Some(r) = first_signed(ax, ay, az, cons) {
                            return Some(r);
                        }
                    }
                }
                ay += 1;
            }
        }
        ax += 1;
    }
    None
}

fn first_signed(ax: u64, ay: u64, az: u64, cons: &CoordConstraint) -> Option<Representation> {
    let [cx, cy, cz] = &cons.0;
    for x in signed(ax).filter(|&x| cx.matches(x)) {
        for y in signed(ay).filter(|&y| cy.matches(y)) {
            if let Some(z) = signed(az).find(|&z| cz.matches(z)) {
                return Some(Representation { x, y, z });
            }
        }
    }
    None
}

/// `flags[n]` is true iff `n <= bound` is represented by `form` over Z.
pub fn representable_up_to(form: &DiagonalForm, bound: u64) -> Vec<bool> {
    let [a, b, c] = form.coefficients();
    let mut flags = vec![false; bound as usize + 1];
    let mut x = 0u64;
    while a * x * x <= bound {
        let vx = a * x * x;
        let mut y = 0u64;
        while vx + b * y * y <= bound {
            let vy = vx + b * y * y;
            let mut z = 0u64;
            while vy + c * z * z <= bound {
                flags[(vy + c * z * z) as usize] = true;
                z += 1;
            }
            y += 1;
        }
        x += 1;
    }
    flags
}

/// The excluded set of `form` restricted to `[0, bound]`, by exhaustive
/// enumeration of the form's values.
pub fn excluded_set_bruteforce(form: &DiagonalForm, bound: u64) -> Vec<u64> {
    representable_up_to(form, bound)
        .into_iter()
        .enumerate()
        .filter(|(_, hit)| !hit)
        .map(|(n, _)| n as u64)
        .collect()
}

/// Forms whose excluded sets have closed descriptions due to Dickson.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DicksonForm {
    /// `x^2 + y^2 + 3z^2`: excluded set `9^k (9l + 6)`.
    OneOneThree,
    /// `x^2 + 2y^2 + 3z^2`: excluded set `4^k (16l + 10)`.
    OneTwoThree,
    /// `x^2 + 3y^2 + 3z^2`: excluded set `9^k (3l + 2)`.
    OneThreeThree,
}

impl DicksonForm {
    pub const ALL: [DicksonForm; 3] = [
        DicksonForm::OneOneThree,
        DicksonForm::OneTwoThree,
        DicksonForm::OneThreeThree,
    ];

    /// Looks up the closed form for a coefficient triple, in any order.
    pub fn for_form(form: &DiagonalForm) -> Result<Self> {
        let mut k = form.coefficients();
        k.sort_unstable();
        match k {
            [1, 1, 3] => Ok(DicksonForm::OneOneThree),
            [1, 2, 3] => Ok(DicksonForm::OneTwoThree),
            [1, 3, 3] => Ok(DicksonForm::OneThreeThree),
            _ => Err(Error::UnsupportedForm(form.a, form.b, form.c)),
        }
    }

    pub fn form(self) -> DiagonalForm {
        let (a, b, c) = match self {
            DicksonForm::OneOneThree => (1, 1, 3),
            DicksonForm::OneTwoThree => (1, 2, 3),
            DicksonForm::OneThreeThree => (1, 3, 3),
        };
        DiagonalForm { a, b, c }
    }

    /// Membership in the closed-form excluded set, by exact division.
    pub fn excludes(self, mut n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let (base, modulus, residue) = match self {
            DicksonForm::OneOneThree => (9, 9, 6),
            DicksonForm::OneTwoThree => (4, 16, 10),
            DicksonForm::OneThreeThree => (9, 3, 2),
        };
        while n.is_multiple_of(base) {
            n /= base;
        }
        n % modulus == residue
    }
}

/// Whether `n` lies in the closed-form excluded set of one of the three
/// supported forms.
pub fn dickson_member(form: &DiagonalForm, n: u64) -> Result<bool> {
    Ok(DicksonForm::for_form(form)?.excludes(n))
}

/// Odd `x >= y >= z > 0` with `x^2 + y^2 + z^2 = 8n + 3`, least in `(x, y, z)`.
pub fn three_squares_odd(n: u64) -> Result<Representation> {
    let target = n
        .checked_mul(8)
        .and_then(|v| v.checked_add(3))
        .ok_or(Error::Overflow("8n+3"))?;
    // x^2 >= target / 3 for the largest coordinate.
    let mut x = (target / 3).isqrt() | 1;
    while x * x <= target {
        if 3 * x * x >= target {
            let rest = target - x * x;
            let mut y = (rest / 2).isqrt() | 1;
            while y <= x && y * y <= rest {
                if 2 * y * y >= rest {
                    if let Some(z) = exact_sqrt(rest - y * y) {
                        if z <= y && z % 2 == 1 {
                            return Ok(Representation::new(x as i64, y as i64, z as i64));
                        }
                    }
                }
                y += 2;
            }
        }
        x += 2;
    }
    Err(Error::SearchExhausted("three odd squares"))
}
