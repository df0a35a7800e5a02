//! Oracles and corpora shared by the integration suites.

#![allow(dead_code)]

use serde_json::Value;

use polysum::certify::{verify, Certificate};
use polysum::transforms::{
    five_split, jacobi_split, shift, to_coprime3_pair, to_coprime6_pair, to_odd_pair, Rule,
};

pub const COORD_BOUND: i64 = 50;
pub const SWEEP_LIMIT: i64 = 10_000;

/// Pairs `b <= c <= 10` excluded by the necessity filter, with the least
/// `n` that `p5 + b p5 + c p5` misses over Z. Frozen from the naive oracle
/// in `filter_golden.rs`.
pub const GOLDEN_COUNTEREXAMPLES: [((u64, u64), u64); 35] = [
    ((1, 7), 25),
    ((2, 5), 18),
    ((2, 7), 27),
    ((2, 9), 8),
    ((2, 10), 8),
    ((3, 5), 19),
    ((3, 10), 9),
    ((4, 4), 3),
    ((4, 5), 3),
    ((4, 6), 3),
    ((4, 7), 3),
    ((4, 8), 3),
    ((4, 9), 3),
    ((4, 10), 3),
    ((5, 5), 3),
    ((5, 6), 3),
    ((5, 7), 3),
    ((5, 8), 3),
    ((5, 9), 3),
    ((5, 10), 3),
    ((6, 6), 3),
    ((6, 7), 3),
    ((6, 8), 3),
    ((6, 9), 3),
    ((6, 10), 3),
    ((7, 7), 3),
    ((7, 8), 3),
    ((7, 9), 3),
    ((7, 10), 3),
    ((8, 8), 3),
    ((8, 9), 3),
    ((8, 10), 3),
    ((9, 9), 3),
    ((9, 10), 3),
    ((10, 10), 3),
];

pub fn pentagonal(x: i64) -> i64 {
    x * (3 * x - 1) / 2
}

fn odd(t: i64) -> bool {
    t.rem_euclid(2) == 1
}

fn coprime(t: i64, q: i64) -> bool {
    let (mut a, mut b) = (t.abs(), q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

fn form(coeffs: &[i64], coords: &[i64]) -> i64 {
    coeffs.iter().zip(coords).map(|(k, t)| k * t * t).sum()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Runs every rewrite on all inputs with coordinates in
/// `[-COORD_BOUND, COORD_BOUND]`. Inputs meeting a rule's precondition must
/// succeed, preserve the value (up to the rule's fixed factor) and satisfy
/// the output constraint; the others must be rejected. Returns the number
/// of valid inputs checked.
pub fn transform_suite() -> Result<u64, String> {
    let b = COORD_BOUND;
    let mut valid = 0u64;
    for x in -b..=b {
        for y in -b..=b {
            let w3 = form(&[1, 3], &[x, y]);
            let w2 = form(&[1, 2], &[x, y]);
            let w1 = form(&[1, 1], &[x, y]);

            for sign in [1, -1] {
                let r = shift(x, y, sign);
                if (x - y).rem_euclid(2) == 0 {
                    let (u, v) = r.map_err(|e| format!("shift({x},{y},{sign}): {e}"))?;
                    check(form(&[1, 3], &[u, v]) == w3, || {
                        format!("shift({x},{y},{sign}) value")
                    })?;
                    valid += 1;
                } else {
                    check(r.is_err(), || {
                        format!("shift({x},{y},{sign}) accepted mixed parity")
                    })?;
                }
            }

            let r = to_odd_pair(x, y);
            if w3 % 8 == 4 {
                let (u, v) = r.map_err(|e| format!("odd-pair({x},{y}): {e}"))?;
                check(form(&[1, 3], &[u, v]) == w3 && odd(u) && odd(v), || {
                    format!("odd-pair({x},{y}) gave ({u},{v})")
                })?;
                valid += 1;
            } else {
                check(r.is_err(), || format!("odd-pair({x},{y}) accepted {w3}"))?;
            }

            let r = to_coprime6_pair(x, y);
            if odd(x) && odd(y) && x % 3 != 0 {
                let (u, v) = r.map_err(|e| format!("coprime6-pair({x},{y}): {e}"))?;
                check(
                    form(&[1, 3], &[u, v]) == w3 && coprime(u, 6) && coprime(v, 6),
                    || format!("coprime6-pair({x},{y}) gave ({u},{v})"),
                )?;
                valid += 1;
            } else {
                check(r.is_err(), || format!("coprime6-pair({x},{y}) accepted"))?;
            }

            let r = to_coprime3_pair(x, y);
            if w2 > 0 && w2 % 3 == 0 {
                let (u, v) = r.map_err(|e| format!("coprime3-pair({x},{y}): {e}"))?;
                check(
                    form(&[1, 2], &[u, v]) == w2 && coprime(u, 3) && coprime(v, 3),
                    || format!("coprime3-pair({x},{y}) gave ({u},{v})"),
                )?;
                valid += 1;
            } else {
                check(r.is_err(), || format!("coprime3-pair({x},{y}) accepted"))?;
            }

            let r = five_split(x, y);
            if odd(x) && odd(y) && w1 % 5 == 0 {
                let (u, v) = r.map_err(|e| format!("five-split({x},{y}): {e}"))?;
                check(5 * form(&[1, 1], &[u, v]) == w1 && odd(u) && odd(v), || {
                    format!("five-split({x},{y}) gave ({u},{v})")
                })?;
                valid += 1;
            } else {
                check(r.is_err(), || format!("five-split({x},{y}) accepted"))?;
            }

            let r = Rule::Swap.apply(&[x, y]).map_err(|e| e.to_string())?;
            check(r == [y, x], || format!("swap({x},{y}) gave {r:?}"))?;
            valid += 1;

            for z in -b..=b {
                let r = jacobi_split(x, y, z);
                if (x - y).rem_euclid(2) == 0 {
                    let (u, v, t) = r.map_err(|e| format!("jacobi({x},{y},{z}): {e}"))?;
                    check(
                        form(&[1, 2, 6], &[u, v, t]) == 3 * form(&[1, 1, 1], &[x, y, z]),
                        || format!("jacobi({x},{y},{z}) gave ({u},{v},{t})"),
                    )?;
                    valid += 1;
                } else {
                    check(r.is_err(), || {
                        format!("jacobi({x},{y},{z}) accepted mixed parity")
                    })?;
                }
            }
        }

        let r = Rule::Negate.apply(&[x]).map_err(|e| e.to_string())?;
        check(r == [-x], || format!("negate({x}) gave {r:?}"))?;
        valid += 1;
        for d in 2..=b {
            let r = Rule::ExtractFactor.apply(&[x, d]);
            if x % d == 0 {
                let r = r.map_err(|e| format!("extract-factor({x},{d}): {e}"))?;
                check(r.len() == 1 && d * d * r[0] * r[0] == x * x, || {
                    format!("extract-factor({x},{d}) gave {r:?}")
                })?;
                valid += 1;
            } else {
                check(r.is_err(), || format!("extract-factor({x},{d}) accepted"))?;
            }
        }
    }
    Ok(valid)
}

/// Every representation `x^2 + 3y^2 = w` with `w = 4 (mod 8)` and
/// `w <= SWEEP_LIMIT` becomes an odd pair for the same `w`. Returns the
/// number of representations checked.
pub fn odd_pair_sweep() -> Result<u64, String> {
    let mut checked = 0;
    for x in -100i64..=100 {
        for y in -58i64..=58 {
            let w = form(&[1, 3], &[x, y]);
            if w > SWEEP_LIMIT || w % 8 != 4 {
                continue;
            }
            let (u, v) = to_odd_pair(x, y).map_err(|e| format!("odd-pair({x},{y}): {e}"))?;
            check(form(&[1, 3], &[u, v]) == w && odd(u) && odd(v), || {
                format!("odd-pair({x},{y}) gave ({u},{v})")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// Every `x^2 + 3y^2 <= SWEEP_LIMIT` with `x`, `y` odd and `3 ∤ x` becomes a
/// pair coprime to 6 for the same value. Returns the number checked.
pub fn coprime6_pair_sweep() -> Result<u64, String> {
    let mut checked = 0;
    for x in -100i64..=100 {
        for y in -58i64..=58 {
            let w = form(&[1, 3], &[x, y]);
            if w > SWEEP_LIMIT || !odd(x) || !odd(y) || x % 3 == 0 {
                continue;
            }
            let (u, v) =
                to_coprime6_pair(x, y).map_err(|e| format!("coprime6-pair({x},{y}): {e}"))?;
            check(
                form(&[1, 3], &[u, v]) == w && coprime(u, 6) && coprime(v, 6),
                || format!("coprime6-pair({x},{y}) gave ({u},{v})"),
            )?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// Single-field tampers of a certificate's JSON: every integer (quoted or
/// bare) incremented by one, and every rule name replaced by each other
/// rule name. Each entry is a description and the tampered document.
pub fn mutations(json: &str) -> Vec<(String, String)> {
    let doc: Value = serde_json::from_str(json).expect("certificate JSON");
    let mut paths = Vec::new();
    collect_paths(&doc, &mut Vec::new(), &mut paths);
    let mut out = Vec::new();
    for path in paths {
        let leaf = lookup(&doc, &path).clone();
        let replacements: Vec<Value> = match &leaf {
            Value::Number(n) => vec![Value::from(n.as_i64().expect("integer") + 1)],
            Value::String(s) if path.last().map(String::as_str) == Some("rule") => Rule::ALL
                .iter()
                .map(|r| r.name())
                .filter(|name| name != s)
                .map(Value::from)
                .collect(),
            Value::String(s) => match s.parse::<i128>() {
                Ok(v) => vec![Value::from((v + 1).to_string())],
                Err(_) => vec![],
            },
            _ => vec![],
        };
        for replacement in replacements {
            let mut tampered = doc.clone();
            *lookup_mut(&mut tampered, &path) = replacement.clone();
            out.push((
                format!("{} := {replacement}", path.join(".")),
                serde_json::to_string_pretty(&tampered).unwrap(),
            ));
        }
    }
    out
}

fn collect_paths(v: &Value, prefix: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                prefix.push(k.clone());
                collect_paths(child, prefix, out);
                prefix.pop();
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                prefix.push(i.to_string());
                collect_paths(child, prefix, out);
                prefix.pop();
            }
        }
        _ => out.push(prefix.clone()),
    }
}

fn lookup<'a>(v: &'a Value, path: &[String]) -> &'a Value {
    path.iter().fold(v, |v, key| match v {
        Value::Array(items) => &items[key.parse::<usize>().unwrap()],
        _ => &v[key.as_str()],
    })
}

fn lookup_mut<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
    path.iter().fold(v, |v, key| match v {
        Value::Array(items) => &mut items[key.parse::<usize>().unwrap()],
        _ => &mut v[key.as_str()],
    })
}

/// Whether a certificate document is rejected, either by the parser or by
/// the verifier.
pub fn rejected(json: &str) -> bool {
    match Certificate::from_json(json) {
        Ok(cert) => verify(&cert).is_err(),
        Err(_) => true,
    }
}
