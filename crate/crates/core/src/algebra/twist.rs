use serde::Serialize;

use crate::groupoid::Groupoid;
use crate::scalar::{FieldAutomorphism, FieldDescriptor, Scalar};

/// Twisting data `(α, σ)` for `k[G, α, σ]`. `alpha` is indexed by
/// `f * |G| + g` and is meant to be defined exactly on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    pub alpha: Vec<Option<Scalar>>,
    pub sigma: Vec<FieldAutomorphism>,
}

impl Twist {
    /// `α ≡ 1` on composable pairs, `σ ≡ id`.
    pub fn trivial(groupoid: &Groupoid, field: &FieldDescriptor) -> Self {
        let n = groupoid.len();
        let alpha = (0..n * n)
            .map(|k| groupoid.mul(k / n, k % n).map(|_| field.one()))
            .collect();
        Twist {
            alpha,
            sigma: vec![FieldAutomorphism::Identity; n],
        }
    }

    pub fn alpha(&self, n: usize, f: usize, g: usize) -> Option<&Scalar> {
        self.alpha[f * n + g].as_ref()
    }

    pub fn set_alpha(&mut self, n: usize, f: usize, g: usize, value: Option<Scalar>) {
        self.alpha[f * n + g] = value;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    /// 1: `σ_f σ_g = σ_fg`; 2: cocycle identity; 3: normalization;
    /// 4: `α(f,g)` defined and nonzero iff `fg` defined.
    pub condition: u8,
    pub passed: bool,
    /// Number of pairs or triples examined.
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub conditions: Vec<ConditionCheck>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, k: u8) -> &ConditionCheck {
        &self.conditions[(k - 1) as usize]
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| !c.passed)
    }
}

fn compose(a: FieldAutomorphism, b: FieldAutomorphism) -> FieldAutomorphism {
    use FieldAutomorphism::*;
    match (a, b) {
        (Identity, x) | (x, Identity) => x,
        (Conjugation, Conjugation) => Identity,
    }
}

/// Checks conditions (1)–(4) exhaustively over all pairs and composable
/// triples. Condition (2) and (3) are only evaluated where (4) holds.
pub fn validate_twist(field: &FieldDescriptor, groupoid: &Groupoid, twist: &Twist) -> TwistReport {
    let n = groupoid.len();
    let name = |g: usize| groupoid.name(g);
    let alpha = |f: usize, g: usize| twist.alpha(n, f, g).filter(|a| !a.is_zero() && field.contains(a));

    let mut c1 = ConditionCheck { condition: 1, passed: true, checked: 0, witness: None };
    for g in 0..n {
        if !field.automorphism_defined(twist.sigma[g]) {
            c1.passed = false;
            c1.witness.get_or_insert_with(|| format!("sigma({}) is not an automorphism of {field}", name(g)));
        }
    }
    for f in 0..n {
        for g in 0..n {
            if let Some(fg) = groupoid.mul(f, g) {
                c1.checked += 1;
                if compose(twist.sigma[f], twist.sigma[g]) != twist.sigma[fg] {
                    c1.passed = false;
                    c1.witness
                        .get_or_insert_with(|| format!("sigma({})sigma({}) != sigma({})", name(f), name(g), name(fg)));
                }
            }
        }
    }

    let mut c4 = ConditionCheck { condition: 4, passed: true, checked: 0, witness: None };
    for f in 0..n {
        for g in 0..n {
            c4.checked += 1;
            let defined = groupoid.mul(f, g).is_some();
            let raw = twist.alpha(n, f, g);
            let ok = match raw {
                None => !defined,
                Some(a) => defined && !a.is_zero() && field.contains(a),
            };
            if !ok {
                c4.passed = false;
                c4.witness.get_or_insert_with(|| match raw {
                    Some(a) if a.is_zero() => format!("alpha({},{}) must be nonzero", name(f), name(g)),
                    Some(a) if !field.contains(a) => format!("alpha({},{}) = {a} is not in {field}", name(f), name(g)),
                    Some(_) => format!("alpha({},{}) given but the product is undefined", name(f), name(g)),
                    None => format!("alpha({},{}) missing for a composable pair", name(f), name(g)),
                });
            }
        }
    }

    let mut c3 = ConditionCheck { condition: 3, passed: true, checked: 0, witness: None };
    for f in 0..n {
        c3.checked += 1;
        let (s, t) = (groupoid.source(f), groupoid.target(f));
        for (a, b) in [(f, t), (s, f)] {
            if let Some(v) = alpha(a, b) {
                if !v.is_one() {
                    c3.passed = false;
                    c3.witness
                        .get_or_insert_with(|| format!("alpha({},{}) = {v}, expected 1", name(a), name(b)));
                }
            }
        }
    }

    let mut c2 = ConditionCheck { condition: 2, passed: true, checked: 0, witness: None };
    for f in 0..n {
        for g in 0..n {
            let Some(fg) = groupoid.mul(f, g) else { continue };
            for h in 0..n {
                let Some(gh) = groupoid.mul(g, h) else { continue };
                c2.checked += 1;
                let (Some(a_fg), Some(a_fg_h), Some(a_gh), Some(a_f_gh)) =
                    (alpha(f, g), alpha(fg, h), alpha(g, h), alpha(f, gh))
                else {
                    continue;
                };
                let Ok(twisted) = field.apply(twist.sigma[f], a_gh) else { continue };
                let lhs = a_fg * a_fg_h;
                let rhs = &twisted * a_f_gh;
                if lhs != rhs {
                    c2.passed = false;
                    c2.witness.get_or_insert_with(|| {
                        format!(
                            "triple ({}, {}, {}): alpha(f,g)alpha(fg,h) = {lhs} but sigma_f(alpha(g,h))alpha(f,gh) = {rhs}",
                            name(f),
                            name(g),
                            name(h)
                        )
                    });
                }
            }
        }
    }

    TwistReport {
        conditions: vec![c1, c2, c3, c4],
    }
}
