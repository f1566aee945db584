//! Sampled verification of the valuation axioms, the positives corollary
//! and equivalence of valuations.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gamma::GammaValue;
use super::valuation::ValuationMachinery;
use super::ValueError;
use crate::algebra::GradedElement;
use crate::pattern::oracle::{homogeneous_samples, sample_units, Window};
use crate::pattern::BoundPattern;
use crate::par::{self, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivesReport {
    pub agree: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// Sampled values on which the induced map was checked.
    pub map_checked: usize,
    /// The map `v(h) ↦ w(h)` is well defined, injective and preserves
    /// order and products on the sample.
    pub map_consistent: bool,
    pub witness: Option<String>,
}

/// Tallies one axiom: how many instances were checked and the first
/// failure, in sample order.
struct Tally {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, witness: None }
    }

    fn merge(&mut self, part: (usize, Option<String>)) {
        self.checked += part.0;
        if self.witness.is_none() {
            self.witness = part.1;
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck { name: self.name.to_string(), passed: self.witness.is_none(), checked: self.checked, witness: self.witness }
    }
}

pub const ZERO: &str = "(1) zero";
pub const ULTRAMETRIC: &str = "(2) ultrametric";
pub const MULTIPLICATIVE: &str = "(3) multiplicative";
pub const CANONICAL: &str = "(4) canonical";
pub const ASSOCIATIVE: &str = "ring associativity";

impl ValuationMachinery {
    fn show(&self, x: &GradedElement) -> String {
        self.parent().format_element(x)
    }

    /// `v` of `Σ 1_e` over the given idempotents.
    fn idempotent_value(&self, es: &[usize]) -> Result<GammaValue, ValueError> {
        self.valuate(&self.parent().idempotent_sum(es))
    }

    /// Checks axioms (1)–(4) and associativity of the ring.
    ///
    /// Homogeneous samples are `u·π^m·u_g` for sample units `u` and `m` in
    /// the window; (2) runs over all same-degree pairs, (3) over all
    /// composable pairs with units `±1`, and `random` seeded triples of
    /// random elements feed (2) and (4).
    pub fn check_axioms(&self, window: Window, random: usize, seed: u64, strategy: Strategy) -> AxiomReport {
        let q = self.parent().clone();
        let grp = q.groupoid().clone();
        let n = grp.len();
        let samples = homogeneous_samples(&q, window);
        let by_degree: Vec<Vec<GradedElement>> = (0..n)
            .map(|g| samples.iter().map(|(_, c)| GradedElement::homogeneous(g, c.clone())).collect())
            .collect();
        let light: Vec<Vec<GradedElement>> = (0..n)
            .map(|g| {
                samples
                    .iter()
                    .filter(|(_, c)| {
                        let u = c.clone() * q.field().pi_pow(-q.valuate(c).finite().unwrap_or(0));
                        u.is_one() || (-u).is_one()
                    })
                    .map(|(_, c)| GradedElement::homogeneous(g, c.clone()))
                    .collect()
            })
            .collect();

        let mut zero = Tally::new(ZERO);
        zero.checked += 1;
        if !self.valuate(&GradedElement::zero()).map(|v| v.is_infinite()).unwrap_or(false) {
            zero.witness = Some("v(0) is finite".into());
        }
        for x in by_degree.iter().flatten() {
            zero.checked += 1;
            if zero.witness.is_none() && self.valuate(x).map(|v| v.is_infinite()).unwrap_or(true) {
                zero.witness = Some(format!("v({}) is infinite", self.show(x)));
            }
        }

        let mut ultra = Tally::new(ULTRAMETRIC);
        for part in par::map_range(strategy, n, |g| self.ultrametric_pairs(&by_degree[g])) {
            ultra.merge(part);
        }

        let mut multi = Tally::new(MULTIPLICATIVE);
        for part in par::map_range(strategy, n, |g| self.multiplicative_pairs(g, &light)) {
            multi.merge(part);
        }

        let mut canon = Tally::new(CANONICAL);
        canon.merge(self.canonical_on(by_degree.iter().flatten()));

        let mut assoc = Tally::new(ASSOCIATIVE);
        assoc.merge(self.associativity());

        let triples = par::map_range(strategy, random, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let x = q.random_element(&mut rng);
            let y = q.random_element(&mut rng);
            let z = if rng.gen_bool(0.5) { q.random_element(&mut rng) } else { x.clone() };
            (self.ultrametric_triple(&x, &y, &z), self.canonical_on([&x, &y].into_iter()))
        });
        for (u, c) in triples {
            ultra.merge(u);
            canon.merge(c);
        }

        let checks = vec![zero.finish(), ultra.finish(), multi.finish(), canon.finish(), assoc.finish()];
        AxiomReport { passed: checks.iter().all(|c| c.passed), checks }
    }

    /// `v(x+y) ≥ min` for every pair of same-degree samples where one value
    /// dominates the other.
    fn ultrametric_pairs(&self, xs: &[GradedElement]) -> (usize, Option<String>) {
        let vals: Vec<GammaValue> = xs.iter().map(|x| self.valuate(x).expect("homogeneous")).collect();
        let mut checked = 0;
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in xs.iter().enumerate() {
                if !self.ge(&vals[j], &vals[i]) {
                    continue;
                }
                checked += 1;
                let s = x.add(y);
                match self.valuate(&s) {
                    Ok(vs) if self.ge(&vs, &vals[i]) => {}
                    Ok(vs) => {
                        return (
                            checked,
                            Some(format!(
                                "v({} + {}) = {} is not ≥ {}",
                                self.show(x),
                                self.show(y),
                                self.format(&vs),
                                self.format(&vals[i])
                            )),
                        )
                    }
                    Err(e) => return (checked, Some(format!("v({}): {e}", self.show(&s)))),
                }
            }
        }
        (checked, None)
    }

    fn ultrametric_triple(&self, x: &GradedElement, y: &GradedElement, z: &GradedElement) -> (usize, Option<String>) {
        let (vx, vy, vz) = match (self.valuate(x), self.valuate(y), self.valuate(z)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => return (1, Some(format!("no value for one of {}, {}, {}", self.show(x), self.show(y), self.show(z)))),
        };
        if !(self.ge(&vx, &vz) && self.ge(&vy, &vz)) {
            return (0, None);
        }
        match self.valuate(&x.add(y)) {
            Ok(v) if self.ge(&v, &vz) => (1, None),
            Ok(v) => (
                1,
                Some(format!(
                    "v({} + {}) = {} is not ≥ v({}) = {}",
                    self.show(x),
                    self.show(y),
                    self.format(&v),
                    self.show(z),
                    self.format(&vz)
                )),
            ),
            Err(e) => (1, Some(e.to_string())),
        }
    }

    fn multiplicative_pairs(&self, g: usize, light: &[Vec<GradedElement>]) -> (usize, Option<String>) {
        let q = self.parent();
        let grp = q.groupoid();
        let mut checked = 0;
        for h in 0..grp.len() {
            if grp.mul(g, h).is_none() {
                continue;
            }
            for x in &light[g] {
                for y in &light[h] {
                    checked += 1;
                    let lhs = self.valuate(&q.mul(x, y)).expect("homogeneous");
                    let rhs = self.mul(&self.valuate(x).expect("homogeneous"), &self.valuate(y).expect("homogeneous"));
                    if rhs.as_ref() != Some(&lhs) {
                        let shown = rhs.map(|r| self.format(&r)).unwrap_or_else(|| "undefined".into());
                        return (
                            checked,
                            Some(format!(
                                "v({}·{}) = {} but v({})v({}) = {shown}",
                                self.show(x),
                                self.show(y),
                                self.format(&lhs),
                                self.show(x),
                                self.show(y)
                            )),
                        );
                    }
                }
            }
        }
        (checked, None)
    }

    fn canonical_on<'a>(&self, xs: impl Iterator<Item = &'a GradedElement>) -> (usize, Option<String>) {
        let q = self.parent();
        let mut checked = 0;
        for x in xs {
            if x.is_zero() {
                continue;
            }
            checked += 1;
            let (s, t) = q.source_target(x);
            let outcome = (self.valuate(x), self.idempotent_value(&s), self.idempotent_value(&t));
            let (vx, vs, vt) = match outcome {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                _ => return (checked, Some(format!("no value around {}", self.show(x)))),
            };
            if self.ge(&vx, &vt) != self.ge(&vx, &vs) {
                return (
                    checked,
                    Some(format!(
                        "v({}) = {}: compared with v(t) = {} gives {}, with v(s) = {} gives {}",
                        self.show(x),
                        self.format(&vx),
                        self.format(&vt),
                        self.ge(&vx, &vt),
                        self.format(&vs),
                        self.ge(&vx, &vs)
                    )),
                );
            }
        }
        (checked, None)
    }

    /// `(xy)z = x(yz)` for every composable triple of degrees, with unit
    /// coefficients drawn from the sample units.
    fn associativity(&self) -> (usize, Option<String>) {
        let q = self.parent();
        let grp = q.groupoid();
        let n = grp.len();
        let units = sample_units(q);
        let coeffs = &units[..units.len().min(2)];
        let mut checked = 0;
        for f in 0..n {
            for g in (0..n).filter(|&g| grp.mul(f, g).is_some()) {
                for h in (0..n).filter(|&h| grp.mul(g, h).is_some()) {
                    for a in coeffs {
                        for c in coeffs {
                            let x = GradedElement::homogeneous(f, a.clone());
                            let y = GradedElement::homogeneous(g, c.clone());
                            let z = GradedElement::homogeneous(h, units.last().expect("nonempty").clone());
                            checked += 1;
                            if q.mul(&q.mul(&x, &y), &z) != q.mul(&x, &q.mul(&y, &z)) {
                                return (
                                    checked,
                                    Some(format!(
                                        "({}·{})·{} differs from {}·({}·{})",
                                        self.show(&x),
                                        self.show(&y),
                                        self.show(&z),
                                        self.show(&x),
                                        self.show(&y),
                                        self.show(&z)
                                    )),
                                );
                            }
                        }
                    }
                }
            }
        }
        (checked, None)
    }

    /// `{h ∈ H(R) : h⁻¹ ∉ R}` against `{h ∈ H(R) : v(h) > v(t(h))}` over
    /// the homogeneous window, with membership taken in `pattern`.
    pub fn positives_agree(&self, pattern: &BoundPattern, window: Window) -> PositivesReport {
        let q = self.parent();
        let grp = q.groupoid();
        let samples = homogeneous_samples(q, window);
        let mut checked = 0;
        for g in 0..grp.len() {
            let one_t = self.valuate_term(grp.target(g), &q.field().one());
            for (_, c) in &samples {
                let h = GradedElement::homogeneous(g, c.clone());
                if !pattern.contains(&h) {
                    continue;
                }
                checked += 1;
                let hi = q.g_inverse(&h).expect("homogeneous");
                let by_inverse = !pattern.contains(&hi);
                let vh = self.valuate_term(g, c);
                let by_value = self.gt(&vh, &one_t);
                if by_inverse != by_value {
                    return PositivesReport {
                        agree: false,
                        checked,
                        witness: Some(format!(
                            "{}: inverse outside is {by_inverse}, v(h) = {} > v(t(h)) = {} is {by_value}",
                            self.show(&h),
                            self.format(&vh),
                            self.format(&one_t)
                        )),
                    };
                }
            }
        }
        PositivesReport { agree: true, checked, witness: None }
    }

    /// Decides equivalence by `T_v = T_w`. When equivalent, also checks
    /// that `v(h) ↦ w(h)` is a well-defined order and product preserving
    /// bijection on the homogeneous window.
    pub fn equivalent(&self, other: &ValuationMachinery, window: Window) -> Result<EquivalenceReport, ValueError> {
        if !std::sync::Arc::ptr_eq(self.parent(), other.parent()) {
            return Err(ValueError::ParentMismatch);
        }
        let (tv, _) = self.recover_rings()?;
        let (tw, _) = other.recover_rings()?;
        if tv.bounds() != tw.bounds() {
            let grp = self.parent().groupoid();
            let g = (0..grp.len()).find(|&g| tv.bound(g) != tw.bound(g)).expect("bounds differ");
            return Ok(EquivalenceReport {
                equivalent: false,
                map_checked: 0,
                map_consistent: false,
                witness: Some(format!("T_v has bound {} at {}, T_w has {}", tv.bound(g), grp.name(g), tw.bound(g))),
            });
        }
        let q = self.parent();
        let grp = q.groupoid();
        let samples = homogeneous_samples(q, window);
        let elems: Vec<(usize, &crate::scalar::Scalar)> =
            (0..grp.len()).flat_map(|g| samples.iter().map(move |(_, c)| (g, c))).collect();
        let pairs: Vec<(GammaValue, GammaValue)> =
            elems.iter().map(|&(g, c)| (self.valuate_term(g, c), other.valuate_term(g, c))).collect();
        let mut forward: HashMap<&GammaValue, &GammaValue> = HashMap::new();
        let mut backward: HashMap<&GammaValue, &GammaValue> = HashMap::new();
        let mut witness = None;
        for (a, b) in &pairs {
            if *forward.entry(a).or_insert(b) != b || *backward.entry(b).or_insert(a) != a {
                witness = Some(format!("{} is sent to two values or shares an image", self.format(a)));
                break;
            }
        }
        let classes: Vec<(&GammaValue, &GammaValue)> = forward.iter().map(|(a, b)| (*a, *b)).collect();
        if witness.is_none() {
            'outer: for (a, fa) in &classes {
                for (b, fb) in &classes {
                    if self.ge(a, b) != other.ge(fa, fb) {
                        witness = Some(format!("order differs at {} vs {}", self.format(a), self.format(b)));
                        break 'outer;
                    }
                    if let Some(ab) = self.mul(a, b) {
                        if let Some(fab) = forward.get(&ab) {
                            if other.mul(fa, fb).as_ref() != Some(*fab) {
                                witness = Some(format!("product differs at {} · {}", self.format(a), self.format(b)));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        Ok(EquivalenceReport {
            equivalent: true,
            map_checked: classes.len(),
            map_consistent: witness.is_none(),
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Ext;
    use crate::pattern::tests::{gvalex, m2};
    use crate::pattern::PatternKind;

    #[test]
    fn full_matrix_axioms_pass() {
        let q = m2(5);
        let r = BoundPattern::new(q, vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
        let v = ValuationMachinery::build(&r).unwrap();
        let rep = v.check_axioms(Window::symmetric(2), 50, 7, Strategy::Sequential);
        assert!(rep.passed, "{rep:?}");
        assert!(v.positives_agree(&r, Window::symmetric(3)).agree);
    }

    #[test]
    fn dropped_comparability_is_caught() {
        let q = m2(5);
        let r = BoundPattern::new(q, vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
        let v = ValuationMachinery::build(&r).unwrap();
        let om = v.omega();
        let bad = v.with_dropped_comparability(om.class_of(0, 1), om.class_of(0, 0));
        let rep = bad.check_axioms(Window::symmetric(2), 0, 7, Strategy::Sequential);
        assert!(!rep.check(ULTRAMETRIC).unwrap().passed);
    }

    #[test]
    fn equivalence() {
        let q = m2(5);
        let r = BoundPattern::new(q.clone(), vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
        let v = ValuationMachinery::build(&r).unwrap();
        let rep = v.equivalent(&v.relabeled(2), Window::symmetric(2)).unwrap();
        assert!(rep.equivalent && rep.map_consistent, "{rep:?}");
        let w = ValuationMachinery::build(&gvalex(&q)).unwrap();
        assert!(!v.equivalent(&w, Window::symmetric(2)).unwrap().equivalent);
        let other = m2(5);
        let r2 = BoundPattern::new(other, vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
        let v2 = ValuationMachinery::build(&r2).unwrap();
        assert_eq!(v.equivalent(&v2, Window::DEFAULT), Err(ValueError::ParentMismatch));
    }
}
