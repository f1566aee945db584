//! Brute-force versions of the pattern predicates: enumerate homogeneous
//! elements `u·π^m·u_g` over a window of values and test the definitions
//! with actual ring arithmetic.

use serde::Serialize;

use super::predicates::PredicateVerdict;
use super::{BoundPattern, PatternError};
use crate::algebra::{GSkewfield, GradedElement};
use crate::par::{self, Strategy};
use crate::scalar::{FieldKind, Scalar, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub const DEFAULT: Window = Window { lo: -6, hi: 6 };
    pub const SLOW: Window = Window { lo: -10, hi: 10 };

    pub fn symmetric(r: i64) -> Window {
        Window { lo: -r, hi: r }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::DEFAULT
    }
}

/// A few units of `w`-value 0, including ones whose sums can cancel.
pub fn sample_units(q: &GSkewfield) -> Vec<Scalar> {
    let f = q.field();
    let mut out = vec![f.one(), f.from_int(-1)];
    match (f.kind, f.valuation) {
        (FieldKind::Rationals, Valuation::PAdic(p)) => {
            if p > 2 {
                out.push(f.from_int(p as i64 - 1));
            }
            out.push(f.from_int(p as i64 + 1).checked_div(&f.from_int(if p == 3 { 2 } else { 3 })).unwrap());
        }
        (FieldKind::Rationals, Valuation::Trivial) => out.push(f.parse("2/3").unwrap()),
        (FieldKind::Quadratic(_), _) => {
            out.push(f.sqrt().unwrap());
            out.push(f.parse("1+sqrt").unwrap());
        }
        (FieldKind::Prime(p), _) => {
            if p > 3 {
                out.push(f.from_int(2));
            }
        }
    }
    out.dedup();
    out
}

/// Homogeneous elements `u·π^m` of degree `g` for `m` in the window (just
/// the units when the valuation is trivial).
pub fn homogeneous_samples(q: &GSkewfield, window: Window) -> Vec<(i64, Scalar)> {
    let f = q.field();
    let units = sample_units(q);
    let ms: Vec<i64> = if f.is_trivially_valued() { vec![0] } else { window.values().collect() };
    ms.iter()
        .flat_map(|&m| units.iter().map(move |u| (m, u.clone() * f.pi_pow(m))))
        .collect()
}

/// First `g` (in index order) whose homogeneous elements violate
/// totality: `h ∉ R` and `h⁻¹ ∉ R`.
pub fn total_by_scan(p: &BoundPattern, window: Window, strategy: Strategy) -> Result<PredicateVerdict, PatternError> {
    p.expect_subring()?;
    let q = p.parent().clone();
    let samples = homogeneous_samples(&q, window);
    let n = q.groupoid().len();
    let hits = par::map_range(strategy, n, |g| {
        samples.iter().find_map(|(m, c)| {
            let h = GradedElement::homogeneous(g, c.clone());
            let hi = q.g_inverse(&h).expect("homogeneous elements are invertible");
            (!p.contains(&h) && !p.contains(&hi)).then_some(*m)
        })
    });
    Ok(verdict(p, hits))
}

/// First `g` with `h R_{t(g)} h⁻¹ ≠ R_{s(g)}` on the window: compares
/// `y ∈ R_{s(g)}` against `h⁻¹ y h ∈ R_{t(g)}` for sampled `y`.
pub fn stable_by_scan(p: &BoundPattern, window: Window, strategy: Strategy) -> Result<PredicateVerdict, PatternError> {
    p.expect_subring()?;
    let q = p.parent().clone();
    let grp = q.groupoid().clone();
    let samples = homogeneous_samples(&q, window);
    let n = grp.len();
    let hits = par::map_range(strategy, n, |g| {
        let s = grp.source(g);
        samples.iter().find_map(|(m, c)| {
            let h = GradedElement::homogeneous(g, c.clone());
            let hi = q.g_inverse(&h).expect("homogeneous elements are invertible");
            let differs = samples.iter().any(|(_, d)| {
                let y = GradedElement::homogeneous(s, d.clone());
                let back = q.mul(&q.mul(&hi, &y), &h);
                p.contains(&y) != p.contains(&back)
            });
            differs.then_some(*m)
        })
    });
    Ok(verdict(p, hits))
}

fn verdict(p: &BoundPattern, hits: Vec<Option<i64>>) -> PredicateVerdict {
    let trivial = p.parent().field().is_trivially_valued();
    match hits.iter().enumerate().find_map(|(g, h)| h.map(|m| (g, m))) {
        Some((g, m)) => PredicateVerdict {
            holds: false,
            witness: Some((p.name(g).to_string(), (!trivial).then_some(m))),
        },
        None => PredicateVerdict { holds: true, witness: None },
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gvalex, m2};
    use super::*;
    use crate::ext::Ext;
    use crate::pattern::PatternKind;

    #[test]
    fn oracle_matches_examples() {
        let q = m2(5);
        let g = gvalex(&q);
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert!(total_by_scan(&g, Window::DEFAULT, s).unwrap().holds);
            assert!(stable_by_scan(&g, Window::DEFAULT, s).unwrap().holds);
        }
        let skew = BoundPattern::new(q, vec![Ext::ZERO, Ext::ZERO, Ext::ZERO, Ext::Fin(1)], PatternKind::Subring)
            .unwrap();
        let v = stable_by_scan(&skew, Window::DEFAULT, Strategy::Sequential).unwrap();
        assert!(!v.holds);
    }
}
