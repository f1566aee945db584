use std::sync::Arc;

use super::gamma::{self, GammaValue, GbarPartition};
use super::omega::{Omega, OmegaClass};
use super::ValueError;
use crate::algebra::{GSkewfield, GradedElement};
use crate::ext::Ext;
use crate::pattern::{BoundPattern, PatternKind};
use crate::scalar::Scalar;

/// `Ω`, `Ḡ` and `Γ` built from a homogeneous subring, with the value map
/// `v(x) = Σ_{ḡ minimal in supp x} min{ω(x_g) : g ∈ ḡ} ḡ`.
#[derive(Debug, Clone)]
pub struct ValuationMachinery {
    ring: BoundPattern,
    omega: Omega,
    gbar: GbarPartition,
}

impl ValuationMachinery {
    /// Requires `R` to be G-total and G-stable.
    pub fn build(ring: &BoundPattern) -> Result<Self, ValueError> {
        for verdict in [ring.g_total_verdict()?, ring.g_stable_verdict()?] {
            if !verdict.holds {
                let (g, m) = verdict.witness.unwrap_or_default();
                let at = m.map(|m| format!(" at value {m}")).unwrap_or_default();
                return Err(ValueError::NotGValuationRing(format!("fails at {g}{at}")));
            }
        }
        Self::build_unchecked(ring)
    }

    /// Builds the machinery for any subring. The recovery theorems only
    /// hold for G-valuation rings; this is for orders supplied by hand.
    pub fn build_unchecked(ring: &BoundPattern) -> Result<Self, ValueError> {
        if ring.kind() != PatternKind::Subring {
            return Err(ValueError::Pattern(crate::pattern::PatternError::KindMismatch {
                expected: PatternKind::Subring,
                got: ring.kind(),
            }));
        }
        let omega = Omega::build(ring);
        let gbar = GbarPartition::build(&omega)?;
        Ok(ValuationMachinery { ring: ring.clone(), omega, gbar })
    }

    /// Replaces the order on `Ḡ` by the one generated by `(lesser, greater)`
    /// pairs of degree names.
    pub fn with_gbar_order(mut self, pairs: &[(&str, &str)]) -> Result<Self, ValueError> {
        self.gbar = self.gbar.with_order(pairs)?;
        Ok(self)
    }

    pub fn ring(&self) -> &BoundPattern {
        &self.ring
    }

    pub fn parent(&self) -> &Arc<GSkewfield> {
        self.ring.parent()
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn gbar(&self) -> &GbarPartition {
        &self.gbar
    }

    /// `v(c·u_g)`.
    pub fn valuate_term(&self, g: usize, c: &Scalar) -> GammaValue {
        if c.is_zero() {
            return GammaValue::Infinity;
        }
        GammaValue::single(self.gbar.class_of(g), self.omega.class_of_term(g, c))
    }

    pub fn valuate(&self, x: &GradedElement) -> Result<GammaValue, ValueError> {
        if x.is_zero() {
            return Ok(GammaValue::Infinity);
        }
        let terms: Vec<(usize, OmegaClass)> =
            x.terms().map(|(g, c)| (self.gbar.class_of(g), self.omega.class_of_term(g, c))).collect();
        let mut classes: Vec<usize> = terms.iter().map(|t| t.0).collect();
        classes.sort_unstable();
        classes.dedup();
        let minimal: Vec<usize> =
            classes.iter().copied().filter(|&c| !classes.iter().any(|&d| self.gbar.lt(d, c))).collect();
        let mut out = std::collections::BTreeMap::new();
        for c in minimal {
            let ws: Vec<OmegaClass> = terms.iter().filter(|t| t.0 == c).map(|t| t.1).collect();
            let least = ws
                .iter()
                .copied()
                .find(|&w| ws.iter().all(|&u| self.omega.ge(u, w)))
                .ok_or_else(|| ValueError::NoMinimum(self.gbar.name(c).to_string()))?;
            out.insert(c, least);
        }
        Ok(GammaValue::Terms(out))
    }

    pub fn ge(&self, a: &GammaValue, b: &GammaValue) -> bool {
        gamma::gamma_ge(&self.omega, &self.gbar, a, b)
    }

    pub fn gt(&self, a: &GammaValue, b: &GammaValue) -> bool {
        a != b && self.ge(a, b)
    }

    pub fn comparable(&self, a: &GammaValue, b: &GammaValue) -> bool {
        self.ge(a, b) || self.ge(b, a)
    }

    /// Product of single-term values.
    pub fn mul(&self, a: &GammaValue, b: &GammaValue) -> Option<GammaValue> {
        gamma::gamma_mul(&self.omega, &self.gbar, a, b)
    }

    pub fn format(&self, v: &GammaValue) -> String {
        gamma::format_gamma(&self.omega, &self.gbar, v)
    }

    /// The values `v(1_e)`, without repetition.
    pub fn gamma_idempotents(&self) -> Vec<GammaValue> {
        let f = self.parent().field();
        let mut out: Vec<GammaValue> = Vec::new();
        for &e in self.parent().groupoid().idempotents() {
            let v = self.valuate_term(e, &f.one());
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn gamma_is_group(&self) -> bool {
        self.gamma_idempotents().len() == 1
    }

    /// Least value `m` with `v(π^m u_g) ≥ v(1_anchor)`, as a bound.
    fn threshold(&self, g: usize, anchor: usize) -> Ext {
        let (cg, ca) = (self.gbar.class_of(g), self.gbar.class_of(anchor));
        if cg != ca {
            return if self.gbar.lt(ca, cg) { Ext::NegInf } else { Ext::PosInf };
        }
        if self.omega.is_trivially_valued() {
            let holds = self.omega.ge(self.omega.class_of(g, 0), self.omega.class_of(anchor, 0));
            return if holds { Ext::NegInf } else { Ext::PosInf };
        }
        match self.omega.reach(anchor, g) {
            Ext::Fin(_) if self.omega.modulus(g) > 0 => Ext::NegInf,
            other => other,
        }
    }

    /// `(T_v, S_v)`: the rings generated by homogeneous `h` with
    /// `v(h) ≥ v(t(h))`, respectively `v(h) ≥ v(s(h))`.
    pub fn recover_rings(&self) -> Result<(BoundPattern, BoundPattern), ValueError> {
        let q = self.parent().clone();
        let grp = q.groupoid().clone();
        let n = grp.len();
        let t_gens = (0..n).map(|g| self.threshold(g, grp.target(g))).collect();
        let s_gens = (0..n).map(|g| self.threshold(g, grp.source(g))).collect();
        let t = BoundPattern::new(q.clone(), t_gens, PatternKind::Subring)?.subring_closure();
        let s = BoundPattern::new(q, s_gens, PatternKind::Subring)?.subring_closure();
        Ok((t, s))
    }

    /// The same valuation with every `Ω` offset multiplied by `k ≥ 1`.
    pub fn relabeled(&self, k: i64) -> Self {
        ValuationMachinery { omega: self.omega.relabeled(k), ..self.clone() }
    }

    /// A copy whose `Ω` order forgets `greater ≥ lesser`.
    pub fn with_dropped_comparability(&self, greater: OmegaClass, lesser: OmegaClass) -> Self {
        let mut out = self.clone();
        out.omega.drop_comparability(greater, lesser);
        out
    }
}
