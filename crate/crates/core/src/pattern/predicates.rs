//! Closed forms for G-totality and G-stability.
//!
//! For `h = c·u_g` with `w(c) = m`, the inverse `h⁻¹` lies in degree `g⁻¹`
//! with value `-m - a_g`, where `a_g = w(α(g, g⁻¹))`. Hence `h ∈ R` iff
//! `m ≥ b_g` and `h⁻¹ ∈ R` iff `m ≤ -a_g - b_{g⁻¹}`; totality fails at `g`
//! exactly when some attainable value lies strictly between the two.
//! Conjugating `R_{t(g)}` by `h` gives the `s(g)`-component with bound
//! `b_{t(g)}`, so stability is `b_{s(g)} = b_{t(g)}`.

use serde::Serialize;

use super::{BoundPattern, PatternError};
use crate::ext::Ext;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateVerdict {
    pub holds: bool,
    /// Element name and a violating value `m` (or `None` if any value
    /// works, e.g. under a trivial valuation).
    pub witness: Option<(String, Option<i64>)>,
}

impl BoundPattern {
    /// `w(α(g, g⁻¹))`.
    pub fn inverse_defect(&self, g: usize) -> Ext {
        let gi = self.parent.groupoid().inverse(g);
        self.parent.alpha_value(g, gi)
    }

    /// Values `m` strictly between `-a_g - b_{g⁻¹}` and `b_g`: the first
    /// one, if any exists.
    fn totality_gap(&self, g: usize) -> Option<Option<i64>> {
        let gi = self.parent.groupoid().inverse(g);
        let lo = -(self.inverse_defect(g) + self.bounds[gi]);
        let hi = self.bounds[g];
        if self.parent.field().is_trivially_valued() {
            return (lo < Ext::ZERO && Ext::ZERO < hi).then_some(None);
        }
        match (lo, hi) {
            (Ext::PosInf, _) | (_, Ext::NegInf) => None,
            (Ext::Fin(l), Ext::Fin(h)) => (h - l >= 2).then_some(Some(l + 1)),
            (Ext::Fin(l), Ext::PosInf) => Some(Some(l + 1)),
            (Ext::NegInf, Ext::Fin(h)) => Some(Some(h - 1)),
            (Ext::NegInf, Ext::PosInf) => Some(Some(0)),
        }
    }

    pub fn g_total_verdict(&self) -> Result<PredicateVerdict, PatternError> {
        self.expect_subring()?;
        for g in 0..self.bounds.len() {
            if let Some(m) = self.totality_gap(g) {
                return Ok(PredicateVerdict { holds: false, witness: Some((self.name(g).to_string(), m)) });
            }
        }
        Ok(PredicateVerdict { holds: true, witness: None })
    }

    pub fn g_stable_verdict(&self) -> Result<PredicateVerdict, PatternError> {
        self.expect_subring()?;
        let grp = self.parent.groupoid();
        for g in 0..self.bounds.len() {
            if self.bounds[grp.source(g)] != self.bounds[grp.target(g)] {
                return Ok(PredicateVerdict { holds: false, witness: Some((self.name(g).to_string(), None)) });
            }
        }
        Ok(PredicateVerdict { holds: true, witness: None })
    }

    pub fn is_g_total(&self) -> Result<bool, PatternError> {
        Ok(self.g_total_verdict()?.holds)
    }

    pub fn is_g_stable(&self) -> Result<bool, PatternError> {
        Ok(self.g_stable_verdict()?.holds)
    }

    pub fn is_g_valuation_ring(&self) -> Result<bool, PatternError> {
        Ok(self.is_g_total()? && self.is_g_stable()?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gvalex, m2};
    use super::super::{BoundPattern, PatternKind};
    use crate::ext::Ext;

    #[test]
    fn examples() {
        let q = m2(5);
        let g = gvalex(&q);
        assert!(g.is_g_total().unwrap() && g.is_g_stable().unwrap() && g.is_g_valuation_ring().unwrap());
        let full = BoundPattern::new(q.clone(), vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
        assert!(full.is_g_valuation_ring().unwrap());
        let skew = BoundPattern::subring_from_names(
            q.clone(),
            &[("e11", Ext::ZERO), ("e12", Ext::ZERO), ("e21", Ext::ZERO), ("e22", Ext::Fin(1))],
        )
        .unwrap();
        assert!(!skew.is_g_stable().unwrap());
        // b_e12 + b_e21 = 2 leaves value 1 out of both R_e12 and its inverse
        let gap = BoundPattern::new(q, vec![Ext::ZERO, Ext::Fin(1), Ext::Fin(1), Ext::ZERO], PatternKind::Subring)
            .unwrap();
        let v = gap.g_total_verdict().unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(("e12".into(), Some(0))));
    }
}
