//! For strongly graded patterns, homogeneous two-sided ideals correspond
//! to ideals of the identity components `R_e`, one `e` per connected
//! component.

use super::{BoundPattern, PatternError, Side};
use crate::ext::Ext;

impl BoundPattern {
    /// `R_g R_g' = R_{gg'}` for all composable pairs, i.e.
    /// `b_g + b_g' + w(α(g,g')) = b_{gg'}`.
    pub fn check_strong(&self) -> Result<(), PatternError> {
        self.expect_subring()?;
        let grp = self.parent.groupoid();
        let n = grp.len();
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = grp.mul(g, h) else { continue };
                let prod = self.product_bound(self.bounds[g], g, self.bounds[h], h);
                if prod != self.bounds[gh] {
                    return Err(PatternError::NotStrong(format!(
                        "R_{} R_{} has bound {prod}, R_{} has {}",
                        grp.name(g),
                        grp.name(h),
                        grp.name(gh),
                        self.bounds[gh]
                    )));
                }
            }
        }
        Ok(())
    }

    /// One idempotent per connected component (the first by index).
    pub fn component_representatives(&self) -> Vec<usize> {
        let grp = self.parent.groupoid();
        grp.connected_components()
            .classes
            .iter()
            .map(|c| *c.iter().find(|&&g| grp.is_idempotent(g)).expect("components contain idempotents"))
            .collect()
    }

    /// The two-sided ideal `R I_e R` determined by a bound `β_e ≥ b_e` for
    /// each representative idempotent.
    pub fn extend_component_ideals(&self, ideals: &[(usize, Ext)]) -> Result<BoundPattern, PatternError> {
        self.check_strong()?;
        let reps = self.component_representatives();
        let mut gens = vec![Ext::PosInf; self.bounds.len()];
        for &(e, beta) in ideals {
            if !reps.contains(&e) {
                return Err(PatternError::Invalid(format!("{} is not a representative idempotent", self.name(e))));
            }
            gens[e] = beta;
        }
        self.ideal_closure(&gens, Side::TwoSided)
    }

    /// `I ↦ (e, I_e)` for each representative idempotent.
    pub fn restrict_to_components(&self) -> Vec<(usize, Ext)> {
        self.component_representatives()
            .into_iter()
            .map(|e| (e, self.bounds[e]))
            .collect()
    }

    /// Extension of the maximal ideals of the `R_e`: `m_v` when `b_e` is
    /// finite under a discrete valuation, `0` when `R_e` is a field.
    pub fn g_jacobson_radical(&self) -> Result<BoundPattern, PatternError> {
        let trivial = self.parent.field().is_trivially_valued();
        let ideals: Vec<(usize, Ext)> = self
            .component_representatives()
            .into_iter()
            .map(|e| {
                let beta = match self.bounds[e] {
                    Ext::Fin(b) if !trivial => Ext::Fin(b + 1),
                    _ => Ext::PosInf,
                };
                (e, beta)
            })
            .collect();
        self.extend_component_ideals(&ideals)
    }
}
