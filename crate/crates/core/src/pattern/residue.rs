//! The residue ring `R/M` of a G-total subring, as a twisted groupoid ring
//! over the residue field.

use std::sync::Arc;

use super::{BoundPattern, PatternError};
use crate::algebra::{GSkewfield, Simplicity, Twist};
use crate::ext::Ext;

#[derive(Debug, Clone)]
pub struct ResidueSkewfield {
    /// `k̄[G', ᾱ, σ̄]`; element names are kept from the parent groupoid.
    pub ring: GSkewfield,
    /// Indices (in the parent groupoid) of the support `G'`.
    pub support: Vec<usize>,
    pub simplicity: Simplicity,
}

impl ResidueSkewfield {
    pub fn support_names(&self) -> Vec<String> {
        self.ring.groupoid().names().to_vec()
    }

    pub fn is_simple_artinian(&self) -> bool {
        self.simplicity == Simplicity::Simple
    }
}

impl BoundPattern {
    /// `R/M` where `M` is [`positives`](Self::positives).
    ///
    /// Components with `p_g = b_g + 1` contribute `R_g/M_g ≅ k̄` through
    /// `c ↦ residue(c·π^{-b_g})`. Under a trivial valuation a full
    /// component with `M_g = 0` contributes `k` itself. Any other nonzero
    /// quotient is reported rather than guessed.
    pub fn residue_skewfield(&self) -> Result<ResidueSkewfield, PatternError> {
        let m = self.positives()?;
        let q = &self.parent;
        let field = *q.field();
        let grp = q.groupoid();
        let n = grp.len();
        let trivial = field.is_trivially_valued();
        let mut support = Vec::new();
        for g in 0..n {
            let (b, p) = (self.bounds[g], m.bound(g));
            match (b, p) {
                (Ext::Fin(x), Ext::Fin(y)) if y == x + 1 => support.push(g),
                (Ext::NegInf, Ext::PosInf) if trivial => support.push(g),
                (Ext::NegInf, Ext::PosInf) => {
                    return Err(PatternError::ValuationUnsupported(format!(
                        "component {} survives whole, so R/M is not defined over the residue field",
                        grp.name(g)
                    )))
                }
                (x, y) if x == y || x == Ext::PosInf => {}
                (x, y) => {
                    return Err(PatternError::LengthViolation {
                        component: grp.name(g).to_string(),
                        length: format!("from {x} to {y}"),
                    })
                }
            }
        }
        let (sub, old) = grp
            .restrict(&support)
            .map_err(|e| PatternError::Internal(format!("residue support is not a subgroupoid: {e}")))?;
        let sub = Arc::new(sub);
        let kbar = field.residue_field();
        let k = sub.len();
        let mut twist = Twist::trivial(&sub, &kbar);
        for a in 0..k {
            twist.sigma[a] = if trivial { q.sigma(old[a]) } else { crate::scalar::FieldAutomorphism::Identity };
            for c in 0..k {
                let Some(ac) = sub.mul(a, c) else { continue };
                let (g, h, gh) = (old[a], old[c], old[ac]);
                let alpha = q.alpha(g, h).expect("composable in the parent");
                let shift = match (self.bounds[g], self.bounds[h], self.bounds[gh]) {
                    (Ext::Fin(x), Ext::Fin(y), Ext::Fin(z)) => x + y - z,
                    _ => 0,
                };
                let scaled = alpha.clone() * field.pi_pow(shift);
                let value = field.residue(&scaled).map_err(|e| PatternError::Internal(e.to_string()))?;
                twist.set_alpha(k, a, c, Some(value));
            }
        }
        let ring = GSkewfield::new(kbar, sub, twist)
            .map_err(|e| PatternError::Internal(format!("residue twist invalid: {e}")))?;
        let simplicity = ring.simplicity();
        Ok(ResidueSkewfield { ring, support: old, simplicity })
    }
}
