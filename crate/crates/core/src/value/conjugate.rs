//! `qRq⁻¹` for a unit `q` of `Q`, graded by the transported components
//! `qQ_gq⁻¹`.

use super::ValueError;
use crate::algebra::{GSkewfield, GradedElement};
use crate::pattern::oracle::{homogeneous_samples, Window};
use crate::pattern::BoundPattern;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct TransportedRing {
    ring: BoundPattern,
    q: GradedElement,
    q_inv: GradedElement,
}

impl TransportedRing {
    pub fn new(ring: &BoundPattern, q: GradedElement) -> Result<Self, ValueError> {
        let parent = ring.parent();
        let q_inv = parent.g_inverse(&q).ok_or(ValueError::NotInvertible)?;
        let one = parent.one();
        if parent.mul(&q, &q_inv) != one || parent.mul(&q_inv, &q) != one {
            return Err(ValueError::NotInvertible);
        }
        Ok(TransportedRing { ring: ring.clone(), q, q_inv })
    }

    fn parent(&self) -> &GSkewfield {
        self.ring.parent()
    }

    pub fn ring(&self) -> &BoundPattern {
        &self.ring
    }

    pub fn conjugator(&self) -> &GradedElement {
        &self.q
    }

    /// `y ∈ qRq⁻¹` iff `q⁻¹yq ∈ R`.
    pub fn contains(&self, y: &GradedElement) -> bool {
        let p = self.parent();
        self.ring.contains(&p.mul(&p.mul(&self.q_inv, y), &self.q))
    }

    /// `qxq⁻¹`.
    pub fn transport(&self, x: &GradedElement) -> GradedElement {
        let p = self.parent();
        p.mul(&p.mul(&self.q, x), &self.q_inv)
    }

    /// The element `q(c·u_g)q⁻¹` of the transported component of degree `g`.
    pub fn component(&self, g: usize, c: &Scalar) -> GradedElement {
        self.transport(&GradedElement::homogeneous(g, c.clone()))
    }

    /// Transported G-totality; equal to that of `R`.
    pub fn is_g_total(&self) -> Result<bool, ValueError> {
        Ok(self.ring.is_g_total()?)
    }

    pub fn is_g_stable(&self) -> Result<bool, ValueError> {
        Ok(self.ring.is_g_stable()?)
    }

    /// Totality scanned in the transported grading: for every sampled
    /// homogeneous `h`, `qhq⁻¹` or its inverse `qh⁻¹q⁻¹` is a member.
    /// Returns the first failing degree name.
    pub fn total_by_scan(&self, window: Window) -> Option<String> {
        let p = self.parent();
        let grp = p.groupoid();
        let samples = homogeneous_samples(p, window);
        for g in 0..grp.len() {
            for (_, c) in &samples {
                let h = GradedElement::homogeneous(g, c.clone());
                let hi = p.g_inverse(&h).expect("homogeneous");
                if !self.contains(&self.transport(&h)) && !self.contains(&self.transport(&hi)) {
                    return Some(grp.name(g).to_string());
                }
            }
        }
        None
    }
}
