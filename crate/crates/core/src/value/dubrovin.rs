//! The Dubrovin property for full-support valuation rings containing every
//! basis unit: `R/M` is simple artinian, and every `x ∉ R` is brought back
//! into `R ∖ M` on either side by the inverse of its least component.

use serde::Serialize;

use super::valuation::ValuationMachinery;
use super::ValueError;
use crate::algebra::GradedElement;
use crate::ext::Ext;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DubrovinReport {
    pub residue_support: Vec<String>,
    pub residue_simple_artinian: bool,
    pub gamma_is_group: bool,
    pub passed: bool,
}

/// `r x` and `x r'` both in `R ∖ M`.
#[derive(Debug, Clone, PartialEq)]
pub struct DubrovinWitness {
    /// Degree of the component of least value.
    pub degree: usize,
    pub r: GradedElement,
    pub r_prime: GradedElement,
    pub left: GradedElement,
    pub right: GradedElement,
    pub verified: bool,
}

impl ValuationMachinery {
    /// Connected groupoid, `b_g ≤ 0` and `p_g ≥ 1` for every `g`.
    fn dubrovin_hypotheses(&self) -> Result<(), ValueError> {
        let r = self.ring();
        let grp = self.parent().groupoid();
        if !grp.is_connected() {
            return Err(ValueError::HypothesisViolation("the groupoid is not connected".into()));
        }
        let p = r.positive_generators()?;
        for g in 0..grp.len() {
            if r.bound(g) > Ext::ZERO {
                return Err(ValueError::HypothesisViolation(format!(
                    "u_{} is not in the ring (bound {})",
                    grp.name(g),
                    r.bound(g)
                )));
            }
            if p[g] < Ext::Fin(1) {
                return Err(ValueError::HypothesisViolation(format!(
                    "component {} has units of nonzero value (positives bound {})",
                    grp.name(g),
                    p[g]
                )));
            }
        }
        Ok(())
    }

    pub fn dubrovin_check(&self) -> Result<DubrovinReport, ValueError> {
        self.dubrovin_hypotheses()?;
        let res = self.ring().residue_skewfield()?;
        let full = res.support.len() == self.parent().groupoid().len();
        let simple = full && res.is_simple_artinian();
        let group = self.gamma_is_group();
        Ok(DubrovinReport {
            residue_support: res.support_names(),
            residue_simple_artinian: simple,
            gamma_is_group: group,
            passed: simple && group,
        })
    }

    /// For `x ∉ R`: with `a_δ u_δ` the component of least value,
    /// `r = r' = (a_δ u_δ)⁻¹` satisfies `r x, x r' ∈ R ∖ M`.
    pub fn dubrovin_witness(&self, x: &GradedElement) -> Result<DubrovinWitness, ValueError> {
        self.dubrovin_hypotheses()?;
        let r = self.ring();
        let q = self.parent();
        if r.contains(x) {
            return Err(ValueError::InsideRing(q.format_element(x)));
        }
        let om = self.omega();
        let terms: Vec<(usize, &crate::scalar::Scalar)> = x.terms().collect();
        let classes: Vec<_> = terms.iter().map(|&(g, c)| om.class_of_term(g, c)).collect();
        let least = (0..terms.len())
            .find(|&i| classes.iter().all(|&w| om.ge(w, classes[i])))
            .ok_or_else(|| ValueError::NoMinimum(q.format_element(x)))?;
        let (degree, coeff) = terms[least];
        let (gi, d) = q.homogeneous_inverse(degree, coeff);
        let inv = GradedElement::homogeneous(gi, d);
        let left = q.mul(&inv, x);
        let right = q.mul(x, &inv);
        let m = r.positives()?;
        let verified = r.contains(&inv)
            && r.contains(&left)
            && !m.contains(&left)
            && r.contains(&right)
            && !m.contains(&right);
        Ok(DubrovinWitness { degree, r: inv.clone(), r_prime: inv, left, right, verified })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::tests::{gvalex, m2};
    use crate::pattern::{BoundPattern, PatternKind};

    #[test]
    fn full_matrices_are_dubrovin() {
        let q = m2(5);
        let r = BoundPattern::new(q.clone(), vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
        let v = ValuationMachinery::build(&r).unwrap();
        assert!(v.dubrovin_check().unwrap().passed);
        let x = q.parse_element("1/5*e11 + e22").unwrap();
        let w = v.dubrovin_witness(&x).unwrap();
        assert!(w.verified);
        assert_eq!(w.right, q.parse_element("e11").unwrap());
    }

    #[test]
    fn gvalex_violates_hypotheses() {
        let q = m2(5);
        let v = ValuationMachinery::build(&gvalex(&q)).unwrap();
        assert!(matches!(v.dubrovin_check(), Err(ValueError::HypothesisViolation(_))));
    }
}
