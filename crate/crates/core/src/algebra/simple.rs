//! Two-sided ideals that are not homogeneous: central idempotent witnesses
//! and the simple-artinian decision used for residue rings.

use serde::Serialize;

use super::{transpose, AlgebraError, GSkewfield, GradedElement};
use crate::scalar::{linalg, Scalar};

/// A central idempotent `z ∉ {0, 1}`; `Qz` is then a proper nonzero
/// two-sided ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IdealWitness {
    /// `1_C` for a connected component `C` of a disconnected groupoid.
    Component { element: String, component: Vec<String> },
    /// An averaged idempotent over a subgroup of a vertex group,
    /// transported to every object of the component.
    Averaged {
        element: String,
        subgroup_order: usize,
        /// Prime-field dimension of `Qz` and of `Q`.
        ideal_dimension: usize,
        dimension: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Simplicity {
    Simple,
    NotSimple(IdealWitness),
    Undetermined(String),
}

impl GSkewfield {
    /// Prime-field basis of the center.
    pub fn center_basis(&self) -> Vec<GradedElement> {
        let basis = self.basis();
        let dim = basis.len();
        let base = self.field.prime_subfield();
        // rows: for each generator y, coordinates of z y - y z as z runs over the basis
        let mut rows = Vec::new();
        for y in &basis {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|z| self.coords(&self.mul(z, y).sub(&self.mul(y, z))))
                .collect();
            rows.extend(transpose(&cols, dim));
        }
        linalg::kernel(&base, &rows, dim)
            .into_iter()
            .map(|v| self.from_coords(&v))
            .collect()
    }

    pub fn is_central(&self, z: &GradedElement) -> bool {
        self.basis().iter().all(|y| self.mul(z, y) == self.mul(y, z))
    }

    /// Prime-field dimension of the left ideal `Qz`.
    pub fn left_ideal_dimension(&self, z: &GradedElement) -> usize {
        let cols: Vec<Vec<Scalar>> = self.basis().iter().map(|y| self.coords(&self.mul(y, z))).collect();
        let dim = cols.len();
        linalg::rank(&transpose(&cols, dim))
    }

    /// A central idempotent generating a proper nonzero two-sided ideal.
    ///
    /// Disconnected groupoids give a component idempotent. For connected
    /// ones, candidates `(1/|N|)·Σ_{n∈N} Σ_x u_γx⁻¹ u_n u_γx` over cyclic
    /// subgroups `N` of a vertex group are verified; `Ok(None)` means no
    /// candidate survived.
    pub fn nonhomogeneous_ideal_witness(&self) -> Result<Option<IdealWitness>, AlgebraError> {
        let grp = self.groupoid.clone();
        let parts = grp.connected_components();
        if parts.classes.len() > 1 {
            let comp = &parts.classes[0];
            let es: Vec<usize> = comp.iter().copied().filter(|&g| grp.is_idempotent(g)).collect();
            let z = self.idempotent_sum(&es);
            return Ok(Some(IdealWitness::Component {
                element: self.format_element(&z),
                component: comp.iter().map(|&g| grp.name(g).to_string()).collect(),
            }));
        }
        let e = grp.idempotents()[0];
        let vertex = grp.vertex_group(e);
        let objects = grp.idempotents();
        let transports: Vec<usize> = objects
            .iter()
            .map(|&x| grp.connecting(e, x).expect("connected"))
            .collect();
        let dimension = self.basis().len();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut obstruction = None;
        for &h in &vertex {
            let mut subgroup = vec![e];
            let mut cur = h;
            while cur != e {
                subgroup.push(cur);
                cur = grp.mul(cur, h).expect("vertex group is closed");
            }
            subgroup.sort_unstable();
            if subgroup.len() == 1 || seen.contains(&subgroup) {
                continue;
            }
            seen.push(subgroup.clone());
            let order = subgroup.len();
            let ch = self.field.characteristic();
            if ch != 0 && (order as u64).is_multiple_of(ch) {
                obstruction.get_or_insert(AlgebraError::CharacteristicObstruction { characteristic: ch, order });
                continue;
            }
            let mut z = GradedElement::zero();
            for &gamma in &transports {
                let ug = self.unit(gamma);
                let ug_inv = self.g_inverse(&ug).expect("homogeneous units invert");
                for &n in &subgroup {
                    z = z.add(&self.mul(&self.mul(&ug_inv, &self.unit(n)), &ug));
                }
            }
            let inv_order = self.field.from_int(order as i64).inv().expect("order is invertible");
            let z = self.scale(&inv_order, &z);
            if self.mul(&z, &z) != z || !self.is_central(&z) {
                continue;
            }
            let ideal_dimension = self.left_ideal_dimension(&z);
            if ideal_dimension > 0 && ideal_dimension < dimension {
                return Ok(Some(IdealWitness::Averaged {
                    element: self.format_element(&z),
                    subgroup_order: order,
                    ideal_dimension,
                    dimension,
                }));
            }
        }
        match obstruction {
            Some(err) => Err(err),
            None => Ok(None),
        }
    }

    /// Decides whether `Q` is simple (hence simple artinian, being finite
    /// dimensional). Connected, center inside `span{u_e}` and
    /// characteristic not dividing the vertex-group order give a simple
    /// ring: the center is then a field and `Q` is semisimple.
    pub fn simplicity(&self) -> Simplicity {
        let grp = &self.groupoid;
        if !grp.is_connected() {
            return match self.nonhomogeneous_ideal_witness() {
                Ok(Some(w)) => Simplicity::NotSimple(w),
                _ => unreachable!("disconnected groupoids always give a component witness"),
            };
        }
        let order = grp.vertex_group(grp.idempotents()[0]).len();
        let ch = self.field.characteristic();
        let semisimple = ch == 0 || !(order as u64).is_multiple_of(ch);
        let center_on_objects = self
            .center_basis()
            .iter()
            .all(|z| z.support().all(|g| grp.is_idempotent(g)));
        if semisimple && center_on_objects {
            return Simplicity::Simple;
        }
        match self.nonhomogeneous_ideal_witness() {
            Ok(Some(w)) => Simplicity::NotSimple(w),
            Ok(None) => Simplicity::Undetermined("center is larger than the scalars".into()),
            Err(e) => Simplicity::Undetermined(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupoid::{FiniteGroup, Groupoid};
    use crate::scalar::FieldDescriptor;

    #[test]
    fn matrix_ring_is_simple() {
        let q = GSkewfield::untwisted(FieldDescriptor::rationals(), Arc::new(Groupoid::delta(2)));
        assert!(q.is_g_simple());
        assert_eq!(q.nonhomogeneous_ideal_witness().unwrap(), None);
        assert_eq!(q.simplicity(), Simplicity::Simple);
        assert_eq!(q.center_basis().len(), 1);
    }

    #[test]
    fn z2_matrix_ring_has_averaged_witness() {
        let g = Arc::new(Groupoid::product_with_delta(&FiniteGroup::cyclic(2), 2).unwrap());
        let q = GSkewfield::untwisted(FieldDescriptor::rationals(), g);
        assert!(q.is_g_simple());
        let w = q.nonhomogeneous_ideal_witness().unwrap().unwrap();
        let IdealWitness::Averaged { element, subgroup_order, ideal_dimension, dimension } = &w else {
            panic!("{w:?}")
        };
        let z = q.parse_element(element).unwrap();
        let expected = q
            .parse_element("1/2*(0,e11) + 1/2*(0,e22) + 1/2*(1,e11) + 1/2*(1,e22)")
            .unwrap();
        assert_eq!(z, expected);
        assert_eq!((*subgroup_order, *ideal_dimension, *dimension), (2, 4, 8));
        assert!(matches!(q.simplicity(), Simplicity::NotSimple(_)));
    }

    #[test]
    fn characteristic_two_blocks_the_witness() {
        let g = Arc::new(Groupoid::product_with_delta(&FiniteGroup::cyclic(2), 2).unwrap());
        let q = GSkewfield::untwisted(FieldDescriptor::prime(2), g);
        assert_eq!(
            q.nonhomogeneous_ideal_witness(),
            Err(AlgebraError::CharacteristicObstruction { characteristic: 2, order: 2 })
        );
    }

    #[test]
    fn disconnected_gives_component_witness() {
        let d1 = Groupoid::delta(1);
        let g = Arc::new(Groupoid::disjoint_union(&[("a", &d1), ("b", &d1)]).unwrap());
        let q = GSkewfield::untwisted(FieldDescriptor::rationals(), g);
        assert!(!q.is_g_simple());
        let w = q.nonhomogeneous_ideal_witness().unwrap().unwrap();
        assert!(matches!(w, IdealWitness::Component { ref element, .. } if element == "ae11"));
    }

    #[test]
    fn quaternions_are_simple() {
        let f = FieldDescriptor::prime(5);
        let g = Arc::new(Groupoid::from_group(&FiniteGroup::klein()));
        let t = super::super::tests::quaternion_twist(&f, &g);
        let q = GSkewfield::new(f, g, t).unwrap();
        assert_eq!(q.simplicity(), Simplicity::Simple);
    }
}
