use std::sync::Arc;

use serde::Serialize;

use super::{Groupoid, GroupoidError};

/// A relation `≤` on the elements of a groupoid, meant to be a partial order
/// compatible with the partial multiplication.
#[derive(Debug, Clone)]
pub struct GroupoidOrder {
    base: Arc<Groupoid>,
    le: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderWitness {
    NotReflexive(String),
    NotAntisymmetric(String, String),
    NotTransitive(String, String, String),
    /// `g ≤ g'` but `hg ≰ hg'` (left) or `gh ≰ g'h` (right).
    Incompatible { lesser: String, greater: String, by: String, left: bool },
    IncomparableToSource(String),
    IncomparableToTarget(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub partial_order: bool,
    pub compatible: bool,
    pub ordered: bool,
    pub witnesses: Vec<OrderWitness>,
}

impl GroupoidOrder {
    /// Takes the relation exactly as given (no closure), so that the
    /// validator can report what is missing.
    pub fn from_relation(base: Arc<Groupoid>, pairs: &[(usize, usize)]) -> Self {
        let n = base.len();
        let mut le = vec![false; n * n];
        for &(a, b) in pairs {
            le[a * n + b] = true;
        }
        GroupoidOrder { base, le }
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn generated_by(base: Arc<Groupoid>, pairs: &[(usize, usize)]) -> Self {
        let n = base.len();
        let mut order = Self::from_relation(base, pairs);
        for g in 0..n {
            order.le[g * n + g] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !order.le[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if order.le[k * n + j] {
                        order.le[i * n + j] = true;
                    }
                }
            }
        }
        order
    }

    /// Same as [`generated_by`](Self::generated_by) with pairs given by name.
    pub fn generated_by_names(base: Arc<Groupoid>, pairs: &[(&str, &str)]) -> Result<Self, GroupoidError> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((base.lookup(a)?, base.lookup(b)?)))
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        Ok(Self::generated_by(base, &idx))
    }

    pub fn base(&self) -> &Arc<Groupoid> {
        &self.base
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.base.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    pub fn validate(&self) -> OrderReport {
        let g = &self.base;
        let n = g.len();
        let name = |x: usize| g.name(x).to_string();
        let mut witnesses = Vec::new();

        let mut partial_order = true;
        for a in 0..n {
            if !self.le(a, a) {
                partial_order = false;
                witnesses.push(OrderWitness::NotReflexive(name(a)));
            }
        }
        'anti: for a in 0..n {
            for b in (a + 1)..n {
                if self.le(a, b) && self.le(b, a) {
                    partial_order = false;
                    witnesses.push(OrderWitness::NotAntisymmetric(name(a), name(b)));
                    break 'anti;
                }
            }
        }
        'trans: for a in 0..n {
            for b in 0..n {
                if !self.le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.le(b, c) && !self.le(a, c) {
                        partial_order = false;
                        witnesses.push(OrderWitness::NotTransitive(name(a), name(b), name(c)));
                        break 'trans;
                    }
                }
            }
        }

        let mut compatible = true;
        'compat: for a in 0..n {
            for b in 0..n {
                if a == b || !self.le(a, b) {
                    continue;
                }
                for h in 0..n {
                    if let (Some(ha), Some(hb)) = (g.mul(h, a), g.mul(h, b)) {
                        if !self.le(ha, hb) {
                            compatible = false;
                            witnesses.push(OrderWitness::Incompatible {
                                lesser: name(a),
                                greater: name(b),
                                by: name(h),
                                left: true,
                            });
                            break 'compat;
                        }
                    }
                    if let (Some(ah), Some(bh)) = (g.mul(a, h), g.mul(b, h)) {
                        if !self.le(ah, bh) {
                            compatible = false;
                            witnesses.push(OrderWitness::Incompatible {
                                lesser: name(a),
                                greater: name(b),
                                by: name(h),
                                left: false,
                            });
                            break 'compat;
                        }
                    }
                }
            }
        }

        let mut ordered = true;
        for a in 0..n {
            if !self.comparable(a, g.source(a)) {
                ordered = false;
                witnesses.push(OrderWitness::IncomparableToSource(name(a)));
            }
            if !self.comparable(a, g.target(a)) {
                ordered = false;
                witnesses.push(OrderWitness::IncomparableToTarget(name(a)));
            }
        }
        OrderReport {
            partial_order,
            compatible,
            ordered,
            witnesses,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> Arc<Groupoid> {
        Arc::new(Groupoid::delta(2))
    }

    #[test]
    fn delta2_max_min_order_is_ordered() {
        let order = GroupoidOrder::generated_by_names(
            d2(),
            &[("e22", "e12"), ("e12", "e11"), ("e22", "e21"), ("e21", "e11")],
        )
        .unwrap();
        let report = order.validate();
        assert!(report.partial_order && report.compatible && report.ordered, "{report:?}");
        let g = order.base().clone();
        let (e12, e21) = (g.lookup("e12").unwrap(), g.lookup("e21").unwrap());
        assert!(!order.comparable(e12, e21));
    }

    #[test]
    fn discrete_order_is_not_ordered() {
        let order = GroupoidOrder::generated_by(d2(), &[]);
        let report = order.validate();
        assert!(report.partial_order && report.compatible);
        assert!(!report.ordered);
        assert!(report.witnesses.contains(&OrderWitness::IncomparableToSource("e12".into())));
    }

    #[test]
    fn incompatible_order_has_witness() {
        let g = d2();
        let (e12, e11) = (g.lookup("e12").unwrap(), g.lookup("e11").unwrap());
        let order = GroupoidOrder::generated_by(g, &[(e12, e11)]);
        let report = order.validate();
        assert!(report.partial_order);
        assert!(!report.compatible);
        // e21·e12 = e22 and e21·e11 = e21, but e22 ≰ e21
        assert!(report.witnesses.contains(&OrderWitness::Incompatible {
            lesser: "e12".into(),
            greater: "e11".into(),
            by: "e21".into(),
            left: true,
        }));
    }

    #[test]
    fn non_transitive_relation_reported() {
        let g = d2();
        let n = g.len();
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
        pairs.extend([(3, 1), (1, 0)]);
        let report = GroupoidOrder::from_relation(g, &pairs).validate();
        assert!(!report.partial_order);
        assert!(matches!(report.witnesses[0], OrderWitness::NotTransitive(..)));
    }
}
