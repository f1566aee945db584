//! The comparability quotient `Ḡ` and the ordered value structure `Γ` of
//! formal sums `Σ ω_ḡ ḡ` with coefficients in `Ω`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::omega::{Omega, OmegaClass};
use super::ValueError;
use crate::ext::Ext;
use crate::groupoid::{Groupoid, GroupoidOrder};

/// Partition of `G` into classes of mutually cofinal degrees, with the
/// induced order.
#[derive(Debug, Clone)]
pub struct GbarPartition {
    quotient: Arc<Groupoid>,
    class_of: Vec<usize>,
    order: GroupoidOrder,
}

impl GbarPartition {
    /// `g ~ g'` iff values of degree `g'` are bounded on both sides by
    /// values of degree `g`, i.e. both `reach(g, g')` and `reach(g', g)`
    /// are finite. `ḡ < ḡ'` iff every value of every `g ∈ ḡ` lies below
    /// every value of every `g' ∈ ḡ'`.
    pub fn build(omega: &Omega) -> Result<GbarPartition, ValueError> {
        let grp = omega.parent().groupoid().clone();
        let n = grp.len();
        let cofinal = |a: usize, b: usize| omega.reach(a, b) < Ext::PosInf && omega.reach(b, a) < Ext::PosInf;
        let normal: Vec<usize> = (0..n).filter(|&g| cofinal(g, grp.source(g))).collect();
        let (quotient, class_of) = grp.quotient(&normal)?;
        for a in 0..n {
            for b in 0..n {
                if (class_of[a] == class_of[b]) != cofinal(a, b) {
                    return Err(ValueError::Internal(format!(
                        "cofinality of {} and {} disagrees with the quotient",
                        grp.name(a),
                        grp.name(b)
                    )));
                }
            }
        }
        let k = quotient.len();
        let mut pairs = Vec::new();
        for c in 0..k {
            for d in 0..k {
                if c == d {
                    continue;
                }
                let below = (0..n)
                    .filter(|&a| class_of[a] == c)
                    .all(|a| (0..n).filter(|&b| class_of[b] == d).all(|b| omega.reach(a, b) == Ext::NegInf));
                if below {
                    pairs.push((c, d));
                }
            }
        }
        let quotient = Arc::new(quotient);
        let order = GroupoidOrder::generated_by(quotient.clone(), &pairs);
        Ok(GbarPartition { quotient, class_of, order })
    }

    /// Replaces the derived order by the one generated by `lesser ≤ greater`
    /// pairs of degree names.
    pub fn with_order(&self, pairs: &[(&str, &str)]) -> Result<GbarPartition, ValueError> {
        let mut idx = Vec::new();
        for (a, b) in pairs {
            idx.push((self.class_by_name(a)?, self.class_by_name(b)?));
        }
        let order = GroupoidOrder::generated_by(self.quotient.clone(), &idx);
        let report = order.validate();
        if !report.partial_order {
            return Err(ValueError::InvalidOrder(format!("{:?}", report.witnesses)));
        }
        Ok(GbarPartition { order, ..self.clone() })
    }

    fn class_by_name(&self, name: &str) -> Result<usize, ValueError> {
        self.quotient
            .names()
            .iter()
            .position(|c| c.trim_start_matches('[').trim_end_matches(']') == name)
            .or_else(|| self.quotient.lookup(name).ok())
            .ok_or_else(|| ValueError::UnknownClass(name.to_string()))
    }

    pub fn quotient(&self) -> &Arc<Groupoid> {
        &self.quotient
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn classes(&self) -> usize {
        self.quotient.len()
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&g| self.class_of[g] == c).collect()
    }

    pub fn order(&self) -> &GroupoidOrder {
        &self.order
    }

    pub fn lt(&self, c: usize, d: usize) -> bool {
        self.order.lt(c, d)
    }

    /// Class name without the brackets the quotient adds.
    pub fn name(&self, c: usize) -> &str {
        let s = self.quotient.name(c);
        s.trim_start_matches('[').trim_end_matches(']')
    }
}

/// A value of `v`: `∞` or a formal sum supported on an antichain of `Ḡ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GammaValue {
    Infinity,
    Terms(BTreeMap<usize, OmegaClass>),
}

impl GammaValue {
    pub fn single(class: usize, w: OmegaClass) -> GammaValue {
        GammaValue::Terms(BTreeMap::from([(class, w)]))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GammaValue::Infinity)
    }

    pub fn as_single(&self) -> Option<(usize, OmegaClass)> {
        match self {
            GammaValue::Terms(t) if t.len() == 1 => t.iter().next().map(|(&c, &w)| (c, w)),
            _ => None,
        }
    }

    pub fn terms(&self) -> Option<&BTreeMap<usize, OmegaClass>> {
        match self {
            GammaValue::Terms(t) => Some(t),
            GammaValue::Infinity => None,
        }
    }
}

/// `a ≥ b`: every term `b_ḡ` is dominated either by `a_ḡ` or by a term of
/// `a` in a strictly larger class that `b` does not beat there. A class
/// missing from `a` with no term of `a` below it stands for a zero
/// component and counts as `∞`.
pub(crate) fn gamma_ge(omega: &Omega, gbar: &GbarPartition, a: &GammaValue, b: &GammaValue) -> bool {
    let (ta, tb) = match (a, b) {
        (GammaValue::Infinity, _) => return true,
        (_, GammaValue::Infinity) => return false,
        (GammaValue::Terms(x), GammaValue::Terms(y)) => (x, y),
    };
    tb.iter().all(|(&c, &wb)| {
        if let Some(&wa) = ta.get(&c) {
            if omega.ge(wa, wb) {
                return true;
            }
        } else if !ta.keys().any(|&d| gbar.lt(d, c)) {
            return true;
        }
        ta.iter().any(|(&d, &wa)| {
            gbar.lt(c, d)
                && match tb.get(&d) {
                    None => true,
                    Some(&wb2) => omega.ge(wa, wb2),
                }
        })
    })
}

/// Product of single-term values; `None` for multi-term values or
/// non-composable classes.
pub(crate) fn gamma_mul(omega: &Omega, gbar: &GbarPartition, a: &GammaValue, b: &GammaValue) -> Option<GammaValue> {
    match (a, b) {
        (GammaValue::Infinity, _) | (_, GammaValue::Infinity) => Some(GammaValue::Infinity),
        _ => {
            let (_, wa) = a.as_single()?;
            let (_, wb) = b.as_single()?;
            let w = omega.mul(wa, wb)?;
            Some(GammaValue::single(gbar.class_of(w.rep), w))
        }
    }
}

pub(crate) fn format_gamma(omega: &Omega, gbar: &GbarPartition, v: &GammaValue) -> String {
    match v {
        GammaValue::Infinity => "inf".to_string(),
        GammaValue::Terms(t) => t
            .iter()
            .map(|(&c, &w)| format!("[{}: {}]", gbar.name(c), omega.format_class(w)))
            .collect::<Vec<_>>()
            .join(" + "),
    }
}
