//! Homogeneous subrings and ideals of `Q = k[G, α, σ]` described by one
//! valuation bound per groupoid element: `R_g = {c·u_g : w(c) ≥ b_g}`.

mod ideal;
pub mod oracle;
mod predicates;
mod residue;
mod strong;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{GSkewfield, GradedElement};
use crate::ext::Ext;
use crate::scalar::Scalar;

pub use ideal::{Comparison, Side};
pub use residue::ResidueSkewfield;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PatternKind {
    Subring,
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PatternError {
    #[error("operation needs a {expected:?} pattern, got {got:?}")]
    KindMismatch { expected: PatternKind, got: PatternKind },
    #[error("patterns belong to different rings")]
    ParentMismatch,
    #[error("expected {expected} bounds, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("unknown element {0:?} in bounds")]
    UnknownElement(String),
    #[error("{0} is not a member of the ring")]
    NotMember(String),
    #[error("generator {0} is not homogeneous enough to generate a homogeneous ideal")]
    NotHomogeneous(String),
    #[error("the ring is not G-total: {0}")]
    NotTotal(String),
    #[error("the pattern is not strongly graded: {0}")]
    NotStrong(String),
    #[error("component {component} has length {length} between the ring and its positives")]
    LengthViolation { component: String, length: String },
    #[error("residue not supported: {0}")]
    ValuationUnsupported(String),
    #[error("invalid pattern: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// A bound pattern together with the ring it lives in. Ideal kinds also
/// carry the bounds of their ambient subring.
#[derive(Debug, Clone)]
pub struct BoundPattern {
    parent: Arc<GSkewfield>,
    bounds: Vec<Ext>,
    kind: PatternKind,
    ring: Option<Vec<Ext>>,
}

impl PartialEq for BoundPattern {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
            && self.bounds == other.bounds
            && self.kind == other.kind
            && self.ring == other.ring
    }
}

/// One failed inequality, by element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub passed: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

/// Trivially valued fields only see `w ∈ {0, +inf}`, so every finite bound
/// is equivalent to `-inf` (if `≤ 0`) or `+inf` (if `≥ 1`).
pub(crate) fn normalize(q: &GSkewfield, b: Ext) -> Ext {
    if !q.field().is_trivially_valued() {
        return b;
    }
    match b {
        Ext::Fin(v) if v <= 0 => Ext::NegInf,
        Ext::Fin(_) => Ext::PosInf,
        other => other,
    }
}

impl BoundPattern {
    pub fn new(parent: Arc<GSkewfield>, bounds: Vec<Ext>, kind: PatternKind) -> Result<Self, PatternError> {
        let n = parent.groupoid().len();
        if bounds.len() != n {
            return Err(PatternError::Shape { expected: n, got: bounds.len() });
        }
        if kind != PatternKind::Subring {
            return Err(PatternError::KindMismatch { expected: PatternKind::Subring, got: kind });
        }
        let bounds = bounds.into_iter().map(|b| normalize(&parent, b)).collect();
        Ok(BoundPattern { parent, bounds, kind, ring: None })
    }

    /// A subring from `(name, bound)` pairs; unnamed components default to
    /// `+inf` (zero).
    pub fn subring_from_names(parent: Arc<GSkewfield>, bounds: &[(&str, Ext)]) -> Result<Self, PatternError> {
        let v = Self::bounds_from_names(&parent, bounds)?;
        Self::new(parent, v, PatternKind::Subring)
    }

    fn bounds_from_names(parent: &GSkewfield, bounds: &[(&str, Ext)]) -> Result<Vec<Ext>, PatternError> {
        let g = parent.groupoid();
        let mut v = vec![Ext::PosInf; g.len()];
        for (name, b) in bounds {
            let idx = g.lookup(name).map_err(|_| PatternError::UnknownElement(name.to_string()))?;
            v[idx] = *b;
        }
        Ok(v)
    }

    /// An ideal of this subring with the given bounds. Not validated; call
    /// [`validate`](Self::validate).
    pub fn ideal(&self, bounds: Vec<Ext>, side: Side) -> Result<BoundPattern, PatternError> {
        self.expect_subring()?;
        let n = self.bounds.len();
        if bounds.len() != n {
            return Err(PatternError::Shape { expected: n, got: bounds.len() });
        }
        Ok(BoundPattern {
            parent: self.parent.clone(),
            bounds: bounds.into_iter().map(|b| normalize(&self.parent, b)).collect(),
            kind: side.kind(),
            ring: Some(self.bounds.clone()),
        })
    }

    pub fn ideal_from_names(&self, bounds: &[(&str, Ext)], side: Side) -> Result<BoundPattern, PatternError> {
        let v = Self::bounds_from_names(&self.parent, bounds)?;
        self.ideal(v, side)
    }

    /// The whole ring `Q` (every bound `-inf`).
    pub fn whole(parent: Arc<GSkewfield>) -> Self {
        let n = parent.groupoid().len();
        Self::new(parent, vec![Ext::NegInf; n], PatternKind::Subring).expect("shape matches")
    }

    pub fn parent(&self) -> &Arc<GSkewfield> {
        &self.parent
    }

    pub fn bounds(&self) -> &[Ext] {
        &self.bounds
    }

    pub fn bound(&self, g: usize) -> Ext {
        self.bounds[g]
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    /// Bounds of the ambient subring (the pattern itself for subrings).
    pub fn ring_bounds(&self) -> &[Ext] {
        self.ring.as_deref().unwrap_or(&self.bounds)
    }

    /// The ambient subring of an ideal.
    pub fn ring(&self) -> BoundPattern {
        BoundPattern {
            parent: self.parent.clone(),
            bounds: self.ring_bounds().to_vec(),
            kind: PatternKind::Subring,
            ring: None,
        }
    }

    pub(crate) fn expect_subring(&self) -> Result<(), PatternError> {
        if self.kind != PatternKind::Subring {
            return Err(PatternError::KindMismatch { expected: PatternKind::Subring, got: self.kind });
        }
        Ok(())
    }

    pub(crate) fn same_parent(&self, other: &BoundPattern) -> Result<(), PatternError> {
        if !Arc::ptr_eq(&self.parent, &other.parent) || self.ring_bounds() != other.ring_bounds() {
            return Err(PatternError::ParentMismatch);
        }
        Ok(())
    }

    /// Same parent, new bounds and kind (used by derived patterns).
    pub(crate) fn with_bounds(&self, bounds: Vec<Ext>, kind: PatternKind) -> BoundPattern {
        BoundPattern {
            parent: self.parent.clone(),
            bounds: bounds.into_iter().map(|b| normalize(&self.parent, b)).collect(),
            kind,
            ring: (kind != PatternKind::Subring).then(|| self.ring_bounds().to_vec()),
        }
    }

    pub fn name(&self, g: usize) -> &str {
        self.parent.groupoid().name(g)
    }

    pub fn contains_term(&self, g: usize, c: &Scalar) -> bool {
        self.parent.valuate(c) >= self.bounds[g]
    }

    pub fn contains(&self, x: &GradedElement) -> bool {
        x.terms().all(|(g, c)| self.contains_term(g, c))
    }

    /// `b_g + b_g' + w(α(g,g'))`, the bound that the product of the two
    /// components is guaranteed to meet (`+inf` when the product is zero).
    pub(crate) fn product_bound(&self, x: Ext, g: usize, y: Ext, h: usize) -> Ext {
        x + y + self.parent.alpha_value(g, h)
    }

    /// Checks every defining inequality of the pattern's kind.
    pub fn validate(&self) -> PatternReport {
        let q = &self.parent;
        let grp = q.groupoid();
        let n = grp.len();
        let b = &self.bounds;
        let r = self.ring_bounds();
        let mut violations = Vec::new();
        let mut checked = 0;
        let name = |g: usize| grp.name(g).to_string();
        match self.kind {
            PatternKind::Subring => {
                for &e in grp.idempotents() {
                    checked += 1;
                    if b[e] > Ext::ZERO {
                        violations.push(Violation {
                            rule: "unit".into(),
                            detail: format!("b_{} = {} > 0, so 1_{} is not a member", name(e), b[e], name(e)),
                        });
                    }
                }
                for g in 0..n {
                    for h in 0..n {
                        let Some(gh) = grp.mul(g, h) else { continue };
                        checked += 1;
                        let lhs = self.product_bound(b[g], g, b[h], h);
                        if lhs < b[gh] {
                            violations.push(Violation {
                                rule: "closure".into(),
                                detail: format!(
                                    "b_{} + b_{} + w(alpha) = {lhs} < b_{} = {}",
                                    name(g),
                                    name(h),
                                    name(gh),
                                    b[gh]
                                ),
                            });
                        }
                    }
                }
            }
            kind => {
                for g in 0..n {
                    checked += 1;
                    if b[g] < r[g] {
                        violations.push(Violation {
                            rule: "containment".into(),
                            detail: format!("i_{} = {} < b_{} = {}", name(g), b[g], name(g), r[g]),
                        });
                    }
                }
                let left = matches!(kind, PatternKind::LeftIdeal | PatternKind::TwoSidedIdeal);
                let right = matches!(kind, PatternKind::RightIdeal | PatternKind::TwoSidedIdeal);
                for g in 0..n {
                    for h in 0..n {
                        let Some(gh) = grp.mul(g, h) else { continue };
                        if left {
                            checked += 1;
                            let lhs = self.product_bound(r[g], g, b[h], h);
                            if lhs < b[gh] {
                                violations.push(Violation {
                                    rule: "left closure".into(),
                                    detail: format!("R_{} I_{} not inside I_{}", name(g), name(h), name(gh)),
                                });
                            }
                        }
                        if right {
                            checked += 1;
                            let lhs = self.product_bound(b[g], g, r[h], h);
                            if lhs < b[gh] {
                                violations.push(Violation {
                                    rule: "right closure".into(),
                                    detail: format!("I_{} R_{} not inside I_{}", name(g), name(h), name(gh)),
                                });
                            }
                        }
                    }
                }
            }
        }
        PatternReport { passed: violations.is_empty(), checked, violations }
    }

    /// A random member: each component present with probability 1/2, value
    /// in `[b_g, b_g + spread]` (or `[-spread, spread]` for `-inf` bounds).
    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> GradedElement {
        let field = self.parent.field();
        GradedElement::from_terms((0..self.bounds.len()).filter_map(|g| {
            let lo = match self.bounds[g] {
                Ext::PosInf => return None,
                Ext::NegInf => -spread,
                Ext::Fin(v) => v,
            };
            if !rng.gen_bool(0.5) {
                return None;
            }
            let m = rng.gen_range(lo..=lo + spread);
            Some((g, field.random_with_value(rng, m)))
        }))
    }

    /// Bounds keyed by element name, for reports.
    pub fn named_bounds(&self) -> Vec<(String, Ext)> {
        let grp = self.parent.groupoid();
        (0..grp.len()).map(|g| (grp.name(g).to_string(), self.bounds[g])).collect()
    }
}

impl fmt::Display for BoundPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (name, b)) in self.named_bounds().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}: {b}")?;
        }
        f.write_str("}")
    }
}

/// Random subring pattern: random bounds in `[-range, range] ∪ {±inf}`
/// pushed down to the least subring containing them (closure under
/// products, `b_e ≤ 0`). Used by the oracle-agreement tests.
pub fn random_subring<R: Rng + ?Sized>(parent: &Arc<GSkewfield>, rng: &mut R, range: i64) -> BoundPattern {
    let n = parent.groupoid().len();
    let raw: Vec<Ext> = (0..n)
        .map(|_| match rng.gen_range(0..8) {
            0 => Ext::NegInf,
            1 => Ext::PosInf,
            _ => Ext::Fin(rng.gen_range(-range..=range)),
        })
        .collect();
    let pattern = BoundPattern::new(parent.clone(), raw, PatternKind::Subring).expect("shape matches");
    pattern.subring_closure()
}

impl BoundPattern {
    /// Least subring pattern below this one: `b_e ← min(b_e, 0)` and
    /// `b_{gg'} ← min(b_{gg'}, b_g + b_g' + w(α))` to a fixpoint. Values
    /// that sink below a floor no finite fixpoint can reach are promoted
    /// to `-inf`.
    pub fn subring_closure(&self) -> BoundPattern {
        let q = &self.parent;
        let grp = q.groupoid();
        let n = grp.len();
        let mut b: Vec<Ext> = self.bounds.clone();
        for &e in grp.idempotents() {
            b[e] = b[e].min(Ext::ZERO);
        }
        let scale = b
            .iter()
            .chain((0..n * n).map(|k| q.alpha_value(k / n, k % n)).collect::<Vec<_>>().iter())
            .filter_map(|x| x.finite())
            .map(i64::abs)
            .max()
            .unwrap_or(0)
            + 1;
        let floor = -2 * (n as i64 + 2) * scale;
        loop {
            let mut changed = false;
            for g in 0..n {
                for h in 0..n {
                    let Some(gh) = grp.mul(g, h) else { continue };
                    let mut cand = normalize(q, self.product_bound(b[g], g, b[h], h));
                    if cand < Ext::Fin(floor) {
                        cand = Ext::NegInf;
                    }
                    if cand < b[gh] {
                        b[gh] = cand;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        BoundPattern::new(self.parent.clone(), b, PatternKind::Subring).expect("shape matches")
    }
}
