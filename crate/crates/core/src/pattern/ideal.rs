//! Homogeneous ideals: closure of generator bounds, principal ideals,
//! cyclicity search, componentwise comparison and the positives `M`.

use serde::Serialize;

use super::oracle::Window;
use super::{normalize, BoundPattern, PatternError, PatternKind};
use crate::algebra::GradedElement;
use crate::ext::Ext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub fn kind(self) -> PatternKind {
        match self {
            Side::Left => PatternKind::LeftIdeal,
            Side::Right => PatternKind::RightIdeal,
            Side::TwoSided => PatternKind::TwoSidedIdeal,
        }
    }

    pub fn of(kind: PatternKind) -> Option<Side> {
        match kind {
            PatternKind::LeftIdeal => Some(Side::Left),
            PatternKind::RightIdeal => Some(Side::Right),
            PatternKind::TwoSidedIdeal => Some(Side::TwoSided),
            PatternKind::Subring => None,
        }
    }

    fn left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    fn right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }
}

/// Result of comparing two ideals componentwise (`I ≤ J` means `I ⊆ J`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Equal,
    Less,
    Greater,
    /// Components where `I ⊄ J` and where `J ⊄ I`.
    Incomparable { i_not_in_j: Vec<String>, j_not_in_i: Vec<String> },
}

impl BoundPattern {
    /// Least `side`-ideal of this subring containing the components
    /// `c·u_g` with `w(c) ≥ gens[g]`. Shortest-path relaxation along
    /// multiplication by ring components; components reachable from a
    /// negative loop drop to `-inf`.
    pub fn ideal_closure(&self, gens: &[Ext], side: Side) -> Result<BoundPattern, PatternError> {
        self.expect_subring()?;
        let q = &self.parent;
        let grp = q.groupoid();
        let n = grp.len();
        let b = &self.bounds;
        for g in 0..n {
            if gens[g] < b[g] {
                return Err(PatternError::NotMember(format!("generator in degree {} with bound {}", self.name(g), gens[g])));
            }
        }
        let mut i: Vec<Ext> = gens.iter().map(|&x| normalize(q, x)).collect();
        // edges: left  g -> f g with weight b_f + w(α(f, g))
        //        right g -> g f with weight b_f + w(α(g, f))
        let relax = |i: &mut Vec<Ext>| -> Vec<bool> {
            let mut changed = vec![false; n];
            for g in 0..n {
                if i[g] == Ext::PosInf {
                    continue;
                }
                for f in 0..n {
                    if side.left() {
                        if let Some(fg) = grp.mul(f, g) {
                            let cand = normalize(q, self.product_bound(b[f], f, i[g], g));
                            if cand < i[fg] {
                                i[fg] = cand;
                                changed[fg] = true;
                            }
                        }
                    }
                    if side.right() {
                        if let Some(gf) = grp.mul(g, f) {
                            let cand = normalize(q, self.product_bound(i[g], g, b[f], f));
                            if cand < i[gf] {
                                i[gf] = cand;
                                changed[gf] = true;
                            }
                        }
                    }
                }
            }
            changed
        };
        let mut settled = false;
        for _ in 0..=n {
            if !relax(&mut i).iter().any(|&c| c) {
                settled = true;
                break;
            }
        }
        if !settled {
            // still improving after |G| rounds: negative loops
            for _ in 0..=n {
                let changed = relax(&mut i);
                if !changed.iter().any(|&c| c) {
                    break;
                }
                for g in 0..n {
                    if changed[g] {
                        i[g] = Ext::NegInf;
                    }
                }
            }
        }
        debug_assert!((0..n).all(|g| i[g] >= b[g]), "an ideal generated by members stays inside the ring");
        Ok(self.with_bounds(i, side.kind()))
    }

    /// Ideal generated by homogeneous members (or by elements whose
    /// components can be separated by idempotents on the relevant side).
    pub fn ideal_generated(&self, gens: &[GradedElement], side: Side) -> Result<BoundPattern, PatternError> {
        self.expect_subring()?;
        let q = &self.parent;
        let grp = q.groupoid();
        let mut bounds = vec![Ext::PosInf; grp.len()];
        for x in gens {
            if !self.contains(x) {
                return Err(PatternError::NotMember(q.format_element(x)));
            }
            let mut keys: Vec<(usize, usize)> = x
                .support()
                .map(|g| match side {
                    Side::Left => (grp.source(g), usize::MAX),
                    Side::Right => (usize::MAX, grp.target(g)),
                    Side::TwoSided => (grp.source(g), grp.target(g)),
                })
                .collect();
            let before = keys.len();
            keys.sort_unstable();
            keys.dedup();
            if keys.len() != before {
                return Err(PatternError::NotHomogeneous(q.format_element(x)));
            }
            for (g, c) in x.terms() {
                bounds[g] = bounds[g].min(q.valuate(c));
            }
        }
        self.ideal_closure(&bounds, side)
    }

    /// The ideal generated by one homogeneous member.
    pub fn principal_ideal(&self, h: &GradedElement, side: Side) -> Result<BoundPattern, PatternError> {
        if h.as_homogeneous().is_none() && !h.is_zero() {
            return Err(PatternError::NotHomogeneous(self.parent.format_element(h)));
        }
        self.ideal_generated(std::slice::from_ref(h), side)
    }

    /// Searches generators `π^m·u_g` in `(name of g, m)` order over the
    /// window and returns the first whose principal ideal is `self`.
    pub fn is_cyclic(&self, window: Window) -> Result<Option<GradedElement>, PatternError> {
        let side = Side::of(self.kind).ok_or(PatternError::KindMismatch {
            expected: PatternKind::TwoSidedIdeal,
            got: self.kind,
        })?;
        let ring = self.ring();
        let q = &self.parent;
        let grp = q.groupoid();
        let mut order: Vec<usize> = (0..grp.len()).collect();
        order.sort_by(|&a, &b| grp.name(a).cmp(grp.name(b)));
        let ms: Vec<i64> = if q.field().is_trivially_valued() { vec![0] } else { window.values().collect() };
        for g in order {
            for &m in &ms {
                if Ext::Fin(m) < self.bounds[g] {
                    continue;
                }
                let h = GradedElement::homogeneous(g, q.field().pi_pow(m));
                let generated = ring.principal_ideal(&h, side)?;
                if generated.bounds == self.bounds {
                    return Ok(Some(h));
                }
            }
        }
        Ok(None)
    }

    /// Componentwise comparison. When the ambient ring is G-total, also
    /// checks the consequence "some `J_g ⊄ I_g` forces `I_{g'} ⊆ J_{g'}`
    /// for all `g'` with the same target (left) or source (right)" and
    /// reports a failure as an internal error.
    pub fn ideal_compare(&self, other: &BoundPattern) -> Result<Comparison, PatternError> {
        self.same_parent(other)?;
        let (si, sj) = match (Side::of(self.kind), Side::of(other.kind)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(PatternError::KindMismatch {
                    expected: PatternKind::TwoSidedIdeal,
                    got: PatternKind::Subring,
                })
            }
        };
        let n = self.bounds.len();
        // I_g ⊆ J_g iff i_g ≥ j_g
        let i_not_in_j: Vec<usize> = (0..n).filter(|&g| self.bounds[g] < other.bounds[g]).collect();
        let j_not_in_i: Vec<usize> = (0..n).filter(|&g| other.bounds[g] < self.bounds[g]).collect();

        if self.ring().is_g_total()? {
            let grp = self.parent.groupoid();
            let check = |a: &BoundPattern, b: &BoundPattern, bad: &[usize], side_a: Side, side_b: Side| {
                let left = side_a.left() && side_b.left();
                let right = side_a.right() && side_b.right();
                for &g in bad {
                    for g2 in 0..n {
                        let linked = (left && grp.target(g2) == grp.target(g)) || (right && grp.source(g2) == grp.source(g));
                        if linked && a.bounds[g2] < b.bounds[g2] {
                            return Err(PatternError::Internal(format!(
                                "comparability of ideals in a G-total ring fails at {} and {}",
                                grp.name(g),
                                grp.name(g2)
                            )));
                        }
                    }
                }
                Ok(())
            };
            // J_g ⊄ I_g  ⇒  I_{g'} ⊆ J_{g'}
            check(self, other, &j_not_in_i, si, sj)?;
            check(other, self, &i_not_in_j, sj, si)?;
        }

        let names = |v: &[usize]| v.iter().map(|&g| self.name(g).to_string()).collect::<Vec<_>>();
        Ok(match (i_not_in_j.is_empty(), j_not_in_i.is_empty()) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable {
                i_not_in_j: names(&i_not_in_j),
                j_not_in_i: names(&j_not_in_i),
            },
        })
    }

    /// Per-component bound `p_g` of the members of `R_g` that are not
    /// G-invertible in `R`: `max(b_g, -a_g - b_{g⁻¹} + 1)`.
    pub fn positive_generators(&self) -> Result<Vec<Ext>, PatternError> {
        self.expect_subring()?;
        let grp = self.parent.groupoid();
        Ok((0..self.bounds.len())
            .map(|g| {
                let lo = -(self.inverse_defect(g) + self.bounds[grp.inverse(g)]);
                normalize(&self.parent, self.bounds[g].max(lo + 1))
            })
            .collect())
    }

    /// The ideal `M` generated by non-invertible homogeneous members.
    pub fn positives(&self) -> Result<BoundPattern, PatternError> {
        let verdict = self.g_total_verdict()?;
        if !verdict.holds {
            let (g, _) = verdict.witness.unwrap_or_default();
            return Err(PatternError::NotTotal(format!("gap in degree {g}")));
        }
        let gens = self.positive_generators()?;
        self.ideal_closure(&gens, Side::TwoSided)
    }

    /// Closing a right ideal on the left changes nothing when the ring is
    /// G-stable; returns whether that holds for this ideal.
    pub fn right_ideal_is_two_sided(&self) -> Result<bool, PatternError> {
        let side = Side::of(self.kind).ok_or(PatternError::KindMismatch {
            expected: PatternKind::RightIdeal,
            got: self.kind,
        })?;
        let ring = self.ring();
        let closed = ring.ideal_closure(&self.bounds, side)?;
        let two = ring.ideal_closure(&closed.bounds, Side::TwoSided)?;
        Ok(two.bounds == closed.bounds)
    }
}
