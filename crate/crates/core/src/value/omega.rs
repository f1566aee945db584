//! The value groupoid `Ω = H(Q)*/H(R)*` of a homogeneous subring.
//!
//! A nonzero homogeneous `c·u_g` is described by `(g, w(c))`. Multiplying by
//! an R-unit of degree `f` moves `g` to `fg` (or `gf`) and shifts the value
//! by an element of the unit interval `U_f = [b_f, -a_f - b_{f⁻¹}]` plus the
//! value of the twist. Orbits of this action are found by search; inside an
//! orbit a potential `δ` turns every pair `(g, m)` into a single offset
//! `m - δ(g)` relative to the orbit root, reduced modulo the gcd of all
//! shift ambiguities.

use std::collections::VecDeque;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::GSkewfield;
use crate::ext::Ext;
use crate::pattern::BoundPattern;
use crate::scalar::Scalar;

/// Canonical form of an `Ω` class: the orbit root and the offset of the
/// class relative to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OmegaClass {
    pub rep: usize,
    pub offset: i64,
}

/// Values an R-unit of a given degree can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct UnitInterval {
    /// Some attainable value.
    rep: i64,
    /// More than one value is attainable.
    wide: bool,
}

#[derive(Debug, Clone)]
pub struct Omega {
    parent: Arc<GSkewfield>,
    trivial: bool,
    units: Vec<Option<UnitInterval>>,
    root: Vec<usize>,
    delta: Vec<i64>,
    /// Indexed by element; meaningful at roots. 0 means offsets are exact.
    modulus: Vec<i64>,
    /// `reach[a*n + b]`: least value shift `m' - m` with `(b, m') = r (a, m) r'`
    /// for members `r, r'` of R.
    reach: Vec<Ext>,
    dropped: Vec<(OmegaClass, OmegaClass)>,
    scale: i64,
}

impl Omega {
    pub fn build(ring: &BoundPattern) -> Omega {
        let q = ring.parent().clone();
        let grp = q.groupoid().clone();
        let n = grp.len();
        let trivial = q.field().is_trivially_valued();
        let b = ring.bounds();
        let wa = |f: usize, g: usize| q.alpha_value(f, g).finite().expect("composable pair has a nonzero twist");

        let units: Vec<Option<UnitInterval>> = (0..n)
            .map(|f| {
                let fi = grp.inverse(f);
                let lo = b[f];
                let hi = -(ring.inverse_defect(f) + b[fi]);
                if trivial {
                    return (lo == Ext::NegInf && hi == Ext::PosInf).then_some(UnitInterval { rep: 0, wide: false });
                }
                if lo > hi || lo == Ext::PosInf || hi == Ext::NegInf {
                    return None;
                }
                let rep = lo.finite().or(hi.finite()).unwrap_or(0);
                Some(UnitInterval { rep, wide: lo != hi })
            })
            .collect();

        let mut root = vec![usize::MAX; n];
        let mut delta = vec![0i64; n];
        let mut modulus = vec![0i64; n];
        let starts = grp.idempotents().iter().copied().chain(0..n);
        for start in starts.collect::<Vec<_>>() {
            if root[start] != usize::MAX {
                continue;
            }
            root[start] = start;
            let mut d = 0i64;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (f, u) in units.iter().enumerate() {
                    let Some(u) = u else { continue };
                    let left = grp.mul(f, x).map(|y| (y, delta[x] + u.rep + wa(f, x)));
                    let right = grp.mul(x, f).map(|y| (y, delta[x] + u.rep + wa(x, f)));
                    if u.wide && (left.is_some() || right.is_some()) {
                        d = 1;
                    }
                    for (y, cand) in left.into_iter().chain(right) {
                        if root[y] == usize::MAX {
                            root[y] = start;
                            delta[y] = cand;
                            queue.push_back(y);
                        } else {
                            d = d.gcd(&(cand - delta[y]));
                        }
                    }
                }
            }
            modulus[start] = d;
        }

        let mut reach = vec![Ext::PosInf; n * n];
        for a in 0..n {
            for f1 in 0..n {
                if b[f1] == Ext::PosInf {
                    continue;
                }
                let Some(y) = grp.mul(f1, a) else { continue };
                for g in 0..n {
                    if grp.source(g) != grp.source(y) {
                        continue;
                    }
                    let f2 = grp.mul(grp.inverse(y), g).expect("s(g) = s(y)");
                    if b[f2] == Ext::PosInf {
                        continue;
                    }
                    let shift = b[f1] + b[f2] + (wa(f1, a) + wa(y, f2));
                    let slot = &mut reach[a * n + g];
                    *slot = (*slot).min(shift);
                }
            }
        }

        Omega { parent: q, trivial, units, root, delta, modulus, reach, dropped: Vec::new(), scale: 1 }
    }

    pub fn parent(&self) -> &Arc<GSkewfield> {
        &self.parent
    }

    /// Degrees `f` with `R_f` containing a unit of R.
    pub fn unit_degrees(&self) -> Vec<usize> {
        (0..self.units.len()).filter(|&f| self.units[f].is_some()).collect()
    }

    /// A value `m` such that `π^m·u_f` is an R-unit, if any.
    pub fn unit_value(&self, f: usize) -> Option<i64> {
        self.units[f].map(|u| u.rep)
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.root.len()).filter(|&g| self.root[g] == g).collect()
    }

    pub fn orbit_root(&self, g: usize) -> usize {
        self.root[g]
    }

    pub fn orbit(&self, rep: usize) -> Vec<usize> {
        (0..self.root.len()).filter(|&g| self.root[g] == rep).collect()
    }

    /// Modulus of the offsets in the orbit of `rep`: 0 when classes are
    /// told apart by their exact offset, 1 when the orbit is a single class.
    pub fn modulus(&self, rep: usize) -> i64 {
        self.modulus[self.root[rep]]
    }

    /// Least shift in value from `a` to `b` through R (see the field
    /// `reach`): `(b, m') ≥ (a, m)` iff `m' - m ≥ reach(a, b)`.
    pub fn reach(&self, a: usize, b: usize) -> Ext {
        self.reach[a * self.root.len() + b]
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.trivial
    }

    /// Class of a homogeneous element of degree `g` and value `m`.
    pub fn class_of(&self, g: usize, m: i64) -> OmegaClass {
        let rep = self.root[g];
        let d = self.modulus[rep];
        let mut raw = if self.trivial { 0 } else { m - self.delta[g] };
        if d > 0 {
            raw = raw.rem_euclid(d);
        }
        OmegaClass { rep, offset: raw * self.scale }
    }

    /// Class of `c·u_g`; `c` must be nonzero.
    pub fn class_of_term(&self, g: usize, c: &Scalar) -> OmegaClass {
        let m = self.parent.valuate(c).finite().expect("nonzero coefficient");
        self.class_of(g, m)
    }

    fn raw(&self, w: OmegaClass) -> i64 {
        w.offset / self.scale
    }

    /// `ω ≥ ω'`: some representative of `ω` is `r_s y r_t` with `y`
    /// representing `ω'` and `r_s, r_t ∈ H(R)`.
    pub fn ge(&self, w: OmegaClass, w2: OmegaClass) -> bool {
        if w == w2 {
            return true;
        }
        if self.dropped.contains(&(w, w2)) {
            return false;
        }
        match self.reach(w2.rep, w.rep) {
            Ext::NegInf => true,
            Ext::PosInf => false,
            Ext::Fin(d) => {
                self.modulus[w.rep] > 0 || self.modulus[w2.rep] > 0 || self.raw(w) - self.raw(w2) >= d
            }
        }
    }

    pub fn gt(&self, w: OmegaClass, w2: OmegaClass) -> bool {
        w != w2 && self.ge(w, w2)
    }

    pub fn comparable(&self, w: OmegaClass, w2: OmegaClass) -> bool {
        self.ge(w, w2) || self.ge(w2, w)
    }

    /// Product of classes, defined when the target of `ω` and the source
    /// of `ω'` are the same class, i.e. joined by an R-unit.
    pub fn mul(&self, w: OmegaClass, w2: OmegaClass) -> Option<OmegaClass> {
        let grp = self.parent.groupoid();
        let (a, b) = (w.rep, w2.rep);
        let (ta, sb) = (grp.target(a), grp.source(b));
        let f = if ta == sb {
            ta
        } else {
            (0..grp.len()).find(|&f| self.units[f].is_some() && grp.source(f) == ta && grp.target(f) == sb)?
        };
        let u = self.units[f].expect("f is a unit degree");
        let af = grp.mul(a, f).expect("t(a) = s(f)");
        let afb = grp.mul(af, b).expect("t(f) = s(b)");
        let wa = |x: usize, y: usize| self.parent.alpha_value(x, y).finite().expect("composable");
        let m = self.raw(w) + self.delta[a] + u.rep + self.raw(w2) + self.delta[b] + wa(a, f) + wa(af, b);
        Some(self.class_of(afb, m))
    }

    pub fn inverse(&self, w: OmegaClass) -> OmegaClass {
        let grp = self.parent.groupoid();
        let g = w.rep;
        let a = self.parent.alpha_value(g, grp.inverse(g)).finite().expect("g g^-1 is defined");
        self.class_of(grp.inverse(g), -(self.raw(w) + self.delta[g]) - a)
    }

    pub fn source(&self, w: OmegaClass) -> OmegaClass {
        self.class_of(self.parent.groupoid().source(w.rep), 0)
    }

    pub fn target(&self, w: OmegaClass) -> OmegaClass {
        self.class_of(self.parent.groupoid().target(w.rep), 0)
    }

    /// The classes `1̄_e`, without repetition.
    pub fn idempotents(&self) -> Vec<OmegaClass> {
        let mut out: Vec<OmegaClass> =
            self.parent.groupoid().idempotents().iter().map(|&e| self.class_of(e, 0)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Classes of `(g, m)` for every `g` and `m` in `lo..=hi`, deduplicated.
    pub fn classes_in(&self, lo: i64, hi: i64) -> Vec<OmegaClass> {
        let ms: Vec<i64> = if self.trivial { vec![0] } else { (lo..=hi).collect() };
        let mut out: Vec<OmegaClass> =
            (0..self.root.len()).flat_map(|g| ms.iter().map(move |&m| self.class_of(g, m))).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn format_class(&self, w: OmegaClass) -> String {
        format!("({}, {})", self.parent.groupoid().name(w.rep), w.offset)
    }

    /// Same classes with every offset multiplied by `k ≥ 1`.
    pub(crate) fn relabeled(&self, k: i64) -> Omega {
        assert!(k >= 1, "relabeling factor must be positive");
        let mut out = self.clone();
        out.scale = self.scale * k;
        out.dropped = self
            .dropped
            .iter()
            .map(|&(a, b)| {
                (OmegaClass { offset: a.offset * k, ..a }, OmegaClass { offset: b.offset * k, ..b })
            })
            .collect();
        out
    }

    /// Forget that `greater ≥ lesser`. Only useful for fault injection.
    pub(crate) fn drop_comparability(&mut self, greater: OmegaClass, lesser: OmegaClass) {
        self.dropped.push((greater, lesser));
    }
}
