//! Twisted groupoid rings `Q = k[G, α, σ]` with multiplication
//! `(a·u_f)(b·u_g) = a·σ_f(b)·α(f,g)·u_{fg}` when `fg` is defined and `0`
//! otherwise.

mod parse;
mod simple;
mod twist;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::ext::Ext;
use crate::groupoid::Groupoid;
use crate::scalar::{linalg, FieldAutomorphism, FieldDescriptor, Scalar};

pub use parse::ElementParseError;
pub use simple::{IdealWitness, Simplicity};
pub use twist::{validate_twist, ConditionCheck, Twist, TwistReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("twist fails condition ({}): {}", .0.first_failure().map(|c| c.condition).unwrap_or(0), .0.first_failure().and_then(|c| c.witness.clone()).unwrap_or_default())]
    InvalidTwist(TwistReport),
    #[error("twist tables have the wrong size for a groupoid with {0} elements")]
    TwistShape(usize),
    #[error("element is not G-invertible")]
    NotInvertible,
    #[error("standard idempotent witness needs 1/{order} but the characteristic is {characteristic}")]
    CharacteristicObstruction { characteristic: u64, order: usize },
}

/// An element `Σ c_g u_g`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedElement {
    coeffs: BTreeMap<usize, Scalar>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·u_g` (zero if `c = 0`).
    pub fn homogeneous(g: usize, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.insert(g, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut x = Self::zero();
        for (g, c) in terms {
            x.add_term(g, c);
        }
        x
    }

    fn insert(&mut self, g: usize, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, c);
        }
    }

    /// Adds `c·u_g` in place.
    pub fn add_term(&mut self, g: usize, c: Scalar) {
        let sum = match self.coeffs.remove(&g) {
            Some(old) => old + c,
            None => c,
        };
        self.insert(g, sum);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: usize) -> Option<&Scalar> {
        self.coeffs.get(&g)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// `Some((g, c))` when the element is `c·u_g` with `c ≠ 0`.
    pub fn as_homogeneous(&self) -> Option<(usize, &Scalar)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(g, c)| (*g, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedElement {
        GradedElement {
            coeffs: self.coeffs.iter().map(|(g, c)| (*g, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }
}

/// The ring `k[G, α, σ]`. Built through [`GSkewfield::new`], which rejects
/// twists failing conditions (1)–(4); [`GSkewfield::new_unchecked`] exists
/// for fault-injection tests.
#[derive(Debug, Clone)]
pub struct GSkewfield {
    field: FieldDescriptor,
    groupoid: Arc<Groupoid>,
    twist: Twist,
    valid: bool,
}

impl GSkewfield {
    pub fn new(field: FieldDescriptor, groupoid: Arc<Groupoid>, twist: Twist) -> Result<Self, AlgebraError> {
        let q = Self::new_unchecked(field, groupoid, twist)?;
        let report = q.validate();
        if !report.passed() {
            return Err(AlgebraError::InvalidTwist(report));
        }
        Ok(q)
    }

    /// The untwisted groupoid ring `k[G]`.
    pub fn untwisted(field: FieldDescriptor, groupoid: Arc<Groupoid>) -> Self {
        let twist = Twist::trivial(&groupoid, &field);
        Self::new(field, groupoid, twist).expect("trivial twist is valid")
    }

    /// Skips validation; products with an invalid twist may fail to be
    /// associative.
    pub fn new_unchecked(field: FieldDescriptor, groupoid: Arc<Groupoid>, twist: Twist) -> Result<Self, AlgebraError> {
        let n = groupoid.len();
        if twist.alpha.len() != n * n || twist.sigma.len() != n {
            return Err(AlgebraError::TwistShape(n));
        }
        let valid = validate_twist(&field, &groupoid, &twist).passed();
        Ok(GSkewfield { field, groupoid, twist, valid })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn validate(&self) -> TwistReport {
        validate_twist(&self.field, &self.groupoid, &self.twist)
    }

    /// `α(f, g)`, or `None` when `fg` is undefined.
    pub fn alpha(&self, f: usize, g: usize) -> Option<&Scalar> {
        self.twist.alpha(self.groupoid.len(), f, g)
    }

    /// `w(α(f, g))`, `+inf` when undefined.
    pub fn alpha_value(&self, f: usize, g: usize) -> Ext {
        self.alpha(f, g).map(|a| self.field.valuate(a)).unwrap_or(Ext::PosInf)
    }

    pub fn sigma(&self, g: usize) -> FieldAutomorphism {
        self.twist.sigma[g]
    }

    pub fn valuate(&self, c: &Scalar) -> Ext {
        self.field.valuate(c)
    }

    /// `u_g`.
    pub fn unit(&self, g: usize) -> GradedElement {
        GradedElement::homogeneous(g, self.field.one())
    }

    /// `1 = Σ_e 1_e`.
    pub fn one(&self) -> GradedElement {
        self.idempotent_sum(self.groupoid.idempotents())
    }

    pub fn idempotent_sum(&self, es: &[usize]) -> GradedElement {
        GradedElement::from_terms(es.iter().map(|&e| (e, self.field.one())))
    }

    /// Product of homogeneous terms; `None` when `fg` is undefined.
    pub fn mul_terms(&self, f: usize, a: &Scalar, g: usize, b: &Scalar) -> Option<(usize, Scalar)> {
        let fg = self.groupoid.mul(f, g)?;
        let twisted = self.field.apply(self.sigma(f), b).expect("sigma is an automorphism of k");
        let alpha = self.alpha(f, g).expect("alpha defined on composable pairs");
        Some((fg, a * &twisted * alpha.clone()))
    }

    pub fn mul(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (f, a) in x.terms() {
            for (g, b) in y.terms() {
                if let Some((fg, c)) = self.mul_terms(f, a, g, b) {
                    out.add_term(fg, c);
                }
            }
        }
        out
    }

    /// Left multiplication by a scalar, `c·x`.
    pub fn scale(&self, c: &Scalar, x: &GradedElement) -> GradedElement {
        GradedElement::from_terms(x.terms().map(|(g, a)| (g, c * a)))
    }

    /// `(s(x), t(x))` as sorted idempotent lists: `s(x) = Σ 1_e` over
    /// `e` with `1_e x ≠ 0`, `t(x)` over `e` with `x 1_e ≠ 0`.
    pub fn source_target(&self, x: &GradedElement) -> (Vec<usize>, Vec<usize>) {
        let mut s: Vec<usize> = x.support().map(|g| self.groupoid.source(g)).collect();
        let mut t: Vec<usize> = x.support().map(|g| self.groupoid.target(g)).collect();
        s.sort_unstable();
        s.dedup();
        t.sort_unstable();
        t.dedup();
        (s, t)
    }

    /// G-inverse of a nonzero homogeneous element:
    /// `(c·u_g)⁻¹ = σ_{g⁻¹}(1/(c·α(g,g⁻¹)))·u_{g⁻¹}`.
    pub fn homogeneous_inverse(&self, g: usize, c: &Scalar) -> (usize, Scalar) {
        let gi = self.groupoid.inverse(g);
        let a = self.alpha(g, gi).expect("g g^-1 is defined");
        let d = (c * a).inv().expect("homogeneous element is nonzero");
        (gi, self.field.apply(self.sigma(gi), &d).expect("sigma is an automorphism of k"))
    }

    /// The unique `b` with `s(x) = xb = t(b)` and `s(b) = bx = t(x)`, if
    /// it exists. Non-homogeneous elements are handled by solving the
    /// linear system `xb = s(x)`, `bx = t(x)` over the prime field.
    pub fn g_inverse(&self, x: &GradedElement) -> Option<GradedElement> {
        if x.is_zero() {
            // 0 = 0·0 with s(0) = t(0) = 0
            return Some(GradedElement::zero());
        }
        if let Some((g, c)) = x.as_homogeneous() {
            let (gi, d) = self.homogeneous_inverse(g, c);
            return Some(GradedElement::homogeneous(gi, d));
        }
        let (s, t) = self.source_target(x);
        let grp = &self.groupoid;
        let candidates: Vec<usize> = (0..grp.len())
            .filter(|&g| t.contains(&grp.source(g)) && s.contains(&grp.target(g)))
            .collect();
        let basis = self.field.basis();
        let unknowns: Vec<GradedElement> = candidates
            .iter()
            .flat_map(|&g| basis.iter().map(move |beta| GradedElement::homogeneous(g, beta.clone())))
            .collect();
        let lhs_cols: Vec<Vec<Scalar>> = unknowns
            .iter()
            .map(|b| {
                let mut col = self.coords(&self.mul(x, b));
                col.extend(self.coords(&self.mul(b, x)));
                col
            })
            .collect();
        let mut rhs = self.coords(&self.idempotent_sum(&s));
        rhs.extend(self.coords(&self.idempotent_sum(&t)));
        let rows = transpose(&lhs_cols, rhs.len());
        let base = self.field.prime_subfield();
        let (sol, nullity) = linalg::solve(&base, &rows, &rhs)?;
        debug_assert_eq!(nullity, 0, "G-inverses are unique");
        let mut b = GradedElement::zero();
        for (coef, u) in sol.iter().zip(&unknowns) {
            if !coef.is_zero() {
                b = b.add(&self.scale(&self.field.embed(coef), u));
            }
        }
        Some(b)
    }

    /// Every nonzero homogeneous element has the explicit inverse above
    /// exactly when the twist is valid.
    pub fn is_g_skewfield(&self) -> bool {
        self.valid
    }

    /// `Q_g Q_g' = Q_{gg'}` for all composable pairs; holds for every valid
    /// twist since `u_g u_g' = α(g,g') u_{gg'}` with `α ≠ 0`.
    pub fn is_strong(&self) -> bool {
        self.valid
    }

    pub fn has_invertible_homogeneous(&self) -> bool {
        self.groupoid.is_group()
    }

    pub fn is_g_simple(&self) -> bool {
        self.groupoid.is_connected()
    }

    /// Coordinates over the prime field, `|G|·[k:prime]` entries.
    pub fn coords(&self, x: &GradedElement) -> Vec<Scalar> {
        let deg = self.field.degree();
        let base = self.field.prime_subfield();
        let mut out = vec![base.zero(); self.groupoid.len() * deg];
        for (g, c) in x.terms() {
            for (i, v) in self.field.coords(c).into_iter().enumerate() {
                out[g * deg + i] = v;
            }
        }
        out
    }

    pub fn from_coords(&self, v: &[Scalar]) -> GradedElement {
        let deg = self.field.degree();
        GradedElement::from_terms(
            (0..self.groupoid.len()).map(|g| (g, self.field.from_coords(&v[g * deg..(g + 1) * deg]))),
        )
    }

    /// The prime-field basis `β·u_g`.
    pub fn basis(&self) -> Vec<GradedElement> {
        let basis = self.field.basis();
        (0..self.groupoid.len())
            .flat_map(|g| basis.iter().map(move |b| GradedElement::homogeneous(g, b.clone())))
            .collect()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GradedElement {
        GradedElement::from_terms((0..self.groupoid.len()).filter_map(|g| {
            rng.gen_bool(0.6).then(|| (g, self.field.random_element(rng)))
        }))
    }

    pub fn parse_element(&self, s: &str) -> Result<GradedElement, ElementParseError> {
        parse::parse_element(self, s)
    }

    pub fn format_element(&self, x: &GradedElement) -> String {
        parse::format_element(self, x)
    }
}

/// Columns to rows.
pub(crate) fn transpose(cols: &[Vec<Scalar>], height: usize) -> Vec<Vec<Scalar>> {
    (0..height).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::groupoid::FiniteGroup;

    pub(crate) fn quaternion_twist(q: &FieldDescriptor, g: &Groupoid) -> Twist {
        let mut t = Twist::trivial(g, q);
        let n = g.len();
        let idx = |s: &str| g.lookup(s).unwrap();
        let m1 = || Some(q.from_int(-1));
        for (a, b) in [("i", "i"), ("j", "j"), ("k", "k"), ("j", "i"), ("k", "j"), ("i", "k")] {
            t.set_alpha(n, idx(a), idx(b), m1());
        }
        t
    }

    #[test]
    fn matrix_units() {
        let q = GSkewfield::untwisted(FieldDescriptor::rationals(), Arc::new(Groupoid::delta(2)));
        let x = q.parse_element("e12").unwrap();
        let y = q.parse_element("e21").unwrap();
        assert_eq!(q.mul(&x, &y), q.parse_element("e11").unwrap());
        assert!(q.mul(&x, &x).is_zero());
        let z = q.parse_element("3/2*e12 + 1*e21 - 4*e22").unwrap();
        assert_eq!(q.mul(&z, &q.one()), z);
        assert_eq!(q.mul(&q.one(), &z), z);
    }

    #[test]
    fn quaternion_products_and_validation() {
        let f = FieldDescriptor::rationals();
        let g = Arc::new(Groupoid::from_group(&FiniteGroup::klein()));
        let twist = quaternion_twist(&f, &g);
        let report = validate_twist(&f, &g, &twist);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.condition(2).checked, 64);
        assert_eq!(report.condition(4).checked, 16);
        let q = GSkewfield::new(f, g.clone(), twist.clone()).unwrap();
        let (i, j, k) = (q.parse_element("i").unwrap(), q.parse_element("j").unwrap(), q.parse_element("k").unwrap());
        assert_eq!(q.mul(&i, &j), k);
        assert_eq!(q.mul(&j, &i), k.neg());
        assert_eq!(q.g_inverse(&i).unwrap(), i.neg());
        assert!(q.has_invertible_homogeneous() && q.is_strong() && q.is_g_skewfield());

        let mut flipped = twist;
        flipped.set_alpha(g.len(), g.lookup("j").unwrap(), g.lookup("i").unwrap(), Some(f.one()));
        let bad = validate_twist(&f, &g, &flipped);
        assert!(!bad.condition(2).passed);
        assert!(bad.condition(2).witness.as_ref().unwrap().starts_with("triple ("));
        assert!(matches!(GSkewfield::new(f, g, flipped), Err(AlgebraError::InvalidTwist(_))));
    }

    #[test]
    fn zero_alpha_rejected() {
        let f = FieldDescriptor::rationals();
        let g = Arc::new(Groupoid::delta(2));
        let mut t = Twist::trivial(&g, &f);
        t.set_alpha(4, g.lookup("e12").unwrap(), g.lookup("e21").unwrap(), Some(f.zero()));
        let report = validate_twist(&f, &g, &t);
        assert!(!report.condition(4).passed);
        assert!(report.condition(4).witness.as_ref().unwrap().contains("nonzero"));
    }

    #[test]
    fn source_target_and_inverses() {
        let q = GSkewfield::untwisted(FieldDescriptor::rationals(), Arc::new(Groupoid::delta(2)));
        let g = q.groupoid().clone();
        let (e11, e22) = (g.lookup("e11").unwrap(), g.lookup("e22").unwrap());
        let x = q.parse_element("e11 + e12").unwrap();
        assert_eq!(q.source_target(&x), (vec![e11], vec![e11, e22]));
        assert!(q.g_inverse(&x).is_none());
        assert_eq!(q.source_target(&q.one()), (vec![e11, e22], vec![e11, e22]));
        assert_eq!(q.source_target(&GradedElement::zero()), (vec![], vec![]));
        let y = q.parse_element("3*e12").unwrap();
        assert_eq!(q.g_inverse(&y).unwrap(), q.parse_element("1/3*e21").unwrap());
        // invertible matrix: [[1,1],[0,1]]
        let m = q.parse_element("e11 + e12 + e22").unwrap();
        let mi = q.g_inverse(&m).unwrap();
        assert_eq!(mi, q.parse_element("e11 - e12 + e22").unwrap());
        // non-homogeneous with partial support: e11 + e12 scaled into a 1x2 block
        let z = q.parse_element("2*e11 + 5*e22").unwrap();
        assert_eq!(q.mul(&z, &q.g_inverse(&z).unwrap()), q.one());
    }

    #[test]
    fn quadratic_g_inverse() {
        let f = FieldDescriptor::quadratic(2);
        let g = Arc::new(Groupoid::delta(2));
        let q = GSkewfield::untwisted(f, g);
        let x = q.parse_element("(1+sqrt)*e11 + e12 + sqrt*e22").unwrap();
        let xi = q.g_inverse(&x).unwrap();
        assert_eq!(q.mul(&x, &xi), q.one());
        assert_eq!(q.mul(&xi, &x), q.one());
    }
}
