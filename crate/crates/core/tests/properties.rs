//! Valuation, residue and conjugation properties checked against plain
//! matrix arithmetic over the rationals.

use std::sync::Arc;

use gradval::algebra::GradedElement;
use gradval::value::TransportedRing;
use gradval::{BoundPattern, Ext, FieldDescriptor, GSkewfield, Groupoid, PatternKind, Scalar, ValuationMachinery};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

type Mat = [[BigRational; 2]; 2];

fn m2() -> Arc<GSkewfield> {
    Arc::new(GSkewfield::untwisted(FieldDescriptor::padic(5), Arc::new(Groupoid::delta(2))))
}

fn full(q: &Arc<GSkewfield>) -> BoundPattern {
    BoundPattern::new(q.clone(), vec![Ext::ZERO; 4], PatternKind::Subring).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn v5(x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let five = BigInt::from(5);
    let mut count = 0;
    let (mut n, mut d) = (x.numer().abs(), x.denom().clone());
    while (&n % &five).is_zero() {
        n /= &five;
        count += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        count -= 1;
    }
    Some(count)
}

fn to_element(q: &GSkewfield, m: &Mat) -> GradedElement {
    let grp = q.groupoid();
    let mut terms = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            if !m[i][j].is_zero() {
                let g = grp.lookup(&format!("e{}{}", i + 1, j + 1)).unwrap();
                terms.push((g, Scalar::Rational(m[i][j].clone())));
            }
        }
    }
    GradedElement::from_terms(terms)
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let z = BigRational::zero;
    let mut c: Mat = [[z(), z()], [z(), z()]];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

fn entry() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        1 => Just(BigRational::zero()),
        4 => (-60i64..=60, prop::sample::select(vec![1i64, 2, 3, 5, 25, 7, 125])).prop_map(|(n, d)| rat(n, d)),
    ]
}

fn matrix() -> impl Strategy<Value = Mat> {
    [[entry(), entry()], [entry(), entry()]]
}

/// Entries in the 5-adic integers.
fn integral_entry() -> impl Strategy<Value = BigRational> {
    (-60i64..=60, prop::sample::select(vec![1i64, 2, 3, 7])).prop_map(|(n, d)| rat(n, d))
}

fn integral_matrix() -> impl Strategy<Value = Mat> {
    [[integral_entry(), integral_entry()], [integral_entry(), integral_entry()]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// `v(xy) = v(x)v(y)` for homogeneous pairs in M2 over the 5-adic
    /// integers.
    #[test]
    fn homogeneous_pairs_multiply(g in 0usize..4, h in 0usize..4, a in entry(), b in entry()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let q = m2();
        let v = ValuationMachinery::build(&full(&q)).unwrap();
        let (x, y) = (GradedElement::homogeneous(g, Scalar::Rational(a)), GradedElement::homogeneous(h, Scalar::Rational(b)));
        let xy = q.mul(&x, &y);
        if xy.is_zero() {
            return Ok(());
        }
        let product = v.mul(&v.valuate(&x).unwrap(), &v.valuate(&y).unwrap()).unwrap();
        prop_assert_eq!(v.valuate(&xy).unwrap(), product);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn value_is_the_least_entry_value(m in matrix()) {
        let q = m2();
        let v = ValuationMachinery::build(&full(&q)).unwrap();
        let x = to_element(&q, &m);
        let least = m.iter().flatten().filter_map(v5).min();
        let got = v.valuate(&x).unwrap();
        match least {
            None => prop_assert!(got.is_infinite()),
            Some(k) => prop_assert_eq!(v.format(&got), format!("[e11: (e11, {k})]")),
        }
    }

    /// `x ↦ x mod 5` on integral matrices is multiplicative; the residue
    /// skewfield of M2 over the 5-adic integers must reproduce it.
    #[test]
    fn residue_map_is_multiplicative(a in integral_matrix(), b in integral_matrix()) {
        let q = m2();
        let r = full(&q);
        let res = r.residue_skewfield().unwrap();
        let f = q.field();
        let reduce = |m: &Mat| {
            GradedElement::from_terms((0..4).filter_map(|g| {
                let c = f.residue(&Scalar::Rational(m[g / 2][g % 2].clone())).unwrap();
                (!c.is_zero()).then_some((g, c))
            }))
        };
        let ab = matmul(&a, &b);
        prop_assert_eq!(reduce(&ab), res.ring.mul(&reduce(&a), &reduce(&b)));
        prop_assert!(r.contains(&to_element(&q, &ab)));
    }

    /// `y ∈ qRq⁻¹` for the shear `q = [[1,1],[0,1]]`, checked by conjugating
    /// back with explicit matrices.
    #[test]
    fn shear_conjugation_matches_matrices(m in matrix()) {
        let q = m2();
        let r = full(&q);
        let one = BigRational::one;
        let zero = BigRational::zero;
        let shear: Mat = [[one(), one()], [zero(), one()]];
        let shear_inv: Mat = [[one(), -one()], [zero(), one()]];
        let t = TransportedRing::new(&r, to_element(&q, &shear)).unwrap();
        let y = to_element(&q, &m);
        let back = matmul(&matmul(&shear_inv, &m), &shear);
        let expected = back.iter().flatten().all(|x| v5(x).is_none_or(|k| k >= 0));
        prop_assert_eq!(t.contains(&y), expected);
        prop_assert_eq!(t.transport(&to_element(&q, &back)), y);
    }
}

#[test]
fn shear_transport_is_total_in_the_window() {
    let q = m2();
    let t = TransportedRing::new(&full(&q), q.parse_element("e11 + e12 + e22").unwrap()).unwrap();
    assert!(t.is_g_total().unwrap() && t.is_g_stable().unwrap());
    assert_eq!(t.total_by_scan(gradval::pattern::oracle::Window::symmetric(3)), None);
}
