//! Closed forms against literal definitions on random patterns.

use std::sync::Arc;

use gradval::algebra::GradedElement;
use gradval::par::Strategy as Exec;
use gradval::pattern::oracle::{stable_by_scan, total_by_scan, Window};
use gradval::pattern::random_subring;
use gradval::{
    BoundPattern, Ext, FieldDescriptor, FiniteGroup, GSkewfield, Groupoid, PatternKind, Side, Twist, ValuationMachinery,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn delta(n: usize) -> Arc<GSkewfield> {
    Arc::new(GSkewfield::untwisted(FieldDescriptor::padic(3), Arc::new(Groupoid::delta(n))))
}

fn z2_delta2() -> Arc<GSkewfield> {
    let g = Groupoid::product_with_delta(&FiniteGroup::cyclic(2), 2).unwrap();
    Arc::new(GSkewfield::untwisted(FieldDescriptor::padic(3), Arc::new(g)))
}

/// Hamilton quaternions graded by the Klein four-group.
fn klein() -> Arc<GSkewfield> {
    let f = FieldDescriptor::padic(3);
    let g = Groupoid::from_group(&FiniteGroup::klein());
    let mut t = Twist::trivial(&g, &f);
    let n = g.len();
    for (a, b) in [("i", "i"), ("j", "j"), ("k", "k"), ("j", "i"), ("k", "j"), ("i", "k")] {
        t.set_alpha(n, g.lookup(a).unwrap(), g.lookup(b).unwrap(), Some(f.from_int(-1)));
    }
    Arc::new(GSkewfield::new(f, Arc::new(g), t).unwrap())
}

/// `u12 u21 = 3 u11`, `u21 u12 = 3 u22`: twist values of nonzero value.
fn twisted_delta2() -> Arc<GSkewfield> {
    let f = FieldDescriptor::padic(3);
    let g = Groupoid::delta(2);
    let mut t = Twist::trivial(&g, &f);
    let (e12, e21) = (g.lookup("e12").unwrap(), g.lookup("e21").unwrap());
    t.set_alpha(4, e12, e21, Some(f.from_int(3)));
    t.set_alpha(4, e21, e12, Some(f.from_int(3)));
    Arc::new(GSkewfield::new(f, Arc::new(g), t).unwrap())
}

fn agree(q: &Arc<GSkewfield>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_subring(q, &mut rng, 4);
    let window = Window::DEFAULT;
    let total = total_by_scan(&p, window, Exec::Sequential).unwrap();
    let stable = stable_by_scan(&p, window, Exec::Sequential).unwrap();
    prop_assert_eq!(p.is_g_total().unwrap(), total.holds, "totality on {}", p);
    prop_assert_eq!(p.is_g_stable().unwrap(), stable.holds, "stability on {}", p);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agreement_delta2(seed in any::<u64>()) { agree(&delta(2), seed)?; }

    #[test]
    fn oracle_agreement_delta3(seed in any::<u64>()) { agree(&delta(3), seed)?; }

    #[test]
    fn oracle_agreement_z2_delta2(seed in any::<u64>()) { agree(&z2_delta2(), seed)?; }

    #[test]
    fn oracle_agreement_klein(seed in any::<u64>()) { agree(&klein(), seed)?; }

    #[test]
    fn oracle_agreement_twisted_delta2(seed in any::<u64>()) { agree(&twisted_delta2(), seed)?; }

    /// `h h⁻¹` and `h⁻¹ h` are the idempotent units at the ends of `h`.
    #[test]
    fn homogeneous_g_inverse(g in 0usize..4, num in -40i64..=40, den in 1i64..=30) {
        prop_assume!(num != 0);
        let q = klein();
        let c = q.field().from_int(num) * q.field().from_int(den).inv().unwrap();
        let h = GradedElement::homogeneous(g, c);
        let hi = q.g_inverse(&h).unwrap();
        prop_assert_eq!(q.mul(&h, &hi), q.one());
        prop_assert_eq!(q.mul(&hi, &h), q.one());
    }

    /// `(1 + c·u_12)⁻¹ = 1 - c·u_12` in M3.
    #[test]
    fn unipotent_g_inverse(num in -40i64..=40) {
        let q = delta(3);
        let x = q.parse_element(&format!("e11 + e22 + e33 + {num}*e12")).unwrap();
        let expected = q.parse_element(&format!("e11 + e22 + e33 + {}*e12", -num)).unwrap();
        prop_assert_eq!(q.g_inverse(&x), Some(expected));
    }
}

/// Multiplying by an R-unit never changes the `Ω` class.
#[test]
fn omega_classes_are_unit_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for q in [delta(2), twisted_delta2(), klein(), z2_delta2()] {
        let f = *q.field();
        let grp = q.groupoid().clone();
        let mut rings = 0;
        while rings < 5 {
            let r = random_subring(&q, &mut rng, 3);
            if !r.is_g_valuation_ring().unwrap() {
                continue;
            }
            rings += 1;
            let v = ValuationMachinery::build(&r).unwrap();
            let om = v.omega();
            for _ in 0..25 {
                let g = rng.gen_range(0..grp.len());
                let value = rng.gen_range(-5..=5);
                let h = GradedElement::homogeneous(g, f.random_with_value(&mut rng, value));
                let units = om.unit_degrees();
                let d = units[rng.gen_range(0..units.len())];
                let m = om.unit_value(d).unwrap();
                let unit = GradedElement::homogeneous(d, f.random_with_value(&mut rng, m));
                assert!(r.contains(&unit) && r.contains(&q.g_inverse(&unit).unwrap()), "{} is no unit of {r}", q.format_element(&unit));
                let (hg, hc) = h.as_homogeneous().unwrap();
                let before = om.class_of_term(hg, hc);
                for moved in [q.mul(&unit, &h), q.mul(&h, &unit)] {
                    if let Some((mg, mc)) = moved.as_homogeneous() {
                        assert_eq!(om.class_of_term(mg, mc), before, "moving {} by {} in {r}", q.format_element(&h), q.format_element(&unit));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked >= 100, "only {checked} composable products");
}

/// On a strongly graded pattern, component ideals extend to two-sided
/// ideals and restrict back unchanged.
#[test]
fn strong_ideal_round_trips() {
    let q = Arc::new(GSkewfield::untwisted(FieldDescriptor::padic(5), Arc::new(Groupoid::delta(2))));
    let r = BoundPattern::new(q.clone(), vec![Ext::ZERO; 4], PatternKind::Subring).unwrap();
    let e = r.component_representatives()[0];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let beta = if rng.gen_bool(0.1) { Ext::PosInf } else { Ext::Fin(rng.gen_range(0..=8)) };
        let ideal = r.extend_component_ideals(&[(e, beta)]).unwrap();
        assert_eq!(ideal.restrict_to_components(), vec![(e, beta)]);
        assert_eq!(r.extend_component_ideals(&ideal.restrict_to_components()).unwrap().bounds(), ideal.bounds());
        let gens: Vec<Ext> = (0..4).map(|_| Ext::Fin(rng.gen_range(0..=6))).collect();
        let other = r.ideal_closure(&gens, Side::TwoSided).unwrap();
        assert_eq!(r.extend_component_ideals(&other.restrict_to_components()).unwrap().bounds(), other.bounds());
    }
}
