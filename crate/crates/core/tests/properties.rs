mod common;

use common::*;
use kirwan_core::conic_geometry::{complete_conic, enrichment, DualDatum};
use kirwan_core::degeneration::{
    classify_family, limit_lift, tree_bundle_descriptor, DegenerationType, PencilFamily, PointChart,
};
use kirwan_core::exact_linear::{adjugate, triple, wedge, CovecV, VecV};
use kirwan_core::group_action::{canonical_reduce, disc, shape_matches};
use kirwan_core::kirwan_strata::{lift_to_xtilde, stability_xtilde, XTildePoint};
use kirwan_core::pencil::{Mat2, PencilMatrix};
use kirwan_core::poly::Poly;
use kirwan_core::ring::Ring;
use kirwan_core::Scalar;
use proptest::prelude::*;

fn vec_of(c: [i64; 3]) -> VecV {
    VecV::new(s(c[0]), s(c[1]), s(c[2]))
}

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn vec_s() -> impl Strategy<Value = VecV> {
    prop::array::uniform3(small()).prop_map(vec_of)
}

fn pencil_s() -> impl Strategy<Value = PencilMatrix> {
    (vec_s(), vec_s(), vec_s(), vec_s())
        .prop_map(|(x, xp, y, yp)| PencilMatrix::new(x, xp, y, yp))
        .prop_filter("independent rows", PencilMatrix::rows_independent)
}

fn gl2_s() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(small())
        .prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| [[s(m[0]), s(m[1])], [s(m[2]), s(m[3])]])
}

fn worked_family() -> impl Strategy<Value = PencilFamily> {
    prop_oneof![
        Just(type1_family()),
        Just(type2_family(1)),
        Just(type2_family(2)),
        Just(type3_family()),
    ]
}

/// `A₀ + t·A₁` with a random stable `A₁` through a random point of `Z_G`.
fn transversal_s() -> impl Strategy<Value = PencilFamily> {
    (vec_s(), gl2_s(), pencil_s())
        .prop_filter("nonzero point", |(x, _, _)| !x.is_zero())
        .prop_map(|(x, g, a1)| family(&[diag(x.clone(), x).act_right(&g), a1]))
        .prop_filter("stable generic member", |f| f.check_generic().is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn limit_commutes_with_the_group(f in prop_oneof![worked_family(), transversal_s()], g in gl2_s()) {
        let l = limit_lift(&f).unwrap();
        let moved = limit_lift(&f.act_right(&g)).unwrap();
        prop_assert!(moved.point.proj_eq(&l.point.act(&g)));
        // row operations do not change the family at all
        let rows = limit_lift(&f.act_left(&g)).unwrap();
        prop_assert!(rows.point.proj_eq(&l.point));
    }

    #[test]
    fn classification_is_invariant(f in prop_oneof![worked_family(), transversal_s()], g in gl2_s(), h in gl2_s()) {
        let kind = classify_family(&f).unwrap();
        prop_assert_eq!(classify_family(&f.act_right(&g).act_left(&h)).unwrap(), kind);
    }

    #[test]
    fn reparametrization(f in prop_oneof![worked_family(), transversal_s()], c in prop_oneof![Just(1i64), Just(-2), Just(3)]) {
        let kind = classify_family(&f).unwrap();
        let l = limit_lift(&f).unwrap();
        let scaled = f.reparametrize(&s(c), 1);
        prop_assert_eq!(classify_family(&scaled).unwrap(), kind);
        prop_assert!(limit_lift(&scaled).unwrap().point.proj_eq(&l.point));
        prop_assert_eq!(classify_family(&f.reparametrize(&s(c), 2)).unwrap(), kind);
    }

    #[test]
    fn descriptors_are_valid(f in prop_oneof![worked_family(), transversal_s()], g in gl2_s()) {
        let f = f.act_right(&g);
        let kind = classify_family(&f).unwrap();
        match tree_bundle_descriptor(&f) {
            Ok(d) => {
                prop_assert_eq!(d.kind, kind);
                prop_assert!(d.tree.is_valid());
                prop_assert_eq!(d.tree.total_charge(), 2);
                let mut named: Vec<&str> = d.components.iter().map(|c| c.vertex.as_str()).collect();
                let mut vertices: Vec<&str> = d.tree.vertices.iter().map(String::as_str).collect();
                named.sort();
                vertices.sort();
                prop_assert_eq!(named, vertices);
            }
            Err(e) => prop_assert_eq!(kind, DegenerationType::NotSemistable, "{}", e),
        }
    }

    #[test]
    fn canonical_reduction_reaches_its_shape(a in pencil_s(), g in gl2_s()) {
        let p = lift_to_xtilde(&a);
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let c = canonical_reduce(&p.phi).unwrap();
        prop_assert!(shape_matches(c.kind, &c.reduced));
        let moved = canonical_reduce(&p.act(&g).phi).unwrap();
        prop_assert_eq!(moved.kind, c.kind);
        prop_assert_eq!(stability_xtilde(&p.act(&g)).unwrap(), stability_xtilde(&p).unwrap());
    }

    #[test]
    fn enrichment_does_not_depend_on_the_complement(
        x in vec_s(), u in vec_s(), w in vec_s(), v in vec_s(),
        a in vec_s(), b in vec_s(),
    ) {
        prop_assume!(!x.is_zero());
        let phi = [wedge(&x, &u), wedge(&x, &w), wedge(&x, &v)];
        let q = disc(&phi);
        prop_assume!(!q.is_zero());
        let span = |vs: &[&VecV]| kirwan_core::linalg::rank(&vs.iter().map(|v| v.0.to_vec()).collect::<Vec<_>>());
        prop_assume!(span(&[&x, &a, &b]) == 3);
        let pivot = x.0.iter().position(|c| !c.is_zero()).unwrap();
        let std: Vec<VecV> = (0..3).filter(|&i| i != pivot).map(VecV::basis).collect();
        let reference = enrichment(&x, &q, [&std[0], &std[1]]);
        let other = enrichment(&x, &q, [&a, &b]);
        match (reference, other) {
            (Ok(p), Ok(r)) => prop_assert_eq!(p, r),
            (p, r) => prop_assert_eq!(p.is_ok(), r.is_ok()),
        }
    }

    #[test]
    fn biduality(a in pencil_s()) {
        let q = a.det_form();
        prop_assume!(!q.det().is_zero());
        let adj = adjugate(&q);
        prop_assert!(adjugate(&adj).proj_eq(&q));
        if let Ok(p) = lift_to_xtilde(&a) {
            if let Ok(c) = complete_conic(&p) {
                if let DualDatum::Dual(d) = &c.dual {
                    prop_assert!(adjugate(d).proj_eq(&q));
                }
            }
        }
    }

    #[test]
    fn chart_round_trip(p in vec_s(), c in prop::array::uniform3(prop::collection::vec(small(), 0..3))) {
        prop_assume!(!p.is_zero());
        let chart = PointChart::new(p.0.clone(), "s", "u").unwrap();
        let gamma = CovecV(c.map(|cs| Poly::new(cs.into_iter().map(Scalar::int).collect())));
        prop_assert_eq!(chart.transform(&chart.untransform(&gamma)).unwrap(), gamma);
    }

    #[test]
    fn json_round_trips(a in pencil_s(), num in -50i64..50, den in 1i64..20) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<PencilMatrix>(&text).unwrap(), a.clone());
        let f = family(&[a.clone(), a]);
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<PencilFamily>(&text).unwrap(), f);
        let q = Scalar::frac(num, den);
        prop_assert_eq!(serde_json::from_str::<Scalar>(&serde_json::to_string(&q).unwrap()).unwrap(), q);
    }
}

#[test]
fn points_of_zg_need_a_family() {
    let a = diag(e(0), e(0));
    assert!(lift_to_xtilde(&a).is_err());
    let p = XTildePoint::new(a, [z(0, 1, 0), CovecV::zero(), z(0, 0, 1)]).unwrap();
    assert!(triple::is_zero(&p.base.phi()));
    assert!(!p.phi.iter().all(CovecV::is_zero));
    assert!(p.phi.iter().all(|b| b.0[0].is_zero()));
}
