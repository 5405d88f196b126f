mod common;

use std::f64::consts::SQRT_2;

use chedra_core::kinematics::profile_point;
use chedra_core::linkage::*;
use chedra_core::Error;
use proptest::prelude::*;

use common::random;

fn e1() -> Sublinkage {
    Sublinkage::new(SQRT_2, SQRT_2, 2.0, SQRT_2, 0.0).unwrap()
}

#[test]
fn e1_linkage_range_ends_at_origin_and_triangle() {
    let l1 = extend_sublinkage(&e1(), FlexCase::Scaling1a, FreeData::st(2.0, 2.0), 0.4).unwrap();
    let lk = LinkageSpec::new(e1(), vec![l1], BranchSign::Plus, 2.0).unwrap();
    let iv = flexion_range(&lk)[0];
    assert_eq!((iv.lo, iv.lo_limit), (0.0, LimitKind::Origin));
    assert!((iv.hi - 8f64.sqrt()).abs() < 1e-9);
    assert_eq!(classify(&lk).unwrap().label, CaseLabel::Flexible(FlexCase::Scaling1a));
}

#[test]
fn case3_columns_over_proportional_data_are_pnet_columns() {
    // s_j² − t_j² = s₀² − t₀² makes every case-3 column satisfy the
    // formulas of the P-net case admitted by the branch.
    for (l0, a, want) in [
        (Sublinkage::new(2.0, 1.5, 1.2, 0.8, 0.0).unwrap(), 2.0, FlexCase::Scaling1a),
        (Sublinkage::new(3.0, 1.0, 0.8, 0.8, 0.0).unwrap(), 2.5, FlexCase::Collineation2b),
    ] {
        let c = extend_sublinkage(&l0, FlexCase::Perspectivity3, FreeData::s(2.9), 0.6).unwrap();
        let lk = LinkageSpec::new(l0, vec![c], BranchSign::Plus, a).unwrap();
        let got = classify(&lk).unwrap();
        assert_eq!(got.label, CaseLabel::Flexible(want));
        assert!(got.also_case3);
    }
}

#[test]
fn bad_inputs() {
    assert!(matches!(Sublinkage::new(1.0, 1.0, 1.0, 0.0, 0.0), Err(Error::Invariant(_))));
    assert!(matches!(Sublinkage::new(-1.0, 1.0, 1.0, 1.0, 0.0), Err(Error::Invariant(_))));
    let l1 = Sublinkage::new(2.0, 2.0, 2.0, 1.0, 0.0).unwrap();
    assert!(matches!(LinkageSpec::new(e1(), vec![l1], BranchSign::Plus, 2.0), Err(Error::NonSimpleFan { index: 1 })));
    assert!(matches!(tip_b(5.0, &e1(), BranchSign::Plus), Err(Error::DiscriminantNegative { .. })));
    let same = Sublinkage::new(2.0, 2.0, 2.0, -1.0, 0.0).unwrap();
    assert!(matches!(
        extend_sublinkage(&same, FlexCase::Collineation2a, FreeData::st(1.5, 1.0), 0.3),
        Err(Error::SingularDenominator(_))
    ));
    assert!("4c".parse::<FlexCase>().is_err());
    assert_eq!("Collineation_2b".parse::<FlexCase>().unwrap(), FlexCase::Collineation2b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_sublinkages_classify_as_their_case(seed in any::<u64>(), case in 0usize..5, n in 1usize..4) {
        let case = FlexCase::ALL[case];
        let lk = random::linkage(&mut random::rng(seed), case, n);
        let c = classify(&lk).unwrap();
        prop_assert_eq!(c.label, CaseLabel::Flexible(case));
        prop_assert!(c.coefficient_residual < 1e-9);
        prop_assert!(c.is_consistent(1e-9));
    }

    #[test]
    fn both_roots_satisfy_the_tip_equation(s in 0.5f64..3.0, t in 0.5f64..3.0, u in 0.3f64..3.0, v in -3.0f64..3.0, k in 0.05f64..0.95) {
        prop_assume!(v.abs() > 0.1);
        let l0 = Sublinkage::new(s, t, u, v, 0.0).unwrap();
        let a = (s - t).abs() + k * (s + t - (s - t).abs());
        let p = profile_point(a, s, t).unwrap();
        if let Ok((bp, bm)) = tip_pair(a, &l0) {
            for b in [bp, bm] {
                let gap = (v * p.d).hypot(v * p.z - b) - u;
                prop_assert!(gap.abs() < 1e-9 * (1.0 + u), "gap {}", gap);
            }
            prop_assert!(bp >= bm);
        }
    }

    #[test]
    fn profile_points_invert(a in 0.5f64..3.0, s in 0.5f64..3.0, t in 0.5f64..3.0) {
        if let Ok(p) = profile_point(a, s, t) {
            let (s2, t2) = p.lengths(a);
            prop_assert!((s2 - s).abs() < 1e-9 && (t2 - t).abs() < 1e-9);
        }
    }

    #[test]
    fn single_perturbations_are_rejected(seed in any::<u64>(), case in 0usize..5, which in 0usize..3, sign in prop::bool::ANY) {
        let lk = random::linkage(&mut random::rng(seed), FlexCase::ALL[case], 1);
        let f = if sign { 1.001 } else { 0.999 };
        let l = lk.others[0];
        let bad = match which {
            0 => Sublinkage { u: l.u * f, ..l },
            1 => Sublinkage { v: l.v * f, ..l },
            _ => Sublinkage { t: l.t * f, ..l },
        };
        if let Ok(spec) = LinkageSpec::new(lk.initial, vec![bad], lk.branch, lk.a_ref) {
            let c = classify(&spec).unwrap();
            prop_assert_eq!(c.label, CaseLabel::NotFlexible);
            prop_assert!(c.residual > 1e-6);
            prop_assert_eq!(c.offending, vec![1]);
        }
    }
}
