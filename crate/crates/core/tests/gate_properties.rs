use catgate::gate::{
    cat_diagnostics, exact_output, perfect_cat, semiclassical_momenta, stationary_points, PhasePoint,
};
use catgate::numerics::GridSpec;
use catgate::states::{fidelity, make_fock, FockSpec};
use catgate::GateParams;
use proptest::prelude::*;

#[test]
fn fidelity_grows_along_constant_displacement_ray() {
    // p⁺ = √10 fixed, γ·y_m increasing
    let grid = GridSpec::default_coordinate();
    let input = make_fock(FockSpec::new(0), grid).unwrap();
    let mut last = 0.0;
    for gamma in [0.05, 0.1, 0.2, 0.3, 0.4, 0.5] {
        let p = GateParams::new(gamma, 30.0 * gamma).unwrap();
        let f = fidelity(
            &exact_output(&input, &p).unwrap(),
            &perfect_cat(FockSpec::new(0), &p, grid).unwrap(),
        )
        .unwrap();
        assert!(f >= last, "γ={gamma}: {f} < {last}");
        last = f;
    }
    assert!(last > 0.997);
}

proptest! {
    #[test]
    fn semiclassical_gap_is_twice_p_plus(gamma in 0.01f64..2.0, y_m in 0.01f64..30.0, p0 in -5.0f64..5.0) {
        let params = GateParams::new(gamma, y_m).unwrap();
        let [a, b] = semiclassical_momenta(PhasePoint::new(0.0, p0), &params).unwrap().unwrap();
        let d = cat_diagnostics(&params).unwrap();
        prop_assert!((a.p - b.p - 2.0 * d.p_plus).abs() <= 1e-12 * d.p_plus.max(1.0));
        prop_assert!(((a.p + b.p) / 2.0 - p0).abs() <= 1e-12 * d.p_plus.max(1.0));
    }

    #[test]
    fn stationary_and_semiclassical_separations_agree(gamma in 0.01f64..2.0, y_m in -10.0f64..30.0, q in -10.0f64..10.0) {
        let params = GateParams::new(gamma, y_m).unwrap();
        let st = stationary_points(q, &params);
        let sc = semiclassical_momenta(PhasePoint::new(q, 0.0), &params).unwrap();
        prop_assert_eq!(st.is_some(), sc.is_some());
        if let (Some([s1, s2]), Some([a, b])) = (st, sc) {
            prop_assert!(((s1 - s2) - (a.p - b.p)).abs() <= 1e-12 * (s1 - s2).abs().max(1.0));
        }
    }

    #[test]
    fn diagnostics_invariants(gamma in 0.01f64..2.0, y_m in 0.01f64..30.0) {
        let d = cat_diagnostics(&GateParams::new(gamma, y_m).unwrap()).unwrap();
        prop_assert!((d.p_plus - (y_m / (3.0 * gamma)).sqrt()).abs() < 1e-12 * d.p_plus);
        prop_assert!((d.alpha.norm() - d.p_plus / 2f64.sqrt()).abs() < 1e-12 * d.p_plus);
        prop_assert!(d.lambda_shear > 0.0);
        prop_assert!((d.lambda_shear - 1.0 / (4.0 * (3.0 * gamma * y_m).sqrt())).abs() < 1e-12 * d.lambda_shear);
        prop_assert!((0.0..std::f64::consts::PI).contains(&d.parity_angle));
    }
}
