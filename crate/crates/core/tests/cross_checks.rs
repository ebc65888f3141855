use num_complex::Complex64;

use reclab::counterexample::CounterexampleInstance;
use reclab::recurrence::return_times;
use reclab::seqspace::SeqVector;
use reclab::zeta_orbit::{eta_factor, zeta_em_eval, zeta_star_eval, StripGrid};
use reclab::Error;

#[test]
fn evaluators_agree_far_up_the_strip() {
    for (re, im) in [(0.6, 250.0), (0.75, 1000.0), (0.9, -2500.0), (0.7, 4500.0)] {
        let s = Complex64::new(re, im);
        let star = zeta_star_eval(s, 1e-6).unwrap();
        let zeta = zeta_em_eval(s, 1e-6).unwrap();
        let residual = (star.value - eta_factor(s) * zeta.value).norm();
        assert!(residual <= star.error_estimate + 3.0 * zeta.error_estimate, "s = {s}: {residual}");
    }
}

#[test]
fn accuracy_error_names_achievable_tolerance() {
    match zeta_star_eval(Complex64::new(0.7, 3000.0), 1e-12) {
        Err(Error::Accuracy { requested, achievable }) => {
            assert_eq!(requested, 1e-12);
            assert!(achievable > requested && achievable < 1e-6);
        }
        other => panic!("expected accuracy error, got {other:?}"),
    }
}

#[test]
fn counterexample_orbit_never_returns() {
    let inst = CounterexampleInstance::new(7).unwrap();
    for eps in [0.1, 0.4, 0.5] {
        let r = return_times(|n| inst.orbit_distance(n).unwrap(), eps, 6).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(r.max_gap, 6);
    }
}

#[test]
fn seqvector_json_round_trip() {
    let inst = CounterexampleInstance::new(4).unwrap();
    let text = serde_json::to_string(inst.y()).unwrap();
    let back: SeqVector = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, inst.y());
    assert!(serde_json::from_str::<SeqVector>(r#"{"k_max":2,"blocks":[[[1,0]],[[0,0]]]}"#).is_err());
}

#[test]
fn default_grid_matches_documented_shape() {
    let g = StripGrid::default_grid(1e-10).unwrap();
    assert_eq!(g.points().len(), 121);
    assert!(g.points().iter().all(|s| s.re > 0.5 && s.re < 1.0));
    assert_eq!(g.values().len(), 121);
}
