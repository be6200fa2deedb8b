//! Report plumbing: determinism, serialization shape and error mapping.

use rscd::{cmd_classical, cmd_eigenbasis, cmd_spectrum, cmd_validate, cmd_verify, Tolerances};

#[test]
fn reports_are_deterministic_for_fixed_seed() {
    let a = serde_json::to_string(&cmd_verify(3, 1, 2, 0.5, 42, &Tolerances::default()).unwrap())
        .unwrap();
    let b = serde_json::to_string(&cmd_verify(3, 1, 2, 0.5, 42, &Tolerances::default()).unwrap())
        .unwrap();
    assert_eq!(a, b);
    let a = serde_json::to_string(&cmd_classical(3, 2, 1, 1.5, 100, 7).unwrap()).unwrap();
    let b = serde_json::to_string(&cmd_classical(3, 2, 1, 1.5, 100, 7).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn validate_report_fields() {
    let r = cmd_validate(3, 2, 1, 1.5).unwrap();
    assert!(r.valid);
    assert_eq!(r.params.q, 2);
    assert_eq!(r.dimension, 3);
    assert!((r.params.alpha - 8.0 * std::f64::consts::PI / 11.0).abs() < 1e-12);
    assert!(cmd_validate(4, 2, 1, 1.0).is_err());
    assert!(cmd_validate(3, 1, 0, 0.5).is_err());
}

#[test]
fn spectrum_csv_shape() {
    let r = cmd_spectrum(3, 1, 2, 0.5).unwrap();
    let csv = rscd::spectrum_csv(&r);
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines.len(), 1 + 6);
    assert_eq!(lines[0], "lambda_index,m_1,m_2,E_1,E_2");
}

#[test]
fn eigen_report_diagnostics_within_tolerance() {
    let r = cmd_eigenbasis(3, 2, -1, 1.6, 42).unwrap();
    assert_eq!(r.dimension, 3);
    assert!(r.gram_max_dev < 1e-8);
    assert!(r.self_duality_max_dev < 1e-9);
    assert!(r.forward_residual_max < 1e-8);
    assert!((r.n0_sum - r.n0_product).abs() < 1e-9 * r.n0_product);
}
