//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rscd_core::classical::{classical_hr_at, radicand_identity_check, sample_interior, sample_phase_point};
use rscd_core::coeffs::{build_delta_table, v_nu, v_set};
use rscd_core::eigen::{build_basis, dual_eigen_check, gram_deviation, n0_product, psi_0, spectral_crosscheck};
use rscd_core::macdonald::elementary_e;
use rscd_core::model::{
    build_params, classify_coupling, enumerate_lattice, is_excluded_g, lattice_cardinality,
    rho_standard, Coupling, ModelParams,
};
use rscd_core::operators::{adjoint_check, build_s, commutator_norm};
use rscd_core::rootsys::{index_sets, orbit};

/// The six reference configurations (n, p, M, g).
const CONFIGS: [(usize, usize, i64, f64); 6] = [
    (3, 1, 2, 0.5),
    (3, 2, 1, 1.5),
    (3, 2, -1, 1.6),
    (4, 1, -2, 2.5),
    (4, 3, 2, 5.0),
    (5, 2, 1, 2.0),
];

fn params_of(c: (usize, usize, i64, f64)) -> ModelParams {
    build_params(c.0, c.1, c.2, c.3).unwrap()
}

struct Line(&'static str, &'static str);

impl Line {
    fn pass(self, detail: String) {
        println!("criterion {:>2} PASS ({}): {detail}", self.0, self.1);
    }
}

#[test]
fn criterion_01_dimension_formula() {
    let line = Line("1", "dimension formula");
    let cases = [
        (2usize, 1usize, 3i64, 0.2f64, 4u128),
        (3, 1, 2, 0.5, 6),
        (3, 1, 5, 0.4, 21),
        (4, 1, 2, 0.4, 10),
        (5, 2, 1, 2.0, 5),
    ];
    let start = std::time::Instant::now();
    for (n, p, m, g, expect) in cases {
        let params = build_params(n, p, m, g).unwrap();
        let lat = enumerate_lattice(&params);
        assert_eq!(lat.dim() as u128, expect, "n={n} |M|={}", m.unsigned_abs());
        assert_eq!(lattice_cardinality(n, params.abs_m()), expect);
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 0.1, "took {dt:?}");
    line.pass(format!("5 (n,|M|) cases exact in {dt:?}"));
}

#[test]
fn criterion_02_commutativity() {
    let line = Line("2", "commutators");
    let start = std::time::Instant::now();
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let ops: Vec<_> = (1..params.n)
            .map(|r| build_s(&params, &lat, r).unwrap())
            .collect();
        for a in 0..ops.len() {
            for b in a + 1..ops.len() {
                let rel = commutator_norm(&ops[a], &ops[b]).unwrap()
                    / (ops[a].mat.norm() * ops[b].mat.norm());
                assert!(rel <= 1e-9, "config {c:?} pair ({},{}): {rel}", a + 1, b + 1);
                worst = worst.max(rel);
            }
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0);
    line.pass(format!("max relative Frobenius norm {worst:.3e} in {dt:?}"));
}

#[test]
fn criterion_03_adjointness() {
    let line = Line("3", "adjointness");
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        for r in 1..params.n {
            let dev = adjoint_check(&params, &lat, r).unwrap();
            assert!(dev <= 1e-10, "config {c:?} r={r}: {dev}");
            worst = worst.max(dev);
        }
    }
    line.pass(format!("max entry deviation {worst:.3e}"));
}

#[test]
fn criterion_04_normalization_identity() {
    let line = Line("4", "normalization sum");
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let delta = build_delta_table(&params, &lat).unwrap();
        let sum: f64 = delta.values.iter().sum();
        let prod = n0_product(&params).unwrap();
        let rel = (sum - prod).abs() / prod.abs();
        assert!(rel <= 1e-9, "config {c:?}: {rel}");
        worst = worst.max(rel);
        if params.abs_m() == 1 {
            assert!((sum - params.n as f64).abs() <= 1e-9 * params.n as f64);
        }
    }
    line.pass(format!("max relative deviation {worst:.3e}"));
}

#[test]
fn criterion_05_ground_state() {
    let line = Line("5", "ground state");
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let delta = build_delta_table(&params, &lat).unwrap();
        let psi0: Vec<Complex64> = psi_0(&params, &delta)
            .unwrap()
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        let rho = rho_standard(params.n, params.g_eff());
        for r in 1..params.n {
            let op = build_s(&params, &lat, r).unwrap();
            let ev = elementary_e(params.n, params.alpha, r, &rho).unwrap();
            for (a, b) in op.apply(&psi0).unwrap().iter().zip(&psi0) {
                let res = (a - ev * b).norm();
                assert!(res <= 1e-9, "config {c:?} r={r}: {res}");
                worst = worst.max(res);
            }
        }
    }
    line.pass(format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_06_orbit_sum_identity() {
    let line = Line("6", "orbit sum identity");
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let rho = rho_standard(params.n, params.g_eff());
        for _ in 0..50 {
            let x = sample_interior(&params, &mut rng);
            for r in 1..params.n {
                let mut total = 0.0f64;
                for nu in orbit(params.n, r).unwrap() {
                    total += v_nu(params.g_eff(), params.alpha, &nu, &x).unwrap();
                }
                let expect = elementary_e(params.n, params.alpha, r, &rho).unwrap();
                let dev = (Complex64::new(total, 0.0) - expect).norm();
                assert!(dev <= 1e-10, "config {c:?} r={r}: {dev}");
                worst = worst.max(dev);
            }
        }
    }
    line.pass(format!("max deviation {worst:.3e} over 50 points per config"));
}

#[test]
fn criterion_07_orthonormality() {
    let line = Line("7", "orthonormality");
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let basis = build_basis(&params, &lat).unwrap();
        let dev = gram_deviation(&basis);
        assert!(dev <= 1e-8, "config {c:?}: {dev}");
        worst = worst.max(dev);
    }
    line.pass(format!("max Gram deviation {worst:.3e}"));
}

#[test]
fn criterion_08_self_duality() {
    let line = Line("8", "self-duality");
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let basis = build_basis(&params, &lat).unwrap();
        for i in 0..lat.dim() {
            for j in 0..lat.dim() {
                let dev = (basis.psi[i][j] - basis.psi[j][i]).norm();
                assert!(dev <= 1e-9, "config {c:?} ({i},{j}): {dev}");
                worst = worst.max(dev);
            }
        }
    }
    line.pass(format!("max transpose deviation {worst:.3e}"));
}

#[test]
fn criterion_09_eigen_equations() {
    let line = Line("9", "forward and dual equations");
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let basis = build_basis(&params, &lat).unwrap();
        for r in 1..params.n {
            let op = build_s(&params, &lat, r).unwrap();
            for (li, psi) in basis.psi.iter().enumerate() {
                let ev = basis.eigvals[li][r - 1];
                for (a, b) in op.apply(psi).unwrap().iter().zip(psi) {
                    let res = (a - ev * b).norm();
                    assert!(res <= 1e-8, "config {c:?} r={r} lam {li}: {res}");
                    worst = worst.max(res);
                }
            }
        }
        for _ in 0..100 {
            let li = rng.gen_range(0..lat.dim());
            let mi = rng.gen_range(0..lat.dim());
            let r = rng.gen_range(1..params.n);
            let res = dual_eigen_check(&params, &lat, &basis, r, li, mi).unwrap();
            assert!(res <= 1e-8, "config {c:?} r={r} ({li},{mi}): {res}");
            worst = worst.max(res);
        }
    }
    line.pass(format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_10_spectral_oracle() {
    let line = Line("10", "dense eigensolver oracle");
    let mut worst_ev = 0.0f64;
    let mut worst_overlap = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let basis = build_basis(&params, &lat).unwrap();
        let report = spectral_crosscheck(&params, &lat, &basis, 42).unwrap();
        assert!(report.max_eigenvalue_dev <= 1e-8, "config {c:?}");
        assert!((report.min_overlap - 1.0).abs() <= 1e-7, "config {c:?}");
        worst_ev = worst_ev.max(report.max_eigenvalue_dev);
        worst_overlap = worst_overlap.max((report.min_overlap - 1.0).abs());
    }
    line.pass(format!(
        "max eigenvalue dev {worst_ev:.3e}, max overlap defect {worst_overlap:.3e}"
    ));
}

#[test]
fn criterion_11_vanishing_pattern() {
    let line = Line("11", "vanishing pattern");
    let mut total_boundary = 0usize;
    let mut total_interior = 0usize;
    let mut configs: Vec<(usize, usize, i64, f64)> = CONFIGS.to_vec();
    // one configuration with g inside the excluded set
    configs.push((3, 1, 2, 1.0));
    let excluded = build_params(3, 1, 2, 1.0).unwrap();
    assert!(is_excluded_g(&excluded, 1e-9), "g = 1.0 should be excluded at (3,1,2)");
    for c in configs {
        let params = params_of(c);
        let lat = enumerate_lattice(&params);
        let (b, i) = rscd::vanishing_pattern(&params, &lat).unwrap();
        total_boundary += b;
        total_interior += i;
    }
    line.pass(format!(
        "{total_boundary} boundary pairs exactly zero, {total_interior} interior pairs nonzero (incl. excluded-g config)"
    ));
}

#[test]
fn criterion_12_classical_identities() {
    let line = Line("12", "classical identities");
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut rad_worst = 0.0f64;
    let mut sign_min = f64::INFINITY;
    let mut even_worst = 0.0f64;
    for c in CONFIGS {
        let params = params_of(c);
        let n = params.n;
        let expected = if (params.p - 1) % 2 == 0 { 1.0 } else { -1.0 } * params.sgn_m();
        for _ in 0..100 {
            let x = sample_interior(&params, &mut rng);
            for r in 1..n {
                for j_set in index_sets(n, r) {
                    let res =
                        radicand_identity_check(params.g, params.alpha, &j_set, &x).unwrap();
                    assert!(res <= 1e-12, "config {c:?}: {res}");
                    rad_worst = rad_worst.max(res);
                }
            }
        }
        for _ in 0..200 {
            let x = sample_interior(&params, &mut rng);
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            for j in 0..n {
                let a = expected * v_set(params.g, params.alpha, &[j], &x).unwrap();
                let b = expected * v_set(params.g, params.alpha, &[j], &neg).unwrap();
                assert!(a >= -1e-12 && b >= -1e-12, "config {c:?} j={j}");
                sign_min = sign_min.min(a.min(b));
            }
        }
        for _ in 0..50 {
            let point = sample_phase_point(&params, &mut rng);
            for r in 1..n {
                let plus = classical_hr_at(&params, params.g, r, &point).unwrap();
                let minus = classical_hr_at(&params, -params.g, r, &point).unwrap();
                let dev = (plus - minus).abs();
                assert!(dev <= 1e-11, "config {c:?} r={r}: {dev}");
                even_worst = even_worst.max(dev);
            }
        }
    }
    line.pass(format!(
        "radicand max {rad_worst:.3e}, sign min {sign_min:.3e}, evenness max {even_worst:.3e}"
    ));
}

#[test]
fn criterion_13_sign_example() {
    let line = Line("13", "sign example");
    let params = build_params(4, 1, -2, 2.5).unwrap();
    // nu = omega_2 has scaled coordinates (2,2,-2,-2)/4
    let s_omega2 = rscd::orbit_sign(&params, &[2, 2, -2, -2]).unwrap();
    // nu = omega_1 - omega_2 + omega_3 has scaled coordinates (2,-2,2,-2)/4
    let s_mixed = rscd::orbit_sign(&params, &[2, -2, 2, -2]).unwrap();
    assert_eq!(s_omega2, -1);
    assert_eq!(s_mixed, 1);
    line.pass("s(omega_2) = -1 and s(omega_1 - omega_2 + omega_3) = +1 at (4,1,-2)".into());
}

#[test]
fn criterion_14_coupling_classification() {
    let line = Line("14", "coupling classification");
    // solid (type i) and dashed (type ii) gamma segments per particle number;
    // everything else on (0,1) is within an excluded or punctured remainder
    let solid: [&[(f64, f64)]; 6] = [
        &[(0.0, 0.5), (0.5, 1.0)],
        &[(0.0, 1.0 / 3.0), (1.0 / 3.0, 0.5), (0.5, 2.0 / 3.0), (2.0 / 3.0, 1.0)],
        &[(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)],
        &[(0.0, 0.25), (1.0 / 3.0, 2.0 / 3.0), (0.75, 1.0)],
        &[(0.0, 0.2), (0.8, 1.0)],
        &[
            (0.0, 1.0 / 6.0),
            (0.25, 1.0 / 3.0),
            (0.4, 0.6),
            (2.0 / 3.0, 0.75),
            (5.0 / 6.0, 1.0),
        ],
    ];
    let mut tested = 0usize;
    for n in 2..=7usize {
        let segs = solid[n - 2];
        // a prime denominator > 7! guarantees no sample hits a rational with
        // denominator <= 7, so none land on excluded points or punctures
        let den = 1201.0;
        for k in 1..1201usize {
            let gamma = k as f64 / den;
            let got = classify_coupling(n, gamma).unwrap();
            let expect_solid = segs.iter().any(|&(a, b)| gamma > a && gamma < b);
            match got {
                Coupling::TypeI { .. } => assert!(
                    expect_solid,
                    "n={n} gamma={gamma}: classified type i outside solid segments"
                ),
                Coupling::TypeII => assert!(
                    !expect_solid,
                    "n={n} gamma={gamma}: classified type ii inside a solid segment"
                ),
                Coupling::Excluded => panic!("n={n} gamma={gamma}: unexpectedly excluded"),
            }
            tested += 1;
        }
        // the marked points themselves are excluded
        for b in 1..=n {
            for a in 1..b {
                if gcd(a, b) == 1 {
                    let got = classify_coupling(n, a as f64 / b as f64).unwrap();
                    assert!(matches!(got, Coupling::Excluded), "n={n} gamma={a}/{b}");
                    tested += 1;
                }
            }
        }
    }
    line.pass(format!("{tested} dense samples match the reference pattern for n = 2..7"));
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
