//! Property tests of the algebraic invariants over randomized inputs.

use proptest::prelude::*;

use rscd_core::coeffs::{sn, trig_pochhammer, v_nu};
use rscd_core::model::{build_params, enumerate_lattice, shift_index};
use rscd_core::rootsys::{dominance_leq, orbit, RootBase, Weight};

fn small_config() -> impl Strategy<Value = (usize, usize, i64, f64)> {
    prop_oneof![
        (0.05f64..0.45).prop_map(|t| (3usize, 1usize, 2i64, t)),
        (0.05f64..0.45).prop_map(|t| (3usize, 1usize, -2i64, 2.1 + t)),
        (0.05f64..0.45).prop_map(|t| (4usize, 1usize, 2i64, t)),
        (0.05f64..0.45).prop_map(|t| (5usize, 2usize, 1i64, 1.8 + 0.5 * t)),
    ]
}

proptest! {
    #[test]
    fn pochhammer_shift_identity(z in -5.0f64..5.0, m in -4i64..5, alpha in 0.3f64..2.5) {
        let denom_ok = (m.min(0)..=m.max(0))
            .all(|k| sn(alpha, z + k as f64).abs() > 1e-3);
        prop_assume!(denom_ok);
        let a = trig_pochhammer(z, m + 1, alpha).unwrap();
        let b = trig_pochhammer(z, m, alpha).unwrap();
        let expect = sn(alpha, z + m as f64);
        prop_assert!((a - b * expect).abs() < 1e-10 * (1.0 + a.abs() + b.abs()));
    }

    #[test]
    fn dominance_is_a_partial_order(cfg in small_config()) {
        let (n, p, m, g) = cfg;
        let params = build_params(n, p, m, g).unwrap();
        let base = RootBase::new(n, p).unwrap();
        let lat = enumerate_lattice(&params);
        let ws: Vec<Weight> = lat.points.iter().map(|mu| mu.weight(&base)).collect();
        for a in &ws {
            prop_assert!(dominance_leq(a, a, &base));
        }
        for a in &ws {
            for b in &ws {
                if dominance_leq(a, b, &base) && dominance_leq(b, a, &base) {
                    prop_assert_eq!(a.scaled(), b.scaled());
                }
                for c in &ws {
                    if dominance_leq(a, b, &base) && dominance_leq(b, c, &base) {
                        prop_assert!(dominance_leq(a, c, &base));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_vectors_sum_consistently(cfg in small_config()) {
        let (n, p, m, g) = cfg;
        let params = build_params(n, p, m, g).unwrap();
        let lat = enumerate_lattice(&params);
        // shifting by nu and then by -nu returns to the start whenever both
        // steps stay on the lattice
        for mu in &lat.points {
            for r in 1..n {
                for nu in orbit(n, r).unwrap() {
                    if let Some(next) = shift_index(&params, mu, &nu) {
                        let back = shift_index(&params, &next, &nu.neg()).unwrap();
                        prop_assert_eq!(&back.m, &mu.m);
                    }
                }
            }
        }
    }

    #[test]
    fn hopping_coefficient_reflection(cfg in small_config(), seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let (n, p, m, g) = cfg;
        let params = build_params(n, p, m, g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = rscd_core::classical::sample_interior(&params, &mut rng);
        let eps: f64 = rng.gen_range(0.1..0.9);
        let y: Vec<f64> = x.iter().map(|v| eps * v).collect();
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        for r in 1..n {
            for nu in orbit(n, r).unwrap() {
                // V_{-nu}(g; x) = V_nu(g; -x) and V_nu(-g; x) = V_{-nu}(g; x) at -x
                let a = v_nu(params.g, params.alpha, &nu.neg(), &y);
                let b = v_nu(params.g, params.alpha, &nu, &neg);
                if let (Ok(a), Ok(b)) = (a, b) {
                    prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
                }
            }
        }
    }
}
