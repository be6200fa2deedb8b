//! Classical compactified Hamiltonians: the full n-body Hamiltonian, the
//! reduced root-system form, the radicand identity connecting them and
//! rejection sampling of interior phase points.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::coeffs::{sn, v_nu, v_set, SIN_EPS};
use crate::error::{Error, Result};
use crate::model::{barycenter, in_simplex, vertices, ModelParams, SimplexLocation};
use crate::rootsys::{orbit, Weight};

/// A point of phase space in the center-of-mass frame.
#[derive(Debug, Clone)]
pub struct PhasePoint {
    pub x: Vec<f64>,
    pub momenta: Vec<f64>,
}

/// The full Hamiltonian
/// `sum_j cos(p_j) sqrt(prod_{k != j} (1 - sin^2(alpha g / 2) / sin^2((alpha/2)(x_j - x_k))))`.
pub fn classical_h(g: f64, alpha: f64, point: &PhasePoint) -> Result<f64> {
    let n = point.x.len();
    if point.momenta.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: point.momenta.len(),
        });
    }
    let s2g = {
        let s = libm::sin(0.5 * alpha * g);
        s * s
    };
    let mut total = 0.0;
    for j in 0..n {
        let mut rad = 1.0;
        for k in 0..n {
            if k == j {
                continue;
            }
            let s = sn(alpha, point.x[j] - point.x[k]);
            if s.abs() < SIN_EPS {
                return Err(Error::SingularValue(format!(
                    "coincident positions x_{} and x_{}",
                    j + 1,
                    k + 1
                )));
            }
            rad *= 1.0 - s2g / (s * s);
        }
        if rad < 0.0 {
            if rad < -1e-12 {
                return Err(Error::OutsideConfiguration(format!(
                    "negative radicand {rad} at particle {}",
                    j + 1
                )));
            }
            rad = 0.0;
        }
        total += libm::cos(point.momenta[j]) * libm::sqrt(rad);
    }
    Ok(total)
}

/// Absolute difference between the elementary product
/// `prod_{j in J, k notin J} (1 - sin^2(alpha g / 2)/sin^2((alpha/2)(x_j - x_k)))`
/// and the factorised form `V_J(g; x) V_J(g; -x)`.
pub fn radicand_identity_check(g: f64, alpha: f64, j_set: &[usize], x: &[f64]) -> Result<f64> {
    let n = x.len();
    let s2g = {
        let s = libm::sin(0.5 * alpha * g);
        s * s
    };
    let mut lhs = 1.0;
    for &j in j_set {
        for k in 0..n {
            if j_set.contains(&k) {
                continue;
            }
            let s = sn(alpha, x[j] - x[k]);
            if s.abs() < SIN_EPS {
                return Err(Error::SingularValue(format!(
                    "coincident positions x_{} and x_{}",
                    j + 1,
                    k + 1
                )));
            }
            lhs *= 1.0 - s2g / (s * s);
        }
    }
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    let rhs = v_set(g, alpha, j_set, x)? * v_set(g, alpha, j_set, &neg)?;
    Ok((lhs - rhs).abs())
}

/// Sign of `V_nu(g_signed; .)` on the open simplex, read off at the
/// barycenter with perturbed retries.
pub fn sign_s_at(params: &ModelParams, g_signed: f64, nu: &Weight) -> Result<i8> {
    let bc = barycenter(params);
    let verts = vertices(params);
    let mut candidates = Vec::with_capacity(1 + verts.len());
    candidates.push(bc.clone());
    for v in &verts {
        candidates.push(
            bc.iter()
                .zip(v)
                .map(|(b, vi)| 0.85 * b + 0.15 * vi)
                .collect(),
        );
    }
    for x in &candidates {
        if let Ok(v) = v_nu(g_signed, params.alpha, nu, x) {
            if v.abs() >= 1e-12 {
                return Ok(if v > 0.0 { 1 } else { -1 });
            }
        }
    }
    Err(Error::Diagnostic(format!(
        "sign of V_nu indeterminate at all reference points, nu = {:?}",
        nu.scaled()
    )))
}

/// The reduced Hamiltonian at an explicit (possibly negated) coupling:
/// `sum_{nu in S_n(omega_r)} s(g; nu) cos<nu, p> sqrt(V_nu(g; x) V_nu(g; -x))`.
pub fn classical_hr_at(
    params: &ModelParams,
    g_signed: f64,
    r: usize,
    point: &PhasePoint,
) -> Result<f64> {
    match in_simplex(params, &point.x)? {
        SimplexLocation::Interior => {}
        loc => {
            return Err(Error::OutsideConfiguration(format!(
                "x must lie strictly inside the simplex, found {loc:?}"
            )))
        }
    }
    let neg: Vec<f64> = point.x.iter().map(|v| -v).collect();
    let mut total = 0.0;
    for nu in orbit(params.n, r)? {
        let sign = sign_s_at(params, g_signed, &nu)? as f64;
        let mut rad =
            v_nu(g_signed, params.alpha, &nu, &point.x)? * v_nu(g_signed, params.alpha, &nu, &neg)?;
        if rad < 0.0 {
            if rad < -1e-10 {
                return Err(Error::Diagnostic(format!(
                    "negative radicand {rad} for nu = {:?}",
                    nu.scaled()
                )));
            }
            rad = 0.0;
        }
        total += sign * libm::cos(nu.dot_f64(&point.momenta)) * libm::sqrt(rad);
    }
    Ok(total)
}

/// [`classical_hr_at`] at the model coupling.
pub fn classical_hr(params: &ModelParams, r: usize, point: &PhasePoint) -> Result<f64> {
    classical_hr_at(params, params.g, r, point)
}

/// Draws a position strictly inside the simplex by rejection from the
/// bounding box of its vertices.
pub fn sample_interior<R: Rng>(params: &ModelParams, rng: &mut R) -> Vec<f64> {
    let verts = vertices(params);
    let n = params.n;
    let mut lo = alloc::vec![f64::INFINITY; n];
    let mut hi = alloc::vec![f64::NEG_INFINITY; n];
    for v in &verts {
        for i in 0..n {
            lo[i] = lo[i].min(v[i]);
            hi[i] = hi[i].max(v[i]);
        }
    }
    loop {
        let mut x: Vec<f64> = (0..n).map(|i| rng.gen_range(lo[i]..=hi[i])).collect();
        // project onto the center-of-mass hyperplane the simplex lives in
        let mean: f64 = x.iter().sum::<f64>() / n as f64;
        for v in &mut x {
            *v -= mean;
        }
        if matches!(in_simplex(params, &x), Ok(SimplexLocation::Interior)) {
            return x;
        }
    }
}

/// An interior position paired with mean-zero momenta uniform in `(-pi, pi)`.
pub fn sample_phase_point<R: Rng>(params: &ModelParams, rng: &mut R) -> PhasePoint {
    let x = sample_interior(params, rng);
    let mut momenta: Vec<f64> = (0..params.n)
        .map(|_| rng.gen_range(-core::f64::consts::PI..core::f64::consts::PI))
        .collect();
    let mean: f64 = momenta.iter().sum::<f64>() / params.n as f64;
    for v in &mut momenta {
        *v -= mean;
    }
    PhasePoint { x, momenta }
}
