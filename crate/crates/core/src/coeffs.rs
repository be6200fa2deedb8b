//! Scalar coefficient functions: trigonometric Pochhammer symbols, the
//! hopping coefficients V and W, sign factors and the lattice weight Delta.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{barycenter, lattice_point, rho_p, shift_index, vertices, DominantIndex, Lattice, ModelParams};
use crate::rootsys::{positive_roots_p, Weight};

/// Below this magnitude a sine in a denominator is declared a pole.
pub const SIN_EPS: f64 = 1e-14;

/// `sin((alpha/2) z)`.
#[inline]
pub fn sn(alpha: f64, z: f64) -> f64 {
    libm::sin(0.5 * alpha * z)
}

/// Trigonometric Pochhammer symbol `(z : sin_alpha)_m`.
///
/// `m = 0` gives 1; `m > 0` multiplies `sin (alpha/2)(z + k)` for
/// `k = 0..m-1`; `m < 0` divides by `sin (alpha/2)(z + k)` for `k = m..-1`.
pub fn trig_pochhammer(z: f64, m: i64, alpha: f64) -> Result<f64> {
    if m >= 0 {
        let mut out = 1.0;
        for k in 0..m {
            out *= sn(alpha, z + k as f64);
        }
        Ok(out)
    } else {
        let mut den = 1.0;
        for k in m..0 {
            let s = sn(alpha, z + k as f64);
            if s.abs() < SIN_EPS {
                return Err(Error::SingularValue(format!(
                    "pochhammer denominator sin((alpha/2)({z} + {k})) vanishes"
                )));
            }
            den *= s;
        }
        Ok(1.0 / den)
    }
}

/// The hopping coefficient `V_nu(g; x)`: product over roots `a` with
/// `<a, nu> = 1` of `sin (alpha/2)(<a,x> + g) / sin (alpha/2) <a,x>`.
pub fn v_nu(g_eff: f64, alpha: f64, nu: &Weight, x: &[f64]) -> Result<f64> {
    let n = x.len();
    let mut out = 1.0;
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            // <e_j - e_k, nu> = 1 in scaled units
            if nu.scaled()[j] - nu.scaled()[k] != n as i64 {
                continue;
            }
            let d = x[j] - x[k];
            let den = sn(alpha, d);
            if den.abs() < SIN_EPS {
                return Err(Error::SingularValue(format!(
                    "V_nu pole at root e_{} - e_{}: sin((alpha/2)(x_{} - x_{})) = 0",
                    j + 1,
                    k + 1,
                    j + 1,
                    k + 1
                )));
            }
            out *= sn(alpha, d + g_eff) / den;
        }
    }
    Ok(out)
}

/// `V_J(g; x)`: double product over `j` in `J`, `k` outside `J`.
pub fn v_set(g: f64, alpha: f64, j_set: &[usize], x: &[f64]) -> Result<f64> {
    let n = x.len();
    let mut out = 1.0;
    for &j in j_set {
        for k in 0..n {
            if j_set.contains(&k) {
                continue;
            }
            let d = x[j] - x[k];
            let den = sn(alpha, d);
            if den.abs() < SIN_EPS {
                return Err(Error::SingularValue(format!(
                    "V_J pole at pair ({}, {})",
                    j + 1,
                    k + 1
                )));
            }
            out *= sn(alpha, d + g) / den;
        }
    }
    Ok(out)
}

/// `F_J(x)`: product over ordered pairs `j != k` inside `J` of
/// `sin (alpha/2)(x_j - x_k) / sin (alpha/2)(x_j - x_k + g)`.
pub fn f_set(g: f64, alpha: f64, j_set: &[usize], x: &[f64]) -> Result<f64> {
    let mut out = 1.0;
    for &j in j_set {
        for &k in j_set {
            if j == k {
                continue;
            }
            let d = x[j] - x[k];
            let den = sn(alpha, d + g);
            if den.abs() < SIN_EPS {
                return Err(Error::SingularValue(format!(
                    "F_J pole at pair ({}, {})",
                    j + 1,
                    k + 1
                )));
            }
            out *= sn(alpha, d) / den;
        }
    }
    Ok(out)
}

/// The index set `J` with `nu = sum_{j in J} e_j - (r/n) sum_j e_j`.
pub fn index_set_of(nu: &Weight) -> Vec<usize> {
    nu.scaled()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, _)| j)
        .collect()
}

/// The sign `s(g; nu) = sgn(V_nu(g; x))` for interior `x`, evaluated at the
/// simplex barycenter (retrying at perturbed interior points if needed).
pub fn sign_s(params: &ModelParams, nu: &Weight) -> Result<i8> {
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
        if let Ok(v) = v_nu(params.g, params.alpha, nu, x) {
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

/// Signs `s(g; nu)` for all orbit vectors, keyed by scaled coordinates.
#[derive(Debug, Clone)]
pub struct SignTable {
    map: BTreeMap<Vec<i64>, i8>,
}

impl SignTable {
    pub fn get(&self, nu: &Weight) -> Option<i8> {
        self.map.get(nu.scaled()).copied()
    }
}

pub fn build_sign_table(params: &ModelParams) -> Result<SignTable> {
    let mut map = BTreeMap::new();
    for r in 1..params.n {
        for nu in crate::rootsys::orbit(params.n, r)? {
            let s = sign_s(params, &nu)?;
            map.insert(nu.scaled().to_vec(), s);
        }
    }
    Ok(SignTable { map })
}

/// Square of `W_nu` at `x = rho_p + sgn(M) mu`, through the paired product
/// `V_J(x) V_J(-x - sgn(M) nu)`.
///
/// Both arguments are lattice points strictly inside the Weyl alcove (the
/// caller guarantees `mu` and `mu + nu` stay on the lattice), so every sine
/// denominator is bounded away from zero regardless of `g` — in particular
/// at the excluded couplings, where individual unpaired factors would blow
/// up.
fn w_nu_sq(params: &ModelParams, x: &[f64], nu: &Weight) -> Result<f64> {
    let j_set = index_set_of(nu);
    let s = params.sgn_m();
    let nu_embed = nu.embed();
    let shifted: Vec<f64> = x
        .iter()
        .zip(&nu_embed)
        .map(|(xi, ni)| -xi - s * ni)
        .collect();
    let a = v_set(params.g, params.alpha, &j_set, x)?;
    let b = v_set(params.g, params.alpha, &j_set, &shifted)?;
    Ok(a * b)
}

/// `W_nu(rho_p + sgn(M) mu)`: zero exactly when `mu + nu` leaves the
/// lattice, otherwise `s(g; nu) sqrt(V_nu(x) V_nu(-x - sgn(M) nu))`.
pub fn w_nu(params: &ModelParams, mu: &DominantIndex, nu: &Weight) -> Result<f64> {
    let sign = sign_s(params, nu)?;
    w_nu_signed(params, mu, nu, sign)
}

/// [`w_nu`] with the sign factor supplied externally (from a [`SignTable`]).
pub fn w_nu_signed(
    params: &ModelParams,
    mu: &DominantIndex,
    nu: &Weight,
    sign: i8,
) -> Result<f64> {
    if mu.m.len() != params.n - 1
        || mu.m.iter().any(|&v| v < 0)
        || mu.level() > params.abs_m() as i64
    {
        return Err(Error::InvalidIndex(format!(
            "mu = {:?} outside the dominant lattice",
            mu.m
        )));
    }
    if shift_index(params, mu, nu).is_none() {
        return Ok(0.0);
    }
    let x = lattice_point(params, mu);
    let w2 = w_nu_sq(params, &x, nu)?;
    if w2 < -1e-10 {
        return Err(Error::Diagnostic(format!(
            "negative radicand {w2} for W_nu at mu = {:?}",
            mu.m
        )));
    }
    Ok(sign as f64 * libm::sqrt(w2.max(0.0)))
}

/// `Delta_p(mu)` by the direct product over the positive roots of the
/// p-base, with its two Pochhammer ratios.
pub fn delta_p(params: &ModelParams, mu: &DominantIndex) -> Result<f64> {
    let rho = rho_p(params);
    let mu_w = mu.weight(&params.base);
    let mut out = 1.0;
    for pr in positive_roots_p(params.n, params.p)? {
        let a = &pr.root;
        let ar = a.dot_f64(&rho);
        let am = a.dot_int(&mu_w)?;
        let s = params.sgn_m();
        let idx = params.sgn_m_int() * am;
        let den0 = sn(params.alpha, ar);
        if den0.abs() < SIN_EPS {
            return Err(Error::Diagnostic(format!(
                "sin((alpha/2) <a, rho_p>) vanishes for a positive root"
            )));
        }
        let num_poch = trig_pochhammer(ar + s * params.g, idx, params.alpha)
            .map_err(|e| Error::Diagnostic(format!("Delta_p numerator: {e}")))?;
        let den_poch = trig_pochhammer(ar + 1.0 - s * params.g, idx, params.alpha)
            .map_err(|e| Error::Diagnostic(format!("Delta_p denominator: {e}")))?;
        if den_poch.abs() < SIN_EPS {
            return Err(Error::Diagnostic(format!(
                "Delta_p Pochhammer denominator vanishes at mu = {:?}",
                mu.m
            )));
        }
        let x_arg = ar + s * am as f64;
        out *= sn(params.alpha, x_arg) / den0 * num_poch / den_poch;
    }
    Ok(out)
}

/// `Delta_p` extended by zero outside the lattice (the recurrence extension
/// vanishes one step outside).
pub fn delta_or_zero(params: &ModelParams, m: &[i64]) -> Result<f64> {
    if m.len() != params.n - 1 {
        return Err(Error::DimensionMismatch {
            expected: params.n - 1,
            got: m.len(),
        });
    }
    if m.iter().any(|&v| v < 0) || m.iter().sum::<i64>() > params.abs_m() as i64 {
        return Ok(0.0);
    }
    delta_p(
        params,
        &DominantIndex { m: m.to_vec() },
    )
}

/// `Delta_p` over a whole lattice, direct-product values.
#[derive(Debug, Clone)]
pub struct DeltaTable {
    pub values: Vec<f64>,
}

impl DeltaTable {
    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }
}

pub fn build_delta_table(params: &ModelParams, lattice: &Lattice) -> Result<DeltaTable> {
    let mut values = Vec::with_capacity(lattice.dim());
    for mu in &lattice.points {
        let v = delta_p(params, mu)?;
        if !(v > 0.0) {
            return Err(Error::Diagnostic(format!(
                "Delta_p({:?}) = {v} is not strictly positive",
                mu.m
            )));
        }
        values.push(v);
    }
    Ok(DeltaTable { values })
}

/// `Delta_p` over the lattice by chaining the one-step recurrence
/// `Delta(mu + nu)/Delta(mu) = V_nu(rho_p + s mu) / V_nu(-rho_p - s(mu + nu))`
/// from `Delta(0) = 1` along fundamental-weight steps. Cross-check only;
/// the direct product is authoritative.
pub fn delta_table_by_recurrence(params: &ModelParams, lattice: &Lattice) -> Result<Vec<f64>> {
    let mut values = alloc::vec![0.0f64; lattice.dim()];
    for (i, mu) in lattice.points.iter().enumerate() {
        if mu.level() == 0 {
            values[i] = 1.0;
            continue;
        }
        let j = mu.m.iter().position(|&v| v > 0).unwrap();
        let mut prev = mu.clone();
        prev.m[j] -= 1;
        let prev_idx = lattice.position(&prev.m).ok_or_else(|| {
            Error::Diagnostic(format!("predecessor of {:?} missing", mu.m))
        })?;
        let nu = &params.base.fundamental_weights[j];
        let x_prev = lattice_point(params, &prev);
        let num = v_nu(params.g, params.alpha, nu, &x_prev)?;
        let x_cur = lattice_point(params, mu);
        let neg: Vec<f64> = x_cur.iter().map(|v| -v).collect();
        let den = v_nu(params.g, params.alpha, nu, &neg)?;
        if den.abs() < SIN_EPS {
            return Err(Error::SingularValue(format!(
                "recurrence denominator vanishes at mu = {:?}",
                mu.m
            )));
        }
        values[i] = values[prev_idx] * num / den;
    }
    Ok(values)
}
