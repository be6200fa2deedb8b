//! Reports, serialization and verification suites wrapping the core
//! library for command-line and CI use.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rscd_core::classical::{
    classical_hr_at, radicand_identity_check, sample_interior, sample_phase_point,
};
use rscd_core::coeffs::{v_nu, v_set, w_nu};
use rscd_core::eigen::{
    build_basis, gram_deviation, n0, n0_product, spectral_crosscheck, EigenBasis,
};
use rscd_core::coeffs::{build_delta_table, index_set_of, sign_s};
use rscd_core::error::Result;
use rscd_core::macdonald::{e_cos, elementary_e};
use rscd_core::model::{
    build_params, classify_coupling, enumerate_lattice, excluded_g_values, lattice_point,
    rho_standard, shift_index, Coupling, Lattice, ModelParams,
};
use rscd_core::operators::{adjoint_check, build_s, commutator_norm, OperatorMatrix};
use rscd_core::rootsys::orbit;

pub const SCHEMA_VERSION: u32 = 1;

/// Tolerances applied by the verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub tol_eigen: f64,
    pub tol_gram: f64,
    pub tol_identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_eigen: 1e-8,
            tol_gram: 1e-8,
            tol_identity: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub m: i64,
    pub g: f64,
    pub alpha: f64,
}

impl ParamsReport {
    pub fn new(params: &ModelParams) -> Self {
        ParamsReport {
            n: params.n,
            p: params.p,
            q: params.q,
            m: params.m,
            g: params.g,
            alpha: params.alpha,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub schema_version: u32,
    pub valid: bool,
    pub params: ParamsReport,
    pub coupling_type: String,
    pub dimension: u128,
    pub excluded_g_nearby: Vec<f64>,
}

pub fn cmd_validate(n: usize, p: usize, m: i64, g: f64) -> Result<ValidateReport> {
    let params = build_params(n, p, m, g)?;
    let gamma = params.alpha * params.g / (2.0 * std::f64::consts::PI);
    let coupling = match classify_coupling(n, gamma)? {
        Coupling::TypeI { p, q } => format!("type-i(p={p}, q={q})"),
        Coupling::TypeII => "type-ii".into(),
        Coupling::Excluded => "excluded".into(),
    };
    let mut nearby: Vec<f64> = excluded_g_values(&params)
        .into_iter()
        .filter(|v| (v - g).abs() < 0.5)
        .collect();
    nearby.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nearby.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(ValidateReport {
        schema_version: SCHEMA_VERSION,
        valid: true,
        params: ParamsReport::new(&params),
        coupling_type: coupling,
        dimension: rscd_core::model::lattice_cardinality(n, params.abs_m()),
        excluded_g_nearby: nearby,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSite {
    pub index: usize,
    pub m: Vec<i64>,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub index: usize,
    pub m: Vec<i64>,
    /// Cosine eigenvalues of H_r, r = 1..n-1.
    pub e: Vec<f64>,
    /// Complex eigenvalues of S_r as [re, im] pairs.
    pub s_eigenvalues: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub params: ParamsReport,
    pub dimension: usize,
    pub lattice: Vec<LatticeSite>,
    pub rows: Vec<SpectrumRow>,
}

fn lattice_sites(params: &ModelParams, lattice: &Lattice) -> Vec<LatticeSite> {
    lattice
        .points
        .iter()
        .enumerate()
        .map(|(index, mu)| LatticeSite {
            index,
            m: mu.m.clone(),
            x: lattice_point(params, mu),
        })
        .collect()
}

pub fn cmd_spectrum(n: usize, p: usize, m: i64, g: f64) -> Result<SpectrumReport> {
    let params = build_params(n, p, m, g)?;
    let lattice = enumerate_lattice(&params);
    let basis = build_basis(&params, &lattice)?;
    let rows = lattice
        .points
        .iter()
        .enumerate()
        .map(|(index, mu)| SpectrumRow {
            index,
            m: mu.m.clone(),
            e: basis.eigvals_cos[index].clone(),
            s_eigenvalues: basis.eigvals[index].iter().map(|v| [v.re, v.im]).collect(),
        })
        .collect();
    Ok(SpectrumReport {
        schema_version: SCHEMA_VERSION,
        params: ParamsReport::new(&params),
        dimension: lattice.dim(),
        lattice: lattice_sites(&params, &lattice),
        rows,
    })
}

pub fn spectrum_csv(report: &SpectrumReport) -> String {
    let n = report.params.n;
    let mut out = String::from("lambda_index");
    for j in 1..n {
        let _ = write!(out, ",m_{j}");
    }
    for r in 1..n {
        let _ = write!(out, ",E_{r}");
    }
    out.push('\n');
    for row in &report.rows {
        let _ = write!(out, "{}", row.index);
        for v in &row.m {
            let _ = write!(out, ",{v}");
        }
        for v in &row.e {
            let _ = write!(out, ",{v:.17e}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixDump {
    pub schema_version: u32,
    pub kind: String,
    pub r: usize,
    pub dim: usize,
    /// Row-major entries as [re, im] pairs.
    pub entries: Vec<[f64; 2]>,
}

pub fn matrix_dump(op: &OperatorMatrix) -> MatrixDump {
    let dim = op.dim();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            entries.push([op.mat[(i, j)], 0.0]);
        }
    }
    MatrixDump {
        schema_version: SCHEMA_VERSION,
        kind: format!("{:?}", op.kind).to_lowercase(),
        r: op.r,
        dim,
        entries,
    }
}

pub fn matrix_csv(op: &OperatorMatrix) -> String {
    let dim = op.dim();
    let mut out = String::from("row");
    for j in 0..dim {
        let _ = write!(out, ",c{j}");
    }
    out.push('\n');
    for i in 0..dim {
        let _ = write!(out, "{i}");
        for j in 0..dim {
            let _ = write!(out, ",{:.17e}", op.mat[(i, j)]);
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct OperatorsReport {
    pub schema_version: u32,
    pub params: ParamsReport,
    pub dimension: usize,
    pub lattice: Vec<LatticeSite>,
    pub matrices: Vec<MatrixDump>,
}

pub fn cmd_operators(n: usize, p: usize, m: i64, g: f64, kind: &str) -> Result<OperatorsReport> {
    let params = build_params(n, p, m, g)?;
    let lattice = enumerate_lattice(&params);
    let mut matrices = Vec::new();
    for r in 1..n {
        let op = match kind {
            "d" => rscd_core::operators::build_d(&params, &lattice, r)?,
            "h" => rscd_core::operators::build_h(&params, &lattice, r)?,
            _ => build_s(&params, &lattice, r)?,
        };
        matrices.push(matrix_dump(&op));
    }
    Ok(OperatorsReport {
        schema_version: SCHEMA_VERSION,
        params: ParamsReport::new(&params),
        dimension: lattice.dim(),
        lattice: lattice_sites(&params, &lattice),
        matrices,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub schema_version: u32,
    pub params: ParamsReport,
    pub dimension: usize,
    pub n0_sum: f64,
    pub n0_product: f64,
    pub gram_max_dev: f64,
    pub self_duality_max_dev: f64,
    pub forward_residual_max: f64,
    pub spectral_max_eigenvalue_dev: f64,
    pub spectral_min_overlap: f64,
    pub rows: Vec<SpectrumRow>,
}

fn forward_residual_max(
    params: &ModelParams,
    lattice: &Lattice,
    basis: &EigenBasis,
) -> Result<f64> {
    let mut max_res = 0.0f64;
    for r in 1..params.n {
        let s = build_s(params, lattice, r)?;
        for (li, psi) in basis.psi.iter().enumerate() {
            let out = s.apply(psi)?;
            let ev = basis.eigvals[li][r - 1];
            for (a, b) in out.iter().zip(psi) {
                max_res = max_res.max((a - ev * b).norm());
            }
        }
    }
    Ok(max_res)
}

fn self_duality_max_dev(basis: &EigenBasis) -> f64 {
    let d = basis.psi.len();
    let mut dev = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            dev = dev.max((basis.psi[i][j] - basis.psi[j][i]).norm());
        }
    }
    dev
}

pub fn cmd_eigenbasis(n: usize, p: usize, m: i64, g: f64, seed: u64) -> Result<EigenReport> {
    let params = build_params(n, p, m, g)?;
    let lattice = enumerate_lattice(&params);
    let basis = build_basis(&params, &lattice)?;
    let delta = build_delta_table(&params, &lattice)?;
    let spectral = spectral_crosscheck(&params, &lattice, &basis, seed)?;
    let rows = lattice
        .points
        .iter()
        .enumerate()
        .map(|(index, mu)| SpectrumRow {
            index,
            m: mu.m.clone(),
            e: basis.eigvals_cos[index].clone(),
            s_eigenvalues: basis.eigvals[index].iter().map(|v| [v.re, v.im]).collect(),
        })
        .collect();
    Ok(EigenReport {
        schema_version: SCHEMA_VERSION,
        params: ParamsReport::new(&params),
        dimension: lattice.dim(),
        n0_sum: n0(&params, &delta)?,
        n0_product: n0_product(&params)?,
        gram_max_dev: gram_deviation(&basis),
        self_duality_max_dev: self_duality_max_dev(&basis),
        forward_residual_max: forward_residual_max(&params, &lattice, &basis)?,
        spectral_max_eigenvalue_dev: spectral.max_eigenvalue_dev,
        spectral_min_overlap: spectral.min_overlap,
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub params: ParamsReport,
    pub dimension: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

fn check(checks: &mut Vec<CheckResult>, name: &str, residual: f64, tolerance: f64) {
    checks.push(CheckResult {
        name: name.into(),
        residual,
        tolerance,
        pass: residual.is_finite() && residual <= tolerance,
    });
}

/// Runs the full invariant suite at one parameter point.
pub fn cmd_verify(
    n: usize,
    p: usize,
    m: i64,
    g: f64,
    seed: u64,
    tol: &Tolerances,
) -> Result<VerifyReport> {
    let params = build_params(n, p, m, g)?;
    let lattice = enumerate_lattice(&params);
    let mut checks = Vec::new();

    // adjointness and commutativity
    let ops: Vec<OperatorMatrix> = (1..n)
        .map(|r| build_s(&params, &lattice, r))
        .collect::<Result<_>>()?;
    let mut adj = 0.0f64;
    for r in 1..n {
        adj = adj.max(adjoint_check(&params, &lattice, r)?);
    }
    check(&mut checks, "adjointness", adj, tol.tol_identity.max(1e-10));
    let mut comm = 0.0f64;
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let na = ops[a].mat.norm();
            let nb = ops[b].mat.norm();
            comm = comm.max(commutator_norm(&ops[a], &ops[b])? / (na * nb).max(1e-300));
        }
    }
    check(&mut checks, "commutators_relative", comm, 1e-9);

    // normalization constant
    let delta = build_delta_table(&params, &lattice)?;
    let sum: f64 = delta.values.iter().sum();
    let prod = n0_product(&params)?;
    check(
        &mut checks,
        "n0_sum_vs_product_relative",
        (sum - prod).abs() / prod.abs().max(1e-300),
        1e-9,
    );

    // symmetric function identity at sampled interior points
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mac_dev = 0.0f64;
    for _ in 0..50 {
        let x = sample_interior(&params, &mut rng);
        for r in 1..n {
            let mut total = Complex64::new(0.0, 0.0);
            for nu in orbit(n, r)? {
                total += Complex64::new(v_nu(params.g_eff(), params.alpha, &nu, &x)?, 0.0);
            }
            let expect = elementary_e(n, params.alpha, r, &rho_standard(n, params.g_eff()))?;
            mac_dev = mac_dev.max((total - expect).norm());
        }
    }
    check(&mut checks, "orbit_sum_identity", mac_dev, tol.tol_identity);

    // ground state eigenvalue equations
    let psi0 = rscd_core::eigen::psi_0(&params, &delta)?;
    let psi0c: Vec<Complex64> = psi0.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut gs_res = 0.0f64;
    for (r, op) in ops.iter().enumerate() {
        let out = op.apply(&psi0c)?;
        let ev = elementary_e(n, params.alpha, r + 1, &rho_standard(n, params.g_eff()))?;
        for (a, b) in out.iter().zip(&psi0c) {
            gs_res = gs_res.max((a - ev * b).norm());
        }
    }
    check(&mut checks, "ground_state_residual", gs_res, 1e-9);

    // eigenbasis checks
    let basis = build_basis(&params, &lattice)?;
    check(&mut checks, "gram_max_dev", gram_deviation(&basis), tol.tol_gram);
    check(
        &mut checks,
        "self_duality_max_dev",
        self_duality_max_dev(&basis),
        1e-9,
    );
    check(
        &mut checks,
        "forward_residual_max",
        forward_residual_max(&params, &lattice, &basis)?,
        tol.tol_eigen,
    );
    let d = lattice.dim();
    let mut dual_res = 0.0f64;
    for _ in 0..100 {
        let li = rng.gen_range(0..d);
        let mi = rng.gen_range(0..d);
        let r = rng.gen_range(1..n);
        dual_res = dual_res
            .max(rscd_core::eigen::dual_eigen_check(&params, &lattice, &basis, r, li, mi)?);
    }
    check(&mut checks, "dual_residual_max", dual_res, tol.tol_eigen);

    let spectral = spectral_crosscheck(&params, &lattice, &basis, seed)?;
    check(
        &mut checks,
        "spectral_eigenvalue_dev",
        spectral.max_eigenvalue_dev,
        tol.tol_eigen,
    );
    check(
        &mut checks,
        "spectral_overlap_defect",
        (spectral.min_overlap - 1.0).abs(),
        1e-7,
    );

    // sign pattern of the single-index coefficients on interior samples
    let expected = if (p - 1) % 2 == 0 { 1.0 } else { -1.0 } * params.sgn_m();
    let mut sign_min = f64::INFINITY;
    for _ in 0..200 {
        let x = sample_interior(&params, &mut rng);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        for j in 0..n {
            sign_min = sign_min.min(expected * v_set(params.g, params.alpha, &[j], &x)?);
            sign_min = sign_min.min(expected * v_set(params.g, params.alpha, &[j], &neg)?);
        }
    }
    check(&mut checks, "sign_pattern_min", (-sign_min).max(0.0), 1e-12);

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        params: ParamsReport::new(&params),
        dimension: lattice.dim(),
        seed,
        tolerances: tol.clone(),
        checks,
        all_pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalReport {
    pub schema_version: u32,
    pub params: ParamsReport,
    pub samples: usize,
    pub seed: u64,
    pub radicand_residual_max: f64,
    pub hr_evenness_max_dev: f64,
    pub sign_pattern_min: f64,
    /// Per r: [max |H_r| over samples, e_r(rho(g)) reference].
    pub hr_extrema: Vec<[f64; 2]>,
}

pub fn cmd_classical(
    n: usize,
    p: usize,
    m: i64,
    g: f64,
    samples: usize,
    seed: u64,
) -> Result<ClassicalReport> {
    let params = build_params(n, p, m, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rad_max = 0.0f64;
    let mut even_max = 0.0f64;
    let mut sign_min = f64::INFINITY;
    let expected = if (p - 1) % 2 == 0 { 1.0 } else { -1.0 } * params.sgn_m();
    let mut extrema = vec![[f64::NEG_INFINITY, 0.0]; n - 1];
    for (r0, e) in extrema.iter_mut().enumerate() {
        e[1] = 2.0 * e_cos(n, params.alpha, r0 + 1, &rho_standard(n, params.g))?;
    }
    for _ in 0..samples {
        let point = sample_phase_point(&params, &mut rng);
        for r in 1..n {
            for nu in orbit(n, r)? {
                rad_max = rad_max.max(radicand_identity_check(
                    params.g,
                    params.alpha,
                    &index_set_of(&nu),
                    &point.x,
                )?);
            }
            let plus = classical_hr_at(&params, params.g, r, &point)?;
            let minus = classical_hr_at(&params, -params.g, r, &point)?;
            even_max = even_max.max((plus - minus).abs());
            extrema[r - 1][0] = extrema[r - 1][0].max(plus.abs());
        }
        let neg: Vec<f64> = point.x.iter().map(|v| -v).collect();
        for j in 0..n {
            sign_min = sign_min.min(expected * v_set(params.g, params.alpha, &[j], &point.x)?);
            sign_min = sign_min.min(expected * v_set(params.g, params.alpha, &[j], &neg)?);
        }
    }
    Ok(ClassicalReport {
        schema_version: SCHEMA_VERSION,
        params: ParamsReport::new(&params),
        samples,
        seed,
        radicand_residual_max: rad_max,
        hr_evenness_max_dev: even_max,
        sign_pattern_min: sign_min,
        hr_extrema: extrema,
    })
}

/// Vanishing pattern of the hopping coefficients: exactly zero off the
/// lattice, nonzero on it. Returns (boundary pairs seen, interior pairs
/// seen) or an error describing the first violation.
pub fn vanishing_pattern(params: &ModelParams, lattice: &Lattice) -> Result<(usize, usize)> {
    let mut boundary = 0usize;
    let mut interior = 0usize;
    for mu in &lattice.points {
        for r in 1..params.n {
            for nu in orbit(params.n, r)? {
                let w = w_nu(params, mu, &nu)?;
                if shift_index(params, mu, &nu).is_none() {
                    boundary += 1;
                    if w != 0.0 {
                        return Err(rscd_core::Error::Diagnostic(format!(
                            "W is {w} on a boundary pair, mu = {:?}",
                            mu.m
                        )));
                    }
                } else {
                    interior += 1;
                    if !(w.abs() > 0.0 && w.is_finite()) {
                        return Err(rscd_core::Error::Diagnostic(format!(
                            "W is {w} on an interior pair, mu = {:?}",
                            mu.m
                        )));
                    }
                }
            }
        }
    }
    Ok((boundary, interior))
}

/// Expose sign lookup for the CLI and acceptance tests.
pub fn orbit_sign(params: &ModelParams, scaled: &[i64]) -> Result<i8> {
    let nu = rscd_core::rootsys::Weight::from_scaled(params.n, scaled.to_vec())?;
    sign_s(params, &nu)
}

