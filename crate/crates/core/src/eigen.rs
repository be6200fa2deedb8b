//! Joint eigenfunctions on the lattice: the ground state, the full basis
//! built from renormalized Macdonald polynomials, normalization,
//! orthonormality, bispectral duality and a brute-force spectral
//! cross-check against dense diagonalization.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{build_delta_table, build_sign_table, trig_pochhammer, w_nu_signed, DeltaTable};
use crate::error::{Error, Result};
use crate::macdonald::{e_cos, elementary_e, macdonald_p, renorm_factor, MacPoly};
use crate::model::{rho_check_p, rho_standard, shift_index, DominantIndex, Lattice, ModelParams};
use crate::operators::{build_h, OperatorMatrix};
use crate::rootsys::{orbit, sigma_p, RootBase};

/// Normalization constant by the closed product formula
/// `2^{(n-1)(|M|-1)} n prod_k (1 + sgn(M) k g : sin_alpha)_{|M|-1}`.
pub fn n0_product(params: &ModelParams) -> Result<f64> {
    let n = params.n;
    let am = params.abs_m();
    let mut out = libm::pow(2.0, ((n - 1) * (am - 1)) as f64) * n as f64;
    for k in 1..n {
        out *= trig_pochhammer(1.0 + params.g_eff() * k as f64, am as i64 - 1, params.alpha)?;
    }
    // The constant is a sum of positive terms; the sine product determines it
    // only up to a sign that flips with period wrapping, so fix it here.
    Ok(out.abs())
}

/// Normalization constant as the lattice sum of Delta, asserted against the
/// product formula to 1e-9 relative.
pub fn n0(params: &ModelParams, delta: &DeltaTable) -> Result<f64> {
    let sum: f64 = delta.values.iter().sum();
    let prod = n0_product(params)?;
    if (sum - prod).abs() > 1e-9 * prod.abs().max(1.0) {
        return Err(Error::Diagnostic(format!(
            "normalization sum {sum} disagrees with the product formula {prod}"
        )));
    }
    Ok(sum)
}

/// The positive ground state `Delta^{1/2} / N_0^{1/2}`.
pub fn psi_0(params: &ModelParams, delta: &DeltaTable) -> Result<Vec<f64>> {
    let norm = n0(params, delta)?;
    Ok(delta
        .values
        .iter()
        .map(|&v| libm::sqrt(v / norm))
        .collect())
}

/// Transports a dominant index from the p-base to the standard base through
/// the permutation `sigma_p`.
pub fn sigma_transport(
    params: &ModelParams,
    std_base: &RootBase,
    lam: &DominantIndex,
) -> Result<DominantIndex> {
    let sigma = sigma_p(params.n, params.p)?;
    let mapped = sigma.apply(&lam.weight(&params.base));
    let m = std_base
        .simple_roots
        .iter()
        .map(|a| a.dot_int(&mapped))
        .collect::<Result<Vec<i64>>>()?;
    if m.iter().any(|&v| v < 0) {
        return Err(Error::Diagnostic(format!(
            "sigma_p transport of {:?} is not dominant",
            lam.m
        )));
    }
    Ok(DominantIndex { m })
}

/// The orthonormal eigenbasis with its eigenvalue tables.
pub struct EigenBasis {
    pub n0: f64,
    pub delta: DeltaTable,
    /// `psi[lam][mu]`, both indexed in lattice order.
    pub psi: Vec<Vec<Complex64>>,
    /// `eigvals[lam][r-1] = E_r(rho(sgn(M) g) + sigma_p(lam))` (phase sum).
    pub eigvals: Vec<Vec<Complex64>>,
    /// Cosine eigenvalues of the self-adjoint `H_r`.
    pub eigvals_cos: Vec<Vec<f64>>,
    /// Largest imaginary part observed across all entries (recorded, not
    /// asserted: the phase convention leaves realness unspecified).
    pub max_imag: f64,
}

pub fn build_basis(params: &ModelParams, lattice: &Lattice) -> Result<EigenBasis> {
    let n = params.n;
    let delta = build_delta_table(params, lattice)?;
    let norm = n0(params, &delta)?;
    let std_base = RootBase::new(n, 1)?;
    let g_eff = params.g_eff();
    let rho_eff = rho_standard(n, g_eff);
    let rho_check = rho_check_p(params, g_eff);
    let d = lattice.dim();

    let args: Vec<Vec<f64>> = lattice
        .points
        .iter()
        .map(|mu| {
            let e = mu.weight(&params.base).embed();
            rho_check.iter().zip(e).map(|(a, b)| a + b).collect()
        })
        .collect();

    let mut psi = Vec::with_capacity(d);
    let mut eigvals = Vec::with_capacity(d);
    let mut eigvals_cos = Vec::with_capacity(d);
    let mut max_imag = 0.0f64;
    for lam in &lattice.points {
        let lam_idx = lattice.position(&lam.m).unwrap();
        let lam_std = sigma_transport(params, &std_base, lam)?;
        let poly: MacPoly = macdonald_p(&std_base, params.alpha, g_eff, &lam_std)?;
        let factor = renorm_factor(n, params.alpha, g_eff, &lam_std.weight(&std_base))?;
        let dl = libm::sqrt(delta.get(lam_idx) / norm);
        let row: Vec<Complex64> = (0..d)
            .map(|mu_idx| {
                let dm = libm::sqrt(delta.get(mu_idx));
                let p = poly.eval(&std_base, params.alpha, &args[mu_idx]) * factor;
                let v = p * dl * dm;
                max_imag = max_imag.max(v.im.abs());
                v
            })
            .collect();
        psi.push(row);
        let shifted: Vec<f64> = rho_eff
            .iter()
            .zip(lam_std.weight(&std_base).embed())
            .map(|(a, b)| a + b)
            .collect();
        eigvals.push(
            (1..n)
                .map(|r| elementary_e(n, params.alpha, r, &shifted))
                .collect::<Result<Vec<_>>>()?,
        );
        eigvals_cos.push(
            (1..n)
                .map(|r| e_cos(n, params.alpha, r, &shifted))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(EigenBasis {
        n0: norm,
        delta,
        psi,
        eigvals,
        eigvals_cos,
        max_imag,
    })
}

/// Gram matrix of the basis under the counting inner product.
pub fn gram(basis: &EigenBasis) -> DMatrix<Complex64> {
    let d = basis.psi.len();
    DMatrix::from_fn(d, d, |i, j| {
        basis.psi[i]
            .iter()
            .zip(&basis.psi[j])
            .map(|(a, b)| a * b.conj())
            .sum()
    })
}

/// Maximal deviation of the Gram matrix from the identity.
pub fn gram_deviation(basis: &EigenBasis) -> f64 {
    let g = gram(basis);
    let d = g.nrows();
    let mut dev = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            dev = dev.max((g[(i, j)] - target).norm());
        }
    }
    dev
}

/// Residual of the dual (spectral-variable) eigenvalue equation at
/// `(r, lam, mu)`: hopping acts on the label `mu` while the argument stays
/// at `lam`.
pub fn dual_eigen_check(
    params: &ModelParams,
    lattice: &Lattice,
    basis: &EigenBasis,
    r: usize,
    lam_idx: usize,
    mu_idx: usize,
) -> Result<f64> {
    let signs = build_sign_table(params)?;
    let mu = &lattice.points[mu_idx];
    let orb = orbit(params.n, r)?;
    let mut lhs = Complex64::new(0.0, 0.0);
    for nu in &orb {
        if let Some(next) = shift_index(params, mu, nu) {
            let j = lattice.position(&next.m).unwrap();
            let sign = signs.get(nu).unwrap();
            lhs += w_nu_signed(params, mu, nu, sign)? * basis.psi[j][lam_idx];
        }
        let neg = nu.neg();
        if let Some(prev) = shift_index(params, mu, &neg) {
            let j = lattice.position(&prev.m).unwrap();
            let sign = signs.get(&neg).unwrap();
            lhs += w_nu_signed(params, mu, &neg, sign)? * basis.psi[j][lam_idx];
        }
    }
    let rhs = 2.0 * basis.eigvals_cos[lam_idx][r - 1] * basis.psi[mu_idx][lam_idx];
    Ok((lhs - rhs).norm())
}

/// Report of the brute-force diagonalization cross-check.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Max deviation between sorted numeric spectra of `H_r` and the
    /// predicted cosine eigenvalues, over all r.
    pub max_eigenvalue_dev: f64,
    /// Min over lambda of the overlap modulus between the numeric joint
    /// eigenvector and `Psi_lam`.
    pub min_overlap: f64,
}

/// Diagonalizes a generic random combination of the `H_r`, matches each
/// numeric eigenvector to a lattice label through its eigenvalue tuple and
/// compares against the analytic basis.
pub fn spectral_crosscheck(
    params: &ModelParams,
    lattice: &Lattice,
    basis: &EigenBasis,
    seed: u64,
) -> Result<SpectralReport> {
    let n = params.n;
    let d = lattice.dim();
    let hs: Vec<OperatorMatrix> = (1..n)
        .map(|r| build_h(params, lattice, r))
        .collect::<Result<_>>()?;

    // per-operator eigenvalue multisets
    let mut max_dev = 0.0f64;
    for (r0, h) in hs.iter().enumerate() {
        let eig = SymmetricEigen::new(h.mat.clone());
        let mut numeric: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let mut predicted: Vec<f64> = (0..d).map(|i| basis.eigvals_cos[i][r0]).collect();
        numeric.sort_by(|a, b| a.partial_cmp(b).unwrap());
        predicted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in numeric.iter().zip(&predicted) {
            max_dev = max_dev.max((a - b).abs());
        }
    }

    // joint eigenspaces via a generic combination
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..n - 1).map(|_| 0.25 + rng.gen::<f64>()).collect();
    let mut combo = DMatrix::<f64>::zeros(d, d);
    for (c, h) in coeffs.iter().zip(&hs) {
        combo += h.mat.scale(*c);
    }
    let eig = SymmetricEigen::new(combo);
    let predicted: Vec<f64> = (0..d)
        .map(|i| {
            coeffs
                .iter()
                .zip(&basis.eigvals_cos[i])
                .map(|(c, e)| c * e)
                .sum()
        })
        .collect();
    // The sorted spectra must agree as multisets.
    {
        let mut numeric: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let mut pred = predicted.clone();
        numeric.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pred.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in numeric.iter().zip(&pred) {
            if (a - b).abs() > 1e-7 {
                return Err(Error::Diagnostic(format!(
                    "combined spectra disagree: numeric {a} vs predicted {b}"
                )));
            }
        }
    }
    // Conjugate eigenvalue tuples share their cosine parts, so eigenvalues of
    // the self-adjoint combination may be two-fold degenerate. Compare each
    // numeric eigenvector against the span of the matching group.
    let mut min_overlap = f64::INFINITY;
    for k in 0..d {
        let val = eig.eigenvalues[k];
        let group: Vec<usize> = (0..d)
            .filter(|&i| (predicted[i] - val).abs() < 1e-6)
            .collect();
        if group.is_empty() {
            return Err(Error::Diagnostic(format!(
                "numeric eigenvalue {val} matches no predicted tuple"
            )));
        }
        let v = eig.eigenvectors.column(k);
        let mut proj_sq = 0.0;
        for &lam_idx in &group {
            let overlap: Complex64 = (0..d)
                .map(|i| Complex64::new(v[i], 0.0) * basis.psi[lam_idx][i].conj())
                .sum();
            proj_sq += overlap.norm_sqr();
        }
        min_overlap = min_overlap.min(libm::sqrt(proj_sq));
    }
    Ok(SpectralReport {
        max_eigenvalue_dev: max_dev,
        min_overlap,
    })
}
