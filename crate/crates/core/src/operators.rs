//! Matrix realizations of the difference operators S, D and H on the finite
//! lattice Hilbert space, plus the counting inner product and the
//! adjointness / commutativity diagnostics.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::coeffs::{build_sign_table, v_nu, w_nu_signed, SignTable};
use crate::error::{Error, Result};
use crate::model::{lattice_point, shift_index, Lattice, ModelParams};
use crate::rootsys::orbit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    S,
    D,
    H,
}

/// Dense matrix of one difference operator in the lattice basis. All
/// entries are real (the coefficients W and V are real on the lattice).
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub kind: OpKind,
    pub r: usize,
    pub mat: DMatrix<f64>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Applies the operator to a complex lattice function.
    pub fn apply(&self, phi: &[Complex64]) -> Result<Vec<Complex64>> {
        if phi.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: phi.len(),
            });
        }
        Ok((0..self.dim())
            .map(|i| {
                phi.iter()
                    .enumerate()
                    .map(|(j, &v)| self.mat[(i, j)] * v)
                    .sum()
            })
            .collect())
    }
}

/// Counting (sesquilinear, conjugate-linear in the second slot) inner
/// product on lattice functions.
pub fn inner_product(phi: &[Complex64], psi: &[Complex64]) -> Result<Complex64> {
    if phi.len() != psi.len() {
        return Err(Error::DimensionMismatch {
            expected: phi.len(),
            got: psi.len(),
        });
    }
    Ok(phi.iter().zip(psi).map(|(a, b)| a * b.conj()).sum())
}

fn build_hopping(
    params: &ModelParams,
    lattice: &Lattice,
    r: usize,
    kind: OpKind,
    signs: Option<&SignTable>,
) -> Result<OperatorMatrix> {
    if r == 0 || r >= params.n {
        return Err(Error::InvalidParameter(format!(
            "operator label r = {r} must lie in 1..{}",
            params.n - 1
        )));
    }
    let orb = orbit(params.n, r)?;
    let d = lattice.dim();
    let mut mat = DMatrix::<f64>::zeros(d, d);
    for (i, mu) in lattice.points.iter().enumerate() {
        for nu in &orb {
            let Some(next) = shift_index(params, mu, nu) else {
                continue;
            };
            let j = lattice.position(&next.m).ok_or_else(|| {
                Error::Diagnostic(format!("shifted index {:?} missing from lattice", next.m))
            })?;
            let entry = match kind {
                OpKind::S => {
                    let sign = signs
                        .and_then(|t| t.get(nu))
                        .ok_or_else(|| Error::Diagnostic(format!("missing sign for nu")))?;
                    w_nu_signed(params, mu, nu, sign)?
                }
                OpKind::D => {
                    let x = lattice_point(params, mu);
                    v_nu(params.g, params.alpha, nu, &x)?
                }
                OpKind::H => unreachable!(),
            };
            mat[(i, j)] += entry;
        }
    }
    Ok(OperatorMatrix { kind, r, mat })
}

/// The operator S_{r,M}: hop coefficients `W_nu(rho_p + sgn(M) mu)`.
pub fn build_s(params: &ModelParams, lattice: &Lattice, r: usize) -> Result<OperatorMatrix> {
    let signs = build_sign_table(params)?;
    build_hopping(params, lattice, r, OpKind::S, Some(&signs))
}

/// [`build_s`] reusing a precomputed sign table.
pub fn build_s_with_signs(
    params: &ModelParams,
    lattice: &Lattice,
    r: usize,
    signs: &SignTable,
) -> Result<OperatorMatrix> {
    build_hopping(params, lattice, r, OpKind::S, Some(signs))
}

/// The operator D_{r,M}: hop coefficients `V_nu(rho_p + sgn(M) mu)`.
pub fn build_d(params: &ModelParams, lattice: &Lattice, r: usize) -> Result<OperatorMatrix> {
    build_hopping(params, lattice, r, OpKind::D, None)
}

/// The self-adjoint combination `H_{r,M} = (S_{r,M} + S_{n-r,M}) / 2`.
pub fn build_h(params: &ModelParams, lattice: &Lattice, r: usize) -> Result<OperatorMatrix> {
    let signs = build_sign_table(params)?;
    let s_r = build_hopping(params, lattice, r, OpKind::S, Some(&signs))?;
    let s_nr = build_hopping(params, lattice, params.n - r, OpKind::S, Some(&signs))?;
    Ok(OperatorMatrix {
        kind: OpKind::H,
        r,
        mat: (s_r.mat + s_nr.mat).scale(0.5),
    })
}

/// Max-norm residual of the adjointness relation `S_r = S_{n-r}^T`.
pub fn adjoint_check(params: &ModelParams, lattice: &Lattice, r: usize) -> Result<f64> {
    let signs = build_sign_table(params)?;
    let s_r = build_hopping(params, lattice, r, OpKind::S, Some(&signs))?;
    let s_nr = build_hopping(params, lattice, params.n - r, OpKind::S, Some(&signs))?;
    let diff = &s_r.mat - s_nr.mat.transpose();
    Ok(diff.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// Frobenius norm of `AB - BA`.
pub fn commutator_norm(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let c = &a.mat * &b.mat - &b.mat * &a.mat;
    Ok(c.norm())
}
