//! Macdonald polynomials at unitary parameters on the truncated dominant
//! cone: monomial symmetric functions, the triangular joint-eigenfunction
//! construction, renormalization and eigenvalue tuples.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{trig_pochhammer, v_nu};
use crate::error::{Error, Result};
use crate::model::{rho_standard, DominantIndex};
use crate::rootsys::{dominance_leq, orbit, RootBase, Weight};

/// `E_r(u) = sum over the orbit of omega_r of e^{i alpha <nu, u>}`.
pub fn elementary_e(n: usize, alpha: f64, r: usize, u: &[f64]) -> Result<Complex64> {
    let orb = orbit(n, r)?;
    Ok(orb
        .iter()
        .map(|nu| {
            let phase = alpha * nu.dot_f64(u);
            Complex64::new(libm::cos(phase), libm::sin(phase))
        })
        .sum())
}

/// The cosine variant `sum cos(alpha <nu, u>)`, i.e. the real part of
/// [`elementary_e`] at real `u`.
pub fn e_cos(n: usize, alpha: f64, r: usize, u: &[f64]) -> Result<f64> {
    let orb = orbit(n, r)?;
    Ok(orb
        .iter()
        .map(|nu| libm::cos(alpha * nu.dot_f64(u)))
        .sum())
}

fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // lexicographic next-permutation walk over the multiset
    loop {
        let Some(i) = (0..cur.len() - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Monomial symmetric function `m_lam(x)`: sum of `e^{i alpha <mu, x>}` over
/// the distinct permutations of the dominant weight `lam`.
pub fn monomial_m(lam: &Weight, alpha: f64, x: &[f64]) -> Complex64 {
    let n = x.len() as f64;
    distinct_permutations(lam.scaled())
        .iter()
        .map(|coords| {
            let phase =
                alpha * coords.iter().zip(x).map(|(&c, &xi)| c as f64 * xi).sum::<f64>() / n;
            Complex64::new(libm::cos(phase), libm::sin(phase))
        })
        .sum()
}

/// Dominant indices (standard base) with level at most `cap`, graded lex.
pub fn dominant_up_to(n: usize, cap: i64) -> Vec<DominantIndex> {
    fn fill(points: &mut Vec<DominantIndex>, stack: &mut Vec<i64>, pos: usize, budget: i64) {
        if pos == stack.len() {
            points.push(DominantIndex { m: stack.clone() });
            return;
        }
        for v in 0..=budget {
            stack[pos] = v;
            fill(points, stack, pos + 1, budget - v);
        }
        stack[pos] = 0;
    }
    let mut points = Vec::new();
    let mut stack = vec![0i64; n - 1];
    fill(&mut points, &mut stack, 0, cap);
    points.sort_by(|a, b| (a.level(), &a.m).cmp(&(b.level(), &b.m)));
    points
}

/// The dominance-lower set `{mu dominant : mu <= lam}`, graded lex order.
pub fn dominance_support(base: &RootBase, lam: &DominantIndex) -> Vec<DominantIndex> {
    let lam_w = lam.weight(base);
    dominant_up_to(base.n, lam.level())
        .into_iter()
        .filter(|mu| dominance_leq(&mu.weight(base), &lam_w, base))
        .collect()
}

/// A Macdonald polynomial in monomial form: `P = sum_mu u_mu m_mu` over the
/// dominance-lower set of `lam`, monic at `lam`.
#[derive(Debug, Clone)]
pub struct MacPoly {
    pub lam: DominantIndex,
    pub support: Vec<DominantIndex>,
    pub coeffs: Vec<Complex64>,
}

impl MacPoly {
    pub fn eval(&self, base: &RootBase, alpha: f64, x: &[f64]) -> Complex64 {
        self.support
            .iter()
            .zip(&self.coeffs)
            .map(|(mu, &u)| u * monomial_m(&mu.weight(base), alpha, x))
            .sum()
    }
}

/// Distance of `(alpha/2) z` from the nearest zero of sine.
fn sine_zero_distance(alpha: f64, z: f64) -> f64 {
    let t = 0.5 * alpha * z / core::f64::consts::PI;
    (t - libm::round(t)).abs() * core::f64::consts::PI
}

fn sample_point(n: usize, alpha: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let period = 2.0 * core::f64::consts::PI / alpha;
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * period).collect();
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let ok = (0..n).all(|j| {
            (j + 1..n).all(|k| sine_zero_distance(alpha, x[j] - x[k]) > 1e-3)
        });
        if ok {
            return x;
        }
    }
}

/// `(D_r m_kappa)(x)` for the standard Macdonald-Ruijsenaars operator with
/// coupling `g_eff`: `sum_nu V_nu(g_eff; x) m_kappa(x + nu)`.
fn apply_d_monomial(
    base: &RootBase,
    alpha: f64,
    g_eff: f64,
    r: usize,
    kappa: &Weight,
    x: &[f64],
) -> Result<Complex64> {
    let orb = orbit(base.n, r)?;
    let mut out = Complex64::new(0.0, 0.0);
    for nu in &orb {
        let v = v_nu(g_eff, alpha, nu, x)?;
        let shifted: Vec<f64> = x.iter().zip(nu.embed()).map(|(a, b)| a + b).collect();
        out += v * monomial_m(kappa, alpha, &shifted);
    }
    Ok(out)
}

fn mix_seed(lam: &DominantIndex, r: usize, attempt: u64) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ (42 + attempt);
    for &m in &lam.m {
        h = (h ^ m as u64).wrapping_mul(0x100000001b3);
    }
    (h ^ r as u64).wrapping_mul(0x100000001b3)
}

/// Coefficient matrix `C^r` of `D_r(g_eff)` on the ordered monomial basis of
/// the dominance-lower set: column `kappa` holds the expansion of
/// `D_r m_kappa`. Obtained by sampling at random generic points and solving
/// the least-squares system against the monomial evaluation matrix.
fn operator_on_basis(
    base: &RootBase,
    alpha: f64,
    g_eff: f64,
    r: usize,
    lam: &DominantIndex,
    support: &[DominantIndex],
) -> Result<DMatrix<Complex64>> {
    let k = support.len();
    let weights: Vec<Weight> = support.iter().map(|mu| mu.weight(base)).collect();
    for attempt in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(lam, r, attempt));
        let samples = 2 * k + 8;
        let points: Vec<Vec<f64>> = (0..samples)
            .map(|_| sample_point(base.n, alpha, &mut rng))
            .collect();
        let eval = DMatrix::<Complex64>::from_fn(samples, k, |t, m| {
            monomial_m(&weights[m], alpha, &points[t])
        });
        let mut rhs = DMatrix::<Complex64>::zeros(samples, k);
        let mut singular = false;
        'outer: for (c, kappa) in weights.iter().enumerate() {
            for (t, x) in points.iter().enumerate() {
                match apply_d_monomial(base, alpha, g_eff, r, kappa, x) {
                    Ok(v) => rhs[(t, c)] = v,
                    Err(_) => {
                        singular = true;
                        break 'outer;
                    }
                }
            }
        }
        if singular {
            continue;
        }
        let svd = eval.clone().svd(true, true);
        let Ok(sol) = svd.solve(&rhs, 1e-13) else {
            continue;
        };
        let residual = (&eval * &sol - &rhs).norm();
        let scale = rhs.norm().max(1.0);
        if residual < 1e-8 * scale {
            return Ok(sol);
        }
    }
    Err(Error::IllConditioned(format!(
        "monomial interpolation for D_{r} m_kappa did not converge at lam = {:?}",
        lam.m
    )))
}

/// Builds `P_lam` for `lam` in the standard dominant cone: the unique monic
/// joint eigenfunction of the operators `D_r(g_eff)` with eigenvalues
/// `E_r(rho + lam)`, found as the joint null vector of the stacked shifted
/// coefficient matrices.
pub fn macdonald_p(
    base: &RootBase,
    alpha: f64,
    g_eff: f64,
    lam: &DominantIndex,
) -> Result<MacPoly> {
    let n = base.n;
    let support = dominance_support(base, lam);
    let k = support.len();
    let lam_pos = support
        .iter()
        .position(|mu| mu == lam)
        .ok_or_else(|| Error::Diagnostic(format!("lam missing from its own support")))?;
    if k == 1 {
        return Ok(MacPoly {
            lam: lam.clone(),
            support,
            coeffs: vec![Complex64::new(1.0, 0.0)],
        });
    }
    let rho = rho_standard(n, g_eff);
    let lam_embed = lam.weight(base).embed();
    let shifted: Vec<f64> = rho.iter().zip(&lam_embed).map(|(a, b)| a + b).collect();
    let mut stacked = DMatrix::<Complex64>::zeros((n - 1) * k, k);
    for r in 1..n {
        let c_r = operator_on_basis(base, alpha, g_eff, r, lam, &support)?;
        let eig = elementary_e(n, alpha, r, &shifted)?;
        let mut block = c_r;
        for i in 0..k {
            block[(i, i)] -= eig;
        }
        stacked.rows_mut((r - 1) * k, k).copy_from(&block);
    }
    let svd = stacked.svd(false, true);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[a]
            .partial_cmp(&svd.singular_values[b])
            .unwrap()
    });
    let smallest = svd.singular_values[order[0]];
    let second = svd.singular_values[order[1]];
    if smallest >= 1e-9 || second <= 1e-6 {
        return Err(Error::Degeneracy(format!(
            "joint kernel at lam = {:?} not one-dimensional: sigma_min = {smallest}, next = {second}",
            lam.m
        )));
    }
    let v_t = svd.v_t.as_ref().unwrap();
    let mut coeffs: Vec<Complex64> = (0..k).map(|j| v_t[(order[0], j)].conj()).collect();
    let pivot = coeffs[lam_pos];
    if pivot.norm() < 1e-10 {
        return Err(Error::Degeneracy(format!(
            "null vector at lam = {:?} has vanishing leading coefficient",
            lam.m
        )));
    }
    for c in coeffs.iter_mut() {
        *c /= pivot;
    }
    Ok(MacPoly {
        lam: lam.clone(),
        support,
        coeffs,
    })
}

/// The Pochhammer renormalization factor turning `P_lam` into the self-dual
/// `P~_lam`.
pub fn renorm_factor(n: usize, alpha: f64, g_eff: f64, lam: &Weight) -> Result<f64> {
    let mut out = 1.0;
    for j in 0..n {
        for k in j + 1..n {
            // <a, rho> = g_eff (k - j) for a = e_j - e_k
            let ar = g_eff * (k - j) as f64;
            let al = (lam.scaled()[j] - lam.scaled()[k]) / n as i64;
            let num = trig_pochhammer(ar, al, alpha)?;
            let den = trig_pochhammer(ar + g_eff, al, alpha)?;
            if den.abs() < crate::coeffs::SIN_EPS {
                return Err(Error::Diagnostic(format!(
                    "renormalization denominator Pochhammer vanishes"
                )));
            }
            out *= num / den;
        }
    }
    Ok(out)
}

/// Evaluates the renormalized polynomial `P~_lam(x)`.
pub fn macdonald_p_tilde(
    base: &RootBase,
    alpha: f64,
    g_eff: f64,
    lam: &DominantIndex,
    x: &[f64],
) -> Result<Complex64> {
    let poly = macdonald_p(base, alpha, g_eff, lam)?;
    let factor = renorm_factor(base.n, alpha, g_eff, &lam.weight(base))?;
    Ok(poly.eval(base, alpha, x) * factor)
}

/// The eigenvalue tuple `(E_r(rho + lam))_{r=1..n-1}`.
pub fn eig_tuple(
    base: &RootBase,
    alpha: f64,
    g_eff: f64,
    lam: &DominantIndex,
) -> Result<Vec<Complex64>> {
    let rho = rho_standard(base.n, g_eff);
    let embed = lam.weight(base).embed();
    let arg: Vec<f64> = rho.iter().zip(&embed).map(|(a, b)| a + b).collect();
    (1..base.n)
        .map(|r| elementary_e(base.n, alpha, r, &arg))
        .collect()
}

/// Asserts that the eigenvalue tuples are pairwise distinct over the
/// truncated cone of cap `abs_m`, returning the minimal pairwise distance.
pub fn audit_tuple_distinctness(
    base: &RootBase,
    alpha: f64,
    g_eff: f64,
    abs_m: usize,
) -> Result<f64> {
    let cone = dominant_up_to(base.n, abs_m as i64);
    let tuples: Vec<Vec<Complex64>> = cone
        .iter()
        .map(|lam| eig_tuple(base, alpha, g_eff, lam))
        .collect::<Result<_>>()?;
    let mut min_dist = f64::INFINITY;
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            let d = tuples[i]
                .iter()
                .zip(&tuples[j])
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>();
            min_dist = min_dist.min(libm::sqrt(d));
        }
    }
    if min_dist <= 1e-8 {
        return Err(Error::Degeneracy(format!(
            "eigenvalue tuples collide: min distance {min_dist}"
        )));
    }
    Ok(min_dist)
}
