//! Validated model parameters, coupling-type classification, lattice
//! enumeration and simplex geometry.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rootsys::{RootBase, Weight, mod_inverse};

/// Absolute tolerance for facet/boundary classification.
pub const GEOM_TOL: f64 = 1e-10;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parameters of one type (i) quantized model.
///
/// The scale `alpha` is derived from `(n, p, M, g)` through
/// `alpha = 2 pi p / (n g + M)`, so the quantisation condition
/// `M = 2 pi p / alpha - n g` holds by construction.
#[derive(Debug, Clone)]
pub struct ModelParams {
    pub n: usize,
    pub p: usize,
    /// Multiplicative inverse of `p` mod `n`.
    pub q: usize,
    /// Nonzero integer fixing the lattice span and the sign branch.
    pub m: i64,
    /// Coupling, strictly inside a type (i) interval.
    pub g: f64,
    pub alpha: f64,
    /// The p-dependent base of `A_{n-1}` used throughout.
    pub base: RootBase,
}

impl ModelParams {
    pub fn sgn_m(&self) -> f64 {
        if self.m > 0 { 1.0 } else { -1.0 }
    }

    pub fn sgn_m_int(&self) -> i64 {
        if self.m > 0 { 1 } else { -1 }
    }

    pub fn abs_m(&self) -> usize {
        self.m.unsigned_abs() as usize
    }

    /// `2 pi / alpha = (n g + M) / p`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.alpha
    }

    /// Signed coupling `sgn(M) g`.
    pub fn g_eff(&self) -> f64 {
        self.sgn_m() * self.g
    }
}

/// Builds and validates the parameters of a type (i) model.
pub fn build_params(n: usize, p: usize, m: i64, g: f64) -> Result<ModelParams> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be >= 2")));
    }
    if p == 0 || p >= n {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must lie in 1..{}",
            n - 1
        )));
    }
    if gcd(n, p) != 1 {
        return Err(Error::InvalidParameter(format!(
            "p = {p} not coprime to n = {n}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(String::from("M must be nonzero")));
    }
    if !(g > 0.0) {
        return Err(Error::InvalidParameter(format!("g = {g} must be positive")));
    }
    let denom = n as f64 * g + m as f64;
    if denom <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "n g + M = {denom} must be positive"
        )));
    }
    let q = mod_inverse(p, n);
    let alpha = 2.0 * PI * p as f64 / denom;

    // gamma = alpha g / 2 pi must lie strictly inside the type (i) interval
    // on the side selected by sgn(M).
    let gamma = p as f64 * g / denom;
    let (lo, hi) = if m > 0 {
        (
            p as f64 / n as f64 - 1.0 / (n as f64 * q as f64),
            p as f64 / n as f64,
        )
    } else {
        (
            p as f64 / n as f64,
            p as f64 / n as f64 + 1.0 / (n as f64 * (n - q) as f64),
        )
    };
    if !(gamma > lo + 1e-12 && gamma < hi - 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "g = {g} lies outside the type (i) interval: alpha g / 2 pi = {gamma} not in ({lo}, {hi})"
        )));
    }
    // |M| >= 1 forces these, but they are part of the contract.
    let period = 2.0 * PI / alpha;
    if m > 0 && period <= q as f64 {
        return Err(Error::InvalidParameter(format!(
            "2 pi / alpha = {period} must exceed q = {q}"
        )));
    }
    if m < 0 && period <= (n - q) as f64 {
        return Err(Error::InvalidParameter(format!(
            "2 pi / alpha = {period} must exceed n - q = {}",
            n - q
        )));
    }

    let base = RootBase::new(n, p)?;
    Ok(ModelParams {
        n,
        p,
        q,
        m,
        g,
        alpha,
        base,
    })
}

/// Classification of a normalized coupling `gamma = alpha g / 2 pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    TypeI { p: usize, q: usize },
    TypeII,
    /// `gamma` sits on one of the finitely many excluded rationals
    /// (denominator at most n).
    Excluded,
}

/// Classifies `gamma` in `(0, 1)` as type (i), type (ii) or excluded.
pub fn classify_coupling(n: usize, gamma: f64) -> Result<Coupling> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} must lie in (0, 1)"
        )));
    }
    // The displayed boundary values are exactly the rationals of denominator
    // at most n: every type (i) interval endpoint a/b (in lowest terms) has
    // b <= n, and so do the punctures p/n.
    for b in 1..=n {
        for a in 0..=b {
            if (gamma - a as f64 / b as f64).abs() < 1e-12 {
                return Ok(Coupling::Excluded);
            }
        }
    }
    for p in 1..n {
        if gcd(n, p) != 1 {
            continue;
        }
        let q = mod_inverse(p, n);
        let center = p as f64 / n as f64;
        let lo = center - 1.0 / (n as f64 * q as f64);
        let hi = center + 1.0 / (n as f64 * (n - q) as f64);
        if (gamma > lo && gamma < center) || (gamma > center && gamma < hi) {
            return Ok(Coupling::TypeI { p, q });
        }
    }
    Ok(Coupling::TypeII)
}

/// The finite set of couplings at which an intermediate hopping coefficient
/// may be singular: `g = (1 - sgn(M) A + B 2pi/alpha) / C` over
/// `A = 0..|M|`, `B = 0..p-1`, `C = 1..n-1`.
pub fn excluded_g_values(params: &ModelParams) -> Vec<f64> {
    let period = params.period();
    let s = params.sgn_m();
    let mut vals: Vec<f64> = Vec::new();
    for a in 0..=params.abs_m() {
        for b in 0..params.p {
            for c in 1..params.n {
                let g = (1.0 - s * a as f64 + b as f64 * period) / c as f64;
                if !vals.iter().any(|v| (v - g).abs() < 1e-12) {
                    vals.push(g);
                }
            }
        }
    }
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    vals
}

/// Whether `g` matches a member of [`excluded_g_values`] within `tol`.
pub fn is_excluded_g(params: &ModelParams, tol: f64) -> bool {
    excluded_g_values(params)
        .iter()
        .any(|v| (v - params.g).abs() < tol)
}

/// The weighted sum of fundamental weights marking the minimal vertex of the
/// simplex: `rho_p = g (w_{1,p} + .. + w_{n-p,p}) + (g - 2pi/alpha)(w_{n-p+1,p} + .. + w_{n-1,p})`.
pub fn rho_p(params: &ModelParams) -> Vec<f64> {
    let mut out = vec![0.0; params.n];
    let period = params.period();
    for (j, w) in params.base.fundamental_weights.iter().enumerate() {
        let c = if j + 1 <= params.n - params.p {
            params.g
        } else {
            params.g - period
        };
        for (i, v) in w.embed().iter().enumerate() {
            out[i] += c * v;
        }
    }
    out
}

/// `rho_check_p(g') = g' (w_{1,p} + .. + w_{n-1,p})`, the periodized variant
/// of `rho_p` used by the eigenfunction construction.
pub fn rho_check_p(params: &ModelParams, signed_g: f64) -> Vec<f64> {
    let mut out = vec![0.0; params.n];
    for w in &params.base.fundamental_weights {
        for (i, v) in w.embed().iter().enumerate() {
            out[i] += signed_g * v;
        }
    }
    out
}

/// The standard-base half-sum analogue `rho(g') = g' (w_1 + .. + w_{n-1})`,
/// with j-th coordinate `g' (n + 1 - 2 j) / 2`.
pub fn rho_standard(n: usize, signed_g: f64) -> Vec<f64> {
    (1..=n)
        .map(|j| signed_g * (n as f64 + 1.0 - 2.0 * j as f64) / 2.0)
        .collect()
}

/// A point of the dominant-cone lattice, stored as coefficients
/// `(m_1, .., m_{n-1})` in the p-base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantIndex {
    pub m: Vec<i64>,
}

impl DominantIndex {
    pub fn zero(n: usize) -> Self {
        DominantIndex {
            m: vec![0; n - 1],
        }
    }

    pub fn level(&self) -> i64 {
        self.m.iter().sum()
    }

    /// The weight `sum_j m_j w_{j,p}` in the given base.
    pub fn weight(&self, base: &RootBase) -> Weight {
        self.m
            .iter()
            .zip(&base.fundamental_weights)
            .fold(Weight::zero(base.n), |acc, (&m, w)| acc.add(&w.scale(m)))
    }
}

/// The ordered lattice indexing the finite Hilbert space.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub points: Vec<DominantIndex>,
    index_of: BTreeMap<Vec<i64>, usize>,
}

impl Lattice {
    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn position(&self, m: &[i64]) -> Option<usize> {
        self.index_of.get(m).copied()
    }

}

/// Coefficients of `mu + nu` in the p-base, or `None` if `mu + nu` leaves
/// the truncated cone. `nu` must lie in the weight lattice.
pub fn shift_index(
    params: &ModelParams,
    mu: &DominantIndex,
    nu: &Weight,
) -> Option<DominantIndex> {
    let mut m = Vec::with_capacity(mu.m.len());
    let mut level = 0i64;
    for (mj, a) in mu.m.iter().zip(&params.base.simple_roots) {
        let step = a.dot_int(nu).ok()?;
        let v = mj + step;
        if v < 0 {
            return None;
        }
        level += v;
        m.push(v);
    }
    if level > params.abs_m() as i64 {
        return None;
    }
    Some(DominantIndex { m })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    num / den
}

/// The number of lattice points, `C(n - 1 + |M|, |M|)`.
pub fn lattice_cardinality(n: usize, abs_m: usize) -> u128 {
    binomial(n - 1 + abs_m, abs_m)
}

/// Enumerates `Lambda^+_{p,|M|}` in graded lexicographic order on
/// `(m_1, .., m_{n-1})`.
pub fn enumerate_lattice(params: &ModelParams) -> Lattice {
    let n = params.n;
    let cap = params.abs_m() as i64;
    let mut points: Vec<DominantIndex> = Vec::new();
    let mut stack = vec![0i64; n - 1];
    fill(&mut points, &mut stack, 0, cap);
    points.sort_by(|a, b| (a.level(), &a.m).cmp(&(b.level(), &b.m)));
    let index_of = points
        .iter()
        .enumerate()
        .map(|(i, pt)| (pt.m.clone(), i))
        .collect();
    let lat = Lattice { points, index_of };
    debug_assert_eq!(lat.dim() as u128, lattice_cardinality(n, params.abs_m()));
    lat
}

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

/// The embedded lattice point `rho_p + sgn(M) sum_j m_j w_{j,p}`.
pub fn lattice_point(params: &ModelParams, mu: &DominantIndex) -> Vec<f64> {
    let mut x = rho_p(params);
    let s = params.sgn_m();
    let w = mu.weight(&params.base);
    for (xi, wi) in x.iter_mut().zip(w.embed()) {
        *xi += s * wi;
    }
    x
}

/// The n simplex vertices `rho_p` and `rho_p + M w_{k,p}`.
pub fn vertices(params: &ModelParams) -> Vec<Vec<f64>> {
    let rho = rho_p(params);
    let mut out = vec![rho.clone()];
    for w in &params.base.fundamental_weights {
        out.push(
            rho.iter()
                .zip(w.embed())
                .map(|(r, wi)| r + params.m as f64 * wi)
                .collect(),
        );
    }
    out
}

/// Barycenter of the simplex vertices; strictly interior for every valid
/// model.
pub fn barycenter(params: &ModelParams) -> Vec<f64> {
    let verts = vertices(params);
    let n = params.n as f64;
    let mut out = vec![0.0; params.n];
    for v in &verts {
        for (o, vi) in out.iter_mut().zip(v) {
            *o += vi / n;
        }
    }
    out
}

/// Location of a point relative to the closed simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexLocation {
    Interior,
    /// Active facets: `0..n-2` label the simple-root facets, `n-1` the
    /// maximal-root facet.
    Boundary(Vec<usize>),
    Outside,
}

/// Classifies `x` against the closed simplex inequalities and the Weyl
/// alcove, with tolerance [`GEOM_TOL`].
pub fn in_simplex(params: &ModelParams, x: &[f64]) -> Result<SimplexLocation> {
    if x.len() != params.n {
        return Err(Error::DimensionMismatch {
            expected: params.n,
            got: x.len(),
        });
    }
    let sum: f64 = x.iter().sum();
    if sum.abs() > 1e-8 {
        return Err(Error::InvalidInput(format!(
            "coordinate sum {sum} is not zero"
        )));
    }
    let rho = rho_p(params);
    let diff: Vec<f64> = x.iter().zip(&rho).map(|(a, b)| a - b).collect();
    let s = params.sgn_m();
    let mut facets = Vec::new();
    let mut outside = false;

    for (j, a) in params.base.simple_roots.iter().enumerate() {
        let v = s * a.dot_f64(&diff);
        if v < -GEOM_TOL {
            outside = true;
        } else if v.abs() <= GEOM_TOL {
            facets.push(j);
        }
    }
    let vmax = s * params.base.maximal_root.dot_f64(&diff) - params.abs_m() as f64;
    if vmax > GEOM_TOL {
        outside = true;
    } else if vmax.abs() <= GEOM_TOL {
        facets.push(params.n - 1);
    }
    // alcove membership x_1 > .. > x_n > x_1 - 2pi/alpha is implied by the
    // facet system for valid parameters; check it to catch malformed input.
    for j in 0..params.n {
        let d = if j + 1 < params.n {
            x[j] - x[j + 1]
        } else {
            x[n_last(params.n)] - (x[0] - params.period())
        };
        if d < -GEOM_TOL {
            outside = true;
        }
    }
    if outside {
        Ok(SimplexLocation::Outside)
    } else if facets.is_empty() {
        Ok(SimplexLocation::Interior)
    } else {
        Ok(SimplexLocation::Boundary(facets))
    }
}

fn n_last(n: usize) -> usize {
    n - 1
}
