//! Exact `A_{n-1}` root-system combinatorics in the zero-sum hyperplane:
//! p-dependent bases, fundamental weights, orbits and the dominance order.
//!
//! Weights are stored as integer vectors of n-scaled coordinates, so every
//! operation here is exact; floating point enters only through [`Weight::embed`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// A point of the weight lattice of `A_{n-1}` inside the zero-sum hyperplane.
///
/// Coordinate `i` equals `scaled[i] / n`; the scaled coordinates sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    n: usize,
    scaled: Vec<i64>,
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight {
            n,
            scaled: vec![0; n],
        }
    }

    /// Builds a weight from n-scaled coordinates; they must sum to zero.
    pub fn from_scaled(n: usize, scaled: Vec<i64>) -> Result<Self> {
        if scaled.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: scaled.len(),
            });
        }
        if scaled.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidInput(String::from(
                "scaled coordinates must sum to zero",
            )));
        }
        Ok(Weight { n, scaled })
    }

    /// The root `e_j - e_k` (0-indexed, reduced mod n).
    pub fn root(n: usize, j: usize, k: usize) -> Self {
        let (j, k) = (j % n, k % n);
        let mut scaled = vec![0i64; n];
        scaled[j] += n as i64;
        scaled[k] -= n as i64;
        Weight { n, scaled }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    pub fn is_zero(&self) -> bool {
        self.scaled.iter().all(|&s| s == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.n, other.n);
        Weight {
            n: self.n,
            scaled: self
                .scaled
                .iter()
                .zip(&other.scaled)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.n, other.n);
        Weight {
            n: self.n,
            scaled: self
                .scaled
                .iter()
                .zip(&other.scaled)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            n: self.n,
            scaled: self.scaled.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight {
            n: self.n,
            scaled: self.scaled.iter().map(|a| c * a).collect(),
        }
    }

    /// Exact inner product.
    pub fn dot(&self, other: &Weight) -> Ratio<i64> {
        debug_assert_eq!(self.n, other.n);
        let num: i128 = self
            .scaled
            .iter()
            .zip(&other.scaled)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        let den = (self.n * self.n) as i128;
        let r = Ratio::new(num, den);
        Ratio::new(*r.numer() as i64, *r.denom() as i64)
    }

    /// Inner product that must be an integer (e.g. pairing a root against an
    /// orbit weight).
    pub fn dot_int(&self, other: &Weight) -> Result<i64> {
        let d = self.dot(other);
        if d.is_integer() {
            Ok(d.to_integer())
        } else {
            Err(Error::InvalidInput(format!(
                "inner product {}/{} is not an integer",
                d.numer(),
                d.denom()
            )))
        }
    }

    /// Real coordinates.
    pub fn embed(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.scaled.iter().map(|&s| s as f64 / n).collect()
    }

    /// Real inner product with an arbitrary vector.
    pub fn dot_f64(&self, x: &[f64]) -> f64 {
        let n = self.n as f64;
        self.scaled
            .iter()
            .zip(x)
            .map(|(&s, &v)| s as f64 / n * v)
            .sum()
    }
}

/// A coordinate permutation of `{0, .., n-1}` acting on weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Sends coordinate `i` to slot `self.0[i]`.
    pub fn apply(&self, w: &Weight) -> Weight {
        let mut scaled = vec![0i64; w.n];
        for (i, &s) in w.scaled.iter().enumerate() {
            scaled[self.0[i]] = s;
        }
        Weight { n: w.n, scaled }
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        for (i, &v) in x.iter().enumerate() {
            out[self.0[i]] = v;
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0usize; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_coprime(n: usize, p: usize) -> Result<()> {
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
            "p = {p} is not coprime to n = {n}"
        )));
    }
    Ok(())
}

/// The p-dependent simple roots `a_{j,p} = e_j - e_{j+p}`, `j = 1..n-1`
/// (indices mod n).
pub fn simple_roots_p(n: usize, p: usize) -> Result<Vec<Weight>> {
    check_coprime(n, p)?;
    Ok((0..n - 1).map(|j| Weight::root(n, j, j + p)).collect())
}

/// Exact solve of the duality system `<a_{j,p}, w_k> = delta_{jk}` in the
/// zero-sum hyperplane.
pub fn fundamental_weights_p(n: usize, p: usize) -> Result<Vec<Weight>> {
    let simple = simple_roots_p(n, p)?;
    let mut weights = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        // n x n system: n-1 duality rows plus the zero-sum row.
        let mut mat: Vec<Vec<Ratio<i128>>> = Vec::with_capacity(n);
        let mut rhs: Vec<Ratio<i128>> = Vec::with_capacity(n);
        for (j, a) in simple.iter().enumerate() {
            mat.push(
                a.scaled
                    .iter()
                    .map(|&s| Ratio::new(s as i128, n as i128))
                    .collect(),
            );
            rhs.push(Ratio::from_integer(if j == k { 1 } else { 0 }));
        }
        mat.push(vec![Ratio::from_integer(1); n]);
        rhs.push(Ratio::from_integer(0));

        let sol = solve_exact(mat, rhs)?;
        let scaled = sol
            .iter()
            .map(|r| {
                let s = r * Ratio::from_integer(n as i128);
                debug_assert!(s.is_integer());
                s.to_integer() as i64
            })
            .collect();
        weights.push(Weight::from_scaled(n, scaled)?);
    }
    Ok(weights)
}

fn solve_exact(mut mat: Vec<Vec<Ratio<i128>>>, mut rhs: Vec<Ratio<i128>>) -> Result<Vec<Ratio<i128>>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| mat[r][col] != Ratio::from_integer(0))
            .ok_or_else(|| Error::InvalidInput(String::from("singular duality system")))?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = mat[col][col].recip();
        for c in col..n {
            mat[col][c] = mat[col][c] * inv;
        }
        rhs[col] = rhs[col] * inv;
        for r in 0..n {
            if r != col && mat[r][col] != Ratio::from_integer(0) {
                let f = mat[r][col];
                for c in col..n {
                    let v = mat[col][c];
                    mat[r][c] = mat[r][c] - f * v;
                }
                let v = rhs[col];
                rhs[r] = rhs[r] - f * v;
            }
        }
    }
    Ok(rhs)
}

/// A p-dependent base of `A_{n-1}` together with its fundamental weights and
/// maximal root.
#[derive(Debug, Clone)]
pub struct RootBase {
    pub n: usize,
    pub p: usize,
    pub simple_roots: Vec<Weight>,
    pub fundamental_weights: Vec<Weight>,
    pub maximal_root: Weight,
}

impl RootBase {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        let simple_roots = simple_roots_p(n, p)?;
        let fundamental_weights = fundamental_weights_p(n, p)?;
        let maximal_root = simple_roots
            .iter()
            .fold(Weight::zero(n), |acc, a| acc.add(a));
        debug_assert_eq!(maximal_root, Weight::root(n, p - 1, n - 1));
        Ok(RootBase {
            n,
            p,
            simple_roots,
            fundamental_weights,
            maximal_root,
        })
    }

    /// Expansion coefficients of `w` in the simple roots, if `w` lies in the
    /// root lattice.
    pub fn root_coefficients(&self, w: &Weight) -> Option<Vec<i64>> {
        let mut coeffs = Vec::with_capacity(self.n - 1);
        for omega in &self.fundamental_weights {
            let c = w.dot(omega);
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(coeffs)
    }
}

/// Index sets `J` of size `r` in lexicographic order.
pub fn index_sets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    if r == 0 {
        return vec![vec![]];
    }
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        // next lexicographic r-subset of 0..n
        let mut i = r as isize - 1;
        while i >= 0 && current[i as usize] == i as usize + n - r {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        current[i] += 1;
        for j in i + 1..r {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// The orbit weight attached to an index set `J` of size `r`:
/// `sum_{j in J} e_j - (r/n)(e_1 + .. + e_n)`.
pub fn orbit_weight(n: usize, set: &[usize]) -> Weight {
    let r = set.len() as i64;
    let mut scaled = vec![-r; n];
    for &j in set {
        scaled[j] += n as i64;
    }
    Weight { n, scaled }
}

/// The `S_n`-orbit of the fundamental weight `w_r`, ordered lexicographically
/// on the index set `J`.
pub fn orbit(n: usize, r: usize) -> Result<Vec<Weight>> {
    if r == 0 || r >= n {
        return Err(Error::InvalidParameter(format!(
            "orbit label r = {r} must lie in 1..{}",
            n - 1
        )));
    }
    Ok(index_sets(n, r)
        .iter()
        .map(|set| orbit_weight(n, set))
        .collect())
}

/// The coordinate permutation identifying the p-dependent dominant cone with
/// the standard one: `sigma_p({w_{j,p}}) = {w_j}`.
///
/// In 1-indexed terms it sends `i` to `i q mod n`, with `q` the inverse of
/// `p` mod `n`.
pub fn sigma_p(n: usize, p: usize) -> Result<Perm> {
    check_coprime(n, p)?;
    let q = mod_inverse(p, n);
    let perm = Perm((0..n).map(|i| ((i + 1) * q - 1) % n).collect());
    Ok(perm)
}

/// Multiplicative inverse of `p` modulo `n` (requires gcd(n,p) = 1).
pub fn mod_inverse(p: usize, n: usize) -> usize {
    (1..n)
        .find(|&q| (p * q) % n == 1)
        .expect("p must be invertible mod n")
}

/// Dominance order: `mu <= la` iff `la - mu` is a non-negative integer
/// combination of the base's simple roots.
pub fn dominance_leq(mu: &Weight, la: &Weight, base: &RootBase) -> bool {
    match base.root_coefficients(&la.sub(mu)) {
        Some(coeffs) => coeffs.iter().all(|&c| c >= 0),
        None => false,
    }
}

/// A positive root of the p-dependent base together with its decomposition
/// into p-simple roots.
#[derive(Debug, Clone)]
pub struct PositiveRoot {
    pub root: Weight,
    /// 0-indexed labels `i` with the root equal to the sum of `a_{i+1,p}`.
    pub indices: Vec<usize>,
    /// Number of decomposition indices `i` (1-indexed) with `n-p < i <= n-1`;
    /// each contributes a `-2pi/alpha` correction to lattice pairings.
    pub wrap_count: usize,
}

/// All `n(n-1)/2` positive roots of `A_{n-1,p}^+`, each as a chain of
/// p-simple roots.
pub fn positive_roots_p(n: usize, p: usize) -> Result<Vec<PositiveRoot>> {
    check_coprime(n, p)?;
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for start in 0..n {
        for len in 1..n {
            // chain start -> start + len*p, using simple roots a_{i,p} only
            let indices: Vec<usize> = (0..len).map(|l| (start + l * p) % n).collect();
            if indices.contains(&(n - 1)) {
                continue; // would need a_{n,p}, not a simple root
            }
            let end = (start + len * p) % n;
            let root = Weight::root(n, start, end);
            let wrap_count = indices.iter().filter(|&&i| i + 1 > n - p).count();
            out.push(PositiveRoot {
                root,
                indices,
                wrap_count,
            });
        }
    }
    debug_assert_eq!(out.len(), n * (n - 1) / 2);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots_standard_base() {
        let roots = simple_roots_p(4, 1).unwrap();
        assert_eq!(roots[0], Weight::root(4, 0, 1));
        assert_eq!(roots[2], Weight::root(4, 2, 3));
    }

    #[test]
    fn simple_roots_wrap_around() {
        // n=3, p=2: {e_1 - e_3, e_2 - e_1}
        let roots = simple_roots_p(3, 2).unwrap();
        assert_eq!(roots[0], Weight::root(3, 0, 2));
        assert_eq!(roots[1], Weight::root(3, 1, 0));
        // n=4, p=3: a_{1,3} = e_1 - e_4
        let roots = simple_roots_p(4, 3).unwrap();
        assert_eq!(roots[0], Weight::root(4, 0, 3));
    }

    #[test]
    fn non_coprime_rejected() {
        assert!(matches!(
            simple_roots_p(4, 2),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(sigma_p(6, 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn fundamental_weight_closed_formula_p1() {
        // w_k = e_1 + .. + e_k - (k/n)(e_1 + .. + e_n)
        for n in 2..=6 {
            let ws = fundamental_weights_p(n, 1).unwrap();
            for (k, w) in ws.iter().enumerate() {
                let mut set: Vec<usize> = (0..=k).collect();
                set.truncate(k + 1);
                assert_eq!(*w, orbit_weight(n, &set));
            }
        }
    }

    #[test]
    fn fundamental_weight_n3_p2() {
        let ws = fundamental_weights_p(3, 2).unwrap();
        assert_eq!(ws[0], Weight::from_scaled(3, vec![1, 1, -2]).unwrap());
    }

    #[test]
    fn duality_property() {
        for (n, p) in [(3, 1), (3, 2), (4, 3), (5, 2), (5, 3), (7, 4)] {
            let roots = simple_roots_p(n, p).unwrap();
            let ws = fundamental_weights_p(n, p).unwrap();
            for (j, a) in roots.iter().enumerate() {
                for (k, w) in ws.iter().enumerate() {
                    let expect = if j == k { 1 } else { 0 };
                    assert_eq!(a.dot_int(w).unwrap(), expect, "n={n} p={p} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn maximal_root_identity() {
        // a_{1,p} + .. + a_{n-1,p} = -(e_n - e_p)
        for (n, p) in [(3, 1), (3, 2), (4, 3), (5, 2)] {
            let base = RootBase::new(n, p).unwrap();
            assert_eq!(base.maximal_root, Weight::root(n, p - 1, n - 1));
        }
    }

    #[test]
    fn orbit_sizes_and_elements() {
        let orb = orbit(3, 1).unwrap();
        assert_eq!(orb.len(), 3);
        let base = RootBase::new(3, 1).unwrap();
        let w1 = &base.fundamental_weights[0];
        let a1 = &base.simple_roots[0];
        let a2 = &base.simple_roots[1];
        assert_eq!(orb[0], w1.clone());
        assert_eq!(orb[1], w1.sub(a1));
        assert_eq!(orb[2], w1.sub(a1).sub(a2));
        for (n, r) in [(4usize, 2usize), (5, 2), (5, 4), (6, 3)] {
            let orb = orbit(n, r).unwrap();
            let binom = index_sets(n, r).len();
            assert_eq!(orb.len(), binom);
        }
    }

    #[test]
    fn omega_n_minus_r_in_negated_orbit() {
        for (n, r) in [(3usize, 1usize), (4, 1), (4, 2), (5, 2)] {
            let ws = fundamental_weights_p(n, 1).unwrap();
            let target = ws[n - r - 1].clone();
            let found = orbit(n, r)
                .unwrap()
                .iter()
                .any(|nu| nu.neg() == target);
            assert!(found, "w_{} not in orbit of -w_{}", n - r, r);
        }
    }

    #[test]
    fn sigma_p_basics() {
        assert!(sigma_p(5, 1).unwrap().is_identity());
        let s = sigma_p(3, 2).unwrap();
        assert_eq!(s.0, vec![1, 0, 2]);
    }

    #[test]
    fn sigma_p_maps_weight_sets() {
        for (n, p) in [(3usize, 2usize), (4, 3), (5, 2), (5, 3), (7, 3)] {
            let s = sigma_p(n, p).unwrap();
            let wp = fundamental_weights_p(n, p).unwrap();
            let w1 = fundamental_weights_p(n, 1).unwrap();
            for w in &wp {
                let image = s.apply(w);
                assert!(w1.contains(&image), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let base = RootBase::new(3, 1).unwrap();
        let w1 = base.fundamental_weights[0].clone();
        let w2 = base.fundamental_weights[1].clone();
        assert!(dominance_leq(&w2, &w1.scale(2), &base)); // 2w_1 - w_2 = a_1
        assert!(!dominance_leq(&w1, &w2, &base)); // different root-lattice coset
        assert!(dominance_leq(&w2, &w2, &base));
    }

    #[test]
    fn positive_roots_decompose() {
        for (n, p) in [(3usize, 1usize), (3, 2), (4, 3), (5, 2), (5, 3)] {
            let roots = positive_roots_p(n, p).unwrap();
            assert_eq!(roots.len(), n * (n - 1) / 2);
            let simple = simple_roots_p(n, p).unwrap();
            for pr in &roots {
                let sum = pr
                    .indices
                    .iter()
                    .fold(Weight::zero(n), |acc, &i| acc.add(&simple[i]));
                assert_eq!(sum, pr.root);
                assert!(pr.wrap_count < p.max(1));
            }
        }
    }

    #[test]
    fn positive_roots_p1_consecutive() {
        let roots = positive_roots_p(4, 1).unwrap();
        for pr in &roots {
            assert_eq!(pr.wrap_count, 0);
            // indices are consecutive
            for w in pr.indices.windows(2) {
                assert_eq!(w[1], w[0] + 1);
            }
        }
    }

    #[test]
    fn positive_roots_n3_p2_chain() {
        // e_2 - e_3 = a_{2,2} + a_{1,2}, with one wrapped index
        let roots = positive_roots_p(3, 2).unwrap();
        let target = Weight::root(3, 1, 2);
        let pr = roots.iter().find(|pr| pr.root == target).unwrap();
        let mut sorted = pr.indices.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
        assert_eq!(pr.wrap_count, 1);
    }
}
