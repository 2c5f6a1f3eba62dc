//! Dense complex operators on ℂ^d.
//!
//! Finite-dimensional versions of the basic trace-class toolkit: adjoint,
//! positive-semidefiniteness, the square root of a PSD operator by its
//! binomial series, the absolute value |A| = √(A*A), traces against
//! arbitrary orthonormal bases, the canonical (singular value)
//! decomposition with the trace norm, and the trace-equals-eigenvalue-sum
//! check. Everything is `f64`/`Complex64`; value semantics throughout.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub mod eig;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Series cap for the PSD square root; reaching it is an error.
pub const SQRT_SERIES_CAP: usize = 10_000;

/// Singular values below this multiple of ‖A‖ are treated as zero.
const RANK_CUTOFF: f64 = 1e-12;

/// A dense operator on ℂ^d, entries in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("operator dimension must be >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for dimension {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("operator entries must be finite".into()));
        }
        Ok(DenseOperator { dim, entries })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut op = Self::zeros(dim)?;
        for i in 0..dim {
            op.entries[i * dim + i] = ONE;
        }
        Ok(op)
    }

    /// Diagonal operator from real entries.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut op = Self::zeros(dim)?;
        for (i, &d) in diag.iter().enumerate() {
            op.entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument("dimension mismatch in product".into()));
        }
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let aik = self.entries[i * d + k];
                if aik == ZERO {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += aik * other.entries[k * d + j];
                }
            }
        }
        DenseOperator::new(d, out)
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument("dimension mismatch in sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        DenseOperator::new(self.dim, entries)
    }

    pub fn sub(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument("dimension mismatch in difference".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        DenseOperator::new(self.dim, entries)
    }

    pub fn scale(&self, factor: Complex64) -> DenseOperator {
        DenseOperator {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::InvalidArgument("vector length mismatch".into()));
        }
        Ok((0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.entries[i * self.dim + j] * x[j])
                    .sum()
            })
            .collect())
    }
}

/// Inner product ⟨x, y⟩, conjugate-linear in the first slot.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// A list of d orthonormal vectors in ℂ^d.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    dim: usize,
    columns: Vec<Vec<Complex64>>,
}

impl OrthonormalBasis {
    /// Validates pairwise orthonormality within 1e-12.
    pub fn new(columns: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = columns.len();
        if dim == 0 || columns.iter().any(|c| c.len() != dim) {
            return Err(Error::InvalidArgument(
                "basis must consist of d vectors of length d".into(),
            ));
        }
        for i in 0..dim {
            for j in i..dim {
                let dot = inner(&columns[i], &columns[j]);
                let expected = if i == j { ONE } else { ZERO };
                if (dot - expected).norm() > 1e-12 {
                    return Err(Error::InvalidArgument(format!(
                        "vectors {i} and {j} are not orthonormal (deviation {:e})",
                        (dot - expected).norm()
                    )));
                }
            }
        }
        Ok(OrthonormalBasis { dim, columns })
    }

    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        let columns = (0..dim)
            .map(|j| {
                let mut e = vec![ZERO; dim];
                e[j] = ONE;
                e
            })
            .collect();
        Ok(OrthonormalBasis { dim, columns })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<Complex64>] {
        &self.columns
    }
}

/// Singular-value form A = Σ μ_n ⟨α_n, ·⟩ β_n with μ descending positive.
#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    pub mu: Vec<f64>,
    pub alpha: Vec<Vec<Complex64>>,
    pub beta: Vec<Vec<Complex64>>,
    pub rank: usize,
}

/// Conjugate transpose.
pub fn adjoint(a: &DenseOperator) -> DenseOperator {
    let d = a.dim;
    let mut entries = vec![ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            entries[j * d + i] = a.entries[i * d + j].conj();
        }
    }
    DenseOperator { dim: d, entries }
}

/// True iff A is Hermitian within tol and its spectrum is ≥ -tol·‖A‖.
pub fn is_psd(a: &DenseOperator, tol: f64) -> bool {
    let norm = a.frobenius_norm();
    let scale = norm.max(1.0);
    let asym = a.sub(&adjoint(a)).expect("same dimension").frobenius_norm();
    if asym > tol * scale {
        return false;
    }
    // symmetrize before the Hermitian solver to wash out the tol-level skew
    let herm = a.add(&adjoint(a)).expect("same dimension").scale(Complex64::new(0.5, 0.0));
    match eig::hermitian_eigen(&herm.entries, herm.dim) {
        Ok((eigs, _)) => eigs.iter().all(|&l| l >= -tol * scale),
        Err(_) => false,
    }
}

/// PSD square root by the binomial series of √(1-z).
///
/// A is scaled by its Frobenius norm s (an upper bound on the operator
/// norm), so M = I - A/s is PSD with spectrum in [0, 1] and
/// B = √s·(I + Σ_{j≥1} a_j M^j) with a_j the (all-negative, absolutely
/// summable) series coefficients. Truncation when the term norm falls
/// below tol/4; the cap of 10,000 terms is an error, signalling that the
/// conditioning of A does not support the requested tolerance.
pub fn sqrt_psd(a: &DenseOperator, tol: f64) -> Result<DenseOperator> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if !is_psd(a, tol.max(1e-10)) {
        return Err(Error::InvalidArgument(
            "sqrt_psd requires a positive-semidefinite input".into(),
        ));
    }
    let d = a.dim;
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return DenseOperator::zeros(d);
    }
    let scaled = a.scale(Complex64::new(1.0 / norm, 0.0));
    let m = DenseOperator::identity(d)?.sub(&scaled)?;

    let mut b = DenseOperator::identity(d)?;
    let mut power = DenseOperator::identity(d)?; // M^j
    let mut coeff = 1.0f64; // a_j, starting from a_0 = 1
    let mut converged = false;
    let mut prev_norm = f64::INFINITY;
    for j in 1..=SQRT_SERIES_CAP {
        power = power.mul(&m)?;
        coeff *= (j as f64 - 1.5) / j as f64; // a_j = a_{j-1}·(j - 3/2)/j
        let term = power.scale(Complex64::new(coeff, 0.0));
        b = b.add(&term)?;
        let norm = term.frobenius_norm();
        // stop once the geometric estimate of the whole remaining tail,
        // term·r/(1-r) with r the observed decay ratio, is below tol/4 —
        // the bare term size under-counts slowly decaying tails
        let ratio = (norm / prev_norm).min(0.999);
        if norm <= tol / 4.0 && norm * ratio / (1.0 - ratio) <= tol / 4.0 {
            converged = true;
            break;
        }
        prev_norm = norm;
    }
    if !converged {
        return Err(Error::IterationCap {
            cap: SQRT_SERIES_CAP,
            context: "summing the square-root series (input too ill-conditioned for tol)".into(),
        });
    }
    let b = b.scale(Complex64::new(norm.sqrt(), 0.0));

    let residual = b.mul(&b)?.sub(a)?.frobenius_norm();
    let allowed = tol * norm.max(1.0);
    if residual > allowed {
        return Err(Error::ResidualTooLarge {
            residual,
            tol: allowed,
        });
    }
    Ok(b)
}

/// |A| = √(A*A).
pub fn abs_op(a: &DenseOperator, tol: f64) -> Result<DenseOperator> {
    sqrt_psd(&adjoint(a).mul(a)?, tol)
}

/// Σ_n ⟨φ_n, A φ_n⟩ over the given orthonormal basis.
pub fn trace_diag(a: &DenseOperator, basis: &OrthonormalBasis) -> Result<Complex64> {
    if basis.dim != a.dim {
        return Err(Error::InvalidArgument("basis dimension mismatch".into()));
    }
    let mut total = ZERO;
    for phi in &basis.columns {
        total += inner(phi, &a.apply(phi)?);
    }
    Ok(total)
}

/// Canonical decomposition plus the trace norm Σ μ_n.
///
/// The α_n are the eigenvectors of A*A (descending eigenvalues λ_n),
/// μ_n = √λ_n, β_n = Aα_n/μ_n; singular values below 1e-12·‖A‖ are
/// truncated so the μ_n are strictly positive.
pub fn canonical_and_trace_norm(a: &DenseOperator) -> Result<(CanonicalDecomposition, f64)> {
    let gram = adjoint(a).mul(a)?;
    let (eigs, vecs) = eig::hermitian_eigen(&gram.entries, gram.dim)?;
    let norm = a.frobenius_norm();
    let cutoff = RANK_CUTOFF * norm;

    let mut mu = Vec::new();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for (lambda, v) in eigs.into_iter().zip(vecs) {
        let sigma = lambda.max(0.0).sqrt();
        if sigma <= cutoff {
            continue;
        }
        let av = a.apply(&v)?;
        beta.push(av.iter().map(|z| z / sigma).collect());
        alpha.push(v);
        mu.push(sigma);
    }
    let trace_norm: f64 = mu.iter().sum();
    let rank = mu.len();
    Ok((CanonicalDecomposition { mu, alpha, beta, rank }, trace_norm))
}

/// Checks Tr(A) = Σ eigenvalues (with algebraic multiplicity) within
/// tol·max(1, ‖A‖).
pub fn lidskii_check(a: &DenseOperator, tol: f64) -> Result<bool> {
    let eigs = eig::eigenvalues(&a.entries, a.dim)?;
    let eig_sum: Complex64 = eigs.iter().sum();
    let trace = trace_diag(a, &OrthonormalBasis::standard(a.dim)?)?;
    Ok((trace - eig_sum).norm() <= tol * a.frobenius_norm().max(1.0))
}

/// Deterministic random orthonormal basis: seeded complex Gaussian matrix,
/// orthonormalized by two passes of modified Gram–Schmidt.
pub fn random_orthonormal_basis(dim: usize, seed: u64) -> Result<OrthonormalBasis> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut columns: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))
                })
                .collect()
        })
        .collect();

    for _pass in 0..2 {
        for j in 0..dim {
            for i in 0..j {
                let proj = inner(&columns[i], &columns[j]);
                let prior = columns[i].clone();
                for (cj, pi) in columns[j].iter_mut().zip(&prior) {
                    *cj -= proj * pi;
                }
            }
            let norm: f64 = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                return Err(Error::ResidualTooLarge {
                    residual: norm,
                    tol: 1e-8,
                });
            }
            for cj in columns[j].iter_mut() {
                *cj /= norm;
            }
        }
    }
    OrthonormalBasis::new(columns)
}

/// Random matrix with i.i.d. complex Gaussian entries (test/demo helper).
pub fn random_operator(dim: usize, seed: u64) -> Result<DenseOperator> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
        .collect();
    DenseOperator::new(dim, entries)
}

/// Random PSD operator with spectrum bounded away from zero: U diag(σ) U*
/// with σ drawn uniformly from [lo, hi] (test/demo helper; the controlled
/// spectrum keeps the square-root series well conditioned).
pub fn random_psd_operator(dim: usize, seed: u64, lo: f64, hi: f64) -> Result<DenseOperator> {
    if !(0.0 < lo && lo <= hi) {
        return Err(Error::InvalidArgument(
            "spectrum bounds must satisfy 0 < lo <= hi".into(),
        ));
    }
    let basis = random_orthonormal_basis(dim, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    let d = dim;
    let mut entries = vec![ZERO; d * d];
    for col in basis.columns() {
        let sigma: f64 = lo + (hi - lo) * rand::Rng::gen::<f64>(&mut rng);
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] += col[i] * col[j].conj() * sigma;
            }
        }
    }
    DenseOperator::new(d, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn adjoint_of_identity_is_identity() {
        let id = DenseOperator::identity(3).unwrap();
        assert_eq!(adjoint(&id), id);
    }

    #[test]
    fn adjoint_is_the_conjugate_transpose() {
        let a = DenseOperator::new(2, vec![ZERO, c(0.0, 1.0), ZERO, ZERO]).unwrap();
        let expected = DenseOperator::new(2, vec![ZERO, ZERO, c(0.0, -1.0), ZERO]).unwrap();
        assert_eq!(adjoint(&a), expected);
        assert_eq!(adjoint(&adjoint(&a)), a);
    }

    #[test]
    fn adjoint_moves_across_the_inner_product() {
        for seed in 0..100u64 {
            let a = random_operator(8, seed).unwrap();
            let v: Vec<Complex64> = random_operator(8, seed + 1000)
                .unwrap()
                .entries()[..8]
                .to_vec();
            let w: Vec<Complex64> = random_operator(8, seed + 2000)
                .unwrap()
                .entries()[..8]
                .to_vec();
            let lhs = inner(&w, &a.apply(&v).unwrap());
            let rhs = inner(&adjoint(&a).apply(&w).unwrap(), &v);
            assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn psd_detection_on_diagonals_and_gram_matrices() {
        assert!(is_psd(&DenseOperator::identity(4).unwrap(), 1e-10));
        assert!(!is_psd(&DenseOperator::diagonal(&[1.0, -1.0]).unwrap(), 1e-10));
        for seed in 0..100u64 {
            let a = random_operator(8, seed).unwrap();
            let gram = adjoint(&a).mul(&a).unwrap();
            assert!(is_psd(&gram, 1e-10), "seed {seed}");
        }
    }

    #[test]
    fn sqrt_of_identity_and_diagonal() {
        let id = DenseOperator::identity(3).unwrap();
        let root = sqrt_psd(&id, 1e-10).unwrap();
        assert!(root.sub(&id).unwrap().frobenius_norm() < 1e-9);

        let a = DenseOperator::diagonal(&[4.0, 9.0]).unwrap();
        let root = sqrt_psd(&a, 1e-10).unwrap();
        let expected = DenseOperator::diagonal(&[2.0, 3.0]).unwrap();
        assert!(root.sub(&expected).unwrap().frobenius_norm() < 1e-8);
    }

    #[test]
    fn sqrt_matches_the_eigendecomposition_root() {
        for seed in 0..50u64 {
            let a = random_psd_operator(16, seed, 0.5, 2.0).unwrap();
            let series = sqrt_psd(&a, 1e-10).unwrap();
            // oracle: U diag(sqrt(lambda)) U*
            let (eigs, vecs) = eig::hermitian_eigen(a.entries(), 16).unwrap();
            let mut oracle = DenseOperator::zeros(16).unwrap();
            for (lambda, v) in eigs.iter().zip(&vecs) {
                let s = lambda.max(0.0).sqrt();
                for i in 0..16 {
                    for j in 0..16 {
                        let cur = oracle.get(i, j);
                        oracle.set(i, j, cur + v[i] * v[j].conj() * s);
                    }
                }
            }
            let dev = series.sub(&oracle).unwrap().frobenius_norm();
            assert!(dev <= 1e-8, "seed {seed}: deviation {dev:e}");
            assert!(is_psd(&series, 1e-9));
            // commutes with A
            let comm = series.mul(&a).unwrap().sub(&a.mul(&series).unwrap()).unwrap();
            assert!(comm.frobenius_norm() <= 1e-8 * a.frobenius_norm());
        }
    }

    #[test]
    fn sqrt_rejects_non_psd_input() {
        let a = DenseOperator::diagonal(&[1.0, -1.0]).unwrap();
        assert!(matches!(sqrt_psd(&a, 1e-8), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn abs_of_simple_operators() {
        let a = DenseOperator::diagonal(&[-2.0, 3.0]).unwrap();
        let expected = DenseOperator::diagonal(&[2.0, 3.0]).unwrap();
        assert!(abs_op(&a, 1e-10).unwrap().sub(&expected).unwrap().frobenius_norm() < 1e-8);

        // |A| of the nilpotent shift is diag(0, 1). The square-root series
        // converges only algebraically on singular inputs, so the series
        // route reports non-convergence honestly; the value is checked
        // through the canonical decomposition |A| = Σ μ_n α_n α_n* instead.
        let shift = DenseOperator::new(2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        assert!(matches!(
            abs_op(&shift, 1e-10),
            Err(Error::IterationCap { .. } | Error::ResidualTooLarge { .. })
        ));
        let (decomp, _) = canonical_and_trace_norm(&shift).unwrap();
        let expected = DenseOperator::diagonal(&[0.0, 1.0]).unwrap();
        let mut abs_from_svd = DenseOperator::zeros(2).unwrap();
        for (mu, alpha) in decomp.mu.iter().zip(&decomp.alpha) {
            for i in 0..2 {
                for j in 0..2 {
                    let cur = abs_from_svd.get(i, j);
                    abs_from_svd.set(i, j, cur + alpha[i] * alpha[j].conj() * *mu);
                }
            }
        }
        assert!(abs_from_svd.sub(&expected).unwrap().frobenius_norm() < 1e-10);

        // unitary U has |U| = I
        let u = random_orthonormal_basis(6, 7).unwrap();
        let mut entries = vec![ZERO; 36];
        for (j, col) in u.columns().iter().enumerate() {
            for i in 0..6 {
                entries[i * 6 + j] = col[i];
            }
        }
        let u = DenseOperator::new(6, entries).unwrap();
        let id = DenseOperator::identity(6).unwrap();
        assert!(abs_op(&u, 1e-10).unwrap().sub(&id).unwrap().frobenius_norm() < 1e-8);
    }

    #[test]
    fn trace_is_the_diagonal_sum_and_basis_invariant() {
        let a = DenseOperator::new(
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)],
        )
        .unwrap();
        let std = OrthonormalBasis::standard(2).unwrap();
        assert!((trace_diag(&a, &std).unwrap() - c(5.0, 0.0)).norm() < 1e-14);

        for seed in 0..20u64 {
            let a = random_operator(8, seed).unwrap();
            let std = OrthonormalBasis::standard(8).unwrap();
            let q = random_orthonormal_basis(8, seed + 500).unwrap();
            let t1 = trace_diag(&a, &std).unwrap();
            let t2 = trace_diag(&a, &q).unwrap();
            assert!((t1 - t2).norm() <= 1e-10 * t1.norm().max(1.0), "seed {seed}");
        }
    }

    #[test]
    fn trace_is_cyclic() {
        for seed in 0..20u64 {
            let a = random_operator(8, seed).unwrap();
            let b = random_operator(8, seed + 10_000).unwrap();
            let std = OrthonormalBasis::standard(8).unwrap();
            let tab = trace_diag(&a.mul(&b).unwrap(), &std).unwrap();
            let tba = trace_diag(&b.mul(&a).unwrap(), &std).unwrap();
            assert!((tab - tba).norm() <= 1e-10 * tab.norm().max(1.0));
        }
    }

    #[test]
    fn canonical_decomposition_of_degenerate_inputs() {
        let zero = DenseOperator::zeros(3).unwrap();
        let (decomp, norm) = canonical_and_trace_norm(&zero).unwrap();
        assert_eq!(decomp.rank, 0);
        assert_eq!(norm, 0.0);

        let shift = DenseOperator::new(2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        let (decomp, norm) = canonical_and_trace_norm(&shift).unwrap();
        assert_eq!(decomp.rank, 1);
        assert!((decomp.mu[0] - 1.0).abs() < 1e-12);
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_of_a_unitary_is_the_dimension() {
        let u = random_orthonormal_basis(8, 3).unwrap();
        let mut entries = vec![ZERO; 64];
        for (j, col) in u.columns().iter().enumerate() {
            for i in 0..8 {
                entries[i * 8 + j] = col[i];
            }
        }
        let u = DenseOperator::new(8, entries).unwrap();
        let (_, norm) = canonical_and_trace_norm(&u).unwrap();
        assert!((norm - 8.0).abs() < 1e-9);
    }

    #[test]
    fn canonical_decomposition_reconstructs_the_operator() {
        for seed in 0..10u64 {
            let a = random_operator(8, seed).unwrap();
            let (decomp, _) = canonical_and_trace_norm(&a).unwrap();
            let mut recon = DenseOperator::zeros(8).unwrap();
            for ((mu, alpha), beta) in decomp.mu.iter().zip(&decomp.alpha).zip(&decomp.beta) {
                for i in 0..8 {
                    for j in 0..8 {
                        let cur = recon.get(i, j);
                        recon.set(i, j, cur + beta[i] * alpha[j].conj() * *mu);
                    }
                }
            }
            let dev = recon.sub(&a).unwrap().frobenius_norm();
            assert!(dev <= 1e-10 * a.frobenius_norm(), "seed {seed}: {dev:e}");
            // mu strictly positive, non-increasing
            for w in decomp.mu.windows(2) {
                assert!(w[0] >= w[1] && w[1] > 0.0);
            }
        }
    }

    #[test]
    fn trace_norm_matches_trace_of_abs() {
        for seed in 0..10u64 {
            // controlled spectrum keeps the square-root series convergent
            let a = random_psd_operator(8, seed, 0.5, 2.0).unwrap();
            let (_, norm) = canonical_and_trace_norm(&a).unwrap();
            let abs = abs_op(&a, 1e-10).unwrap();
            let std = OrthonormalBasis::standard(8).unwrap();
            let tr = trace_diag(&abs, &std).unwrap();
            assert!((tr.re - norm).abs() <= 1e-8 * norm.max(1.0));
            assert!(tr.im.abs() <= 1e-10);
        }
    }

    #[test]
    fn trace_norm_triangle_inequality() {
        for seed in 0..20u64 {
            let a = random_operator(8, seed).unwrap();
            let b = random_operator(8, seed + 77).unwrap();
            let (_, na) = canonical_and_trace_norm(&a).unwrap();
            let (_, nb) = canonical_and_trace_norm(&b).unwrap();
            let (_, nab) = canonical_and_trace_norm(&a.add(&b).unwrap()).unwrap();
            assert!(nab <= na + nb + 1e-9);
        }
    }

    #[test]
    fn lidskii_on_fixed_and_random_operators() {
        let d = DenseOperator::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        assert!(lidskii_check(&d, 1e-10).unwrap());

        let nilpotent = DenseOperator::new(2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        assert!(lidskii_check(&nilpotent, 1e-10).unwrap());

        for seed in 0..100u64 {
            let a = random_operator(10, seed).unwrap();
            assert!(lidskii_check(&a, 1e-8).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn random_basis_is_deterministic_and_orthonormal() {
        let b1 = random_orthonormal_basis(8, 42).unwrap();
        let b2 = random_orthonormal_basis(8, 42).unwrap();
        for (c1, c2) in b1.columns().iter().zip(b2.columns()) {
            assert_eq!(c1, c2);
        }
        for dim in [2usize, 8, 32] {
            let basis = random_orthonormal_basis(dim, 11).unwrap();
            for i in 0..dim {
                for j in 0..dim {
                    let dot = inner(&basis.columns()[i], &basis.columns()[j]);
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((dot.norm() - expected).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn parseval_identity_holds_for_random_bases() {
        let basis = random_orthonormal_basis(16, 5).unwrap();
        let x: Vec<Complex64> = random_operator(16, 99).unwrap().entries()[..16].to_vec();
        let norm_sq: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let coeff_sq: f64 = basis
            .columns()
            .iter()
            .map(|phi| inner(phi, &x).norm_sqr())
            .sum();
        assert!((norm_sq - coeff_sq).abs() <= 1e-12 * norm_sq.max(1.0));
    }

    #[test]
    fn abs_trace_is_basis_independent() {
        for seed in 0..5u64 {
            let a = random_psd_operator(12, seed, 0.5, 2.0).unwrap();
            let abs = abs_op(&a, 1e-10).unwrap();
            let reference = trace_diag(&abs, &OrthonormalBasis::standard(12).unwrap()).unwrap();
            for basis_seed in 100..105u64 {
                let q = random_orthonormal_basis(12, basis_seed).unwrap();
                let t = trace_diag(&abs, &q).unwrap();
                assert!((t - reference).norm() <= 1e-9 * a.frobenius_norm().max(1.0));
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = DenseOperator::identity(3).unwrap();
        let basis = OrthonormalBasis::standard(2).unwrap();
        assert!(trace_diag(&a, &basis).is_err());
        assert!(DenseOperator::new(2, vec![ZERO; 3]).is_err());
    }
}
