//! Internal dense eigensolvers.
//!
//! Two primitives back the operator-level routines: a cyclic Jacobi
//! eigendecomposition for Hermitian matrices (eigenvalues with orthonormal
//! eigenvectors) and a Hessenberg + shifted-QR iteration for the
//! eigenvalues of a general complex matrix (with algebraic multiplicity,
//! no vectors). Both carry a residual contract of about 1e-10·‖A‖ and
//! report non-convergence as an error instead of returning junk.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues (descending) and matching orthonormal eigenvectors of a
/// Hermitian matrix, by cyclic Jacobi rotations.
pub fn hermitian_eigen(entries: &[Complex64], dim: usize) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    assert_eq!(entries.len(), dim * dim);
    let mut h = entries.to_vec();
    let mut v = vec![ZERO; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = ONE;
    }

    let norm: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || dim == 1 {
        let eigs = (0..dim).map(|i| h[i * dim + i].re).collect();
        return Ok((eigs, columns_of(&v, dim)));
    }
    let off_tol = 1e-14 * norm;

    const MAX_SWEEPS: usize = 60;
    for sweep in 0..=MAX_SWEEPS {
        let off: f64 = (0..dim)
            .flat_map(|p| ((p + 1)..dim).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * h[p * dim + q].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= off_tol {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::EigNonConvergence { iterations: sweep });
        }

        for p in 0..dim {
            for q in (p + 1)..dim {
                let gamma = h[p * dim + q];
                if gamma.norm() <= off_tol / (dim as f64) {
                    continue;
                }
                // rotation J: identity except the (p,q) block [[c, s·x], [-s·x̄, c]]
                // with x = γ/|γ|; t solves t² - 2τt - 1 = 0, smaller root
                let alpha = h[p * dim + p].re;
                let beta = h[q * dim + q].re;
                let g = gamma.norm();
                let x = gamma / g;
                let tau = (alpha - beta) / (2.0 * g);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sx = x * s;

                // columns of H: col_p ← c·col_p - s·x̄·col_q, col_q ← s·x·col_p + c·col_q
                for i in 0..dim {
                    let hip = h[i * dim + p];
                    let hiq = h[i * dim + q];
                    h[i * dim + p] = hip * c - hiq * sx.conj();
                    h[i * dim + q] = hip * sx + hiq * c;
                }
                // rows of H: row_p ← c·row_p - s·x·row_q, row_q ← s·x̄·row_p + c·row_q
                for j in 0..dim {
                    let hpj = h[p * dim + j];
                    let hqj = h[q * dim + j];
                    h[p * dim + j] = hpj * c - hqj * sx;
                    h[q * dim + j] = hpj * sx.conj() + hqj * c;
                }
                // restore exact Hermitian structure on the rotated pair
                h[p * dim + q] = ZERO;
                h[q * dim + p] = ZERO;
                h[p * dim + p] = Complex64::new(h[p * dim + p].re, 0.0);
                h[q * dim + q] = Complex64::new(h[q * dim + q].re, 0.0);

                // accumulate eigenvectors: V ← V·J
                for i in 0..dim {
                    let vip = v[i * dim + p];
                    let viq = v[i * dim + q];
                    v[i * dim + p] = vip * c - viq * sx.conj();
                    v[i * dim + q] = vip * sx + viq * c;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..dim).map(|i| (h[i * dim + i].re, i)).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let eigs: Vec<f64> = pairs.iter().map(|&(e, _)| e).collect();
    let cols = columns_of(&v, dim);
    let vecs: Vec<Vec<Complex64>> = pairs.iter().map(|&(_, i)| cols[i].clone()).collect();
    Ok((eigs, vecs))
}

fn columns_of(v: &[Complex64], dim: usize) -> Vec<Vec<Complex64>> {
    (0..dim)
        .map(|j| (0..dim).map(|i| v[i * dim + j]).collect())
        .collect()
}

/// Eigenvalues of a general complex matrix, repeated by algebraic
/// multiplicity, via Householder Hessenberg reduction and Wilkinson-shifted
/// QR iteration with Givens rotations.
pub fn eigenvalues(entries: &[Complex64], dim: usize) -> Result<Vec<Complex64>> {
    assert_eq!(entries.len(), dim * dim);
    if dim == 0 {
        return Ok(vec![]);
    }
    let mut h = entries.to_vec();
    let n = dim;
    let scale: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(vec![ZERO; n]);
    }

    hessenberg_in_place(&mut h, n);

    let eps = 1e-15;
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter_budget = 60 * n.max(1);

    'outer: loop {
        // deflate tiny subdiagonals inside [0, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let local = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if sub <= eps * local.max(scale * 1e-3) {
                h[lo * n + lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eigs.push(h[hi * n + hi]);
            if hi == 0 {
                break 'outer;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig2(
                h[lo * n + lo],
                h[lo * n + hi],
                h[hi * n + lo],
                h[hi * n + hi],
            );
            eigs.push(l1);
            eigs.push(l2);
            if lo == 0 {
                break 'outer;
            }
            hi = lo - 1;
            continue;
        }

        if iter_budget == 0 {
            return Err(Error::EigNonConvergence { iterations: 60 * n });
        }
        iter_budget -= 1;

        // Wilkinson shift: trailing 2x2 eigenvalue nearest H[hi][hi]
        let (l1, l2) = eig2(
            h[(hi - 1) * n + hi - 1],
            h[(hi - 1) * n + hi],
            h[hi * n + hi - 1],
            h[hi * n + hi],
        );
        let target = h[hi * n + hi];
        let shift = if (l1 - target).norm() <= (l2 - target).norm() {
            l1
        } else {
            l2
        };

        // explicit single shift: H - σI = QR (Givens), H ← RQ + σI on [lo, hi]
        for d in lo..=hi {
            h[d * n + d] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[k * n + k], h[(k + 1) * n + k]);
            // column k-1 holds the subdiagonal entry of row k; include it
            let col_lo = if k > lo { k - 1 } else { lo };
            apply_givens_rows(&mut h, n, k, k + 1, c, s, col_lo, hi);
            h[(k + 1) * n + k] = ZERO;
            rotations.push((k, c, s));
        }
        for &(k, c, s) in &rotations {
            apply_givens_cols(&mut h, n, k, k + 1, c, s, lo, (k + 2).min(hi));
        }
        for d in lo..=hi {
            h[d * n + d] += shift;
        }
    }

    Ok(eigs)
}

/// Reduce to upper Hessenberg form by Householder reflectors (similarity).
fn hessenberg_in_place(h: &mut [Complex64], n: usize) {
    for j in 0..n.saturating_sub(2) {
        // reflector annihilating h[j+2.., j]
        let col: Vec<Complex64> = ((j + 1)..n).map(|i| h[i * n + j]).collect();
        let norm_x: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = col[0];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;
        let mut v = col;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }

        // left: rows j+1..n, all columns — H ← (I - 2vv*/v*v) H
        for c in 0..n {
            let mut dot = ZERO;
            for (r, vr) in v.iter().enumerate() {
                dot += vr.conj() * h[(j + 1 + r) * n + c];
            }
            let f = dot * (2.0 / vnorm2);
            for (r, vr) in v.iter().enumerate() {
                h[(j + 1 + r) * n + c] -= vr * f;
            }
        }
        // right: columns j+1..n, all rows — H ← H (I - 2vv*/v*v)
        for r in 0..n {
            let mut dot = ZERO;
            for (c, vc) in v.iter().enumerate() {
                dot += h[r * n + j + 1 + c] * vc;
            }
            let f = dot * (2.0 / vnorm2);
            for (c, vc) in v.iter().enumerate() {
                h[r * n + j + 1 + c] -= f * vc.conj();
            }
        }
        // enforce the exact zeros the reflector produced
        h[(j + 1) * n + j] = alpha;
        for i in (j + 2)..n {
            h[i * n + j] = ZERO;
        }
    }
}

/// Complex Givens rotation with [c, s; -s̄, c]·[a; b] = [r; 0], c real.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b.norm() == 0.0 {
        return (1.0, ZERO);
    }
    if a.norm() == 0.0 {
        return (0.0, ONE);
    }
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

fn apply_givens_rows(
    h: &mut [Complex64],
    n: usize,
    r1: usize,
    r2: usize,
    c: f64,
    s: Complex64,
    col_lo: usize,
    col_hi: usize,
) {
    for j in col_lo..=col_hi {
        let a = h[r1 * n + j];
        let b = h[r2 * n + j];
        h[r1 * n + j] = a * c + s * b;
        h[r2 * n + j] = -s.conj() * a + b * c;
    }
}

fn apply_givens_cols(
    h: &mut [Complex64],
    n: usize,
    c1: usize,
    c2: usize,
    c: f64,
    s: Complex64,
    row_lo: usize,
    row_hi: usize,
) {
    for i in row_lo..=row_hi {
        let a = h[i * n + c1];
        let b = h[i * n + c2];
        h[i * n + c1] = a * c + b * s.conj();
        h[i * n + c2] = -(a * s) + b * c;
    }
}

/// Eigenvalues of a complex 2×2 matrix [[a, b], [c, d]].
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    (half_tr + disc, half_tr - disc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_diagonal_is_its_own_decomposition() {
        let m = vec![c(3.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)];
        let (eigs, vecs) = hermitian_eigen(&m, 2).unwrap();
        assert!((eigs[0] - 3.0).abs() < 1e-12 && (eigs[1] + 1.0).abs() < 1e-12);
        assert!((vecs[0][0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_pauli_y_has_unit_eigenvalues() {
        // [[0, -i], [i, 0]] has eigenvalues ±1
        let m = vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO];
        let (eigs, vecs) = hermitian_eigen(&m, 2).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] + 1.0).abs() < 1e-12);
        // residual ‖Hv - λv‖ for the top pair
        let v = &vecs[0];
        let hv = [m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]];
        assert!((hv[0] - v[0]).norm() < 1e-12 && (hv[1] - v[1]).norm() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_residual_on_seeded_matrix() {
        // H = B + B* from a fixed pseudo-random B
        let n = 12usize;
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let b: Vec<Complex64> = (0..n * n).map(|_| c(next(), next())).collect();
        let mut h = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                h[i * n + j] = b[i * n + j] + b[j * n + i].conj();
            }
        }
        let (eigs, vecs) = hermitian_eigen(&h, n).unwrap();
        let norm: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (lambda, v) in eigs.iter().zip(&vecs) {
            let mut res = 0.0f64;
            for i in 0..n {
                let mut hv = ZERO;
                for j in 0..n {
                    hv += h[i * n + j] * v[j];
                }
                res += (hv - v[i] * *lambda).norm_sqr();
            }
            assert!(res.sqrt() <= 1e-10 * norm, "residual {} too large", res.sqrt());
        }
        // eigenvectors orthonormal
        for a in 0..n {
            for bq in a..n {
                let dot: Complex64 = (0..n).map(|i| vecs[a][i].conj() * vecs[bq][i]).sum();
                let expected = if a == bq { 1.0 } else { 0.0 };
                assert!((dot.norm() - expected).abs() < 1e-10);
            }
        }
        // trace preserved
        let tr: f64 = (0..n).map(|i| h[i * n + i].re).sum();
        let sum: f64 = eigs.iter().sum();
        assert!((tr - sum).abs() < 1e-10 * norm.max(1.0));
    }

    #[test]
    fn general_eigenvalues_of_triangular_matrix_are_the_diagonal() {
        let m = vec![
            c(1.0, 2.0),
            c(5.0, -1.0),
            c(2.0, 2.0),
            ZERO,
            c(-3.0, 0.5),
            c(7.0, 0.0),
            ZERO,
            ZERO,
            c(0.25, -4.0),
        ];
        let mut eigs = eigenvalues(&m, 3).unwrap();
        eigs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let mut expected = [c(1.0, 2.0), c(-3.0, 0.5), c(0.25, -4.0)];
        expected.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (got, want) in eigs.iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn general_eigenvalues_sum_to_trace_on_seeded_matrix() {
        let n = 10usize;
        let mut state = 0x13198A2E03707344u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let m: Vec<Complex64> = (0..n * n).map(|_| c(next(), next())).collect();
        let eigs = eigenvalues(&m, n).unwrap();
        assert_eq!(eigs.len(), n);
        let tr: Complex64 = (0..n).map(|i| m[i * n + i]).sum();
        let sum: Complex64 = eigs.iter().sum();
        assert!((tr - sum).norm() < 1e-9, "trace {tr} vs eigen sum {sum}");
        // determinant check against product of eigenvalues via LU-free
        // route: compare char poly at 0 is overkill; the trace identity plus
        // the triangular test above pin the solver adequately here.
    }

    #[test]
    fn nilpotent_matrix_has_all_zero_eigenvalues() {
        let m = vec![ZERO, ONE, ZERO, ZERO];
        let eigs = eigenvalues(&m, 2).unwrap();
        for e in eigs {
            assert!(e.norm() < 1e-12);
        }
    }
}
