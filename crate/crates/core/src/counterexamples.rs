//! Basis-dependent diagonal sums on (truncations of) l².
//!
//! Three operators whose diagonal sums Σ⟨basis_j, A·basis_j⟩ misbehave:
//! the identity (diverges), the alternating-sign diagonal (oscillates),
//! and the left shift, which sums to 0 against the standard basis but to
//! -1 against the orthonormal family
//! ψ_n = (1/√(n(n+1)))(φ_1 + … + φ_n − n·φ_{n+1}) — the executable witness
//! that the shift has no basis-independent trace. Vectors are finite
//! truncations; the shift acts exactly on them because each ψ_n has finite
//! support.

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// One of the diagonal-sum demonstrations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    /// Σ⟨φ_j, I·φ_j⟩ = j: diverges to ∞.
    Identity,
    /// Diagonal entries (-1)^j: partial sums oscillate between -1 and 0.
    Alternating,
    /// Left shift against the standard basis: every summand is 0.
    LeftShiftStandard,
    /// Left shift against the ψ basis: partial sums -(1 - 1/(j+1)) → -1.
    LeftShiftPsi,
}

/// The vector ψ_n, stored as its n+1 nonzero standard coordinates.
#[derive(Clone, Debug)]
pub struct PsiVector<F> {
    pub index: usize,
    pub coefficients: Vec<F>,
}

/// ψ_n = (1/√(n(n+1)))(φ_1 + … + φ_n − n·φ_{n+1}), from the closed form.
pub fn psi_vector<F: Float + FromPrimitive>(n: usize) -> Result<PsiVector<F>> {
    if n == 0 {
        return Err(Error::InvalidArgument("psi index must be at least 1".into()));
    }
    let nf = F::from_usize(n).ok_or_else(|| {
        Error::Overflow("psi index not representable in the scalar type".into())
    })?;
    let scale = (nf * (nf + F::one())).sqrt().recip();
    let mut coefficients = vec![scale; n + 1];
    coefficients[n] = -nf * scale;
    Ok(PsiVector {
        index: n,
        coefficients,
    })
}

/// ⟨ψ_j, L·ψ_j⟩ by explicit shift-and-dot: (Lx)_i = x_{i+1}.
fn left_shift_psi_diagonal<F: Float + FromPrimitive>(j: usize) -> Result<F> {
    let psi = psi_vector::<F>(j)?;
    let x = &psi.coefficients;
    let mut acc = CompensatedSum::new();
    for i in 0..x.len() - 1 {
        acc.add(x[i] * x[i + 1]);
    }
    Ok(acc.total())
}

/// First N partial sums of Σ_{j≤N} ⟨basis_j, A·basis_j⟩ for the chosen
/// demonstration. The shift summands are computed by genuine shift-and-dot
/// products, not from their closed forms.
pub fn diag_partial_sums<F: Float + FromPrimitive>(
    example: Example,
    terms: usize,
) -> Result<Vec<F>> {
    if terms == 0 {
        return Err(Error::InvalidArgument("need at least one term".into()));
    }
    let mut acc = CompensatedSum::new();
    let mut sums = Vec::with_capacity(terms);
    for j in 1..=terms {
        let summand = match example {
            Example::Identity => F::one(),
            Example::Alternating => {
                if j % 2 == 1 {
                    -F::one()
                } else {
                    F::one()
                }
            }
            // ⟨φ_j, Lφ_j⟩: φ_j shifted left has no overlap with φ_j
            Example::LeftShiftStandard => F::zero(),
            Example::LeftShiftPsi => left_shift_psi_diagonal(j)?,
        };
        acc.add(summand);
        sums.push(acc.total());
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inner(a: &[f64], b: &[f64]) -> f64 {
        let len = a.len().min(b.len());
        (0..len).map(|i| a[i] * b[i]).sum()
    }

    #[test]
    fn first_two_psi_vectors_match_their_closed_patterns() {
        let psi1 = psi_vector::<f64>(1).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((psi1.coefficients[0] - s).abs() < 1e-15);
        assert!((psi1.coefficients[1] + s).abs() < 1e-15);

        let psi2 = psi_vector::<f64>(2).unwrap();
        let s = 1.0 / 6f64.sqrt();
        assert!((psi2.coefficients[0] - s).abs() < 1e-15);
        assert!((psi2.coefficients[1] - s).abs() < 1e-15);
        assert!((psi2.coefficients[2] + 2.0 * s).abs() < 1e-15);
    }

    #[test]
    fn psi_family_is_orthonormal() {
        let vectors: Vec<_> = (1..=200).map(|n| psi_vector::<f64>(n).unwrap()).collect();
        for (i, a) in vectors.iter().enumerate() {
            for b in vectors.iter().skip(i) {
                let dot = inner(&a.coefficients, &b.coefficients);
                let expected = if a.index == b.index { 1.0 } else { 0.0 };
                assert!(
                    (dot - expected).abs() <= 1e-14,
                    "({}, {}): {dot}",
                    a.index,
                    b.index
                );
            }
        }
    }

    #[test]
    fn identity_partial_sums_count_upward() {
        let sums = diag_partial_sums::<f64>(Example::Identity, 5).unwrap();
        assert_eq!(sums, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn alternating_partial_sums_oscillate() {
        let sums = diag_partial_sums::<f64>(Example::Alternating, 100).unwrap();
        for (j, s) in sums.iter().enumerate() {
            let expected = if j % 2 == 0 { -1.0 } else { 0.0 };
            assert_eq!(*s, expected);
        }
    }

    #[test]
    fn left_shift_standard_sums_are_identically_zero() {
        let sums = diag_partial_sums::<f64>(Example::LeftShiftStandard, 100).unwrap();
        assert!(sums.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn left_shift_psi_diagonal_matches_closed_form() {
        for j in 1..=1000usize {
            let d = left_shift_psi_diagonal::<f64>(j).unwrap();
            let expected = -1.0 / (j as f64 * (j as f64 + 1.0));
            assert!((d - expected).abs() <= 1e-13, "j = {j}: {d} vs {expected}");
        }
    }

    #[test]
    fn left_shift_psi_sums_telescope_to_minus_one() {
        let n = 10_000usize;
        let sums = diag_partial_sums::<f64>(Example::LeftShiftPsi, n).unwrap();
        for (idx, s) in sums.iter().enumerate() {
            let j = (idx + 1) as f64;
            // partial sum is -(1 - 1/(j+1)); deviation from -1 is 1/(j+1)
            assert!(
                (s + 1.0 - 1.0 / (j + 1.0)).abs() <= 1e-13,
                "j = {j}: {s}"
            );
        }
        // the two shift limits differ by exactly 1
        let standard = diag_partial_sums::<f64>(Example::LeftShiftStandard, n).unwrap();
        let gap = standard.last().unwrap() - sums.last().unwrap();
        assert!((gap - (1.0 - 1.0 / (n as f64 + 1.0))).abs() <= 1e-12);
    }

    #[test]
    fn rejects_empty_requests() {
        assert!(psi_vector::<f64>(0).is_err());
        assert!(diag_partial_sums::<f64>(Example::Identity, 0).is_err());
    }
}
