//! Lattice sums over ℤ²∖{(0,0)}.
//!
//! The nonzero modes are enumerated in sup-norm shells — the square of
//! side 2r holds exactly 8r points — which gives both a deterministic
//! summation order and a clean integral tail bound: every omitted shell
//! r > R contributes at most 8r·r^{-2n}, so the tail of Σ(k²+m²)^{-n} is
//! below 4·R^{2-2n}/(n-1). The closed form for the full sum is
//! 4ζ(n)β(n).

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};
use crate::special::{dirichlet_beta, zeta, BoundedValue};
use crate::sum::CompensatedSum;

/// A nonzero Fourier mode on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode2D {
    pub k: i64,
    pub m: i64,
}

impl Mode2D {
    /// Squared Euclidean norm k² + m².
    pub fn norm_sq(self) -> i64 {
        self.k * self.k + self.m * self.m
    }
}

/// Result of a truncated lattice sum.
#[derive(Clone, Copy, Debug)]
pub struct SumOutcome<F> {
    pub value: Complex<F>,
    /// Sum of term magnitudes; dominates `|value|`.
    pub abs_sum: F,
    /// Rigorous bound on everything beyond `radius`.
    pub tail_bound: F,
    pub terms: usize,
    /// Sup-norm cutoff: all modes with max(|k|, |m|) ≤ radius are included.
    pub radius: u32,
}

/// One row of the per-shell breakdown (for CSV emission).
#[derive(Clone, Copy, Debug)]
pub struct ShellRow<F> {
    pub r: u32,
    pub shell_sum: F,
    pub cumulative: F,
    /// Tail bound for everything beyond shell `r`.
    pub tail_bound: F,
}

/// The 8r modes with max(|k|, |m|) = r, counterclockwise from (r, -r+1).
///
/// Order: up the right edge (corner (r, r) included), right-to-left along
/// the top, down the left edge, left-to-right along the bottom ending at
/// (r, -r). Each corner appears exactly once.
pub fn shell_modes(r: u32) -> Result<Vec<Mode2D>> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "shell index must be at least 1".into(),
        ));
    }
    let r = i64::from(r);
    let mut modes = Vec::with_capacity(8 * r as usize);
    for m in -r + 1..=r {
        modes.push(Mode2D { k: r, m });
    }
    for k in (-r..r).rev() {
        modes.push(Mode2D { k, m: r });
    }
    for m in (-r..r).rev() {
        modes.push(Mode2D { k: -r, m });
    }
    for k in -r + 1..=r {
        modes.push(Mode2D { k, m: -r });
    }
    Ok(modes)
}

fn check_exponent<F: Float + FromPrimitive>(n: F) -> Result<()> {
    if !(n >= F::from_f64(2.0).unwrap()) {
        return Err(Error::InvalidArgument(
            "lattice sum requires exponent n >= 2 for convergence".into(),
        ));
    }
    Ok(())
}

/// Tail bound 4·R^{2-2n}/(n-1) for Σ_{max(|k|,|m|) > R} (k²+m²)^{-n}.
pub fn tail_bound<F: Float + FromPrimitive>(n: F, radius: u32) -> F {
    let four = F::from_f64(4.0).unwrap();
    let r = F::from_u32(radius).unwrap();
    let two = F::from_f64(2.0).unwrap();
    four * r.powf(two - two * n) / (n - F::one())
}

/// Minimal radius R with tail bound at most `tol`.
pub fn min_radius_for_tail<F: Float + FromPrimitive>(n: F, tol: F) -> Result<u32> {
    check_exponent(n)?;
    if !(tol > F::zero()) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let four = F::from_f64(4.0).unwrap();
    let two = F::from_f64(2.0).unwrap();
    // 4 R^{2-2n}/(n-1) <= tol  =>  R >= (4 / ((n-1) tol))^{1/(2n-2)}
    let r = (four / ((n - F::one()) * tol)).powf((two * n - two).recip()).ceil();
    r.to_u32()
        .ok_or_else(|| Error::Overflow("required lattice radius exceeds u32".into()))
        .map(|r| r.max(1))
}

/// (k²+m²)^{-n}, using integer exponentiation when n is a small integer.
fn term_value<F: Float + FromPrimitive>(norm_sq: i64, n: F, n_int: Option<i32>) -> F {
    let q = F::from_i64(norm_sq).unwrap();
    match n_int {
        Some(p) => q.powi(-p),
        None => q.powf(-n),
    }
}

fn integer_exponent<F: Float + FromPrimitive>(n: F) -> Option<i32> {
    let r = n.round();
    if (n - r).abs() < F::epsilon() {
        r.to_i32()
    } else {
        None
    }
}

/// Shell-by-shell breakdown of Σ(k²+m²)^{-n} up to sup-norm radius `radius`.
pub fn lattice_sum_shells<F: Float + FromPrimitive>(n: F, radius: u32) -> Result<Vec<ShellRow<F>>> {
    check_exponent(n)?;
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    let n_int = integer_exponent(n);
    let mut rows = Vec::with_capacity(radius as usize);
    let mut cumulative = CompensatedSum::new();
    for r in 1..=radius {
        let mut shell = CompensatedSum::new();
        let ri = i64::from(r);
        // enumerate the shell without allocating: same set as shell_modes(r)
        for m in -ri..=ri {
            shell.add(term_value(ri * ri + m * m, n, n_int)); // (r, m)
            shell.add(term_value(ri * ri + m * m, n, n_int)); // (-r, m)
        }
        for k in -ri + 1..ri {
            shell.add(term_value(k * k + ri * ri, n, n_int)); // (k, r)
            shell.add(term_value(k * k + ri * ri, n, n_int)); // (k, -r)
        }
        cumulative.add(shell.total());
        rows.push(ShellRow {
            r,
            shell_sum: shell.total(),
            cumulative: cumulative.total(),
            tail_bound: tail_bound(n, r),
        });
    }
    Ok(rows)
}

/// Direct summation of Σ_{(k,m)≠(0,0)} (k²+m²)^{-n} over shells 1…R.
///
/// The terms are positive reals; `value` carries them as a complex number
/// so downstream spectral sums with genuinely complex terms share the type.
pub fn lattice_sum_direct<F: Float + FromPrimitive>(n: F, radius: u32) -> Result<SumOutcome<F>> {
    let rows = lattice_sum_shells(n, radius)?;
    let total = rows.last().expect("radius >= 1 gives at least one row").cumulative;
    Ok(SumOutcome {
        value: Complex::new(total, F::zero()),
        abs_sum: total,
        tail_bound: tail_bound(n, radius),
        terms: 4 * (radius as usize) * (radius as usize + 1),
        radius,
    })
}

/// Closed form 4ζ(n)β(n) with the factor errors propagated first-order.
pub fn lattice_sum_closed<F: Float + FromPrimitive>(n: u32, tol: F) -> Result<BoundedValue<F>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "closed-form lattice sum requires integer n >= 2".into(),
        ));
    }
    let s = F::from_u32(n).unwrap();
    let four = F::from_f64(4.0).unwrap();
    // split the budget so the propagated product error stays within tol;
    // the floor keeps the request attainable in binary64
    let factor_tol = (tol / (four * F::from_f64(4.0).unwrap()))
        .max(F::from_f64(crate::special::TOL_FLOOR).unwrap());
    let z = zeta(s, factor_tol)?;
    let b = dirichlet_beta(s, factor_tol)?;
    let value = four * z.value * b.value;
    // |4(z+dz)(b+db) - 4zb| <= 4(|z| db + |b| dz + dz db)
    let error_bound = four
        * (z.value.abs() * b.error_bound
            + b.value.abs() * z.error_bound
            + z.error_bound * b.error_bound);
    Ok(BoundedValue {
        value,
        error_bound,
        terms_used: z.terms_used + b.terms_used,
    })
}
