//! Scalar special functions needed by the closed-form traces.
//!
//! Every routine returns a [`BoundedValue`]: the computed value together
//! with a rigorous bound on the distance to the true value, derived from an
//! integral tail comparison (ζ), the alternating-series remainder (β), or a
//! geometric-tail comparison (θ₃). Generic over the floating scalar; the
//! crate root exports `f64` aliases.

use num_traits::{Float, FloatConst, FromPrimitive};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

pub mod quad;

/// Smallest tolerance binary64 arithmetic can honor here.
pub const TOL_FLOOR: f64 = 1e-13;

/// A value paired with a rigorous error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundedValue<F> {
    pub value: F,
    /// Upper bound on `|true - value|`.
    pub error_bound: F,
    pub terms_used: usize,
}

fn cst<F: FromPrimitive>(x: f64) -> F {
    F::from_f64(x).expect("constant must be representable")
}

fn check_tol<F: Float + FromPrimitive>(tol: F) -> Result<()> {
    if !(tol > F::zero()) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if tol < cst::<F>(TOL_FLOOR) {
        return Err(Error::InvalidArgument(format!(
            "tolerance below {TOL_FLOOR:e} is unattainable in binary64"
        )));
    }
    Ok(())
}

/// Riemann zeta ζ(s) for real s > 1 by direct summation.
///
/// The remainder after M terms is bracketed by the integral comparison
/// `∫_{M+1}^∞ x^{-s} dx ≤ Σ_{j>M} j^{-s} ≤ ∫_M^∞ x^{-s} dx`; the midpoint of
/// the bracket is added to the partial sum, so the certified error is half
/// the bracket width, `M^{-s}/2`.
pub fn zeta<F: Float + FromPrimitive>(s: F, tol: F) -> Result<BoundedValue<F>> {
    if !(s > F::one()) {
        return Err(Error::InvalidArgument(
            "zeta requires s > 1 (the series diverges at s = 1)".into(),
        ));
    }
    check_tol(tol)?;

    // error bound M^{-s}/2 <= tol
    let two = cst::<F>(2.0);
    let m = (two * tol).powf(-s.recip()).ceil();
    let m_int = m.to_u64().ok_or_else(|| {
        Error::Overflow("zeta term count does not fit in a machine integer".into())
    })?;
    let m_int = m_int.max(1);
    let m = F::from_u64(m_int).unwrap();

    let mut acc = CompensatedSum::new();
    // descending order: smallest terms first
    let mut j = m_int;
    while j >= 1 {
        acc.add(F::from_u64(j).unwrap().powf(-s));
        j -= 1;
    }

    let tail_upper = m.powf(F::one() - s) / (s - F::one());
    let last_term = m.powf(-s);
    let value = acc.total() + tail_upper - last_term / two;
    Ok(BoundedValue {
        value,
        error_bound: last_term / two,
        terms_used: m_int as usize,
    })
}

const BETA_TERM_CAP: usize = 100_000_000;

/// Dirichlet beta β(s) = Σ_{m≥0} (-1)^m (2m+1)^{-s} for real s > 0.
///
/// The terms decrease monotonically to zero, so the alternating-series
/// remainder is bounded by the first omitted term.
pub fn dirichlet_beta<F: Float + FromPrimitive>(s: F, tol: F) -> Result<BoundedValue<F>> {
    if !(s > F::zero()) {
        return Err(Error::InvalidArgument(
            "dirichlet_beta requires s > 0".into(),
        ));
    }
    check_tol(tol)?;

    let mut acc = CompensatedSum::new();
    let mut m: usize = 0;
    loop {
        let odd = F::from_usize(2 * m + 1).unwrap();
        let term = odd.powf(-s);
        if term <= tol {
            // `term` is the first omitted term
            return Ok(BoundedValue {
                value: acc.total(),
                error_bound: term,
                terms_used: m,
            });
        }
        if m >= BETA_TERM_CAP {
            return Err(Error::IterationCap {
                cap: BETA_TERM_CAP,
                context: format!("summing dirichlet_beta({:?})", s.to_f64()),
            });
        }
        let signed = if m % 2 == 0 { term } else { -term };
        acc.add(signed);
        m += 1;
    }
}

/// Γ(n) = (n-1)! for a positive integer, exact while representable.
pub fn gamma_positive_integer<F: Float + FromPrimitive>(n: u32) -> Result<F> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "gamma_positive_integer requires n >= 1".into(),
        ));
    }
    let mut acc = F::one();
    for k in 1..n {
        acc = acc * F::from_u32(k).unwrap();
        if !acc.is_finite() {
            return Err(Error::Overflow(format!("({} - 1)! overflows binary64", n)));
        }
    }
    Ok(acc)
}

const THETA_TERM_CAP: usize = 1_000_000;

/// Tail bound for θ₃: 2·Σ_{j>J} e^{-j²t} ≤ 2 e^{-(J+1)²t} / (1 - e^{-(2J+3)t}).
///
/// Each successive term shrinks by at least e^{-(2J+3)t}, so the tail is
/// dominated by a geometric series.
fn theta3_tail_bound<F: Float + FromPrimitive>(t: F, terms_summed: usize) -> F {
    let j1 = F::from_usize(terms_summed + 1).unwrap();
    let ratio = (-(F::from_usize(2 * terms_summed + 3).unwrap()) * t).exp();
    cst::<F>(2.0) * (-(j1 * j1) * t).exp() / (F::one() - ratio)
}

/// Jacobi θ₃ at q = e^{-t}: `1 + 2 Σ_{j≥1} e^{-j² t}` for t > 0.
pub fn theta3<F: Float + FromPrimitive>(t: F, tol: F) -> Result<BoundedValue<F>> {
    if !(t > F::zero()) {
        return Err(Error::InvalidArgument(
            "theta3 requires t > 0 (the series diverges at q = 1)".into(),
        ));
    }
    check_tol(tol)?;
    theta3_with_tail(t, tol)
}

/// θ₃ summed to machine saturation; internal building block for the Mellin
/// integrand, where the public tolerance floor does not apply.
pub(crate) fn theta3_saturated<F: Float + FromPrimitive>(t: F) -> F {
    theta3_with_tail(t, F::epsilon() * cst::<F>(0.25))
        .map(|b| b.value)
        .unwrap_or_else(|_| F::nan())
}

fn theta3_with_tail<F: Float + FromPrimitive>(t: F, tol: F) -> Result<BoundedValue<F>> {
    let mut acc = CompensatedSum::new();
    acc.add(F::one());
    let mut j: usize = 0;
    loop {
        let bound = theta3_tail_bound(t, j);
        if bound <= tol {
            return Ok(BoundedValue {
                value: acc.total(),
                error_bound: bound,
                terms_used: j + 1, // counting the constant n = 0 term
            });
        }
        if j >= THETA_TERM_CAP {
            return Err(Error::IterationCap {
                cap: THETA_TERM_CAP,
                context: format!("summing theta3 at t = {:?}", t.to_f64()),
            });
        }
        j += 1;
        let jf = F::from_usize(j).unwrap();
        acc.add(cst::<F>(2.0) * (-(jf * jf) * t).exp());
    }
}

/// Quadrature never samples the θ₃ series below this point; the series
/// length stays at most ~10⁴ terms there.
const MELLIN_SPLIT_LOW: f64 = 1e-4;

/// Upper incomplete gamma Γ(n, x) for integer n ≥ 1:
/// `(n-1)! e^{-x} Σ_{k=0}^{n-1} x^k / k!`.
fn upper_incomplete_gamma_int(n: u32, x: f64) -> f64 {
    let mut poly = 0.0;
    let mut term = 1.0; // x^k / k!
    for k in 0..n {
        if k > 0 {
            term *= x / k as f64;
        }
        poly += term;
    }
    let factorial: f64 = gamma_positive_integer(n).unwrap_or(f64::INFINITY);
    factorial * (-x).exp() * poly
}

/// Mellin transform `M_n(θ₃² - 1) = (1/Γ(n)) ∫₀^∞ t^{n-1} (θ₃(e^{-t})² - 1) dt`.
///
/// The integral is split three ways:
/// - `[0, 1e-4]`: here θ₃(e^{-t})² = (π/t)(1 + O(e^{-π²/t})) with the
///   correction below 10⁻⁴²⁸⁵⁰⁰, so the head is the closed form
///   `π a^{n-1}/(n-1) - a^n/n` with negligible error;
/// - `[1e-4, 1]` and `[1, T]`: adaptive Gauss–Kronrod with the θ₃ series
///   summed to saturation at each node;
/// - `[T, ∞)`: discarded, with θ₃² - 1 ≤ 5 e^{-t} for t ≥ 2 giving the
///   rigorous bound `5 Γ(n, T)/Γ(n) ≤ tol/2`.
pub fn mellin_theta(n: u32, tol: f64) -> Result<BoundedValue<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "mellin_theta requires n >= 2 (the integral diverges at the t = 0 boundary for n = 1)"
                .into(),
        ));
    }
    check_tol(tol)?;
    let gamma_n: f64 = gamma_positive_integer(n)?;

    // upper truncation point: 5 Γ(n, T) / Γ(n) <= tol/2
    let mut upper = 2.0f64;
    while 5.0 * upper_incomplete_gamma_int(n, upper) / gamma_n > tol / 2.0 {
        upper += 1.0;
        if upper > 5_000.0 {
            return Err(Error::Overflow(
                "mellin_theta tail truncation point not found".into(),
            ));
        }
    }
    let tail_bound = 5.0 * upper_incomplete_gamma_int(n, upper) / gamma_n;

    let a = MELLIN_SPLIT_LOW;
    let nf = n as f64;
    let head = f64::PI() * a.powi(n as i32 - 1) / (nf - 1.0) - a.powi(n as i32) / nf;

    let integrand = |t: f64| {
        let th = theta3_saturated(t);
        t.powi(n as i32 - 1) * (th * th - 1.0)
    };
    // quadrature budget: tol/2 overall, split between the two panels
    let budget = tol / 4.0 * gamma_n;
    let low = quad::integrate(integrand, a, 1.0, budget, 4096)?;
    let high = quad::integrate(integrand, 1.0, upper, budget, 4096)?;

    let value = (head + low.value + high.value) / gamma_n;
    let error_bound = (low.error + high.error) / gamma_n + tail_bound;
    Ok(BoundedValue {
        value,
        error_bound,
        terms_used: low.evaluations + high.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // 25-digit references computed independently with integer-argument
    // series acceleration in high-precision arithmetic.
    const ZETA_2: f64 = 1.6449340668482264365;
    const ZETA_4: f64 = 1.0823232337111381915;
    const BETA_2: f64 = 0.91596559417721901505; // Catalan
    const BETA_3: f64 = 0.96894614625936938048; // pi^3/32

    #[test]
    fn zeta_matches_pi_squared_over_six() {
        let z = zeta(2.0, 1e-10).unwrap();
        assert!((z.value - std::f64::consts::PI.powi(2) / 6.0).abs() <= 1e-10);
        assert!((z.value - ZETA_2).abs() <= z.error_bound);
        assert!(z.error_bound <= 1e-10);
    }

    #[test]
    fn zeta_matches_pi_fourth_over_ninety() {
        let z = zeta(4.0, 1e-10).unwrap();
        assert!((z.value - std::f64::consts::PI.powi(4) / 90.0).abs() <= 1e-10);
        assert!((z.value - ZETA_4).abs() <= z.error_bound);
    }

    #[test]
    fn zeta_rejects_divergent_boundary() {
        assert!(zeta(1.0, 1e-8).is_err());
        assert!(zeta(0.5, 1e-8).is_err());
        assert!(zeta(2.0, 0.0).is_err());
        assert!(zeta(2.0, 1e-14).is_err());
    }

    #[test]
    fn zeta_is_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for s in [1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0] {
            let z = zeta(s, 1e-10).unwrap().value;
            assert!(z < prev, "zeta({s}) = {z} not below zeta at smaller s");
            prev = z;
        }
    }

    #[test]
    fn beta_catalan_and_odd_pi_powers() {
        let b2 = dirichlet_beta(2.0, 1e-10).unwrap();
        assert!((b2.value - BETA_2).abs() <= b2.error_bound);
        let b3 = dirichlet_beta(3.0, 1e-10).unwrap();
        assert!((b3.value - BETA_3).abs() <= b3.error_bound);
        assert!((b3.value - std::f64::consts::PI.powi(3) / 32.0).abs() <= 1e-10);
        let b1 = dirichlet_beta(1.0, 1e-6).unwrap();
        assert!((b1.value - std::f64::consts::FRAC_PI_4).abs() <= 1e-6);
    }

    #[test]
    fn beta_partial_sums_bracket_the_value() {
        // consecutive partial sums of an alternating series bracket the limit
        let b = dirichlet_beta(2.0, 1e-8).unwrap();
        let mut partial = 0.0;
        let mut below = f64::NEG_INFINITY;
        let mut above = f64::INFINITY;
        for m in 0..b.terms_used {
            let term = ((2 * m + 1) as f64).powf(-2.0);
            partial += if m % 2 == 0 { term } else { -term };
            if m % 2 == 0 {
                above = partial;
            } else {
                below = partial;
            }
            if m >= 1 {
                assert!(below <= b.value + b.error_bound);
                assert!(above >= b.value - b.error_bound);
            }
        }
    }

    #[test]
    fn beta_rejects_bad_arguments() {
        assert!(dirichlet_beta(0.0, 1e-8).is_err());
        assert!(dirichlet_beta(2.0, -1.0).is_err());
    }

    #[test]
    fn gamma_small_factorials() {
        assert_eq!(gamma_positive_integer::<f64>(1).unwrap(), 1.0);
        assert_eq!(gamma_positive_integer::<f64>(4).unwrap(), 6.0);
        assert_eq!(gamma_positive_integer::<f64>(5).unwrap(), 24.0);
    }

    #[test]
    fn gamma_overflow_boundary() {
        // 170! is the largest factorial representable in binary64
        assert!(gamma_positive_integer::<f64>(171).unwrap().is_finite());
        assert!(gamma_positive_integer::<f64>(172).is_err());
        assert!(gamma_positive_integer::<f64>(0).is_err());
    }

    #[test]
    fn theta3_reference_at_t_one() {
        let th = theta3(1.0, 1e-12).unwrap();
        assert!((th.value - 1.772637204826652153).abs() <= 1e-12);
    }

    #[test]
    fn theta3_large_t_is_dominated_by_the_constant_term() {
        let th = theta3(50.0, 1e-13).unwrap();
        assert!((th.value - 1.0).abs() < 1e-20);
        assert!(th.terms_used >= 1);
    }

    #[test]
    fn theta3_small_t_growth() {
        // theta3(t)^2 - 1 ~ pi/t as t -> 0
        let th = theta3(0.01, 1e-10).unwrap();
        let growth = th.value * th.value - 1.0;
        let expected = std::f64::consts::PI / 0.01;
        assert!((growth - expected).abs() / expected < 0.01);
    }

    #[test]
    fn theta3_is_strictly_decreasing_on_grid() {
        let mut prev = f64::INFINITY;
        let mut t = 0.1;
        while t <= 5.0 + 1e-9 {
            let v = theta3(t, 1e-12).unwrap().value;
            assert!(v < prev);
            prev = v;
            t += 0.1;
        }
    }

    #[test]
    fn theta3_rejects_nonpositive_t() {
        assert!(theta3(0.0, 1e-8).is_err());
        assert!(theta3(-1.0, 1e-8).is_err());
    }

    #[test]
    fn mellin_matches_closed_form_product() {
        // M_n(theta3^2 - 1) = 4 zeta(n) beta(n)
        for n in 2..=8u32 {
            let m = mellin_theta(n, 1e-8).unwrap();
            let z = zeta(n as f64, 1e-12).unwrap();
            let b = dirichlet_beta(n as f64, 1e-12).unwrap();
            let closed = 4.0 * z.value * b.value;
            let budget = m.error_bound + 4.0 * (z.error_bound + b.error_bound + 1e-15);
            assert!(
                (m.value - closed).abs() <= budget,
                "n = {n}: |{} - {}| > {budget:e}",
                m.value,
                closed
            );
        }
    }

    #[test]
    fn mellin_rejects_n_below_two() {
        assert!(mellin_theta(1, 1e-8).is_err());
        assert!(mellin_theta(0, 1e-8).is_err());
    }
}
