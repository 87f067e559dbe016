//! Closed-form projection coefficients for n = 3 and n = 4, their exact
//! H ↑ 1 limits, the degenerate H = 0 row, and the Γ₄³/Γ₄⁴ crossing point.
//!
//! For n = 3 (with ρ's evaluated at h):
//!
//! ```text
//! Γ₃² = ρ₁(1−ρ₂)/(1−ρ₁²),   Γ₃³ = (ρ₂−ρ₁²)/(1−ρ₁²),
//! ```
//!
//! and for n = 4, over the common denominator
//! D = 1 + 2ρ₁²ρ₂ − ρ₂² − 2ρ₁² = (1−ρ₂)(1−ρ₁²) + (1−ρ₂)(ρ₂−ρ₁²):
//!
//! ```text
//! Γ₄² = (ρ₁ + ρ₁²ρ₃ + ρ₁ρ₂² − ρ₂ρ₃ − ρ₁³ − ρ₁ρ₂) / D
//! Γ₄³ = (1−ρ₂)(ρ₂ + ρ₂² − ρ₁² − ρ₁ρ₃) / D
//! Γ₄⁴ = (ρ₁³ + ρ₁ρ₂² − 2ρ₁ρ₂ + ρ₃ − ρ₁²ρ₃) / D
//! ```

use crate::covariance::{rho, HurstParam, Regime};
use crate::error::{FgnError, Result};
use crate::toeplitz::CoefficientRow;

/// (Γ₃², Γ₃³) by the closed formulas. Agrees with `solve_system(h, 3)`
/// within 1e−12 on all of [0, 1).
pub fn gamma3(h: HurstParam) -> Result<(f64, f64)> {
    if h.regime() == Regime::Degenerate {
        return Err(FgnError::SingularRegime);
    }
    let r1 = rho(h, 1);
    let r2 = rho(h, 2);
    let den = 1.0 - r1 * r1;
    Ok((r1 * (1.0 - r2) / den, (r2 - r1 * r1) / den))
}

/// (Γ₄², Γ₄³, Γ₄⁴) by the closed formulas. Γ₄³ is evaluated through the
/// factored numerator (1−ρ₂)(ρ₂+ρ₂²−ρ₁²−ρ₁ρ₃) to reduce cancellation;
/// the full-polynomial form is kept as a cross-check
/// ([`gamma4_g3_unfactored`]). Agrees with `solve_system(h, 4)` within
/// 1e−12 on all of [0, 1).
pub fn gamma4(h: HurstParam) -> Result<(f64, f64, f64)> {
    if h.regime() == Regime::Degenerate {
        return Err(FgnError::SingularRegime);
    }
    let r1 = rho(h, 1);
    let r2 = rho(h, 2);
    let r3 = rho(h, 3);
    let den = 1.0 + 2.0 * r1 * r1 * r2 - r2 * r2 - 2.0 * r1 * r1;
    let g2 = (r1 + r1 * r1 * r3 + r1 * r2 * r2 - r2 * r3 - r1 * r1 * r1 - r1 * r2) / den;
    let g3 = (1.0 - r2) * (r2 + r2 * r2 - r1 * r1 - r1 * r3) / den;
    let g4 = (r1 * r1 * r1 + r1 * r2 * r2 - 2.0 * r1 * r2 + r3 - r1 * r1 * r3) / den;
    Ok((g2, g3, g4))
}

/// Γ₄³ via the expanded numerator ρ₁²ρ₂ − ρ₂³ + ρ₁ρ₂ρ₃ − ρ₁² + ρ₂ − ρ₁ρ₃
/// (cross-check for the factored form used by [`gamma4`]).
pub fn gamma4_g3_unfactored(h: HurstParam) -> Result<f64> {
    if h.regime() == Regime::Degenerate {
        return Err(FgnError::SingularRegime);
    }
    let r1 = rho(h, 1);
    let r2 = rho(h, 2);
    let r3 = rho(h, 3);
    let den = 1.0 + 2.0 * r1 * r1 * r2 - r2 * r2 - 2.0 * r1 * r1;
    Ok((r1 * r1 * r2 - r2 * r2 * r2 + r1 * r2 * r3 - r1 * r1 + r2 - r1 * r3) / den)
}

/// Exact H ↑ 1 limits of (Γ₃², Γ₃³):
/// ((9 ln 9 − 8 ln 4)/(8 ln 4), (8 ln 16 − 9 ln 9)/(8 ln 4)).
/// The two sum to 1 identically.
pub fn limits_n3() -> (f64, f64) {
    let ln4 = 4f64.ln();
    let ln9 = 9f64.ln();
    let ln16 = 16f64.ln();
    (
        (9.0 * ln9 - 8.0 * ln4) / (8.0 * ln4),
        (8.0 * ln16 - 9.0 * ln9) / (8.0 * ln4),
    )
}

/// Exact H ↑ 1 limits of (Γ₄², Γ₄³, Γ₄⁴), from their logarithmic closed
/// forms; the three sum to 1 within 1e−12.
pub fn limits_n4() -> (f64, f64, f64) {
    let ln2 = 2f64.ln();
    let l4 = 4f64.ln() * 4f64.ln();
    let l6 = 6f64.ln() * 6f64.ln();
    let l9 = 9f64.ln() * 9f64.ln();
    let l12 = 12f64.ln() * 12f64.ln();
    let l18 = 18f64.ln() * 18f64.ln();
    let ln9 = 9f64.ln();
    let den = 96.0 * l12 - 640.0 * ln2 * ln2 - 51.0 * l9;
    let g2 = (531.0 * l4 + 72.0 * l6 + 51.0 * l9 - 384.0 * l12 + 108.0 * l18) / den;
    let g3 = (48.0 * ln2 - 15.0 * ln9) / (16.0 * ln2 - 3.0 * ln9);
    let g4 = (108.0 * l18 - 364.0 * ln2 * ln2 - 216.0 * ln2 * ln9 - 81.0 * l9) / den;
    (g2, g3, g4)
}

/// The degenerate H = 0 row: Γₙᵏ = −(n−k+1)/n for k = 2, …, n.
///
/// Sign note: at H = 0 the system is tridiagonal with ρ₁ = −½ and
/// right-hand side (−½, 0, …, 0); its unique solution is the *negative*
/// ladder −(n−k+1)/n (e.g. Γ₂² = ρ₁ = −½ directly from the n = 2 system).
/// The source derivation carries the magnitudes (n−k+1)/n but drops this
/// sign in its final display; the value returned here is the one that
/// actually solves the system and matches `solve_system(0, n)` within
/// 1e−12 (the n = 3, 4 closed forms agree: Γ₃² = −⅔, Γ₃³ = −⅓ at H = 0).
pub fn gamma_h_zero(n: usize) -> CoefficientRow {
    assert!(n >= 2, "projection order must be at least 2");
    let h = HurstParam::new(0.0).expect("0 is a valid Hurst parameter");
    let gammas = (2..=n).map(|k| -((n - k + 1) as f64) / n as f64).collect();
    CoefficientRow { h, n, gammas }
}

/// The unique h ∈ (½, 1) where Γ₄³ = Γ₄⁴ (rows switch from decreasing to
/// non-monotone), located by bisection; ≈ 0.752281.
pub fn crossing_g43_g44() -> f64 {
    let gap = |hv: f64| {
        let (_, g3, g4) = gamma4(HurstParam::new(hv).expect("bisection stays in (0,1)"))
            .expect("bisection stays below h = 1");
        g3 - g4
    };
    let (mut lo, mut hi) = (0.70f64, 0.80f64);
    debug_assert!(gap(lo) > 0.0 && gap(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    0.5 * (lo + hi)
}
