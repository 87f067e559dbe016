//! Numerical verification engine: positivity and shape scans over the
//! coefficient triangle, the ψ(H,x) / η(H,y) auxiliary functions behind the
//! Γ₄³ > 0 argument, and the cₖ / bₖ power-series coefficients of η.
//!
//! Everything here produces *evidence with explicit margins*, never proofs:
//! scans report the smallest slack seen and list counterexamples as data.
//!
//! Grid scans are written as plain sequential loops; every quantity is a
//! pure function of (h, n, k), so the reports are deterministic and could
//! be assembled from parallel evaluation in any order after the final sort.

use crate::covariance::{rho, rho_cont, HurstParam, PropertyReport, Regime};
use crate::error::{FgnError, Result};
use crate::recursion::coeff_triangle;

/// Outcome of one conjecture scan over a Hurst grid and triangle size.
///
/// `counterexamples` entries are `(h, n, k, value)` where `value` is the
/// strict-inequality margin that failed (≤ 0), anchored at the offending
/// coefficient's `(n, k)`; scans not indexed by projection order (the
/// bₖ-positivity scan) use `n = 0` as a sentinel. Entries are sorted by
/// `(h, n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub conjecture_id: String,
    pub h_grid: Vec<f64>,
    pub n_max: usize,
    /// True iff `counterexamples` is empty.
    pub holds: bool,
    pub counterexamples: Vec<(f64, usize, usize, f64)>,
    /// Smallest strict-inequality slack encountered, reported even on pass.
    /// `+∞` when the scan had nothing to check.
    pub min_margin: f64,
    /// Optional scan diagnostic; the bₖ scan reports max |bₖ| here because
    /// forward substitution amplifies like 4ᵏ and the margin alone hides it.
    pub growth_diagnostic: Option<f64>,
}

/// Accumulates (h, n, k, margin) observations into a sorted, consistent
/// report.
struct ScanState {
    counterexamples: Vec<(f64, usize, usize, f64)>,
    min_margin: f64,
}

impl ScanState {
    fn new() -> Self {
        ScanState { counterexamples: Vec::new(), min_margin: f64::INFINITY }
    }

    /// One strict inequality with slack `margin > 0` expected.
    fn observe(&mut self, h: f64, n: usize, k: usize, margin: f64) {
        if margin < self.min_margin {
            self.min_margin = margin;
        }
        if margin <= 0.0 {
            self.counterexamples.push((h, n, k, margin));
        }
    }

    fn finish(
        mut self,
        conjecture_id: &str,
        h_grid: &[f64],
        n_max: usize,
        growth_diagnostic: Option<f64>,
    ) -> ConjectureReport {
        self.counterexamples.sort_by(|a, b| {
            a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
        });
        ConjectureReport {
            conjecture_id: conjecture_id.to_string(),
            h_grid: h_grid.to_vec(),
            n_max,
            holds: self.counterexamples.is_empty(),
            counterexamples: self.counterexamples,
            min_margin: self.min_margin,
            growth_diagnostic,
        }
    }
}

/// Default Hurst grid for the long-range scans: {0.51, 0.52, …, 0.99}.
pub fn default_h_grid() -> Vec<f64> {
    (51..=99).map(|i| i as f64 / 100.0).collect()
}

fn validate_long_range_grid(h_grid: &[f64]) -> Vec<HurstParam> {
    h_grid
        .iter()
        .map(|&hv| {
            let h = HurstParam::new(hv).expect("grid value must be a Hurst parameter");
            assert!(
                h.regime() == Regime::LongRange,
                "conjecture scans are defined on 1/2 < h < 1, got {hv}"
            );
            h
        })
        .collect()
}

/// Scan `Γₙᵏ > 0` for all 2 ≤ k ≤ n ≤ n_max over the grid (Conjecture A).
///
/// Violations are data, not errors; the expected outcome on (½, 1) is
/// `holds` with a positive `min_margin`.
pub fn verify_positivity(h_grid: &[f64], n_max: usize) -> ConjectureReport {
    assert!(n_max >= 2, "projection order must be at least 2");
    let mut scan = ScanState::new();
    for h in validate_long_range_grid(h_grid) {
        let tri = coeff_triangle(h, n_max).expect("recursion is nondegenerate below h = 1");
        for row in tri.rows() {
            for (idx, &g) in row.gammas.iter().enumerate() {
                scan.observe(h.value(), row.n, idx + 2, g);
            }
        }
    }
    scan.finish("positivity: gamma[n][k] > 0 for 2 <= k <= n", h_grid, n_max, None)
}

/// Scan `Γₙ² > Γₙᵏ` for 3 ≤ k ≤ n (the first coefficient in each row is
/// the largest).
pub fn verify_first_largest(h_grid: &[f64], n_max: usize) -> ConjectureReport {
    assert!(n_max >= 2, "projection order must be at least 2");
    let mut scan = ScanState::new();
    for h in validate_long_range_grid(h_grid) {
        let tri = coeff_triangle(h, n_max).expect("recursion is nondegenerate below h = 1");
        for row in tri.rows() {
            let first = row.gammas[0];
            for (idx, &g) in row.gammas.iter().enumerate().skip(1) {
                scan.observe(h.value(), row.n, idx + 2, first - g);
            }
        }
    }
    scan.finish("first-largest: gamma[n][2] > gamma[n][k] for k >= 3", h_grid, n_max, None)
}

/// Scan strict decrease down each column: `Γₙᵏ > Γ_{n+1}ᵏ` for fixed k.
/// A violation is anchored at the lower row, `(h, n+1, k)`.
pub fn verify_column_monotonicity(h_grid: &[f64], n_max: usize) -> ConjectureReport {
    assert!(n_max >= 2, "projection order must be at least 2");
    let mut scan = ScanState::new();
    for h in validate_long_range_grid(h_grid) {
        let tri = coeff_triangle(h, n_max).expect("recursion is nondegenerate below h = 1");
        for n in 2..n_max {
            let upper = &tri.row(n).gammas;
            let lower = &tri.row(n + 1).gammas;
            for (idx, &g) in upper.iter().enumerate() {
                scan.observe(h.value(), n + 1, idx + 2, g - lower[idx]);
            }
        }
    }
    scan.finish(
        "column-monotone: gamma[n][k] > gamma[n+1][k] for fixed k",
        h_grid,
        n_max,
        None,
    )
}

/// Descriptive scan of row monotonicity: is each row strictly decreasing
/// in k? Unlike the other scans this one is *expected to fail* for large H
/// (the last coefficient overtakes its predecessor past h ≈ 0.7523, first
/// visible at n = 4); the report records where. A violation is anchored at
/// the right-hand coefficient of the offending adjacent pair.
pub fn verify_row_nonmonotonicity(h_grid: &[f64], n_max: usize) -> ConjectureReport {
    assert!(n_max >= 2, "projection order must be at least 2");
    let mut scan = ScanState::new();
    for h in validate_long_range_grid(h_grid) {
        let tri = coeff_triangle(h, n_max).expect("recursion is nondegenerate below h = 1");
        for row in tri.rows() {
            for idx in 1..row.gammas.len() {
                scan.observe(
                    h.value(),
                    row.n,
                    idx + 2,
                    row.gammas[idx - 1] - row.gammas[idx],
                );
            }
        }
    }
    scan.finish(
        "row-monotone (descriptive): gamma[n][k] > gamma[n][k+1]; \
         violations expected for large h",
        h_grid,
        n_max,
        None,
    )
}

/// Evaluate the quantity behind the Γ₄³ positivity argument,
/// ρ₂ + ρ₂² − ρ₁² − ρ₁ρ₃, as a single-point report; holds iff > 0.
pub fn check_posit2(h: HurstParam) -> PropertyReport {
    assert!(
        h.regime() == Regime::LongRange,
        "posit2 is asserted on 1/2 < h < 1, got {}",
        h.value()
    );
    let r1 = rho(h, 1);
    let r2 = rho(h, 2);
    let r3 = rho(h, 3);
    let value = r2 + r2 * r2 - r1 * r1 - r1 * r3;
    let mut report = PropertyReport::new(
        "posit2: rho2 + rho2^2 - rho1^2 - rho1*rho3 > 0",
        &format!("h = {}", h.value()),
    );
    report.observe(0, value, 0.0);
    report
}

/// ψ(H,x) = (ρ(x) + ρ(x+2)) / ρ(x+1) on the unit-interval branch
/// 0 ≤ x ≤ 1, where ρ is the continuous-argument autocovariance with its
/// |1−x|^{2H} term. The x ≥ 1 branch is served by [`psi_tail`]; the two
/// agree at x = 1.
///
/// Errors with `DomainError` for x outside [0,1] or h outside (½,1) —
/// below h = ½ the denominator ρ(x+1) changes sign.
pub fn psi(h: HurstParam, x: f64) -> Result<f64> {
    if h.regime() != Regime::LongRange {
        return Err(FgnError::DomainError { value: h.value(), domain: "(1/2, 1)" });
    }
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(FgnError::DomainError { value: x, domain: "[0, 1]" });
    }
    Ok((rho_cont(h, x) + rho_cont(h, x + 2.0)) / rho_cont(h, x + 1.0))
}

/// ψ(H,x) for x ≥ 1 via the tail representation
/// −2 + ((1+2y)^{2H} + (1−2y)^{2H} − 2) / ((1+y)^{2H} + (1−y)^{2H} − 2)
/// with y = 1/(x+1) ∈ (0, ½]; continuous with [`psi`] at x = 1 and
/// strictly decreasing in x for H > ½, tending to η(H,0⁺) − 2 = 2.
pub fn psi_tail(h: HurstParam, x: f64) -> f64 {
    assert!(
        h.regime() == Regime::LongRange,
        "psi_tail is defined on 1/2 < h < 1, got {}",
        h.value()
    );
    assert!(x >= 1.0, "psi_tail serves the x >= 1 branch, got {x}");
    let y = 1.0 / (x + 1.0);
    -2.0 + eta_quotient(2.0 * h.value(), y)
}

/// The displayed η quotient, with each (1±t)^{2H} − 1 term evaluated as
/// expm1(2H·ln_1p(±t)). Algebraically identical to the naive form, but the
/// leading ±2Ht parts cancel *inside* accurately-computed small quantities
/// instead of between two values near 1, keeping the relative error of the
/// O(y²) numerator and denominator at ~(1/y)·ε instead of ~(1/y²)·ε.
fn eta_quotient(two_h: f64, y: f64) -> f64 {
    let pow_m1 = |t: f64| f64::exp_m1(two_h * f64::ln_1p(t));
    let num = pow_m1(2.0 * y) + pow_m1(-2.0 * y);
    let den = pow_m1(y) + pow_m1(-y);
    num / den
}

/// η(H,y) = ((1+2y)^{2H} + (1−2y)^{2H} − 2) / ((1+y)^{2H} + (1−y)^{2H} − 2)
/// on 0 < y ≤ ½; strictly increasing in y, with η(H,0⁺) = 4.
///
/// Accepts h on (½, 1]: the quotient stays regular at h = 1 (where
/// η(1,½) = 4 exactly), while at h = ½ the denominator vanishes
/// identically — `DomainError` there and below.
pub fn eta(h: HurstParam, y: f64) -> Result<f64> {
    if h.value() <= 0.5 {
        return Err(FgnError::DomainError { value: h.value(), domain: "(1/2, 1]" });
    }
    if !y.is_finite() || y <= 0.0 || y > 0.5 {
        return Err(FgnError::DomainError { value: y, domain: "(0, 1/2]" });
    }
    Ok(eta_quotient(2.0 * h.value(), y))
}

/// Coefficients c₀, …, c_{k_max} of the denominator series
/// (1+y)^{2H} + (1−y)^{2H} − 2 = Σₖ cₖ y^{2k+2}, by the stable product
/// recurrence cₖ = c_{k−1}(2H−2k)(2H−2k−1)/((2k+2)(2k+1)) from
/// c₀ = 2H(2H−1) (so the numerator series has coefficients cₖ·2^{2k+2}).
///
/// Defined for every Hurst value (at h = ½ all coefficients vanish); the
/// recurrence avoids the factorial-quotient overflow past k ≈ 80.
pub fn eta_c_coeffs(h: HurstParam, k_max: usize) -> Vec<f64> {
    let two_h = 2.0 * h.value();
    let mut c = Vec::with_capacity(k_max + 1);
    let mut ck = two_h * (two_h - 1.0);
    c.push(ck);
    for k in 1..=k_max {
        let kf = k as f64;
        ck *= (two_h - 2.0 * kf) * (two_h - 2.0 * kf - 1.0)
            / ((2.0 * kf + 2.0) * (2.0 * kf + 1.0));
        c.push(ck);
    }
    c
}

/// Coefficients b₀, …, b_{k_max} of η(H,y) = Σₖ bₖ y^{2k}, by forward
/// substitution through the triangular system 2^{2k+2}cₖ = Σ_{l≤k} c_l b_{k−l}:
/// bₖ = (2^{2k+2}cₖ − Σ_{l=1..k} c_l b_{k−l}) / c₀. b₀ = 4 identically;
/// b₁ = (2H−2)(2H−3); b₂ = (1/6)(2H−2)(2H−3)(2H²−13H+17).
///
/// The substitution divides by c₀ and the terms grow like 4ᵏ (the series'
/// radius of convergence is ½), so accuracy degrades for large k; keep
/// k_max ≲ 50 and watch the growth diagnostic in [`check_b_positivity`].
pub fn eta_b_coeffs(h: HurstParam, k_max: usize) -> Result<Vec<f64>> {
    let c = eta_c_coeffs(h, k_max);
    if c[0].abs() < 1e-300 {
        return Err(FgnError::DegenerateC0);
    }
    let mut b: Vec<f64> = Vec::with_capacity(k_max + 1);
    b.push(4.0);
    for k in 1..=k_max {
        let mut acc = 4f64.powi(k as i32 + 1) * c[k];
        for l in 1..=k {
            acc -= c[l] * b[k - l];
        }
        b.push(acc / c[0]);
    }
    Ok(b)
}

/// Scan bₖ > 0 for k = 0..k_max over the grid (open problem; expected to
/// hold). `growth_diagnostic` reports max |bₖ| across the scan,
/// quantifying how far the ~4ᵏ growth has gone at this k_max.
pub fn check_b_positivity(h_grid: &[f64], k_max: usize) -> ConjectureReport {
    let mut scan = ScanState::new();
    let mut max_abs = 0f64;
    for h in validate_long_range_grid(h_grid) {
        let b = eta_b_coeffs(h, k_max).expect("c0 != 0 away from h = 1/2");
        for (k, &bk) in b.iter().enumerate() {
            scan.observe(h.value(), 0, k, bk);
            if bk.abs() > max_abs {
                max_abs = bk.abs();
            }
        }
    }
    scan.finish("b-positivity: b[k] > 0 (open problem)", h_grid, k_max, Some(max_abs))
}

/// Empirical argmax of ψ(H,·) on a uniform grid of [0,1] with `points`
/// nodes: returns (x*, ψ(H,x*)). Purely descriptive — the turning point
/// where ψ switches from increasing to decreasing has no closed form, so
/// nothing is asserted about where this lands.
pub fn psi_argmax(h: HurstParam, points: usize) -> (f64, f64) {
    assert!(points >= 2, "need at least the two endpoints");
    let mut best = (0.0, f64::NEG_INFINITY);
    for j in 0..points {
        let x = j as f64 / (points - 1) as f64;
        let v = psi(h, x).expect("grid stays inside [0,1]");
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
