//! Acceptance gate: the eleven primary criteria, run sequentially in one
//! test so the benchmark timing (criterion 10) is never perturbed by
//! parallel test threads. Each criterion prints exactly one PASS/FAIL
//! line; the test fails at the end if any criterion failed.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines on success too.

use std::time::Instant;

use fgn::{analysis, bench, closed_form, covariance, montecarlo, recursion, toeplitz};
use fgn::HurstParam;

fn h(v: f64) -> HurstParam {
    HurstParam::new(v).unwrap()
}

/// The published coefficient tables, 5 decimals, rows n = 2..=10.
/// GOLDEN[t] = (H, rows), rows[i] = coefficients of order n = i + 2.
const GOLDEN: [(f64, [&[f64]; 9]); 6] = [
    (0.51, [
        &[0.01396],
        &[0.01389, 0.00521],
        &[0.01387, 0.00516, 0.00339],
        &[0.01386, 0.00515, 0.00336, 0.00253],
        &[0.01386, 0.00514, 0.00335, 0.00250, 0.00201],
        &[0.01385, 0.00514, 0.00334, 0.00249, 0.00199, 0.00167],
        &[0.01385, 0.00514, 0.00334, 0.00248, 0.00198, 0.00165, 0.00143],
        &[0.01385, 0.00513, 0.00334, 0.00248, 0.00198, 0.00165, 0.00142, 0.00125],
        &[0.01385, 0.00513, 0.00333, 0.00248, 0.00198, 0.00164, 0.00141, 0.00124, 0.00111],
    ]),
    (0.6, [
        &[0.14870],
        &[0.14123, 0.05020],
        &[0.13954, 0.04542, 0.03383],
        &[0.13868, 0.04427, 0.03031, 0.02522],
        &[0.13817, 0.04366, 0.02942, 0.02243, 0.02013],
        &[0.13784, 0.04329, 0.02893, 0.02170, 0.01781, 0.01675],
        &[0.13760, 0.04303, 0.02862, 0.02129, 0.01719, 0.01477, 0.01434],
        &[0.13742, 0.04285, 0.02840, 0.02102, 0.01683, 0.01423, 0.01262, 0.01254],
        &[0.13728, 0.04271, 0.02824, 0.02083, 0.01660, 0.01391, 0.01214, 0.01101, 0.01114],
    ]),
    (0.7, [
        &[0.31951],
        &[0.28867, 0.09652],
        &[0.28207, 0.07677, 0.06840],
        &[0.27860, 0.07288, 0.05409, 0.05074],
        &[0.27654, 0.07069, 0.05114, 0.03946, 0.04048],
        &[0.27518, 0.06936, 0.04942, 0.03708, 0.03117, 0.03366],
        &[0.27421, 0.06846, 0.04835, 0.03566, 0.02917, 0.02573, 0.02881],
        &[0.27348, 0.06782, 0.04762, 0.03476, 0.02796, 0.02401, 0.02191, 0.02518],
        &[0.27292, 0.06733, 0.04708, 0.03413, 0.02718, 0.02295, 0.02039, 0.01907, 0.02237],
    ]),
    (0.8, [
        &[0.51572],
        &[0.44379, 0.13947],
        &[0.42915, 0.09287, 0.10500],
        &[0.42108, 0.08574, 0.07202, 0.07684],
        &[0.41637, 0.08132, 0.06676, 0.05103, 0.06130],
        &[0.41325, 0.07873, 0.06336, 0.04690, 0.04010, 0.05089],
        &[0.41103, 0.07698, 0.06132, 0.04414, 0.03668, 0.03291, 0.04352],
        &[0.40938, 0.07573, 0.05993, 0.04246, 0.03435, 0.02999, 0.02790, 0.03801],
        &[0.40810, 0.07479, 0.05892, 0.04130, 0.03292, 0.02796, 0.02534, 0.02420, 0.03373],
    ]),
    (0.9, [
        &[0.74110],
        &[0.60809, 0.17948],
        &[0.58213, 0.09152, 0.14465],
        &[0.56714, 0.08204, 0.08433, 0.10362],
        &[0.55857, 0.07506, 0.07754, 0.05671, 0.08272],
        &[0.55290, 0.07118, 0.07223, 0.05156, 0.04445, 0.06852],
        &[0.54889, 0.06858, 0.06921, 0.04734, 0.04028, 0.03617, 0.05851],
        &[0.54590, 0.06673, 0.06716, 0.04492, 0.03675, 0.03266, 0.03049, 0.05105],
        &[0.54359, 0.06535, 0.06568, 0.04326, 0.03472, 0.02962, 0.02747, 0.02633, 0.04527],
    ]),
    (0.99, [
        &[0.97247],
        &[0.76506, 0.21328],
        &[0.72588, 0.07275, 0.18368],
        &[0.70233, 0.06342, 0.09059, 0.12824],
        &[0.68917, 0.05413, 0.08408, 0.05617, 0.10262],
        &[0.68047, 0.04937, 0.07696, 0.05159, 0.04422, 0.08474],
        &[0.67435, 0.04617, 0.07323, 0.04602, 0.04065, 0.03555, 0.07228],
        &[0.66979, 0.04393, 0.07067, 0.04312, 0.03604, 0.03265, 0.02980, 0.06299],
        &[0.66628, 0.04227, 0.06885, 0.04111, 0.03363, 0.02870, 0.02735, 0.02560, 0.05582],
    ]),
];

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate { failures: Vec::new() }
    }

    fn report(&mut self, id: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}: {detail}");
        if !ok {
            self.failures.push(format!("{id}: {detail}"));
        }
    }
}

/// Long-range grid {0.51, 0.52, ..., 0.99}.
fn long_grid() -> Vec<f64> {
    (51..=99).map(|i| f64::from(i) / 100.0).collect()
}

// 1. Golden tables, both solver and recursion, every cell within 1e-5.
fn criterion_1(gate: &mut Gate) {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cells = 0usize;
    for (hv, rows) in &GOLDEN {
        let hp = h(*hv);
        let triangle = recursion::coeff_triangle(hp, 10).unwrap();
        for (i, want_row) in rows.iter().enumerate() {
            let n = i + 2;
            let solved = toeplitz::solve_system(hp, n).unwrap();
            let recursed = triangle.row(n);
            for (k_idx, &want) in want_row.iter().enumerate() {
                cells += 1;
                worst = worst.max((solved.gammas[k_idx] - want).abs());
                worst = worst.max((recursed.gammas[k_idx] - want).abs());
            }
        }
    }
    let dt = start.elapsed().as_secs_f64();
    gate.report(
        "criterion 1 (golden tables)",
        worst <= 1e-5 && dt < 1.0,
        format!("{cells} cells x 2 methods, worst |diff| = {worst:.2e} (<= 1e-5), {dt:.2}s (< 1s)"),
    );
}

// 2. Method equivalence: solver vs recursion to n = 200, vs Cramer to n = 12.
fn criterion_2(gate: &mut Gate) {
    let start = Instant::now();
    let mut worst_rec = 0.0f64;
    let mut worst_cramer = 0.0f64;
    let mut hv = 0.51;
    while hv < 0.995 {
        let hp = h(hv);
        let triangle = recursion::coeff_triangle(hp, 200).unwrap();
        for n in 2..=200 {
            let solved = toeplitz::solve_system(hp, n).unwrap();
            for (a, b) in solved.gammas.iter().zip(&triangle.row(n).gammas) {
                worst_rec = worst_rec.max((a - b).abs());
            }
            if n <= 12 {
                let cramer = toeplitz::solve_cramer(hp, n).unwrap();
                for (a, b) in solved.gammas.iter().zip(&cramer.gammas) {
                    worst_cramer = worst_cramer.max((a - b).abs());
                }
            }
        }
        hv += 0.04;
    }
    let dt = start.elapsed().as_secs_f64();
    gate.report(
        "criterion 2 (method equivalence)",
        worst_rec <= 1e-9 && worst_cramer <= 1e-9 && dt < 30.0,
        format!(
            "solve vs recursion worst {worst_rec:.2e}, vs cramer worst {worst_cramer:.2e} (both <= 1e-9), {dt:.1}s (< 30s)"
        ),
    );
}

// 3. Limit constants at 6 decimals, tuple sums, continuity near h = 1.
fn criterion_3(gate: &mut Gate) {
    let (l32, l33) = closed_form::limits_n3();
    let (l42, l43, l44) = closed_form::limits_n4();
    let six = |v: f64| format!("{v:.6}");
    let mut ok = six(l32) == "0.783083"
        && six(l33) == "0.216917"
        && six(l42) == "0.742250"
        && six(l43) == "0.069508"
        && six(l44) == "0.188242";
    ok &= (l32 + l33 - 1.0).abs() <= 1e-12 && (l42 + l43 + l44 - 1.0).abs() <= 1e-12;

    let near = h(1.0 - 1e-4);
    let (g32, g33) = closed_form::gamma3(near).unwrap();
    let (g42, g43, g44) = closed_form::gamma4(near).unwrap();
    let gap3 = (g32 - l32).abs().max((g33 - l33).abs());
    let gap4 = (g42 - l42).abs().max((g43 - l43).abs()).max((g44 - l44).abs());
    ok &= gap3 <= 2e-3 && gap4 <= 5e-3;
    gate.report(
        "criterion 3 (limits)",
        ok,
        format!(
            "constants match at 6 d.p., sums within 1e-12, gamma3(1-1e-4) gap {gap3:.2e} (<= 2e-3), gamma4 gap {gap4:.2e} (<= 5e-3)"
        ),
    );
}

// 4. Closed-form endpoints: h = 0 ladder and h = 1/2 zeros.
fn criterion_4(gate: &mut Gate) {
    let mut worst_zero = 0.0f64;
    let mut worst_half = 0.0f64;
    for n in 2..=50 {
        let ladder = closed_form::gamma_h_zero(n);
        let solved = toeplitz::solve_system(h(0.0), n).unwrap();
        for (a, b) in ladder.gammas.iter().zip(&solved.gammas) {
            worst_zero = worst_zero.max((a - b).abs());
        }
        for &g in &toeplitz::solve_system(h(0.5), n).unwrap().gammas {
            worst_half = worst_half.max(g.abs());
        }
    }
    gate.report(
        "criterion 4 (closed-form endpoints)",
        worst_zero <= 1e-12 && worst_half <= 1e-14,
        format!(
            "h=0 ladder vs solver worst {worst_zero:.2e} (<= 1e-12), h=1/2 worst |gamma| {worst_half:.2e} (<= 1e-14), n <= 50"
        ),
    );
}

// 5. Covariance property suite.
fn criterion_5(gate: &mut Gate) {
    let mut ok = true;
    let mut notes = Vec::new();

    // Identity on the 99-point grid.
    let mut worst_resid = 0.0f64;
    for i in 1..=99 {
        let rep = covariance::check_identity_r1r2r3(h(f64::from(i) / 100.0), 1e-12);
        ok &= rep.holds;
        // For the identity check, max_slack carries the residual itself.
        worst_resid = worst_resid.max(rep.max_slack);
    }
    notes.push(format!("identity worst residual {worst_resid:.1e}"));

    // Shape properties and complete monotonicity on both regimes, k <= 1000.
    let mut rho13_margin = f64::INFINITY;
    for i in 1..=99 {
        if i == 50 {
            continue;
        }
        let hp = h(f64::from(i) / 100.0);
        for rep in covariance::check_rho_properties(hp, 1000).unwrap() {
            ok &= rep.holds;
        }
        let cm = covariance::check_complete_monotonicity(hp, 8, 200, None).unwrap();
        ok &= cm.holds;
        if i > 50 {
            let m = covariance::rho(hp, 3) - covariance::rho(hp, 1).powi(2);
            rho13_margin = rho13_margin.min(m);
            ok &= m > 0.0;
        }
    }
    notes.push(format!("rho1^2 < rho3 min margin {rho13_margin:.1e}"));
    notes.push("shape + CM(order 8, k<=200) hold on both regimes, k <= 1000".into());

    gate.report("criterion 5 (covariance suite)", ok, notes.join("; "));
}

// 6. Conjecture suite on the long-range grid, n <= 100.
fn criterion_6(gate: &mut Gate) {
    let grid = long_grid();
    let pos = analysis::verify_positivity(&grid, 100);
    let first = analysis::verify_first_largest(&grid, 100);
    let col = analysis::verify_column_monotonicity(&grid, 100);
    let mut ok = pos.holds
        && first.holds
        && col.holds
        && pos.min_margin > 0.0
        && first.min_margin > 0.0
        && col.min_margin > 0.0;

    // Row non-monotonicity must be *detected* at (h = 0.9, n = 4).
    let row = analysis::verify_row_nonmonotonicity(&[0.9], 4);
    let detected =
        !row.holds && row.counterexamples.iter().any(|&(hv, n, _, _)| hv == 0.9 && n == 4);
    ok &= detected;
    gate.report(
        "criterion 6 (conjecture suite)",
        ok,
        format!(
            "positivity/first-largest/column-mono margins {:.1e}/{:.1e}/{:.1e} (all > 0), row non-monotonicity detected at (0.9, n=4): {detected}",
            pos.min_margin, first.min_margin, col.min_margin
        ),
    );
}

// 7. The Gamma[4][3] = Gamma[4][4] crossing point.
fn criterion_7(gate: &mut Gate) {
    let root = closed_form::crossing_g43_g44();
    let err = (root - 0.752281).abs();
    gate.report(
        "criterion 7 (crossing point)",
        err <= 1e-4,
        format!("root {root:.6} vs 0.752281, |diff| = {err:.1e} (<= 1e-4)"),
    );
}

// 8. psi/eta suite.
fn criterion_8(gate: &mut Gate) {
    let grid = long_grid();
    let mut ok = true;
    let mut worst_b12 = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for &hv in &grid {
        let hp = h(hv);
        // Endpoint ordering.
        let gap = analysis::psi(hp, 0.0).unwrap() - analysis::psi(hp, 1.0).unwrap();
        min_gap = min_gap.min(gap);
        ok &= gap > 0.0;

        // eta strictly increasing on (0, 1/2].
        let mut prev = f64::NEG_INFINITY;
        for j in 1..=100 {
            let e = analysis::eta(hp, 0.5 * f64::from(j) / 100.0).unwrap();
            ok &= e > prev;
            prev = e;
        }

        // psi_tail strictly decreasing on [1, 100].
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let t = analysis::psi_tail(hp, 1.0 + 99.0 * f64::from(i) / 100.0);
            ok &= t < prev;
            prev = t;
        }

        // b0 = 4 and the b1/b2 closed forms.
        let b = analysis::eta_b_coeffs(hp, 2).unwrap();
        let b1 = (2.0 * hv - 2.0) * (2.0 * hv - 3.0);
        let b2 = (2.0 * hv - 2.0) * (2.0 * hv - 3.0) * (2.0 * hv * hv - 13.0 * hv + 17.0) / 6.0;
        let err = (b[0] - 4.0).abs().max((b[1] - b1).abs()).max((b[2] - b2).abs());
        worst_b12 = worst_b12.max(err);
        ok &= err <= 1e-10;
    }
    let bpos = analysis::check_b_positivity(&grid, 50);
    ok &= bpos.holds;
    gate.report(
        "criterion 8 (psi/eta suite)",
        ok,
        format!(
            "psi(h,0)-psi(h,1) min gap {min_gap:.1e} (> 0), eta increasing, tail decreasing on [1,100], b0/b1/b2 worst err {worst_b12:.1e} (<= 1e-10), b_k > 0 to k = 50 (margin {:.1e})",
            bpos.min_margin
        ),
    );
}

// 9. Cholesky suite at n = 2000 over the long-range grid.
fn criterion_9(gate: &mut Gate) {
    let start = Instant::now();
    let mut ok = true;
    // Factorization succeeds across sizes (spot checks below the maximum).
    for n in [100usize, 500, 1000] {
        ok &= toeplitz::cholesky_factor(&toeplitz::build_matrix(h(0.7), n).unwrap()).is_ok();
    }
    for &hv in &long_grid() {
        let a = toeplitz::build_matrix(h(hv), 2000).unwrap();
        let l = match toeplitz::cholesky_factor(&a) {
            Ok(l) => l,
            Err(e) => {
                ok = false;
                println!("  factorization failed at h={hv}: {e}");
                continue;
            }
        };
        for rep in toeplitz::cholesky_conjecture_checks(&l) {
            // All three checks — entry positivity, main-diagonal
            // monotonicity, all-diagonal monotonicity — expect zero
            // counterexamples.
            ok &= rep.holds;
        }
    }
    let dt = start.elapsed().as_secs_f64();
    gate.report(
        "criterion 9 (cholesky suite)",
        ok,
        format!("49 grid points, n = 2000: factorization + all three scans hold, {dt:.1}s"),
    );
}

// 10. Benchmark ordering and log-log scaling slopes.
fn criterion_10(gate: &mut Gate) {
    let start = Instant::now();
    let sizes = [100usize, 250, 500, 1000, 2000];
    let results = bench::run_bench(h(0.7), &sizes, 3);
    let time_of = |method: &str, n: usize| -> f64 {
        results
            .iter()
            .find(|r| r.method.as_str() == method && r.n == n)
            .map(|r| r.wall_time)
            .unwrap()
    };

    let mut ok = true;
    // Ordering: recurrence never slower than the whole triangle, and not
    // slower than the from-scratch last row at the largest size.
    for &n in &[100usize, 500, 1000, 2000] {
        ok &= time_of("RECURRENCE", n) <= time_of("SOLVE_WHOLE_TRIANGLE", n);
    }
    ok &= time_of("RECURRENCE", 2000) <= time_of("SOLVE_LAST_ROW", 2000);

    // Slopes on the {250, 500, 1000, 2000} quadruple (100 is below the
    // asymptotic range).
    let points = |method: &str| -> Vec<(usize, f64)> {
        sizes[1..].iter().map(|&n| (n, time_of(method, n))).collect()
    };
    let slope_rec = bench::fit_loglog_slope(&points("RECURRENCE"));
    let slope_tri = bench::fit_loglog_slope(&points("SOLVE_WHOLE_TRIANGLE"));
    ok &= (1.6..=2.6).contains(&slope_rec);
    ok &= slope_tri >= slope_rec + 0.8;

    let dt = start.elapsed().as_secs_f64();
    ok &= dt < 600.0;
    gate.report(
        "criterion 10 (benchmark ordering)",
        ok,
        format!(
            "recurrence <= whole-triangle at all sizes, <= last-row at 2000; slopes rec {slope_rec:.2} (in [1.6, 2.6]), triangle {slope_tri:.2} (>= rec + 0.8); {dt:.0}s (< 600s)"
        ),
    );
}

// 11. Monte-Carlo oracle: 20 seeds x 1e6 paths at (0.7, n = 4).
fn criterion_11(gate: &mut Gate) {
    let start = Instant::now();
    let table_row = [0.28207, 0.07677, 0.06840]; // golden row n = 4 at h = 0.7
    let mut hits = 0;
    for seed in 0..20u64 {
        let samples = montecarlo::simulate_fgn(h(0.7), 4, 1_000_000, seed).unwrap();
        let (row, se) = montecarlo::ols_with_stderr(&samples).unwrap();
        let within = row
            .gammas
            .iter()
            .zip(&se)
            .zip(&table_row)
            .all(|((g, s), t)| (g - t).abs() <= 5.0 * s);
        hits += i32::from(within);
    }
    let dt = start.elapsed().as_secs_f64();
    gate.report(
        "criterion 11 (monte-carlo oracle)",
        hits >= 19,
        format!("{hits}/20 seeds within 5 SE of the published row componentwise (need >= 19), {dt:.0}s"),
    );
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::new();
    criterion_1(&mut gate);
    criterion_2(&mut gate);
    criterion_3(&mut gate);
    criterion_4(&mut gate);
    criterion_5(&mut gate);
    criterion_6(&mut gate);
    criterion_7(&mut gate);
    criterion_8(&mut gate);
    criterion_9(&mut gate);
    criterion_10(&mut gate);
    criterion_11(&mut gate);
    assert!(
        gate.failures.is_empty(),
        "acceptance criteria failed:\n{}",
        gate.failures.join("\n")
    );
}
