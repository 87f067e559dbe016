//! Timing harness comparing the three ways to obtain coefficient rows:
//! one system solve for the last row, from-scratch solves for every row of
//! the triangle (≈ n⁴/12 flops), and the order-update recursion (O(n²)).
//!
//! Expected picture: the recursion wins at every size for whole-triangle
//! work and overtakes even the single-row solve by n = 2000. Absolute
//! seconds are machine-bound — only orderings and log-log scaling slopes
//! are contracted, never reproduced times.
//!
//! Everything here runs single-threaded by design: the dense factorization
//! backend is pinned to sequential execution on every call, and the
//! harness itself never spawns, so timings compare algorithms rather than
//! scheduler behavior.

use crate::covariance::HurstParam;
use crate::recursion::coeff_triangle;
use crate::toeplitz::solve_system;
use std::hint::black_box;
use std::time::Instant;

/// The three contestants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMethod {
    /// One Cholesky solve producing only row n.
    SolveLastRow,
    /// Independent Cholesky solves for every row 2..=n.
    SolveWholeTriangle,
    /// The order-update recursion producing the whole triangle.
    Recurrence,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 3] =
        [BenchMethod::SolveLastRow, BenchMethod::SolveWholeTriangle, BenchMethod::Recurrence];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchMethod::SolveLastRow => "SOLVE_LAST_ROW",
            BenchMethod::SolveWholeTriangle => "SOLVE_WHOLE_TRIANGLE",
            BenchMethod::Recurrence => "RECURRENCE",
        }
    }
}

/// Median-of-reps wall time for one (method, n) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub method: BenchMethod,
    pub n: usize,
    /// Median wall time over the timed repetitions, in seconds.
    pub wall_time: f64,
    pub reps: usize,
    /// Sum of the last-row coefficients — a value every method must agree
    /// on (within 1e−6), kept live so the optimizer cannot discard work.
    pub checksum: f64,
}

fn checksum_of(method: BenchMethod, h: HurstParam, n: usize) -> f64 {
    match method {
        BenchMethod::SolveLastRow => {
            solve_system(h, n).expect("bench runs below h = 1").gammas.iter().sum()
        }
        BenchMethod::SolveWholeTriangle => {
            let mut last = 0.0;
            for m in 2..=n {
                let row = solve_system(h, m).expect("bench runs below h = 1");
                last = black_box(row.gammas.iter().sum());
            }
            last
        }
        BenchMethod::Recurrence => {
            let tri = coeff_triangle(h, n).expect("bench runs below h = 1");
            tri.row(n).gammas.iter().sum()
        }
    }
}

fn median(times: &mut [f64]) -> f64 {
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        0.5 * (times[mid - 1] + times[mid])
    }
}

/// Run the full method × size comparison: for each n, first establish that
/// all three methods produce the same last row (checksums within 1e−6 —
/// no timing is reported for a size whose outputs disagree), then time
/// `reps` repetitions of each method after one discarded warm-up, and
/// report the median. The warm-up doubles as the checksum run.
///
/// Results are ordered (n outer, method inner in [`BenchMethod::ALL`]
/// order).
pub fn run_bench(h: HurstParam, n_list: &[usize], reps: usize) -> Vec<BenchResult> {
    assert!(reps >= 3, "need at least 3 repetitions for a meaningful median");
    assert!(n_list.iter().all(|&n| n >= 2), "projection orders start at n = 2");

    let mut results = Vec::with_capacity(3 * n_list.len());
    for &n in n_list {
        // Warm-up + output-equivalence gate, before any timing.
        let sums: Vec<f64> =
            BenchMethod::ALL.iter().map(|&m| checksum_of(m, h, n)).collect();
        for (i, &s) in sums.iter().enumerate() {
            assert!(
                (s - sums[0]).abs() <= 1e-6,
                "method outputs disagree at n = {n}: {} sums to {s}, {} to {}",
                BenchMethod::ALL[i].as_str(),
                BenchMethod::ALL[0].as_str(),
                sums[0],
            );
        }

        for (mi, &method) in BenchMethod::ALL.iter().enumerate() {
            let mut times = Vec::with_capacity(reps);
            for _ in 0..reps {
                let start = Instant::now();
                let sum = checksum_of(method, h, n);
                times.push(start.elapsed().as_secs_f64());
                black_box(sum);
            }
            results.push(BenchResult {
                method,
                n,
                wall_time: median(&mut times),
                reps,
                checksum: sums[mi],
            });
        }
    }
    results
}

/// Least-squares slope of ln(time) against ln(n) — the empirical scaling
/// exponent of one method across sizes.
pub fn fit_loglog_slope(points: &[(usize, f64)]) -> f64 {
    assert!(points.len() >= 2, "need at least two sizes to fit a slope");
    let logs: Vec<(f64, f64)> =
        points.iter().map(|&(n, t)| ((n as f64).ln(), t.ln())).collect();
    let m = logs.len() as f64;
    let (sx, sy): (f64, f64) =
        logs.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (sxx, sxy): (f64, f64) =
        logs.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x * x, b + x * y));
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}
