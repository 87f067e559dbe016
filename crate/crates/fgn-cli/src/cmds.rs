//! One function per subcommand. Each returns the `OutputRecord` to render
//! plus a flag saying whether an asserted check found a counterexample
//! (which drives exit code 1); hard errors surface as `CliError`.

use std::fmt::Write as _;

use fgn::{analysis, bench, closed_form, covariance, recursion, toeplitz};
use fgn::{FgnError, HurstParam, PropertyReport, Regime};

use crate::grid;
use crate::output::{fmt5, fmt6, Cell, OutputRecord};

/// CLI-level failure, split by exit code: usage errors exit 2, numerical
/// or domain failures exit 3.
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<FgnError> for CliError {
    fn from(e: FgnError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

pub type CmdOutput = Result<(OutputRecord, bool), CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Cholesky factorization of the full system.
    Solve,
    /// Order-update recursion (Levinson-style).
    Recurrence,
    /// Cramer's rule with Laplace-expansion determinants (n <= 13).
    Cramer,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Solve => "solve",
            Method::Recurrence => "recurrence",
            Method::Cramer => "cramer",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Autocovariance identities and shape properties.
    Covariance,
    /// Coefficient positivity/dominance/monotonicity scans.
    Conjectures,
    /// Cholesky-factor entry and diagonal monotonicity scans.
    Cholesky,
    /// psi/eta ordering, monotonicity, and series-coefficient scans.
    Psi,
    /// Everything above.
    All,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Validate a `--hurst` flag value; rejection is a usage error (exit 2),
/// not a numerical one.
fn hurst_flag(v: f64) -> Result<HurstParam, CliError> {
    HurstParam::new(v).map_err(|e| usage(e.to_string()))
}

fn long_range_flag(v: f64, what: &str) -> Result<HurstParam, CliError> {
    let h = hurst_flag(v)?;
    if h.regime() != Regime::LongRange {
        return Err(usage(format!("{what} requires 0.5 < hurst < 1, got {v}")));
    }
    Ok(h)
}

/// Shortest-round-trip text for a flag value, used when echoing parameters.
fn param(v: f64) -> String {
    format!("{v}")
}

fn join_fmt5(values: &[f64]) -> String {
    values.iter().map(|&g| fmt5(g)).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------- coeffs

pub fn coeffs(hurst: f64, n: usize, method: Method) -> CmdOutput {
    let h = hurst_flag(hurst)?;
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    if method == Method::Cramer && n > 13 {
        return Err(usage(format!(
            "--method cramer supports n <= 13 (needs exact factorial determinants), got {n}"
        )));
    }
    let row = match method {
        Method::Solve => toeplitz::solve_system(h, n)?,
        Method::Recurrence => recursion::last_row(h, n)?,
        Method::Cramer => toeplitz::solve_cramer(h, n)?,
    };
    let rows: Vec<Vec<Cell>> = row
        .gammas
        .iter()
        .enumerate()
        .map(|(i, &g)| vec![Cell::Int(n as i64), Cell::Int((i + 2) as i64), Cell::Num(g)])
        .collect();
    let pretty = format!(
        "Gamma[n][k] for h = {}, n = {n} (method: {})\n{}\n",
        param(hurst),
        method.as_str(),
        join_fmt5(&row.gammas)
    );
    Ok((
        OutputRecord {
            command: "coeffs",
            parameters: vec![
                ("hurst", param(hurst)),
                ("n", n.to_string()),
                ("method", method.as_str().into()),
            ],
            columns: &["n", "k", "gamma"],
            rows,
            pretty,
        },
        false,
    ))
}

// ----------------------------------------------------------------- table

pub fn table(hurst: f64, n_max: usize) -> CmdOutput {
    let h = hurst_flag(hurst)?;
    if n_max < 2 {
        return Err(usage(format!("--n-max must be at least 2, got {n_max}")));
    }
    let triangle = recursion::coeff_triangle(h, n_max)?;

    let mut rows: Vec<Vec<Cell>> = Vec::new();
    for row in triangle.rows() {
        for (i, &g) in row.gammas.iter().enumerate() {
            rows.push(vec![
                Cell::Int(row.n as i64),
                Cell::Int((i + 2) as i64),
                Cell::Num(g),
            ]);
        }
    }

    // Pretty: the triangle layout of the published tables — one row per n,
    // k increasing to the right, blank cells where k > n.
    let mut pretty = format!("Coefficients Gamma[n][k] for h = {}\n\n", param(hurst));
    write!(pretty, "{:>5}", "n\\k").unwrap();
    for k in 2..=n_max {
        write!(pretty, "{k:>10}").unwrap();
    }
    pretty.push('\n');
    for row in triangle.rows() {
        write!(pretty, "{:>5}", row.n).unwrap();
        for &g in &row.gammas {
            write!(pretty, "{:>10}", fmt5(g)).unwrap();
        }
        pretty.push('\n');
    }

    Ok((
        OutputRecord {
            command: "table",
            parameters: vec![("hurst", param(hurst)), ("n_max", n_max.to_string())],
            columns: &["n", "k", "gamma"],
            rows,
            pretty,
        },
        false,
    ))
}

// ---------------------------------------------------------------- verify

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Note,
    Skip,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Note => "NOTE",
            Status::Skip => "SKIP",
        }
    }
}

/// Accumulates verify rows; `any_fail` drives exit code 1. NOTE rows are
/// descriptive findings (expected behavior being documented, e.g. row
/// non-monotonicity at large h) and never gate the exit code.
struct VerifyAcc {
    rows: Vec<Vec<Cell>>,
    pretty: Vec<String>,
    any_fail: bool,
}

impl VerifyAcc {
    fn new() -> Self {
        VerifyAcc { rows: Vec::new(), pretty: Vec::new(), any_fail: false }
    }

    fn push(
        &mut self,
        suite: &str,
        check: &str,
        scope: String,
        status: Status,
        margin: Option<f64>,
        counterexamples: i64,
    ) {
        if status == Status::Fail {
            self.any_fail = true;
        }
        let margin_cell = match margin {
            Some(m) => Cell::Num(m),
            None => Cell::Text(String::new()),
        };
        let mut line = format!("[{}] {suite}/{check} ({scope})", status.as_str());
        if let Some(m) = margin {
            write!(line, " margin {m:.3e}").unwrap();
        }
        if counterexamples > 0 {
            write!(line, " — {counterexamples} counterexample(s)").unwrap();
        }
        self.pretty.push(line);
        self.rows.push(vec![
            Cell::Text(suite.into()),
            Cell::Text(check.into()),
            Cell::Text(scope),
            Cell::Text(status.as_str().into()),
            margin_cell,
            Cell::Int(counterexamples),
        ]);
    }

    fn push_property(&mut self, suite: &str, h: f64, report: &PropertyReport) {
        let status = if report.holds { Status::Pass } else { Status::Fail };
        let counterexamples = i64::from(report.first_violation.is_some());
        self.push(
            suite,
            &report.property_name,
            format!("h={h}; {}", report.checked_range),
            status,
            Some(report.max_slack),
            counterexamples,
        );
    }

    fn push_conjecture(
        &mut self,
        suite: &str,
        report: &analysis::ConjectureReport,
        descriptive: bool,
    ) {
        let status = if descriptive {
            Status::Note
        } else if report.holds {
            Status::Pass
        } else {
            Status::Fail
        };
        let scope = format!("{} h value(s), order <= {}", report.h_grid.len(), report.n_max);
        self.push(
            suite,
            &report.conjecture_id,
            scope,
            status,
            Some(report.min_margin),
            report.counterexamples.len() as i64,
        );
    }
}

fn scope_grid(grid: &[f64]) -> String {
    format!("{} h value(s)", grid.len())
}

fn require_long_range_grid(grid: &[f64], what: &str) -> Result<(), CliError> {
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        if h.regime() != Regime::LongRange {
            return Err(usage(format!(
                "{what} requires every grid value strictly inside (0.5, 1); got {hv}"
            )));
        }
    }
    Ok(())
}

fn covariance_suite(acc: &mut VerifyAcc, grid: &[f64], n_max: usize) -> Result<(), CliError> {
    let m = (n_max as u64).max(10);
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        acc.push_property("covariance", hv, &covariance::check_identity_r1r2r3(h, 1e-12));
        match covariance::check_rho_properties(h, m.max(3)) {
            Ok(reports) => {
                for r in &reports {
                    acc.push_property("covariance", hv, r);
                }
            }
            Err(FgnError::NotApplicable(_)) => acc.push(
                "covariance",
                "rho shape properties",
                format!("h={hv}"),
                Status::Skip,
                None,
                0,
            ),
            Err(e) => return Err(e.into()),
        }
        let cm = covariance::check_complete_monotonicity(h, 8, m, None)?;
        acc.push_property("covariance", hv, &cm);
    }
    Ok(())
}

fn conjectures_suite(acc: &mut VerifyAcc, grid: &[f64], n_max: usize) -> Result<(), CliError> {
    require_long_range_grid(grid, "--suite conjectures")?;
    acc.push_conjecture("conjectures", &analysis::verify_positivity(grid, n_max), false);
    acc.push_conjecture("conjectures", &analysis::verify_first_largest(grid, n_max), false);
    acc.push_conjecture("conjectures", &analysis::verify_column_monotonicity(grid, n_max), false);
    // Row non-monotonicity is the one *expected* irregularity: the source
    // tables show it appearing for large h, so findings are reported as
    // NOTE rows, never as failures.
    acc.push_conjecture("conjectures", &analysis::verify_row_nonmonotonicity(grid, n_max), true);
    Ok(())
}

fn cholesky_suite(acc: &mut VerifyAcc, grid: &[f64], n_max: usize) -> Result<(), CliError> {
    require_long_range_grid(grid, "--suite cholesky")?;
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        let a = toeplitz::build_matrix(h, n_max.max(3))?;
        let l = toeplitz::cholesky_factor(&a)?;
        for r in toeplitz::cholesky_conjecture_checks(&l) {
            acc.push_property("cholesky", hv, &r);
        }
    }
    Ok(())
}

fn psi_suite(acc: &mut VerifyAcc, grid: &[f64]) -> Result<(), CliError> {
    require_long_range_grid(grid, "--suite psi")?;

    // posit2: the Γ₄³-positivity numerator ρ₂ + ρ₂² − ρ₁² − ρ₁ρ₃ > 0.
    let mut min_margin = f64::INFINITY;
    let mut fails = 0i64;
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        let rep = analysis::check_posit2(h);
        min_margin = min_margin.min(rep.max_slack);
        fails += i64::from(!rep.holds);
    }
    acc.push(
        "psi",
        "posit2 numerator positive",
        scope_grid(grid),
        if fails == 0 { Status::Pass } else { Status::Fail },
        Some(min_margin),
        fails,
    );

    // Endpoint ordering psi(h,0) > psi(h,1) — equivalent to posit2.
    let mut min_margin = f64::INFINITY;
    let mut fails = 0i64;
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        let gap = analysis::psi(h, 0.0)? - analysis::psi(h, 1.0)?;
        min_margin = min_margin.min(gap);
        fails += i64::from(gap <= 0.0);
    }
    acc.push(
        "psi",
        "psi(h,0) > psi(h,1)",
        scope_grid(grid),
        if fails == 0 { Status::Pass } else { Status::Fail },
        Some(min_margin),
        fails,
    );

    // eta strictly increasing on (0, 1/2].
    let mut min_margin = f64::INFINITY;
    let mut fails = 0i64;
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        let mut prev = None;
        for j in 1..=100u32 {
            let y = 0.5 * f64::from(j) / 100.0;
            let e = analysis::eta(h, y)?;
            if let Some(p) = prev {
                let gap = e - p;
                min_margin = min_margin.min(gap);
                fails += i64::from(gap <= 0.0);
            }
            prev = Some(e);
        }
    }
    acc.push(
        "psi",
        "eta strictly increasing in y",
        format!("{}; y grid (0, 0.5], 100 points", scope_grid(grid)),
        if fails == 0 { Status::Pass } else { Status::Fail },
        Some(min_margin),
        fails,
    );

    // psi_tail strictly decreasing on [1, 100].
    let mut min_margin = f64::INFINITY;
    let mut fails = 0i64;
    for &hv in grid {
        let h = HurstParam::new(hv).map_err(|e| usage(e.to_string()))?;
        let mut prev = None;
        for i in 0..=100u32 {
            let x = 1.0 + 99.0 * f64::from(i) / 100.0;
            let t = analysis::psi_tail(h, x);
            if let Some(p) = prev {
                let gap: f64 = p - t;
                min_margin = min_margin.min(gap);
                fails += i64::from(gap <= 0.0);
            }
            prev = Some(t);
        }
    }
    acc.push(
        "psi",
        "psi tail strictly decreasing in x",
        format!("{}; x grid [1, 100], 101 points", scope_grid(grid)),
        if fails == 0 { Status::Pass } else { Status::Fail },
        Some(min_margin),
        fails,
    );

    // b_k series positivity (evidence for the open problem).
    acc.push_conjecture("psi", &analysis::check_b_positivity(grid, 50), false);
    Ok(())
}

pub fn verify(suite: Suite, hurst_grid: &str, n_max: usize) -> CmdOutput {
    let grid = grid::parse_grid(hurst_grid).map_err(CliError::Usage)?;
    if grid.is_empty() {
        return Err(usage("--hurst-grid produced no points"));
    }
    if n_max < 2 {
        return Err(usage(format!("--n-max must be at least 2, got {n_max}")));
    }

    let mut acc = VerifyAcc::new();
    match suite {
        Suite::Covariance => covariance_suite(&mut acc, &grid, n_max)?,
        Suite::Conjectures => conjectures_suite(&mut acc, &grid, n_max)?,
        Suite::Cholesky => cholesky_suite(&mut acc, &grid, n_max)?,
        Suite::Psi => psi_suite(&mut acc, &grid)?,
        Suite::All => {
            covariance_suite(&mut acc, &grid, n_max)?;
            conjectures_suite(&mut acc, &grid, n_max)?;
            cholesky_suite(&mut acc, &grid, n_max)?;
            psi_suite(&mut acc, &grid)?;
        }
    }

    let suite_name = match suite {
        Suite::Covariance => "covariance",
        Suite::Conjectures => "conjectures",
        Suite::Cholesky => "cholesky",
        Suite::Psi => "psi",
        Suite::All => "all",
    };
    let mut pretty = format!(
        "verify --suite {suite_name}: {} check(s) over {} grid point(s), n <= {n_max}\n",
        acc.rows.len(),
        grid.len()
    );
    for line in &acc.pretty {
        pretty.push_str(line);
        pretty.push('\n');
    }
    pretty.push_str(if acc.any_fail {
        "result: counterexample(s) found\n"
    } else {
        "result: all asserted checks hold\n"
    });

    let any_fail = acc.any_fail;
    Ok((
        OutputRecord {
            command: "verify",
            parameters: vec![
                ("suite", suite_name.into()),
                ("hurst_grid", hurst_grid.into()),
                ("n_max", n_max.to_string()),
            ],
            columns: &["suite", "check", "scope", "status", "margin", "counterexamples"],
            rows: acc.rows,
            pretty,
        },
        any_fail,
    ))
}

// ---------------------------------------------------------------- limits

pub fn limits() -> CmdOutput {
    let (l32, l33) = closed_form::limits_n3();
    let (l42, l43, l44) = closed_form::limits_n4();
    let entries: [(i64, i64, f64); 5] =
        [(3, 2, l32), (3, 3, l33), (4, 2, l42), (4, 3, l43), (4, 4, l44)];
    let rows = entries
        .iter()
        .map(|&(n, k, v)| vec![Cell::Int(n), Cell::Int(k), Cell::Num(v)])
        .collect();
    let mut pretty = String::from("limits of Gamma[n][k] as h -> 1\n");
    for &(n, k, v) in &entries {
        writeln!(pretty, "Gamma[{n}][{k}] -> {}", fmt6(v)).unwrap();
    }
    Ok((
        OutputRecord {
            command: "limits",
            parameters: vec![],
            columns: &["n", "k", "limit"],
            rows,
            pretty,
        },
        false,
    ))
}

// ------------------------------------------------------------------- psi

pub fn psi(hurst: f64, x_grid: &str) -> CmdOutput {
    let h = long_range_flag(hurst, "psi")?;
    let xs = grid::parse_grid(x_grid).map_err(CliError::Usage)?;
    if xs.is_empty() {
        return Err(usage("--x-grid produced no points"));
    }
    if let Some(&bad) = xs.iter().find(|&&x| x < 0.0) {
        return Err(usage(format!("--x-grid values must be >= 0, got {bad}")));
    }
    let mut rows = Vec::with_capacity(xs.len());
    let mut pretty = format!("psi(h, x) for h = {}\n{:>12} {:>12}\n", param(hurst), "x", "psi");
    for &x in &xs {
        // The direct quotient covers [0, 1]; beyond that the reciprocal
        // substitution takes over (numerically stable for large x).
        let value =
            if x <= 1.0 { analysis::psi(h, x)? } else { analysis::psi_tail(h, x) };
        writeln!(pretty, "{:>12} {:>12}", fmt5(x), fmt5(value)).unwrap();
        rows.push(vec![Cell::Num(x), Cell::Num(value)]);
    }
    Ok((
        OutputRecord {
            command: "psi",
            parameters: vec![("hurst", param(hurst)), ("x_grid", x_grid.into())],
            columns: &["x", "psi"],
            rows,
            pretty,
        },
        false,
    ))
}

// ----------------------------------------------------------------- bench

pub fn bench_cmd(n_list: &str, reps: usize, hurst: f64) -> CmdOutput {
    let h = hurst_flag(hurst)?;
    if h.regime() == Regime::Degenerate {
        return Err(usage("bench requires hurst < 1 (h = 1 is a singular system)"));
    }
    if reps < 3 {
        return Err(usage(format!("--reps must be at least 3, got {reps}")));
    }
    let sizes = grid::parse_n_list(n_list).map_err(CliError::Usage)?;
    let results = bench::run_bench(h, &sizes, reps);

    let mut rows = Vec::with_capacity(results.len());
    let mut pretty = format!(
        "median wall time, seconds (h = {}, reps = {reps})\n{:<22} {:>8} {:>14}\n",
        param(hurst),
        "method",
        "n",
        "seconds"
    );
    for r in &results {
        writeln!(pretty, "{:<22} {:>8} {:>14.6}", r.method.as_str(), r.n, r.wall_time).unwrap();
        rows.push(vec![
            Cell::Text(r.method.as_str().into()),
            Cell::Int(r.n as i64),
            Cell::Num(r.wall_time),
            Cell::Int(r.reps as i64),
            Cell::Num(r.checksum),
        ]);
    }
    Ok((
        OutputRecord {
            command: "bench",
            parameters: vec![
                ("hurst", param(hurst)),
                ("n_list", n_list.into()),
                ("reps", reps.to_string()),
            ],
            columns: &["method", "n", "seconds", "reps", "checksum"],
            rows,
            pretty,
        },
        false,
    ))
}
