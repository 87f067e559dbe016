//! Flag-value parsers: `start:stop:step` grids and comma-separated size
//! lists.

/// Parse a grid spec: either a single value (`0.7`) or `start:stop:step`
/// with both endpoints inclusive within half-step tolerance. Points are
/// generated as `start + i·step` (index arithmetic, so no accumulated
/// drift) while `start + i·step ≤ stop + step/2`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => {
            let v = parse_f64(single)?;
            Ok(vec![v])
        }
        [start, stop, step] => {
            let start = parse_f64(start)?;
            let stop = parse_f64(stop)?;
            let step = parse_f64(step)?;
            if !(step > 0.0) {
                return Err(format!("grid step must be positive, got {step}"));
            }
            if stop < start {
                return Err(format!("grid stop {stop} is below start {start}"));
            }
            let mut points = Vec::new();
            let mut i = 0u64;
            loop {
                let x = start + i as f64 * step;
                if x > stop + step / 2.0 {
                    break;
                }
                points.push(x);
                i += 1;
            }
            Ok(points)
        }
        _ => Err(format!(
            "grid spec '{spec}' must be a single value or start:stop:step"
        )),
    }
}

/// Parse a comma-separated list of positive integers (`100,500,1000`).
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let n: usize = part
            .parse()
            .map_err(|_| format!("'{part}' in --n-list is not a positive integer"))?;
        if n < 2 {
            return Err(format!("--n-list entries must be at least 2, got {n}"));
        }
        out.push(n);
    }
    if out.is_empty() {
        return Err("--n-list must name at least one size".into());
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}
