//! Parsing of `--p-grid` / `--n-grid` values: either an explicit
//! comma-separated list (`a,b,c`) or a range with step (`a:b:step`).

pub fn parse_real_grid(spec: &str) -> Result<Vec<f64>, String> {
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid {spec:?}: expected a:b:step"));
        }
        let a = parse_real(parts[0])?;
        let b = parse_real(parts[1])?;
        let step = parse_real(parts[2])?;
        if step.is_nan() || step <= 0.0 {
            return Err(format!("grid {spec:?}: step must be positive"));
        }
        if b < a {
            return Err(format!("grid {spec:?}: end below start"));
        }
        // index-based stepping avoids drift; tiny slack admits an endpoint
        // that a:b:step "just" reaches
        let count = ((b - a) / step + 1.0 + 1e-9).floor() as usize;
        Ok((0..count).map(|i| a + step * i as f64).collect())
    } else {
        spec.split(',').map(parse_real).collect()
    }
}

pub fn parse_int_grid(spec: &str) -> Result<Vec<usize>, String> {
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid {spec:?}: expected a:b:step"));
        }
        let a = parse_int(parts[0])?;
        let b = parse_int(parts[1])?;
        let step = parse_int(parts[2])?;
        if step == 0 {
            return Err(format!("grid {spec:?}: step must be positive"));
        }
        if b < a {
            return Err(format!("grid {spec:?}: end below start"));
        }
        Ok((a..=b).step_by(step).collect())
    } else {
        spec.split(',').map(parse_int).collect()
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("not a real number: {s:?}"))
}

fn parse_int(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("not a non-negative integer: {s:?}"))
}
