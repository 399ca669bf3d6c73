//! Grid syntax shared by the sweep-style flags:
//!
//! * `0.1,0.2,0.5`          — explicit comma-separated values
//! * `lo:hi:lin[:count]`    — `count` equally spaced values (default 9)
//! * `lo:hi:log[:count]`    — `count` geometrically spaced values
//!   (`log10` is accepted as an alias)

use poisson_quad::Error;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::Domain("empty grid specification".into()));
    }
    if !spec.contains(':') {
        let mut values = Vec::new();
        for part in spec.split(',') {
            values.push(parse_value(part)?);
        }
        return Ok(values);
    }

    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 && parts.len() != 4 {
        return Err(Error::Domain(format!(
            "grid `{spec}` must be `lo:hi:lin|log[:count]` or a comma-separated list"
        )));
    }
    let lo = parse_value(parts[0])?;
    let hi = parse_value(parts[1])?;
    let count: usize = match parts.get(3) {
        None => 9,
        Some(c) => c
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("grid count `{c}` is not an integer")))?,
    };
    if count < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {count}")));
    }
    if lo == hi {
        return Err(Error::Domain(format!("grid endpoints coincide at {lo}")));
    }
    let scale = parts[2].trim();
    let values = match scale {
        "lin" | "linear" => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
        "log" | "log10" => {
            if !(lo > 0.0 && hi > 0.0) {
                return Err(Error::Domain(format!(
                    "log grid endpoints must be positive, got {lo} and {hi}"
                )));
            }
            let ratio = hi / lo;
            (0..count)
                .map(|i| lo * ratio.powf(i as f64 / (count - 1) as f64))
                .collect()
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown grid scale `{other}` (use lin, log or log10)"
            )))
        }
    };
    Ok(values)
}

fn parse_value(s: &str) -> Result<f64, Error> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("grid value `{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Domain(format!("grid value {v} is not finite")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_list() {
        assert_eq!(parse_grid("1, 0.5,0.25").unwrap(), vec![1.0, 0.5, 0.25]);
    }

    #[test]
    fn log_grid_hits_endpoints() {
        let g = parse_grid("0.01:1:log:5").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[0] - 0.01).abs() < 1e-15 && (g[4] - 1.0).abs() < 1e-12);
        assert!((g[2] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn lin_grid_default_count() {
        let g = parse_grid("0:2:lin").unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[8], 2.0);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1:2", "1:2:cubic", "0:1:log", "2:2:lin", "a,b", "1:2:lin:1"] {
            assert!(parse_grid(bad).is_err(), "{bad} should fail");
        }
    }
}
