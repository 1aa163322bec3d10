use std::str::FromStr;

/// A one-dimensional parameter grid: `start:stop:n` (inclusive, `n ≥ 2`),
/// a comma list `v1,v2,...`, or a single value.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub values: Vec<f64>,
    text: String,
}

impl GridSpec {
    pub fn linspace(start: f64, stop: f64, n: usize) -> Self {
        let values = if n == 1 {
            vec![start]
        } else {
            (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    start * (1.0 - t) + stop * t
                })
                .collect()
        };
        Self { values, text: format!("{start}:{stop}:{n}") }
    }

    pub fn single(v: f64) -> Self {
        Self { values: vec![v], text: v.to_string() }
    }

    pub fn as_text(&self) -> &str {
        &self.text
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| parse_real(t).ok_or_else(|| format!("not a number: '{t}'"));
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            [a, b, n] => {
                let n: usize = n.trim().parse().map_err(|_| format!("bad point count in '{s}'"))?;
                if n < 2 {
                    return Err(format!("grid '{s}' needs at least 2 points"));
                }
                let mut g = Self::linspace(parse(a)?, parse(b)?, n);
                g.text = s.to_string();
                g
            }
            [_] => {
                let values = s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
                Self { values, text: s.to_string() }
            }
            _ => return Err(format!("expected start:stop:n or a comma list, got '{s}'")),
        };
        if spec.values.is_empty() {
            return Err("empty grid".into());
        }
        Ok(spec)
    }
}

/// Reals with `pi` / `2pi` shorthands.
pub fn parse_real(s: &str) -> Option<f64> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "pi" => Some(std::f64::consts::PI),
        "2pi" | "2*pi" => Some(2.0 * std::f64::consts::PI),
        _ => t.parse().ok().filter(|v: &f64| v.is_finite()),
    }
}

pub fn real_arg(s: &str) -> Result<f64, String> {
    parse_real(s).ok_or_else(|| format!("not a finite number: '{s}'"))
}
