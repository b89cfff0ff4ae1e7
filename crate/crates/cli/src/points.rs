//! Evaluation-point sources for the `field` subcommand: either an inline
//! grid specification or a plain text file.
//!
//! Grid form: `grid:x=a:b:n,y=a:b:n,z=a:b:n` — inclusive linspace per axis
//! (a single point when n = 1), Cartesian product with z varying fastest.
//! File form: one point per line, three numbers separated by whitespace or
//! commas; blank lines and `#` comments are skipped.

use bisphere_core::Vec3;
use std::path::Path;

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

fn parse_axis(spec: &str, axis: char) -> Result<Vec<f64>, String> {
    let rest = spec
        .strip_prefix(&format!("{axis}="))
        .ok_or_else(|| format!("expected '{axis}=start:stop:count', got '{spec}'"))?;
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("axis '{spec}' must be start:stop:count"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| format!("bad start in '{spec}'"))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| format!("bad stop in '{spec}'"))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad count in '{spec}'"))?;
    if count == 0 {
        return Err(format!("axis '{spec}' needs count >= 1"));
    }
    Ok(linspace(start, stop, count))
}

pub fn parse_grid(spec: &str) -> Result<Vec<Vec3>, String> {
    let body = spec.strip_prefix("grid:").expect("caller checked prefix");
    let axes: Vec<&str> = body.split(',').collect();
    if axes.len() != 3 {
        return Err("grid spec needs exactly x=…, y=…, z=… parts".to_string());
    }
    let xs = parse_axis(axes[0], 'x')?;
    let ys = parse_axis(axes[1], 'y')?;
    let zs = parse_axis(axes[2], 'z')?;
    let mut pts = Vec::with_capacity(xs.len() * ys.len() * zs.len());
    for &x in &xs {
        for &y in &ys {
            for &z in &zs {
                pts.push(Vec3::new(x, y, z));
            }
        }
    }
    Ok(pts)
}

pub fn parse_file(path: &Path) -> Result<Vec<Vec3>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 3 {
            return Err(format!(
                "{}:{}: expected 3 coordinates",
                path.display(),
                lineno + 1
            ));
        }
        let coord = |s: &str| -> Result<f64, String> {
            s.parse()
                .map_err(|_| format!("{}:{}: bad number '{s}'", path.display(), lineno + 1))
        };
        pts.push(Vec3::new(
            coord(fields[0])?,
            coord(fields[1])?,
            coord(fields[2])?,
        ));
    }
    if pts.is_empty() {
        return Err(format!("{}: no points found", path.display()));
    }
    Ok(pts)
}

/// Dispatch between the two source forms.
pub fn load(spec: &str) -> Result<Vec<Vec3>, String> {
    if spec.starts_with("grid:") {
        parse_grid(spec)
    } else {
        parse_file(Path::new(spec))
    }
}
