//! Pointwise and sweep tables with their CSV encodings.

use std::fmt::Write;

/// Shortest decimal that round-trips.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub x: f64,
    pub value: f64,
    pub error: Option<f64>,
    pub is_superpoint: bool,
    pub is_node: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub max_error: f64,
    pub superpoint_max_error: Option<f64>,
    pub ratio: Option<f64>,
    pub bound: Option<f64>,
}

pub fn pointwise_csv(points: &[Point]) -> String {
    let with_errors = points.iter().any(|p| p.error.is_some());
    let mut s = String::from(if with_errors {
        "x,value,error,is_superpoint,is_node\n"
    } else {
        "x,value\n"
    });
    for p in points {
        if with_errors {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                num(p.x),
                num(p.value),
                opt(p.error),
                p.is_superpoint as u8,
                p.is_node as u8
            );
        } else {
            let _ = writeln!(s, "{},{}", num(p.x), num(p.value));
        }
    }
    s
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("N,max_error,superpoint_max_error,ratio,bound\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            num(r.max_error),
            opt(r.superpoint_max_error),
            opt(r.ratio),
            opt(r.bound)
        );
    }
    s
}

/// A uniform grid on [-1, 1] merged with marked abscissae. Points that
/// coincide keep both marks.
pub fn merged_grid(grid_size: usize, superpoints: &[f64], nodes: &[f64]) -> Vec<(f64, bool, bool)> {
    let h = 2.0 / (grid_size - 1) as f64;
    let mut pts: Vec<(f64, bool, bool)> = (0..grid_size)
        .map(|i| (if i + 1 == grid_size { 1.0 } else { -1.0 + i as f64 * h }, false, false))
        .collect();
    pts.extend(superpoints.iter().map(|&x| (x, true, false)));
    pts.extend(nodes.iter().map(|&x| (x, false, true)));
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, bool, bool)> = Vec::with_capacity(pts.len());
    for p in pts {
        match out.last_mut() {
            Some(last) if last.0 == p.0 => {
                last.1 |= p.1;
                last.2 |= p.2;
            }
            _ => out.push(p),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let p = [Point {
            x: -0.5,
            value: 1e-20,
            error: Some(0.0),
            is_superpoint: true,
            is_node: false,
        }];
        assert_eq!(pointwise_csv(&p), "x,value,error,is_superpoint,is_node\n-0.5,1e-20,0.0,1,0\n");
        let p = [Point {
            x: 0.0,
            value: 1.5707963267948966,
            error: None,
            is_superpoint: false,
            is_node: true,
        }];
        assert_eq!(pointwise_csv(&p), "x,value\n0.0,1.5707963267948966\n");
        let r = [SweepRow {
            n: 8,
            max_error: 0.25,
            superpoint_max_error: None,
            ratio: None,
            bound: Some(3.0),
        }];
        assert_eq!(sweep_csv(&r), "N,max_error,superpoint_max_error,ratio,bound\n8,0.25,,,3.0\n");
    }

    #[test]
    fn merged_grid_keeps_marks() {
        let g = merged_grid(3, &[0.0, 0.5], &[0.5, -1.0]);
        assert_eq!(g, vec![(-1.0, false, true), (0.0, true, false), (0.5, true, true), (1.0, false, false)]);
    }
}
