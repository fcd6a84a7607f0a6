//! Barycentric interpolation through a node set, with first and second
//! derivatives and dense error sampling.

use crate::error::{domain, Result};
use crate::nodes::{nodal_poly, NodeFamily, NodeSet};
use crate::orthopoly::DOMAIN_SLACK;

#[derive(Debug, Clone)]
pub struct Interpolant {
    pub nodes: NodeSet,
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
    /// u_N' and u_N'' at the nodes.
    d1: Vec<f64>,
    d2: Vec<f64>,
}

/// Barycentric weights for a node set, scaled so that `max |w| = 1`.
pub fn barycentric_weights(nodes: &NodeSet) -> Result<Vec<f64>> {
    let m = nodes.len();
    let mut w: Vec<f64> = match nodes.family {
        NodeFamily::ChebGauss => nodes
            .thetas
            .iter()
            .enumerate()
            .map(|(i, t)| sign(i) * t.sin())
            .collect(),
        NodeFamily::ChebLobatto => (0..m)
            .map(|i| {
                let half = if i == 0 || i + 1 == m { 0.5 } else { 1.0 };
                sign(i) * half
            })
            .collect(),
        family => nodes
            .xs
            .iter()
            .map(|&x| nodal_poly(family, nodes.n, x, 1).map(|d| 1.0 / d))
            .collect::<Result<_>>()?,
    };
    let scale = w.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if !(scale.is_finite() && scale > 0.0) || w.iter().any(|v| *v == 0.0) {
        return domain(format!("degenerate barycentric weights for {} N={}", nodes.family, nodes.n));
    }
    for v in &mut w {
        *v /= scale;
    }
    Ok(w)
}

fn sign(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn node_hit(x: f64, xk: f64) -> bool {
    (x - xk).abs() <= 4.0 * f64::EPSILON * xk.abs().max(f64::MIN_POSITIVE)
}

/// Second-form barycentric quotient, exact at nodes. Values are shifted by
/// `f[0]` so constants are reproduced without rounding.
fn bary_eval(xs: &[f64], w: &[f64], f: &[f64], x: f64) -> f64 {
    let shift = f[0];
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&xk, &wk), &fk) in xs.iter().zip(w).zip(f) {
        if node_hit(x, xk) {
            return fk;
        }
        let c = wk / (x - xk);
        num += c * (fk - shift);
        den += c;
    }
    shift + num / den
}

/// Applies the first- and second-derivative matrices to `f` without
/// storing them.
fn apply_diff(xs: &[f64], w: &[f64], f: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let m = xs.len();
    let mut d1 = vec![0.0; m];
    let mut d2 = vec![0.0; m];
    let mut row1 = vec![0.0; m];
    for i in 0..m {
        let mut diag = 0.0;
        for j in 0..m {
            if j != i {
                row1[j] = (w[j] / w[i]) / (xs[i] - xs[j]);
                diag -= row1[j];
            }
        }
        row1[i] = diag;
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        let mut diag2 = 0.0;
        for j in 0..m {
            s1 += row1[j] * f[j];
            if j != i {
                let e = 2.0 * row1[j] * (diag - 1.0 / (xs[i] - xs[j]));
                diag2 -= e;
                s2 += e * f[j];
            }
        }
        d1[i] = s1;
        d2[i] = s2 + diag2 * f[i];
    }
    (d1, d2)
}

/// First- and second-derivative matrices for nodes `xs` with weights `w`,
/// diagonals from the negative-sum rule.
pub fn differentiation_matrices(xs: &[f64], w: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let m = xs.len();
    let mut d = vec![vec![0.0; m]; m];
    let mut d2 = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            if j != i {
                d[i][j] = (w[j] / w[i]) / (xs[i] - xs[j]);
                d[i][i] -= d[i][j];
            }
        }
        for j in 0..m {
            if j != i {
                d2[i][j] = 2.0 * d[i][j] * (d[i][i] - 1.0 / (xs[i] - xs[j]));
                d2[i][i] -= d2[i][j];
            }
        }
    }
    (d, d2)
}

pub fn build_interpolant(nodes: NodeSet, values: Vec<f64>) -> Result<Interpolant> {
    let weights = barycentric_weights(&nodes)?;
    Interpolant::with_weights(nodes, values, weights)
}

impl Interpolant {
    /// Uses caller-supplied weights; any nonzero rescaling of the natural
    /// weights gives the same interpolant.
    pub fn with_weights(nodes: NodeSet, values: Vec<f64>, weights: Vec<f64>) -> Result<Interpolant> {
        if values.len() != nodes.len() || weights.len() != nodes.len() {
            return domain(format!(
                "{} nodes but {} values and {} weights",
                nodes.len(),
                values.len(),
                weights.len()
            ));
        }
        if weights.iter().any(|w| *w == 0.0 || !w.is_finite()) {
            return domain("barycentric weights must be finite and nonzero");
        }
        if nodes.xs.windows(2).any(|p| p[0] >= p[1]) {
            return domain("nodes must be distinct and ascending");
        }
        let (d1, d2) = apply_diff(&nodes.xs, &weights, &values);
        Ok(Interpolant {
            nodes,
            values,
            weights,
            d1,
            d2,
        })
    }

    /// Derivative values of the interpolant at its nodes.
    pub fn node_derivatives(&self, order: u32) -> Result<&[f64]> {
        match order {
            0 => Ok(&self.values),
            1 => Ok(&self.d1),
            2 => Ok(&self.d2),
            _ => domain(format!("derivative order {order} not in {{0, 1, 2}}")),
        }
    }

    /// `u_N^{(order)}(x)` for `x` in [-1, 1].
    pub fn eval(&self, x: f64, order: u32) -> Result<f64> {
        if !(x.abs() <= 1.0 + DOMAIN_SLACK) {
            return domain(format!("x = {x} outside [-1, 1]"));
        }
        let f = self.node_derivatives(order)?;
        Ok(bary_eval(&self.nodes.xs, &self.weights, f, x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub order: u32,
    /// Uniform grid merged with the superpoints, ascending.
    pub grid: Vec<f64>,
    pub errors: Vec<f64>,
    pub is_superpoint: Vec<bool>,
    pub max_error: f64,
    pub errors_at_superpoints: Vec<f64>,
    /// `max(errors_at_superpoints) / max_error`; 1.0 when undefined.
    pub ratio: f64,
    pub ratio_defined: bool,
}

/// Samples `|reference(x) − u_N^{(order)}(x)|` on a uniform grid plus the
/// given superpoints. `reference` must already be the `order`-th derivative.
pub fn error_report<F>(ip: &Interpolant, reference: F, order: u32, grid_size: usize, superpoints: &[f64]) -> Result<ErrorReport>
where
    F: Fn(f64) -> f64,
{
    if grid_size < 2 {
        return domain(format!("grid size {grid_size} < 2"));
    }
    ip.node_derivatives(order)?;
    let h = 2.0 / (grid_size - 1) as f64;
    let mut pts: Vec<(f64, bool)> = (0..grid_size)
        .map(|i| {
            let x = if i + 1 == grid_size { 1.0 } else { -1.0 + i as f64 * h };
            (x, false)
        })
        .collect();
    for &s in superpoints {
        if !(s.abs() <= 1.0) {
            return domain(format!("superpoint {s} outside [-1, 1]"));
        }
        pts.push((s, true));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut grid = Vec::with_capacity(pts.len());
    let mut errors = Vec::with_capacity(pts.len());
    let mut mask = Vec::with_capacity(pts.len());
    let mut at_super = Vec::with_capacity(superpoints.len());
    for (x, sp) in pts {
        let e = (reference(x) - ip.eval(x, order)?).abs();
        if sp {
            at_super.push(e);
        }
        grid.push(x);
        errors.push(e);
        mask.push(sp);
    }
    let max_error = errors.iter().fold(0.0f64, |a, &e| a.max(e));
    let sup = at_super.iter().fold(0.0f64, |a, &e| a.max(e));
    let ratio_defined = !at_super.is_empty() && max_error > 0.0;
    let ratio = if ratio_defined { sup / max_error } else { 1.0 };
    Ok(ErrorReport {
        order,
        grid,
        errors,
        is_superpoint: mask,
        max_error,
        errors_at_superpoints: at_super,
        ratio,
        ratio_defined,
    })
}
