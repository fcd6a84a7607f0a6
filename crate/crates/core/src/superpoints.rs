//! Derivative superconvergence points of the four Chebyshev interpolants.
//!
//! For interpolation at the zeros of `ω = ω_{N+1}` the first derivative of
//! the interpolant superconverges at the zeros of `ω'` and the second
//! derivative at the zeros of `ω''`. Each zero set is written as a
//! trigonometric equation `g(θ) = 0` with `x = cos θ` and solved in θ.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::nodes::{generate_nodes, NodeFamily};
use crate::roots::SafeNewton;

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpointSet {
    pub family: NodeFamily,
    pub n: usize,
    pub deriv_order: u32,
    /// Ascending in x.
    pub points: Vec<f64>,
    pub thetas: Vec<f64>,
    /// `|g(θ)|` of the (normalized) defining equation at each point.
    pub residuals: Vec<f64>,
    /// Asymptotic θ approximations used as Newton seeds.
    pub guesses: Vec<f64>,
}

fn check_args(family: NodeFamily, n: usize, order: u32) -> Result<()> {
    if !family.is_chebyshev() {
        return domain(format!("superpoints are defined for Chebyshev families, not {family}"));
    }
    if n < 2 {
        return domain(format!("superpoints require N >= 2, got {n}"));
    }
    if !(1..=2).contains(&order) {
        return domain(format!("derivative order {order} not in {{1, 2}}"));
    }
    Ok(())
}

/// Index range `k` accepted by [`asymptotic_guess`], in increasing θ.
pub fn guess_indices(family: NodeFamily, n: usize, order: u32) -> std::ops::RangeInclusive<usize> {
    match (family, order) {
        (_, 1) => 1..=n,
        _ => 1..=n - 1,
    }
}

/// The asymptotic approximation of the k-th superpoint angle.
pub fn asymptotic_guess(family: NodeFamily, n: usize, order: u32, k: usize) -> Result<f64> {
    check_args(family, n, order)?;
    let range = guess_indices(family, n, order);
    if !range.contains(&k) {
        return domain(format!(
            "index k = {k} outside {}..={} for {family} order {order}",
            range.start(),
            range.end()
        ));
    }
    let (nf, kf) = (n as f64, k as f64);
    let theta = match (family, order) {
        (NodeFamily::ChebGauss, 1) => kf * PI / (nf + 1.0),
        // interior zeros of T_{N+1}
        (NodeFamily::ChebGauss, _) => (2.0 * kf + 1.0) * PI / (2.0 * nf + 2.0),
        (NodeFamily::ChebLobatto, 1) => (2.0 * kf - 1.0) * PI / (2.0 * nf),
        (NodeFamily::ChebLobatto, _) => kf * PI / nf,
        (NodeFamily::ChebRadauRight, 1) => (2.0 * kf - 1.0) * PI / (2.0 * nf + 1.0),
        (NodeFamily::ChebRadauRight, _) => 2.0 * kf * PI / (2.0 * nf + 1.0),
        (NodeFamily::ChebRadauLeft, 1) => 2.0 * kf * PI / (2.0 * nf + 1.0),
        (NodeFamily::ChebRadauLeft, _) => (2.0 * kf + 1.0) * PI / (2.0 * nf + 1.0),
        _ => unreachable!("checked above"),
    };
    Ok(theta)
}

/// `g(θ)` and `g'(θ)` of the defining equation, divided by its largest
/// coefficient.
pub fn defining_equation(family: NodeFamily, n: usize, order: u32) -> impl Fn(f64) -> (f64, f64) {
    let nf = n as f64;
    move |t: f64| match (family, order) {
        (NodeFamily::ChebGauss, 1) => {
            // zeros of U_N: sin((N+1)θ) = 0
            let m = nf + 1.0;
            ((m * t).sin(), m * (m * t).cos())
        }
        (NodeFamily::ChebGauss, _) => {
            // (N+1) cos((N+1)θ) sin θ - sin((N+1)θ) cos θ = 0
            let m = nf + 1.0;
            let (sm, cm) = (m * t).sin_cos();
            let (s, c) = t.sin_cos();
            ((m * cm * s - sm * c) / m, (1.0 - m * m) * sm * s / m)
        }
        (NodeFamily::ChebLobatto, 1) => {
            // N cos(Nθ) sin θ + sin(Nθ) cos θ = 0
            let (sn, cn) = (nf * t).sin_cos();
            let (s, c) = t.sin_cos();
            (
                (nf * cn * s + sn * c) / nf,
                (-(nf * nf + 1.0) * sn * s + 2.0 * nf * cn * c) / nf,
            )
        }
        (NodeFamily::ChebLobatto, _) => {
            // N sinθ cosθ cos Nθ = sin Nθ (1 + N² sin²θ)
            let (sn, cn) = (nf * t).sin_cos();
            let (s, c) = t.sin_cos();
            let scale = nf * nf;
            (
                (nf * s * c * cn - sn * (1.0 + nf * nf * s * s)) / scale,
                (-nf * (nf * nf + 2.0) * s * s * cn - 3.0 * nf * nf * s * c * sn) / scale,
            )
        }
        (NodeFamily::ChebRadauRight, 1) => {
            // (2N+1) cos((N+½)θ) sin(θ/2) + sin((N+½)θ) cos(θ/2) = 0
            let a = nf + 0.5;
            let m = 2.0 * nf + 1.0;
            let (sa, ca) = (a * t).sin_cos();
            let (sh, ch) = (0.5 * t).sin_cos();
            (
                (m * ca * sh + sa * ch) / m,
                (-(m * a + 0.5) * sa * sh + (0.5 * m + a) * ca * ch) / m,
            )
        }
        (NodeFamily::ChebRadauRight, _) => {
            // (2N+1) cos((N+½)θ) sin(θ/2) = sin((N+½)θ) cos(θ/2) (cos²(θ/2) + (2N+1)² sin²(θ/2))
            let a = nf + 0.5;
            let b = 2.0 * nf + 1.0;
            let (sa, ca) = (a * t).sin_cos();
            let (sh, ch) = (0.5 * t).sin_cos();
            let q = ch * ch + b * b * sh * sh;
            let dq = (b * b - 1.0) * sh * ch;
            let g = b * ca * sh - sa * ch * q;
            let dg = b * (-a * sa * sh + 0.5 * ca * ch) - (a * ca * ch * q - 0.5 * sa * sh * q + sa * ch * dq);
            (g / (b * b), dg / (b * b))
        }
        (NodeFamily::ChebRadauLeft, 1) => {
            // (2N+1) sin((N+½)θ) cos(θ/2) + cos((N+½)θ) sin(θ/2) = 0
            let a = nf + 0.5;
            let m = 2.0 * nf + 1.0;
            let (sa, ca) = (a * t).sin_cos();
            let (sh, ch) = (0.5 * t).sin_cos();
            (
                (m * sa * ch + ca * sh) / m,
                ((m * a + 0.5) * ca * ch - (0.5 * m + a) * sa * sh) / m,
            )
        }
        (NodeFamily::ChebRadauLeft, _) => {
            // (2N+1) sin((N+½)θ) cos(θ/2) = cos((N+½)θ) sin(θ/2) (sin²(θ/2) + (2N+1)² cos²(θ/2))
            let a = nf + 0.5;
            let b = 2.0 * nf + 1.0;
            let (sa, ca) = (a * t).sin_cos();
            let (sh, ch) = (0.5 * t).sin_cos();
            let r = sh * sh + b * b * ch * ch;
            let dr = (1.0 - b * b) * sh * ch;
            let g = b * sa * ch - ca * sh * r;
            let dg = b * (a * ca * ch - 0.5 * sa * sh) - (-a * sa * sh * r + 0.5 * ca * ch * r + ca * sh * dr);
            (g / (b * b), dg / (b * b))
        }
        _ => (f64::NAN, f64::NAN),
    }
}

const SOLVER: SafeNewton = SafeNewton {
    step_tol: 1e-14,
    residual_tol: 1e-12,
    max_iter: 50,
};

/// Brackets in increasing θ; the order-1 set is needed for order 2.
fn brackets(family: NodeFamily, n: usize, order: u32, first: Option<&[f64]>) -> Result<Vec<(f64, f64)>> {
    if order == 2 {
        let t = first.ok_or_else(|| Error::Internal("order-2 brackets need order-1 roots".into()))?;
        return Ok(t.windows(2).map(|w| (w[0], w[1])).collect());
    }
    let mut t = generate_nodes(family, n)?.thetas;
    t.reverse();
    let gap = PI / (2 * n + 2) as f64;
    let nudge = 1e-7 * gap;
    Ok(t.windows(2)
        .map(|w| {
            let a = w[0].max(nudge);
            let b = w[1].min(PI - nudge);
            (a, b)
        })
        .collect())
}

/// θ roots of the defining equation, increasing.
fn solve_thetas(family: NodeFamily, n: usize, order: u32, first: Option<&[f64]>) -> Result<(Vec<f64>, Vec<f64>)> {
    let g = defining_equation(family, n, order);
    let guesses: Vec<f64> = guess_indices(family, n, order)
        .map(|k| asymptotic_guess(family, n, order, k))
        .collect::<Result<_>>()?;
    if family == NodeFamily::ChebGauss && order == 1 {
        return Ok((guesses.clone(), guesses));
    }
    let br = brackets(family, n, order, first)?;
    if br.len() != guesses.len() {
        return Err(Error::Internal(format!(
            "{} brackets for {} superpoints",
            br.len(),
            guesses.len()
        )));
    }
    let thetas = br
        .iter()
        .zip(&guesses)
        .enumerate()
        .map(|(k, (&(a, b), &guess))| {
            SOLVER.solve(&g, a, b, guess).map_err(|e| Error::Solver {
                index: k,
                reason: format!("{family} order {order}: {e}"),
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((thetas, guesses))
}

pub fn superpoints(family: NodeFamily, n: usize, deriv_order: u32) -> Result<SuperpointSet> {
    check_args(family, n, deriv_order)?;
    let first = if deriv_order == 2 {
        Some(solve_thetas(family, n, 1, None)?.0)
    } else {
        None
    };
    let (mut thetas, mut guesses) = solve_thetas(family, n, deriv_order, first.as_deref())?;
    thetas.reverse();
    guesses.reverse();
    let g = defining_equation(family, n, deriv_order);
    let residuals = thetas.iter().map(|&t| g(t).0.abs()).collect();
    let points = thetas.iter().map(|t| t.cos()).collect();
    Ok(SuperpointSet {
        family,
        n,
        deriv_order,
        points,
        thetas,
        residuals,
        guesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = superpoints(NodeFamily::ChebGauss, 3, 1).unwrap();
        let h = 0.5f64.sqrt();
        for (a, b) in s.points.iter().zip([-h, 0.0, h]) {
            assert!((a - b).abs() < 1e-15);
        }
        let s = superpoints(NodeFamily::ChebGauss, 2, 2).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(s.points[0].abs() < 1e-15);
        let s = superpoints(NodeFamily::ChebLobatto, 2, 1).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((s.points[0] + r).abs() < 1e-14 && (s.points[1] - r).abs() < 1e-14);
        let s = superpoints(NodeFamily::ChebRadauRight, 2, 1).unwrap();
        let r10 = 10f64.sqrt();
        assert!((s.points[0] - (1.0 - r10) / 6.0).abs() < 1e-14);
        assert!((s.points[1] - (1.0 + r10) / 6.0).abs() < 1e-14);
    }

    #[test]
    fn guess_examples() {
        let g = asymptotic_guess(NodeFamily::ChebLobatto, 16, 1, 3).unwrap();
        assert!((g - 5.0 * PI / 32.0).abs() < 1e-15);
        let g = asymptotic_guess(NodeFamily::ChebRadauRight, 16, 2, 4).unwrap();
        assert!((g - 8.0 * PI / 33.0).abs() < 1e-15);
        let g = asymptotic_guess(NodeFamily::ChebGauss, 8, 1, 2).unwrap();
        assert!((g - 2.0 * PI / 9.0).abs() < 1e-15);
        assert!(asymptotic_guess(NodeFamily::ChebGauss, 8, 1, 0).is_err());
        assert!(asymptotic_guess(NodeFamily::ChebGauss, 8, 2, 8).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(superpoints(NodeFamily::LegGauss, 4, 1).is_err());
        assert!(superpoints(NodeFamily::ChebGauss, 1, 1).is_err());
        assert!(superpoints(NodeFamily::ChebGauss, 4, 3).is_err());
    }

    #[test]
    fn equation_derivatives_match_finite_differences() {
        let h = 1e-6;
        for family in NodeFamily::CHEBYSHEV {
            for order in 1..=2 {
                for n in [2usize, 5, 12] {
                    let g = defining_equation(family, n, order);
                    for &t in &[0.3, 1.1, 2.5] {
                        let fd = (g(t + h).0 - g(t - h).0) / (2.0 * h);
                        assert!((fd - g(t).1).abs() < 1e-6 * (1.0 + fd.abs()), "{family} {order} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn counts_residuals_and_interlacing() {
        for family in NodeFamily::CHEBYSHEV {
            for n in 2..=40 {
                let s1 = superpoints(family, n, 1).unwrap();
                let s2 = superpoints(family, n, 2).unwrap();
                assert_eq!(s1.points.len(), n);
                assert_eq!(s2.points.len(), n - 1);
                assert!(s1.residuals.iter().chain(&s2.residuals).all(|r| *r <= 1e-12));
                for (k, &p) in s2.points.iter().enumerate() {
                    assert!(s1.points[k] < p && p < s1.points[k + 1], "{family} N={n}");
                }
            }
        }
    }
}
