//! Derivative collocation: recover `u_N ∈ P_N` from `u(−1)` and the
//! derivative samples `u'(x_k)`, together with the closed-form errors for
//! `u ∈ P_{N+1}` and the points where the value error superconverges.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::barycentric::{build_interpolant, Interpolant};
use crate::error::{domain, Error, Result};
use crate::nodes::{generate_nodes, NodeFamily, NodeSet};
use crate::orthopoly::{chebyshev_t_integral, evaluate, legendre_integral, PolyKind};

/// Collocation point sets, one per closed-form error theorem.
///
/// Left/right refer to the side of the Radau collocation set: `right`
/// collocates at the Radau points containing `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollocationSet {
    /// Roots of `L_N`.
    T31,
    /// Roots of `L_N − L_{N−2}`.
    T32,
    /// Roots of `L_N − L_{N−1}`.
    T33Right,
    /// Roots of `L_N + L_{N−1}`.
    T33Left,
    /// Roots of `T_N`.
    T34,
    /// `±1` and the roots of `U_{N−2}`.
    T35,
    /// Roots of `T_N − T_{N−1}`.
    T36Right,
    /// Roots of `T_N + T_{N−1}`.
    T36Left,
}

impl CollocationSet {
    pub const ALL: [CollocationSet; 8] = [
        CollocationSet::T31,
        CollocationSet::T32,
        CollocationSet::T33Right,
        CollocationSet::T33Left,
        CollocationSet::T34,
        CollocationSet::T35,
        CollocationSet::T36Right,
        CollocationSet::T36Left,
    ];

    /// The node family whose points (at the matching parameter) form this
    /// collocation set.
    pub fn family(self) -> NodeFamily {
        match self {
            CollocationSet::T31 => NodeFamily::LegGauss,
            CollocationSet::T32 => NodeFamily::LegLobatto,
            CollocationSet::T33Right => NodeFamily::LegRadauRight,
            CollocationSet::T33Left => NodeFamily::LegRadauLeft,
            CollocationSet::T34 => NodeFamily::ChebGauss,
            CollocationSet::T35 => NodeFamily::ChebLobatto,
            CollocationSet::T36Right => NodeFamily::ChebRadauRight,
            CollocationSet::T36Left => NodeFamily::ChebRadauLeft,
        }
    }

    pub fn from_family(family: NodeFamily) -> CollocationSet {
        match family {
            NodeFamily::LegGauss => CollocationSet::T31,
            NodeFamily::LegLobatto => CollocationSet::T32,
            NodeFamily::LegRadauRight => CollocationSet::T33Right,
            NodeFamily::LegRadauLeft => CollocationSet::T33Left,
            NodeFamily::ChebGauss => CollocationSet::T34,
            NodeFamily::ChebLobatto => CollocationSet::T35,
            NodeFamily::ChebRadauRight => CollocationSet::T36Right,
            NodeFamily::ChebRadauLeft => CollocationSet::T36Left,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            CollocationSet::T31 => 1,
            CollocationSet::T33Right | CollocationSet::T33Left | CollocationSet::T34 => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CollocationSet::T31 => "t31",
            CollocationSet::T32 => "t32",
            CollocationSet::T33Right => "t33-right",
            CollocationSet::T33Left => "t33-left",
            CollocationSet::T34 => "t34",
            CollocationSet::T35 => "t35",
            CollocationSet::T36Right => "t36-right",
            CollocationSet::T36Left => "t36-left",
        }
    }

    fn check_n(self, n: usize) -> Result<()> {
        if n < self.min_n() {
            return domain(format!("{self} needs N >= {}, got {n}", self.min_n()));
        }
        Ok(())
    }

    /// The `N` collocation points, ascending.
    pub fn points(self, n: usize) -> Result<NodeSet> {
        self.check_n(n)?;
        match self {
            CollocationSet::T31
            | CollocationSet::T32
            | CollocationSet::T33Right
            | CollocationSet::T33Left => generate_nodes(self.family(), n),
            CollocationSet::T35 => Ok(t35_points(n)),
            _ => generate_nodes(self.family(), n - 1),
        }
    }
}

impl fmt::Display for CollocationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CollocationSet {
    type Err = Error;

    /// Accepts the set names (`t34`, `t36-left`, ...) and node family names
    /// (`cheb-gauss` means collocation at the roots of `T_N`).
    fn from_str(s: &str) -> Result<Self> {
        if let Some(c) = CollocationSet::ALL.into_iter().find(|c| c.name() == s) {
            return Ok(c);
        }
        s.parse::<NodeFamily>()
            .map(CollocationSet::from_family)
            .map_err(|_| Error::Domain(format!("unknown collocation set '{s}'")))
    }
}

/// `{−1} ∪ {roots of U_{N−2}} ∪ {1}`, assembled explicitly. Since
/// `(x²−1)U_{N−2} = (T_N − T_{N−2})/2` this is the Lobatto set of parameter
/// `N−1`, which fixes the barycentric weights.
fn t35_points(n: usize) -> NodeSet {
    let m = n - 1;
    let mut thetas = vec![PI];
    thetas.extend((1..m).rev().map(|k| k as f64 * PI / m as f64));
    thetas.push(0.0);
    let xs = thetas
        .iter()
        .map(|&t| {
            if t == PI {
                -1.0
            } else if t == 0.0 {
                1.0
            } else if (t - PI / 2.0).abs() < 1e-15 {
                0.0
            } else {
                t.cos()
            }
        })
        .collect();
    NodeSet {
        family: NodeFamily::ChebLobatto,
        n: m,
        xs,
        thetas,
    }
}

/// The point sets where the value error superconverges, ascending.
pub fn value_superpoints(set: CollocationSet, n: usize) -> Result<Vec<f64>> {
    set.check_n(n)?;
    let interior = |ns: NodeSet| ns.xs[1..ns.xs.len() - 1].to_vec();
    Ok(match set {
        // roots of L_N'
        CollocationSet::T31 => interior(generate_nodes(NodeFamily::LegLobatto, n + 1)?),
        // roots of L_{N−1}
        CollocationSet::T32 => generate_nodes(NodeFamily::LegGauss, n - 1)?.xs,
        // roots of L_N ± L_{N−1}, the opposite Radau set
        CollocationSet::T33Right => generate_nodes(NodeFamily::LegRadauLeft, n)?.xs,
        CollocationSet::T33Left => generate_nodes(NodeFamily::LegRadauRight, n)?.xs,
        // roots of U_{N−1}
        CollocationSet::T34 => interior(generate_nodes(NodeFamily::ChebLobatto, n)?),
        // roots of T_{N−1}
        CollocationSet::T35 => generate_nodes(NodeFamily::ChebGauss, n - 2)?.xs,
        CollocationSet::T36Right => generate_nodes(NodeFamily::ChebRadauLeft, n - 1)?.xs,
        CollocationSet::T36Left => generate_nodes(NodeFamily::ChebRadauRight, n - 1)?.xs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivCollocProblem {
    pub set: CollocationSet,
    pub n: usize,
    /// `u(−1)`.
    pub initial_value: f64,
    /// `u'` at the collocation points, ascending.
    pub deriv_values: Vec<f64>,
}

fn t_series_clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c.first().copied().unwrap_or(0.0)
}

/// Builds `u_N` and returns it as an interpolant on the Chebyshev-Gauss
/// points of parameter `N`.
pub fn solve(problem: &DerivCollocProblem) -> Result<Interpolant> {
    let n = problem.n;
    let pts = problem.set.points(n)?;
    if problem.deriv_values.len() != pts.len() {
        return domain(format!(
            "{} needs {} derivative values at N = {n}, got {}",
            problem.set,
            pts.len(),
            problem.deriv_values.len()
        ));
    }
    if !problem.initial_value.is_finite() || problem.deriv_values.iter().any(|v| !v.is_finite()) {
        return domain("initial value and derivative samples must be finite");
    }
    let dp = build_interpolant(pts, problem.deriv_values.clone())?;
    // u_N' ∈ P_{N−1} sampled at the N roots of T_N, then DCT to T-coefficients
    let nf = n as f64;
    let theta: Vec<f64> = (0..n).map(|k| (2 * k + 1) as f64 * PI / (2.0 * nf)).collect();
    let f: Vec<f64> = theta
        .iter()
        .map(|t| dp.eval(t.cos(), 0))
        .collect::<Result<_>>()?;
    let c: Vec<f64> = (0..n)
        .map(|j| {
            let s: f64 = f.iter().zip(&theta).map(|(fk, t)| fk * (j as f64 * t).cos()).sum();
            if j == 0 {
                s / nf
            } else {
                2.0 * s / nf
            }
        })
        .collect();
    // integrate term by term
    let mut b = vec![0.0; n + 1];
    for (j, &cj) in c.iter().enumerate() {
        match j {
            0 => b[1] += cj,
            1 => b[2] += cj / 4.0,
            _ => {
                b[j + 1] += cj / (2.0 * (j + 1) as f64);
                b[j - 1] -= cj / (2.0 * (j - 1) as f64);
            }
        }
    }
    b[0] = 0.0;
    let at_minus_one: f64 = b.iter().enumerate().map(|(j, bj)| if j % 2 == 0 { *bj } else { -bj }).sum();
    b[0] = problem.initial_value - at_minus_one;
    let eval_nodes = generate_nodes(NodeFamily::ChebGauss, n)?;
    let values = eval_nodes.xs.iter().map(|&x| t_series_clenshaw(&b, x)).collect();
    let ip = build_interpolant(eval_nodes, values)?;
    if ip.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Internal("non-finite coefficients in derivative collocation".into()));
    }
    Ok(ip)
}

/// Samples `f = u'` at the collocation points and solves.
pub fn ode_solve<F>(f: F, initial_value: f64, set: CollocationSet, n: usize) -> Result<Interpolant>
where
    F: Fn(f64) -> f64,
{
    let pts = set.points(n)?;
    let deriv_values: Vec<f64> = pts.xs.iter().map(|&x| f(x)).collect();
    if let Some((x, v)) = pts.xs.iter().zip(&deriv_values).find(|(_, v)| !v.is_finite()) {
        return domain(format!("right-hand side is {v} at x = {x}"));
    }
    solve(&DerivCollocProblem {
        set,
        n,
        initial_value,
        deriv_values,
    })
}

/// The error `u − u_N` for `u ∈ P_{N+1}` whose collocation residual
/// `(u − u_N)'` is `leading_constant` times [`reference_derivative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormError {
    pub theorem: CollocationSet,
    pub n: usize,
    pub leading_constant: f64,
}

fn t(n: usize, x: f64) -> f64 {
    evaluate(PolyKind::ChebyshevT, n, x)[0]
}

fn u(n: usize, x: f64) -> f64 {
    evaluate(PolyKind::ChebyshevU, n, x)[0]
}

fn l(n: usize, x: f64) -> f64 {
    evaluate(PolyKind::Legendre, n, x)[0]
}

fn check_x(x: f64) -> Result<()> {
    if !(x.abs() <= 1.0 + crate::orthopoly::DOMAIN_SLACK) {
        return domain(format!("x = {x} outside [-1, 1]"));
    }
    Ok(())
}

/// `(u − u_N)'` with unit constant: the collocation nodal polynomial.
pub fn reference_derivative(set: CollocationSet, n: usize, x: f64) -> Result<f64> {
    set.check_n(n)?;
    check_x(x)?;
    let nf = n as f64;
    Ok(match set {
        CollocationSet::T31 => l(n, x),
        CollocationSet::T32 => l(n, x) - l(n - 2, x),
        CollocationSet::T33Right => nf * (l(n, x) - l(n - 1, x)),
        CollocationSet::T33Left => nf * (l(n, x) + l(n - 1, x)),
        CollocationSet::T34 => t(n, x),
        // (1−x²)U_{N−2}
        CollocationSet::T35 => 0.5 * (t(n - 2, x) - t(n, x)),
        CollocationSet::T36Right => t(n, x) - t(n - 1, x),
        CollocationSet::T36Left => t(n, x) + t(n - 1, x),
    })
}

/// `∫_{−1}^x` of [`reference_derivative`], from exact antiderivatives.
pub fn reference_integral(set: CollocationSet, n: usize, x: f64) -> Result<f64> {
    set.check_n(n)?;
    check_x(x)?;
    let nf = n as f64;
    let (li, ti) = (legendre_integral, chebyshev_t_integral);
    Ok(match set {
        CollocationSet::T31 => li(n, x),
        CollocationSet::T32 => li(n, x) - li(n - 2, x),
        CollocationSet::T33Right => nf * (li(n, x) - li(n - 1, x)),
        CollocationSet::T33Left => nf * (li(n, x) + li(n - 1, x)),
        CollocationSet::T34 => ti(n, x),
        CollocationSet::T35 => 0.5 * (ti(n - 2, x) - ti(n, x)),
        CollocationSet::T36Right => ti(n, x) - ti(n - 1, x),
        CollocationSet::T36Left => ti(n, x) + ti(n - 1, x),
    })
}

/// The right-hand side split into its displayed terms (the first is the
/// dominant one), each times the leading constant.
pub fn closed_form_terms(cfe: &ClosedFormError, x: f64) -> Result<Vec<f64>> {
    let n = cfe.n;
    cfe.theorem.check_n(n)?;
    check_x(x)?;
    let nf = n as f64;
    let q = nf * nf - 1.0;
    let sigma = if n % 2 == 0 { 1.0 } else { -1.0 };
    let x2m1 = x * x - 1.0;
    let terms = match cfe.theorem {
        CollocationSet::T31 => {
            let lp = evaluate(PolyKind::Legendre, n, x)[1];
            vec![x2m1 * lp / (nf * (nf + 1.0))]
        }
        CollocationSet::T32 => vec![
            x2m1 * (2.0 * nf - 1.0) * l(n - 1, x) / (nf * (nf + 1.0)),
            -(4.0 * nf - 2.0) / (nf * (nf + 1.0) * (2.0 * nf - 3.0)) * (l(n - 1, x) - l(n - 3, x)),
        ],
        CollocationSet::T33Right | CollocationSet::T33Left => {
            // s = +1 for collocation at L_N − L_{N−1}
            let s = if cfe.theorem == CollocationSet::T33Right { 1.0 } else { -1.0 };
            vec![
                nf * nf / q * (l(n, x) + s * l(n - 1, x)) * (x - s),
                -nf / q * (l(n, x) - s * l(n - 1, x)) * (x + s),
            ]
        }
        CollocationSet::T34 => vec![nf / q * x2m1 * u(n - 1, x), -(x * t(n, x) + sigma) / q],
        CollocationSet::T35 => {
            let m = nf - 2.0;
            vec![
                nf * (1.0 - x * x) / q * t(n - 1, x),
                -nf * (1.0 - x * x) / (q * m) * u(n - 3, x),
                (x * t(n, x) + sigma) / (2.0 * q),
                -nf * nf * (x * t(n - 2, x) + sigma) / (2.0 * m * m * q),
                2.0 * (nf - 1.0) / (q * m * m) * chebyshev_t_integral(n - 2, x),
            ]
        }
        CollocationSet::T36Right | CollocationSet::T36Left => {
            // s = +1 for collocation at T_N + T_{N−1}
            let s = if cfe.theorem == CollocationSet::T36Left { 1.0 } else { -1.0 };
            let m = nf - 1.0;
            vec![
                nf * (x + s) / q * (t(n, x) - s * t(n - 1, x)),
                s * nf * x2m1 / (q * m) * u(n - 2, x),
                -(x * t(n, x) + sigma) / q,
                -s * nf * nf * (x * t(n - 1, x) - sigma) / (q * m * m),
                s * (2.0 * nf - 1.0) / (q * m * m) * chebyshev_t_integral(n - 1, x),
            ]
        }
    };
    Ok(terms.into_iter().map(|v| v * cfe.leading_constant).collect())
}

pub fn closed_form_error(cfe: &ClosedFormError, x: f64) -> Result<f64> {
    Ok(closed_form_terms(cfe, x)?.iter().sum())
}

/// Fixed `q ∈ P_N` added to the manufactured solutions.
fn background(n: usize, x: f64, order: usize) -> f64 {
    (0..=n)
        .map(|j| evaluate(PolyKind::ChebyshevT, j, x)[order] * if j % 2 == 0 { 1.0 } else { -0.5 } / (j + 1) as f64)
        .sum()
}

/// Solves the collocation problem for `u = q + ∫ e'` with `q ∈ P_N` and
/// `e'` the reference derivative, and returns the largest difference
/// between the measured error and the closed form over 1001 points.
pub fn verify_closed_form(set: CollocationSet, n: usize) -> Result<f64> {
    let exact = |x: f64| -> Result<f64> { Ok(background(n, x, 0) + reference_integral(set, n, x)?) };
    let pts = set.points(n)?;
    let deriv_values = pts
        .xs
        .iter()
        .map(|&x| Ok(background(n, x, 1) + reference_derivative(set, n, x)?))
        .collect::<Result<Vec<f64>>>()?;
    let ip = solve(&DerivCollocProblem {
        set,
        n,
        initial_value: exact(-1.0)?,
        deriv_values,
    })?;
    let cfe = ClosedFormError {
        theorem: set,
        n,
        leading_constant: 1.0,
    };
    let mut worst = 0.0f64;
    for i in 0..1001 {
        let x = if i == 1000 { 1.0 } else { -1.0 + i as f64 * 0.002 };
        let measured = exact(x)? - ip.eval(x, 0)?;
        worst = worst.max((measured - closed_form_error(&cfe, x)?).abs());
    }
    Ok(worst)
}
