use anyhow::{bail, Context, Result};
use superspec_core::barycentric::{build_interpolant, error_report, Interpolant};
use superspec_core::derivcolloc::{ode_solve, value_superpoints, CollocationSet};
use superspec_core::errorbounds::{
    bound_value, envelope_extremals, envelope_residual, estimate_c_rho, rho_from_pole, BoundKind, BoundQuantity,
    BoundTheorem, EllipseParams,
};
use superspec_core::functions::TestFunction;
use superspec_core::{generate_nodes, nodal_poly, superpoints, NodeFamily};

use crate::args::{EllipseArgs, FigureId};
use crate::svg::{self, Curve};
use crate::table::{merged_grid, Point, SweepRow};

/// A finished table, rendered lazily in the requested format.
pub enum Report {
    Points { title: String, points: Vec<Point> },
    Sweep(Vec<SweepRow>),
    Profile { points: Vec<Point>, svg: String },
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < 2 {
        bail!("grid size {grid_size} < 2");
    }
    Ok(())
}

pub fn nodes(family: NodeFamily, n: usize) -> Result<Report> {
    let ns = generate_nodes(family, n)?;
    let points = ns
        .xs
        .iter()
        .zip(&ns.thetas)
        .map(|(&x, &t)| Point {
            x,
            value: t,
            error: None,
            is_superpoint: false,
            is_node: true,
        })
        .collect();
    Ok(Report::Points {
        title: format!("{family} nodes, N = {n}"),
        points,
    })
}

pub fn superpoint_table(family: NodeFamily, n: usize, order: u32) -> Result<Report> {
    let sp = superpoints(family, n, order)?;
    let points = sp
        .points
        .iter()
        .zip(&sp.thetas)
        .map(|(&x, &t)| Point {
            x,
            value: t,
            error: None,
            is_superpoint: true,
            is_node: false,
        })
        .collect();
    Ok(Report::Points {
        title: format!("{family} order-{order} superpoints, N = {n}"),
        points,
    })
}

fn interpolant(f: TestFunction, family: NodeFamily, n: usize) -> Result<Interpolant> {
    let ns = generate_nodes(family, n)?;
    let values = ns.xs.iter().map(|&x| f.eval(x, 0)).collect();
    Ok(build_interpolant(ns, values)?)
}

fn derivative_superpoints(family: NodeFamily, n: usize, order: u32) -> Result<Vec<f64>> {
    if order == 0 || !family.is_chebyshev() {
        return Ok(Vec::new());
    }
    Ok(superpoints(family, n, order)?.points)
}

/// Pointwise error of `u_N^{(order)}` on a grid merged with superpoints and nodes.
pub fn interp_points(f: TestFunction, family: NodeFamily, n: usize, order: u32, grid_size: usize) -> Result<Vec<Point>> {
    check_grid(grid_size)?;
    let ip = interpolant(f, family, n)?;
    let sp = derivative_superpoints(family, n, order)?;
    merged_grid(grid_size, &sp, &ip.nodes.xs)
        .into_iter()
        .map(|(x, is_superpoint, is_node)| {
            let value = ip.eval(x, order)?;
            Ok(Point {
                x,
                value,
                error: Some((f.eval(x, order) - value).abs()),
                is_superpoint,
                is_node,
            })
        })
        .collect()
}

/// `ρ = ρ_pole·(1 − margin)` and `C_ρ` for a function with a pole.
pub fn ellipse_for(f: TestFunction, e: &EllipseArgs) -> Result<EllipseParams> {
    let pole = f.pole().with_context(|| format!("{f} has no pole, so no bound applies"))?;
    if !(e.margin > 0.0 && e.margin < 1.0) {
        bail!("margin {} must lie in (0, 1)", e.margin);
    }
    let rho = rho_from_pole(pole)? * (1.0 - e.margin);
    let c = estimate_c_rho(|z| f.eval_complex(z), rho, e.c_samples)?;
    Ok(EllipseParams::new(rho, c)?)
}

/// One sweep row per N. The bound column is filled when `bound` is given.
pub fn interp_sweep(
    f: TestFunction,
    family: NodeFamily,
    ns: &[usize],
    order: u32,
    grid_size: usize,
    bound: Option<(BoundKind, &EllipseParams)>,
) -> Result<Vec<SweepRow>> {
    check_grid(grid_size)?;
    ns.iter()
        .map(|&n| {
            let ip = interpolant(f, family, n)?;
            let sp = derivative_superpoints(family, n, order)?;
            let r = error_report(&ip, |x| f.eval(x, order), order, grid_size, &sp)?;
            let bound = match bound {
                Some((kind, ep)) => Some(bound_value(kind, n, ep)?),
                None => None,
            };
            Ok(SweepRow {
                n,
                max_error: r.max_error,
                superpoint_max_error: r.errors_at_superpoints.iter().cloned().reduce(f64::max),
                ratio: r.ratio_defined.then_some(r.ratio),
                bound,
            })
        })
        .collect()
}

pub fn interp_error(f: TestFunction, family: NodeFamily, ns: &[usize], order: u32, grid_size: usize, sweep: bool, e: &EllipseArgs) -> Result<Report> {
    if let ([n], false) = (ns, sweep) {
        return Ok(Report::Points {
            title: format!("|{f}^({order}) - u_N^({order})| at {family} nodes, N = {n}"),
            points: interp_points(f, family, *n, order, grid_size)?,
        });
    }
    let quantity = match order {
        0 => BoundQuantity::Value,
        1 => BoundQuantity::D1,
        _ => BoundQuantity::D2,
    };
    let ep = match (f.pole(), BoundTheorem::for_family(family)) {
        (Some(_), Some(_)) => Some(ellipse_for(f, e)?),
        _ => None,
    };
    let bound = match (BoundTheorem::for_family(family), &ep) {
        (Some(theorem), Some(ep)) => Some((BoundKind { theorem, quantity }, ep)),
        _ => None,
    };
    Ok(Report::Sweep(interp_sweep(f, family, ns, order, grid_size, bound)?))
}

pub fn bounds(f: TestFunction, family: NodeFamily, quantity: BoundQuantity, ns: &[usize], grid_size: usize, e: &EllipseArgs) -> Result<Report> {
    let theorem = BoundTheorem::for_family(family).with_context(|| format!("no a priori bound for the {family} family"))?;
    let ep = ellipse_for(f, e)?;
    eprintln!(
        "rho = {:?}, C_rho = {:?}, D_rho = {:?}, L_rho = {:?} (Euler perimeter estimate)",
        ep.rho,
        ep.c_rho,
        ep.d_rho,
        ep.l_rho
    );
    let kind = BoundKind { theorem, quantity };
    Ok(Report::Sweep(interp_sweep(f, family, ns, quantity.deriv_order(), grid_size, Some((kind, &ep)))?))
}

/// The problem solved for `f`: `u' = f, u(−1) = f(−1)`, except that a
/// polynomial is taken as the exact solution itself.
struct OdeProblem {
    f: TestFunction,
}

impl OdeProblem {
    fn rhs(&self, x: f64) -> f64 {
        match self.f {
            TestFunction::Polynomial(_) => self.f.eval(x, 1),
            f => f.eval(x, 0),
        }
    }

    fn u0(&self) -> f64 {
        self.f.eval(-1.0, 0)
    }

    fn exact(&self, x: f64) -> f64 {
        match self.f {
            TestFunction::Polynomial(_) => self.f.eval(x, 0),
            f => self.u0() + f.antiderivative(x),
        }
    }
}

pub fn ode_points(f: TestFunction, set: CollocationSet, n: usize, grid_size: usize) -> Result<Vec<Point>> {
    check_grid(grid_size)?;
    let p = OdeProblem { f };
    let ip = ode_solve(|x| p.rhs(x), p.u0(), set, n)?;
    let sp = value_superpoints(set, n)?;
    let colloc = set.points(n)?.xs;
    merged_grid(grid_size, &sp, &colloc)
        .into_iter()
        .map(|(x, is_superpoint, is_node)| {
            let value = ip.eval(x, 0)?;
            Ok(Point {
                x,
                value,
                error: Some((p.exact(x) - value).abs()),
                is_superpoint,
                is_node,
            })
        })
        .collect()
}

pub fn ode(f: TestFunction, set: CollocationSet, ns: &[usize], grid_size: usize, sweep: bool) -> Result<Report> {
    if let ([n], false) = (ns, sweep) {
        return Ok(Report::Points {
            title: format!("|u - u_N| for u' = {f}, collocation set {set}, N = {n}"),
            points: ode_points(f, set, *n, grid_size)?,
        });
    }
    check_grid(grid_size)?;
    let p = OdeProblem { f };
    let rows = ns
        .iter()
        .map(|&n| {
            let ip = ode_solve(|x| p.rhs(x), p.u0(), set, n)?;
            let sp = value_superpoints(set, n)?;
            let r = error_report(&ip, |x| p.exact(x), 0, grid_size, &sp)?;
            Ok(SweepRow {
                n,
                max_error: r.max_error,
                superpoint_max_error: r.errors_at_superpoints.iter().cloned().reduce(f64::max),
                ratio: r.ratio_defined.then_some(r.ratio),
                bound: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Report::Sweep(rows))
}

fn envelope_curves(family: NodeFamily) -> Vec<Vec<(f64, f64)>> {
    let xs: Vec<f64> = (0..=400).map(|i| -1.0 + i as f64 / 200.0).collect();
    let upper: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| {
            let y = match family {
                NodeFamily::ChebLobatto => 2.0 * (1.0 - x * x).max(0.0).sqrt(),
                NodeFamily::ChebRadauRight => (2.0 * (1.0 - x)).max(0.0).sqrt(),
                _ => (2.0 * (1.0 + x)).max(0.0).sqrt(),
            };
            (x, y)
        })
        .collect();
    let lower = upper.iter().map(|&(x, y)| (x, -y)).collect();
    vec![upper, lower]
}

fn profile_points(family: NodeFamily, n: usize, grid_size: usize) -> Result<Vec<Point>> {
    let extremals: Vec<f64> = envelope_extremals(family, n)?.into_iter().map(|(x, _)| x).collect();
    merged_grid(grid_size, &extremals, &[])
        .into_iter()
        .map(|(x, is_extremal, _)| {
            Ok(Point {
                x,
                value: nodal_poly(family, n, x, 0)?,
                error: None,
                is_superpoint: is_extremal,
                is_node: false,
            })
        })
        .collect()
}

/// Extremals of `ω` with the envelope plotted over the profile.
pub fn envelope(family: NodeFamily, n: usize) -> Result<Report> {
    let ext = envelope_extremals(family, n)?;
    let worst = ext.iter().map(|&(x, y)| envelope_residual(family, x, y).abs()).fold(0.0, f64::max);
    eprintln!("max envelope residual {worst:?} over {} extremals", ext.len());
    let points = ext
        .iter()
        .map(|&(x, value)| Point {
            x,
            value,
            error: None,
            is_superpoint: false,
            is_node: false,
        })
        .collect();
    let profile = profile_points(family, n, 2001)?;
    let svg = svg::profile_plot(
        &format!("{family} nodal polynomial, N = {n}, with its envelope"),
        &[Curve {
            points: profile.iter().map(|p| (p.x, p.value)).collect(),
            style: "stroke=\"black\" stroke-width=\"1.2\"",
        }],
        &envelope_curves(family),
        &ext,
    );
    Ok(Report::Profile {
        points,
        svg,
    })
}

pub fn figure(id: FigureId, n: usize, grid_size: usize) -> Result<Report> {
    check_grid(grid_size)?;
    let interp = |f, family| -> Result<Report> {
        Ok(Report::Points {
            title: format!("{}, N = {n}", id.title()),
            points: interp_points(f, family, n, 1, grid_size)?,
        })
    };
    let diff = |f| -> Result<Report> {
        Ok(Report::Points {
            title: format!("{}, N = {n}", id.title()),
            points: ode_points(f, CollocationSet::T34, n, grid_size)?,
        })
    };
    match id {
        FigureId::ChLobatto => {
            let family = NodeFamily::ChebLobatto;
            let points = profile_points(family, n, grid_size)?;
            let ext = envelope_extremals(family, n)?;
            let svg = svg::profile_plot(
                &format!("{}, N = {n}", id.title()),
                &[Curve {
                    points: points.iter().map(|p| (p.x, p.value)).collect(),
                    style: "stroke=\"black\" stroke-width=\"1.2\"",
                }],
                &envelope_curves(family),
                &ext,
            );
            Ok(Report::Profile {
                points,
                svg,
            })
        }
        FigureId::ChRadau => {
            let right = profile_points(NodeFamily::ChebRadauRight, n, grid_size)?;
            let left = profile_points(NodeFamily::ChebRadauLeft, n, grid_size)?;
            let mut ext = envelope_extremals(NodeFamily::ChebRadauRight, n)?;
            ext.extend(envelope_extremals(NodeFamily::ChebRadauLeft, n)?);
            let mut env = envelope_curves(NodeFamily::ChebRadauRight);
            env.extend(envelope_curves(NodeFamily::ChebRadauLeft));
            let svg = svg::profile_plot(
                &format!("{}, N = {n}", id.title()),
                &[
                    Curve {
                        points: right.iter().map(|p| (p.x, p.value)).collect(),
                        style: "stroke=\"black\" stroke-width=\"1.2\"",
                    },
                    Curve {
                        points: left.iter().map(|p| (p.x, p.value)).collect(),
                        style: "stroke=\"#1f4e9a\" stroke-width=\"1.2\"",
                    },
                ],
                &env,
                &ext,
            );
            let mut points = right;
            points.extend(left);
            Ok(Report::Profile {
                points,
                svg,
            })
        }
        FigureId::Ch1 => interp(TestFunction::Runge, NodeFamily::ChebGauss),
        FigureId::ChLobatto1 => interp(TestFunction::Runge, NodeFamily::ChebLobatto),
        FigureId::ChRadau1 => interp(TestFunction::Runge, NodeFamily::ChebRadauRight),
        FigureId::ChDiff1 => diff(TestFunction::Runge),
        FigureId::Ch2 => interp(TestFunction::POLE2, NodeFamily::ChebGauss),
        FigureId::ChLobatto2 => interp(TestFunction::POLE2, NodeFamily::ChebLobatto),
        FigureId::ChRadau2 => interp(TestFunction::POLE2, NodeFamily::ChebRadauRight),
        FigureId::ChDiff2 => diff(TestFunction::POLE2),
    }
}
