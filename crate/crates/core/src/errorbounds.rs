//! Bernstein-ellipse error analysis for the Chebyshev interpolants: ellipse
//! parameters, nodal polynomial magnitudes on the ellipse, derivative maxima
//! on [-1, 1], the a priori bounds, a contour-integral error oracle and the
//! extremal envelope checks.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::nodes::{nodal_eval, nodal_poly, NodeFamily};
use crate::orthopoly::ellipse_point;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    pub rho: f64,
    /// Distance from `E_ρ` to [-1, 1].
    pub d_rho: f64,
    /// Euler's perimeter estimate.
    pub l_rho: f64,
    /// `max |u|` on `E_ρ`.
    pub c_rho: f64,
}

impl EllipseParams {
    pub fn new(rho: f64, c_rho: f64) -> Result<EllipseParams> {
        if !(rho > 1.0 && rho.is_finite()) {
            return domain(format!("rho = {rho} must be a finite number > 1"));
        }
        if !(c_rho >= 0.0 && c_rho.is_finite()) {
            return domain(format!("C_rho = {c_rho} must be finite and nonnegative"));
        }
        Ok(EllipseParams {
            rho,
            d_rho: 0.5 * (rho + 1.0 / rho) - 1.0,
            l_rho: PI * (rho * rho + 1.0 / (rho * rho)).sqrt(),
            c_rho,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundTheorem {
    Thm21ChebGauss,
    Thm22ChebLobatto,
    Thm23ChebRadau,
}

impl BoundTheorem {
    pub const ALL: [BoundTheorem; 3] = [
        BoundTheorem::Thm21ChebGauss,
        BoundTheorem::Thm22ChebLobatto,
        BoundTheorem::Thm23ChebRadau,
    ];

    pub fn for_family(family: NodeFamily) -> Option<BoundTheorem> {
        match family {
            NodeFamily::ChebGauss => Some(BoundTheorem::Thm21ChebGauss),
            NodeFamily::ChebLobatto => Some(BoundTheorem::Thm22ChebLobatto),
            NodeFamily::ChebRadauRight | NodeFamily::ChebRadauLeft => Some(BoundTheorem::Thm23ChebRadau),
            _ => None,
        }
    }

    /// A representative family (the Radau bound covers both sides).
    pub fn family(self) -> NodeFamily {
        match self {
            BoundTheorem::Thm21ChebGauss => NodeFamily::ChebGauss,
            BoundTheorem::Thm22ChebLobatto => NodeFamily::ChebLobatto,
            BoundTheorem::Thm23ChebRadau => NodeFamily::ChebRadauRight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundQuantity {
    /// `max |u − u_N|`.
    Value,
    /// `max |u' − u_N'|`.
    D1,
    /// `max |u'' − u_N''|`.
    D2,
    /// `|u' − u_N'|` at the zeros of `ω'`.
    D1Super,
    /// `|u'' − u_N''|` at the zeros of `ω''`.
    D2Super,
}

impl BoundQuantity {
    pub const ALL: [BoundQuantity; 5] = [
        BoundQuantity::Value,
        BoundQuantity::D1,
        BoundQuantity::D2,
        BoundQuantity::D1Super,
        BoundQuantity::D2Super,
    ];

    pub fn deriv_order(self) -> u32 {
        match self {
            BoundQuantity::Value => 0,
            BoundQuantity::D1 | BoundQuantity::D1Super => 1,
            BoundQuantity::D2 | BoundQuantity::D2Super => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundKind {
    pub theorem: BoundTheorem,
    pub quantity: BoundQuantity,
}

/// The ellipse parameter through `pole`: `|a + √(a²−1)|` on the branch
/// with modulus above 1.
pub fn rho_from_pole(pole: Complex64) -> Result<f64> {
    if !(pole.re.is_finite() && pole.im.is_finite()) {
        return domain(format!("pole {pole} is not finite"));
    }
    if pole.im == 0.0 && pole.re.abs() <= 1.0 {
        return domain(format!("pole {pole} lies on [-1, 1]"));
    }
    let s = (pole * pole - 1.0).sqrt();
    let r = (pole + s).norm().max((pole - s).norm());
    if r <= 1.0 {
        return domain(format!("pole {pole} lies on [-1, 1]"));
    }
    Ok(r)
}

/// `max |u|` over `samples` equally spaced parameter values on `E_ρ`.
pub fn estimate_c_rho<F>(u: F, rho: f64, samples: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if samples < 16 {
        return domain(format!("{samples} samples < 16"));
    }
    let mut best = 0.0f64;
    for j in 0..samples {
        let p = ellipse_point(rho, 2.0 * PI * j as f64 / samples as f64)?;
        let v = u(p.z).norm();
        if !v.is_finite() {
            return domain(format!("u is not finite at {} (rho = {rho} too large?)", p.z));
        }
        best = best.max(v);
    }
    Ok(best)
}

fn chebyshev_only(family: NodeFamily) -> Result<()> {
    if family.is_chebyshev() {
        Ok(())
    } else {
        domain(format!("no closed form for the {family} family"))
    }
}

/// Closed-form `|ω(z)|` at the ellipse point with parameters `(ρ, θ)`.
pub fn lemma21_magnitude(family: NodeFamily, n: usize, rho: f64, theta: f64) -> Result<f64> {
    chebyshev_only(family)?;
    if n < family.min_n() {
        return domain(format!("N = {n} below {} for {family}", family.min_n()));
    }
    ellipse_point(rho, theta)?;
    let nf = n as f64;
    let r2 = rho * rho;
    let v = match family {
        NodeFamily::ChebGauss => {
            let m = nf + 1.0;
            0.5 * (rho.powf(2.0 * m) + rho.powf(-2.0 * m) + 2.0 * (2.0 * m * theta).cos()).sqrt()
        }
        NodeFamily::ChebLobatto => {
            0.5 * (r2 + 1.0 / r2 - 2.0 * (2.0 * theta).cos()).sqrt()
                * (rho.powf(2.0 * nf) + rho.powf(-2.0 * nf) - 2.0 * (2.0 * nf * theta).cos()).sqrt()
        }
        _ => {
            // + for T_{N+1} + T_N, − for T_{N+1} − T_N
            let s = if family == NodeFamily::ChebRadauLeft { 1.0 } else { -1.0 };
            0.5 * (1.0 + 1.0 / r2 + 2.0 * s * theta.cos() / rho).sqrt()
                * (rho.powf(2.0 * nf + 2.0) + rho.powf(-2.0 * nf) + 2.0 * s * rho * ((2.0 * nf + 1.0) * theta).cos()).sqrt()
        }
    };
    Ok(v)
}

/// The lower bound for `|ω|` on `E_ρ` used in the bound proofs.
pub fn lemma21_lower_bound(family: NodeFamily, n: usize, rho: f64) -> Result<f64> {
    chebyshev_only(family)?;
    let nf = n as f64;
    Ok(match family {
        NodeFamily::ChebGauss => 0.5 * (rho.powf(nf + 1.0) - rho.powf(-nf - 1.0)),
        NodeFamily::ChebLobatto => 0.5 * (rho - 1.0 / rho) * (rho.powf(nf) - rho.powf(-nf)),
        _ => 0.5 * (1.0 - 1.0 / rho) * (rho.powf(nf + 1.0) - rho.powf(-nf)),
    })
}

/// `max_{[-1,1]} |ω^{(order)}|` in closed form.
pub fn lemma22_max(family: NodeFamily, n: usize, order: u32) -> Result<f64> {
    chebyshev_only(family)?;
    if n < 1 {
        return domain("N must be at least 1");
    }
    let nf = n as f64;
    let v = match (family, order) {
        (NodeFamily::ChebGauss, 1) => (nf + 1.0).powi(2),
        (NodeFamily::ChebGauss, 2) => nf * (nf + 1.0).powi(2) * (nf + 2.0) / 3.0,
        (NodeFamily::ChebLobatto, 1) => 4.0 * nf,
        (NodeFamily::ChebLobatto, 2) => 4.0 * nf * (2.0 * nf * nf + 1.0) / 3.0,
        (_, 1) => 2.0 * nf * nf + 2.0 * nf + 1.0,
        (_, 2) => 2.0 * nf * (nf + 1.0) * (nf * nf + nf + 1.0) / 3.0,
        _ => return domain(format!("derivative order {order} not in {{1, 2}}")),
    };
    Ok(v)
}

/// Right-hand side of the a priori bound of the given kind.
pub fn bound_value(kind: BoundKind, n: usize, ep: &EllipseParams) -> Result<f64> {
    if n < 2 {
        return domain(format!("bounds need N >= 2, got {n}"));
    }
    let EllipseParams {
        rho,
        d_rho: d,
        l_rho: l,
        c_rho: c,
    } = *ep;
    let nf = n as f64;
    let family = kind.theorem.family();
    let den = match kind.theorem {
        BoundTheorem::Thm21ChebGauss => rho.powf(nf + 1.0) - rho.powf(-nf - 1.0),
        BoundTheorem::Thm22ChebLobatto => (rho - 1.0 / rho) * (rho.powf(nf) - rho.powf(-nf)),
        BoundTheorem::Thm23ChebRadau => (1.0 - 1.0 / rho) * (rho.powf(nf) - rho.powf(-nf)),
    };
    let a1 = lemma22_max(family, n, 1)?;
    let a2 = lemma22_max(family, n, 2)?;
    let k = c * l / PI;
    let v = match kind.quantity {
        BoundQuantity::Value => k / d,
        BoundQuantity::D1 => k / d * (a1 + 1.0 / d),
        BoundQuantity::D2 => k * (a2 / d + 2.0 * a1 / (d * d) + 2.0 / (d * d * d)),
        BoundQuantity::D1Super => k / (d * d),
        BoundQuantity::D2Super => 2.0 * k / (d * d) * (a1 + 1.0 / d),
    };
    Ok(v / den)
}

/// Trapezoid-rule evaluation of the contour representation of the
/// interpolation error `u − u_N` and its first two derivatives.
///
/// The contour samples `u(z)z'(θ)/ω(z)` are computed once, so evaluating at
/// many `x` costs `O(quad_points)` each.
#[derive(Debug, Clone)]
pub struct ContourOracle {
    pub family: NodeFamily,
    pub n: usize,
    pub rho: f64,
    z: Vec<Complex64>,
    g: Vec<Complex64>,
}

impl ContourOracle {
    pub fn new<F>(u: F, family: NodeFamily, n: usize, rho: f64, quad_points: usize) -> Result<ContourOracle>
    where
        F: Fn(Complex64) -> Complex64,
    {
        if quad_points < 64 || quad_points % 2 != 0 {
            return domain(format!("quad_points = {quad_points} must be even and at least 64"));
        }
        nodal_poly(family, n, 0.0, 0)?;
        let mut z = Vec::with_capacity(quad_points);
        let mut g = Vec::with_capacity(quad_points);
        for j in 0..quad_points {
            let p = ellipse_point(rho, 2.0 * PI * j as f64 / quad_points as f64)?;
            let v = u(p.z) * p.dz_dtheta() / nodal_eval(family, n, p.z)[0];
            if !(v.re.is_finite() && v.im.is_finite()) {
                return domain(format!("contour integrand not finite at z = {}", p.z));
            }
            z.push(p.z);
            g.push(v);
        }
        Ok(ContourOracle { family, n, rho, z, g })
    }

    /// `(1/2πi) ∮ u(z)/(ω(z)(z−x)^k) dz` for k = 1, 2, 3.
    fn moments(&self, x: f64, count: usize) -> [f64; 3] {
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for (z, g) in self.z.iter().zip(&self.g) {
            let r = 1.0 / (z - x);
            let mut t = g * r;
            for a in acc.iter_mut().take(count) {
                *a += t;
                t *= r;
            }
        }
        // (1/(2πi))·(2π/M)·Σ = Σ/(iM)
        let scale = Complex64::new(0.0, -1.0 / self.z.len() as f64);
        [(acc[0] * scale).re, (acc[1] * scale).re, (acc[2] * scale).re]
    }

    /// The separate terms of the differentiated error representation:
    /// order 0: `[ω·I1]`; order 1: `[ω'·I1, ω·I2]`;
    /// order 2: `[ω''·I1, 2ω'·I2, 2ω·I3]`, where `Ik = ∮ u/(ω (z−x)^k)`.
    pub fn terms(&self, x: f64, order: u32) -> Result<Vec<f64>> {
        if order > 2 {
            return domain(format!("derivative order {order} not in {{0, 1, 2}}"));
        }
        let w = [
            nodal_poly(self.family, self.n, x, 0)?,
            nodal_poly(self.family, self.n, x, 1)?,
            nodal_poly(self.family, self.n, x, 2)?,
        ];
        let m = self.moments(x, order as usize + 1);
        Ok(match order {
            0 => vec![w[0] * m[0]],
            1 => vec![w[1] * m[0], w[0] * m[1]],
            _ => vec![w[2] * m[0], 2.0 * w[1] * m[1], 2.0 * w[0] * m[2]],
        })
    }

    /// Signed `u^{(order)}(x) − u_N^{(order)}(x)`.
    pub fn error(&self, x: f64, order: u32) -> Result<f64> {
        Ok(self.terms(x, order)?.iter().sum())
    }
}

/// One-shot form of [`ContourOracle::error`].
pub fn contour_error_oracle<F>(
    u: F,
    family: NodeFamily,
    n: usize,
    x: f64,
    order: u32,
    rho: f64,
    quad_points: usize,
) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    ContourOracle::new(u, family, n, rho, quad_points)?.error(x, order)
}

/// The extremal points `(cos θ_j, ω(cos θ_j))` used by the envelope checks.
pub fn envelope_extremals(family: NodeFamily, n: usize) -> Result<Vec<(f64, f64)>> {
    if n < 2 {
        return domain(format!("envelope checks need N >= 2, got {n}"));
    }
    let nf = n as f64;
    let thetas: Vec<f64> = match family {
        NodeFamily::ChebLobatto => (1..=n).map(|j| (2 * j - 1) as f64 * PI / (2.0 * nf)).collect(),
        NodeFamily::ChebRadauRight => (0..=n).map(|j| (2 * j + 1) as f64 * PI / (2.0 * nf + 1.0)).collect(),
        NodeFamily::ChebRadauLeft => (0..=n).map(|j| (2 * j) as f64 * PI / (2.0 * nf + 1.0)).collect(),
        _ => return domain(format!("no envelope theorem for the {family} family")),
    };
    thetas
        .into_iter()
        .map(|t| {
            let x = t.cos();
            Ok((x, nodal_poly(family, n, x, 0)?))
        })
        .collect()
}

/// Residual of the envelope equation at one point.
pub fn envelope_residual(family: NodeFamily, x: f64, y: f64) -> f64 {
    match family {
        NodeFamily::ChebLobatto => x * x + y * y / 4.0 - 1.0,
        NodeFamily::ChebRadauRight => 2.0 * (1.0 - x) - y * y,
        _ => 2.0 * (1.0 + x) - y * y,
    }
}

/// Largest envelope residual over all extremals: the ellipse
/// `x² + y²/4 = 1` for Lobatto and the parabolas `2(1 ∓ x) = y²` for Radau.
pub fn envelope_check(family: NodeFamily, n: usize) -> Result<f64> {
    Ok(envelope_extremals(family, n)?
        .into_iter()
        .map(|(x, y)| envelope_residual(family, x, y).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barycentric::build_interpolant;
    use crate::functions::TestFunction;
    use crate::nodes::{generate_nodes, nodal_poly_complex};
    use crate::superpoints::superpoints;

    #[test]
    fn rho_examples() {
        let r = rho_from_pole(Complex64::new(0.0, 0.2)).unwrap();
        assert!((r - 1.2198).abs() < 1e-4);
        assert!((r - (26f64.sqrt() + 1.0) / 5.0).abs() < 1e-14);
        let r = rho_from_pole(Complex64::new(2.0, 0.0)).unwrap();
        assert!((r - (2.0 + 3f64.sqrt())).abs() < 1e-14);
        let r = rho_from_pole(Complex64::new(-2.0, 0.0)).unwrap();
        assert!((r - (2.0 + 3f64.sqrt())).abs() < 1e-14);
        let p = Complex64::new(0.4, 0.7);
        assert_eq!(rho_from_pole(p).unwrap(), rho_from_pole(p.conj()).unwrap());
        assert!(rho_from_pole(Complex64::new(0.5, 0.0)).is_err());
        assert!(rho_from_pole(Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn c_rho_examples() {
        let one = |_z: Complex64| Complex64::new(1.0, 0.0);
        assert_eq!(estimate_c_rho(one, 1.7, 64).unwrap(), 1.0);
        assert!((estimate_c_rho(|z| z, 2.0, 64).unwrap() - 1.25).abs() < 1e-15);
        let f = |z: Complex64| TestFunction::POLE2.eval_complex(z);
        assert!((estimate_c_rho(f, 3.0, 4096).unwrap() - 3.0).abs() < 1e-12);
        assert!(estimate_c_rho(f, 3.0, 8).is_err());
        // the ellipse through the pole hits it at θ = 0
        assert!(estimate_c_rho(f, 2.0 + 3f64.sqrt(), 64).is_err());
    }

    #[test]
    fn ellipse_magnitude_examples_and_lower_bound() {
        let v = lemma21_magnitude(NodeFamily::ChebGauss, 3, 2.0, 0.0).unwrap();
        assert!((v - 8.03125).abs() < 1e-13);
        assert!(lemma21_magnitude(NodeFamily::LegGauss, 3, 2.0, 0.0).is_err());
        for family in NodeFamily::CHEBYSHEV {
            for &rho in &[1.2, 2.0, 4.0] {
                for n in 2..=32 {
                    let lb = lemma21_lower_bound(family, n, rho).unwrap();
                    for k in 0..100 {
                        let t = 2.0 * PI * k as f64 / 100.0;
                        let m = lemma21_magnitude(family, n, rho, t).unwrap();
                        let z = ellipse_point(rho, t).unwrap().z;
                        let direct = nodal_poly_complex(family, n, z, 0).unwrap().norm();
                        assert!((m - direct).abs() <= 1e-10 * direct, "{family} {n} {rho} {t}");
                        assert!(m >= lb * (1.0 - 1e-13));
                    }
                }
            }
        }
    }

    #[test]
    fn derivative_max_examples() {
        assert_eq!(lemma22_max(NodeFamily::ChebGauss, 4, 1).unwrap(), 25.0);
        assert!((lemma22_max(NodeFamily::ChebLobatto, 4, 2).unwrap() - 176.0).abs() < 1e-12);
        assert!(lemma22_max(NodeFamily::LegLobatto, 4, 2).is_err());
        assert!(lemma22_max(NodeFamily::ChebGauss, 4, 3).is_err());
        for family in NodeFamily::CHEBYSHEV {
            for n in [4usize, 8] {
                for order in 1..=2 {
                    let m = (0..=20000)
                        .map(|i| nodal_poly(family, n, -1.0 + i as f64 / 10000.0, order).unwrap().abs())
                        .fold(0.0, f64::max);
                    let want = lemma22_max(family, n, order).unwrap();
                    assert!((m - want).abs() <= 1e-8 * want, "{family} {n} {order}: {m} vs {want}");
                }
            }
        }
    }

    #[test]
    fn bound_hand_value_and_super_ratio() {
        let rho = 3.7320508;
        let ep = EllipseParams::new(rho, 1.0).unwrap();
        assert!((ep.d_rho - 1.0).abs() < 1e-7);
        assert!((ep.l_rho - PI * 14f64.sqrt()).abs() < 1e-6);
        let kind = |quantity| BoundKind {
            theorem: BoundTheorem::Thm21ChebGauss,
            quantity,
        };
        let n = 4;
        let v = bound_value(kind(BoundQuantity::Value), n, &ep).unwrap();
        let hand = ep.l_rho / (PI * ep.d_rho) / (rho.powi(5) - rho.powi(-5));
        assert!((v - hand).abs() < 1e-15 * hand.max(1.0));
        for n in [4usize, 16, 64] {
            let s = bound_value(kind(BoundQuantity::D1Super), n, &ep).unwrap();
            let g = bound_value(kind(BoundQuantity::D1), n, &ep).unwrap();
            let want = 1.0 / (ep.d_rho * ((n + 1) * (n + 1)) as f64 + 1.0);
            assert!((s / g - want).abs() < 1e-14);
        }
    }

    #[test]
    fn bounds_decrease_in_n() {
        let ep = EllipseParams::new((2.0 + 3f64.sqrt()) * 0.999, 577.0).unwrap();
        for theorem in BoundTheorem::ALL {
            for quantity in BoundQuantity::ALL {
                let kind = BoundKind { theorem, quantity };
                for n in 4..64 {
                    let a = bound_value(kind, n, &ep).unwrap();
                    let b = bound_value(kind, n + 1, &ep).unwrap();
                    assert!(b < a, "{kind:?} {n}");
                }
            }
        }
    }

    #[test]
    fn oracle_matches_direct_error() {
        let f = TestFunction::POLE2;
        let ns = generate_nodes(NodeFamily::ChebGauss, 16).unwrap();
        let v = ns.xs.iter().map(|&x| f.eval(x, 0)).collect();
        let ip = build_interpolant(ns, v).unwrap();
        let o = ContourOracle::new(|z| f.eval_complex(z), NodeFamily::ChebGauss, 16, 3.0, 512).unwrap();
        let direct = f.eval(0.5, 0) - ip.eval(0.5, 0).unwrap();
        assert!((o.error(0.5, 0).unwrap() - direct).abs() < 1e-8);
        for order in 1..=2 {
            for &x in &[-0.9, 0.13, 0.77] {
                let direct = f.eval(x, order) - ip.eval(x, order).unwrap();
                assert!((o.error(x, order).unwrap() - direct).abs() < 1e-9, "{order} {x}");
            }
        }
    }

    #[test]
    fn oracle_vanishes_for_polynomials() {
        let f = TestFunction::Polynomial(8);
        for family in NodeFamily::CHEBYSHEV {
            let o = ContourOracle::new(|z| f.eval_complex(z), family, 8, 2.0, 256).unwrap();
            for order in 0..=2 {
                assert!(o.error(0.3, order).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn oracle_first_term_vanishes_at_superpoints() {
        let f = TestFunction::POLE2;
        let o = ContourOracle::new(|z| f.eval_complex(z), NodeFamily::ChebGauss, 16, 3.0, 512).unwrap();
        let sp = superpoints(NodeFamily::ChebGauss, 16, 1).unwrap();
        for &x in &sp.points {
            let t = o.terms(x, 1).unwrap();
            assert!(t[0].abs() <= 1e-12);
        }
    }

    #[test]
    fn oracle_converges_under_doubling() {
        let f = |z| TestFunction::POLE2.eval_complex(z);
        for m in [256usize, 512, 1024] {
            let a = contour_error_oracle(f, NodeFamily::ChebGauss, 16, 0.3, 1, 3.0, m).unwrap();
            let b = contour_error_oracle(f, NodeFamily::ChebGauss, 16, 0.3, 1, 3.0, 2 * m).unwrap();
            assert!((a - b).abs() <= 1e-10);
        }
        assert!(contour_error_oracle(f, NodeFamily::ChebGauss, 16, 0.3, 1, 3.0, 63).is_err());
    }

    #[test]
    fn envelopes() {
        for family in [NodeFamily::ChebLobatto, NodeFamily::ChebRadauRight, NodeFamily::ChebRadauLeft] {
            for n in [2usize, 8, 32] {
                assert!(envelope_check(family, n).unwrap() <= 1e-12, "{family} {n}");
            }
        }
        let e = envelope_extremals(NodeFamily::ChebLobatto, 2).unwrap();
        let h = 0.5f64.sqrt();
        assert!((e[0].0 - h).abs() < 1e-15 && (e[0].1 + 2.0 * h).abs() < 1e-14);
        assert!(envelope_check(NodeFamily::ChebGauss, 8).is_err());
    }
}
