//! Chebyshev (first and second kind) and Legendre polynomials.
//!
//! Every evaluator runs the forward three-term recurrence, so the same code
//! serves real arguments on `[-1, 1]` and complex arguments on Bernstein
//! ellipses. First and second derivatives come from the recurrence
//! differentiated once and twice.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Num;

use crate::error::{domain, Result};

/// Slack allowed beyond `[-1, 1]` for real arguments.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Scalar types the recurrences run on (`f64` and `Complex64`).
pub trait Scalar: Copy + Num + From<f64> {}

impl<T: Copy + Num + From<f64>> Scalar for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyKind {
    /// `T_n`, Chebyshev polynomial of the first kind.
    ChebyshevT,
    /// `U_n`, Chebyshev polynomial of the second kind.
    ChebyshevU,
    /// `L_n`, Legendre polynomial.
    Legendre,
}

/// Returns `[p_n(x), p_n'(x), p_n''(x)]` without any argument checks.
pub fn evaluate<T: Scalar>(kind: PolyKind, n: usize, x: T) -> [T; 3] {
    let zero = T::zero();
    let one = T::one();
    let two = T::from(2.0);
    if n == 0 {
        return [one, zero, zero];
    }
    let (mut p0, mut d0, mut s0) = (one, zero, zero);
    let (mut p1, mut d1, mut s1) = match kind {
        PolyKind::ChebyshevU => (two * x, two, zero),
        _ => (x, one, zero),
    };
    for k in 1..n {
        let (p2, d2, s2) = match kind {
            PolyKind::ChebyshevT | PolyKind::ChebyshevU => (
                two * x * p1 - p0,
                two * p1 + two * x * d1 - d0,
                T::from(4.0) * d1 + two * x * s1 - s0,
            ),
            PolyKind::Legendre => {
                let kf = k as f64;
                let a = T::from(2.0 * kf + 1.0);
                let b = T::from(kf);
                let c = T::from(kf + 1.0);
                (
                    (a * x * p1 - b * p0) / c,
                    (a * (p1 + x * d1) - b * d0) / c,
                    (a * (two * d1 + x * s1) - b * s0) / c,
                )
            }
        };
        p0 = p1;
        d0 = d1;
        s0 = s1;
        p1 = p2;
        d1 = d2;
        s1 = s2;
    }
    [p1, d1, s1]
}

fn check_real(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > 1.0 + DOMAIN_SLACK {
        return domain(format!("x = {x} outside [-1, 1]"));
    }
    Ok(())
}

/// Value of `p_n(x)` for real `x` in `[-1, 1]`.
pub fn eval(kind: PolyKind, n: usize, x: f64) -> Result<f64> {
    check_real(x)?;
    Ok(evaluate(kind, n, x)[0])
}

/// Value of `p_n(z)` anywhere in the complex plane.
pub fn eval_complex(kind: PolyKind, n: usize, z: Complex64) -> Complex64 {
    evaluate(kind, n, z)[0]
}

/// First or second derivative of `p_n` at real `x`.
///
/// At `x = ±1` the closed-form endpoint values are returned.
pub fn eval_deriv(kind: PolyKind, n: usize, x: f64, order: u32) -> Result<f64> {
    check_real(x)?;
    if !(1..=2).contains(&order) {
        return domain(format!("derivative order {order} not in {{1, 2}}"));
    }
    if x == 1.0 || x == -1.0 {
        return Ok(endpoint_derivative(kind, n, x > 0.0, order));
    }
    Ok(evaluate(kind, n, x)[order as usize])
}

/// `p_n^{(order)}(±1)` in closed form.
fn endpoint_derivative(kind: PolyKind, n: usize, right: bool, order: u32) -> f64 {
    let m = n as f64;
    let at_one = match (kind, order) {
        (PolyKind::ChebyshevT, 1) => m * m,
        (PolyKind::ChebyshevT, _) => m * m * (m * m - 1.0) / 3.0,
        (PolyKind::ChebyshevU, 1) => m * (m + 1.0) * (m + 2.0) / 3.0,
        (PolyKind::ChebyshevU, _) => {
            (m - 1.0) * m * (m + 1.0) * (m + 2.0) * (m + 3.0) / 15.0
        }
        (PolyKind::Legendre, 1) => m * (m + 1.0) / 2.0,
        (PolyKind::Legendre, _) => (m - 1.0) * m * (m + 1.0) * (m + 2.0) / 8.0,
    };
    // p_n has the parity of n, so p^{(r)}(-1) = (-1)^{n+r} p^{(r)}(1).
    if right || (n + order as usize) % 2 == 0 {
        at_one
    } else {
        -at_one
    }
}

/// A point `z = (ρe^{iθ} + ρ^{-1}e^{-iθ})/2` on the Bernstein ellipse `E_ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsePoint {
    pub rho: f64,
    /// Parameter reduced to `[0, 2π)`.
    pub theta: f64,
    pub z: Complex64,
}

impl EllipsePoint {
    /// `dz/dθ` of the parametrization at this point.
    pub fn dz_dtheta(&self) -> Complex64 {
        let (s, c) = self.theta.sin_cos();
        let major = 0.5 * (self.rho + 1.0 / self.rho);
        let minor = 0.5 * (self.rho - 1.0 / self.rho);
        Complex64::new(-major * s, minor * c)
    }
}

pub fn ellipse_point(rho: f64, theta: f64) -> Result<EllipsePoint> {
    if !(rho > 1.0) || !rho.is_finite() {
        return domain(format!("ellipse parameter rho = {rho} must exceed 1"));
    }
    let theta = theta.rem_euclid(2.0 * PI);
    let (s, c) = theta.sin_cos();
    let z = Complex64::new(0.5 * (rho + 1.0 / rho) * c, 0.5 * (rho - 1.0 / rho) * s);
    Ok(EllipsePoint { rho, theta, z })
}

/// `∫_{-1}^x T_m(t) dt`.
pub fn chebyshev_t_integral(m: usize, x: f64) -> f64 {
    let t = |k: usize, y: f64| evaluate(PolyKind::ChebyshevT, k, y)[0];
    match m {
        0 => x + 1.0,
        1 => 0.5 * (x * x - 1.0),
        _ => {
            let mf = m as f64;
            let anti = |y: f64| 0.5 * (t(m + 1, y) / (mf + 1.0) - t(m - 1, y) / (mf - 1.0));
            anti(x) - anti(-1.0)
        }
    }
}

/// `∫_{-1}^x L_m(t) dt = (L_{m+1} - L_{m-1})(x) / (2m + 1)`.
pub fn legendre_integral(m: usize, x: f64) -> f64 {
    let l = |k: usize| evaluate(PolyKind::Legendre, k, x)[0];
    match m {
        0 => x + 1.0,
        _ => (l(m + 1) - l(m - 1)) / (2.0 * m as f64 + 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert!((eval(PolyKind::ChebyshevT, 3, 0.5).unwrap() + 1.0).abs() < 1e-15);
        for (x, want) in [(0.0, -1.0), (0.5, 0.0), (1.0, 3.0)] {
            let got = eval(PolyKind::ChebyshevU, 2, x).unwrap();
            assert!((got - want).abs() < 1e-15, "U_2({x}) = {got}");
        }
        let r = 1.0 / 3f64.sqrt();
        assert!(eval(PolyKind::Legendre, 2, r).unwrap().abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(eval_deriv(PolyKind::ChebyshevT, 5, 1.0, 1).unwrap(), 25.0);
        let d = eval_deriv(PolyKind::ChebyshevT, 3, 0.0, 1).unwrap();
        assert!((d + 3.0).abs() < 1e-15);
        let d2 = eval_deriv(PolyKind::Legendre, 2, 0.7, 2).unwrap();
        assert!((d2 - 3.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_forms_match_recurrence() {
        for kind in [PolyKind::ChebyshevT, PolyKind::ChebyshevU, PolyKind::Legendre] {
            for n in 0..20 {
                for x in [-1.0, 1.0] {
                    let rec = evaluate(kind, n, x);
                    for order in 1..=2u32 {
                        let closed = eval_deriv(kind, n, x, order).unwrap();
                        let r = rec[order as usize];
                        assert!(
                            (closed - r).abs() <= 1e-12 * r.abs().max(1.0),
                            "{kind:?} n={n} x={x} order={order}: {closed} vs {r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(eval(PolyKind::ChebyshevT, 2, 1.5).is_err());
        assert!(eval(PolyKind::ChebyshevT, 2, 1.0 + 1e-13).is_ok());
        assert!(eval_deriv(PolyKind::Legendre, 2, 0.0, 0).is_err());
        assert!(eval_deriv(PolyKind::Legendre, 2, 0.0, 3).is_err());
        assert!(ellipse_point(1.0, 0.0).is_err());
        assert!(ellipse_point(0.5, 0.0).is_err());
    }

    #[test]
    fn ellipse_examples() {
        let p = ellipse_point(2.0, 0.0).unwrap();
        assert!((p.z - Complex64::new(1.25, 0.0)).norm() < 1e-15);
        let q = ellipse_point(2.0, PI / 2.0).unwrap();
        assert!((q.z - Complex64::new(0.0, 0.75)).norm() < 1e-15);
        let r = ellipse_point(3.0, -1.0).unwrap();
        assert!((r.theta - (2.0 * PI - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn complex_matches_joukowski_form() {
        // T_n((w + 1/w)/2) = (w^n + w^{-n})/2
        for &rho in &[1.2, 2.0, 4.0] {
            for j in 0..16 {
                let p = ellipse_point(rho, j as f64 * 0.4).unwrap();
                let w = Complex64::from_polar(rho, p.theta);
                for n in [0usize, 1, 5, 17] {
                    let want = 0.5 * (w.powi(n as i32) + w.powi(-(n as i32)));
                    let got = eval_complex(PolyKind::ChebyshevT, n, p.z);
                    assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn integrals_differentiate_back() {
        let h = 1e-6;
        for m in 0..10 {
            for &x in &[-0.7, 0.1, 0.9] {
                let fd = (chebyshev_t_integral(m, x + h) - chebyshev_t_integral(m, x - h)) / (2.0 * h);
                assert!((fd - evaluate(PolyKind::ChebyshevT, m, x)[0]).abs() < 1e-8);
                let fd = (legendre_integral(m, x + h) - legendre_integral(m, x - h)) / (2.0 * h);
                assert!((fd - evaluate(PolyKind::Legendre, m, x)[0]).abs() < 1e-8);
            }
            assert!(chebyshev_t_integral(m, -1.0).abs() < 1e-15);
            assert!(legendre_integral(m, -1.0).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn ellipse_point_properties(rho in 1.0001f64..10.0, theta in -10.0f64..10.0) {
            let p = ellipse_point(rho, theta).unwrap();
            let q = ellipse_point(rho, -theta).unwrap();
            prop_assert!((p.z - q.z.conj()).norm() <= 1e-12 * p.z.norm().max(1.0));
            let foci = (p.z - 1.0).norm() + (p.z + 1.0).norm();
            prop_assert!((foci - (rho + 1.0 / rho)).abs() <= 1e-12 * (rho + 1.0 / rho));
            let w = Complex64::from_polar(rho, p.theta);
            let z = 0.5 * (w + 1.0 / w);
            prop_assert!((z - p.z).norm() <= 1e-15 * z.norm().max(1.0) * 4.0);
        }

        #[test]
        fn chebyshev_trig_forms(n in 1usize..=64, theta in 0.001f64..3.14) {
            let x = theta.cos();
            let t = eval(PolyKind::ChebyshevT, n, x).unwrap();
            prop_assert!((t - (n as f64 * theta).cos()).abs() <= 1e-12);
            let u = eval(PolyKind::ChebyshevU, n - 1, x).unwrap();
            prop_assert!((u * theta.sin() - (n as f64 * theta).sin()).abs() <= 1e-12);
        }
    }
}
