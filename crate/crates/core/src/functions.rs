//! Built-in analytic test functions with exact derivatives, antiderivatives
//! and complex extensions.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::orthopoly::{chebyshev_t_integral, eval_complex, evaluate, PolyKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// `1/(1+25x²)`.
    Runge,
    /// `1/(a−x)` with real `a`, |a| > 1.
    RealPole(f64),
    /// `1/((x−α)²+β²)`, poles at `α ± iβ`, β > 0.
    ConjugatePoles { re: f64, im: f64 },
    /// `Σ_{j≤d} T_j/(j+1)`.
    Polynomial(usize),
}

impl TestFunction {
    /// `1/(2−x)`.
    pub const POLE2: TestFunction = TestFunction::RealPole(2.0);

    /// The `order`-th derivative at real `x`, `order ≤ 2`.
    pub fn eval(&self, x: f64, order: u32) -> f64 {
        match *self {
            TestFunction::Runge => {
                let q = 1.0 + 25.0 * x * x;
                match order {
                    0 => 1.0 / q,
                    1 => -50.0 * x / (q * q),
                    _ => (3750.0 * x * x - 50.0) / (q * q * q),
                }
            }
            TestFunction::RealPole(a) => {
                let r = 1.0 / (a - x);
                match order {
                    0 => r,
                    1 => r * r,
                    _ => 2.0 * r * r * r,
                }
            }
            TestFunction::ConjugatePoles { re, im } => {
                let t = x - re;
                let q = t * t + im * im;
                match order {
                    0 => 1.0 / q,
                    1 => -2.0 * t / (q * q),
                    _ => (6.0 * t * t - 2.0 * im * im) / (q * q * q),
                }
            }
            TestFunction::Polynomial(d) => (0..=d)
                .map(|j| evaluate(PolyKind::ChebyshevT, j, x)[order.min(2) as usize] / (j + 1) as f64)
                .sum(),
        }
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            TestFunction::Runge => one / (one + 25.0 * z * z),
            TestFunction::RealPole(a) => one / (a - z),
            TestFunction::ConjugatePoles { re, im } => {
                let t = z - re;
                one / (t * t + im * im)
            }
            TestFunction::Polynomial(d) => (0..=d)
                .map(|j| eval_complex(PolyKind::ChebyshevT, j, z) / (j + 1) as f64)
                .sum(),
        }
    }

    /// `∫_{-1}^x f(t) dt`.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match *self {
            TestFunction::Runge => ((5.0 * x).atan() + 5f64.atan()) / 5.0,
            TestFunction::RealPole(a) => ((a + 1.0).abs() / (a - x).abs()).ln(),
            TestFunction::ConjugatePoles { re, im } => {
                (((x - re) / im).atan() - ((-1.0 - re) / im).atan()) / im
            }
            TestFunction::Polynomial(d) => (0..=d)
                .map(|j| chebyshev_t_integral(j, x) / (j + 1) as f64)
                .sum(),
        }
    }

    /// The singularity closest to [-1, 1] in the ellipse sense, if any.
    pub fn pole(&self) -> Option<Complex64> {
        match *self {
            TestFunction::Runge => Some(Complex64::new(0.0, 0.2)),
            TestFunction::RealPole(a) => Some(Complex64::new(a, 0.0)),
            TestFunction::ConjugatePoles { re, im } => Some(Complex64::new(re, im)),
            TestFunction::Polynomial(_) => None,
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            TestFunction::RealPole(a) if !(a.is_finite() && a.abs() > 1.0) => {
                domain(format!("real pole {a} must lie outside [-1, 1]"))
            }
            TestFunction::ConjugatePoles { re, im } if !(re.is_finite() && im.is_finite() && im != 0.0) => {
                domain(format!("pole {re}{im:+}i must have a nonzero imaginary part"))
            }
            TestFunction::ConjugatePoles { re, im } => Ok(TestFunction::ConjugatePoles { re, im: im.abs() }),
            f => Ok(f),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestFunction::Runge => write!(f, "runge"),
            TestFunction::RealPole(a) if a == 2.0 => write!(f, "pole2"),
            TestFunction::RealPole(a) => write!(f, "pole:{a:?}"),
            TestFunction::ConjugatePoles { re, im } => write!(f, "pole:{re:?},{im:?}"),
            TestFunction::Polynomial(d) => write!(f, "poly:{d}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// Accepts `runge`, `pole2`, `pole:<re>[,<im>]` and `poly:<degree>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("unknown function '{s}' (expected runge, pole2, pole:<re>[,<im>] or poly:<degree>)"));
        match s {
            "runge" => return Ok(TestFunction::Runge),
            "pole2" => return Ok(TestFunction::POLE2),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("poly:") {
            return rest.parse().map(TestFunction::Polynomial).map_err(|_| bad());
        }
        let rest = s.strip_prefix("pole:").ok_or_else(bad)?;
        let parts: Vec<f64> = rest
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match parts[..] {
            [a] => TestFunction::RealPole(a).validate(),
            [a, b] if b == 0.0 => TestFunction::RealPole(a).validate(),
            [a, b] => TestFunction::ConjugatePoles { re: a, im: b }.validate(),
            _ => Err(bad()),
        }
    }
}
