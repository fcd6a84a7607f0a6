//! Interpolation and collocation node families and their nodal polynomials.
//!
//! The integer `n` passed around here is always the `N` of the defining
//! polynomial of the family, so cardinalities differ between families:
//!
//! | family             | nodal polynomial        | points |
//! |--------------------|-------------------------|--------|
//! | `ChebGauss`        | `T_{N+1}`               | N+1    |
//! | `ChebLobatto`      | `T_{N+1} - T_{N-1}`     | N+1    |
//! | `ChebRadauRight`   | `T_{N+1} - T_N`         | N+1    |
//! | `ChebRadauLeft`    | `T_{N+1} + T_N`         | N+1    |
//! | `LegGauss`         | `L_N`                   | N      |
//! | `LegLobatto`       | `L_N - L_{N-2}`         | N      |
//! | `LegRadauRight`    | `L_N - L_{N-1}`         | N      |
//! | `LegRadauLeft`     | `L_N + L_{N-1}`         | N      |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::orthopoly::{evaluate, PolyKind, Scalar, DOMAIN_SLACK};
use crate::roots::{sign_change_brackets, SafeNewton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeFamily {
    ChebGauss,
    ChebLobatto,
    ChebRadauRight,
    ChebRadauLeft,
    LegGauss,
    LegLobatto,
    LegRadauRight,
    LegRadauLeft,
}

impl NodeFamily {
    pub const ALL: [NodeFamily; 8] = [
        NodeFamily::ChebGauss,
        NodeFamily::ChebLobatto,
        NodeFamily::ChebRadauRight,
        NodeFamily::ChebRadauLeft,
        NodeFamily::LegGauss,
        NodeFamily::LegLobatto,
        NodeFamily::LegRadauRight,
        NodeFamily::LegRadauLeft,
    ];

    pub const CHEBYSHEV: [NodeFamily; 4] = [
        NodeFamily::ChebGauss,
        NodeFamily::ChebLobatto,
        NodeFamily::ChebRadauRight,
        NodeFamily::ChebRadauLeft,
    ];

    pub fn is_chebyshev(self) -> bool {
        matches!(
            self,
            NodeFamily::ChebGauss
                | NodeFamily::ChebLobatto
                | NodeFamily::ChebRadauRight
                | NodeFamily::ChebRadauLeft
        )
    }

    /// Smallest admissible `N`.
    pub fn min_n(self) -> usize {
        match self {
            NodeFamily::ChebLobatto | NodeFamily::LegLobatto => 2,
            _ => 1,
        }
    }

    pub fn node_count(self, n: usize) -> usize {
        if self.is_chebyshev() {
            n + 1
        } else {
            n
        }
    }

    /// Degree of the nodal polynomial.
    pub fn nodal_degree(self, n: usize) -> usize {
        self.node_count(n)
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeFamily::ChebGauss => "cheb-gauss",
            NodeFamily::ChebLobatto => "cheb-lobatto",
            NodeFamily::ChebRadauRight => "cheb-radau-right",
            NodeFamily::ChebRadauLeft => "cheb-radau-left",
            NodeFamily::LegGauss => "leg-gauss",
            NodeFamily::LegLobatto => "leg-lobatto",
            NodeFamily::LegRadauRight => "leg-radau-right",
            NodeFamily::LegRadauLeft => "leg-radau-left",
        }
    }

    fn check_n(self, n: usize) -> Result<()> {
        if n < self.min_n() {
            return domain(format!("{} requires N >= {}, got {n}", self.name(), self.min_n()));
        }
        Ok(())
    }
}

impl fmt::Display for NodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NodeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NodeFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = NodeFamily::ALL.iter().map(|f| f.name()).collect();
                Error::Domain(format!("unknown family '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

/// Sorted interpolation abscissae with their angles `x = cos θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    pub family: NodeFamily,
    pub n: usize,
    /// Strictly increasing.
    pub xs: Vec<f64>,
    /// `xs[k] = cos(thetas[k])`, so decreasing in `[0, π]`.
    pub thetas: Vec<f64>,
}

impl NodeSet {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// `[ω, ω', ω'']` for the family's nodal polynomial, unchecked.
pub fn nodal_eval<T: Scalar>(family: NodeFamily, n: usize, x: T) -> [T; 3] {
    use NodeFamily::*;
    let (kind, hi, lo, sign) = match family {
        ChebGauss => (PolyKind::ChebyshevT, n + 1, None, 0.0),
        ChebLobatto => (PolyKind::ChebyshevT, n + 1, n.checked_sub(1), -1.0),
        ChebRadauRight => (PolyKind::ChebyshevT, n + 1, Some(n), -1.0),
        ChebRadauLeft => (PolyKind::ChebyshevT, n + 1, Some(n), 1.0),
        LegGauss => (PolyKind::Legendre, n, None, 0.0),
        LegLobatto => (PolyKind::Legendre, n, n.checked_sub(2), -1.0),
        LegRadauRight => (PolyKind::Legendre, n, n.checked_sub(1), -1.0),
        LegRadauLeft => (PolyKind::Legendre, n, n.checked_sub(1), 1.0),
    };
    let a = evaluate(kind, hi, x);
    match lo {
        Some(m) if sign != 0.0 => {
            let b = evaluate(kind, m, x);
            let s = T::from(sign);
            [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
        }
        _ => a,
    }
}

/// The nodal polynomial `ω` of the family (or its first/second derivative)
/// at real `x`.
pub fn nodal_poly(family: NodeFamily, n: usize, x: f64, order: u32) -> Result<f64> {
    family.check_n(n)?;
    if order > 2 {
        return domain(format!("nodal polynomial derivative order {order} > 2"));
    }
    if !x.is_finite() || x.abs() > 1.0 + DOMAIN_SLACK {
        return domain(format!("x = {x} outside [-1, 1]"));
    }
    Ok(nodal_eval(family, n, x)[order as usize])
}

/// The nodal polynomial of the family at complex `z`.
pub fn nodal_poly_complex(family: NodeFamily, n: usize, z: Complex64, order: u32) -> Result<Complex64> {
    family.check_n(n)?;
    if order > 2 {
        return domain(format!("nodal polynomial derivative order {order} > 2"));
    }
    Ok(nodal_eval(family, n, z)[order as usize])
}

pub fn generate_nodes(family: NodeFamily, n: usize) -> Result<NodeSet> {
    family.check_n(n)?;
    let mut thetas: Vec<f64> = match family {
        NodeFamily::ChebGauss => (0..=n).map(|k| pi_frac(2 * k + 1, 2 * n + 2)).collect(),
        NodeFamily::ChebLobatto => (0..=n).map(|k| pi_frac(k, n)).collect(),
        NodeFamily::ChebRadauRight => (0..=n).map(|k| pi_frac(2 * k, 2 * n + 1)).collect(),
        NodeFamily::ChebRadauLeft => (0..=n).map(|k| pi_frac(2 * k + 1, 2 * n + 1)).collect(),
        _ => {
            let xs = legendre_family_roots(family, n)?;
            xs.iter().map(|x| x.clamp(-1.0, 1.0).acos()).collect()
        }
    };
    // ascending x means descending θ
    thetas.sort_by(|a, b| b.total_cmp(a));
    let xs = thetas.iter().map(|t| node_cos(*t)).collect();
    Ok(NodeSet {
        family,
        n,
        xs,
        thetas,
    })
}

/// `num·π/den`, exactly π when `num == den`.
fn pi_frac(num: usize, den: usize) -> f64 {
    if num == den {
        PI
    } else {
        num as f64 * PI / den as f64
    }
}

/// `cos θ` with the endpoints and the centre returned exactly.
fn node_cos(theta: f64) -> f64 {
    if theta == 0.0 {
        1.0
    } else if theta == PI {
        -1.0
    } else if (theta - PI / 2.0).abs() < 1e-15 {
        0.0
    } else {
        theta.cos()
    }
}

/// Seeds for the interior roots, in increasing θ.
fn legendre_seeds(family: NodeFamily, n: usize) -> Vec<f64> {
    let nf = n as f64;
    match family {
        NodeFamily::LegGauss => (1..=n)
            .map(|k| PI * (4 * k - 1) as f64 / (4.0 * nf + 2.0))
            .collect(),
        NodeFamily::LegLobatto => (1..n - 1).map(|k| k as f64 * PI / (nf - 1.0)).collect(),
        NodeFamily::LegRadauRight => (1..n)
            .map(|k| (2 * k) as f64 * PI / (2.0 * nf - 1.0))
            .collect(),
        NodeFamily::LegRadauLeft => (0..n - 1)
            .map(|k| (2 * k + 1) as f64 * PI / (2.0 * nf - 1.0))
            .collect(),
        _ => Vec::new(),
    }
}

/// Roots of a Legendre-family nodal polynomial, ascending in x.
///
/// Endpoint roots are inserted exactly; interior roots are isolated by a
/// sign scan over a uniform θ grid and refined with safeguarded Newton.
fn legendre_family_roots(family: NodeFamily, n: usize) -> Result<Vec<f64>> {
    let (left, right) = match family {
        NodeFamily::LegLobatto => (true, true),
        NodeFamily::LegRadauRight => (false, true),
        NodeFamily::LegRadauLeft => (true, false),
        _ => (false, false),
    };
    let interior = family.node_count(n) - left as usize - right as usize;
    let seeds = legendre_seeds(family, n);
    let m = 8 * (n + 2);
    let samples: Vec<f64> = (1..m).map(|i| i as f64 * PI / m as f64).collect();
    let value = |theta: f64| nodal_eval(family, n, theta.cos())[0];
    let brackets = sign_change_brackets(value, &samples);
    if brackets.len() != interior {
        return Err(Error::Solver {
            index: brackets.len(),
            reason: format!(
                "{}: found {} interior sign changes, expected {interior}",
                family.name(),
                brackets.len()
            ),
        });
    }
    let newton = SafeNewton {
        step_tol: 1e-15,
        residual_tol: 1e-11,
        max_iter: 100,
    };
    let f = |x: f64| {
        let v = nodal_eval(family, n, x);
        (v[0], v[1])
    };
    let mut xs = Vec::with_capacity(family.node_count(n));
    if right {
        xs.push(1.0);
    }
    for (k, &(t0, t1)) in brackets.iter().enumerate() {
        let (a, b) = (t1.cos(), t0.cos());
        if t0 == t1 {
            xs.push(b);
            continue;
        }
        let seed = seeds.get(k).copied().filter(|s| *s > t0 && *s < t1).map(f64::cos);
        let x = newton
            .solve(f, a, b, seed.unwrap_or(0.5 * (a + b)))
            .map_err(|e| Error::Solver {
                index: k,
                reason: format!("{}: {e}", family.name()),
            })?;
        xs.push(x);
    }
    if left {
        xs.push(-1.0);
    }
    xs.reverse();
    Ok(xs)
}
