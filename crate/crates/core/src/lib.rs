//! Superconvergence points of polynomial interpolants and derivative
//! collocation: orthogonal polynomials, node families, superpoints,
//! barycentric interpolation, analytic error bounds and closed-form
//! collocation errors.

pub mod barycentric;
pub mod derivcolloc;
pub mod error;
pub mod errorbounds;
pub mod functions;
pub mod nodes;
pub mod orthopoly;
pub mod roots;
pub mod superpoints;
pub mod verify;

pub use error::{Error, Result};
pub use nodes::{generate_nodes, nodal_poly, NodeFamily, NodeSet};
pub use orthopoly::PolyKind;
pub use superpoints::{asymptotic_guess, superpoints, SuperpointSet};

/// Seed for randomized checks: `SUPERSPEC_SEED` if set, else a fixed default.
pub fn test_seed() -> u64 {
    std::env::var("SUPERSPEC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0x5eed_2024)
}
