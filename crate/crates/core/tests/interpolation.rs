use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use superspec_core::barycentric::{build_interpolant, differentiation_matrices};
use superspec_core::orthopoly::evaluate;
use superspec_core::{generate_nodes, test_seed, NodeFamily, PolyKind};

fn runner(cases: u32) -> TestRunner {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&test_seed().to_le_bytes());
    TestRunner::new_with_rng(Config::with_cases(cases), TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

fn family() -> impl Strategy<Value = NodeFamily> {
    prop::sample::select(NodeFamily::ALL.to_vec())
}

/// `Σ c_j T_j` and its first two derivatives.
fn series(c: &[f64], x: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (j, cj) in c.iter().enumerate() {
        let v = evaluate(PolyKind::ChebyshevT, j, x);
        for k in 0..3 {
            out[k] += cj * v[k];
        }
    }
    out
}

#[test]
fn reproduces_polynomials_of_full_degree() {
    let strategy = (family(), 2usize..=32, prop::collection::vec(-1.0f64..1.0, 33));
    runner(96)
        .run(&strategy, |(family, n, coeffs)| {
            let ns = generate_nodes(family, n.max(family.min_n())).unwrap();
            let c = &coeffs[..ns.len()];
            let values = ns.xs.iter().map(|&x| series(c, x)[0]).collect();
            let ip = build_interpolant(ns, values).unwrap();
            let grid: Vec<f64> = (0..=200).map(|i| -1.0 + 0.01 * i as f64).collect();
            let scale = 1.0 + grid.iter().fold(0.0f64, |a, &x| a.max(series(c, x)[2].abs()));
            for &x in &grid {
                let want = series(c, x);
                for order in 0..=2u32 {
                    let got = ip.eval(x, order).unwrap();
                    let err = (got - want[order as usize]).abs();
                    prop_assert!(err <= 1e-11 * scale, "{} N={} order {} x={}: {}", family, n, order, x, err);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn first_matrix_squared_is_second_matrix() {
    let chebyshev = prop::sample::select(NodeFamily::CHEBYSHEV.to_vec());
    let strategy = (chebyshev, 2usize..=32, prop::collection::vec(-1.0f64..1.0, 33));
    runner(64)
        .run(&strategy, |(family, n, f)| {
            let ns = generate_nodes(family, n).unwrap();
            let ip = build_interpolant(ns.clone(), f[..ns.len()].to_vec()).unwrap();
            let (d, d2) = differentiation_matrices(&ns.xs, &ip.weights);
            let apply = |m: &[Vec<f64>], v: &[f64]| -> Vec<f64> {
                m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
            };
            let dd = apply(&d, &apply(&d, &ip.values));
            let direct = apply(&d2, &ip.values);
            let scale = direct.iter().fold(1.0f64, |a, b| a.max(b.abs()));
            for (a, b) in dd.iter().zip(&direct) {
                prop_assert!((a - b).abs() <= 1e-9 * scale, "{} N={}: {} vs {}", family, n, a, b);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn interpolation_is_linear_in_the_data() {
    let data = || prop::collection::vec(-1.0f64..1.0, 25);
    let strategy = (family(), 2usize..=24, data(), data(), -3.0f64..3.0);
    runner(64)
        .run(&strategy, |(family, n, f, g, a)| {
            let ns = generate_nodes(family, n.max(family.min_n())).unwrap();
            let m = ns.len();
            let sum: Vec<f64> = f[..m].iter().zip(&g[..m]).map(|(x, y)| a * x + y).collect();
            let pf = build_interpolant(ns.clone(), f[..m].to_vec()).unwrap();
            let pg = build_interpolant(ns.clone(), g[..m].to_vec()).unwrap();
            let ps = build_interpolant(ns, sum).unwrap();
            for i in 0..=40 {
                let x = -1.0 + 0.05 * i as f64;
                for order in 0..=2 {
                    let lhs = ps.eval(x, order).unwrap();
                    let rhs = a * pf.eval(x, order).unwrap() + pg.eval(x, order).unwrap();
                    prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
                }
            }
            Ok(())
        })
        .unwrap();
}
