//! Bracketed root refinement shared by the node and superpoint solvers.

/// Newton iteration safeguarded by bisection on a sign-change bracket.
#[derive(Debug, Clone, Copy)]
pub struct SafeNewton {
    /// Stop once a Newton or bisection update is at most this large.
    pub step_tol: f64,
    /// Required `|f|` at the returned root.
    pub residual_tol: f64,
    pub max_iter: usize,
}

impl Default for SafeNewton {
    fn default() -> Self {
        SafeNewton {
            step_tol: 1e-14,
            residual_tol: 1e-12,
            max_iter: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootFailure {
    NoSignChange { a: f64, fa: f64, b: f64, fb: f64 },
    NotConverged { x: f64, fx: f64 },
    NotFinite { x: f64 },
}

impl std::fmt::Display for RootFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootFailure::NoSignChange { a, fa, b, fb } => {
                write!(f, "no sign change on [{a}, {b}] (f = {fa}, {fb})")
            }
            RootFailure::NotConverged { x, fx } => {
                write!(f, "not converged at x = {x} (f = {fx})")
            }
            RootFailure::NotFinite { x } => write!(f, "non-finite function value at {x}"),
        }
    }
}

impl SafeNewton {
    /// Refines the single root of `f` inside `[a, b]` starting from `guess`.
    ///
    /// `f` returns the function value and its derivative.
    pub fn solve<F>(&self, f: F, a: f64, b: f64, guess: f64) -> Result<f64, RootFailure>
    where
        F: Fn(f64) -> (f64, f64),
    {
        let (fa, _) = f(a);
        let (fb, _) = f(b);
        if !fa.is_finite() {
            return Err(RootFailure::NotFinite { x: a });
        }
        if !fb.is_finite() {
            return Err(RootFailure::NotFinite { x: b });
        }
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() {
            return Err(RootFailure::NoSignChange { a, fa, b, fb });
        }
        // keep f(lo) < 0 < f(hi)
        let (mut lo, mut hi) = if fa < 0.0 { (a, b) } else { (b, a) };
        let mut x = if guess > a.min(b) && guess < a.max(b) {
            guess
        } else {
            0.5 * (a + b)
        };
        let mut best = (x, f64::INFINITY);
        for _ in 0..self.max_iter {
            let (fx, dfx) = f(x);
            if !fx.is_finite() {
                return Err(RootFailure::NotFinite { x });
            }
            if fx.abs() < best.1 {
                best = (x, fx.abs());
            }
            if fx == 0.0 {
                return Ok(x);
            }
            if fx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let newton = x - fx / dfx;
            let inside = newton.is_finite() && (newton - lo) * (newton - hi) < 0.0;
            let next = if inside { newton } else { 0.5 * (lo + hi) };
            let step = (next - x).abs();
            x = next;
            if step <= self.step_tol {
                let (fx, _) = f(x);
                if fx.abs() < best.1 {
                    best = (x, fx.abs());
                }
                if best.1 <= self.residual_tol {
                    return Ok(best.0);
                }
            }
            if (hi - lo).abs() <= self.step_tol * 0.5 && best.1 <= self.residual_tol {
                return Ok(best.0);
            }
        }
        if best.1 <= self.residual_tol {
            Ok(best.0)
        } else {
            Err(RootFailure::NotConverged { x: best.0, fx: best.1 })
        }
    }
}

/// Scans `f` over ascending `samples` and returns brackets around each sign
/// change. Samples where `f` vanishes exactly are returned as degenerate
/// brackets `(s, s)`.
pub fn sign_change_brackets<F>(f: F, samples: &[f64]) -> Vec<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &s in samples {
        let v = f(s);
        if v == 0.0 {
            out.push((s, s));
            prev = None;
            continue;
        }
        if let Some((p, pv)) = prev {
            if pv.signum() != v.signum() {
                out.push((p, s));
            }
        }
        prev = Some((s, v));
    }
    out
}
