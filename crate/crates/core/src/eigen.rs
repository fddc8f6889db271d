//! First eigenpair of the Dirichlet p-Laplacian and the supersolution
//! certificate `-Δ_p v ≥ λ v^{p-1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{self, Grid, GridFunction};
use crate::solver::{self, SolveStatus, SolverConfig};

#[derive(Clone, Debug)]
pub struct EigenResult {
    pub lambda1: f64,
    /// Positive, normalized to unit `L^p` norm.
    pub eigenfunction: GridFunction,
    /// Rayleigh quotient of every iterate, starting with the initial guess.
    pub rayleigh_history: Vec<f64>,
    pub iterations: usize,
}

impl EigenResult {
    pub fn grid(&self) -> &Grid {
        self.eigenfunction.grid()
    }
}

/// `∫|u'|^p / ∫|u|^p`.
pub fn rayleigh_quotient(u: &GridFunction, p: f64) -> Result<f64> {
    let den = grid::lp_norm(u, p)?;
    if den == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let num = grid::w1p_seminorm(u, p)?;
    Ok((num / den).powf(p))
}

/// The positive bubble `(x - a)(b - x)`.
pub fn bubble(grid: Grid) -> GridFunction {
    let (a, b) = (grid.a(), grid.b());
    GridFunction::from_fn(grid, |x| (x - a) * (b - x))
}

/// A positive start: the bubble with each node scaled by a factor in `[0.5, 1.5)`.
pub fn random_positive_start(grid: Grid, seed: u64) -> GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = bubble(grid);
    let mut out = base.clone();
    for v in out.interior_mut() {
        *v *= 0.5 + rng.gen::<f64>();
    }
    out
}

/// Inverse power iteration from the positive bubble.
pub fn first_eigenpair(p: f64, grid: Grid, cfg: &SolverConfig) -> Result<EigenResult> {
    first_eigenpair_from(p, &bubble(grid), cfg)
}

/// Relative sup-norm change of the normalized iterate required on top of the
/// eigenvalue criterion.
pub const EIGENVECTOR_TOL: f64 = 1e-8;

/// Inverse power iteration: solve `-Δ_p w = λ_k u_k^{p-1}`, normalize, repeat
/// until the Rayleigh quotient changes by at most `tol_step` relative and the
/// iterate by at most [`EIGENVECTOR_TOL`] relative.
pub fn first_eigenpair_from(p: f64, start: &GridFunction, cfg: &SolverConfig) -> Result<EigenResult> {
    solver::check_exponent(p)?;
    cfg.validate()?;
    start.ensure_finite("initial eigenfunction guess")?;
    start.ensure_positive()?;
    let mut u = normalize(start, p)?;
    let mut lambda = rayleigh_quotient(&u, p)?;
    let mut history = vec![lambda];
    for k in 1..=cfg.max_outer_iters {
        let rhs = u.map(|v| lambda * v.max(0.0).powf(p - 1.0));
        let (w, report) = solver::solve_p_poisson(&rhs, p, cfg)?;
        if report.status == SolveStatus::Diverged {
            return Err(Error::NonFinite(format!("inner solve diverged at eigen iteration {k}")));
        }
        let w = normalize(&w, p)?;
        let moved = grid::sup_distance(&w, &u)? / grid::sup_norm(&w)?;
        u = w;
        let next = rayleigh_quotient(&u, p)?;
        history.push(next);
        let done = (next - lambda).abs() <= cfg.tol_step * lambda && moved <= EIGENVECTOR_TOL;
        lambda = next;
        if done {
            u.ensure_positive()?;
            return Ok(EigenResult { lambda1: lambda, eigenfunction: u, rayleigh_history: history, iterations: k });
        }
    }
    Err(Error::MaxIters(format!(
        "inverse power iteration did not settle in {} steps (last lambda = {lambda})",
        cfg.max_outer_iters
    )))
}

fn normalize(u: &GridFunction, p: f64) -> Result<GridFunction> {
    let n = grid::lp_norm(u, p)?;
    if n == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(u.scaled(1.0 / n))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupersolutionCertificate {
    pub holds: bool,
    /// Node with the smallest residual.
    pub worst_node: usize,
    /// Smallest nodal weak residual of `-Δ_p v - λ v^{p-1}`.
    pub margin: f64,
}

/// Checks `-Δ_p v ≥ λ v^{p-1}` in the weak sense against every interior hat
/// function, up to `tol`.
pub fn check_supersolution(v: &GridFunction, lambda: f64, p: f64, tol: f64) -> Result<SupersolutionCertificate> {
    v.ensure_finite("candidate supersolution")?;
    v.ensure_positive()?;
    let rhs = v.map(|x| lambda * x.powf(p - 1.0));
    let r = solver::weak_residual(v, p, &rhs)?;
    let mut worst_node = 1;
    let mut margin = f64::INFINITY;
    for (k, &ri) in r.interior().iter().enumerate() {
        if ri < margin {
            margin = ri;
            worst_node = k + 1;
        }
    }
    Ok(SupersolutionCertificate { holds: margin >= -tol, worst_node, margin })
}

/// Brackets `sup { λ ∈ [0, upper] : check_supersolution(v, λ, p, tol) holds }`
/// by bisection until the bracket is narrower than `rel_width · upper`.
pub fn certified_lambda_bracket(v: &GridFunction, p: f64, tol: f64, upper: f64, rel_width: f64) -> Result<(f64, f64)> {
    let holds = |lambda: f64| check_supersolution(v, lambda, p, tol).map(|c| c.holds);
    if !holds(0.0)? {
        return Err(Error::InvalidParams("v is not a supersolution even for lambda = 0".into()));
    }
    let (mut lo, mut hi) = (0.0, upper);
    if holds(hi)? {
        return Ok((hi, hi));
    }
    while hi - lo > rel_width * upper {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use std::f64::consts::PI;

    #[test]
    fn rayleigh_is_zero_homogeneous_and_rejects_zero() {
        let g = make_grid(0.0, 1.0, 50).unwrap();
        let u = GridFunction::from_fn(g, |x| x * (1.0 - x) * (1.0 + x));
        for p in [1.5, 2.0, 3.0] {
            let a = rayleigh_quotient(&u, p).unwrap();
            let b = rayleigh_quotient(&u.scaled(-3.7), p).unwrap();
            assert!((a - b).abs() < 1e-12 * a);
        }
        assert!(matches!(rayleigh_quotient(&GridFunction::zeros(g), 2.0), Err(Error::ZeroFunction)));
    }

    #[test]
    fn p2_discrete_eigenvalue_is_exact() {
        // lumped P1: lambda_h = (4 / h^2) sin^2(pi h / 2)
        let n = 64;
        let g = make_grid(0.0, 1.0, n).unwrap();
        let eig = first_eigenpair(2.0, g, &SolverConfig::default()).unwrap();
        let h = 1.0 / n as f64;
        let exact = 4.0 / (h * h) * (PI * h / 2.0).sin().powi(2);
        assert!((eig.lambda1 - exact).abs() < 1e-8 * exact, "{} vs {}", eig.lambda1, exact);
        for w in eig.rayleigh_history.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
        assert!(eig.eigenfunction.interior().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn supersolution_certificate() {
        let g = make_grid(0.0, 1.0, 128).unwrap();
        let eig = first_eigenpair(2.0, g, &SolverConfig::default()).unwrap();
        let phi = &eig.eigenfunction;
        let below = check_supersolution(phi, 0.99 * eig.lambda1, 2.0, 1e-12).unwrap();
        assert!(below.holds && below.margin > 0.0);
        let above = check_supersolution(phi, 1.01 * eig.lambda1, 2.0, 1e-12).unwrap();
        assert!(!above.holds && above.margin < 0.0);

        let mut bad = phi.clone();
        bad.interior_mut()[5] = -1e-3;
        assert!(matches!(check_supersolution(&bad, 1.0, 2.0, 1e-12), Err(Error::NotPositive { node: 6, .. })));
    }

    #[test]
    fn eigen_rejects_bad_inputs() {
        let g = make_grid(0.0, 1.0, 16).unwrap();
        let cfg = SolverConfig::default();
        assert!(matches!(first_eigenpair(0.5, g, &cfg), Err(Error::InvalidExponent(_))));
        let neg = bubble(g).scaled(-1.0);
        assert!(matches!(first_eigenpair_from(2.0, &neg, &cfg), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn random_start_is_seeded() {
        let g = make_grid(0.0, 1.0, 16).unwrap();
        assert_eq!(random_positive_start(g, 7), random_positive_start(g, 7));
        assert_ne!(random_positive_start(g, 7), random_positive_start(g, 8));
        assert!(random_positive_start(g, 3).interior().iter().all(|&v| v > 0.0));
    }

    fn classical(p: f64, len: f64) -> f64 {
        (p - 1.0) * (2.0 * PI / (p * (PI / p).sin())).powf(p) / len.powf(p)
    }

    #[test]
    fn converges_to_classical_values() {
        let g = make_grid(0.0, 1.0, 512).unwrap();
        for p in [1.5, 2.0, 3.0] {
            let eig = first_eigenpair(p, g, &SolverConfig::default()).unwrap();
            let exact = classical(p, 1.0);
            assert!((eig.lambda1 - exact).abs() < 1e-4 * exact, "p={p}: {} vs {exact}", eig.lambda1);
            let rq = rayleigh_quotient(&eig.eigenfunction, p).unwrap();
            assert_eq!(rq, eig.lambda1);
        }
    }

    #[test]
    fn sine_shape_at_p2() {
        let g = make_grid(0.0, 1.0, 256).unwrap();
        let eig = first_eigenpair(2.0, g, &SolverConfig::default()).unwrap();
        let sine = GridFunction::from_fn(g, |x| (PI * x).sin());
        let sine = sine.scaled(1.0 / grid::lp_norm(&sine, 2.0).unwrap());
        assert!(grid::sup_distance(&sine, &eig.eigenfunction).unwrap() < 1e-4);
    }

    #[test]
    fn doubling_the_interval_quarters_lambda_at_p2() {
        let cfg = SolverConfig::default();
        let one = first_eigenpair(2.0, make_grid(0.0, 1.0, 128).unwrap(), &cfg).unwrap();
        let two = first_eigenpair(2.0, make_grid(0.0, 2.0, 128).unwrap(), &cfg).unwrap();
        assert!((two.lambda1 - one.lambda1 / 4.0).abs() < 1e-9 * one.lambda1);
    }

    #[test]
    fn random_starts_agree_up_to_scale() {
        let g = make_grid(0.0, 1.0, 256).unwrap();
        let cfg = SolverConfig::default();
        for p in [1.5, 3.0] {
            let a = first_eigenpair_from(p, &random_positive_start(g, 1), &cfg).unwrap();
            let b = first_eigenpair_from(p, &random_positive_start(g, 2), &cfg).unwrap();
            let peak = grid::sup_norm(&a.eigenfunction).unwrap();
            let d = grid::sup_distance(&a.eigenfunction, &b.eigenfunction).unwrap();
            assert!(d < 1e-6 * peak, "p={p}: {d}");
            for w in a.rayleigh_history.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn bisection_brackets_lambda1() {
        let g = make_grid(0.0, 1.0, 128).unwrap();
        for p in [1.5, 2.0, 3.0] {
            let eig = first_eigenpair(p, g, &SolverConfig::default()).unwrap();
            let l1 = eig.lambda1;
            let (lo, hi) = certified_lambda_bracket(&eig.eigenfunction, p, 1e-10, 2.0 * l1, 1e-9).unwrap();
            assert!(lo <= hi && hi - lo <= 2e-9 * l1);
            assert!((lo - l1).abs() < 1e-5 * l1, "p={p}: [{lo}, {hi}] vs {l1}");
        }
    }

    #[test]
    fn refinement_error_at_least_halves() {
        let cfg = SolverConfig::default();
        for p in [1.5, 2.0, 3.0] {
            let l: Vec<f64> = [64, 128, 256, 512]
                .iter()
                .map(|&n| first_eigenpair(p, make_grid(0.0, 1.0, n).unwrap(), &cfg).unwrap().lambda1)
                .collect();
            for k in 0..2 {
                let d0 = (l[k] - l[k + 1]).abs();
                let d1 = (l[k + 1] - l[k + 2]).abs();
                assert!(d1 * 2.0 <= d0, "p={p}: {d0} -> {d1}");
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn rayleigh_quotient_is_bounded_below_by_lambda1(
            vals in proptest::collection::vec(-1.0f64..1.0, 31),
            pick in 0usize..3,
        ) {
            let p = [1.5, 2.0, 3.0][pick];
            let g = make_grid(0.0, 1.0, 32).unwrap();
            let eig = first_eigenpair(p, g, &SolverConfig::default()).unwrap();
            let u = GridFunction::from_interior(g, &vals).unwrap();
            proptest::prop_assume!(vals.iter().any(|v| v.abs() > 1e-3));
            let rq = rayleigh_quotient(&u, p).unwrap();
            proptest::prop_assert!(rq >= eig.lambda1 * (1.0 - 1e-9));
            let mut pert = eig.eigenfunction.clone();
            for (a, b) in pert.interior_mut().iter_mut().zip(&vals) {
                *a += 1e-2 * b;
            }
            proptest::prop_assert!(rayleigh_quotient(&pert, p).unwrap() >= eig.lambda1 * (1.0 - 1e-9));
        }
    }
}
