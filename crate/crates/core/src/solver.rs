//! Discrete p-Dirichlet energy, nodal weak residuals and the damped Newton
//! minimizer behind every solve in the crate.
//!
//! For a grid function `u` with cell slopes `s_j` and a nodal source `G_i`,
//! the energy is
//!
//! ```text
//! E(u) = (1/p) Σ_j h |s_j|^p  -  Σ_i h G_i(u_i)
//! ```
//!
//! and its gradient with respect to the interior value `u_i` is the weak
//! residual against the hat function of node `i`:
//!
//! ```text
//! R_i = φ(s_{i-1}) - φ(s_i) - h g_i(u_i),    φ(s) = |s|^{p-2} s,  g = G'.
//! ```
//!
//! Newton steps use the tridiagonal Hessian with the cell weights
//! `(p-1) |s|^{p-2}` replaced by `(p-1) (s² + ε²)^{(p-2)/2}`; the gradient is
//! never regularized, so converged iterates solve the exact discrete problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, Grid, GridFunction};

/// Admissible range of the operator exponent for the Newton solver.
pub const P_MIN: f64 = 1.1;
pub const P_MAX: f64 = 10.0;

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACK: usize = 60;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Weak-residual threshold; scaled by `1 + sup|rhs|` for frozen right-hand sides.
    pub tol_residual: f64,
    /// Sup-norm threshold on successive iterates.
    pub tol_step: f64,
    /// Newton iterations per solve.
    pub max_inner_iters: usize,
    /// Curvature regularization, relative to the largest slope.
    pub epsilon_reg: f64,
    /// Sup norm above which an iteration is declared divergent.
    pub blowup_cap: f64,
    /// Budget of outer iterations (monotone and inverse-power loops).
    pub max_outer_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol_residual: 1e-10,
            tol_step: 1e-10,
            max_inner_iters: 200,
            epsilon_reg: 1e-8,
            blowup_cap: 1e6,
            max_outer_iters: 2000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be > 0, got {v}")))
            }
        };
        positive("tol_residual", self.tol_residual)?;
        positive("tol_step", self.tol_step)?;
        positive("epsilon_reg", self.epsilon_reg)?;
        if self.max_inner_iters < 1 {
            return Err(Error::InvalidConfig("max_inner_iters must be >= 1".into()));
        }
        if self.max_outer_iters < 1 {
            return Err(Error::InvalidConfig("max_outer_iters must be >= 1".into()));
        }
        if !(self.blowup_cap > 1.0) {
            return Err(Error::InvalidConfig(format!("blowup_cap must be > 1, got {}", self.blowup_cap)));
        }
        Ok(())
    }

    /// Residual threshold for a frozen right-hand side `rhs`.
    pub fn residual_tolerance(&self, rhs_sup: f64) -> f64 {
        self.tol_residual * (1.0 + rhs_sup)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIters,
    Diverged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub iterations: usize,
    pub final_residual: f64,
    pub final_energy: f64,
    pub sup_norm: f64,
    pub status: SolveStatus,
}

impl SolveReport {
    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }
}

/// Fails with `invalid-exponent` unless `p` lies in `[P_MIN, P_MAX]`.
pub fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && (P_MIN..=P_MAX).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!("need p in [{P_MIN}, {P_MAX}], got {p}")))
    }
}

/// `|s|^{p-2} s`.
#[inline]
pub(crate) fn flux(s: f64, p: f64) -> f64 {
    if p == 2.0 {
        s
    } else {
        s.abs().powf(p - 1.0).copysign(s)
    }
}

#[inline]
fn abs_pow(s: f64, p: f64) -> f64 {
    if p == 2.0 {
        s * s
    } else {
        s.abs().powf(p)
    }
}

/// Zero-order term of the energy, node by node. `i` is the node index.
pub(crate) trait Source {
    /// `G_i(u)`
    fn potential(&self, i: usize, u: f64) -> f64;
    /// `g_i(u) = G_i'(u)`
    fn force(&self, i: usize, u: f64) -> f64;
    /// `g_i'(u)`
    fn force_derivative(&self, i: usize, u: f64) -> f64;
}

/// A right-hand side that does not depend on `u`.
pub(crate) struct FrozenRhs<'a>(pub &'a [f64]);

impl Source for FrozenRhs<'_> {
    fn potential(&self, i: usize, u: f64) -> f64 {
        self.0[i] * u
    }

    fn force(&self, i: usize, _u: f64) -> f64 {
        self.0[i]
    }

    fn force_derivative(&self, _i: usize, _u: f64) -> f64 {
        0.0
    }
}

/// `G(u) = Σ_k (c_k / e_k) (u⁺)^{e_k}`, i.e. `g(u) = Σ_k c_k (u⁺)^{e_k - 1}`.
#[derive(Clone, Debug)]
pub(crate) struct PowerSource {
    terms: Vec<(f64, f64)>,
}

impl PowerSource {
    /// Terms are `(coefficient, exponent)` pairs with exponent > 1.
    pub(crate) fn new(terms: Vec<(f64, f64)>) -> Self {
        Self { terms: terms.into_iter().filter(|(c, _)| *c != 0.0).collect() }
    }

    pub(crate) fn eval_force(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        self.terms.iter().map(|&(c, e)| c * u.powf(e - 1.0)).sum()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Source for PowerSource {
    fn potential(&self, _i: usize, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        self.terms.iter().map(|&(c, e)| c / e * u.powf(e)).sum()
    }

    fn force(&self, _i: usize, u: f64) -> f64 {
        self.eval_force(u)
    }

    fn force_derivative(&self, _i: usize, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        self.terms.iter().map(|&(c, e)| c * (e - 1.0) * u.powf(e - 2.0)).sum()
    }
}

/// Energy value and the sum of absolute values of its terms (the rounding scale).
fn energy_parts<S: Source>(u: &[f64], h: f64, p: f64, src: &S) -> (f64, f64) {
    let mut dirichlet = 0.0;
    for w in u.windows(2) {
        dirichlet += abs_pow((w[1] - w[0]) / h, p);
    }
    dirichlet *= h / p;
    let n = u.len() - 1;
    let mut zero = 0.0;
    let mut zero_abs = 0.0;
    for (i, &ui) in u.iter().enumerate().take(n).skip(1) {
        let g = h * src.potential(i, ui);
        zero += g;
        zero_abs += g.abs();
    }
    (dirichlet - zero, dirichlet + zero_abs)
}

/// Writes the interior residual into `out` and returns `(max |R_i|, max |g_i|)`.
fn residual_into<S: Source>(u: &[f64], h: f64, p: f64, src: &S, out: &mut [f64]) -> (f64, f64) {
    let n = u.len() - 1;
    let mut left = flux((u[1] - u[0]) / h, p);
    let mut res_max = 0.0_f64;
    let mut force_max = 0.0_f64;
    for i in 1..n {
        let right = flux((u[i + 1] - u[i]) / h, p);
        let g = src.force(i, u[i]);
        let r = left - right - h * g;
        out[i - 1] = r;
        res_max = res_max.max(r.abs());
        force_max = force_max.max(g.abs());
        left = right;
    }
    (res_max, force_max)
}

/// Solves a symmetric tridiagonal system by LDLᵀ elimination. Returns `None`
/// when a pivot is not strictly positive, i.e. the matrix is not positive definite.
pub(crate) fn solve_spd_tridiagonal(diag: &[f64], off: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = diag.len();
    debug_assert!(off.len() + 1 == m && rhs.len() == m);
    let mut cp = vec![0.0; m];
    let mut dp = vec![0.0; m];
    let mut piv = diag[0];
    if !(piv > 0.0 && piv.is_finite()) {
        return None;
    }
    if m > 1 {
        cp[0] = off[0] / piv;
    }
    dp[0] = rhs[0] / piv;
    for k in 1..m {
        piv = diag[k] - off[k - 1] * cp[k - 1];
        if !(piv > 0.0 && piv.is_finite()) {
            return None;
        }
        if k + 1 < m {
            cp[k] = off[k] / piv;
        }
        dp[k] = (rhs[k] - off[k - 1] * dp[k - 1]) / piv;
    }
    let mut x = dp;
    for k in (0..m - 1).rev() {
        let next = x[k + 1];
        x[k] -= cp[k] * next;
    }
    Some(x)
}

pub(crate) enum Tolerance {
    /// Absolute threshold on `max |R_i|`.
    Fixed(f64),
    /// `t · max |g_i(u_i)|`, invariant under rescaling of the problem.
    ForceRelative(f64),
}

type Fallback<'a> = &'a dyn Fn(&[f64]) -> Result<Vec<f64>>;

/// Damped Newton minimization of the energy with source `src`, starting from
/// the full nodal vector `init`. When a Newton direction is unavailable
/// (indefinite Hessian, no descent, failed line search) the optional
/// `fallback` maps `u` to a new point whose difference from `u` is used as the
/// search direction instead.
pub(crate) fn minimize<'o, S: Source>(
    grid: &Grid,
    p: f64,
    src: &S,
    cfg: &SolverConfig,
    init: Vec<f64>,
    tol: Tolerance,
    fallback: Option<Fallback<'_>>,
    mut observer: Option<&mut (dyn FnMut(usize, f64) + 'o)>,
) -> (Vec<f64>, SolveReport) {
    let h = grid.h();
    let m = grid.n_interior();
    let mut u = init;
    let mut r = vec![0.0; m];
    let (mut e, mut e_scale) = energy_parts(&u, h, p, src);
    let mut status = SolveStatus::MaxIters;
    let mut it = 0;
    let mut res;
    loop {
        let (res_now, force_sup) = residual_into(&u, h, p, src, &mut r);
        res = res_now;
        if let Some(obs) = observer.as_mut() {
            obs(it, e);
        }
        if !res.is_finite() || !e.is_finite() {
            status = SolveStatus::Diverged;
            break;
        }
        let tol_now = match tol {
            Tolerance::Fixed(t) => t,
            Tolerance::ForceRelative(t) => t * force_sup,
        };
        if res <= tol_now {
            status = SolveStatus::Converged;
            break;
        }
        if it >= cfg.max_inner_iters {
            break;
        }

        let mut accepted = None;
        if let Some(d) = newton_direction(&u, h, p, src, cfg, &r) {
            accepted = line_search(&u, &d, &r, e, e_scale, res, h, p, src);
        }
        if accepted.is_none() {
            if let Some(fb) = fallback {
                if let Ok(target) = fb(&u) {
                    let d: Vec<f64> = (0..m).map(|k| target[k + 1] - u[k + 1]).collect();
                    accepted = line_search(&u, &d, &r, e, e_scale, res, h, p, src);
                }
            }
        }
        match accepted {
            Some((next, e_next, scale_next)) => {
                u = next;
                e = e_next;
                e_scale = scale_next;
                it += 1;
            }
            None => break,
        }
    }
    let sup = u.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let report = SolveReport { iterations: it, final_residual: res, final_energy: e, sup_norm: sup, status };
    (u, report)
}

fn newton_direction<S: Source>(
    u: &[f64],
    h: f64,
    p: f64,
    src: &S,
    cfg: &SolverConfig,
    r: &[f64],
) -> Option<Vec<f64>> {
    let n = u.len() - 1;
    let m = n - 1;
    let weights: Vec<f64> = if p == 2.0 {
        vec![1.0 / h; n]
    } else {
        let slopes: Vec<f64> = u.windows(2).map(|w| (w[1] - w[0]) / h).collect();
        let smax = slopes.iter().fold(0.0_f64, |a, s| a.max(s.abs()));
        let eps = cfg.epsilon_reg * if smax > 0.0 { smax } else { 1.0 };
        let eps2 = eps * eps;
        slopes.iter().map(|s| (p - 1.0) * (s * s + eps2).powf(0.5 * (p - 2.0)) / h).collect()
    };
    let mut diag = Vec::with_capacity(m);
    for i in 1..n {
        diag.push(weights[i - 1] + weights[i] - h * src.force_derivative(i, u[i]));
    }
    let off: Vec<f64> = (1..m).map(|i| -weights[i]).collect();
    let neg_r: Vec<f64> = r.iter().map(|v| -v).collect();
    let d = solve_spd_tridiagonal(&diag, &off, &neg_r)?;
    d.iter().all(|v| v.is_finite()).then_some(d)
}

/// Backtracking line search on the true energy. Returns the accepted point,
/// its energy and rounding scale.
#[allow(clippy::too_many_arguments)]
fn line_search<S: Source>(
    u: &[f64],
    d: &[f64],
    r: &[f64],
    e: f64,
    e_scale: f64,
    res: f64,
    h: f64,
    p: f64,
    src: &S,
) -> Option<(Vec<f64>, f64, f64)> {
    let slope: f64 = r.iter().zip(d).map(|(a, b)| a * b).sum();
    if !(slope < 0.0) {
        return None;
    }
    let mut trial = u.to_vec();
    let mut alpha = 1.0;
    for k in 0..MAX_BACKTRACK {
        for (j, dj) in d.iter().enumerate() {
            trial[j + 1] = u[j + 1] + alpha * dj;
        }
        let (et, scale_t) = energy_parts(&trial, h, p, src);
        if et.is_finite() {
            if et <= e + ARMIJO * alpha * slope {
                return Some((trial, et, scale_t));
            }
            // Near the minimizer energy differences drown in rounding; fall back
            // to residual decrease for the full step.
            if k == 0 && (et - e).abs() <= 1e3 * f64::EPSILON * e_scale.max(scale_t) {
                let mut rt = vec![0.0; r.len()];
                let (res_t, _) = residual_into(&trial, h, p, src, &mut rt);
                if res_t < res {
                    return Some((trial, et, scale_t));
                }
            }
        }
        alpha *= 0.5;
    }
    None
}

/// Linear Poisson solve `-u'' = rhs` with P1 elements and lumped mass.
pub fn solve_linear_poisson(rhs: &GridFunction) -> Result<GridFunction> {
    rhs.ensure_finite("rhs")?;
    let grid = *rhs.grid();
    let h = grid.h();
    let m = grid.n_interior();
    let diag = vec![2.0 / h; m];
    let off = vec![-1.0 / h; m - 1];
    let b: Vec<f64> = rhs.interior().iter().map(|f| h * f).collect();
    let x = solve_spd_tridiagonal(&diag, &off, &b).expect("the P1 Laplacian is positive definite");
    GridFunction::from_interior(grid, &x)
}

/// Discrete energy `(1/p) Σ h|s|^p − ∫ rhs·u` (trapezoid rule for the pairing).
pub fn energy(u: &GridFunction, p: f64, rhs: &GridFunction) -> Result<f64> {
    u.ensure_same_grid(rhs)?;
    grid::check_norm_exponent(p)?;
    let h = u.grid().h();
    let dirichlet: f64 = u.slopes().iter().map(|s| h * abs_pow(*s, p)).sum::<f64>() / p;
    let n = u.grid().n_cells();
    let (uv, fv) = (u.values(), rhs.values());
    let inner: f64 = (1..n).map(|i| uv[i] * fv[i]).sum();
    let pairing = h * (inner + 0.5 * (uv[0] * fv[0] + uv[n] * fv[n]));
    Ok(dirichlet - pairing)
}

/// Nodal weak residual of `-Δ_p u = rhs` tested against interior hat functions.
/// Boundary entries are zero.
pub fn weak_residual(u: &GridFunction, p: f64, rhs: &GridFunction) -> Result<GridFunction> {
    u.ensure_same_grid(rhs)?;
    grid::check_norm_exponent(p)?;
    let mut out = vec![0.0; u.grid().n_interior()];
    residual_into(u.values(), u.grid().h(), p, &FrozenRhs(rhs.values()), &mut out);
    GridFunction::from_interior(*u.grid(), &out)
}

/// Optional knobs for [`solve_p_poisson_with`].
#[derive(Default)]
pub struct SolveOptions<'a> {
    /// Starting point for Newton; defaults to the exact flux-integration solution.
    pub initial: Option<&'a GridFunction>,
    /// Called with `(iteration, energy)` before every Newton step.
    pub observer: Option<&'a mut dyn FnMut(usize, f64)>,
}

/// Minimizes the strictly convex energy `(1/p)∫|u'|^p − ∫ rhs·u` over grid
/// functions vanishing at the endpoints. Hitting the iteration budget is not
/// an error: the best iterate is returned with `status = max_iters`.
///
/// For p close to 1 the residual floor set by f64 rounding can exceed the
/// tolerance (the slope on the cell where `u'` changes sign underflows
/// relative to `u`); such solves end with `max_iters` and a residual at
/// that floor.
pub fn solve_p_poisson(rhs: &GridFunction, p: f64, cfg: &SolverConfig) -> Result<(GridFunction, SolveReport)> {
    solve_p_poisson_with(rhs, p, cfg, SolveOptions::default())
}

pub fn solve_p_poisson_with(
    rhs: &GridFunction,
    p: f64,
    cfg: &SolverConfig,
    opts: SolveOptions<'_>,
) -> Result<(GridFunction, SolveReport)> {
    check_exponent(p)?;
    cfg.validate()?;
    rhs.ensure_finite("rhs")?;
    let grid = *rhs.grid();
    let h = grid.h();
    let tol = cfg.residual_tolerance(grid::sup_norm(rhs)?);
    let src = FrozenRhs(rhs.values());
    let mut observer = opts.observer;
    let (u, report) = match opts.initial {
        Some(u0) => {
            u0.ensure_same_grid(rhs)?;
            u0.ensure_finite("initial guess")?;
            let (u, report) =
                minimize(&grid, p, &src, cfg, u0.values().to_vec(), Tolerance::Fixed(tol), None, observer.as_deref_mut());
            if report.converged() {
                (u, report)
            } else {
                // restart from the exact reduction
                let init = flux_integration(rhs.values(), h, p);
                let (v, mut rep) = minimize(&grid, p, &src, cfg, init, Tolerance::Fixed(tol), None, observer);
                rep.iterations += report.iterations;
                if rep.final_residual <= report.final_residual || !report.final_residual.is_finite() {
                    (v, rep)
                } else {
                    (u, SolveReport { iterations: rep.iterations, ..report })
                }
            }
        }
        None => {
            let init = flux_integration(rhs.values(), h, p);
            minimize(&grid, p, &src, cfg, init, Tolerance::Fixed(tol), None, observer)
        }
    };
    Ok((GridFunction::from_values(grid, u)?, report))
}

/// Inverse flux `φ⁻¹(σ) = |σ|^{1/(p-1)} sgn σ`.
#[inline]
fn inverse_flux(sigma: f64, p: f64) -> f64 {
    if p == 2.0 {
        sigma
    } else {
        sigma.abs().powf(1.0 / (p - 1.0)).copysign(sigma)
    }
}

/// Exact discrete solve for a frozen right-hand side.
///
/// Nodal balance gives the cell fluxes `σ_j = σ_0 − h Σ_{i≤j} f_i`; the left
/// flux `σ_0` is the root of the increasing function
/// `Ψ(σ_0) = Σ_j φ⁻¹(σ_j)` (the condition `u(b) = 0`), found by safeguarded
/// Newton inside the bracket `[min c_j, max c_j]`. Nodal values are summed
/// inward from both ends so that the rounding mismatch lands on the cell where
/// the flux is least sensitive to the slope.
pub(crate) fn flux_integration(rhs: &[f64], h: f64, p: f64) -> Vec<f64> {
    let n = rhs.len() - 1;
    let mut c = Vec::with_capacity(n);
    let mut acc = 0.0;
    c.push(0.0);
    for &f in &rhs[1..n] {
        acc += h * f;
        c.push(acc);
    }
    let sigma0 = if p == 2.0 {
        c.iter().sum::<f64>() / n as f64
    } else {
        let psi = |s0: f64| -> (f64, f64) {
            let mut val = 0.0;
            let mut der = 0.0;
            for &cj in &c {
                let sigma = s0 - cj;
                let a = sigma.abs();
                let t = a.powf(1.0 / (p - 1.0));
                val += t.copysign(sigma);
                if a > 0.0 {
                    der += t / ((p - 1.0) * a);
                } else if p > 2.0 {
                    der = f64::INFINITY;
                }
            }
            (val, der)
        };
        let mut lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo == hi {
            lo
        } else {
            let mut x = 0.5 * (lo + hi);
            for _ in 0..200 {
                let (val, der) = psi(x);
                if val == 0.0 {
                    break;
                }
                if val > 0.0 {
                    hi = x;
                } else {
                    lo = x;
                }
                let newton = x - val / der;
                let next = if der.is_finite() && der > 0.0 && newton > lo && newton < hi {
                    newton
                } else {
                    0.5 * (lo + hi)
                };
                if next == x || hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                    x = next;
                    break;
                }
                x = next;
            }
            x
        }
    };
    let slopes: Vec<f64> = c.iter().map(|cj| inverse_flux(sigma0 - cj, p)).collect();
    // cell whose flux is least sensitive to its slope absorbs the mismatch
    let split = (0..n)
        .min_by(|&a, &b| {
            let key = |j: usize| {
                let s = slopes[j].abs();
                if p < 2.0 {
                    -s
                } else {
                    s
                }
            };
            key(a).total_cmp(&key(b))
        })
        .unwrap_or(0);
    let mut u = vec![0.0; n + 1];
    for i in 1..=split {
        u[i] = u[i - 1] + h * slopes[i - 1];
    }
    for i in (split + 1..n).rev() {
        u[i] = u[i + 1] - h * slopes[i];
    }
    u
}

/// Minimizes `(1/p)∫|u'|^p − ∫G(u)` for a power-law source, starting from
/// `init`. Newton steps fall back to a frozen-right-hand-side solve
/// `-Δ_p w = g(u)` whenever the Hessian is indefinite; since `G` is convex
/// that step never increases the energy.
pub(crate) fn minimize_power_source(
    init: &GridFunction,
    p: f64,
    src: &PowerSource,
    cfg: &SolverConfig,
) -> Result<(GridFunction, SolveReport)> {
    check_exponent(p)?;
    cfg.validate()?;
    init.ensure_finite("initial guess")?;
    let grid = *init.grid();
    if src.is_zero() {
        let zero = GridFunction::zeros(grid);
        let report = SolveReport {
            iterations: 0,
            final_residual: 0.0,
            final_energy: 0.0,
            sup_norm: 0.0,
            status: SolveStatus::Converged,
        };
        return Ok((zero, report));
    }
    let frozen = |u: &[f64]| -> Result<Vec<f64>> {
        let current = GridFunction::from_values(grid, u.to_vec())?;
        let rhs = current.map(|v| src.eval_force(v));
        let (w, rep) =
            solve_p_poisson_with(&rhs, p, cfg, SolveOptions { initial: Some(&current), observer: None })?;
        if rep.status == SolveStatus::Diverged {
            return Err(Error::NonFinite("frozen solve diverged".into()));
        }
        Ok(w.values().to_vec())
    };
    let (u, report) = minimize(
        &grid,
        p,
        src,
        cfg,
        init.values().to_vec(),
        Tolerance::ForceRelative(cfg.tol_residual),
        Some(&frozen),
        None,
    );
    Ok((GridFunction::from_values(grid, u)?, report))
}
