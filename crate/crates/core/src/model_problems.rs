//! The auxiliary problems
//!
//! * concave: `-Δ_p w = Λ w^{q-1}`,
//! * linear-concave: `-Δ_p u = λ u^{p-1} + coeff · u^{q-1}`,
//!
//! solved by direct minimization of their coercive energies, together with
//! the constant `c(q, λ) = ‖u_{q,λ}‖_∞ (λ₁ - λ)^{1/(p-q)}` and the sup-norm
//! bounds `(λ₁-λ)^{-1/(p-q)} ≤ ‖u_{q,λ}‖_∞ ≤ (‖u_{q,0}‖_∞^{q-p} - λ)^{-1/(p-q)}`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::eigen::EigenResult;
use crate::error::{Error, Result};
use crate::grid::{self, Grid, GridFunction};
use crate::solver::{self, PowerSource, SolveReport, SolveStatus, SolverConfig};

/// Smallest admissible `p - q`.
pub const MIN_EXPONENT_GAP: f64 = 1e-6;

/// Linear-concave solves are refused for `λ > LAMBDA_CAP · λ₁`.
pub const LAMBDA_CAP: f64 = 1.0 - 1e-3;

/// Relative slack of the sup-norm sandwich check.
pub const SANDWICH_SLACK: f64 = 5e-2;

/// Exponents `1 < q < p < r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    p: f64,
    q: f64,
    r: f64,
}

impl Params {
    pub fn new(p: f64, q: f64, r: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite() && r.is_finite()) {
            return Err(Error::NonFinite(format!("exponents p = {p}, q = {q}, r = {r}")));
        }
        if !(1.0 < q && q < p && p < r) {
            return Err(Error::InvalidParams(format!("need 1 < q < p < r, got q = {q}, p = {p}, r = {r}")));
        }
        if p - q < MIN_EXPONENT_GAP {
            return Err(Error::InvalidParams(format!("p - q = {:e} is below {MIN_EXPONENT_GAP:e}", p - q)));
        }
        Ok(Self { p, q, r })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

#[derive(Clone, Debug)]
pub struct ConcaveSolution {
    pub u: GridFunction,
    /// The coefficient `Λ`.
    pub coeff: f64,
    pub sup_norm: f64,
    pub report: SolveReport,
}

#[derive(Clone, Debug)]
pub struct LinearConcaveSolution {
    pub u: GridFunction,
    pub lambda: f64,
    /// Coefficient of the concave term.
    pub coeff: f64,
    pub sup_norm: f64,
    /// `sup_norm · ((λ₁ - λ) / coeff)^{1/(p-q)}`, which is `c(q, λ)` for `coeff = 1`.
    pub c_value: f64,
    pub report: SolveReport,
}

fn check_coefficient(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite(format!("{name} = {v}")));
    }
    if v < 0.0 {
        return Err(Error::InvalidParams(format!("{name} = {v} must be nonnegative")));
    }
    Ok(())
}

fn converged_positive(u: &GridFunction, report: &SolveReport, what: &str) -> Result<()> {
    match report.status {
        SolveStatus::Converged => {}
        SolveStatus::Diverged => return Err(Error::NonFinite(format!("{what}: iterate became non-finite"))),
        SolveStatus::MaxIters => {
            return Err(Error::MaxIters(format!(
                "{what}: residual {:e} after {} iterations",
                report.final_residual, report.iterations
            )))
        }
    }
    u.ensure_positive()
}

/// Positive solution of `-Δ_p w = Λ (w⁺)^{q-1}`, the minimizer of
/// `(1/p)∫|w'|^p - (Λ/q)∫(w⁺)^q`. `Λ = 0` gives `w = 0`.
pub fn solve_concave(coeff: f64, params: &Params, grid: Grid, cfg: &SolverConfig) -> Result<ConcaveSolution> {
    check_coefficient("Lambda", coeff)?;
    let (p, q) = (params.p, params.q);
    solver::check_exponent(p)?;
    cfg.validate()?;
    let src = PowerSource::new(vec![(coeff, q)]);
    if coeff == 0.0 {
        let (u, report) = solver::minimize_power_source(&GridFunction::zeros(grid), p, &src, cfg)?;
        return Ok(ConcaveSolution { u, coeff, sup_norm: 0.0, report });
    }
    // torsion function rescaled to the best multiple for the energy
    let ones = GridFunction::from_fn(grid, |_| 1.0);
    let (tau, _) = solver::solve_p_poisson(&ones, p, cfg)?;
    let num = coeff * grid::trapezoid(&tau, |v| v.max(0.0).powf(q));
    let den = grid::w1p_seminorm(&tau, p)?.powf(p);
    let init = tau.scaled((num / den).powf(1.0 / (p - q)));
    let (u, report) = solver::minimize_power_source(&init, p, &src, cfg)?;
    converged_positive(&u, &report, "concave solve")?;
    let sup_norm = grid::sup_norm(&u)?;
    Ok(ConcaveSolution { u, coeff, sup_norm, report })
}

/// Positive solution of `-Δ_p u = λ (u⁺)^{p-1} + coeff (u⁺)^{q-1}`, starting
/// from the optimal multiple of the first eigenfunction.
pub fn solve_linear_concave(
    lambda: f64,
    coeff: f64,
    params: &Params,
    grid: Grid,
    eig: &EigenResult,
    cfg: &SolverConfig,
) -> Result<LinearConcaveSolution> {
    if *eig.grid() != grid {
        return Err(Error::GridMismatch);
    }
    check_linear_concave(lambda, coeff, eig)?;
    let (p, q) = (params.p, params.q);
    let phi = &eig.eigenfunction;
    // ∫φ^p = 1
    let num = coeff * grid::trapezoid(phi, |v| v.max(0.0).powf(q));
    let t = (num / (eig.lambda1 - lambda)).powf(1.0 / (p - q));
    solve_linear_concave_from(lambda, coeff, params, &phi.scaled(t), eig, cfg)
}

/// As [`solve_linear_concave`] from a caller-supplied initial guess.
pub fn solve_linear_concave_from(
    lambda: f64,
    coeff: f64,
    params: &Params,
    init: &GridFunction,
    eig: &EigenResult,
    cfg: &SolverConfig,
) -> Result<LinearConcaveSolution> {
    init.ensure_same_grid(&eig.eigenfunction)?;
    check_linear_concave(lambda, coeff, eig)?;
    let (p, q) = (params.p, params.q);
    if (eig.lambda1 - eig_lambda_of(eig, p)?).abs() > 1e-9 * eig.lambda1 {
        return Err(Error::InvalidParams(format!("eigenpair was computed for a different p than {p}")));
    }
    let src = PowerSource::new(vec![(lambda, p), (coeff, q)]);
    let (u, report) = solver::minimize_power_source(init, p, &src, cfg)?;
    converged_positive(&u, &report, "linear-concave solve")?;
    let sup_norm = grid::sup_norm(&u)?;
    let c_value = sup_norm * ((eig.lambda1 - lambda) / coeff).powf(1.0 / (p - q));
    Ok(LinearConcaveSolution { u, lambda, coeff, sup_norm, c_value, report })
}

fn eig_lambda_of(eig: &EigenResult, p: f64) -> Result<f64> {
    crate::eigen::rayleigh_quotient(&eig.eigenfunction, p)
}

fn check_linear_concave(lambda: f64, coeff: f64, eig: &EigenResult) -> Result<()> {
    check_coefficient("lambda", lambda)?;
    check_coefficient("coeff", coeff)?;
    if coeff == 0.0 {
        return Err(Error::InvalidParams("coeff must be positive".into()));
    }
    let cap = LAMBDA_CAP * eig.lambda1;
    if lambda > cap {
        return Err(Error::LambdaTooLarge { lambda, cap, lambda1: eig.lambda1 });
    }
    Ok(())
}

/// One row of the sup-norm sandwich check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    pub p: f64,
    pub q: f64,
    pub lambda: f64,
    pub sup_norm: f64,
    pub c_value: f64,
    /// `(λ₁ - λ)^{-1/(p-q)}`
    pub lower: f64,
    /// `(‖u_{q,0}‖_∞^{q-p} - λ)^{-1/(p-q)}`, `None` when the base is not positive.
    pub upper: Option<f64>,
    pub holds: bool,
}

/// Solves for `u_{q,0}` and `u_{q,λ}` and checks the sup-norm bounds with
/// [`SANDWICH_SLACK`] relative slack. An undefined upper bound is reported as
/// `None` and only the lower bound is checked.
pub fn verify_supnorm_sandwich(
    lambda: f64,
    params: &Params,
    grid: Grid,
    eig: &EigenResult,
    cfg: &SolverConfig,
) -> Result<SandwichReport> {
    let (p, q) = (params.p, params.q);
    let base = solve_linear_concave(0.0, 1.0, params, grid, eig, cfg)?;
    let sol = if lambda == 0.0 { base.clone() } else { solve_linear_concave(lambda, 1.0, params, grid, eig, cfg)? };
    Ok(sandwich_from(p, q, lambda, eig.lambda1, base.sup_norm, &sol))
}

pub(crate) fn sandwich_from(
    p: f64,
    q: f64,
    lambda: f64,
    lambda1: f64,
    base_sup: f64,
    sol: &LinearConcaveSolution,
) -> SandwichReport {
    let lower = (lambda1 - lambda).powf(-1.0 / (p - q));
    let b = base_sup.powf(q - p) - lambda;
    let upper = (b > 0.0).then(|| b.powf(-1.0 / (p - q)));
    let s = sol.sup_norm;
    let holds = lower <= s * (1.0 + SANDWICH_SLACK) && upper.is_none_or(|up| s <= up * (1.0 + SANDWICH_SLACK));
    SandwichReport { p, q, lambda, sup_norm: s, c_value: sol.c_value, lower, upper, holds }
}

/// `c(q, λ) = ‖u_{q,λ}‖_∞ / (λ₁ - λ)^{-1/(p-q)}`.
pub fn c_constant(params: &Params, lambda: f64, grid: Grid, eig: &EigenResult, cfg: &SolverConfig) -> Result<f64> {
    Ok(solve_linear_concave(lambda, 1.0, params, grid, eig, cfg)?.c_value)
}

/// Writes sandwich rows as CSV with header `p,q,lambda,sup_norm,c_value,lower,upper,holds`.
pub fn write_sandwich_csv<W: Write>(rows: &[SandwichReport], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
