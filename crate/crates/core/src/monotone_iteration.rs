//! Monotone iteration for `-Δ_p u = Λ u^{q-1} + u^{r-1}`:
//! `-Δ_p w_k = Λ w_{k-1}^{q-1} + w_{k-1}^{r-1}` from a subsolution `w_0`.

use std::io::Write;

use serde::Serialize;

use crate::eigen::EigenResult;
use crate::error::{Error, Result};
use crate::grid::{self, Grid, GridFunction};
use crate::model_problems::{self, Params};
use crate::solver::{self, SolveStatus, SolverConfig};
use crate::threshold;

/// Relative slack in the supersolution test `λ ≥ ‖u‖_∞^{r-p}`.
pub const SUPERSOLUTION_SLACK: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct IterationState {
    /// The coefficient `Λ`.
    pub coeff: f64,
    pub sub: GridFunction,
    pub sup: Option<GridFunction>,
    /// `‖w_j‖_∞` for `j = 0..=k`.
    pub iterates_supnorm: Vec<f64>,
    /// `w_{k-1}`, absent at `k = 0`.
    pub previous: Option<GridFunction>,
    pub current: GridFunction,
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IterationStatus {
    Converged,
    Diverged,
    Inconclusive,
}

impl IterationStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::Diverged => "diverged",
            Self::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub k: usize,
    pub sup_norm: f64,
    /// Max nodal weak residual of the full equation at `w_k`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct IterationOutcome {
    pub status: IterationStatus,
    pub solution: Option<GridFunction>,
    pub k_final: usize,
    pub residual: f64,
    pub trace: Vec<TraceRow>,
    /// Why the run stopped when it did not converge.
    pub diagnostic: Option<String>,
}

fn check_coeff(coeff: f64) -> Result<()> {
    if !coeff.is_finite() {
        return Err(Error::NonFinite(format!("Lambda = {coeff}")));
    }
    if coeff <= 0.0 {
        return Err(Error::NonPositiveLambda(coeff));
    }
    Ok(())
}

/// The positive solution of `-Δ_p w = Λ w^{q-1}`.
pub fn build_subsolution(coeff: f64, params: &Params, grid: Grid, cfg: &SolverConfig) -> Result<GridFunction> {
    check_coeff(coeff)?;
    Ok(model_problems::solve_concave(coeff, params, grid, cfg)?.u)
}

/// Solves `-Δ_p u = λ u^{p-1} + Λ u^{q-1}` and returns `u` when
/// `λ ≥ ‖u‖_∞^{r-p}`, which makes it a supersolution. `lambda_choice`
/// defaults to `t_q · λ₁`.
pub fn build_supersolution(
    coeff: f64,
    lambda_choice: Option<f64>,
    params: &Params,
    eig: &EigenResult,
    cfg: &SolverConfig,
) -> Result<Option<GridFunction>> {
    check_coeff(coeff)?;
    let lambda = lambda_choice.unwrap_or_else(|| threshold::t_q(params) * eig.lambda1);
    if !(lambda > 0.0 && lambda < eig.lambda1) {
        return Err(Error::InvalidParams(format!("lambda choice {lambda} must lie in (0, lambda1 = {})", eig.lambda1)));
    }
    let sol = model_problems::solve_linear_concave(lambda, coeff, params, *eig.grid(), eig, cfg)?;
    let need = sol.sup_norm.powf(params.r() - params.p());
    Ok((lambda >= need * (1.0 - SUPERSOLUTION_SLACK)).then_some(sol.u))
}

/// `Λ (u⁺)^{q-1} + (u⁺)^{r-1}`
fn full_rhs(u: &GridFunction, coeff: f64, params: &Params) -> GridFunction {
    let (q, r) = (params.q(), params.r());
    u.map(|v| {
        let v = v.max(0.0);
        coeff * v.powf(q - 1.0) + v.powf(r - 1.0)
    })
}

/// Max nodal weak residual of the full equation at `u` and the tolerance it is held to.
pub fn full_residual(u: &GridFunction, coeff: f64, params: &Params, cfg: &SolverConfig) -> Result<(f64, f64)> {
    let rhs = full_rhs(u, coeff, params);
    let r = solver::weak_residual(u, params.p(), &rhs)?;
    let res = r.interior().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let force = rhs.interior().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    Ok((res, cfg.tol_residual * force))
}

pub fn iterate(
    coeff: f64,
    params: &Params,
    sub: &GridFunction,
    sup: Option<&GridFunction>,
    cfg: &SolverConfig,
) -> Result<IterationOutcome> {
    iterate_with(coeff, params, sub, sup, cfg, None)
}

/// Runs the monotone iteration from `w_0 = sub`. Stops as converged once
/// `‖w_k - w_{k-1}‖_∞ ≤ tol_step · ‖w_k‖_∞` and the full-equation residual is
/// below `tol_residual · max|rhs|`, as diverged once `‖w_k‖_∞ > blowup_cap`,
/// and as inconclusive after `max_outer_iters` steps or on an inner failure.
/// The observer sees the state after every step.
pub fn iterate_with(
    coeff: f64,
    params: &Params,
    sub: &GridFunction,
    sup: Option<&GridFunction>,
    cfg: &SolverConfig,
    mut observer: Option<&mut dyn FnMut(&IterationState)>,
) -> Result<IterationOutcome> {
    check_coeff(coeff)?;
    cfg.validate()?;
    let p = params.p();
    solver::check_exponent(p)?;
    sub.ensure_finite("subsolution")?;
    sub.ensure_positive()?;
    if let Some(s) = sup {
        s.ensure_same_grid(sub)?;
        s.ensure_finite("supersolution")?;
    }
    let (res0, _) = full_residual(sub, coeff, params, cfg)?;
    let mut state = IterationState {
        coeff,
        sub: sub.clone(),
        sup: sup.cloned(),
        iterates_supnorm: vec![grid::sup_norm(sub)?],
        previous: None,
        current: sub.clone(),
        k: 0,
    };
    let mut trace = vec![TraceRow { k: 0, sup_norm: state.iterates_supnorm[0], residual: res0 }];
    let stop = |status, k, residual, trace, diagnostic: String| IterationOutcome {
        status,
        solution: None,
        k_final: k,
        residual,
        trace,
        diagnostic: Some(diagnostic),
    };
    let mut last_res = res0;
    for k in 1..=cfg.max_outer_iters {
        let rhs = full_rhs(&state.current, coeff, params);
        let (w, report) = match solver::solve_p_poisson(&rhs, p, cfg) {
            Ok(v) => v,
            Err(e) => return Ok(stop(IterationStatus::Inconclusive, k, last_res, trace, format!("inner solve: {e}"))),
        };
        let sup_w = if w.is_finite() { grid::sup_norm(&w)? } else { f64::INFINITY };
        if report.status == SolveStatus::Diverged || !sup_w.is_finite() || sup_w > cfg.blowup_cap {
            trace.push(TraceRow { k, sup_norm: sup_w, residual: f64::NAN });
            return Ok(stop(
                IterationStatus::Diverged,
                k,
                f64::NAN,
                trace,
                format!("sup norm {sup_w:e} exceeded the blow-up cap {:e}", cfg.blowup_cap),
            ));
        }
        if report.status == SolveStatus::MaxIters {
            return Ok(stop(
                IterationStatus::Inconclusive,
                k,
                last_res,
                trace,
                format!("inner solve stopped at residual {:e}", report.final_residual),
            ));
        }
        let step = grid::sup_distance(&w, &state.current)?;
        let (res, res_tol) = full_residual(&w, coeff, params, cfg)?;
        last_res = res;
        trace.push(TraceRow { k, sup_norm: sup_w, residual: res });
        state.iterates_supnorm.push(sup_w);
        state.previous = Some(std::mem::replace(&mut state.current, w));
        state.k = k;
        if let Some(obs) = observer.as_deref_mut() {
            obs(&state);
        }
        if step <= cfg.tol_step * sup_w && res <= res_tol {
            let solution = state.current;
            solution.ensure_positive()?;
            return Ok(IterationOutcome {
                status: IterationStatus::Converged,
                solution: Some(solution),
                k_final: k,
                residual: res,
                trace,
                diagnostic: None,
            });
        }
    }
    Ok(stop(
        IterationStatus::Inconclusive,
        cfg.max_outer_iters,
        last_res,
        trace,
        format!("no decision after {} outer iterations", cfg.max_outer_iters),
    ))
}

/// Writes the trace as CSV with header `k,sup_norm,residual`.
pub fn write_trace_csv<W: Write>(trace: &[TraceRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in trace {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
