//! Bounds on the existence threshold `Λ_{q,r}` of the concave-convex problem:
//! the closed forms `Λ̂` and `Λ̃`, the function `Φ_Λ(t) = Λ t^{q-p} + t^{r-p}`,
//! bisection for an empirical threshold and the sweep `q ↑ p`.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{self, EigenResult};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::model_problems::{self, Params};
use crate::monotone_iteration::{self, IterationStatus};
use crate::solver::SolverConfig;

/// Smallest admissible `r - p` for the closed forms.
pub const MIN_CONVEX_GAP: f64 = 1e-6;

/// `c(q, t_q λ₁)` below `1 - C_TOL` is rejected.
pub const C_TOL: f64 = 1e-3;

/// Bisection stops once `(hi - lo) / mid` is at most this.
pub const BISECT_REL_WIDTH: f64 = 1e-3;

pub const MAX_BISECT_STEPS: usize = 40;

/// The empirical threshold is reported only for brackets at most this wide (relative).
pub const EMP_MAX_REL_WIDTH: f64 = 1e-2;

/// Relative margin of [`nonexistence_certificate`].
pub const CERTIFICATE_MARGIN: f64 = 1e-12;

/// `t_q = (p - q) / (r - q)`, the maximizer of `t^{(p-q)/(r-p)} (1 - t)` on (0, 1).
pub fn t_q(params: &Params) -> f64 {
    (params.p() - params.q()) / (params.r() - params.q())
}

fn check_convex_gap(params: &Params) -> Result<()> {
    let gap = params.r() - params.p();
    if gap < MIN_CONVEX_GAP {
        return Err(Error::ExponentDegeneracy(format!("r - p = {gap:e} is below {MIN_CONVEX_GAP:e}")));
    }
    Ok(())
}

fn check_lambda1(lambda1: f64) -> Result<()> {
    if !(lambda1.is_finite() && lambda1 > 0.0) {
        return Err(Error::InvalidParams(format!("lambda1 = {lambda1} must be positive")));
    }
    Ok(())
}

/// `Λ̂ = λ₁^{(r-q)/(r-p)} (r-p) ((p-q)^{p-q} / (r-q)^{r-q})^{1/(r-p)}`.
pub fn lambda_hat(params: &Params, lambda1: f64) -> Result<f64> {
    check_convex_gap(params)?;
    check_lambda1(lambda1)?;
    let (p, q, r) = (params.p(), params.q(), params.r());
    // logarithms keep (r-q)^{r-q} from overflowing for large exponents
    let log = (r - q) / (r - p) * lambda1.ln()
        + (r - p).ln()
        + ((p - q) * (p - q).ln() - (r - q) * (r - q).ln()) / (r - p);
    Ok(log.exp())
}

/// `Λ̃ = Λ̂ · c^{q-p}` with `c = c(q, t_q λ₁)`.
pub fn lambda_tilde(params: &Params, lambda1: f64, c_at_tq: f64) -> Result<f64> {
    if !c_at_tq.is_finite() || c_at_tq < 1.0 - C_TOL {
        return Err(Error::InvalidC(c_at_tq));
    }
    Ok(lambda_hat(params, lambda1)? * c_at_tq.powf(params.q() - params.p()))
}

/// `c(q, t_q λ₁)` on the discrete level.
pub fn c_at_tq(params: &Params, eig: &EigenResult, cfg: &SolverConfig) -> Result<f64> {
    model_problems::c_constant(params, t_q(params) * eig.lambda1, *eig.grid(), eig, cfg)
}

/// [`lambda_tilde`] with the discrete `λ₁` and `c(q, t_q λ₁)`.
pub fn lambda_tilde_discrete(params: &Params, eig: &EigenResult, cfg: &SolverConfig) -> Result<f64> {
    lambda_tilde(params, eig.lambda1, c_at_tq(params, eig, cfg)?)
}

fn check_phi_args(t: f64, coeff: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveT(t));
    }
    if !(coeff > 0.0) {
        return Err(Error::NonPositiveLambda(coeff));
    }
    Ok(())
}

/// `Φ_Λ(t) = Λ t^{q-p} + t^{r-p}`.
pub fn phi(t: f64, coeff: f64, params: &Params) -> Result<f64> {
    check_phi_args(t, coeff)?;
    let (p, q, r) = (params.p(), params.q(), params.r());
    Ok(coeff * t.powf(q - p) + t.powf(r - p))
}

/// `(t_Λ, Φ_Λ(t_Λ))` with `t_Λ = (Λ(p-q)/(r-p))^{1/(r-q)}`.
pub fn phi_argmin(coeff: f64, params: &Params) -> Result<(f64, f64)> {
    check_phi_args(1.0, coeff)?;
    check_convex_gap(params)?;
    let (p, q, r) = (params.p(), params.q(), params.r());
    let t = (coeff * (p - q) / (r - p)).powf(1.0 / (r - q));
    let min = coeff.powf((r - p) / (r - q)) * (r - q)
        / ((p - q).powf((p - q) / (r - q)) * (r - p).powf((r - p) / (r - q)));
    Ok((t, min))
}

/// True iff `min_t Φ_Λ(t) > λ₁`, i.e. `Λ > Λ̂`, with relative margin [`CERTIFICATE_MARGIN`].
pub fn nonexistence_certificate(coeff: f64, params: &Params, lambda1: f64) -> Result<bool> {
    check_lambda1(lambda1)?;
    let (_, min) = phi_argmin(coeff, params)?;
    Ok(min > lambda1 * (1.0 + CERTIFICATE_MARGIN))
}

/// One classification made during the bisection.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    #[serde(rename = "Lambda")]
    pub coeff: f64,
    pub status: IterationStatus,
    pub k_final: usize,
    /// Whether the doubled budget was needed.
    pub retried: bool,
    pub with_supersolution: bool,
}

/// Serializes as one sweep CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdBracket {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub lambda1: f64,
    pub lambda_tilde: f64,
    pub lambda_emp: Option<f64>,
    pub lambda_hat: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub n_inconclusive: usize,
    #[serde(skip)]
    pub c_at_tq: f64,
    #[serde(skip)]
    pub probes: Vec<Probe>,
}

impl ThresholdBracket {
    pub fn relative_width(&self) -> f64 {
        (self.bracket_hi - self.bracket_lo) / (0.5 * (self.bracket_hi + self.bracket_lo))
    }
}

/// Classifies `Λ` by the monotone iteration from the subsolution, guarded by
/// the supersolution when one exists. Inconclusive runs are retried once with
/// twice the budget.
pub fn classify(coeff: f64, params: &Params, eig: &EigenResult, cfg: &SolverConfig) -> Result<Probe> {
    let grid = *eig.grid();
    let sub = monotone_iteration::build_subsolution(coeff, params, grid, cfg)?;
    let sup = monotone_iteration::build_supersolution(coeff, None, params, eig, cfg)?;
    let mut out = monotone_iteration::iterate(coeff, params, &sub, sup.as_ref(), cfg)?;
    let mut retried = false;
    if out.status == IterationStatus::Inconclusive {
        let doubled = SolverConfig { max_outer_iters: 2 * cfg.max_outer_iters, ..*cfg };
        out = monotone_iteration::iterate(coeff, params, &sub, sup.as_ref(), &doubled)?;
        retried = true;
    }
    Ok(Probe { coeff, status: out.status, k_final: out.k_final, retried, with_supersolution: sup.is_some() })
}

/// Bisection for the largest `Λ` whose monotone iteration converges, on the
/// bracket `[Λ̃, 1.01 Λ̂]`.
///
/// Inconclusive probes are collected into a zone that stays inside the
/// bracket; later probes bisect the larger of the two gaps between the
/// bracket ends and the zone. Stops at relative width [`BISECT_REL_WIDTH`],
/// when both gaps are below half of it, or after [`MAX_BISECT_STEPS`].
pub fn empirical_threshold(params: &Params, grid: Grid, eig: &EigenResult, cfg: &SolverConfig) -> Result<ThresholdBracket> {
    if *eig.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let lambda1 = eig.lambda1;
    let c = c_at_tq(params, eig, cfg)?;
    let tilde = lambda_tilde(params, lambda1, c)?;
    let hat = lambda_hat(params, lambda1)?;
    let mut probes = Vec::new();

    let (mut lo, mut hi) = (tilde, 1.01 * hat);
    let first = classify(lo, params, eig, cfg)?;
    let first_status = first.status;
    probes.push(first);
    if first_status != IterationStatus::Converged {
        return Err(Error::BracketInverted(format!(
            "Lambda_tilde = {lo} classified as {}, expected converged",
            first_status.as_str()
        )));
    }
    let last = classify(hi, params, eig, cfg)?;
    let last_status = last.status;
    probes.push(last);
    if last_status != IterationStatus::Diverged {
        return Err(Error::BracketInverted(format!(
            "1.01 * Lambda_hat = {hi} classified as {}, expected diverged",
            last_status.as_str()
        )));
    }

    let mut zone: Option<(f64, f64)> = None;
    let mut n_inconclusive = 0;
    for _ in 0..MAX_BISECT_STEPS {
        let centre = 0.5 * (lo + hi);
        if (hi - lo) / centre <= BISECT_REL_WIDTH {
            break;
        }
        let mid = match zone {
            None => centre,
            Some((zlo, zhi)) => {
                let (left, right) = (zlo - lo, hi - zhi);
                if left.max(right) <= 0.5 * BISECT_REL_WIDTH * centre {
                    break;
                }
                if left >= right {
                    0.5 * (lo + zlo)
                } else {
                    0.5 * (zhi + hi)
                }
            }
        };
        let probe = classify(mid, params, eig, cfg)?;
        match probe.status {
            IterationStatus::Converged => lo = mid,
            IterationStatus::Diverged => hi = mid,
            IterationStatus::Inconclusive => {
                n_inconclusive += 1;
                zone = Some(zone.map_or((mid, mid), |(a, b)| (a.min(mid), b.max(mid))));
            }
        }
        probes.push(probe);
        zone = zone.and_then(|(a, b)| {
            let (a, b) = (a.max(lo), b.min(hi));
            (a <= b && a > lo && b < hi).then_some((a, b))
        });
    }
    let mid = 0.5 * (lo + hi);
    let lambda_emp = ((hi - lo) / mid <= EMP_MAX_REL_WIDTH).then_some(mid);
    Ok(ThresholdBracket {
        p: params.p(),
        q: params.q(),
        r: params.r(),
        lambda1,
        lambda_tilde: tilde,
        lambda_emp,
        lambda_hat: hat,
        bracket_lo: lo,
        bracket_hi: hi,
        n_inconclusive,
        c_at_tq: c,
        probes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub bracket: ThresholdBracket,
    /// `|Λ_emp - λ₁|`
    pub emp_distance: Option<f64>,
    /// `Λ̂ - Λ̃`
    pub bound_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepError {
    pub q: f64,
    pub error: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub errors: Vec<SweepError>,
}

/// Runs [`empirical_threshold`] for every `q` in `q_list` (sorted
/// increasing) on up to `jobs` threads. `λ₁` is computed once. Failing rows
/// are collected in `errors` and the sweep continues.
pub fn sweep_q(p: f64, r: f64, q_list: &[f64], grid: Grid, cfg: &SolverConfig, jobs: usize) -> Result<SweepOutcome> {
    if q_list.is_empty() {
        return Err(Error::InvalidParams("q list is empty".into()));
    }
    if q_list.iter().any(|q| !q.is_finite()) {
        return Err(Error::NonFinite(format!("q list {q_list:?}")));
    }
    if q_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(format!("q list {q_list:?} is not strictly increasing")));
    }
    if jobs == 0 {
        return Err(Error::InvalidConfig("jobs must be at least 1".into()));
    }
    let eig = eigen::first_eigenpair(p, grid, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let results: Vec<(f64, Result<ThresholdBracket>)> = pool.install(|| {
        q_list
            .par_iter()
            .map(|&q| (q, Params::new(p, q, r).and_then(|params| empirical_threshold(&params, grid, &eig, cfg))))
            .collect()
    });
    let mut out = SweepOutcome::default();
    for (q, res) in results {
        match res {
            Ok(bracket) => {
                let emp_distance = bracket.lambda_emp.map(|e| (e - bracket.lambda1).abs());
                let bound_gap = bracket.lambda_hat - bracket.lambda_tilde;
                out.rows.push(SweepRow { bracket, emp_distance, bound_gap });
            }
            Err(e) => out.errors.push(SweepError { q, error: e.to_string() }),
        }
    }
    Ok(out)
}

/// Writes brackets as CSV with header
/// `p,q,r,lambda1,lambda_tilde,lambda_emp,lambda_hat,bracket_lo,bracket_hi,n_inconclusive`.
pub fn write_sweep_csv<'a, W: Write>(rows: impl IntoIterator<Item = &'a ThresholdBracket>, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record([
        "p",
        "q",
        "r",
        "lambda1",
        "lambda_tilde",
        "lambda_emp",
        "lambda_hat",
        "bracket_lo",
        "bracket_hi",
        "n_inconclusive",
    ])?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes sweep errors as CSV with header `q,error`.
pub fn write_sweep_errors_csv<W: Write>(errors: &[SweepError], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for e in errors {
        w.serialize(e)?;
    }
    w.flush()?;
    Ok(())
}

/// A gnuplot script plotting `Λ̃`, `Λ_emp`, `Λ̂` and `λ₁` against `q` from `csv_name`.
pub fn plot_script(csv_name: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set key left top\n\
         set xlabel 'q'\n\
         set ylabel 'Lambda'\n\
         set terminal pngcairo size 800,600\n\
         set output 'sweep.png'\n\
         plot '{csv_name}' using 2:5 with linespoints title 'Lambda tilde', \\\n\
         \x20    '{csv_name}' using 2:6 with linespoints title 'Lambda emp', \\\n\
         \x20    '{csv_name}' using 2:7 with linespoints title 'Lambda hat', \\\n\
         \x20    '{csv_name}' using 2:4 with lines title 'lambda1'\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use proptest::prelude::*;

    fn params(p: f64, q: f64, r: f64) -> Params {
        Params::new(p, q, r).unwrap()
    }

    fn grid_search_min(coeff: f64, pr: &Params, t_max: f64, n: usize) -> (f64, f64) {
        let mut best = (0.0, f64::INFINITY);
        for i in 1..=n {
            let t = t_max * i as f64 / n as f64;
            let v = phi(t, coeff, pr).unwrap();
            if v < best.1 {
                best = (t, v);
            }
        }
        best
    }

    #[test]
    fn lambda_hat_examples() {
        let pi2 = std::f64::consts::PI.powi(2);
        let pr = params(2.0, 1.5, 3.0);
        let v = lambda_hat(&pr, pi2).unwrap();
        let direct = pi2.powf(1.5) * (0.5f64.powf(0.5) / 1.5f64.powf(1.5));
        assert!((v - direct).abs() < 1e-12 * direct);
        assert!((v - 11.93).abs() < 5e-3, "{v}");
        // the minimum of Φ over t equals λ₁ exactly at Λ = Λ̂
        let (_, m) = phi_argmin(v, &pr).unwrap();
        assert!((m - pi2).abs() < 1e-12 * pi2);
        let ratio = lambda_hat(&pr, 2.0 * pi2).unwrap() / v;
        assert!((ratio - 2f64.powf(1.5)).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for q in [1.99, 1.999, 1.9999, 1.99999] {
            let gap = (lambda_hat(&params(2.0, q, 3.0), pi2).unwrap() - pi2).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-3 * pi2);
        assert!(matches!(lambda_hat(&params(2.0, 1.5, 2.0 + 1e-7), pi2), Err(Error::ExponentDegeneracy(_))));
    }

    #[test]
    fn phi_examples() {
        let pr = params(2.0, 1.5, 3.0);
        assert!(((phi_argmin(1.0, &pr).unwrap().0) - 0.5f64.powf(2.0 / 3.0)).abs() < 1e-14);
        // Λ(p - q) = r - p gives t = 1
        assert!((phi_argmin(2.0, &pr).unwrap().0 - 1.0).abs() < 1e-14);
        let (t, m) = phi_argmin(1.0, &pr).unwrap();
        let (_, gm) = grid_search_min(1.0, &pr, 10.0, 1_000_000);
        assert!((gm - m).abs() < 1e-4 * m);
        assert!(phi(t * 1.01, 1.0, &pr).unwrap() > m);
        assert!(phi(t * 0.99, 1.0, &pr).unwrap() > m);
        assert!(matches!(phi(0.0, 1.0, &pr), Err(Error::NonPositiveT(_))));
        assert!(matches!(phi(1.0, -1.0, &pr), Err(Error::NonPositiveLambda(_))));
    }

    #[test]
    fn t_q_examples() {
        let pr = params(2.0, 1.5, 3.0);
        assert!((t_q(&pr) - 1.0 / 3.0).abs() < 1e-15);
        let f = |t: f64| t.powf(0.5) * (1.0 - t);
        let n = 1_000_000;
        let best = (1..n).map(|i| i as f64 / n as f64).fold((0.0, f64::MIN), |b, t| if f(t) > b.1 { (t, f(t)) } else { b });
        assert!((best.0 - 1.0 / 3.0).abs() < 1e-4);
        for i in 1..10 {
            assert!(f(t_q(&pr)) >= f(0.1 * i as f64));
        }
        assert!(t_q(&params(2.0, 2.0 - 1e-5, 3.0)) < 1e-4);
    }

    #[test]
    fn certificate_at_the_boundary() {
        let pr = params(2.0, 1.5, 3.0);
        let l1 = 9.8696;
        let hat = lambda_hat(&pr, l1).unwrap();
        assert!(nonexistence_certificate(1.01 * hat, &pr, l1).unwrap());
        assert!(!nonexistence_certificate(0.99 * hat, &pr, l1).unwrap());
        assert!(!nonexistence_certificate(hat, &pr, l1).unwrap());
    }

    #[test]
    fn lambda_tilde_examples() {
        let pr = params(2.0, 1.5, 3.0);
        let hat = lambda_hat(&pr, 9.8696).unwrap();
        assert_eq!(lambda_tilde(&pr, 9.8696, 1.0).unwrap(), hat);
        assert!(lambda_tilde(&pr, 9.8696, 1.2).unwrap() < hat);
        assert!(matches!(lambda_tilde(&pr, 9.8696, 0.99), Err(Error::InvalidC(_))));
    }

    #[test]
    fn discrete_lambda_tilde_is_the_supersolution_boundary() {
        let pr = params(2.0, 1.5, 3.0);
        let g = make_grid(0.0, 1.0, 256).unwrap();
        let cfg = SolverConfig::default();
        let eig = eigen::first_eigenpair(2.0, g, &cfg).unwrap();
        let tilde = lambda_tilde_discrete(&pr, &eig, &cfg).unwrap();
        let sup = |c: f64| monotone_iteration::build_supersolution(c, None, &pr, &eig, &cfg).unwrap();
        assert!(sup(tilde).is_some());
        assert!(sup(tilde * (1.0 - 1e-4)).is_some());
        assert!(sup(tilde * (1.0 + 1e-4)).is_none());
    }

    #[test]
    fn bracket_on_a_coarse_grid() {
        let pr = params(2.0, 1.5, 3.0);
        let g = make_grid(0.0, 1.0, 128).unwrap();
        let cfg = SolverConfig::default();
        let eig = eigen::first_eigenpair(2.0, g, &cfg).unwrap();
        let b = empirical_threshold(&pr, g, &eig, &cfg).unwrap();
        let emp = b.lambda_emp.expect("estimate");
        assert!(b.lambda_tilde <= b.bracket_lo && b.bracket_lo <= emp && emp <= b.bracket_hi);
        assert!(b.bracket_hi <= 1.01 * b.lambda_hat);
        assert!(b.relative_width() <= EMP_MAX_REL_WIDTH);
        assert!(b.probes.len() >= 2);

        let mut buf = Vec::new();
        write_sweep_csv([&b], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "p,q,r,lambda1,lambda_tilde,lambda_emp,lambda_hat,bracket_lo,bracket_hi,n_inconclusive"
        );
        assert_eq!(lines.next().unwrap().split(',').count(), 10);
    }

    #[test]
    fn sweep_validates_and_records_row_errors() {
        let g = make_grid(0.0, 1.0, 64).unwrap();
        let cfg = SolverConfig::default();
        assert!(matches!(sweep_q(2.0, 3.0, &[], g, &cfg, 1), Err(Error::InvalidParams(_))));
        assert!(matches!(sweep_q(2.0, 3.0, &[1.8, 1.6], g, &cfg, 1), Err(Error::InvalidParams(_))));
        let out = sweep_q(2.0, 3.0, &[1.5, 2.5], g, &cfg, 2).unwrap();
        assert_eq!(out.rows.len(), 1);
        assert_eq!(out.errors.len(), 1);
        assert!(out.errors[0].error.starts_with("invalid-params"));
    }

    #[test]
    fn plot_script_references_columns() {
        let s = plot_script("sweep.csv");
        assert!(s.contains("'sweep.csv' using 2:6"));
        assert!(s.contains("Lambda hat"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tilde_hat_identity(p in 1.2f64..6.0, dq in 0.01f64..0.9, dr in 0.05f64..4.0, l1 in 0.5f64..200.0, c in 1.0f64..3.0) {
            let q = 1.0 + (p - 1.0) * (1.0 - dq);
            let pr = params(p, q, p + dr);
            let hat = lambda_hat(&pr, l1).unwrap();
            let tilde = lambda_tilde(&pr, l1, c).unwrap();
            prop_assert!((tilde - hat * c.powf(q - p)).abs() <= 1e-12 * hat);
            prop_assert!(tilde <= hat);
        }

        #[test]
        fn certificate_iff_above_lambda_hat(p in 1.2f64..6.0, dq in 0.01f64..0.9, dr in 0.05f64..4.0, l1 in 0.5f64..200.0, f in 0.5f64..2.0) {
            prop_assume!((f - 1.0).abs() > 1e-9);
            let q = 1.0 + (p - 1.0) * (1.0 - dq);
            let pr = params(p, q, p + dr);
            let hat = lambda_hat(&pr, l1).unwrap();
            prop_assert_eq!(nonexistence_certificate(f * hat, &pr, l1).unwrap(), f > 1.0);
        }

        #[test]
        fn phi_min_beats_neighbours(p in 1.2f64..6.0, dq in 0.01f64..0.9, dr in 0.05f64..4.0, coeff in 0.01f64..100.0) {
            let q = 1.0 + (p - 1.0) * (1.0 - dq);
            let pr = params(p, q, p + dr);
            let (t, m) = phi_argmin(coeff, &pr).unwrap();
            prop_assert!((phi(t, coeff, &pr).unwrap() - m).abs() <= 1e-10 * m);
            for s in [0.9, 0.99, 1.01, 1.1] {
                prop_assert!(phi(t * s, coeff, &pr).unwrap() >= m * (1.0 - 1e-12));
            }
        }
    }
}
