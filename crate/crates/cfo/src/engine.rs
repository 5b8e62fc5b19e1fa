//! The central-force optimization engine for a single run.
//!
//! Probes fly through the decision space under metaphorical gravity: each
//! probe accelerates toward every probe with better fitness, with the pull
//! weighted by the fitness difference raised to `alpha` and attenuated by
//! distance raised to `beta`. The space shrinks around the best probe every
//! `shrink_interval` steps, errant probes are pulled back inside, and the run
//! terminates early once the per-step best fitness saturates.
//!
//! Every piece of state is explicit, so identical inputs always give
//! identical runs:
//!
//! ```
//! use cfo::bench::{FunctionId, Objective};
//! use cfo::engine::{run_single, CfoParams, DecisionSpace, RunOptions};
//!
//! let params = CfoParams { gamma: 0.3, probes_per_axis: 4, nt: 60, ..CfoParams::default() };
//! let run = |_| {
//!     let mut objective = Objective::new(FunctionId::F17, 0);
//!     let mut space = DecisionSpace::new(&objective.benchmark().bounds).unwrap();
//!     run_single(&mut objective, &params, &mut space, 1, RunOptions::default()).unwrap()
//! };
//! let (a, b) = (run(()), run(()));
//! assert_eq!(a.record, b.record);
//! // Evaluations are fully accounted: one per probe per step, including
//! // the initial placement.
//! assert_eq!(a.record.neval, (a.record.last_step as u64 + 1) * a.record.np as u64);
//! ```

use serde::{Deserialize, Serialize};

use crate::bench::{BenchError, Objective};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Bench(#[from] BenchError),
}

/// Axis-aligned box of feasible coordinates, with the immutable starting
/// bounds kept for resets and for the diagnostic normalization length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionSpace {
    x_min: Vec<f64>,
    x_max: Vec<f64>,
    start_min: Vec<f64>,
    start_max: Vec<f64>,
}

impl DecisionSpace {
    pub fn new(bounds: &[(f64, f64)]) -> Result<Self, EngineError> {
        if bounds.is_empty() {
            return Err(EngineError::InvalidParams("empty bounds".into()));
        }
        for &(lo, hi) in bounds {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(EngineError::InvalidParams(format!(
                    "bad axis bounds [{lo}, {hi}]"
                )));
            }
        }
        let x_min: Vec<f64> = bounds.iter().map(|b| b.0).collect();
        let x_max: Vec<f64> = bounds.iter().map(|b| b.1).collect();
        Ok(Self { start_min: x_min.clone(), start_max: x_max.clone(), x_min, x_max })
    }

    pub fn nd(&self) -> usize {
        self.x_min.len()
    }

    pub fn x_min(&self) -> &[f64] {
        &self.x_min
    }

    pub fn x_max(&self) -> &[f64] {
        &self.x_max
    }

    pub fn start_min(&self) -> &[f64] {
        &self.start_min
    }

    pub fn start_max(&self) -> &[f64] {
        &self.start_max
    }

    /// Restore the starting bounds (done before every run of a sweep).
    pub fn reset(&mut self) {
        self.x_min.copy_from_slice(&self.start_min);
        self.x_max.copy_from_slice(&self.start_max);
    }

    /// Move each boundary halfway toward `r_best`.
    pub fn shrink(&mut self, r_best: &[f64]) {
        for i in 0..self.x_min.len() {
            self.x_min[i] += (r_best[i] - self.x_min[i]) / 2.0;
            self.x_max[i] -= (self.x_max[i] - r_best[i]) / 2.0;
        }
    }

    /// Principal-diagonal length of the *starting* space.
    pub fn start_diag_len(&self) -> f64 {
        self.start_min
            .iter()
            .zip(&self.start_max)
            .map(|(lo, hi)| (hi - lo).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Volume of the current (possibly shrunken) space.
    pub fn volume(&self) -> f64 {
        self.x_min
            .iter()
            .zip(&self.x_max)
            .map(|(lo, hi)| hi - lo)
            .product()
    }
}

/// Scalar knobs of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfoParams {
    pub g: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta_t: f64,
    pub frep_init: f64,
    pub delta_frep: f64,
    pub gamma: f64,
    pub probes_per_axis: usize,
    pub nt: usize,
    pub shrink_start: usize,
    pub shrink_interval: usize,
    pub sat_window: usize,
    pub sat_tol: f64,
    pub sat_guard: usize,
}

impl Default for CfoParams {
    fn default() -> Self {
        Self {
            g: 2.0,
            alpha: 2.0,
            beta: 2.0,
            delta_t: 1.0,
            frep_init: 0.5,
            delta_frep: 0.05,
            gamma: 0.5,
            probes_per_axis: 2,
            nt: 1000,
            shrink_start: 20,
            shrink_interval: 10,
            sat_window: 25,
            sat_tol: 1e-5,
            sat_guard: 10,
        }
    }
}

impl CfoParams {
    pub fn validate(&self, nd: usize) -> Result<(), EngineError> {
        let err = |msg: String| Err(EngineError::InvalidParams(msg));
        if !(0.0..=1.0).contains(&self.gamma) {
            return err(format!("gamma {} outside [0, 1]", self.gamma));
        }
        if self.probes_per_axis < 2 {
            return err(format!("probes_per_axis {} < 2", self.probes_per_axis));
        }
        if nd == 1 && self.probes_per_axis < 3 {
            return err("probes_per_axis must be >= 3 in 1-D".into());
        }
        if nd > 1 && self.probes_per_axis % 2 != 0 {
            return err(format!("probes_per_axis {} must be even", self.probes_per_axis));
        }
        if !(self.delta_frep > 0.0 && self.delta_frep <= self.frep_init && self.frep_init <= 1.0) {
            return err(format!(
                "need 0 < delta_frep <= frep_init <= 1, got {} / {}",
                self.delta_frep, self.frep_init
            ));
        }
        if self.delta_t <= 0.0 {
            return err(format!("delta_t {} <= 0", self.delta_t));
        }
        if self.shrink_interval == 0 || self.sat_window == 0 {
            return err("shrink_interval and sat_window must be positive".into());
        }
        Ok(())
    }
}

/// One row of a run table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_number: u32,
    pub gamma: f64,
    pub nt: usize,
    pub nd: usize,
    pub np: usize,
    pub g: f64,
    pub delta_t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub last_step: usize,
    pub neval: u64,
    pub frep_final: f64,
    pub best_fitness: f64,
    /// 1-based probe number of the best fitness.
    pub best_probe: usize,
    pub best_step: usize,
    pub ipd_kind: String,
}

/// Label of the only initial-distribution mode in use.
pub const IPD_KIND: &str = "UNIFORM P-AXIS";

/// Per-step diagnostics collected when tracing is requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    /// Repositioning factor in effect during this step.
    pub frep: f64,
    pub step_best_fitness: f64,
    /// 1-based probe number of this step's best fitness.
    pub step_best_probe: usize,
    pub global_best_fitness: f64,
    pub davg: f64,
    pub volume: f64,
}

/// Full position/acceleration/fitness histories, indexed `[step][probe]`.
#[derive(Clone, Debug, Default)]
pub struct Trajectories {
    pub positions: Vec<Vec<Vec<f64>>>,
    pub accelerations: Vec<Vec<Vec<f64>>>,
    pub fitness: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub trace: bool,
    pub record_trajectories: bool,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub record: RunRecord,
    pub trace: Option<Vec<TraceStep>>,
    pub trajectories: Option<Trajectories>,
}

/// 1 for `z >= 0`, else 0.
pub fn unit_step(z: f64) -> f64 {
    if z >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Step-0 probe layout: `probes_per_axis` probes per axis on orthogonal
/// probe lines intersecting at the diagonal point
/// `D = x_min + gamma * (x_max - x_min)`.
pub fn initial_probe_distribution(
    space: &DecisionSpace,
    probes_per_axis: usize,
    gamma: f64,
) -> Result<Vec<Vec<f64>>, EngineError> {
    let nd = space.nd();
    if probes_per_axis < 2 || (nd == 1 && probes_per_axis < 3) {
        return Err(EngineError::InvalidParams(format!(
            "probes_per_axis {probes_per_axis} too small for {nd}-D"
        )));
    }
    let np = probes_per_axis * nd;
    let (x_min, x_max) = (space.x_min(), space.x_max());

    let mut r = vec![vec![0.0; nd]; np];
    for i in 0..nd {
        let d = x_min[i] + gamma * (x_max[i] - x_min[i]);
        for probe in r.iter_mut() {
            probe[i] = d;
        }
    }
    for i in 0..nd {
        let delta = (x_max[i] - x_min[i]) / (probes_per_axis - 1) as f64;
        for k in 0..probes_per_axis {
            let p = k + probes_per_axis * i;
            r[p][i] = x_min[i] + k as f64 * delta;
        }
    }
    Ok(r)
}

/// Gravitational accelerations from the current probe distribution and
/// fitnesses. Coincident probe pairs contribute nothing.
pub fn compute_accelerations(
    positions: &[Vec<f64>],
    fitness: &[f64],
    g: f64,
    alpha: f64,
    beta: f64,
) -> Vec<Vec<f64>> {
    let np = positions.len();
    let nd = positions.first().map_or(0, Vec::len);
    let mut acc = vec![vec![0.0; nd]; np];
    for p in 0..np {
        for k in 0..np {
            if k == p {
                continue;
            }
            let numerator = unit_step(fitness[k] - fitness[p]) * (fitness[k] - fitness[p]);
            if numerator == 0.0 {
                continue;
            }
            let mut sum_sq = 0.0;
            for l in 0..nd {
                sum_sq += (positions[k][l] - positions[p][l]).powi(2);
            }
            if sum_sq == 0.0 {
                continue;
            }
            let num_alpha = numerator.powf(alpha);
            let denom_beta = sum_sq.sqrt().powf(beta);
            for i in 0..nd {
                acc[p][i] += g * (positions[k][i] - positions[p][i]) * num_alpha / denom_beta;
            }
        }
    }
    acc
}

/// Ballistic update: `r_j = r_{j-1} + a_{j-1} * dt^2 / 2`.
pub fn step_positions(prev_pos: &[Vec<f64>], prev_acc: &[Vec<f64>], delta_t: f64) -> Vec<Vec<f64>> {
    prev_pos
        .iter()
        .zip(prev_acc)
        .map(|(r, a)| {
            r.iter()
                .zip(a)
                .map(|(ri, ai)| ri + 0.5 * ai * delta_t.powi(2))
                .collect()
        })
        .collect()
}

/// Pull out-of-bounds coordinates back inside, a fraction `frep` of the way
/// from the boundary toward the probe's previous position (clamping onto the
/// boundary when the previous position is itself outside).
pub fn retrieve_errant_probes(
    positions: &mut [Vec<f64>],
    prev_positions: &[Vec<f64>],
    space: &DecisionSpace,
    frep: f64,
) {
    let (x_min, x_max) = (space.x_min(), space.x_max());
    for (pos, prev) in positions.iter_mut().zip(prev_positions) {
        for i in 0..pos.len() {
            if pos[i] < x_min[i] {
                pos[i] = (x_min[i] + frep * (prev[i] - x_min[i])).max(x_min[i]);
            }
            if pos[i] > x_max[i] {
                pos[i] = (x_max[i] - frep * (x_max[i] - prev[i])).min(x_max[i]);
            }
        }
    }
}

/// Advance the repositioning factor, wrapping to `delta_frep` above 1.
pub fn update_frep(frep: f64, delta_frep: f64) -> f64 {
    let next = frep + delta_frep;
    if next > 1.0 {
        delta_frep
    } else {
        next
    }
}

/// Early-termination test on the fitness history (`fitness[k][p]` is probe
/// `p`'s fitness at step `k`; the current step is the last row). Saturated
/// when the best fitness of the last `window` steps averages to within `tol`
/// of the current step's best. Requires `guard` extra steps beyond the
/// averaging window before the first check.
///
/// Each step's running maximum is seeded from the fitness matrix read at
/// flattened offset `np + k - 1` in probe-major order, i.e. probe
/// `(k - 1) % np` at step `1 + (k - 1) / np`, not from step `k` itself.
/// The seed step never exceeds `k`, so the value is always defined. When
/// the seed exceeds the step's true maximum it inflates the window average
/// and postpones termination; reference step counts depend on this.
pub fn fitness_saturated(fitness: &[Vec<f64>], window: usize, tol: f64, guard: usize) -> bool {
    let j = fitness.len() - 1;
    if j < window + guard {
        return false;
    }
    let np = fitness[0].len();
    let mut sum = 0.0;
    let mut best_at_j = f64::NEG_INFINITY;
    for k in j + 1 - window..=j {
        let offset = np + k - 1;
        let mut best = fitness[offset / np][offset % np];
        for &m in &fitness[k] {
            if m >= best {
                best = m;
            }
        }
        if k == j {
            best_at_j = best;
        }
        sum += best;
    }
    (sum / window as f64 - best_at_j).abs() <= tol
}

/// Average probe distance to `best_pos`, normalized by the starting-space
/// diagonal length and by `np - 1`.
pub fn davg(positions: &[Vec<f64>], best_pos: &[f64], diag_len: f64) -> f64 {
    let np = positions.len();
    assert!(np >= 2, "davg needs at least two probes");
    let total: f64 = positions
        .iter()
        .map(|pos| {
            pos.iter()
                .zip(best_pos)
                .map(|(a, b)| (b - a).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    total / (diag_len * (np - 1) as f64)
}

/// Oscillation diagnostic: at least 3 sign changes of successive
/// differences in the last 10 steps of the `davg` series. Never gates
/// termination.
pub fn davg_oscillating(davg_series: &[f64]) -> bool {
    let j = davg_series.len() - 1;
    if j < 15 {
        return false;
    }
    let mut changes = 0;
    for k in j - 10..=j - 1 {
        if (davg_series[k] - davg_series[k - 1]) * (davg_series[k + 1] - davg_series[k]) < 0.0 {
            changes += 1;
        }
    }
    changes >= 3
}

/// Saturation diagnostic on the `davg` series; same window/guard pattern as
/// [`fitness_saturated`]. Never gates termination.
pub fn davg_saturated(davg_series: &[f64], window: usize, tol: f64, guard: usize) -> bool {
    let j = davg_series.len() - 1;
    if j < window + guard {
        return false;
    }
    let sum: f64 = davg_series[j + 1 - window..=j].iter().sum();
    (sum / window as f64 - davg_series[j]).abs() <= tol
}

/// Best fitness over `fitness[probe][step <= j]`, scanning steps outer and
/// probes inner and replacing on `>=`, so the latest occurrence wins.
/// Returns `(fitness, probe (1-based), step)`.
pub fn best_fitness_so_far(fitness: &[Vec<f64>]) -> (f64, usize, usize) {
    let mut best = fitness[0][0];
    let (mut probe, mut step) = (1, 0);
    for (j, row) in fitness.iter().enumerate() {
        for (p, &m) in row.iter().enumerate() {
            if m >= best {
                best = m;
                probe = p + 1;
                step = j;
            }
        }
    }
    (best, probe, step)
}

fn step_best(fitness: &[f64]) -> (f64, usize) {
    let mut best = fitness[0];
    let mut probe = 1;
    for (p, &m) in fitness.iter().enumerate() {
        if m >= best {
            best = m;
            probe = p + 1;
        }
    }
    (best, probe)
}

/// Execute one run: initial distribution at step 0, then for each step the
/// position update, errant-probe retrieval, fitness evaluation, acceleration
/// update, best-fitness bookkeeping, repositioning-factor advance, periodic
/// shrink (with a second retrieval pass), and the saturation test.
pub fn run_single(
    objective: &mut Objective,
    params: &CfoParams,
    space: &mut DecisionSpace,
    run_number: u32,
    opts: RunOptions,
) -> Result<RunOutput, EngineError> {
    let nd = space.nd();
    if nd != objective.benchmark().nd {
        return Err(EngineError::InvalidParams(format!(
            "space is {nd}-D but {} is {}-D",
            objective.benchmark().id,
            objective.benchmark().nd
        )));
    }
    params.validate(nd)?;

    let np = params.probes_per_axis * nd;
    let diag_len = space.start_diag_len();

    let mut prev_pos = initial_probe_distribution(space, params.probes_per_axis, params.gamma)?;
    let mut init_fit: Vec<f64> = Vec::with_capacity(np);
    for p in &prev_pos {
        init_fit.push(objective.eval(p));
    }
    let mut prev_acc = vec![vec![0.0; nd]; np];

    let (mut best_fitness, mut best_probe) = step_best(&init_fit);
    let mut best_step = 0usize;
    let mut best_pos = prev_pos[best_probe - 1].clone();
    let first_step_best = best_fitness;
    let mut fit_history = vec![init_fit.clone()];

    let mut frep = params.frep_init;
    let mut trace = opts.trace.then(Vec::new);
    let mut davg_series = Vec::new();
    let mut trajectories = opts.record_trajectories.then(Trajectories::default);

    if let Some(trace) = trace.as_mut() {
        let d = davg(&prev_pos, &best_pos, diag_len);
        davg_series.push(d);
        trace.push(TraceStep {
            step: 0,
            frep,
            step_best_fitness: first_step_best,
            step_best_probe: best_probe,
            global_best_fitness: best_fitness,
            davg: d,
            volume: space.volume(),
        });
    }
    if let Some(t) = trajectories.as_mut() {
        t.positions.push(prev_pos.clone());
        t.accelerations.push(prev_acc.clone());
        t.fitness.push(init_fit.clone());
    }

    let mut last_step = 0;
    for j in 1..=params.nt {
        let frep_in_effect = frep;
        let mut pos = step_positions(&prev_pos, &prev_acc, params.delta_t);
        retrieve_errant_probes(&mut pos, &prev_pos, space, frep);

        let mut fit: Vec<f64> = Vec::with_capacity(np);
        for p in &pos {
            fit.push(objective.eval(p));
        }
        let acc = compute_accelerations(&pos, &fit, params.g, params.alpha, params.beta);

        let (sb_fitness, sb_probe) = step_best(&fit);
        fit_history.push(fit.clone());
        for (p, &m) in fit.iter().enumerate() {
            if m >= best_fitness {
                best_fitness = m;
                best_probe = p + 1;
                best_step = j;
                best_pos.clone_from(&pos[p]);
            }
        }

        let davg_now = if trace.is_some() {
            let d = davg(&pos, &best_pos, diag_len);
            davg_series.push(d);
            Some(d)
        } else {
            None
        };

        let saturated =
            fitness_saturated(&fit_history, params.sat_window, params.sat_tol, params.sat_guard);

        frep = update_frep(frep, params.delta_frep);
        if j >= params.shrink_start && j % params.shrink_interval == 0 {
            space.shrink(&best_pos);
            retrieve_errant_probes(&mut pos, &prev_pos, space, frep);
        }

        if let Some(trace) = trace.as_mut() {
            trace.push(TraceStep {
                step: j,
                frep: frep_in_effect,
                step_best_fitness: sb_fitness,
                step_best_probe: sb_probe,
                global_best_fitness: best_fitness,
                davg: davg_now.unwrap(),
                volume: space.volume(),
            });
        }
        if let Some(t) = trajectories.as_mut() {
            t.positions.push(pos.clone());
            t.accelerations.push(acc.clone());
            t.fitness.push(fit.clone());
        }

        last_step = j;
        if saturated {
            break;
        }
        prev_pos = pos;
        prev_acc = acc;
    }

    let record = RunRecord {
        run_number,
        gamma: params.gamma,
        nt: params.nt,
        nd,
        np,
        g: params.g,
        delta_t: params.delta_t,
        alpha: params.alpha,
        beta: params.beta,
        last_step,
        neval: (last_step as u64 + 1) * np as u64,
        frep_final: frep,
        best_fitness,
        best_probe,
        best_step,
        ipd_kind: IPD_KIND.to_string(),
    };
    Ok(RunOutput { record, trace, trajectories })
}
