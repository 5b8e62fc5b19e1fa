//! Central force optimization: a fully deterministic metaheuristic that
//! flies "probes" through a bounded decision space under metaphorical
//! gravity, together with the 23-function benchmark suite and the sweep
//! harness used to evaluate it.
//!
//! The optimizer maximizes. To minimize a function, negate it — every
//! classical minimization benchmark in [`bench`] is stored that way.
//!
//! ```
//! use cfo::bench::{FunctionId, Objective};
//! use cfo::engine::{run_single, CfoParams, DecisionSpace, RunOptions};
//!
//! let mut objective = Objective::new(FunctionId::F16, 0);
//! let mut space = DecisionSpace::new(&objective.benchmark().bounds).unwrap();
//! let params = CfoParams { gamma: 0.5, probes_per_axis: 12, ..CfoParams::default() };
//! let out = run_single(&mut objective, &params, &mut space, 1, RunOptions::default()).unwrap();
//! assert!(out.record.best_fitness > 1.0);
//! ```

pub mod bench;
pub mod engine;
pub mod report;
pub mod sweep;
