//! The 23-function benchmark suite.
//!
//! All functions are posed as *maximization* problems: each is the negative
//! of the classical minimization form (the Shekel and Hartman families are
//! already maximized). Evaluators are pure except F7, which subtracts one
//! uniform draw per evaluation from an injected deterministic generator.
//!
//! ```
//! use cfo::bench::{FunctionId, Objective};
//!
//! // The six-hump camel-back function, maximized: its optimum is about
//! // 1.0316285 at (0.089842, -0.712656).
//! let mut objective = Objective::new(FunctionId::F16, 0);
//! let value = objective.eval(&[0.089842, -0.712656]);
//! assert!((value - 1.0316285).abs() < 1e-6);
//! ```

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};

const TWO_PI: f64 = 2.0 * PI;

/// Identifier of a suite function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionId {
    F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12,
    F13, F14, F15, F16, F17, F18, F19, F20, F21, F22, F23,
}

impl FunctionId {
    pub const ALL: [FunctionId; 23] = [
        FunctionId::F1, FunctionId::F2, FunctionId::F3, FunctionId::F4,
        FunctionId::F5, FunctionId::F6, FunctionId::F7, FunctionId::F8,
        FunctionId::F9, FunctionId::F10, FunctionId::F11, FunctionId::F12,
        FunctionId::F13, FunctionId::F14, FunctionId::F15, FunctionId::F16,
        FunctionId::F17, FunctionId::F18, FunctionId::F19, FunctionId::F20,
        FunctionId::F21, FunctionId::F22, FunctionId::F23,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::F1 => "F1", FunctionId::F2 => "F2", FunctionId::F3 => "F3",
            FunctionId::F4 => "F4", FunctionId::F5 => "F5", FunctionId::F6 => "F6",
            FunctionId::F7 => "F7", FunctionId::F8 => "F8", FunctionId::F9 => "F9",
            FunctionId::F10 => "F10", FunctionId::F11 => "F11", FunctionId::F12 => "F12",
            FunctionId::F13 => "F13", FunctionId::F14 => "F14", FunctionId::F15 => "F15",
            FunctionId::F16 => "F16", FunctionId::F17 => "F17", FunctionId::F18 => "F18",
            FunctionId::F19 => "F19", FunctionId::F20 => "F20", FunctionId::F21 => "F21",
            FunctionId::F22 => "F22", FunctionId::F23 => "F23",
        }
    }

    /// Fixed problem dimensionality.
    pub fn nd(self) -> usize {
        match self {
            FunctionId::F14 | FunctionId::F16 | FunctionId::F17 | FunctionId::F18 => 2,
            FunctionId::F19 => 3,
            FunctionId::F15 | FunctionId::F21 | FunctionId::F22 | FunctionId::F23 => 4,
            FunctionId::F20 => 6,
            _ => 30,
        }
    }

    /// Per-axis `[x_min, x_max]` of the decision space.
    pub fn bounds(self) -> Vec<(f64, f64)> {
        let sym = |b: f64, n: usize| vec![(-b, b); n];
        match self {
            FunctionId::F1 | FunctionId::F3 | FunctionId::F4 | FunctionId::F6 => sym(100.0, 30),
            FunctionId::F2 => sym(10.0, 30),
            FunctionId::F5 => sym(30.0, 30),
            FunctionId::F7 => sym(1.28, 30),
            FunctionId::F8 => sym(500.0, 30),
            FunctionId::F9 => sym(5.12, 30),
            FunctionId::F10 => sym(32.0, 30),
            FunctionId::F11 => sym(600.0, 30),
            FunctionId::F12 | FunctionId::F13 => sym(50.0, 30),
            FunctionId::F14 => sym(65.536, 2),
            FunctionId::F15 => sym(5.0, 4),
            FunctionId::F16 => sym(5.0, 2),
            FunctionId::F17 => vec![(-5.0, 10.0), (0.0, 15.0)],
            FunctionId::F18 => sym(2.0, 2),
            FunctionId::F19 => vec![(0.0, 1.0); 3],
            FunctionId::F20 => vec![(0.0, 1.0); 6],
            FunctionId::F21 | FunctionId::F22 | FunctionId::F23 => vec![(0.0, 10.0); 4],
        }
    }

    /// Known global maximum.
    pub fn f_max(self) -> f64 {
        match self {
            FunctionId::F8 => 12569.5,
            FunctionId::F14 => -1.0,
            FunctionId::F15 => -0.0003075,
            FunctionId::F16 => 1.0316285,
            FunctionId::F17 => -0.398,
            FunctionId::F18 => -3.0,
            FunctionId::F19 => 3.86,
            FunctionId::F20 => 3.32,
            FunctionId::F21 | FunctionId::F22 | FunctionId::F23 => 10.0,
            _ => 0.0,
        }
    }

    /// Only F7 draws noise.
    pub fn stochastic(self) -> bool {
        self == FunctionId::F7
    }

    /// Step budget used in the reference experiments.
    pub fn default_nt(self) -> usize {
        if self == FunctionId::F7 { 100 } else { 1000 }
    }

    /// Largest probes-per-axis value of the reference sweep grid.
    pub fn max_probes_per_axis(self) -> usize {
        if self.nd() == 30 { 6 } else { 14 }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let upper = s.to_ascii_uppercase();
        FunctionId::ALL
            .into_iter()
            .find(|id| id.name() == upper)
            .ok_or_else(|| BenchError::UnknownFunction(s.to_string()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("unknown function id `{0}` (expected F1..F23)")]
    UnknownFunction(String),
    #[error("{id} expects {expected} coordinates, got {got}")]
    DimensionMismatch { id: FunctionId, expected: usize, got: usize },
    #[error("F7 requires a noise source")]
    MissingNoiseSource,
}

/// Deterministic uniform-\[0,1) generator injected into F7.
#[derive(Clone, Debug)]
pub struct NoiseSource {
    rng: ChaCha8Rng,
}

impl NoiseSource {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// One draw, uniform on `[0, 1)`.
    pub fn next_uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// A suite function together with its decision space and known optimum.
#[derive(Clone, Debug)]
pub struct Benchmark {
    pub id: FunctionId,
    pub nd: usize,
    pub bounds: Vec<(f64, f64)>,
    pub f_max: f64,
    pub stochastic: bool,
}

impl Benchmark {
    pub fn get(id: FunctionId) -> Self {
        Self {
            id,
            nd: id.nd(),
            bounds: id.bounds(),
            f_max: id.f_max(),
            stochastic: id.stochastic(),
        }
    }

    /// Fitness at `x` in maximization form.
    ///
    /// `noise` must be supplied for F7 and is ignored otherwise. Evaluators
    /// accept any real point; feasibility is the caller's concern.
    pub fn evaluate(&self, x: &[f64], noise: Option<&mut NoiseSource>) -> Result<f64, BenchError> {
        if x.len() != self.nd {
            return Err(BenchError::DimensionMismatch {
                id: self.id,
                expected: self.nd,
                got: x.len(),
            });
        }
        let value = match self.id {
            FunctionId::F1 => f1(x),
            FunctionId::F2 => f2(x),
            FunctionId::F3 => f3(x),
            FunctionId::F4 => f4(x),
            FunctionId::F5 => f5(x),
            FunctionId::F6 => f6(x),
            FunctionId::F7 => {
                let noise = noise.ok_or(BenchError::MissingNoiseSource)?;
                f7_deterministic(x) - noise.next_uniform()
            }
            FunctionId::F8 => f8(x),
            FunctionId::F9 => f9(x),
            FunctionId::F10 => f10(x),
            FunctionId::F11 => f11(x),
            FunctionId::F12 => f12(x),
            FunctionId::F13 => f13(x),
            FunctionId::F14 => f14(x),
            FunctionId::F15 => f15(x),
            FunctionId::F16 => f16(x),
            FunctionId::F17 => f17(x),
            FunctionId::F18 => f18(x),
            FunctionId::F19 => f19(x),
            FunctionId::F20 => f20(x),
            FunctionId::F21 => shekel(x, 5),
            FunctionId::F22 => shekel(x, 7),
            FunctionId::F23 => shekel(x, 10),
        };
        Ok(value)
    }
}

/// A benchmark bound to its noise source, ready to drive an optimizer run.
#[derive(Clone, Debug)]
pub struct Objective {
    benchmark: Benchmark,
    noise: Option<NoiseSource>,
}

impl Objective {
    /// `seed` feeds F7's generator; it is unused for pure functions.
    pub fn new(id: FunctionId, seed: u64) -> Self {
        let benchmark = Benchmark::get(id);
        let noise = benchmark.stochastic.then(|| NoiseSource::new(seed));
        Self { benchmark, noise }
    }

    pub fn benchmark(&self) -> &Benchmark {
        &self.benchmark
    }

    pub fn eval(&mut self, x: &[f64]) -> f64 {
        self.benchmark
            .evaluate(x, self.noise.as_mut())
            .expect("objective evaluation")
    }
}

/// Penalty term shared by F12 and F13.
pub fn penalty_u(x: f64, a: f64, k: f64, m: f64) -> f64 {
    if x > a {
        k * (x - a).powf(m)
    } else if x < -a {
        k * (-x - a).powf(m)
    } else {
        0.0
    }
}

fn f1(x: &[f64]) -> f64 {
    -x.iter().map(|xi| xi.powi(2)).sum::<f64>()
}

fn f2(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|xi| xi.abs()).sum();
    let prod: f64 = x.iter().map(|xi| xi.abs()).product();
    -(sum + prod)
}

fn f3(x: &[f64]) -> f64 {
    let mut z = 0.0;
    let mut prefix = 0.0;
    for xi in x {
        prefix += xi;
        z += prefix.powi(2);
    }
    -z
}

fn f4(x: &[f64]) -> f64 {
    let mut max_abs = f64::NEG_INFINITY;
    for xi in x {
        if xi.abs() >= max_abs {
            max_abs = xi.abs();
        }
    }
    -max_abs
}

// As-implemented variant: the whole bracket is squared, unlike classical
// Rosenbrock. The reference results were produced with this form.
fn f5(x: &[f64]) -> f64 {
    let mut z = 0.0;
    for i in 0..x.len() - 1 {
        z += (100.0 * (x[i + 1] - x[i].powi(2)).powi(2) + (x[i] - 1.0)).powi(2);
    }
    -z
}

fn f6(x: &[f64]) -> f64 {
    -x.iter().map(|xi| (xi + 0.5).floor().powi(2)).sum::<f64>()
}

fn f7_deterministic(x: &[f64]) -> f64 {
    let mut z = 0.0;
    for (i, xi) in x.iter().enumerate() {
        z += (i + 1) as f64 * xi.powi(4);
    }
    -z
}

fn f8(x: &[f64]) -> f64 {
    x.iter().map(|xi| xi * xi.abs().sqrt().sin()).sum()
}

// As-implemented variant: the whole Rastrigin term is squared.
fn f9(x: &[f64]) -> f64 {
    -x.iter()
        .map(|xi| (xi.powi(2) - 10.0 * (TWO_PI * xi).cos() + 10.0).powi(2))
        .sum::<f64>()
}

fn f10(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sum_sq: f64 = x.iter().map(|xi| xi.powi(2)).sum();
    let sum_cos: f64 = x.iter().map(|xi| (TWO_PI * xi).cos()).sum();
    -(-20.0 * (-0.2 * (sum_sq / n).sqrt()).exp() - (sum_cos / n).exp() + 20.0 + E)
}

fn f11(x: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (i, xi) in x.iter().enumerate() {
        sum += (xi - 100.0).powi(2);
        prod *= ((xi - 100.0) / ((i + 1) as f64).sqrt()).cos();
    }
    -(sum / 4000.0 - prod + 1.0)
}

fn f12(x: &[f64]) -> f64 {
    let n = x.len();
    let y = |v: f64| 1.0 + (v + 1.0) / 4.0;
    let mut sum1 = 0.0;
    for i in 0..n - 1 {
        sum1 += (y(x[i]) - 1.0).powi(2) * (1.0 + 10.0 * (PI * y(x[i + 1])).sin().powi(2));
    }
    sum1 += 10.0 * (PI * y(x[0])).sin().powi(2) + (y(x[n - 1]) - 1.0).powi(2);
    sum1 = PI * sum1 / n as f64;
    let sum2: f64 = x.iter().map(|&xi| penalty_u(xi, 10.0, 100.0, 4.0)).sum();
    -(sum1 + sum2)
}

fn f13(x: &[f64]) -> f64 {
    let n = x.len();
    let mut sum1 = 0.0;
    for i in 0..n - 1 {
        sum1 += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    sum1 += (3.0 * PI * x[0]).sin().powi(2)
        + (x[n - 1] - 1.0).powi(2) * (1.0 + (TWO_PI * x[n - 1]).sin().powi(2));
    let sum2: f64 = x.iter().map(|&xi| penalty_u(xi, 5.0, 100.0, 4.0)).sum();
    -(sum1 / 10.0 + sum2)
}

/// Foxhole coordinates for F14: row 0 cycles (−32,−16,0,16,32), row 1 holds
/// each value five times.
pub fn foxholes_table() -> [[f64; 25]; 2] {
    let vals = [-32.0, -16.0, 0.0, 16.0, 32.0];
    let mut a = [[0.0; 25]; 2];
    for j in 0..25 {
        a[0][j] = vals[j % 5];
        a[1][j] = vals[j / 5];
    }
    a
}

fn f14(x: &[f64]) -> f64 {
    let a = foxholes_table();
    let mut sum1 = 0.0;
    for j in 0..25 {
        let mut sum2 = 0.0;
        for i in 0..2 {
            sum2 += (x[i] - a[i][j]).powi(6);
        }
        sum1 += 1.0 / ((j + 1) as f64 + sum2);
    }
    -(1.0 / (0.002 + sum1))
}

/// Kowalik data for F15; `b` is stored as the reciprocal values 1/0.25 … 1/16.
pub const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
pub const KOWALIK_B_INV: [f64; 11] =
    [0.25, 0.50, 1.00, 2.00, 4.00, 6.00, 8.00, 10.0, 12.0, 14.0, 16.0];

fn f15(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let mut z = 0.0;
    for j in 0..11 {
        let b = 1.0 / KOWALIK_B_INV[j];
        let num = x1 * (b.powi(2) + b * x2);
        let denom = b.powi(2) + b * x3 + x4;
        z += (KOWALIK_A[j] - num / denom).powi(2);
    }
    -z
}

fn f16(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    -(4.0 * x1.powi(2) - 2.1 * x1.powi(4) + x1.powi(6) / 3.0 + x1 * x2 - 4.0 * x2.powi(2)
        + 4.0 * x2.powi(4))
}

fn f17(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    -((x2 - 5.1 * x1.powi(2) / (4.0 * PI.powi(2)) + 5.0 * x1 / PI - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * x1.cos()
        + 10.0)
}

fn f18(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let t1 = 1.0
        + (x1 + x2 + 1.0).powi(2)
            * (19.0 - 14.0 * x1 + 3.0 * x1.powi(2) - 14.0 * x2 + 6.0 * x1 * x2
                + 3.0 * x2.powi(2));
    let t2 = 30.0
        + (2.0 * x1 - 3.0 * x2).powi(2)
            * (18.0 - 32.0 * x1 + 12.0 * x1.powi(2) + 48.0 * x2 - 36.0 * x1 * x2
                + 27.0 * x2.powi(2));
    -(t1 * t2)
}

/// Hartman family coefficients. `c` is shared between the 3-D and 6-D forms.
pub const HARTMAN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
pub const HARTMAN3_A: [[f64; 3]; 4] =
    [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]];
pub const HARTMAN3_P: [[f64; 3]; 4] = [
    [0.36890, 0.1170, 0.2673],
    [0.46990, 0.4387, 0.7470],
    [0.10910, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
];
pub const HARTMAN6_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];
pub const HARTMAN6_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

fn f19(x: &[f64]) -> f64 {
    let mut z = 0.0;
    for j in 0..4 {
        let mut sum = 0.0;
        for i in 0..3 {
            sum += HARTMAN3_A[j][i] * (x[i] - HARTMAN3_P[j][i]).powi(2);
        }
        z += HARTMAN_C[j] * (-sum).exp();
    }
    z
}

fn f20(x: &[f64]) -> f64 {
    let mut z = 0.0;
    for j in 0..4 {
        let mut sum = 0.0;
        for i in 0..6 {
            sum += HARTMAN6_A[j][i] * (x[i] - HARTMAN6_P[j][i]).powi(2);
        }
        z += HARTMAN_C[j] * (-sum).exp();
    }
    z
}

/// Shekel family wells; F21/F22/F23 use the first 5/7/10 rows.
pub const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
pub const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    let mut z = 0.0;
    for j in 0..m {
        let mut sum = 0.0;
        for i in 0..4 {
            sum += (x[i] - SHEKEL_A[j][i]).powi(2);
        }
        z += 1.0 / (sum + SHEKEL_C[j]);
    }
    z
}

/// One row of the machine-readable function registry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub id: String,
    pub nd: usize,
    pub x_min: Vec<f64>,
    pub x_max: Vec<f64>,
    pub f_max: f64,
    pub stochastic: bool,
    pub default_nt: usize,
}

/// Registry of all 23 functions, in suite order.
pub fn registry() -> Vec<RegistryEntry> {
    FunctionId::ALL
        .into_iter()
        .map(|id| {
            let bounds = id.bounds();
            RegistryEntry {
                id: id.name().to_string(),
                nd: id.nd(),
                x_min: bounds.iter().map(|b| b.0).collect(),
                x_max: bounds.iter().map(|b| b.1).collect(),
                f_max: id.f_max(),
                stochastic: id.stochastic(),
                default_nt: id.default_nt(),
            }
        })
        .collect()
}
