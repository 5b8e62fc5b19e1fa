//! Cross-checks every benchmark evaluator against independently written
//! formula oracles at pseudorandom in-bounds points, and at known optimum
//! points against literature values.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cfo::bench::{FunctionId, NoiseSource, Objective};
use common::{close, optimum_cases, oracle, random_point};

#[test]
fn evaluators_match_oracle_at_random_points() {
    for id in FunctionId::ALL {
        let mut objective = Objective::new(id, 7);
        let bounds = objective.benchmark().bounds.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + id.nd() as u64 * 31 + id as u64);
        let mut noise = id.stochastic().then(|| NoiseSource::new(7));
        for _ in 0..100 {
            let x = random_point(&mut rng, &bounds);
            let got = objective.eval(&x);
            let mut want = oracle(id, &x);
            if let Some(noise) = noise.as_mut() {
                want -= noise.next_uniform();
            }
            assert!(got.is_finite(), "{id}: non-finite value at {x:?}");
            close(got, want);
        }
    }
}

#[test]
fn known_optimum_points_reach_reference_values() {
    for (id, point, want, tol) in optimum_cases() {
        let mut objective = Objective::new(id, 0);
        let got = objective.eval(&point);
        assert!(
            (got - want).abs() <= tol,
            "{id}: {got} vs {want} at optimum point"
        );
    }
}

#[test]
fn f12_is_locally_maximal_at_minus_ones() {
    let mut objective = Objective::new(FunctionId::F12, 0);
    let center = vec![-1.0; 30];
    let at_center = objective.eval(&center);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        // Random direction scaled to length 0.1.
        let dir: Vec<f64> = (0..30).map(|_| rng.gen::<f64>() - 0.5).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        let x: Vec<f64> = center
            .iter()
            .zip(&dir)
            .map(|(c, d)| c + 0.1 * d / norm)
            .collect();
        assert!(objective.eval(&x) <= at_center);
    }
}

#[test]
fn stochastic_evaluator_reproduces_by_seed() {
    let x = vec![0.5; 30];
    let mut a = Objective::new(FunctionId::F7, 42);
    let mut b = Objective::new(FunctionId::F7, 42);
    let mut c = Objective::new(FunctionId::F7, 43);
    let (va, vb, vc) = (a.eval(&x), b.eval(&x), c.eval(&x));
    assert_eq!(va, vb);
    assert_ne!(va, vc);
}
