//! Vector- and operator-level lemma suite: the scalar inequalities the
//! bound proofs lean on, checked on random instances.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::matrix::{inner, vec_norm, ComplexMatrix};
use crate::linalg::spectral::{matrix_abs, op_norm, psd_sqrt};
use crate::linalg::inequality_slack;
use crate::seed::mix;

/// Outcome of one lemma family over `trials` random instances.
#[derive(Debug, Clone)]
pub struct LemmaOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Smallest rhs - lhs margin seen; negative within slack still passes.
    pub min_margin: f64,
}

impl LemmaOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const LEMMA_NAMES: [&str; 6] = [
    "mixed_schwarz",
    "buzano",
    "buzano_alpha",
    "power_inequality",
    "kittaneh_sum",
    "norm_sum_squared",
];

struct Tally {
    name: &'static str,
    trials: usize,
    failures: usize,
    min_margin: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, trials: 0, failures: 0, min_margin: f64::INFINITY }
    }

    fn check(&mut self, lhs: f64, rhs: f64, tol: f64) {
        self.trials += 1;
        let margin = rhs - lhs;
        if margin < self.min_margin {
            self.min_margin = margin;
        }
        if margin < -inequality_slack(lhs, rhs, tol) {
            self.failures += 1;
        }
    }

    fn finish(self) -> LemmaOutcome {
        LemmaOutcome {
            name: self.name,
            trials: self.trials,
            failures: self.failures,
            min_margin: self.min_margin,
        }
    }
}

fn gaussian_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

fn unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v = gaussian_vector(n, rng);
    let norm = vec_norm(&v);
    for z in v.iter_mut() {
        *z /= norm;
    }
    v
}

fn gaussian_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

fn psd_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = gaussian_matrix(n, rng);
    g.adjoint().matmul(&g).expect("square").real_part()
}

fn rng_for(seed: u64, family: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(&[seed, family, trial as u64]))
}

/// |<Ax, x>| <= <|A|x, x>^{1/2} <|A*|x, x>^{1/2}.
pub fn run_mixed_schwarz(dim: usize, trials: usize, seed: u64, tol: f64) -> LemmaOutcome {
    let mut tally = Tally::new("mixed_schwarz");
    for trial in 0..trials {
        let mut rng = rng_for(seed, 1, trial);
        let a = gaussian_matrix(dim, &mut rng);
        let x = unit_vector(dim, &mut rng);
        let abs_a = matrix_abs(&a).expect("abs of finite matrix");
        let abs_astar = matrix_abs(&a.adjoint()).expect("abs of finite matrix");
        let lhs = inner(&a.matvec(&x), &x).norm();
        let left = inner(&abs_a.matvec(&x), &x).re.max(0.0);
        let right = inner(&abs_astar.matvec(&x), &x).re.max(0.0);
        tally.check(lhs, left.sqrt() * right.sqrt(), tol);
    }
    tally.finish()
}

/// Buzano: |<x,e><e,y>| <= ( ||x|| ||y|| + |<x,y>| ) / 2 for unit e.
pub fn run_buzano(dim: usize, trials: usize, seed: u64, tol: f64) -> LemmaOutcome {
    let mut tally = Tally::new("buzano");
    for trial in 0..trials {
        let mut rng = rng_for(seed, 2, trial);
        let x = gaussian_vector(dim, &mut rng);
        let y = gaussian_vector(dim, &mut rng);
        let e = unit_vector(dim, &mut rng);
        let lhs = (inner(&x, &e) * inner(&e, &y)).norm();
        let rhs = 0.5 * (vec_norm(&x) * vec_norm(&y) + inner(&x, &y).norm());
        tally.check(lhs, rhs, tol);
    }
    tally.finish()
}

/// The alpha-parametrized squared Buzano refinement:
/// |<x,e><e,y>|^2 <= (1+a)/4 ||x||^2||y||^2 + (1-a)/4 |<x,y>|^2
///                   + 1/2 ||x|| ||y|| |<x,y>|,  for every a in [0,1].
///
/// At a = 0 the right-hand side collapses to the squared Buzano bound
/// exactly; at a = 1 it dominates it.
pub fn run_buzano_alpha(dim: usize, trials: usize, seed: u64, tol: f64) -> LemmaOutcome {
    let mut tally = Tally::new("buzano_alpha");
    for trial in 0..trials {
        let mut rng = rng_for(seed, 3, trial);
        let x = gaussian_vector(dim, &mut rng);
        let y = gaussian_vector(dim, &mut rng);
        let e = unit_vector(dim, &mut rng);
        let lhs = (inner(&x, &e) * inner(&e, &y)).norm_sqr();
        let norms = vec_norm(&x) * vec_norm(&y);
        let cross = inner(&x, &y).norm();
        for alpha in crate::harness::ALPHA_GRID {
            let rhs = (1.0 + alpha) / 4.0 * norms * norms
                + (1.0 - alpha) / 4.0 * cross * cross
                + 0.5 * norms * cross;
            tally.check(lhs, rhs, tol);
        }
    }
    tally.finish()
}

/// At alpha = 0 the refinement equals the squared Buzano bound; returns the
/// worst absolute agreement error over `trials` instances.
pub fn buzano_alpha_zero_agreement(dim: usize, trials: usize, seed: u64) -> f64 {
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let mut rng = rng_for(seed, 3, trial);
        let x = gaussian_vector(dim, &mut rng);
        let y = gaussian_vector(dim, &mut rng);
        let _e = unit_vector(dim, &mut rng);
        let norms = vec_norm(&x) * vec_norm(&y);
        let cross = inner(&x, &y).norm();
        let refined = 0.25 * norms * norms + 0.25 * cross * cross + 0.5 * norms * cross;
        let squared_buzano = (0.5 * (norms + cross)).powi(2);
        worst = worst.max((refined - squared_buzano).abs() / (1.0 + squared_buzano));
    }
    worst
}

/// <Ax, x>^r <= <A^r x, x> for positive A, unit x and r in {1, 2, 4}.
pub fn run_power_inequality(dim: usize, trials: usize, seed: u64, tol: f64) -> LemmaOutcome {
    let mut tally = Tally::new("power_inequality");
    for trial in 0..trials {
        let mut rng = rng_for(seed, 4, trial);
        let a = psd_matrix(dim, &mut rng);
        let x = unit_vector(dim, &mut rng);
        let a2 = a.matmul(&a).expect("square");
        let a4 = a2.matmul(&a2).expect("square");
        let base = inner(&a.matvec(&x), &x).re.max(0.0);
        let quad = inner(&a2.matvec(&x), &x).re;
        let quart = inner(&a4.matvec(&x), &x).re;
        tally.check(base, base, tol); // r = 1 is an identity
        tally.check(base * base, quad, tol);
        tally.check(base.powi(4), quart, tol);
    }
    tally.finish()
}

/// ||A + B|| <= max{||A||, ||B||} + ||A^{1/2} B^{1/2}|| for positive A, B.
pub fn run_kittaneh_sum(dim: usize, trials: usize, seed: u64, tol: f64) -> LemmaOutcome {
    let mut tally = Tally::new("kittaneh_sum");
    for trial in 0..trials {
        let mut rng = rng_for(seed, 5, trial);
        let a = psd_matrix(dim, &mut rng);
        let b = psd_matrix(dim, &mut rng);
        let lhs = op_norm(&a.add(&b).expect("same dim"));
        let cross = op_norm(
            &psd_sqrt(&a)
                .expect("psd")
                .matmul(&psd_sqrt(&b).expect("psd"))
                .expect("same dim"),
        );
        tally.check(lhs, op_norm(&a).max(op_norm(&b)) + cross, tol);
    }
    tally.finish()
}

/// ||A + B||^2 <= 2 max{ |||A|^2 + |B|^2||, |||A*|^2 + |B*|^2|| } for any A, B.
pub fn run_norm_sum_squared(dim: usize, trials: usize, seed: u64, tol: f64) -> LemmaOutcome {
    let mut tally = Tally::new("norm_sum_squared");
    for trial in 0..trials {
        let mut rng = rng_for(seed, 6, trial);
        let a = gaussian_matrix(dim, &mut rng);
        let b = gaussian_matrix(dim, &mut rng);
        let lhs = op_norm(&a.add(&b).expect("same dim")).powi(2);
        let grams = op_norm(
            &a.adjoint()
                .matmul(&a)
                .unwrap()
                .add(&b.adjoint().matmul(&b).unwrap())
                .unwrap(),
        );
        let grams_star = op_norm(
            &a.matmul(&a.adjoint())
                .unwrap()
                .add(&b.matmul(&b.adjoint()).unwrap())
                .unwrap(),
        );
        tally.check(lhs, 2.0 * grams.max(grams_star), tol);
    }
    tally.finish()
}

/// Run all six lemma families.
pub fn run_lemma_suite(dim: usize, trials: usize, seed: u64, tol: f64) -> Vec<LemmaOutcome> {
    vec![
        run_mixed_schwarz(dim, trials, seed, tol),
        run_buzano(dim, trials, seed, tol),
        run_buzano_alpha(dim, trials, seed, tol),
        run_power_inequality(dim, trials, seed, tol),
        run_kittaneh_sum(dim, trials, seed, tol),
        run_norm_sum_squared(dim, trials, seed, tol),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_families_pass_briefly() {
        for outcome in run_lemma_suite(3, 200, 12345, 1e-9) {
            assert!(outcome.passed(), "{} failed {} times", outcome.name, outcome.failures);
        }
    }

    #[test]
    fn alpha_zero_matches_squared_buzano() {
        assert!(buzano_alpha_zero_agreement(4, 500, 7) <= 1e-12);
    }

    #[test]
    fn power_inequality_r1_is_equality() {
        let outcome = run_power_inequality(3, 100, 9, 1e-9);
        assert!(outcome.passed());
    }

    #[test]
    fn lemma_names_match_runners() {
        let outcomes = run_lemma_suite(2, 10, 1, 1e-9);
        let names: Vec<&str> = outcomes.iter().map(|o| o.name).collect();
        assert_eq!(names, LEMMA_NAMES.to_vec());
    }
}
