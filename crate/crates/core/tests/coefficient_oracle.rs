//! Recurrence coefficients against Taylor coefficients of the closed-form
//! solutions, extracted independently by a discrete Cauchy integral
//! `X(k) ≈ (1/(N ρ^k)) Σ_j x(t + ρω^j) ω^{−jk}`.

use ieldtm::problems::{Duffing, Problem, Robertson};
use ieldtm::stepper::build_coeff_table;
use ieldtm::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NODES: usize = 64;
const RADIUS: f64 = 1.0;
const DEPTH: usize = 8;

fn cauchy_coeffs<F>(f: F, t: f64, components: usize) -> Vec<Vec<f64>>
where
    F: Fn(Complex64) -> Vec<Complex64>,
{
    let samples: Vec<(Complex64, Vec<Complex64>)> = (0..NODES)
        .map(|j| {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / NODES as f64);
            (w, f(Complex64::new(t, 0.0) + w * RADIUS))
        })
        .collect();
    (0..=DEPTH)
        .map(|k| {
            (0..components)
                .map(|c| {
                    let sum: Complex64 = samples.iter().map(|(w, v)| v[c] * w.powi(-(k as i32))).sum();
                    sum.re / (NODES as f64 * RADIUS.powi(k as i32))
                })
                .collect()
        })
        .collect()
}

fn check<P: Problem, F>(problem: &P, exact: F, times: &[f64], depth: usize, tol: f64)
where
    F: Fn(Complex64) -> Vec<Complex64> + Copy,
{
    for &t in times {
        let state = problem.exact_solution(t).unwrap();
        let table = build_coeff_table(problem, t, &state, depth).unwrap();
        let oracle = cauchy_coeffs(exact, t, problem.dim());
        for k in 0..=depth {
            for c in 0..problem.dim() {
                let (got, want) = (table.coeff(k)[c], oracle[k][c]);
                assert!(
                    (got - want).abs() <= tol,
                    "{} t={t} k={k} component {c}: {got:e} vs {want:e}",
                    problem.name()
                );
            }
        }
    }
}

fn random_times(seed: u64, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20).map(|_| rng.random_range(lo..hi)).collect()
}

#[test]
fn logistic_duffing_coefficients() {
    // x = 1/(1 + e^{−t}), x' = x(1 − x); poles are π away from the real axis.
    let exact = |z: Complex64| {
        let x = (Complex64::new(1.0, 0.0) + (-z).exp()).inv();
        vec![x, x * (Complex64::new(1.0, 0.0) - x)]
    };
    check(&Duffing::logistic(), exact, &random_times(5, -3.0, 3.0), DEPTH, 1e-10);
}

#[test]
fn robertson_coefficients() {
    let exact = |z: Complex64| {
        let e = (-z).exp();
        vec![e, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0) - e]
    };
    // Round-off in X2 (exactly zero in theory) excites the fast mode
    // λ ≈ −1e4·x3, whose coefficients grow like λ^k/k!; past k = 4 that
    // amplification exceeds the tolerance.
    check(&Robertson::new(), exact, &random_times(6, 0.0, 4.0), 4, 1e-10);
}
