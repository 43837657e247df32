//! Alternating maximization of |Π_S(α⊗v)| over pairs of unit vectors.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::model::{random_unit, BModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupOptions {
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
}

impl Default for SupOptions {
    fn default() -> Self {
        SupOptions {
            seed: 0,
            restarts: 32,
            max_iterations: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupEstimate {
    /// Best value of |Π_S(α⊗v)| found.
    pub value: f64,
    pub best_restart: usize,
    pub total_iterations: usize,
    pub converged_restarts: usize,
}

impl SupEstimate {
    pub fn squared(&self) -> f64 {
        self.value * self.value
    }
}

fn top_eigenvector(m: DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(m);
    let k = eig.eigenvalues.imax();
    (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned())
}

struct Run {
    value: f64,
    iterations: usize,
    converged: bool,
}

fn one_restart(bm: &BModel, p: &DMatrix<f64>, seed: u64, max_iterations: usize) -> Run {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = random_unit(bm.dim_v, &mut rng);
    let mut last = f64::NEG_INFINITY;
    for it in 1..=max_iterations {
        let (_, alpha) = top_eigenvector(bm.contract_v(p, &v));
        let (value, b) = top_eigenvector(bm.contract_alpha(p, &alpha));
        v = b;
        if (value - last).abs() < 1e-14 {
            return Run {
                value,
                iterations: it,
                converged: true,
            };
        }
        last = value;
    }
    Run {
        value: last,
        iterations: max_iterations,
        converged: false,
    }
}

/// Estimates sup |Π_S(α⊗v)| over unit α, v. `set` holds 1-based component
/// indices. Each restart draws from its own seeded stream, so the result
/// does not depend on scheduling.
pub fn numeric_sup(bm: &BModel, set: &[usize], options: SupOptions) -> SupEstimate {
    if set.is_empty() {
        return SupEstimate {
            value: 0.0,
            best_restart: 0,
            total_iterations: 0,
            converged_restarts: options.restarts,
        };
    }
    let p = bm.projector_onto(set);
    let runs: Vec<Run> = (0..options.restarts)
        .into_par_iter()
        .map(|r| one_restart(bm, &p, options.seed.wrapping_add(r as u64), options.max_iterations))
        .collect();
    let (best_restart, best) = runs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.value.total_cmp(&b.1.value).then(b.0.cmp(&a.0)))
        .expect("at least one restart");
    SupEstimate {
        value: best.value.max(0.0).sqrt(),
        best_restart,
        total_iterations: runs.iter().map(|r| r.iterations).sum(),
        converged_restarts: runs.iter().filter(|r| r.converged).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::model::build_b;
    use super::super::rep::{build_rep, RepKind};
    use super::*;

    #[test]
    fn standard_dim4() {
        let bm = build_b(&build_rep(4, RepKind::Standard).unwrap()).unwrap();
        let opts = SupOptions::default();
        let s = numeric_sup(&bm, &[2, 3], opts);
        assert!((s.value - 0.5f64.sqrt()).abs() < 1e-7);
        let s = numeric_sup(&bm, &[1], opts);
        assert!((s.squared() - 0.75).abs() < 1e-7);
    }

    #[test]
    fn two_forms_dim5() {
        let bm = build_b(&build_rep(5, RepKind::LambdaP(2)).unwrap()).unwrap();
        let s = numeric_sup(&bm, &[2, 3], SupOptions::default());
        assert!((s.squared() - 1.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn reproducible() {
        let bm = build_b(&build_rep(4, RepKind::Sym2Traceless).unwrap()).unwrap();
        let opts = SupOptions {
            seed: 11,
            restarts: 8,
            max_iterations: 200,
        };
        assert_eq!(numeric_sup(&bm, &[1, 3], opts), numeric_sup(&bm, &[1, 3], opts));
    }
}
