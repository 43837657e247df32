//! Floating-point ground truth for tensor representations. Everything here
//! is independent of the exact engine except for the list of conformal
//! weights it is compared against.

mod model;
mod rep;
mod sup;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

pub use model::{b_matrix, build_b, random_unit, BModel, EigenGroup, SpectrumCheck};
pub use rep::{build_rep, RepKind, RepModel};
pub use sup::{numeric_sup, SupEstimate, SupOptions};

use crate::ellipticity::{is_elliptic, OperatorSubset};
use crate::kato::KatoSolver;
use crate::numeric::{to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle needs n >= 3, got {0}")]
    Dimension(usize),
    #[error("unsupported representation: {0}")]
    Unsupported(String),
    #[error("eigenvalue grouping failed: {0}")]
    Grouping(String),
    #[error("operator set {0} does not fit the decomposition")]
    Subset(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CtildeReport {
    pub j_max: usize,
    pub symmetry_defect: f64,
    pub corollary_defect: f64,
}

pub fn check_ctilde_symmetry(bm: &BModel, j_max: usize, seed: u64) -> CtildeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let odd_max = if j_max % 2 == 1 { j_max } else { j_max.saturating_sub(1) };
    CtildeReport {
        j_max,
        symmetry_defect: bm.ctilde_symmetry_defect(j_max),
        corollary_defect: if odd_max == 0 { 0.0 } else { bm.corollary_defect(odd_max, 20, &mut rng) },
    }
}

/// Symbolic against numeric value for one operator set.
#[derive(Debug, Clone)]
pub struct OracleRow {
    pub set: OperatorSubset,
    pub elliptic: bool,
    pub symbolic: Rational,
    pub numeric_squared: f64,
    pub invariant_squared: f64,
}

impl OracleRow {
    pub fn defect(&self) -> f64 {
        (to_f64(&self.symbolic) - self.numeric_squared).abs()
    }
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub n: usize,
    pub kind: RepKind,
    pub dim_v: usize,
    pub spectrum: SpectrumCheck,
    pub generator_defect: f64,
    pub projector_defect: f64,
    pub projection_norm_defect: f64,
    pub bzero_defect: f64,
    pub ctilde: CtildeReport,
    pub rows: Vec<OracleRow>,
}

impl OracleReport {
    pub fn max_row_defect(&self) -> f64 {
        self.rows.iter().map(OracleRow::defect).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "I": r.set.to_json(),
                    "elliptic": r.elliptic,
                    "k_squared": r.symbolic.to_string(),
                    "k_squared_decimal": to_f64(&r.symbolic),
                    "numeric_sup_squared": r.numeric_squared,
                    "invariant_sup_squared": r.invariant_squared,
                    "defect": r.defect(),
                })
            })
            .collect();
        let spectrum: Vec<serde_json::Value> = self
            .spectrum
            .expected
            .iter()
            .zip(&self.spectrum.found)
            .map(|((w, dim), g)| {
                json!({
                    "w": w,
                    "expected_multiplicity": dim.to_string(),
                    "eigenvalue": g.value,
                    "multiplicity": g.multiplicity,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "rep": self.kind.to_string(),
            "dim_v": self.dim_v,
            "spectrum": spectrum,
            "multiplicities_match": self.spectrum.multiplicities_match,
            "eigenvalue_defect": self.spectrum.max_value_defect,
            "generator_defect": self.generator_defect,
            "projector_defect": self.projector_defect,
            "projection_norm_defect": self.projection_norm_defect,
            "bzero_defect": self.bzero_defect,
            "ctilde_symmetry_defect": self.ctilde.symmetry_defect,
            "corollary_defect": self.ctilde.corollary_defect,
            "rows": rows,
        })
    }
}

/// Runs every check on one model. `sets` defaults to all nonempty I.
pub fn run_oracle(
    n: usize,
    kind: RepKind,
    sets: Option<Vec<OperatorSubset>>,
    options: SupOptions,
) -> Result<OracleReport, OracleError> {
    let model = build_rep(n, kind)?;
    let bm = build_b(&model)?;
    let d = &bm.decomposition;
    let n_comp = d.N();
    let sets = sets.unwrap_or_else(|| OperatorSubset::all_nonempty(n_comp).collect());
    for s in &sets {
        if s.is_empty() || s.check_range(n_comp).is_err() {
            return Err(OracleError::Subset(s.to_string()));
        }
    }
    let solver = KatoSolver::new(d);
    let mut rows = Vec::with_capacity(sets.len());
    for set in sets {
        let elliptic = is_elliptic(d, &set).map_err(|e| OracleError::Subset(e.to_string()))?.is_elliptic;
        let symbolic = solver
            .solve(&set)
            .map_err(|e| OracleError::Subset(e.to_string()))?
            .k_squared;
        let hat = set.complement(n_comp);
        let estimate = numeric_sup(&bm, hat.indices(), options);
        let invariant_squared = if hat.is_empty() { 0.0 } else { bm.invariant_sup_squared(hat.indices()) };
        rows.push(OracleRow {
            set,
            elliptic,
            symbolic,
            numeric_squared: estimate.squared(),
            invariant_squared,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    Ok(OracleReport {
        n,
        kind: model.kind,
        dim_v: model.dim_v,
        spectrum: bm.spectrum_check(),
        generator_defect: model.max_commutator_defect().max(model.max_antisymmetry_defect()),
        projector_defect: bm.projector_defect(),
        projection_norm_defect: bm.projection_norm_defect(20, &mut rng),
        bzero_defect: bm.bzero_defect(100, &mut rng),
        ctilde: check_ctilde_symmetry(&bm, 4, options.seed),
        rows,
    })
}
