//! Exhaustive identity and consistency checks over weight grids. Each check
//! counts its cases and keeps the first counterexample it meets.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::casimir::{
    casimir_number, ptr_atilde, ptr_atilde_from_series, ptr_btilde_direct, ptr_btilde_series,
    power_sum_identity_defect, relative_dimension, weyl_dimension, weyl_ratio,
};
use crate::decomposition::{decompose, virtual_chain_ok, virtual_weights, CaseTag, Decomposition, VirtualKind};
use crate::ellipticity::{
    check_nonelliptic_necessary, elliptic_routes, is_elliptic, minimal_elliptic_sets, ne_sets, OperatorSubset,
};
use crate::kato::{closed_form_matches, depth, vertex_values, KatoSolver};
use crate::numeric::{half, int, power_sum, rat, Rational};
use crate::weights::{weight_grid, DominantWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Decomposition,
    Ellipticity,
    Vertices,
    Kato,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Decomposition => "decomposition",
            Suite::Ellipticity => "ellipticity",
            Suite::Vertices => "vertices",
            Suite::Kato => "kato",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "identities" => Suite::Identities,
            "decomposition" => Suite::Decomposition,
            "ellipticity" => Suite::Ellipticity,
            "vertices" => Suite::Vertices,
            "kato" => Suite::Kato,
            "all" => Suite::All,
            other => return Err(format!("unknown suite '{other}'")),
        })
    }
}

/// Every dominant weight with n in `dims` and |entries| ≤ max_twice/2.
#[derive(Debug, Clone)]
pub struct Grid {
    pub dims: RangeInclusive<usize>,
    pub max_twice: i64,
}

impl Grid {
    pub fn new(dims: RangeInclusive<usize>, max_twice: i64) -> Self {
        Grid { dims, max_twice }
    }

    pub fn weights(&self) -> Vec<DominantWeight> {
        self.dims.clone().flat_map(|n| weight_grid(n, self.max_twice)).collect()
    }

    pub fn decompositions(&self) -> Vec<Decomposition> {
        self.weights().par_iter().map(decompose).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.name, self.cases, self.failures)?;
        if let Some(first) = &self.first_failure {
            write!(f, ": {first}")?;
        }
        Ok(())
    }
}

/// Accumulates (cases, failures) per decomposition, in parallel, keeping
/// the failure message of the earliest weight in grid order.
fn run_check<F>(name: &'static str, decs: &[Decomposition], f: F) -> CheckResult
where
    F: Fn(&Decomposition) -> (usize, Vec<String>) + Sync,
{
    let per: Vec<(usize, Vec<String>)> = decs.par_iter().map(|d| f(d)).collect();
    let cases = per.iter().map(|p| p.0).sum();
    let failures = per.iter().map(|p| p.1.len()).sum();
    let first_failure = per.into_iter().find_map(|p| p.1.into_iter().next());
    CheckResult {
        name,
        cases,
        failures,
        first_failure,
    }
}

fn tag(d: &Decomposition) -> String {
    format!("n={} λ={}", d.n(), d.lambda)
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        out.push_str(&format!(
            "suite {}: {passed}/{} checks passed\n",
            self.suite,
            self.checks.len()
        ));
        out
    }
}

// ---- identities ----------------------------------------------------------

pub fn check_casimir_corollaries(decs: &[Decomposition]) -> CheckResult {
    run_check("linear and cubic power sums of w̃", decs, |d| {
        let n = d.n();
        let wt = d.w_tilde();
        let shift = rat(n as i64 - 1, 2);
        let mut lin = power_sum(&wt, 1) - &shift;
        let mut cub = power_sum(&wt, 3) - num_traits::pow(shift, 3);
        if !d.is_odd() {
            lin -= half();
            cub -= num_traits::pow(half(), 3);
        }
        let c = casimir_number(&d.lambda);
        let mut bad = Vec::new();
        if !lin.is_zero() {
            bad.push(format!("{}: linear sum off by {lin}", tag(d)));
        }
        if cub != int(3) * &c {
            bad.push(format!("{}: cubic sum {cub} != 3c = {}", tag(d), int(3) * c));
        }
        (2, bad)
    })
}

pub fn check_power_sum_identities(decs: &[Decomposition], max_exponent: u32) -> CheckResult {
    run_check("odd power sums against P_ℓ", decs, |d| {
        let ks: Vec<u32> = (0..).take_while(|k| 2 * k + 1 <= max_exponent).collect();
        let bad = ks
            .iter()
            .filter_map(|&k| {
                let defect = power_sum_identity_defect(d, k);
                (!defect.is_zero()).then(|| format!("{}: exponent {} off by {defect}", tag(d), 2 * k + 1))
            })
            .collect();
        (ks.len(), bad)
    })
}

pub fn check_relative_dimension_sum(decs: &[Decomposition]) -> CheckResult {
    run_check("relative dimensions sum to n", decs, |d| {
        let sum = (1..=d.N())
            .map(|j| relative_dimension(d, j))
            .fold(Rational::zero(), |a, b| a + b);
        let ok = sum == int(d.n() as i64);
        (1, if ok { vec![] } else { vec![format!("{}: sum is {sum}", tag(d))] })
    })
}

pub fn check_relative_dimension_weyl(decs: &[Decomposition]) -> CheckResult {
    run_check("relative dimension formula equals Weyl ratio", decs, |d| {
        let bad = (1..=d.N())
            .filter_map(|j| {
                let a = relative_dimension(d, j);
                let b = weyl_ratio(d, j);
                (a != b).then(|| format!("{}: component {j}: {a} vs {b}", tag(d)))
            })
            .collect();
        (d.N(), bad)
    })
}

pub fn check_ptr_atilde(decs: &[Decomposition], max_j: usize) -> CheckResult {
    run_check("ptr Ã_j closed form equals series assembly", decs, |d| {
        let bad = (0..=max_j)
            .filter_map(|j| {
                let a = ptr_atilde(d, j);
                let b = ptr_atilde_from_series(d, j);
                (a != b).then(|| format!("{}: j={j}: {a} vs {b}", tag(d)))
            })
            .collect();
        (max_j + 1, bad)
    })
}

pub fn check_ptr_btilde(decs: &[Decomposition], max_ell: usize) -> CheckResult {
    run_check("generating series equals Weyl-weighted power sums", decs, |d| {
        let series = ptr_btilde_series(d, max_ell);
        let bad = (0..=max_ell)
            .filter_map(|l| {
                let direct = ptr_btilde_direct(d, l as u32);
                (direct != series[l]).then(|| format!("{}: ℓ={l}: {} vs {direct}", tag(d), series[l]))
            })
            .collect();
        (max_ell + 1, bad)
    })
}

pub fn identities_suite(grid: &Grid) -> SuiteReport {
    let decs = grid.decompositions();
    SuiteReport {
        suite: Suite::Identities,
        checks: vec![
            check_casimir_corollaries(&decs),
            check_power_sum_identities(&decs, 9),
            check_relative_dimension_sum(&decs),
            check_relative_dimension_weyl(&decs),
            check_ptr_atilde(&decs, 8),
            check_ptr_btilde(&decs, 8),
        ],
    }
}

// ---- decomposition -------------------------------------------------------

pub fn check_dimension_sum(decs: &[Decomposition]) -> CheckResult {
    run_check("Σ dim W_j = n·dim V", decs, |d| {
        let dim_v = weyl_dimension(d.lambda.entries(), d.n()).expect("dominant");
        let total: BigInt = d.components.iter().map(|c| c.dim.clone()).sum();
        let ok = total == dim_v * BigInt::from(d.n());
        (1, if ok { vec![] } else { vec![format!("{}: total {total}", tag(d))] })
    })
}

pub fn check_virtual_chain(decs: &[Decomposition]) -> CheckResult {
    run_check("virtual weights strictly decrease", decs, |d| {
        let ok = virtual_chain_ok(&d.lambda);
        (1, if ok { vec![] } else { vec![tag(d)] })
    })
}

pub fn check_cancellation(decs: &[Decomposition]) -> CheckResult {
    run_check("w̃^{i+1,+} + w̃^{i,−} = 0 when λ_i = λ_{i+1}", decs, |d| {
        let shift = rat(d.n() as i64 - 1, 2);
        let v = virtual_weights(&d.lambda);
        let wt = |kind: VirtualKind| &v.iter().find(|x| x.kind == kind).expect("all kinds present").w + &shift;
        let e = d.lambda.entries();
        let mut cases = 0;
        let mut bad = Vec::new();
        for i in 1..e.len() {
            if e[i - 1] == e[i] {
                cases += 1;
                let s = wt(VirtualKind::Plus(i + 1)) + wt(VirtualKind::Minus(i));
                if !s.is_zero() {
                    bad.push(format!("{}: i={i}: sum {s}", tag(d)));
                }
            }
        }
        (cases, bad)
    })
}

/// w̃_j + w̃_{N+2−j} < 0 for every NE pair.
pub fn check_pairing_sign(decs: &[Decomposition]) -> CheckResult {
    run_check("paired translated weights have negative sum", decs, |d| {
        let pairs = crate::ellipticity::ne_pairs(d);
        let bad = pairs
            .iter()
            .filter_map(|&(a, b)| {
                let s = d.wt(a) + d.wt(b);
                (!s.is_negative()).then(|| format!("{}: pair ({a},{b}) sums to {s}", tag(d)))
            })
            .collect();
        (pairs.len(), bad)
    })
}

/// The two ratio orderings used to locate J_i^min and J_i^max.
pub fn check_useful_inequalities(decs: &[Decomposition]) -> CheckResult {
    run_check("ratio orderings for paired weights", decs, |d| {
        let n_comp = d.N();
        let mut cases = 0;
        let mut bad = Vec::new();
        for (j, p) in crate::ellipticity::ne_pairs(d) {
            for i in 1..=n_comp {
                if i == j || i == p {
                    continue;
                }
                cases += 1;
                let wi = d.wt(i);
                let a = (wi + d.wt(j)) / (wi - d.wt(p));
                let b = (wi + d.wt(p)) / (wi - d.wt(j));
                let ok = if i < j || p < i {
                    a > b && b.is_positive()
                } else {
                    b > a && a.is_positive()
                };
                if !ok {
                    bad.push(format!("{}: i={i}, j={j}: {a} vs {b}", tag(d)));
                }
            }
        }
        (cases, bad)
    })
}

pub fn check_mirror_invariance(weights: &[DominantWeight]) -> CheckResult {
    let decs: Vec<Decomposition> = weights
        .iter()
        .filter(|l| l.n() % 2 == 0 && !l.entries().last().expect("rank ≥ 1").is_zero())
        .map(decompose)
        .collect();
    run_check("mirror weight decomposes identically", &decs, |d| {
        let m = decompose(&d.lambda.mirror());
        let ok = m.w() == d.w() && m.components.iter().map(|c| &c.dim).eq(d.components.iter().map(|c| &c.dim));
        (1, if ok { vec![] } else { vec![tag(d)] })
    })
}

pub fn check_profile_round_trip(weights: &[DominantWeight]) -> CheckResult {
    let decs: Vec<Decomposition> = weights.iter().map(decompose).collect();
    run_check("weight profile round trip", &decs, |d| {
        let ok = d.lambda.profile().reconstruct() == d.lambda.entries();
        (1, if ok { vec![] } else { vec![tag(d)] })
    })
}

pub fn decomposition_suite(grid: &Grid) -> SuiteReport {
    let weights = grid.weights();
    let decs: Vec<Decomposition> = weights.par_iter().map(decompose).collect();
    SuiteReport {
        suite: Suite::Decomposition,
        checks: vec![
            check_dimension_sum(&decs),
            check_virtual_chain(&decs),
            check_cancellation(&decs),
            check_pairing_sign(&decs),
            check_useful_inequalities(&decs),
            check_mirror_invariance(&weights),
            check_profile_round_trip(&weights),
        ],
    }
}

// ---- ellipticity ---------------------------------------------------------

pub fn check_elliptic_routes(decs: &[Decomposition], max_n_comp: usize) -> CheckResult {
    let decs: Vec<Decomposition> = decs.iter().filter(|d| d.N() <= max_n_comp).cloned().collect();
    run_check("minimal-elliptic and maximal-non-elliptic routes agree", &decs, |d| {
        let mut cases = 0;
        let mut bad = Vec::new();
        for set in OperatorSubset::all_nonempty(d.N()) {
            cases += 1;
            let (a, b) = elliptic_routes(d, &set);
            if a != b {
                bad.push(format!("{}: I={set}: {a} vs {b}", tag(d)));
            }
        }
        (cases, bad)
    })
}

/// Sets containing every j with w_j ≥ 0, or every j with w_j ≤ 0.
pub fn check_sign_sets_elliptic(decs: &[Decomposition]) -> CheckResult {
    run_check("sign-determined sets are elliptic", decs, |d| {
        let w = d.w();
        let nonneg = OperatorSubset::new((1..=d.N()).filter(|&j| !w[j - 1].is_negative()));
        let nonpos = OperatorSubset::new((1..=d.N()).filter(|&j| !w[j - 1].is_positive()));
        let mut cases = 0;
        let mut bad = Vec::new();
        for set in [nonneg, nonpos] {
            if set.is_empty() {
                continue;
            }
            cases += 1;
            if !is_elliptic(d, &set).expect("in range").is_elliptic {
                bad.push(format!("{}: {set} classified non-elliptic", tag(d)));
            }
        }
        (cases, bad)
    })
}

pub fn check_ne_classification(decs: &[Decomposition]) -> CheckResult {
    run_check("NE members are non-elliptic outside the exception", decs, |d| {
        let mut cases = 0;
        let mut bad = Vec::new();
        let exception = d.is_half_integral_exception();
        for j in ne_sets(d) {
            if j.is_empty() {
                continue;
            }
            cases += 1;
            let elliptic = is_elliptic(d, &j).expect("in range").is_elliptic;
            let expected = exception && j.contains(d.nu + 1);
            if elliptic != expected {
                bad.push(format!("{}: J={j} elliptic={elliptic}", tag(d)));
            }
        }
        (cases, bad)
    })
}

pub fn check_branching_necessity(decs: &[Decomposition]) -> CheckResult {
    let decs: Vec<Decomposition> = decs.iter().filter(|d| d.n() >= 4).cloned().collect();
    run_check("branching condition holds for minimal elliptic sets", &decs, |d| {
        let sets = minimal_elliptic_sets(d);
        let bad = sets
            .iter()
            .filter(|s| !check_nonelliptic_necessary(d, s).unwrap_or(false))
            .map(|s| format!("{}: {s}", tag(d)))
            .collect();
        (sets.len(), bad)
    })
}

pub fn ellipticity_suite(grid: &Grid) -> SuiteReport {
    let decs = grid.decompositions();
    SuiteReport {
        suite: Suite::Ellipticity,
        checks: vec![
            check_elliptic_routes(&decs, 6),
            check_sign_sets_elliptic(&decs),
            check_ne_classification(&decs),
            check_branching_necessity(&decs),
        ],
    }
}

// ---- vertices ------------------------------------------------------------

fn subsets_of_size(n: usize, k: usize) -> Vec<OperatorSubset> {
    OperatorSubset::all_nonempty(n)
        .filter(|s| s.len() == k)
        .chain((k == 0).then(OperatorSubset::empty))
        .collect()
}

/// Σ_{i∉J} π_i(Q_J) = 1 and π ≥ 0 on every NE vertex.
pub fn check_vertex_feasibility(decs: &[Decomposition]) -> CheckResult {
    run_check("NE vertices are feasible with unit total", decs, |d| {
        let mut cases = 0;
        let mut bad = Vec::new();
        for j in ne_sets(d) {
            cases += 1;
            let pi = vertex_values(d, &j);
            let total = pi.iter().fold(Rational::zero(), |a, b| a + b);
            if total != int(1) {
                bad.push(format!("{}: J={j}: total {total}", tag(d)));
            }
            let skip = d.is_half_integral_exception() && j.contains(d.nu + 1);
            if !skip && pi.iter().any(Signed::is_negative) {
                bad.push(format!("{}: J={j}: negative π", tag(d)));
            }
        }
        (cases, bad)
    })
}

/// Every elliptic J of NE size gives a vertex with some π_i < 0.
pub fn check_elliptic_vertices_infeasible(decs: &[Decomposition]) -> CheckResult {
    run_check("elliptic index sets give infeasible vertices", decs, |d| {
        let size = depth(d) - 1;
        let mut cases = 0;
        let mut bad = Vec::new();
        if size == 0 {
            return (0, bad);
        }
        for j in subsets_of_size(d.N(), size) {
            if d.is_half_integral_exception() && j.contains(d.nu + 1) {
                continue;
            }
            if !is_elliptic(d, &j).expect("in range").is_elliptic {
                continue;
            }
            cases += 1;
            let pi = vertex_values(d, &j);
            if !pi.iter().any(Signed::is_negative) {
                bad.push(format!("{}: J={j} is feasible", tag(d)));
            }
        }
        (cases, bad)
    })
}

pub fn vertices_suite(grid: &Grid) -> SuiteReport {
    let decs = grid.decompositions();
    SuiteReport {
        suite: Suite::Vertices,
        checks: vec![check_vertex_feasibility(&decs), check_elliptic_vertices_infeasible(&decs)],
    }
}

// ---- kato ----------------------------------------------------------------

pub fn check_dual_forms(decs: &[Decomposition]) -> CheckResult {
    run_check("max form equals one minus min form", decs, |d| {
        let solver = KatoSolver::new(d);
        let mut cases = 0;
        let mut bad = Vec::new();
        for set in OperatorSubset::all_nonempty(d.N()) {
            cases += 1;
            let f = solver.dual_forms(&set).expect("in range");
            if f.max_form != f.one_minus_min_form {
                bad.push(format!("{}: I={set}: {} vs {}", tag(d), f.max_form, f.one_minus_min_form));
            }
        }
        (cases, bad)
    })
}

/// Closed forms equal the general value where it is sharp; the dedicated
/// half-integral values may only improve on it.
pub fn check_closed_forms(decs: &[Decomposition]) -> CheckResult {
    run_check("closed forms equal the general value", decs, |d| {
        let solver = KatoSolver::new(d);
        let mut cases = 0;
        let mut bad = Vec::new();
        for set in OperatorSubset::all_nonempty(d.N()) {
            let matches = closed_form_matches(d, &set);
            if matches.is_empty() {
                continue;
            }
            let k = solver.solve(&set).expect("in range");
            for (label, v) in matches {
                cases += 1;
                let ok = if label.starts_with("half-integral") {
                    v <= k.k_squared
                } else {
                    !k.sharp || v == k.k_squared
                };
                if !ok {
                    bad.push(format!("{}: I={set} [{label}]: {v} vs {}", tag(d), k.k_squared));
                }
            }
        }
        (cases, bad)
    })
}

pub fn check_monotonicity(decs: &[Decomposition]) -> CheckResult {
    run_check("k² does not increase when I grows", decs, |d| {
        let solver = KatoSolver::new(d);
        let n_comp = d.N();
        let values: Vec<(OperatorSubset, Rational)> = OperatorSubset::all_nonempty(n_comp)
            .map(|s| {
                let k = solver.solve(&s).expect("in range").k_squared;
                (s, k)
            })
            .collect();
        let lookup = |s: &OperatorSubset| &values.iter().find(|(t, _)| t == s).expect("all sets present").1;
        let mut cases = 0;
        let mut bad = Vec::new();
        for (s, k) in &values {
            for extra in 1..=n_comp {
                if s.contains(extra) {
                    continue;
                }
                cases += 1;
                let bigger = OperatorSubset::new(s.indices().iter().copied().chain([extra]));
                let kb = lookup(&bigger);
                if kb > k {
                    bad.push(format!("{}: k²{bigger} = {kb} > k²{s} = {k}", tag(d)));
                }
            }
        }
        (cases, bad)
    })
}

pub fn check_non_elliptic_unit(decs: &[Decomposition]) -> CheckResult {
    run_check("non-elliptic sets have k² = 1", decs, |d| {
        let solver = KatoSolver::new(d);
        let mut cases = 0;
        let mut bad = Vec::new();
        for set in OperatorSubset::all_nonempty(d.N()) {
            if is_elliptic(d, &set).expect("in range").is_elliptic {
                continue;
            }
            cases += 1;
            let k = solver.solve(&set).expect("in range").k_squared;
            if k != int(1) {
                bad.push(format!("{}: I={set}: {k}", tag(d)));
            }
        }
        (cases, bad)
    })
}

/// (w̃_ν + w̃_{k+1})(w̃_{ν+1} − w̃_{2ν−k}) > (w̃_{ν+1} + w̃_{k+1})(w̃_ν − w̃_{2ν−k}) > 0
/// for N = 2ν−1 and k = 1..ν−2.
pub fn check_ratio_lemma(decs: &[Decomposition]) -> CheckResult {
    let decs: Vec<Decomposition> = decs
        .iter()
        .filter(|d| d.case_tag == CaseTag::TwoNuMinusOne && d.nu >= 3)
        .cloned()
        .collect();
    run_check("ratio lemma for N = 2ν−1", &decs, |d| {
        let nu = d.nu;
        let mut bad = Vec::new();
        for k in 1..=nu - 2 {
            let lhs = (d.wt(nu) + d.wt(k + 1)) * (d.wt(nu + 1) - d.wt(2 * nu - k));
            let rhs = (d.wt(nu + 1) + d.wt(k + 1)) * (d.wt(nu) - d.wt(2 * nu - k));
            if !(lhs > rhs && rhs.is_positive()) {
                bad.push(format!("{}: k={k}: {lhs} vs {rhs}", tag(d)));
            }
        }
        (nu - 2, bad)
    })
}

pub fn kato_suite(grid: &Grid) -> SuiteReport {
    let decs = grid.decompositions();
    SuiteReport {
        suite: Suite::Kato,
        checks: vec![
            check_dual_forms(&decs),
            check_closed_forms(&decs),
            check_monotonicity(&decs),
            check_non_elliptic_unit(&decs),
            check_ratio_lemma(&decs),
        ],
    }
}

/// The grid each suite uses when none is given.
pub fn default_grid(suite: Suite) -> Grid {
    match suite {
        Suite::Identities => Grid::new(3..=11, 7),
        Suite::Decomposition => Grid::new(3..=10, 8),
        Suite::Ellipticity => Grid::new(3..=11, 6),
        Suite::Vertices | Suite::Kato | Suite::All => Grid::new(3..=9, 6),
    }
}

pub fn run_suite(suite: Suite, grid: Option<Grid>) -> Vec<SuiteReport> {
    let pick = |s: Suite| grid.clone().unwrap_or_else(|| default_grid(s));
    match suite {
        Suite::Identities => vec![identities_suite(&pick(suite))],
        Suite::Decomposition => vec![decomposition_suite(&pick(suite))],
        Suite::Ellipticity => vec![ellipticity_suite(&pick(suite))],
        Suite::Vertices => vec![vertices_suite(&pick(suite))],
        Suite::Kato => vec![kato_suite(&pick(suite))],
        Suite::All => [
            Suite::Identities,
            Suite::Decomposition,
            Suite::Ellipticity,
            Suite::Vertices,
            Suite::Kato,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, grid.clone()))
        .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_pass() {
        let grid = Grid::new(3..=6, 4);
        for report in run_suite(Suite::All, Some(grid)) {
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Identities, Suite::Kato, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
