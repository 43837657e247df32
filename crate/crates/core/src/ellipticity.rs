//! Which Stein–Weiss operators P_I are injectively elliptic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::decomposition::{CaseTag, Decomposition};
use crate::numeric::HalfInt;
use crate::weights::format_entries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EllipticityError {
    #[error("operator index set is empty")]
    Empty,
    #[error("index {index} is outside 1..={n_components}")]
    OutOfRange { index: usize, n_components: usize },
    #[error("malformed index list {0:?}")]
    Malformed(String),
    #[error("branching needs n >= 4 (got n = {0})")]
    BranchingDimension(usize),
}

/// A set of 1-based component indices, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OperatorSubset(Vec<usize>);

impl OperatorSubset {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        OperatorSubset(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        OperatorSubset(Vec::new())
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        OperatorSubset((1..=n).collect())
    }

    /// All non-empty subsets of `{1..n}`, ordered by bitmask.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = OperatorSubset> {
        (1u64..(1u64 << n)).map(move |mask| {
            OperatorSubset((1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &OperatorSubset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self, n: usize) -> OperatorSubset {
        OperatorSubset((1..=n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn intersect(&self, other: &OperatorSubset) -> OperatorSubset {
        OperatorSubset(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn check_range(&self, n: usize) -> Result<(), EllipticityError> {
        match self.0.iter().find(|&&i| i == 0 || i > n) {
            Some(&index) => Err(EllipticityError::OutOfRange {
                index,
                n_components: n,
            }),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }
}

impl fmt::Display for OperatorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for OperatorSubset {
    type Err = EllipticityError;

    /// Accepts `1,3`, `{1,3}` or the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() {
            return Ok(OperatorSubset::empty());
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| EllipticityError::Malformed(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OperatorSubset::new)
    }
}

/// The index pairs `{j, N+2-j}` whose choices build the NE family.
pub fn ne_pairs(d: &Decomposition) -> Vec<(usize, usize)> {
    let n_comp = d.N();
    let upper = match d.case_tag {
        CaseTag::TwoNuPlusOne => d.nu + 1,
        _ => d.nu,
    };
    (2..=upper).map(|j| (j, n_comp + 2 - j)).collect()
}

pub fn minimal_elliptic_sets(d: &Decomposition) -> Vec<OperatorSubset> {
    let n_comp = d.N();
    let nu = d.nu;
    let mut out = vec![OperatorSubset::new([1])];
    let middle_alone = match d.case_tag {
        CaseTag::TwoNu => true,
        CaseTag::TwoNuPlusOne => d.lambda.is_properly_half_integral(),
        CaseTag::TwoNuMinusOne => false,
    };
    if middle_alone {
        out.push(OperatorSubset::new([nu + 1]));
    }
    for j in 2..=nu {
        out.push(OperatorSubset::new([j, n_comp + 2 - j]));
    }
    if d.case_tag == CaseTag::TwoNuPlusOne && d.lambda.is_integral() {
        out.push(OperatorSubset::new([nu + 1, nu + 2]));
    }
    // N = 1: the single set {1}; never emit indices beyond N
    out.retain(|s| s.check_range(n_comp).is_ok());
    out
}

/// Lazily enumerates NE: one index from each pair, the first pair varying
/// slowest and the smaller index chosen first.
pub struct NeSets {
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for NeSets {
    type Item = OperatorSubset;

    fn next(&mut self) -> Option<OperatorSubset> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let p = self.pairs.len();
        let chosen = self.pairs.iter().enumerate().map(|(k, &(lo, hi))| {
            if mask & (1 << (p - 1 - k)) != 0 {
                hi
            } else {
                lo
            }
        });
        Some(OperatorSubset::new(chosen))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for NeSets {}

pub fn ne_sets(d: &Decomposition) -> NeSets {
    let pairs = ne_pairs(d);
    let end = 1u64 << pairs.len();
    NeSets {
        pairs,
        next: 0,
        end,
    }
}

pub fn maximal_non_elliptic_sets(d: &Decomposition) -> Vec<OperatorSubset> {
    let all = ne_sets(d);
    if d.is_half_integral_exception() {
        let middle = d.nu + 1;
        all.filter(|s| !s.contains(middle)).collect()
    } else {
        all.collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A minimal elliptic set contained in I.
    MinimalElliptic(OperatorSubset),
    /// A maximal non-elliptic set containing I.
    MaximalNonElliptic(OperatorSubset),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticityReport {
    pub is_elliptic: bool,
    pub witness: Witness,
}

impl EllipticityReport {
    pub fn witness_set(&self) -> &OperatorSubset {
        match &self.witness {
            Witness::MinimalElliptic(s) | Witness::MaximalNonElliptic(s) => s,
        }
    }
}

pub fn is_elliptic(d: &Decomposition, set: &OperatorSubset) -> Result<EllipticityReport, EllipticityError> {
    if set.is_empty() {
        return Err(EllipticityError::Empty);
    }
    set.check_range(d.N())?;
    let by_minimal = minimal_elliptic_sets(d).into_iter().find(|m| m.is_subset(set));
    let by_maximal = maximal_non_elliptic_sets(d).into_iter().find(|m| set.is_subset(m));
    assert!(
        by_minimal.is_some() != by_maximal.is_some(),
        "ellipticity routes disagree for {set} on {}",
        d.lambda
    );
    Ok(match (by_minimal, by_maximal) {
        (Some(m), _) => EllipticityReport {
            is_elliptic: true,
            witness: Witness::MinimalElliptic(m),
        },
        (None, Some(m)) => EllipticityReport {
            is_elliptic: false,
            witness: Witness::MaximalNonElliptic(m),
        },
        (None, None) => unreachable!(),
    })
}

/// Both routes separately, without the agreement assertion; for tests.
pub fn elliptic_routes(d: &Decomposition, set: &OperatorSubset) -> (bool, bool) {
    let a = minimal_elliptic_sets(d).iter().any(|m| m.is_subset(set));
    let b = !maximal_non_elliptic_sets(d).iter().any(|m| set.is_subset(m));
    (a, b)
}

/// Interlacing branching rule from so(n) to so(n−1). The input may have a
/// negative last entry when n is even.
pub fn branch_to_so_n_minus_1(mu: &[HalfInt], n: usize) -> Result<Vec<Vec<HalfInt>>, EllipticityError> {
    if n < 4 {
        return Err(EllipticityError::BranchingDimension(n));
    }
    let m = n / 2;
    let mut out = Vec::new();
    let mut current = Vec::new();
    if n % 2 == 1 {
        // λ1 ≥ μ1 ≥ λ2 ≥ … ≥ λm ≥ |μm|, target rank m
        branch_rec(mu, m, true, &mut current, &mut out);
    } else {
        // λ1 ≥ μ1 ≥ … ≥ μ_{m−1} ≥ |λm|, target rank m − 1
        let mut upper: Vec<HalfInt> = mu.to_vec();
        upper[m - 1] = upper[m - 1].abs();
        branch_rec(&upper, m - 1, false, &mut current, &mut out);
    }
    Ok(out)
}

fn branch_rec(
    lam: &[HalfInt],
    len: usize,
    last_signed: bool,
    current: &mut Vec<HalfInt>,
    out: &mut Vec<Vec<HalfInt>>,
) {
    let k = current.len();
    if k == len {
        out.push(current.clone());
        return;
    }
    let hi = lam[k].clone();
    let lo = if last_signed && k + 1 == len {
        -&lam[k]
    } else {
        lam[k + 1].clone()
    };
    let mut v = hi;
    while v >= lo {
        current.push(v.clone());
        branch_rec(lam, len, last_signed, current, out);
        current.pop();
        v = v.plus_int(-1);
    }
}

/// Necessary condition for ellipticity: every so(n−1) constituent of V
/// occurs in some W_j with j ∈ I.
pub fn check_nonelliptic_necessary(d: &Decomposition, set: &OperatorSubset) -> Result<bool, EllipticityError> {
    let n = d.n();
    set.check_range(d.N())?;
    let v_branch: BTreeSet<Vec<HalfInt>> =
        branch_to_so_n_minus_1(d.lambda.entries(), n)?.into_iter().collect();
    let mut covered: BTreeSet<Vec<HalfInt>> = BTreeSet::new();
    for &j in set.indices() {
        for t in &d.components[j - 1].targets {
            covered.extend(branch_to_so_n_minus_1(&t.target_entries, n)?);
        }
    }
    Ok(v_branch.is_subset(&covered))
}

pub fn format_branch(weights: &[Vec<HalfInt>]) -> String {
    let parts: Vec<String> = weights.iter().map(|w| format_entries(w)).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::weights::DominantWeight;

    fn dec(n: usize, e: &str) -> Decomposition {
        decompose(&DominantWeight::parse(n, e).unwrap())
    }

    fn sets(v: &[&[usize]]) -> Vec<OperatorSubset> {
        v.iter().map(|s| OperatorSubset::new(s.iter().copied())).collect()
    }

    fn s(v: &[usize]) -> OperatorSubset {
        OperatorSubset::new(v.iter().copied())
    }

    #[test]
    fn minimal_elliptic_examples() {
        assert_eq!(minimal_elliptic_sets(&dec(4, "1,0")), sets(&[&[1], &[2, 3]]));
        assert_eq!(minimal_elliptic_sets(&dec(4, "3,1")), sets(&[&[1], &[3], &[2, 4]]));
        assert_eq!(minimal_elliptic_sets(&dec(3, "3/2")), sets(&[&[1], &[2]]));
        assert_eq!(minimal_elliptic_sets(&dec(3, "0")), sets(&[&[1]]));
        assert_eq!(minimal_elliptic_sets(&dec(5, "2,2")), sets(&[&[1], &[2, 3]]));
    }

    #[test]
    fn ne_examples() {
        assert_eq!(ne_sets(&dec(4, "1,0")).collect::<Vec<_>>(), sets(&[&[2], &[3]]));
        // N = 5: n = 6, λ = (2,1,0)
        let d = dec(6, "2,1,0");
        assert_eq!(d.N(), 5);
        assert_eq!(
            ne_sets(&d).collect::<Vec<_>>(),
            sets(&[&[2, 3], &[2, 4], &[5, 3], &[5, 4]])
        );
        let two = dec(5, "1/2,1/2");
        assert_eq!(two.N(), 2);
        assert_eq!(ne_sets(&two).collect::<Vec<_>>(), vec![OperatorSubset::empty()]);
    }

    #[test]
    fn maximal_non_elliptic_examples() {
        assert_eq!(maximal_non_elliptic_sets(&dec(4, "1,0")), sets(&[&[2], &[3]]));
        assert_eq!(maximal_non_elliptic_sets(&dec(3, "3/2")), sets(&[&[3]]));
        assert_eq!(maximal_non_elliptic_sets(&dec(4, "3,1")), sets(&[&[2], &[4]]));
    }

    #[test]
    fn is_elliptic_examples() {
        let r = is_elliptic(&dec(4, "1,0"), &s(&[1, 3])).unwrap();
        assert!(r.is_elliptic);
        assert_eq!(r.witness, Witness::MinimalElliptic(s(&[1])));

        let r = is_elliptic(&dec(4, "3,1"), &s(&[2])).unwrap();
        assert!(!r.is_elliptic);
        assert_eq!(r.witness, Witness::MaximalNonElliptic(s(&[2])));

        // N = 5 integral: pair j = 3 is {3, 4}
        let d = dec(6, "2,1,0");
        let r = is_elliptic(&d, &s(&[3, 4])).unwrap();
        assert!(r.is_elliptic);
        assert_eq!(r.witness_set(), &s(&[3, 4]));

        assert_eq!(is_elliptic(&d, &OperatorSubset::empty()), Err(EllipticityError::Empty));
        assert!(matches!(is_elliptic(&d, &s(&[6])), Err(EllipticityError::OutOfRange { index: 6, .. })));
    }

    #[test]
    fn branching_examples() {
        let h = |t: &[i64]| t.iter().map(|&x| HalfInt::from_twice(x)).collect::<Vec<_>>();
        assert_eq!(
            branch_to_so_n_minus_1(&h(&[2, 0]), 5).unwrap(),
            vec![h(&[2, 0]), h(&[0, 0])]
        );
        assert_eq!(branch_to_so_n_minus_1(&h(&[2, 0]), 4).unwrap(), vec![h(&[2]), h(&[0])]);
        assert_eq!(
            branch_to_so_n_minus_1(&h(&[1, 1]), 5).unwrap(),
            vec![h(&[1, 1]), h(&[1, -1])]
        );
        assert!(branch_to_so_n_minus_1(&h(&[2]), 3).is_err());
    }

    #[test]
    fn nonelliptic_necessary_examples() {
        let d = dec(4, "1,0");
        assert!(check_nonelliptic_necessary(&d, &s(&[2, 3])).unwrap());
        assert!(!check_nonelliptic_necessary(&d, &s(&[3])).unwrap());
        // N = 2ν+1 integral: P_{ν+1} passes the test yet is not elliptic
        let d = dec(5, "2,2");
        assert!(check_nonelliptic_necessary(&d, &s(&[2])).unwrap());
        assert!(!is_elliptic(&d, &s(&[2])).unwrap().is_elliptic);
    }

    #[test]
    fn subset_parsing() {
        assert_eq!("1,3".parse::<OperatorSubset>().unwrap(), s(&[1, 3]));
        assert_eq!("{3, 1}".parse::<OperatorSubset>().unwrap(), s(&[1, 3]));
        assert!("a".parse::<OperatorSubset>().is_err());
        assert_eq!(s(&[1, 3]).complement(4), s(&[2, 4]));
        assert_eq!(s(&[1, 3]).to_string(), "{1,3}");
    }
}
