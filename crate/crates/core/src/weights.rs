//! Dominant weights of so(n) and their block profile.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::numeric::{HalfInt, ParseNumberError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("dimension n = {0} is not supported (need n >= 3)")]
    Dimension(usize),
    #[error("expected {expected} entries for n = {n}, got {got}")]
    EntryCount { n: usize, expected: usize, got: usize },
    #[error("dominance violated at entry {position}")]
    Dominance { position: usize },
    #[error("entries mix integers and half-integers (entry {position})")]
    MixedIntegrality { position: usize },
    #[error("entry {position}: {source}")]
    Parse {
        position: usize,
        source: ParseNumberError,
    },
}

/// Sign of the last coordinate for n even; always `Positive` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    Positive,
    Negative,
}

/// A validated dominant weight, normalized so that the last entry is
/// non-negative. The sign that was stripped (n even only) is kept in
/// `chirality` and never influences any computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    n: usize,
    entries: Vec<HalfInt>,
    chirality: Chirality,
}

pub fn rank(n: usize) -> usize {
    n / 2
}

/// Checks the dominance chain for rank-`entries.len()` weights of so(n).
/// For n even the last entry may be negative.
pub(crate) fn dominance_violation(n: usize, entries: &[HalfInt]) -> Option<usize> {
    let m = entries.len();
    for i in 0..m.saturating_sub(1) {
        let next = if n % 2 == 0 && i + 2 == m {
            entries[i + 1].abs()
        } else {
            entries[i + 1].clone()
        };
        if entries[i] < next {
            return Some(i + 2);
        }
    }
    if n % 2 == 1 && m > 0 && entries[m - 1].is_negative() {
        return Some(m);
    }
    None
}

pub(crate) fn mixed_integrality(entries: &[HalfInt]) -> Option<usize> {
    let first = entries.first()?.is_integral();
    entries
        .iter()
        .position(|e| e.is_integral() != first)
        .map(|p| p + 1)
}

impl DominantWeight {
    pub fn validate(n: usize, entries: Vec<HalfInt>) -> Result<Self, WeightError> {
        if n < 3 {
            return Err(WeightError::Dimension(n));
        }
        let m = rank(n);
        if entries.len() != m {
            return Err(WeightError::EntryCount {
                n,
                expected: m,
                got: entries.len(),
            });
        }
        if let Some(position) = mixed_integrality(&entries) {
            return Err(WeightError::MixedIntegrality { position });
        }
        if let Some(position) = dominance_violation(n, &entries) {
            return Err(WeightError::Dominance { position });
        }
        let mut entries = entries;
        let mut chirality = Chirality::Positive;
        if entries[m - 1].is_negative() {
            chirality = Chirality::Negative;
            entries[m - 1] = entries[m - 1].abs();
        }
        Ok(DominantWeight {
            n,
            entries,
            chirality,
        })
    }

    /// Builds a weight from doubled entries, e.g. `[3, 1]` for (3/2, 1/2).
    pub fn from_twice(n: usize, twice: &[i64]) -> Result<Self, WeightError> {
        Self::validate(n, twice.iter().map(|&t| HalfInt::from_twice(t)).collect())
    }

    pub fn from_ints(n: usize, values: &[i64]) -> Result<Self, WeightError> {
        Self::validate(n, values.iter().map(|&v| HalfInt::from_int(v)).collect())
    }

    /// Parses the CLI syntax: comma-separated entries such as `2,1` or
    /// `3/2,1/2`. Errors carry the 1-based entry position.
    pub fn parse(n: usize, text: &str) -> Result<Self, WeightError> {
        let trimmed = text.trim();
        let entries = if trimmed.is_empty() {
            Vec::new()
        } else {
            trimmed
                .split(',')
                .enumerate()
                .map(|(i, part)| {
                    part.parse::<HalfInt>().map_err(|source| WeightError::Parse {
                        position: i + 1,
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::validate(n, entries)
    }

    pub fn zero(n: usize) -> Result<Self, WeightError> {
        Self::validate(n, vec![HalfInt::zero(); rank(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[HalfInt] {
        &self.entries
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    /// The weight with its original sign on the last entry restored.
    pub fn signed_entries(&self) -> Vec<HalfInt> {
        let mut out = self.entries.clone();
        if self.chirality == Chirality::Negative {
            let last = out.len() - 1;
            out[last] = -&out[last];
        }
        out
    }

    /// The chirality mirror (same entries, opposite flag). Only differs
    /// from `self` for n even with a nonzero last entry.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        if self.n % 2 == 0 && !self.entries[self.rank() - 1].is_zero() {
            out.chirality = match self.chirality {
                Chirality::Positive => Chirality::Negative,
                Chirality::Negative => Chirality::Positive,
            };
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.entries[0].is_integral()
    }

    pub fn is_properly_half_integral(&self) -> bool {
        !self.is_integral()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HalfInt::is_zero)
    }

    pub fn entries_rational(&self) -> Vec<Rational> {
        self.entries.iter().map(HalfInt::to_rational).collect()
    }

    pub fn profile(&self) -> WeightProfile {
        WeightProfile::of(&self.entries)
    }
}

/// Renders entries as `(a, b, ...)`.
pub fn format_entries(entries: &[HalfInt]) -> String {
    let parts: Vec<String> = entries.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_entries(&self.signed_entries()))
    }
}

/// Blocks of equal entries: values `k_1 > ... > k_nu` and prefix counts
/// `p_j = #{i : lambda_i >= k_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    pub nu: usize,
    pub block_values: Vec<HalfInt>,
    pub block_prefix_counts: Vec<usize>,
}

impl WeightProfile {
    fn of(entries: &[HalfInt]) -> Self {
        let mut block_values: Vec<HalfInt> = Vec::new();
        let mut block_prefix_counts = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            if block_values.last() == Some(e) {
                *block_prefix_counts.last_mut().unwrap() = i + 1;
            } else {
                block_values.push(e.clone());
                block_prefix_counts.push(i + 1);
            }
        }
        WeightProfile {
            nu: block_values.len(),
            block_values,
            block_prefix_counts,
        }
    }

    /// Expands the blocks back into the entry list.
    pub fn reconstruct(&self) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut prev = 0;
        for (k, &p) in self.block_values.iter().zip(&self.block_prefix_counts) {
            out.extend(std::iter::repeat_n(k.clone(), p - prev));
            prev = p;
        }
        out
    }

    pub fn last_value(&self) -> &HalfInt {
        self.block_values.last().expect("profile has at least one block")
    }
}

/// Every dominant weight (normalized, λ_m ≥ 0) of so(n) whose entries are
/// bounded by `max_twice / 2`, integral and half-integral alike.
pub fn weight_grid(n: usize, max_twice: i64) -> Vec<DominantWeight> {
    let m = rank(n);
    let mut out = Vec::new();
    for parity in 0..2i64 {
        let mut current = Vec::with_capacity(m);
        grid_rec(n, m, parity, max_twice, &mut current, &mut out);
    }
    out
}

fn grid_rec(
    n: usize,
    m: usize,
    parity: i64,
    bound: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<DominantWeight>,
) {
    if current.len() == m {
        let entries = current
            .iter()
            .map(|&t| HalfInt::from_twice(BigInt::from(t)))
            .collect();
        if let Ok(w) = DominantWeight::validate(n, entries) {
            out.push(w);
        }
        return;
    }
    let mut t = parity;
    while t <= bound {
        current.push(t);
        grid_rec(n, m, parity, t, current, out);
        current.pop();
        t += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn validate_examples() {
        let w = DominantWeight::from_ints(4, &[1, 0]).unwrap();
        assert!(w.is_integral());
        let p = w.profile();
        assert_eq!(p.nu, 2);
        assert_eq!(p.block_values, vec![h(2), h(0)]);
        assert_eq!(p.block_prefix_counts, vec![1, 2]);

        let s = DominantWeight::from_twice(5, &[1, 1]).unwrap();
        assert!(s.is_properly_half_integral());
        let p = s.profile();
        assert_eq!((p.nu, p.block_values.clone(), p.block_prefix_counts.clone()), (1, vec![h(1)], vec![2]));

        assert_eq!(
            DominantWeight::from_ints(4, &[0, 1]),
            Err(WeightError::Dominance { position: 2 })
        );
    }

    #[test]
    fn validation_errors() {
        assert_eq!(DominantWeight::from_ints(2, &[1]), Err(WeightError::Dimension(2)));
        assert!(matches!(
            DominantWeight::from_ints(5, &[1]),
            Err(WeightError::EntryCount { expected: 2, got: 1, .. })
        ));
        assert_eq!(
            DominantWeight::from_twice(5, &[3, 2]),
            Err(WeightError::MixedIntegrality { position: 2 })
        );
        assert_eq!(
            DominantWeight::from_ints(5, &[1, -1]),
            Err(WeightError::Dominance { position: 2 })
        );
        assert!(matches!(
            DominantWeight::parse(4, "1,x"),
            Err(WeightError::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn chirality_is_normalized_away() {
        let w = DominantWeight::from_ints(4, &[2, -2]).unwrap();
        assert_eq!(w.entries(), &[h(4), h(4)]);
        assert_eq!(w.chirality(), Chirality::Negative);
        assert_eq!(w.to_string(), "(2, -2)");
        assert_eq!(w.mirror().to_string(), "(2, 2)");
        // n odd never carries a sign flag
        let odd = DominantWeight::from_ints(5, &[1, 0]).unwrap();
        assert_eq!(odd.mirror(), odd);
    }

    #[test]
    fn profile_examples() {
        let w = DominantWeight::from_ints(7, &[2, 2, 1]).unwrap();
        let p = w.profile();
        assert_eq!(p.nu, 2);
        assert_eq!(p.block_values, vec![h(4), h(2)]);
        assert_eq!(p.block_prefix_counts, vec![2, 3]);

        let z = DominantWeight::zero(6).unwrap().profile();
        assert_eq!((z.nu, z.block_prefix_counts.clone()), (1, vec![3]));

        let w = DominantWeight::from_ints(9, &[3, 3, 1, 0]).unwrap().profile();
        assert_eq!(w.nu, 3);
        assert_eq!(w.block_values, vec![h(6), h(2), h(0)]);
        assert_eq!(w.block_prefix_counts, vec![2, 3, 4]);
    }

    #[test]
    fn half_integrality_examples() {
        assert!(DominantWeight::parse(5, "1/2,1/2").unwrap().is_properly_half_integral());
        assert!(!DominantWeight::parse(4, "1,0").unwrap().is_properly_half_integral());
        assert!(DominantWeight::parse(3, "3/2").unwrap().is_properly_half_integral());
    }

    #[test]
    fn grid_counts() {
        // n = 3: entries 0, 1/2, 1 and 3/2 with bound 3/2
        assert_eq!(weight_grid(3, 3).len(), 4);
        // n = 4: integral pairs with 1 >= l1 >= l2 >= 0 plus (1/2, 1/2)
        assert_eq!(weight_grid(4, 2).len(), 4);
    }
}
