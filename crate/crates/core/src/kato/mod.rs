//! Optimal refined Kato constants: vertex values over the NE family, the
//! resulting k_I², and the auxiliary bounds.

mod closed_form;

pub use closed_form::{
    closed_form, closed_form_matches, half_integral_n3_constants, HalfIntegralN3,
};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::decomposition::Decomposition;
use crate::ellipticity::{ne_sets, EllipticityError, OperatorSubset};
use crate::numeric::{elementary_symmetric, half, sqrt_text, to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KatoError {
    #[error(transparent)]
    Index(#[from] EllipticityError),
    #[error("{0} is not a member of NE")]
    NotInNe(OperatorSubset),
    #[error("conformal weight w_{0} vanishes")]
    ZeroConformalWeight(usize),
    #[error("needs N >= 3 (got N = {0})")]
    TooFewComponents(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// The vertex Q_J of the polytope of admissible (Q_2, …) and the values
/// of the affine norms π_i there.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexPoint {
    pub j_set: OperatorSubset,
    /// Q_2, Q_3, … in order.
    pub q: Vec<Rational>,
    /// π_1 … π_N.
    pub pi_values: Vec<Rational>,
}

impl VertexPoint {
    pub fn pi(&self, i: usize) -> &Rational {
        &self.pi_values[i - 1]
    }

    pub fn is_feasible(&self) -> bool {
        self.pi_values.iter().all(|p| !p.is_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCase {
    /// Components on which α ⊗ ξ must project to zero.
    pub vanishing_set: OperatorSubset,
    /// Components that ∇ξ is allowed to occupy.
    pub gradient_set: OperatorSubset,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KatoResult {
    pub k_squared: Rational,
    pub sharp: bool,
    pub extremal_j: OperatorSubset,
    pub equality_case: EqualityCase,
}

impl KatoResult {
    pub fn k_decimal(&self) -> f64 {
        to_f64(&self.k_squared).sqrt()
    }

    pub fn k_text(&self) -> String {
        sqrt_text(&self.k_squared)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k_squared": self.k_squared.to_string(),
            "k": self.k_text(),
            "k_decimal": format!("{:.12}", self.k_decimal()),
            "sharp": self.sharp,
            "extremal_J": self.extremal_j.to_json(),
            "equality_case": {
                "vanishing_set": self.equality_case.vanishing_set.to_json(),
                "gradient_set": self.equality_case.gradient_set.to_json(),
            },
        })
    }
}

/// Number of Q coordinates plus one: (N+1)/2 for N odd, N/2 for N even.
pub fn depth(d: &Decomposition) -> usize {
    if d.is_odd() {
        d.N().div_ceil(2)
    } else {
        d.N() / 2
    }
}

/// π_i(Q_J) for every i, for an arbitrary index set J (NE or not).
pub fn vertex_values(d: &Decomposition, j_set: &OperatorSubset) -> Vec<Rational> {
    let n_comp = d.N();
    let even = !d.is_odd();
    (1..=n_comp)
        .map(|i| {
            if j_set.contains(i) {
                return Rational::zero();
            }
            let wi = d.wt(i);
            let mut value = if even { wi - half() } else { Rational::one() };
            for k in 1..=n_comp {
                if k == i {
                    continue;
                }
                if j_set.contains(k) {
                    value *= wi + d.wt(k);
                } else {
                    value /= wi - d.wt(k);
                }
            }
            value
        })
        .collect()
}

/// Q_k = σ_{k−1}(w̃_j², j ∈ J) for k = 2 … |J|+1.
pub fn vertex_q(d: &Decomposition, j_set: &OperatorSubset) -> Vec<Rational> {
    let squares: Vec<Rational> = j_set.indices().iter().map(|&j| d.wt(j) * d.wt(j)).collect();
    (2..=squares.len() + 1)
        .map(|k| elementary_symmetric(&squares, k - 1))
        .collect()
}

/// The affine functions π_j evaluated at an arbitrary point
/// Q = (Q_2, …, Q_h), from the Lagrange form of the projections.
pub fn pi_affine(d: &Decomposition, q: &[Rational]) -> Vec<Rational> {
    let h = depth(d);
    assert_eq!(q.len() + 1, h, "expected {} Q coordinates", h - 1);
    let even = !d.is_odd();
    (1..=d.N())
        .map(|j| {
            let wj = d.wt(j);
            let sq = wj * wj;
            let mut num = num_traits::pow(sq.clone(), h - 1);
            for k in 2..=h {
                let term = num_traits::pow(sq.clone(), h - k) * &q[k - 2];
                if k % 2 == 0 {
                    num -= term;
                } else {
                    num += term;
                }
            }
            let mut den = Rational::one();
            for k in 1..=d.N() {
                if k != j {
                    den *= wj - d.wt(k);
                }
            }
            let mut out = num / den;
            if even {
                out *= wj - half();
            }
            out
        })
        .collect()
}

pub fn vertex(d: &Decomposition, j_set: &OperatorSubset) -> Result<VertexPoint, KatoError> {
    if !ne_sets(d).any(|s| &s == j_set) {
        return Err(KatoError::NotInNe(j_set.clone()));
    }
    Ok(VertexPoint {
        j_set: j_set.clone(),
        q: vertex_q(d, j_set),
        pi_values: vertex_values(d, j_set),
    })
}

/// All NE vertices of a decomposition, computed once and reused for every
/// operator subset.
pub struct KatoSolver<'a> {
    d: &'a Decomposition,
    vertices: Vec<VertexPoint>,
}

/// The max form and the one-minus-min form of the Main Theorem, kept
/// separate so that their agreement can be tested.
#[derive(Debug, Clone, PartialEq)]
pub struct DualForms {
    pub max_form: Rational,
    pub one_minus_min_form: Rational,
}

impl<'a> KatoSolver<'a> {
    pub fn new(d: &'a Decomposition) -> Self {
        let sets: Vec<OperatorSubset> = ne_sets(d).collect();
        let vertices = sets
            .into_par_iter()
            .map(|j_set| VertexPoint {
                q: vertex_q(d, &j_set),
                pi_values: vertex_values(d, &j_set),
                j_set,
            })
            .collect();
        KatoSolver { d, vertices }
    }

    pub fn vertices(&self) -> &[VertexPoint] {
        &self.vertices
    }

    fn check(&self, set: &OperatorSubset) -> Result<(), KatoError> {
        if set.is_empty() {
            return Err(EllipticityError::Empty.into());
        }
        set.check_range(self.d.N())?;
        Ok(())
    }

    fn partial_sum(v: &VertexPoint, set: &OperatorSubset) -> Rational {
        set.indices()
            .iter()
            .filter(|&&i| !v.j_set.contains(i))
            .map(|&i| v.pi(i))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn dual_forms(&self, set: &OperatorSubset) -> Result<DualForms, KatoError> {
        self.check(set)?;
        let hat = set.complement(self.d.N());
        let max_form = self
            .vertices
            .iter()
            .map(|v| Self::partial_sum(v, &hat))
            .max()
            .expect("NE is never empty");
        let min = self
            .vertices
            .iter()
            .map(|v| Self::partial_sum(v, set))
            .min()
            .expect("NE is never empty");
        Ok(DualForms {
            max_form,
            one_minus_min_form: Rational::one() - min,
        })
    }

    pub fn solve(&self, set: &OperatorSubset) -> Result<KatoResult, KatoError> {
        let forms = self.dual_forms(set)?;
        assert_eq!(
            forms.max_form, forms.one_minus_min_form,
            "max and min forms disagree for {set} on {}",
            self.d.lambda
        );
        let k_squared = forms.max_form;
        let hat = set.complement(self.d.N());
        let mut maximizers: Vec<&OperatorSubset> = self
            .vertices
            .iter()
            .filter(|v| Self::partial_sum(v, &hat) == k_squared)
            .map(|v| &v.j_set)
            .collect();
        maximizers.sort();

        // a vertex whose J contains ν+1 is not attained in the
        // half-integral N = 2ν+1 case
        let unattained = |j: &OperatorSubset| {
            self.d.is_half_integral_exception() && j.contains(self.d.nu + 1)
        };
        let (extremal, sharp) = match maximizers.iter().find(|j| !unattained(j)) {
            Some(j) => ((*j).clone(), true),
            None => (maximizers[0].clone(), false),
        };
        let gradient_set = hat.intersect(&extremal.complement(self.d.N()));
        Ok(KatoResult {
            k_squared,
            sharp,
            equality_case: EqualityCase {
                vanishing_set: extremal.clone(),
                gradient_set,
            },
            extremal_j: extremal,
        })
    }
}

pub fn kato_constant(d: &Decomposition, set: &OperatorSubset) -> Result<KatoResult, KatoError> {
    KatoSolver::new(d).solve(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlusMinus {
    pub k_plus: Rational,
    pub k_minus: Rational,
}

/// k₊² = w_1/(w_1 − w⁻) and k₋² = w_N/(w_N − w⁺), where w⁻ is the largest
/// negative and w⁺ the smallest positive conformal weight.
pub fn p_plus_minus_constants(d: &Decomposition) -> Result<PlusMinus, KatoError> {
    let w = d.w();
    if let Some(j) = w.iter().position(Zero::is_zero) {
        return Err(KatoError::ZeroConformalWeight(j + 1));
    }
    let max_neg = w.iter().filter(|x| x.is_negative()).max();
    let min_pos = w.iter().filter(|x| x.is_positive()).min();
    let (Some(max_neg), Some(min_pos)) = (max_neg, min_pos) else {
        return Err(KatoError::Precondition(
            "conformal weights of both signs are required".to_string(),
        ));
    };
    let w1 = &w[0];
    let wn = &w[w.len() - 1];
    Ok(PlusMinus {
        k_plus: w1 / (w1 - max_neg),
        k_minus: wn / (wn - min_pos),
    })
}

/// Bounds on Q_2 … Q_h from the two extreme vertices.
pub fn q_bounds(d: &Decomposition) -> Result<Vec<(Rational, Rational)>, KatoError> {
    let n_comp = d.N();
    if n_comp < 3 {
        return Err(KatoError::TooFewComponents(n_comp));
    }
    let h = depth(d);
    let sq = |range: std::ops::RangeInclusive<usize>| -> Vec<Rational> {
        range.map(|j| d.wt(j) * d.wt(j)).collect()
    };
    let lower = sq(2..=h);
    let upper = if d.is_odd() {
        sq(h + 1..=n_comp)
    } else {
        sq(h + 2..=n_comp)
    };
    Ok((2..=h)
        .map(|k| {
            (
                elementary_symmetric(&lower, k - 1),
                elementary_symmetric(&upper, k - 1),
            )
        })
        .collect())
}
