//! Casimir numbers, Weyl dimensions and the partial-trace identities
//! satisfied by the translated conformal weights.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::decomposition::Decomposition;
use crate::numeric::{elementary_symmetric, half, int, rat, HalfInt, Rational, Series};
use crate::weights::{dominance_violation, DominantWeight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CasimirError {
    #[error("weight is not dominant for so({n})")]
    NotDominant { n: usize },
    #[error("weight has {got} entries, so({n}) needs {expected}")]
    EntryCount { n: usize, expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirReport {
    pub c_lambda: Rational,
    pub delta: Vec<Rational>,
    pub x: Vec<Rational>,
}

/// δ_i = (n − 2i)/2 for i = 1..m.
pub fn delta(n: usize) -> Vec<Rational> {
    (1..=n / 2).map(|i| rat(n as i64 - 2 * i as i64, 2)).collect()
}

/// c(μ) = ⟨μ, μ⟩ + 2⟨μ, δ⟩ for raw entries.
pub fn casimir_of_entries(entries: &[HalfInt], n: usize) -> Rational {
    entries
        .iter()
        .zip(delta(n))
        .map(|(e, d)| {
            let e = e.to_rational();
            &e * &e + int(2) * e * d
        })
        .fold(Rational::zero(), |a, b| a + b)
}

pub fn casimir_number(lambda: &DominantWeight) -> Rational {
    casimir_of_entries(lambda.entries(), lambda.n())
}

pub fn casimir_report(lambda: &DominantWeight) -> CasimirReport {
    let delta = delta(lambda.n());
    let x = lambda
        .entries_rational()
        .into_iter()
        .zip(&delta)
        .map(|(l, d)| l + d)
        .collect();
    CasimirReport {
        c_lambda: casimir_number(lambda),
        delta,
        x,
    }
}

/// w = ½(c(μ) − c(λ) − c(τ)) with c(τ) = n − 1.
pub fn conformal_weight(mu: &[HalfInt], lambda: &DominantWeight) -> Rational {
    let n = lambda.n();
    (casimir_of_entries(mu, n) - casimir_number(lambda) - int(n as i64 - 1)) / int(2)
}

/// Weyl's dimension formula for B_m (n odd) and D_m (n even). For n even
/// the last entry may carry either sign.
pub fn weyl_dimension(mu: &[HalfInt], n: usize) -> Result<BigInt, CasimirError> {
    let m = n / 2;
    if mu.len() != m {
        return Err(CasimirError::EntryCount {
            n,
            expected: m,
            got: mu.len(),
        });
    }
    if dominance_violation(n, mu).is_some() {
        return Err(CasimirError::NotDominant { n });
    }
    let d = delta(n);
    let x: Vec<Rational> = mu.iter().zip(&d).map(|(e, di)| e.to_rational() + di).collect();
    let mut num = Rational::one();
    let mut den = Rational::one();
    for i in 0..m {
        for j in i + 1..m {
            num *= &x[i] * &x[i] - &x[j] * &x[j];
            den *= &d[i] * &d[i] - &d[j] * &d[j];
        }
        if n % 2 == 1 {
            num *= &x[i];
            den *= &d[i];
        }
    }
    let dim = num / den;
    debug_assert!(dim.is_integer() && dim.is_positive());
    Ok(dim.to_integer())
}

/// dim W_j / dim V from the translated weights alone.
pub fn relative_dimension(d: &Decomposition, j: usize) -> Rational {
    let wj = d.wt(j);
    let sign = if d.is_odd() { int(1) } else { int(-1) };
    let mut out = int(2) * wj + sign;
    for k in 1..=d.N() {
        if k != j {
            out *= (wj + d.wt(k)) / (wj - d.wt(k));
        }
    }
    out
}

/// dim W_j / dim V from Weyl's formula (sum of both targets if merged).
pub fn weyl_ratio(d: &Decomposition, j: usize) -> Rational {
    let dim_v = weyl_dimension(d.lambda.entries(), d.n()).expect("λ is dominant");
    Rational::new(d.components[j - 1].dim.clone(), dim_v)
}

/// P_ℓ = Σ (½ + x_i)^ℓ + Σ (½ − x_i)^ℓ with x = λ + δ.
pub fn p_ell(lambda: &DominantWeight, ell: u32) -> Rational {
    p_ell_of(&casimir_report(lambda).x, ell)
}

pub fn p_ell_of(x: &[Rational], ell: u32) -> Rational {
    let h = half();
    x.iter()
        .map(|xi| {
            num_traits::pow(&h + xi, ell as usize) + num_traits::pow(&h - xi, ell as usize)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

fn minus_one_pow(k: usize) -> Rational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// ptr B̃^0 … ptr B̃^L read off the generating series
/// 1 + Σ ptr B̃^ℓ t^{ℓ+1} = t/2 + (1 − (−1)^N t/2) Π (1 + w̃_j t)/(1 − w̃_j t).
pub fn ptr_btilde_series(d: &Decomposition, max_ell: usize) -> Vec<Rational> {
    let len = max_ell + 2;
    let mut num = Series::one(len);
    let mut den = Series::one(len);
    for w in d.w_tilde() {
        num = num.mul(&Series::from_coeffs(vec![int(1), w.clone()], len));
        den = den.mul(&Series::from_coeffs(vec![int(1), -w], len));
    }
    let ratio = num.div(&den).expect("denominator has constant term 1");
    let sign_n = minus_one_pow(d.N());
    let front = Series::from_coeffs(vec![int(1), -(sign_n * half())], len);
    let rhs = front
        .mul(&ratio)
        .add(&Series::from_coeffs(vec![Rational::zero(), half()], len));
    debug_assert!(rhs.coeff(0).is_one());
    rhs.into_coeffs().into_iter().skip(1).collect()
}

/// ptr B̃^ℓ = Σ_j w̃_j^ℓ · dim W_j / dim V, using Weyl dimensions.
pub fn ptr_btilde_direct(d: &Decomposition, ell: u32) -> Rational {
    (1..=d.N())
        .map(|j| num_traits::pow(d.wt(j).clone(), ell as usize) * weyl_ratio(d, j))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Closed form (1 + (−1)^j) σ_{j+1}(w̃) + ½((−1)^j − (−1)^N) σ_j(w̃).
pub fn ptr_atilde(d: &Decomposition, j: usize) -> Rational {
    let wt = d.w_tilde();
    let sj = minus_one_pow(j);
    let sn = minus_one_pow(d.N());
    (int(1) + &sj) * elementary_symmetric(&wt, j + 1)
        + (sj - sn) * half() * elementary_symmetric(&wt, j)
}

/// ptr Ã_j assembled as Σ_ℓ (−1)^ℓ σ_ℓ(w̃) ptr B̃^{j−ℓ} from the series.
pub fn ptr_atilde_from_series(d: &Decomposition, j: usize) -> Rational {
    let wt = d.w_tilde();
    let b = ptr_btilde_series(d, j);
    (0..=j)
        .map(|l| minus_one_pow(l) * elementary_symmetric(&wt, l) * &b[j - l])
        .fold(Rational::zero(), |a, c| a + c)
}

/// Left side minus right side of the power-sum identity for exponent
/// 2k+1; zero when the identity holds.
pub fn power_sum_identity_defect(d: &Decomposition, k: u32) -> Rational {
    let e = 2 * k + 1;
    let n = d.n();
    let mut lhs = crate::numeric::power_sum(&d.w_tilde(), e)
        - num_traits::pow(rat(n as i64 - 1, 2), e as usize);
    if !d.is_odd() {
        lhs -= num_traits::pow(half(), e as usize);
    }
    let rhs = p_ell(&d.lambda, e) - p_ell_of(&delta(n), e);
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;

    fn w(n: usize, e: &[i64]) -> DominantWeight {
        DominantWeight::from_ints(n, e).unwrap()
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_number(&w(5, &[1, 0])), int(4));
        assert_eq!(casimir_number(&w(6, &[0, 0, 0])), int(0));
        assert_eq!(casimir_number(&w(4, &[1, 0])), int(3));
        // c(τ) = n − 1 in every dimension
        for n in 3..12 {
            let mut e = vec![0; n / 2];
            e[0] = 1;
            assert_eq!(casimir_number(&w(n, &e)), int(n as i64 - 1));
        }
    }

    #[test]
    fn conformal_weight_examples() {
        let l = w(4, &[1, 0]);
        let mu = |v: &[i64]| v.iter().map(|&x| HalfInt::from_int(x)).collect::<Vec<_>>();
        assert_eq!(conformal_weight(&mu(&[2, 0]), &l), int(1));
        assert_eq!(conformal_weight(&mu(&[0, 0]), &l), int(-3));
        let l5 = w(5, &[2, 1]);
        assert_eq!(conformal_weight(l5.entries(), &l5), int(-2));
    }

    #[test]
    fn weyl_dimension_examples() {
        let h = |t: &[i64]| t.iter().map(|&x| HalfInt::from_twice(x)).collect::<Vec<_>>();
        assert_eq!(weyl_dimension(&h(&[2, 0]), 4).unwrap(), BigInt::from(4));
        assert_eq!(weyl_dimension(&h(&[4]), 3).unwrap(), BigInt::from(5));
        assert_eq!(weyl_dimension(&h(&[1, 1]), 5).unwrap(), BigInt::from(4));
        assert_eq!(weyl_dimension(&h(&[2, -2]), 4).unwrap(), BigInt::from(3));
        assert!(weyl_dimension(&h(&[0, 2]), 4).is_err());
        // adjoint of so(10) and spinor of so(10)
        assert_eq!(weyl_dimension(&h(&[2, 2, 0, 0, 0]), 10).unwrap(), BigInt::from(45));
        assert_eq!(weyl_dimension(&h(&[1, 1, 1, 1, 1]), 10).unwrap(), BigInt::from(16));
    }

    #[test]
    fn relative_dimension_examples() {
        let d = decompose(&w(3, &[1]));
        assert_eq!(relative_dimension(&d, 1), rat(5, 3));
        assert_eq!(relative_dimension(&d, 3), rat(1, 3));
        let d = decompose(&w(4, &[1, 0]));
        assert_eq!(relative_dimension(&d, 2), rat(3, 2));
        assert_eq!(weyl_ratio(&d, 2), rat(3, 2));
    }

    #[test]
    fn p_ell_examples() {
        let l = w(4, &[1, 0]);
        assert_eq!(p_ell(&l, 1), int(2));
        let d = decompose(&l);
        assert_eq!(p_ell(&l, 3) - p_ell_of(&delta(4), 3), int(9));
        assert_eq!(power_sum_identity_defect(&d, 1), int(0));
    }

    #[test]
    fn series_examples() {
        let d = decompose(&w(3, &[1]));
        let s = ptr_btilde_series(&d, 3);
        assert_eq!(s[0], int(3));
        assert_eq!(s[1], int(3));
        assert_eq!(ptr_btilde_direct(&d, 1), int(3));
        // ptr B = ptr B̃ − (n−1)/2 · ptr id = 0
        assert_eq!(&s[1] - rat(2, 2) * &s[0], int(0));
    }

    #[test]
    fn atilde_examples() {
        let d = decompose(&w(3, &[1]));
        assert_eq!(ptr_atilde(&d, 0), int(3));
        assert_eq!(ptr_atilde_from_series(&d, 0), int(3));
        // N odd: ptr Ã_1 = ptr B̃ − n σ_1 = 3 − 3 = 0
        assert_eq!(ptr_atilde(&d, 1), int(0));
        assert_eq!(ptr_atilde_from_series(&d, 1), int(0));
        // N even: ptr Ã_1 = −σ_1(w̃)
        let d4 = decompose(&w(4, &[3, 1]));
        let s1 = elementary_symmetric(&d4.w_tilde(), 1);
        assert_eq!(ptr_atilde(&d4, 1), -s1.clone());
        assert_eq!(ptr_atilde_from_series(&d4, 1), -s1);
    }
}
