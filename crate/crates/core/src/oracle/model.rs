//! B as an explicit matrix on ℝⁿ⊗V, its spectral projectors and the
//! polynomials Ã_k, C̃_j built from it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_distr::StandardNormal;

use super::rep::RepModel;
use super::OracleError;
use crate::decomposition::{decompose, Decomposition};
use crate::kato::depth;
use crate::numeric::{elementary_symmetric, to_f64};

/// One cluster of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct BModel {
    pub n: usize,
    pub dim_v: usize,
    pub b: DMatrix<f64>,
    pub groups: Vec<EigenGroup>,
    pub decomposition: Decomposition,
    /// How many isomorphic copies of the decomposition V carries.
    pub copies: usize,
    /// Eigen-projector onto each component, in component order.
    pub projectors: Vec<DMatrix<f64>>,
    pub w: Vec<f64>,
    pub w_tilde: Vec<f64>,
}

fn group_eigenvalues(values: &[f64], rel_tol: f64) -> Vec<EigenGroup> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match groups.last_mut() {
            Some((sum, count)) if (*sum / *count as f64 - v).abs() <= rel_tol * v.abs().max(1.0) => {
                *sum += v;
                *count += 1;
            }
            _ => groups.push((v, 1)),
        }
    }
    groups
        .into_iter()
        .map(|(sum, count)| EigenGroup {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

/// B(α⊗v) = Σ_i e_i ⊗ dλ(e_i∧α)v; the (i, a) block is dλ(e_i∧e_a).
pub fn b_matrix(model: &RepModel) -> DMatrix<f64> {
    let (n, d) = (model.n, model.dim_v);
    let mut b = DMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for a in 0..n {
            if i != a {
                b.view_mut((i * d, a * d), (d, d)).copy_from(&model.generator(i, a));
            }
        }
    }
    b
}

pub fn build_b(model: &RepModel) -> Result<BModel, OracleError> {
    let weights = model.weights();
    let decomposition = decompose(&weights[0]);
    let copies = weights.len();
    let b = b_matrix(model);
    let eig = SymmetricEigen::new(b.clone());
    let groups = group_eigenvalues(eig.eigenvalues.as_slice(), 1e-6);
    if groups.len() != decomposition.N() {
        return Err(OracleError::Grouping(format!(
            "found {} eigenvalue clusters, expected {} conformal weights",
            groups.len(),
            decomposition.N()
        )));
    }
    let w: Vec<f64> = decomposition.components.iter().map(|c| to_f64(&c.w)).collect();
    let w_tilde: Vec<f64> = decomposition.components.iter().map(|c| to_f64(&c.w_tilde)).collect();

    let dim = b.nrows();
    let projectors = w
        .iter()
        .map(|&wj| {
            let mut p = DMatrix::zeros(dim, dim);
            for (k, &ev) in eig.eigenvalues.iter().enumerate() {
                if (ev - wj).abs() < 1e-6 * wj.abs().max(1.0) {
                    let v = eig.eigenvectors.column(k);
                    p += v * v.transpose();
                }
            }
            p
        })
        .collect();

    Ok(BModel {
        n: model.n,
        dim_v: model.dim_v,
        b,
        groups,
        decomposition,
        copies,
        projectors,
        w,
        w_tilde,
    })
}

/// Eigenvalue agreement between B and the symbolic decomposition.
#[derive(Debug, Clone)]
pub struct SpectrumCheck {
    pub max_value_defect: f64,
    pub multiplicities_match: bool,
    pub expected: Vec<(f64, BigInt)>,
    pub found: Vec<EigenGroup>,
}

impl BModel {
    pub fn dim(&self) -> usize {
        self.b.nrows()
    }

    #[allow(non_snake_case)]
    pub fn N(&self) -> usize {
        self.w.len()
    }

    pub fn spectrum_check(&self) -> SpectrumCheck {
        let expected: Vec<(f64, BigInt)> = self
            .decomposition
            .components
            .iter()
            .map(|c| (to_f64(&c.w), &c.dim * BigInt::from(self.copies)))
            .collect();
        let max_value_defect = expected
            .iter()
            .zip(&self.groups)
            .map(|((w, _), g)| (w - g.value).abs())
            .fold(0.0, f64::max);
        let multiplicities_match = expected
            .iter()
            .zip(&self.groups)
            .all(|((_, d), g)| d.to_usize() == Some(g.multiplicity));
        SpectrumCheck {
            max_value_defect,
            multiplicities_match,
            expected,
            found: self.groups.clone(),
        }
    }

    pub fn b_tilde(&self) -> DMatrix<f64> {
        let shift = (self.n as f64 - 1.0) / 2.0;
        &self.b + DMatrix::identity(self.dim(), self.dim()) * shift
    }

    /// Π_j = Π_{k≠j} (B − w_k)/(w_j − w_k).
    pub fn lagrange_projector(&self, j: usize) -> DMatrix<f64> {
        let dim = self.dim();
        let id = DMatrix::<f64>::identity(dim, dim);
        let mut p = id.clone();
        for (k, &wk) in self.w.iter().enumerate() {
            if k != j {
                p = p * ((&self.b - &id * wk) / (self.w[j] - wk));
            }
        }
        p
    }

    pub fn projector_defect(&self) -> f64 {
        (0..self.N())
            .map(|j| (self.lagrange_projector(j) - &self.projectors[j]).amax())
            .fold(0.0, f64::max)
    }

    /// Sum of the eigen-projectors over a 1-based index set.
    pub fn projector_onto(&self, set: &[usize]) -> DMatrix<f64> {
        let dim = self.dim();
        set.iter()
            .fold(DMatrix::zeros(dim, dim), |acc, &j| acc + &self.projectors[j - 1])
    }

    /// Ã_0, …, Ã_kmax with Ã_k = Σ_ℓ (−1)^ℓ σ_ℓ(w̃) B̃^{k−ℓ}.
    pub fn a_tilde(&self, kmax: usize) -> Vec<DMatrix<f64>> {
        let wt = self.decomposition.w_tilde();
        let dim = self.dim();
        let id = DMatrix::<f64>::identity(dim, dim);
        let bt = self.b_tilde();
        let mut out = vec![id.clone()];
        for k in 1..=kmax {
            let sigma = if k <= wt.len() { to_f64(&elementary_symmetric(&wt, k)) } else { 0.0 };
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let next = &bt * &out[k - 1] + &id * (sign * sigma);
            out.push(next);
        }
        out
    }

    /// C̃_j = Ã_j + ¼((−1)^N − (−1)^j) Ã_{j−1}, for j = 0..=jmax.
    pub fn c_tilde(&self, jmax: usize) -> Vec<DMatrix<f64>> {
        let a = self.a_tilde(jmax);
        let parity_n = if self.N() % 2 == 0 { 1.0 } else { -1.0 };
        (0..=jmax)
            .map(|j| {
                let parity_j = if j % 2 == 0 { 1.0 } else { -1.0 };
                let coeff = 0.25 * (parity_n - parity_j);
                if j == 0 || coeff == 0.0 {
                    a[j].clone()
                } else {
                    &a[j] + &a[j - 1] * coeff
                }
            })
            .collect()
    }

    pub fn block(&self, m: &DMatrix<f64>, i: usize, a: usize) -> DMatrix<f64> {
        let d = self.dim_v;
        m.view((i * d, a * d), (d, d)).into_owned()
    }

    /// Largest relative defect in (C̃_j)_{e_i⊗e_a} = (−1)^j (C̃_j)_{e_a⊗e_i}
    /// over j ≤ jmax.
    pub fn ctilde_symmetry_defect(&self, jmax: usize) -> f64 {
        let mut worst = 0.0f64;
        for (j, c) in self.c_tilde(jmax).iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let scale = c.amax().max(1.0);
            for i in 0..self.n {
                for a in i..self.n {
                    let defect = (self.block(c, i, a) - self.block(c, a, i) * sign).amax();
                    worst = worst.max(defect / scale);
                }
            }
        }
        worst
    }

    pub fn decomposable(&self, alpha: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        alpha.kronecker(v)
    }

    pub fn random_decomposable<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let alpha = random_unit(self.n, rng);
        let v = random_unit(self.dim_v, rng);
        self.decomposable(&alpha, &v)
    }

    /// max |⟨BΦ, Φ⟩| over `samples` random unit decomposables.
    pub fn bzero_defect<R: Rng>(&self, samples: usize, rng: &mut R) -> f64 {
        (0..samples)
            .map(|_| {
                let phi = self.random_decomposable(rng);
                phi.dot(&(&self.b * &phi)).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Odd-index vanishing of ⟨Ã_k Φ, Φ⟩ on decomposables: Ã_{2j+1} alone
    /// for N odd, Ã_{2j+1} + ½Ã_{2j} for N even.
    pub fn corollary_defect<R: Rng>(&self, kmax: usize, samples: usize, rng: &mut R) -> f64 {
        let a = self.a_tilde(kmax);
        let even = self.N() % 2 == 0;
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let phi = self.random_decomposable(rng);
            for k in (1..=kmax).step_by(2) {
                let mut form = phi.dot(&(&a[k] * &phi));
                let mut scale = a[k].amax();
                if even {
                    form += 0.5 * phi.dot(&(&a[k - 1] * &phi));
                    scale = scale.max(a[k - 1].amax());
                }
                worst = worst.max(form.abs() / scale.max(1.0));
            }
        }
        worst
    }

    /// |Π_j Φ|² three ways: eigen-projector, the Ã_k expansion, and the
    /// affine formula in the measured Q_k. Returns the largest spread.
    pub fn projection_norm_defect<R: Rng>(&self, samples: usize, rng: &mut R) -> f64 {
        let n_comp = self.N();
        let a = self.a_tilde(n_comp.max(1) - 1);
        let wt = &self.w_tilde;
        let h = depth(&self.decomposition);
        let even = n_comp % 2 == 0;
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let phi = self.random_decomposable(rng);
            let forms: Vec<f64> = a.iter().map(|m| phi.dot(&(m * &phi))).collect();
            let q: Vec<f64> = (1..=h)
                .map(|k| {
                    let idx = 2 * k - 2;
                    let f = forms.get(idx).copied().unwrap_or(0.0);
                    if k % 2 == 1 { f } else { -f }
                })
                .collect();
            for j in 0..n_comp {
                let direct = phi.dot(&(&self.projectors[j] * &phi));
                let denom: f64 = (0..n_comp).filter(|&k| k != j).map(|k| wt[j] - wt[k]).product();
                let series: f64 = (0..n_comp)
                    .map(|k| wt[j].powi((n_comp - 1 - k) as i32) * forms[k])
                    .sum::<f64>()
                    / denom;
                let mut affine: f64 = (1..=h)
                    .map(|k| {
                        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                        wt[j].powi(2 * (h - k) as i32) * sign * q[k - 1]
                    })
                    .sum::<f64>()
                    / denom;
                if even {
                    affine *= wt[j] - 0.5;
                }
                worst = worst.max((direct - series).abs()).max((direct - affine).abs());
            }
        }
        worst
    }

    /// sup over unit v of |Π_S(e_1⊗v)|², exact by SO(n)-invariance.
    pub fn invariant_sup_squared(&self, set: &[usize]) -> f64 {
        let p = self.projector_onto(set);
        let mut e1 = DVector::zeros(self.n);
        e1[0] = 1.0;
        let form = self.contract_alpha(&p, &e1);
        SymmetricEigen::new(form).eigenvalues.max()
    }

    /// The dim_v × dim_v form v ↦ ⟨P(α⊗v), α⊗v⟩.
    pub(crate) fn contract_alpha(&self, p: &DMatrix<f64>, alpha: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim_v;
        let mut out = DMatrix::zeros(d, d);
        for i in 0..self.n {
            if alpha[i] == 0.0 {
                continue;
            }
            for a in 0..self.n {
                if alpha[a] == 0.0 {
                    continue;
                }
                out += p.view((i * d, a * d), (d, d)) * (alpha[i] * alpha[a]);
            }
        }
        symmetrize(out)
    }

    /// The n × n form α ↦ ⟨P(α⊗v), α⊗v⟩.
    pub(crate) fn contract_v(&self, p: &DMatrix<f64>, v: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim_v;
        let mut out = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for a in 0..self.n {
                out[(i, a)] = v.dot(&(p.view((i * d, a * d), (d, d)) * v));
            }
        }
        symmetrize(out)
    }
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

pub fn random_unit<R: Rng>(len: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let v = DVector::from_iterator(len, (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)));
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}
