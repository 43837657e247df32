//! Concrete matrix realizations of so(n) on small tensor representations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use super::OracleError;
use crate::weights::DominantWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepKind {
    Standard,
    LambdaP(usize),
    Sym2Traceless,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Standard => write!(f, "standard"),
            RepKind::LambdaP(p) => write!(f, "lambda^{p}"),
            RepKind::Sym2Traceless => write!(f, "sym2"),
        }
    }
}

impl FromStr for RepKind {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "standard" | "std" | "vector" => return Ok(RepKind::Standard),
            "sym2" | "sym2_traceless" | "s2" | "s20" => return Ok(RepKind::Sym2Traceless),
            _ => {}
        }
        let digits = t
            .strip_prefix("lambda^")
            .or_else(|| t.strip_prefix("lambda_p(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| t.strip_prefix("lambda"));
        match digits.and_then(|d| d.parse::<usize>().ok()) {
            Some(p) => Ok(RepKind::LambdaP(p)),
            None => Err(OracleError::Unsupported(s.to_string())),
        }
    }
}

/// dλ on a real orthogonal representation, one antisymmetric matrix per
/// basis element e_i∧e_j with i < j.
#[derive(Debug, Clone)]
pub struct RepModel {
    pub n: usize,
    pub kind: RepKind,
    pub dim_v: usize,
    generators: Vec<DMatrix<f64>>,
    pub tolerance: f64,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl RepModel {
    /// dλ(e_i∧e_j) for any i ≠ j (0-based), using antisymmetry for i > j.
    pub fn generator(&self, i: usize, j: usize) -> DMatrix<f64> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.generators[pair_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.generators[pair_index(self.n, j, i)],
            std::cmp::Ordering::Equal => DMatrix::zeros(self.dim_v, self.dim_v),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Highest weights of the irreducible summands. Λ^{n/2} splits into the
    /// two chiral halves.
    pub fn weights(&self) -> Vec<DominantWeight> {
        let m = self.n / 2;
        let mut e = vec![0i64; m];
        match self.kind {
            RepKind::Standard => e[0] = 1,
            RepKind::Sym2Traceless => e[0] = 2,
            RepKind::LambdaP(p) => e[..p].iter_mut().for_each(|x| *x = 1),
        }
        let w = DominantWeight::from_ints(self.n, &e).expect("tensor weights are dominant");
        if matches!(self.kind, RepKind::LambdaP(p) if 2 * p == self.n) {
            vec![w.clone(), w.mirror()]
        } else {
            vec![w]
        }
    }

    pub fn max_antisymmetry_defect(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| (g + g.transpose()).amax())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from dλ([X, Y]) = [dλX, dλY] over all basis pairs.
    pub fn max_commutator_defect(&self) -> f64 {
        let n = self.n;
        let std = standard_generators(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut worst = 0.0f64;
        for (p, &(a, b)) in pairs.iter().enumerate() {
            for (q, &(c, d)) in pairs.iter().enumerate().skip(p + 1) {
                let x = &std[pair_index(n, a, b)];
                let y = &std[pair_index(n, c, d)];
                let bracket = x * y - y * x;
                // X_ij has its +1 in row j, column i
                let mut image = DMatrix::zeros(self.dim_v, self.dim_v);
                for &(i, j) in &pairs {
                    let coeff = bracket[(j, i)];
                    if coeff != 0.0 {
                        image += &self.generators[pair_index(n, i, j)] * coeff;
                    }
                }
                let gx = &self.generators[p];
                let gy = &self.generators[q];
                let defect = (gx * gy - gy * gx - image).amax();
                worst = worst.max(defect);
            }
        }
        worst
    }
}

/// e_i∧e_j sends e_i to e_j and e_j to −e_i.
fn standard_generators(n: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut m = DMatrix::zeros(n, n);
            m[(j, i)] = 1.0;
            m[(i, j)] = -1.0;
            out.push(m);
        }
    }
    out
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Sorts `v` in place and returns the sign of the permutation, or None if
/// an index repeats.
fn sort_with_sign(v: &mut [usize]) -> Option<f64> {
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some(sign)
}

fn lambda_p_generators(n: usize, p: usize) -> Vec<DMatrix<f64>> {
    let basis = subsets(n, p);
    let index: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    let dim = basis.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut m = DMatrix::zeros(dim, dim);
            for (col, s) in basis.iter().enumerate() {
                for pos in 0..p {
                    let (target, coeff) = if s[pos] == a {
                        (b, 1.0)
                    } else if s[pos] == b {
                        (a, -1.0)
                    } else {
                        continue;
                    };
                    let mut t = s.clone();
                    t[pos] = target;
                    if let Some(sign) = sort_with_sign(&mut t) {
                        m[(index[&t], col)] += coeff * sign;
                    }
                }
            }
            out.push(m);
        }
    }
    out
}

/// Orthonormal basis of traceless symmetric matrices inside ℝⁿ⊗ℝⁿ, as
/// columns of an n² × (n(n+1)/2 − 1) matrix.
fn sym2_traceless_basis(n: usize) -> DMatrix<f64> {
    let dim = n * (n + 1) / 2 - 1;
    let mut u = DMatrix::zeros(n * n, dim);
    let mut col = 0;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in i + 1..n {
            u[(i * n + j, col)] = s;
            u[(j * n + i, col)] = s;
            col += 1;
        }
    }
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            u[(i * n + i, col)] = 1.0 / norm;
        }
        u[(k * n + k, col)] = -(k as f64) / norm;
        col += 1;
    }
    u
}

fn sym2_generators(n: usize) -> Vec<DMatrix<f64>> {
    let u = sym2_traceless_basis(n);
    let id = DMatrix::<f64>::identity(n, n);
    standard_generators(n)
        .iter()
        .map(|x| {
            let t = x.kronecker(&id) + id.kronecker(x);
            u.transpose() * t * &u
        })
        .collect()
}

pub fn build_rep(n: usize, kind: RepKind) -> Result<RepModel, OracleError> {
    if n < 3 {
        return Err(OracleError::Dimension(n));
    }
    let generators = match kind {
        RepKind::Standard | RepKind::LambdaP(1) => standard_generators(n),
        RepKind::LambdaP(p) if (2..=n / 2).contains(&p) => lambda_p_generators(n, p),
        RepKind::LambdaP(p) => {
            return Err(OracleError::Unsupported(format!(
                "lambda^{p} needs 1 <= p <= {} for n = {n}",
                n / 2
            )))
        }
        RepKind::Sym2Traceless => sym2_generators(n),
    };
    let kind = if kind == RepKind::LambdaP(1) { RepKind::Standard } else { kind };
    let dim_v = generators[0].nrows();
    Ok(RepModel {
        n,
        kind,
        dim_v,
        generators,
        tolerance: 1e-9,
    })
}
