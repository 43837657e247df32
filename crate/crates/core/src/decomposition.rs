//! Splitting of ℝⁿ ⊗ V_λ into the eigenspaces of B.

use std::fmt;

use num_bigint::BigInt;

use crate::casimir;
use crate::numeric::{int, rat, HalfInt, Rational};
use crate::weights::{dominance_violation, format_entries, Chirality, DominantWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VirtualKind {
    Plus(usize),
    Zero,
    Minus(usize),
}

impl fmt::Display for VirtualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VirtualKind::Plus(i) => write!(f, "+{i}"),
            VirtualKind::Zero => write!(f, "0"),
            VirtualKind::Minus(i) => write!(f, "-{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualWeight {
    pub kind: VirtualKind,
    pub target_entries: Vec<HalfInt>,
    pub w: Rational,
    pub effective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// 1-based position in order of decreasing conformal weight.
    pub index: usize,
    pub targets: Vec<VirtualWeight>,
    pub w: Rational,
    pub w_tilde: Rational,
    pub dim: BigInt,
}

impl Component {
    pub fn is_merged(&self) -> bool {
        self.targets.len() == 2
    }
}

/// Which of the three possible relations between N and the block count ν
/// holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    TwoNuMinusOne,
    TwoNu,
    TwoNuPlusOne,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::TwoNuMinusOne => "N=2nu-1",
            CaseTag::TwoNu => "N=2nu",
            CaseTag::TwoNuPlusOne => "N=2nu+1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub lambda: DominantWeight,
    pub nu: usize,
    pub components: Vec<Component>,
    pub case_tag: CaseTag,
}

impl Decomposition {
    #[allow(non_snake_case)]
    pub fn N(&self) -> usize {
        self.components.len()
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn w(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.w.clone()).collect()
    }

    pub fn w_tilde(&self) -> Vec<Rational> {
        translated_weights(self)
    }

    /// w̃ of the 1-based component `j`.
    pub fn wt(&self, j: usize) -> &Rational {
        &self.components[j - 1].w_tilde
    }

    pub fn is_odd(&self) -> bool {
        self.N() % 2 == 1
    }

    /// True in the one case where the Main Theorem may fail to be sharp.
    pub fn is_half_integral_exception(&self) -> bool {
        self.case_tag == CaseTag::TwoNuPlusOne && self.lambda.is_properly_half_integral()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let flip = self.lambda.chirality() == Chirality::Negative;
        let components: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|c| {
                let targets: Vec<String> = c
                    .targets
                    .iter()
                    .map(|t| {
                        let mut e = t.target_entries.clone();
                        if flip {
                            let last = e.len() - 1;
                            e[last] = -&e[last];
                        }
                        format_entries(&e)
                    })
                    .collect();
                serde_json::json!({
                    "j": c.index,
                    "targets": targets,
                    "w": c.w.to_string(),
                    "w_tilde": c.w_tilde.to_string(),
                    "dim": c.dim.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n(),
            "lambda": self.lambda.to_string(),
            "N": self.N(),
            "nu": self.nu,
            "case": self.case_tag.label(),
            "components": components,
        })
    }
}

/// Explicit conformal weight of a virtual weight of λ.
fn explicit_w(n: usize, lambda: &[Rational], kind: VirtualKind) -> Rational {
    let n_r = int(n as i64);
    match kind {
        VirtualKind::Zero => (int(1) - n_r) / int(2),
        VirtualKind::Plus(i) => int(1) + &lambda[i - 1] - int(i as i64),
        VirtualKind::Minus(i) => int(1) - n_r - (&lambda[i - 1] - int(i as i64)),
    }
}

/// The 2m+1 virtual weights in the order μ^{1,+}, …, μ^{m,+}, μ⁰,
/// μ^{m,−}, …, μ^{1,−}, which is also the order of decreasing w.
pub fn virtual_weights(lambda: &DominantWeight) -> Vec<VirtualWeight> {
    let n = lambda.n();
    let m = lambda.rank();
    let lam_r = lambda.entries_rational();
    let last = &lambda.entries()[m - 1];

    let shifted = |i: usize, delta: i64| {
        let mut e = lambda.entries().to_vec();
        e[i - 1] = e[i - 1].plus_int(delta);
        e
    };
    let make = |kind: VirtualKind, target: Vec<HalfInt>, effective: bool| {
        let w = explicit_w(n, &lam_r, kind);
        VirtualWeight {
            kind,
            target_entries: target,
            w,
            effective,
        }
    };

    let mut out = Vec::with_capacity(2 * m + 1);
    for i in 1..=m {
        let t = shifted(i, 1);
        let ok = dominance_violation(n, &t).is_none();
        out.push(make(VirtualKind::Plus(i), t, ok));
    }
    let zero_effective = n % 2 == 1 && !last.is_zero();
    out.push(make(VirtualKind::Zero, lambda.entries().to_vec(), zero_effective));
    for i in (1..=m).rev() {
        let t = shifted(i, -1);
        let ok = dominance_violation(n, &t).is_none();
        out.push(make(VirtualKind::Minus(i), t, ok));
    }
    out
}

/// Translated weights w̃_j = w_j + (n−1)/2, one per component.
pub fn translated_weights(d: &Decomposition) -> Vec<Rational> {
    d.components.iter().map(|c| c.w_tilde.clone()).collect()
}

pub fn decompose(lambda: &DominantWeight) -> Decomposition {
    let n = lambda.n();
    let shift = rat(n as i64 - 1, 2);
    let profile = lambda.profile();
    let nu = profile.nu;

    let mut components: Vec<Component> = Vec::new();
    for v in virtual_weights(lambda).into_iter().filter(|v| v.effective) {
        debug_assert_eq!(
            casimir::conformal_weight(&v.target_entries, lambda),
            v.w,
            "explicit conformal weight disagrees with the Casimir definition"
        );
        let dim = casimir::weyl_dimension(&v.target_entries, n)
            .expect("effective virtual weights are dominant");
        match components.last_mut() {
            // equal weights only occur for the μ^{m,±} pair
            Some(c) if c.w == v.w => {
                c.dim += dim;
                c.targets.push(v);
            }
            _ => {
                let w = v.w.clone();
                components.push(Component {
                    index: components.len() + 1,
                    w_tilde: &w + &shift,
                    w,
                    dim,
                    targets: vec![v],
                });
            }
        }
    }

    let last = profile.last_value();
    let case_tag = if last.is_zero() {
        CaseTag::TwoNuMinusOne
    } else if n % 2 == 0 || *last == HalfInt::from_twice(1) {
        CaseTag::TwoNu
    } else {
        CaseTag::TwoNuPlusOne
    };
    let expected = match case_tag {
        CaseTag::TwoNuMinusOne => 2 * nu - 1,
        CaseTag::TwoNu => 2 * nu,
        CaseTag::TwoNuPlusOne => 2 * nu + 1,
    };
    assert_eq!(
        components.len(),
        expected,
        "component count disagrees with the case analysis for {lambda}"
    );
    Decomposition {
        lambda: lambda.clone(),
        nu,
        components,
        case_tag,
    }
}

/// Checks the strict decrease of the full virtual chain, allowing only the
/// middle equality w^{m,+} = w^{m,−}.
pub fn virtual_chain_ok(lambda: &DominantWeight) -> bool {
    let v = virtual_weights(lambda);
    // μ⁰ sits between the m-th plus and minus weights; compare without it
    let chain: Vec<&VirtualWeight> = v.iter().filter(|x| x.kind != VirtualKind::Zero).collect();
    let m = lambda.rank();
    chain.windows(2).enumerate().all(|(k, pair)| {
        if k + 1 == m {
            pair[0].w >= pair[1].w
        } else {
            pair[0].w > pair[1].w
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(d: &Decomposition) -> Vec<Rational> {
        d.w()
    }

    #[test]
    fn virtual_weights_standard_dim4() {
        let l = DominantWeight::from_ints(4, &[1, 0]).unwrap();
        let v = virtual_weights(&l);
        let eff: Vec<(String, Rational)> = v
            .iter()
            .filter(|x| x.effective)
            .map(|x| (format_entries(&x.target_entries), x.w.clone()))
            .collect();
        assert_eq!(
            eff,
            vec![
                ("(2, 0)".to_string(), int(1)),
                ("(1, 1)".to_string(), int(-1)),
                ("(1, -1)".to_string(), int(-1)),
                ("(0, 0)".to_string(), int(-3)),
            ]
        );
    }

    #[test]
    fn virtual_weights_spinor_dim5() {
        let l = DominantWeight::parse(5, "1/2,1/2").unwrap();
        let v = virtual_weights(&l);
        let plus1 = &v[0];
        assert!(plus1.effective);
        assert_eq!(plus1.w, rat(1, 2));
        let zero = v.iter().find(|x| x.kind == VirtualKind::Zero).unwrap();
        assert!(zero.effective);
        assert_eq!(zero.w, int(-2));
        let minus2 = v.iter().find(|x| x.kind == VirtualKind::Minus(2)).unwrap();
        assert!(!minus2.effective);
    }

    #[test]
    fn trivial_rep_dim3() {
        let l = DominantWeight::zero(3).unwrap();
        let d = decompose(&l);
        assert_eq!(d.N(), 1);
        assert_eq!(format_entries(&d.components[0].targets[0].target_entries), "(1)");
        assert_eq!(d.components[0].w, int(0));
        assert_eq!(translated_weights(&d), vec![int(1)]);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&DominantWeight::from_ints(4, &[1, 0]).unwrap());
        assert_eq!(d.N(), 3);
        assert_eq!(ws(&d), vec![int(1), int(-1), int(-3)]);
        assert!(d.components[1].is_merged());
        assert_eq!(d.components[1].dim, BigInt::from(6));
        assert_eq!(translated_weights(&d), vec![rat(5, 2), rat(1, 2), rat(-3, 2)]);

        let d = decompose(&DominantWeight::from_ints(5, &[2, 2]).unwrap());
        assert_eq!(d.N(), 3);
        assert_eq!(ws(&d), vec![int(2), int(-2), int(-4)]);
        assert_eq!(d.case_tag, CaseTag::TwoNuPlusOne);

        let d = decompose(&DominantWeight::from_ints(4, &[3, 1]).unwrap());
        assert_eq!(d.N(), 4);
        assert_eq!(ws(&d), vec![int(3), int(0), int(-2), int(-5)]);
        assert_eq!(d.case_tag, CaseTag::TwoNu);

        let d = decompose(&DominantWeight::parse(5, "1/2,1/2").unwrap());
        assert_eq!(d.N(), 2);
        assert_eq!(translated_weights(&d), vec![rat(5, 2), int(0)]);
    }

    #[test]
    fn mirror_gives_same_weights() {
        let a = DominantWeight::from_ints(6, &[2, 1, 1]).unwrap();
        let b = DominantWeight::from_ints(6, &[2, 1, -1]).unwrap();
        assert_eq!(decompose(&a).w(), decompose(&b).w());
        assert_eq!(decompose(&b).to_json()["components"][0]["targets"][0], "(3, 1, -1)");
    }
}
