//! Explicit formulas for k_I² on recognizable (N, I) patterns. They are
//! written out term by term rather than routed through the vertex
//! enumeration so that they can serve as an independent check on it.

use num_traits::One;

use super::KatoError;
use crate::decomposition::Decomposition;
use crate::ellipticity::OperatorSubset;
use crate::numeric::{half, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralN3 {
    pub k2_2: Rational,
    pub k2_23: Rational,
    pub k2_12: Rational,
}

/// Sharpened constants for N = 3, ν = 1 and λ = (k, …, k) properly
/// half-integral, where the Main Theorem is not sharp.
pub fn half_integral_n3_constants(d: &Decomposition) -> Result<HalfIntegralN3, KatoError> {
    if !(d.N() == 3 && d.nu == 1 && d.is_half_integral_exception()) {
        return Err(KatoError::Precondition(format!(
            "needs N = 3 with a single properly half-integral block, got N = {} for {}",
            d.N(),
            d.lambda
        )));
    }
    let k = d.lambda.entries()[0].to_rational();
    let n = int(d.n() as i64);
    let a = int(2) * &k + &n - int(1);
    let b = int(4) * &k + &n - int(1);
    Ok(HalfIntegralN3 {
        k2_2: int(1) - int(1) / (int(2) * &k * &a),
        k2_23: (&a * &a - int(1)) / (&a * &b),
        k2_12: (int(4) * &k * &k - int(1)) / (int(2) * &k * &b),
    })
}

fn set(v: impl IntoIterator<Item = usize>) -> OperatorSubset {
    OperatorSubset::new(v)
}

fn prod(it: impl Iterator<Item = Rational>) -> Rational {
    it.fold(Rational::one(), |a, b| a * b)
}

/// Shorthand over the translated weights with the pairing p(i) = N+2−i.
struct Ctx<'a> {
    d: &'a Decomposition,
    n_comp: usize,
}

impl Ctx<'_> {
    fn w(&self, i: usize) -> &Rational {
        self.d.wt(i)
    }

    fn p(&self, i: usize) -> usize {
        self.n_comp + 2 - i
    }

    /// Π_{k∈range} (w̃_a + w̃_k)
    fn sums(&self, a: usize, ks: impl Iterator<Item = usize>) -> Rational {
        prod(ks.map(|k| self.w(a) + self.w(k)))
    }

    /// Π_{k∈range} (w̃_a − w̃_k)
    fn diffs(&self, a: usize, ks: impl Iterator<Item = usize>) -> Rational {
        prod(ks.map(|k| self.w(a) - self.w(k)))
    }

    /// Π_{j∈J, j≠skip} (w̃_i + w̃_j)/(w̃_i − w̃_{p(j)})
    fn ratio_product(&self, i: usize, j_set: &[usize], skip: Option<usize>) -> Rational {
        prod(
            j_set
                .iter()
                .filter(|&&j| Some(j) != skip)
                .map(|&j| (self.w(i) + self.w(j)) / (self.w(i) - self.w(self.p(j)))),
        )
    }

    fn minus_half(&self, i: usize) -> Rational {
        self.w(i) - half()
    }
}

/// The set J_i^max maximizing the i-th vertex term (i ≠ 1, middle).
fn j_max(h: usize, n_comp: usize, i: usize) -> Vec<usize> {
    let p = n_comp + 2 - i;
    if i <= h {
        (i + 1..=h).chain(p..=n_comp).collect()
    } else {
        (p..=h).chain(i + 1..=n_comp).collect()
    }
}

/// The pair-with-slack family: J0 = {2..i−1} ∪ {p(j) : i < j ≤ h}.
fn j_zero(h: usize, n_comp: usize, i: usize) -> Vec<usize> {
    (2..i).chain((i + 1..=h).map(|j| n_comp + 2 - j)).collect()
}

fn pair_with_slack_matches(h: usize, n_comp: usize, set: &OperatorSubset) -> Option<(usize, Vec<usize>)> {
    (2..=h).find_map(|i| {
        let p = n_comp + 2 - i;
        if p == i {
            return None;
        }
        let j0 = j_zero(h, n_comp, i);
        let allowed = set_with(&j0, [i, p]);
        (set.contains(i) && set.contains(p) && set.is_subset(&allowed)).then_some((i, j0))
    })
}

fn set_with(base: &[usize], extra: [usize; 2]) -> OperatorSubset {
    set(base.iter().copied().chain(extra))
}

fn w_plain(d: &Decomposition, j: usize) -> &Rational {
    &d.components[j - 1].w
}

/// Every pattern that matches (N, I), as `(label, k²)` in priority order.
pub fn closed_form_matches(d: &Decomposition, i_set: &OperatorSubset) -> Vec<(&'static str, Rational)> {
    let mut out = Vec::new();
    let n_comp = d.N();
    if i_set.is_empty() || i_set.check_range(n_comp).is_err() {
        return out;
    }
    let ctx = Ctx { d, n_comp };
    let hat = i_set.complement(n_comp);
    let n = int(d.n() as i64);
    let w = |j: usize| w_plain(d, j);

    if d.N() == 1 {
        out.push(("N=1", Rational::from_integer(0.into())));
        return out;
    }

    if let Ok(c) = half_integral_n3_constants(d) {
        if *i_set == set([2]) {
            out.push(("half-integral N=3 {2}", c.k2_2));
        } else if *i_set == set([2, 3]) {
            out.push(("half-integral N=3 {2,3}", c.k2_23));
        } else if *i_set == set([1, 2]) {
            out.push(("half-integral N=3 {1,2}", c.k2_12));
        }
    }

    match n_comp {
        2 => {
            if *i_set == set([1]) {
                out.push(("N=2 {1}", w(1) / (w(1) - w(2))));
            } else if *i_set == set([2]) {
                out.push(("N=2 {2}", -w(2) / (w(1) - w(2))));
            }
        }
        3 => {
            if *i_set == set([1]) || *i_set == set([1, 3]) {
                out.push(("N=3 {1}/{1,3}", w(1) / (w(1) - w(2))));
            } else if *i_set == set([2, 3]) {
                out.push(("N=3 {2,3}", -w(3) / (w(1) - w(3))));
            } else if *i_set == set([1, 2]) {
                out.push(("N=3 {1,2}", w(1) / (w(1) - w(3))));
            }
        }
        4 => {
            let c = (&n - int(2)) / int(2);
            let n1 = &n - int(1);
            if *i_set == set([1]) {
                out.push((
                    "N=4 {1}",
                    int(1) - (w(1) + &c) * (w(1) + w(4) + &n1) / ((w(1) - w(2)) * (w(1) - w(3))),
                ));
            } else if *i_set == set([3]) {
                out.push((
                    "N=4 {3}",
                    int(1) - (w(3) + &c) * (w(3) + w(2) + &n1) / ((w(3) - w(4)) * (w(3) - w(1))),
                ));
            } else if *i_set == set([2, 4]) {
                let t4 = (w(4) + &c) * (w(2) + w(4) + &n1) / ((w(4) - w(1)) * (w(4) - w(3)));
                let t2 = (w(2) + &c) * (w(2) + w(4) + &n1) / ((w(2) - w(1)) * (w(2) - w(3)));
                out.push(("N=4 {2,4}", int(1) - t4.min(t2)));
            }
        }
        _ => {}
    }

    if d.is_odd() {
        odd_patterns(&ctx, i_set, &hat, &mut out);
    } else {
        even_patterns(&ctx, i_set, &hat, &mut out);
    }
    out
}

fn odd_patterns(
    c: &Ctx<'_>,
    i_set: &OperatorSubset,
    hat: &OperatorSubset,
    out: &mut Vec<(&'static str, Rational)>,
) {
    let n_comp = c.n_comp;
    let h = n_comp.div_ceil(2);
    let one = Rational::one();

    // (i) twistor-containing sets
    if i_set.contains(1) && i_set.is_subset(&set(std::iter::once(1).chain(h + 1..=n_comp))) {
        let v = &one - c.sums(1, h + 1..=n_comp) / c.diffs(1, 2..=h);
        out.push(("odd (i)", v));
    }
    // (ii) a pair together with slack indices
    if let Some((i, j0)) = pair_with_slack_matches(h, n_comp, i_set) {
        let p = c.p(i);
        let c1 = (c.w(i) + c.w(p)) / (c.w(i) - c.w(1)) * c.ratio_product(i, &j0, None);
        let c2 = (c.w(i) + c.w(p)) / (c.w(p) - c.w(1)) * c.ratio_product(p, &j0, None);
        out.push(("odd (ii)", &one - c1.min(c2)));
    }
    // (iii) everything but the twistor component
    if *i_set == set(2..=n_comp) {
        out.push(("odd (iii)", c.sums(1, 2..=h) / c.diffs(1, h + 1..=n_comp)));
    }
    // (iv) complement of a single generalized gradient
    if hat.len() == 1 && hat.indices()[0] >= 2 {
        let i = hat.indices()[0];
        let jm = j_max(h, n_comp, i);
        let p = c.p(i);
        let v = (c.w(i) + c.w(p)) / (c.w(i) - c.w(1)) * c.ratio_product(i, &jm, Some(p));
        out.push(("odd (iv)", v));
    }
    // (v) complement {1, N}
    if n_comp >= 3 && *i_set == set(2..n_comp) {
        let last = n_comp;
        let a = c.sums(last, 2..=h) / ((c.w(last) - c.w(1)) * c.diffs(last, h + 1..n_comp));
        let b = c.sums(1, 2..=h) / c.diffs(1, h + 1..=n_comp);
        out.push(("odd (v)", a + b));
    }
    // (vi) complement {i, N+1−i}
    if hat.len() == 2 {
        let i = hat.indices()[0];
        let q = hat.indices()[1];
        if (2..h).contains(&i) && q == n_comp + 1 - i {
            let jm = j_max(h, n_comp, i);
            let a = (c.w(i) + c.w(c.p(i))) / (c.w(i) - c.w(1))
                * c.ratio_product(i, &jm, Some(c.p(i)));
            let b = (c.w(i + 1) + c.w(q)) / (c.w(q) - c.w(1)) * c.ratio_product(q, &jm, Some(i + 1));
            out.push(("odd (vi)", a + b));
        }
    }
}

fn even_patterns(
    c: &Ctx<'_>,
    i_set: &OperatorSubset,
    hat: &OperatorSubset,
    out: &mut Vec<(&'static str, Rational)>,
) {
    let n_comp = c.n_comp;
    let h = n_comp / 2;
    let mid = h + 1;
    let one = Rational::one();

    // (i) twistor-containing sets
    if i_set.contains(1) && i_set.is_subset(&set(std::iter::once(1).chain(h + 2..=n_comp))) {
        let v = &one - c.minus_half(1) * c.sums(1, h + 2..=n_comp) / c.diffs(1, 2..=h + 1);
        out.push(("even (i)", v));
    }
    // (ii) sets containing the middle component below it
    if i_set.contains(mid) && i_set.is_subset(&set(2..=mid)) {
        let v = &one
            - c.minus_half(mid) * c.sums(mid, 2..=h)
                / ((c.w(mid) - c.w(1)) * c.diffs(mid, h + 2..=n_comp));
        out.push(("even (ii)", v));
    }
    // (iii) a pair together with slack indices
    if let Some((i, j0)) = pair_with_slack_matches(h, n_comp, i_set) {
        let p = c.p(i);
        let c1 = (c.w(i) + c.w(p)) * c.minus_half(i) / ((c.w(i) - c.w(mid)) * (c.w(i) - c.w(1)))
            * c.ratio_product(i, &j0, None);
        let c2 = (c.w(i) + c.w(p)) * c.minus_half(p) / ((c.w(p) - c.w(mid)) * (c.w(p) - c.w(1)))
            * c.ratio_product(p, &j0, None);
        out.push(("even (iii)", &one - c1.min(c2)));
    }
    // (iv) everything but the twistor component
    if *i_set == set(2..=n_comp) {
        let v = c.minus_half(1) * c.sums(1, 2..=h) / c.diffs(1, h + 1..=n_comp);
        out.push(("even (iv)", v));
    }
    // (v) everything but the middle component
    if *hat == set([mid]) {
        let v = c.minus_half(mid) * c.sums(mid, h + 2..=n_comp) / c.diffs(mid, 1..=h);
        out.push(("even (v)", v));
    }
    // (vi) complement of a single gradient other than 1 and the middle
    if hat.len() == 1 {
        let i = hat.indices()[0];
        if i >= 2 && i != mid {
            let p = c.p(i);
            let jm = j_max(h, n_comp, i);
            let v = c.minus_half(i) * (c.w(i) + c.w(p)) / ((c.w(i) - c.w(1)) * (c.w(i) - c.w(mid)))
                * c.ratio_product(i, &jm, Some(p));
            out.push(("even (vi)", v));
        }
    }
    // (vii) complement {1, N}
    if n_comp >= 4 && *i_set == set(2..n_comp) {
        let last = n_comp;
        let a = c.minus_half(1) * c.sums(1, 2..=h) / c.diffs(1, h + 1..=n_comp);
        let b = c.minus_half(last) * c.sums(last, 2..=h)
            / ((c.w(last) - c.w(1)) * c.diffs(last, h + 1..n_comp));
        out.push(("even (vii)", a + b));
    }
    // (viii) complement {h, h+1}
    if h >= 2 && *hat == set([h, mid]) {
        let a = c.minus_half(h) * c.sums(h, h + 2..=n_comp)
            / ((c.w(h) - c.w(mid)) * c.diffs(h, 1..h));
        let b = c.minus_half(mid) * c.sums(mid, h + 2..=n_comp) / c.diffs(mid, 1..=h);
        out.push(("even (viii)", a + b));
    }
    // (ix) complement {i, N+1−i}; the second term carries w̃_{N+1−i} − ½
    if hat.len() == 2 {
        let i = hat.indices()[0];
        let q = hat.indices()[1];
        if (2..h).contains(&i) && q == n_comp + 1 - i {
            let jm = j_max(h, n_comp, i);
            let p = c.p(i);
            let a = (c.w(i) + c.w(p)) * c.minus_half(i) / ((c.w(i) - c.w(1)) * (c.w(i) - c.w(mid)))
                * c.ratio_product(i, &jm, Some(p));
            let b = (c.w(i + 1) + c.w(q)) * c.minus_half(q)
                / ((c.w(q) - c.w(1)) * (c.w(q) - c.w(mid)))
                * c.ratio_product(q, &jm, Some(i + 1));
            out.push(("even (ix)", a + b));
        }
    }
}

/// The first matching closed form, if any.
pub fn closed_form(d: &Decomposition, i_set: &OperatorSubset) -> Option<Rational> {
    closed_form_matches(d, i_set).into_iter().next().map(|(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::numeric::rat;
    use crate::weights::DominantWeight;

    fn dec(n: usize, e: &str) -> Decomposition {
        decompose(&DominantWeight::parse(n, e).unwrap())
    }

    #[test]
    fn n2_twistor() {
        let d = dec(6, "1,1,1");
        assert_eq!(d.N(), 2);
        let w = d.w();
        assert_eq!(closed_form(&d, &set([1])), Some(&w[0] / (&w[0] - &w[1])));
    }

    #[test]
    fn n3_dirac_type() {
        let d = dec(4, "1,0");
        assert_eq!(closed_form(&d, &set([2, 3])), Some(rat(3, 4)));
    }

    #[test]
    fn n4_spin_field() {
        let d = dec(4, "3,1");
        assert_eq!(closed_form(&d, &set([3])), Some(rat(14, 15)));
    }

    #[test]
    fn half_integral_constants() {
        let c = half_integral_n3_constants(&dec(3, "3/2")).unwrap();
        assert_eq!(c.k2_2, rat(14, 15));
        assert_eq!(c.k2_23, rat(3, 5));
        assert_eq!(c.k2_12, rat(1, 3));
        let c = half_integral_n3_constants(&dec(3, "5/2")).unwrap();
        assert_eq!(c.k2_2, rat(34, 35));
        assert_eq!(c.k2_12, rat(2, 5));
        assert!(half_integral_n3_constants(&dec(5, "1/2,1/2")).is_err());
        assert!(half_integral_n3_constants(&dec(5, "2,2")).is_err());
    }
}
