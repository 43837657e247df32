use refined_kato::decomposition::decompose;
use refined_kato::ellipticity::OperatorSubset;
use refined_kato::kato::{closed_form_matches, KatoSolver};
use refined_kato::weights::weight_grid;

#[test]
fn closed_forms_agree_with_vertex_enumeration() {
    let mut bad = Vec::new();
    let mut checked = 0usize;
    let mut seen = std::collections::BTreeMap::new();
    for n in 3..=8 {
        for lambda in weight_grid(n, 6) {
            let d = decompose(&lambda);
            let solver = KatoSolver::new(&d);
            for set in OperatorSubset::all_nonempty(d.N()) {
                let matches = closed_form_matches(&d, &set);
                if matches.is_empty() {
                    continue;
                }
                let k = solver.solve(&set).unwrap();
                for (label, v) in matches {
                    *seen.entry(label).or_insert(0usize) += 1;
                    checked += 1;
                    let ok = if label.starts_with("half-integral") {
                        v <= k.k_squared
                    } else if d.is_half_integral_exception() && !k.sharp {
                        true
                    } else {
                        v == k.k_squared
                    };
                    if !ok {
                        bad.push(format!("n={n} {lambda} N={} I={set} {label}: {v} vs {}", d.N(), k.k_squared));
                    }
                }
            }
        }
    }
    for family in ["odd (vi)", "even (ix)", "even (viii)", "half-integral N=3 {1,2}"] {
        assert!(seen.contains_key(family), "{family} never exercised");
    }
    assert!(checked > 500, "only {checked} closed-form evaluations");
    assert!(bad.is_empty(), "{} mismatches:\n{}", bad.len(), bad[..bad.len().min(40)].join("\n"));
}
