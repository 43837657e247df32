//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any of them fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use refined_kato::decomposition::decompose;
use refined_kato::ellipticity::OperatorSubset;
use refined_kato::kato::{half_integral_n3_constants, kato_constant};
use refined_kato::numeric::{int, rat, Rational};
use refined_kato::oracle::{run_oracle, RepKind, SupOptions};
use refined_kato::tables::{dim3_table, dim4_table};
use refined_kato::verify::{self, CheckResult, Grid};
use refined_kato::weights::DominantWeight;

type Outcome = Result<String, String>;

fn weight(n: usize, twice: &[i64]) -> DominantWeight {
    DominantWeight::from_twice(n, twice).expect("test weights are dominant")
}

fn k2(n: usize, twice: &[i64], set: &[usize]) -> Rational {
    let d = decompose(&weight(n, twice));
    kato_constant(&d, &OperatorSubset::new(set.iter().copied())).unwrap().k_squared
}

fn expect_eq(label: &str, got: Rational, want: Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, want {want}"))
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn checks(results: &[CheckResult]) -> Outcome {
    let mut cases = 0;
    for r in results {
        if !r.passed() {
            return Err(format!(
                "{}: {} of {} failed, first: {}",
                r.name,
                r.failures,
                r.cases,
                r.first_failure.as_deref().unwrap_or("no cases")
            ));
        }
        cases += r.cases;
    }
    Ok(format!("{} checks, {cases} cases", results.len()))
}

/// Main grid: n ≤ 9, entries ≤ 3.
fn main_grid() -> Grid {
    Grid::new(3..=9, 6)
}

fn closed_form_triples() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 3..=12usize {
        let m = n / 2;
        let nn = n as i64;
        let pad = |head: &[i64]| {
            let mut t = head.to_vec();
            t.resize(m, 0);
            t
        };
        let mut families: Vec<(&str, Vec<i64>, [Rational; 3])> = vec![
            ("standard", pad(&[2]), [rat(1, 2), rat(nn - 1, nn), rat(1, nn)]),
            ("traceless sym2", pad(&[4]), [rat(2, 3), rat(nn, nn + 2), rat(2, nn + 2)]),
        ];
        if n >= 5 {
            families.push(("two-forms", pad(&[2, 2]), [rat(1, 3), rat(nn - 2, nn - 1), rat(1, nn - 1)]));
            families.push(("Weyl-type", pad(&[4, 4]), [rat(1, 2), rat(nn - 1, nn + 1), rat(2, nn + 1)]));
        }
        for (name, twice, want) in families {
            for (set, value) in [&[1][..], &[2, 3], &[1, 2]].into_iter().zip(want) {
                expect_eq(&format!("{name} n={n} I={set:?}"), k2(n, &twice, set), value)?;
                count += 1;
            }
        }
        if n == 4 {
            // both two-form type weights split into two pieces here, and the
            // triple collapses onto {2} and {1}
            for (name, twice, hi, lo) in [
                ("two-forms", [2, 2], rat(2, 3), rat(1, 3)),
                ("Weyl-type", [4, 4], rat(3, 5), rat(2, 5)),
            ] {
                expect_eq(&format!("{name} n=4 I={{2}}"), k2(4, &twice, &[2]), hi)?;
                expect_eq(&format!("{name} n=4 I={{1}}"), k2(4, &twice, &[1]), lo)?;
                count += 2;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("{count} values in {elapsed:.2?}"))
}

fn introduction_estimates() -> Outcome {
    let mut count = 0;
    for n in 3..=12usize {
        let nn = n as i64;
        let mut sym2 = vec![4];
        sym2.resize(n / 2, 0);
        expect_eq(&format!("sym2 n={n}"), k2(n, &sym2, &[2, 3]), rat(nn, nn + 2))?;
        count += 1;
        if n >= 5 {
            let mut weyl = vec![4, 4];
            weyl.resize(n / 2, 0);
            expect_eq(&format!("Weyl-type n={n}"), k2(n, &weyl, &[2, 3]), rat(nn - 1, nn + 1))?;
            count += 1;
        }
    }
    expect_eq("harmonic two-forms n=4", k2(4, &[2, 2], &[2]), rat(2, 3))?;
    Ok(format!("{} values", count + 1))
}

fn appendix_tables() -> Outcome {
    let start = Instant::now();
    let t3 = dim3_table(8);
    let t4 = dim4_table(8);
    for t in [&t3, &t4] {
        if let Some(row) = t.rows.iter().find(|r| !r.matches()) {
            return Err(format!(
                "dimension {} {} {} {}: engine {} vs printed {}",
                t.dimension, row.operator, row.condition, row.set, row.k_squared, row.printed
            ));
        }
    }
    let gl = t4
        .rows
        .iter()
        .find(|r| r.lambda.to_string() == "(2, 2)" && r.operator == "Spin field")
        .ok_or("no Spin field row for (2, 2)")?;
    expect_eq("Gursky-LeBrun", gl.k_squared.clone(), rat(3, 5))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{} + {} rows in {elapsed:.2?}", t3.rows.len(), t4.rows.len()))
}

fn dual_forms() -> Outcome {
    let decs = main_grid().decompositions();
    checks(&[verify::check_dual_forms(&decs)])
}

fn closed_form_cross_check() -> Outcome {
    let decs = main_grid().decompositions();
    checks(&[verify::check_closed_forms(&decs)])
}

fn identity_suites() -> Outcome {
    let decs = Grid::new(3..=11, 7).decompositions();
    checks(&[
        verify::check_casimir_corollaries(&decs),
        verify::check_power_sum_identities(&decs, 9),
        verify::check_relative_dimension_sum(&decs),
        verify::check_relative_dimension_weyl(&decs),
        verify::check_ptr_atilde(&decs, 8),
    ])
}

fn vertex_geometry() -> Outcome {
    let decs = main_grid().decompositions();
    checks(&[
        verify::check_vertex_feasibility(&decs),
        verify::check_elliptic_vertices_infeasible(&decs),
    ])
}

fn ellipticity_consistency() -> Outcome {
    let decs = main_grid().decompositions();
    checks(&[
        verify::check_elliptic_routes(&decs, 6),
        verify::check_sign_sets_elliptic(&decs),
        verify::check_branching_necessity(&decs),
    ])
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut models = Vec::new();
    for n in 4..=7 {
        models.push((n, RepKind::Standard));
        models.push((n, RepKind::LambdaP(2)));
    }
    models.extend([(6, RepKind::LambdaP(3)), (7, RepKind::LambdaP(3))]);
    models.extend((4..=6).map(|n| (n, RepKind::Sym2Traceless)));
    let mut rows = 0;
    for (n, kind) in &models {
        let label = format!("{kind} n={n}");
        let report = run_oracle(*n, *kind, None, SupOptions::default()).map_err(|e| format!("{label}: {e}"))?;
        let s = &report.spectrum;
        if !s.multiplicities_match || s.max_value_defect >= 1e-9 {
            return Err(format!("{label}: spectrum defect {:e}", s.max_value_defect));
        }
        if report.bzero_defect >= 1e-10 || report.ctilde.symmetry_defect >= 1e-10 {
            return Err(format!(
                "{label}: Bzero {:e}, C-tilde {:e}",
                report.bzero_defect, report.ctilde.symmetry_defect
            ));
        }
        for row in &report.rows {
            let target = if row.elliptic { row.symbolic.clone() } else { int(1) };
            if row.elliptic != (row.symbolic < int(1)) {
                return Err(format!("{label} {}: k^2 = {} disagrees with ellipticity", row.set, row.symbolic));
            }
            let gap = (refined_kato::numeric::to_f64(&target) - row.numeric_squared).abs();
            if gap >= 1e-6 {
                return Err(format!("{label} {}: numeric {} vs {}", row.set, row.numeric_squared, target));
            }
            rows += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!("{} models, {rows} operator sets in {elapsed:.2?}", models.len()))
}

fn degenerate_cases() -> Outcome {
    let mut count = 0;
    for n in 3..=8 {
        let d = decompose(&weight(n, &vec![0; n / 2]));
        if d.N() != 1 {
            return Err(format!("trivial weight at n={n} has N={}", d.N()));
        }
        expect_eq(&format!("N=1 at n={n}"), kato_constant(&d, &OperatorSubset::new([1])).unwrap().k_squared, int(0))?;
        count += 1;
    }
    for d in main_grid().decompositions().into_iter().filter(|d| d.N() == 2) {
        let w = d.w();
        let span = &w[0] - &w[1];
        for (set, want) in [(1, &w[0] / &span), (2, -&w[1] / &span)] {
            let got = kato_constant(&d, &OperatorSubset::new([set])).unwrap().k_squared;
            expect_eq(&format!("N=2 {} I={{{set}}}", d.lambda), got, want)?;
            count += 1;
        }
    }
    // odd r gives the half-integral exception, even r is integral and sharp
    for r in 2i64..=8 {
        let d = decompose(&weight(3, &[r]));
        for set in [&[2][..], &[2, 3]] {
            let k = kato_constant(&d, &OperatorSubset::new(set.iter().copied())).unwrap();
            let exception = r % 2 == 1;
            if exception == k.sharp {
                return Err(format!("(r/2) r={r} I={set:?}: sharp = {}", k.sharp));
            }
            count += 1;
        }
        if r % 2 == 1 {
            let c = half_integral_n3_constants(&d).map_err(|e| e.to_string())?;
            expect_eq(&format!("R-S r={r}"), c.k2_2, int(1) - rat(1, r * (r + 2)))?;
            count += 1;
        }
    }
    Ok(format!("{count} cases"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("closed-form triples, n = 3..12", closed_form_triples),
        ("classical estimates as special cases", introduction_estimates),
        ("dimension 3 and 4 tables", appendix_tables),
        ("max form = 1 - min form", dual_forms),
        ("closed forms match the general value", closed_form_cross_check),
        ("Casimir and trace identities", identity_suites),
        ("vertex geometry", vertex_geometry),
        ("ellipticity predicate consistency", ellipticity_consistency),
        ("numerical oracle agreement", oracle_agreement),
        ("degenerate cases", degenerate_cases),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
