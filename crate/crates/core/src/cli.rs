//! Command-line front end. `run` does all the work and returns the exit code
//! with the captured output so that it can be tested in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::casimir::casimir_report;
use crate::decomposition::{decompose, Decomposition};
use crate::ellipticity::{
    check_nonelliptic_necessary, is_elliptic, maximal_non_elliptic_sets, minimal_elliptic_sets, OperatorSubset,
    Witness,
};
use crate::kato::{closed_form_matches, half_integral_n3_constants, p_plus_minus_constants, KatoResult, KatoSolver};
use crate::oracle::{run_oracle, RepKind, SupOptions};
use crate::tables::{dim3_table, dim4_table};
use crate::verify::{run_suite, Suite};
use crate::weights::DominantWeight;

pub const JSON_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "kato", version, about = "Conformal weights, ellipticity and refined Kato constants for SO(n)/Spin(n)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// Dimension of the underlying Euclidean space.
    #[arg(long)]
    n: usize,
    /// Dominant weight, comma separated, e.g. 3/2,1/2.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split ℝⁿ ⊗ V_λ into its components.
    Decompose(WeightArgs),
    /// Classify an operator P_I, or list the minimal elliptic sets.
    Elliptic {
        #[command(flatten)]
        weight: WeightArgs,
        /// Operator index set, e.g. 2,3.
        #[arg(long = "I")]
        set: Option<String>,
    },
    /// Refined Kato constant of P_I, or of every minimal elliptic operator.
    Kato {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long = "I")]
        set: Option<String>,
    },
    /// Constant tables in dimension 3 or 4.
    Table {
        #[arg(long, conflicts_with = "dim4", required_unless_present = "dim4")]
        dim3: bool,
        #[arg(long)]
        dim4: bool,
        #[arg(long, default_value_t = 8)]
        rmax: u32,
    },
    /// Run identity and consistency suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Compare against explicit matrices for a tensor representation.
    Oracle {
        #[arg(long)]
        n: usize,
        /// standard, lambda^p or sym2.
        #[arg(long)]
        rep: String,
        #[arg(long = "I")]
        set: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Validation(String);

fn validation(context: &str, err: impl std::fmt::Display) -> Validation {
    Validation(format!("{context}: {err}"))
}

fn parse_weight(args: &WeightArgs) -> Result<DominantWeight, Validation> {
    DominantWeight::parse(args.n, &args.weight).map_err(|e| validation("weight", e))
}

fn parse_set(text: &str, d: &Decomposition) -> Result<OperatorSubset, Validation> {
    let set: OperatorSubset = text.parse().map_err(|e| validation("I", e))?;
    if set.is_empty() {
        return Err(Validation("I: operator set is empty".into()));
    }
    set.check_range(d.N()).map_err(|e| validation("I", e))?;
    Ok(set)
}

struct Rendered {
    text: String,
    query: Value,
    result: Value,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                let first = rendered.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: validation: {first}\n"),
                }
            };
        }
    };
    let format = cli.format;
    let outcome = catch_unwind(AssertUnwindSafe(|| dispatch(cli.command)));
    match outcome {
        Ok(Ok(r)) => {
            let stdout = match format {
                Format::Text => r.text,
                Format::Json => {
                    let doc = json!({"version": JSON_VERSION, "query": r.query, "result": r.result});
                    serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
                }
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Ok(Err(Validation(msg))) => Outcome {
            code: EXIT_VALIDATION,
            stdout: String::new(),
            stderr: format!("error: validation: {msg}\n"),
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown failure".into());
            Outcome {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("error: internal: {}\n", msg.replace('\n', " ")),
            }
        }
    }
}

fn dispatch(command: Command) -> Result<Rendered, Validation> {
    match command {
        Command::Decompose(w) => cmd_decompose(&w),
        Command::Elliptic { weight, set } => cmd_elliptic(&weight, set.as_deref()),
        Command::Kato { weight, set } => cmd_kato(&weight, set.as_deref()),
        Command::Table { dim3, rmax, .. } => Ok(cmd_table(dim3, rmax)),
        Command::Verify { suite } => cmd_verify(&suite),
        Command::Oracle { n, rep, set, seed, restarts } => cmd_oracle(n, &rep, set.as_deref(), seed, restarts),
    }
}

fn weight_query(command: &str, w: &WeightArgs) -> Value {
    json!({"command": command, "n": w.n, "weight": w.weight})
}

fn header(d: &Decomposition) -> String {
    format!(
        "n = {}, λ = {}\nN = {} ({}), ν = {}\n",
        d.n(),
        d.lambda,
        d.N(),
        d.case_tag.label(),
        d.nu
    )
}

fn cmd_decompose(w: &WeightArgs) -> Result<Rendered, Validation> {
    let lambda = parse_weight(w)?;
    let d = decompose(&lambda);
    let cas = casimir_report(&lambda);
    let mut text = header(&d);
    let _ = writeln!(text, "c(λ) = {}", cas.c_lambda);
    let mut rows = vec![["j".to_string(), "target".into(), "w".into(), "w~".into(), "dim".into()]];
    let json_d = d.to_json();
    for (c, jc) in d.components.iter().zip(json_d["components"].as_array().expect("array")) {
        let targets: Vec<&str> = jc["targets"].as_array().expect("array").iter().filter_map(Value::as_str).collect();
        rows.push([
            c.index.to_string(),
            targets.join(" + "),
            c.w.to_string(),
            c.w_tilde.to_string(),
            c.dim.to_string(),
        ]);
    }
    text.push_str(&columns(&rows));
    let mut result = json_d;
    result["casimir"] = json!(cas.c_lambda.to_string());
    Ok(Rendered { text, query: weight_query("decompose", w), result })
}

fn columns<const K: usize>(rows: &[[String; K]]) -> String {
    let mut widths = [0usize; K];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn sets_json(sets: &[OperatorSubset]) -> Value {
    Value::Array(sets.iter().map(OperatorSubset::to_json).collect())
}

fn sets_text(sets: &[OperatorSubset]) -> String {
    let parts: Vec<String> = sets.iter().map(ToString::to_string).collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(" ")
    }
}

fn cmd_elliptic(w: &WeightArgs, set: Option<&str>) -> Result<Rendered, Validation> {
    let lambda = parse_weight(w)?;
    let d = decompose(&lambda);
    let minimal = minimal_elliptic_sets(&d);
    let maximal = maximal_non_elliptic_sets(&d);
    let mut text = header(&d);
    let _ = writeln!(text, "minimal elliptic: {}", sets_text(&minimal));
    let _ = writeln!(text, "maximal non-elliptic: {}", sets_text(&maximal));
    let mut result = json!({
        "N": d.N(),
        "minimal_elliptic": sets_json(&minimal),
        "maximal_non_elliptic": sets_json(&maximal),
    });
    let mut query = weight_query("elliptic", w);
    if let Some(text_set) = set {
        let s = parse_set(text_set, &d)?;
        let report = is_elliptic(&d, &s).map_err(|e| validation("I", e))?;
        let (kind, witness) = match &report.witness {
            Witness::MinimalElliptic(m) => ("minimal_elliptic", m),
            Witness::MaximalNonElliptic(m) => ("maximal_non_elliptic", m),
        };
        let branching = if d.n() >= 4 { check_nonelliptic_necessary(&d, &s).ok() } else { None };
        let _ = writeln!(
            text,
            "I = {s}: {} (witness {} {witness})",
            if report.is_elliptic { "elliptic" } else { "not elliptic" },
            kind.replace('_', " ")
        );
        if let Some(b) = branching {
            let _ = writeln!(text, "branching condition: {}", if b { "met" } else { "fails" });
        }
        query["I"] = s.to_json();
        result["I"] = json!({
            "set": s.to_json(),
            "elliptic": report.is_elliptic,
            "witness": {"kind": kind, "set": witness.to_json()},
            "branching_condition": branching,
        });
    }
    Ok(Rendered { text, query, result })
}

fn kato_block(d: &Decomposition, set: &OperatorSubset, k: &KatoResult) -> (String, Value) {
    let mut text = String::new();
    let _ = writeln!(text, "I = {set}");
    let _ = writeln!(text, "  k^2 = {}", k.k_squared);
    let _ = writeln!(text, "  k   = {} ≈ {:.12}", k.k_text(), k.k_decimal());
    let _ = writeln!(text, "  sharp: {}", if k.sharp { "yes" } else { "no" });
    let _ = writeln!(text, "  extremal J: {}", k.extremal_j);
    let _ = writeln!(
        text,
        "  equality case: vanishing on {}, gradient in {}",
        k.equality_case.vanishing_set, k.equality_case.gradient_set
    );
    let matches = closed_form_matches(d, set);
    for (label, v) in &matches {
        let _ = writeln!(text, "  closed form [{label}]: {v}");
    }
    let mut value = k.to_json();
    value["I"] = set.to_json();
    value["closed_forms"] = Value::Array(
        matches
            .iter()
            .map(|(label, v)| json!({"pattern": label, "k_squared": v.to_string()}))
            .collect(),
    );
    (text, value)
}

fn cmd_kato(w: &WeightArgs, set: Option<&str>) -> Result<Rendered, Validation> {
    let lambda = parse_weight(w)?;
    let d = decompose(&lambda);
    let solver = KatoSolver::new(&d);
    let mut text = header(&d);
    let mut query = weight_query("kato", w);
    let sets = match set {
        Some(t) => {
            let s = parse_set(t, &d)?;
            query["I"] = s.to_json();
            vec![s]
        }
        None => minimal_elliptic_sets(&d),
    };
    let mut blocks = Vec::new();
    for s in &sets {
        let k = solver.solve(s).map_err(|e| validation("I", e))?;
        let (t, v) = kato_block(&d, s, &k);
        text.push_str(&t);
        blocks.push(v);
    }
    let mut result = json!({"N": d.N(), "constants": blocks});
    if let Ok(c) = half_integral_n3_constants(&d) {
        let _ = writeln!(
            text,
            "sharpened N=3 values: k^2{{2}} = {}, k^2{{2,3}} = {}, k^2{{1,2}} = {}",
            c.k2_2, c.k2_23, c.k2_12
        );
        result["half_integral_n3"] = json!({
            "k2_2": c.k2_2.to_string(),
            "k2_23": c.k2_23.to_string(),
            "k2_12": c.k2_12.to_string(),
        });
    }
    if set.is_none() {
        if let Ok(pm) = p_plus_minus_constants(&d) {
            let _ = writeln!(text, "P+ : k^2 = {}\nP- : k^2 = {}", pm.k_plus, pm.k_minus);
            result["plus_minus"] = json!({"k_plus_squared": pm.k_plus.to_string(), "k_minus_squared": pm.k_minus.to_string()});
        }
    }
    Ok(Rendered { text, query, result })
}

fn cmd_table(dim3: bool, rmax: u32) -> Rendered {
    let table = if dim3 { dim3_table(rmax) } else { dim4_table(rmax) };
    Rendered {
        text: table.render_text(),
        query: json!({"command": "table", "dimension": table.dimension, "rmax": rmax}),
        result: table.to_json(),
    }
}

fn cmd_verify(suite: &str) -> Result<Rendered, Validation> {
    let suite: Suite = suite.parse().map_err(|e| validation("suite", e))?;
    let reports = run_suite(suite, None);
    let text: String = reports.iter().map(|r| r.render_text()).collect();
    let passed = reports.iter().all(|r| r.passed());
    Ok(Rendered {
        text,
        query: json!({"command": "verify", "suite": suite.name()}),
        result: json!({
            "passed": passed,
            "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        }),
    })
}

fn cmd_oracle(n: usize, rep: &str, set: Option<&str>, seed: u64, restarts: usize) -> Result<Rendered, Validation> {
    let kind: RepKind = rep.parse().map_err(|e| validation("rep", e))?;
    if restarts == 0 {
        return Err(Validation("restarts: must be positive".into()));
    }
    let sets = match set {
        Some(t) => Some(vec![t.parse::<OperatorSubset>().map_err(|e| validation("I", e))?]),
        None => None,
    };
    let options = SupOptions { seed, restarts, ..SupOptions::default() };
    let report = run_oracle(n, kind, sets, options).map_err(|e| validation("oracle", e))?;
    let mut text = format!("n = {}, rep = {}, dim V = {}\n", report.n, report.kind, report.dim_v);
    let mut spec_rows = vec![["w".to_string(), "eigenvalue".into(), "mult".into(), "expected".into()]];
    for ((w, dim), g) in report.spectrum.expected.iter().zip(&report.spectrum.found) {
        spec_rows.push([format!("{w}"), format!("{:.12}", g.value), g.multiplicity.to_string(), dim.to_string()]);
    }
    text.push_str(&columns(&spec_rows));
    let _ = writeln!(text, "generator defect        {:.3e}", report.generator_defect);
    let _ = writeln!(text, "projector defect        {:.3e}", report.projector_defect);
    let _ = writeln!(text, "projection norm defect  {:.3e}", report.projection_norm_defect);
    let _ = writeln!(text, "<BΦ,Φ> defect           {:.3e}", report.bzero_defect);
    let _ = writeln!(text, "C~ symmetry defect      {:.3e}", report.ctilde.symmetry_defect);
    let _ = writeln!(text, "odd Ã form defect       {:.3e}", report.ctilde.corollary_defect);
    let mut rows = vec![[
        "I".to_string(),
        "elliptic".into(),
        "k^2 exact".into(),
        "k^2 numeric".into(),
        "defect".into(),
    ]];
    for r in &report.rows {
        rows.push([
            r.set.to_string(),
            if r.elliptic { "yes" } else { "no" }.into(),
            r.symbolic.to_string(),
            format!("{:.12}", r.numeric_squared),
            format!("{:.2e}", r.defect()),
        ]);
    }
    text.push_str(&columns(&rows));
    Ok(Rendered {
        text,
        query: json!({"command": "oracle", "n": n, "rep": report.kind.to_string(), "seed": seed, "restarts": restarts}),
        result: report.to_json(),
    })
}
