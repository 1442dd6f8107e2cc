//! Command-line surface: check, build, search, dualize, catalog, report.
//!
//! Exit codes: 0 when every check passed, 1 when a check failed, 2 on usage
//! or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{HomAlgebra, OperatorKind, WeightedOperator};
use crate::axioms::{Checker, KernelVariant, ALGEBRA_AXIOMS};
use crate::bundle::{
    algebra_json, canonical_string, functional_json, matrix_json, operator_json, parse_bundle, report_json,
    AlgebraBundle,
};
use crate::catalog;
use crate::constructions::{dualize, ConstructionResult, Constructor, DualDirection, TernaryStructure};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::report::{AxiomReport, DEFAULT_VIOLATION_LIMIT};
use crate::search::{self, SearchLimits, SearchSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hom-nambu", version, about = "Exact checks, constructions and searches for n-ary Hom-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Bundle file, or `catalog:NAME` for a shipped bundle.
    bundle: String,
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    operator: Option<String>,
    #[arg(long)]
    functional: Option<String>,
    /// Auxiliary map by name; repeat for constructions taking two.
    #[arg(long = "map")]
    maps: Vec<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one axiom on a named algebra.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        axiom: String,
        /// Power of the twist for alpha-k-derivation.
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Kernel variant for kernel-condition.
        #[arg(long, default_value = "kernel-lie-bracket")]
        variant: String,
        #[arg(long, default_value_t = DEFAULT_VIOLATION_LIMIT)]
        limit: usize,
    },
    /// Apply a construction and write the resulting algebra.
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        construction: String,
        #[arg(long)]
        verify: bool,
        /// Declared structure for derived-bracket.
        #[arg(long, default_value = "hom-nambu-lie")]
        structure: String,
    },
    /// Enumerate operators over a prime field.
    Search {
        #[command(flatten)]
        common: Common,
        /// rota-baxter, derivation, linear-derivation or admissible-functional.
        #[arg(long, default_value = "rota-baxter")]
        kind: String,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        max_p: Option<u64>,
        #[arg(long)]
        max_results: Option<usize>,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Map a Rota-Baxter operator to its dual derivation or back.
    Dualize {
        #[command(flatten)]
        common: Common,
        /// Check the dual operator on the algebra.
        #[arg(long)]
        verify: bool,
    },
    /// List shipped examples, or print one shipped bundle.
    Catalog { name: Option<String> },
    /// Re-render a saved report document.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Run with `argv[0]` being the program name. Output goes to `out`,
/// diagnostics to `err`.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_ERROR,
            };
            let target: &mut dyn Write = if code == EXIT_PASS { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::HypothesisFailed(r) = &e {
                let _ = write!(err, "{r}");
                EXIT_FAIL
            } else {
                EXIT_ERROR
            }
        }
    }
}

fn load_bundle(spec: &str) -> Result<AlgebraBundle> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::load_file(name);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Semantic(format!("cannot read {spec}: {e}")))?;
    parse_bundle(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Semantic(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Semantic(format!("cannot write output: {e}")))
}

fn one_map<'a>(b: &'a AlgebraBundle, c: &Common, what: &str) -> Result<&'a Matrix> {
    match c.maps.as_slice() {
        [m] => b.map(m),
        _ => Err(Error::Semantic(format!("expected exactly one --map ({what})"))),
    }
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Semantic(format!("missing --{flag}")))
}

fn kernel_variant(name: &str, b: &AlgebraBundle, c: &Common) -> Result<KernelVariant> {
    Ok(match name {
        "kernel-lie-bracket" => KernelVariant::LieBracket,
        "kernel-prelie-commutator" => KernelVariant::PreLieCommutator,
        "kernel-centroid-twisted" => KernelVariant::CentroidTwisted(one_map(b, c, "gamma")?.clone()),
        "kernel-determinant" => KernelVariant::Determinant(one_map(b, c, "D")?.clone()),
        "kernel-square-nilpotent" => KernelVariant::SquareNilpotent,
        other => return Err(Error::Semantic(format!("unknown kernel variant {other:?}"))),
    })
}

/// Every axiom name accepted by `check`.
pub fn axiom_names() -> Vec<&'static str> {
    let mut v = ALGEBRA_AXIOMS.to_vec();
    v.extend([
        "centroid",
        "involution",
        "alpha-k-derivation",
        "leibniz",
        "derivation-weight",
        "rota-baxter",
        "kernel-condition",
        "functional-annihilates",
        "functional-alpha-compatible",
    ]);
    v
}

fn run_check(checker: &Checker, b: &AlgebraBundle, c: &Common, axiom: &str, k: u32, variant: &str) -> Result<AxiomReport> {
    let a = b.algebra(&c.algebra)?;
    if let Some(r) = checker.by_name(axiom, a) {
        return r;
    }
    match axiom {
        "centroid" => checker.centroid(a, one_map(b, c, "centroid element")?),
        "involution" => checker.involution(a, one_map(b, c, "involution")?),
        "alpha-k-derivation" => checker.alpha_k_derivation(a, one_map(b, c, "D")?, k),
        "leibniz" => checker.leibniz(a, one_map(b, c, "D")?),
        "derivation-weight" => checker.derivation_weight(a, b.operator(need(&c.operator, "operator")?)?),
        "rota-baxter" => checker.rota_baxter(a, b.operator(need(&c.operator, "operator")?)?),
        "kernel-condition" => {
            let f = b.functional(need(&c.functional, "functional")?)?;
            let p = b.operator(need(&c.operator, "operator")?)?;
            checker.kernel_condition(a, f, p, &kernel_variant(variant, b, c)?)
        }
        "functional-annihilates" => checker.functional_annihilates(a, b.functional(need(&c.functional, "functional")?)?),
        "functional-alpha-compatible" => {
            checker.functional_alpha_compatible(a, b.functional(need(&c.functional, "functional")?)?)
        }
        other => Err(Error::Semantic(format!(
            "unknown axiom {other:?}; expected one of {}",
            axiom_names().join(", ")
        ))),
    }
}

/// Every construction name accepted by `build`.
pub const CONSTRUCTIONS: &[&str] = &[
    "bracket-from-functional",
    "bracket-from-functional-twisted",
    "yau-twist",
    "commutator-bracket",
    "rb-prelie-double",
    "prelie-from-derivation",
    "centroid-twist",
    "bracket-det-fd",
    "bracket-det-omega-d",
    "derived-bracket",
    "bracket-f-p",
    "prelie-operator-bracket",
    "conjugated-bracket",
];

fn run_build(b: &AlgebraBundle, c: &Common, name: &str, verify: bool, structure: &str) -> Result<ConstructionResult> {
    let mut k = Constructor::new(verify);
    k.checker.jobs = c.jobs.max(1);
    let a = b.algebra(&c.algebra)?;
    let op = || -> Result<&WeightedOperator> { b.operator(need(&c.operator, "operator")?) };
    let f = || b.functional(need(&c.functional, "functional")?);
    let opt_op = || -> Result<Option<&WeightedOperator>> { c.operator.as_deref().map(|n| b.operator(n)).transpose() };
    match name {
        "bracket-from-functional" => k.bracket_from_functional(a, f()?),
        "bracket-from-functional-twisted" => k.bracket_from_functional_twisted(a, one_map(b, c, "twist")?, f()?),
        "yau-twist" => k.yau_twist(a, one_map(b, c, "twist")?, opt_op()?),
        "commutator-bracket" => k.commutator_bracket(a, opt_op()?),
        "rb-prelie-double" => k.rb_prelie_double(a, op()?),
        "prelie-from-derivation" => k.prelie_from_derivation(a, one_map(b, c, "D")?, op()?),
        "centroid-twist" => k.centroid_twist(a, one_map(b, c, "gamma")?, op()?),
        "bracket-det-fd" => k.bracket_det_fd(a, f()?, one_map(b, c, "D")?),
        "bracket-det-omega-d" => match c.maps.as_slice() {
            [w, d] => k.bracket_det_omega_d(a, b.map(w)?, b.map(d)?),
            _ => Err(Error::Semantic("expected --map OMEGA --map D".into())),
        },
        "derived-bracket" => {
            let s = match structure {
                "hom-nambu-lie" => TernaryStructure::HomNambuLie,
                "hom-lie-triple" => TernaryStructure::HomLieTriple,
                other => return Err(Error::Semantic(format!("unknown structure {other:?}"))),
            };
            k.derived_bracket(a, op()?, s)
        }
        "bracket-f-p" => k.bracket_f_p(a, f()?, op()?),
        "prelie-operator-bracket" => k.prelie_operator_bracket(a, f()?, op()?),
        "conjugated-bracket" => k.conjugated_bracket(a, op()?),
        other => Err(Error::Semantic(format!(
            "unknown construction {other:?}; expected one of {}",
            CONSTRUCTIONS.join(", ")
        ))),
    }
}

fn reports_doc(command: &str, subject: &str, reports: &[AxiomReport], extra: Value) -> Value {
    let pass = reports.iter().all(|r| r.pass);
    let mut doc = json!({
        "command": command,
        "subject": subject,
        "pass": pass,
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
        d.extend(e);
    }
    doc
}

/// Human-readable rendering of a report document.
pub fn render_text(doc: &Value) -> String {
    let mut s = String::new();
    let get = |k: &str| doc.get(k).and_then(Value::as_str).unwrap_or("");
    s.push_str(&format!(
        "{} {}: {}\n",
        get("command"),
        get("subject"),
        if doc.get("pass").and_then(Value::as_bool).unwrap_or(false) { "PASS" } else { "FAIL" }
    ));
    if let Some(found) = doc.get("found").and_then(Value::as_u64) {
        match doc.get("candidates_scanned").and_then(Value::as_u64) {
            Some(n) => s.push_str(&format!("  found {found}, {n} candidates scanned\n")),
            None => s.push_str(&format!("  found {found}\n")),
        }
    }
    for op in doc.get("operators").and_then(Value::as_array).into_iter().flatten() {
        s.push_str(&format!(
            "  {} ({}, weight {}): {}\n",
            op.get("name").and_then(Value::as_str).unwrap_or("?"),
            op.get("kind").and_then(Value::as_str).unwrap_or("?"),
            op.get("weight").map(Value::to_string).unwrap_or_default(),
            op.get("matrix").map(Value::to_string).unwrap_or_default(),
        ));
    }
    for r in doc.get("reports").and_then(Value::as_array).into_iter().flatten() {
        let pass = r.get("pass").and_then(Value::as_bool).unwrap_or(false);
        s.push_str(&format!(
            "  {}: {} ({} tuples checked, {} failing)\n",
            r.get("axiom").and_then(Value::as_str).unwrap_or("?"),
            if pass { "PASS" } else { "FAIL" },
            r.get("checked").and_then(Value::as_u64).unwrap_or(0),
            r.get("failures").and_then(Value::as_u64).unwrap_or(0),
        ));
        for v in r.get("violations").and_then(Value::as_array).into_iter().flatten() {
            let part = v
                .get("part")
                .and_then(Value::as_str)
                .map(|p| format!(" [{p}]"))
                .unwrap_or_default();
            s.push_str(&format!(
                "    at {}{part}: lhs = {}, rhs = {}\n",
                v.get("tuple").map(Value::to_string).unwrap_or_default(),
                v.get("lhs").map(Value::to_string).unwrap_or_default(),
                v.get("rhs").map(Value::to_string).unwrap_or_default(),
            ));
        }
    }
    for n in doc.get("notes").and_then(Value::as_array).into_iter().flatten() {
        s.push_str(&format!("  note: {}\n", n.as_str().unwrap_or("")));
    }
    s
}

fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => canonical_string(doc),
        Format::Text => render_text(doc),
    }
}

fn parse_weight(b: &AlgebraBundle, w: &Option<String>) -> Result<Scalar> {
    match w {
        Some(t) => Scalar::parse(b.field, t),
        None => Ok(b.field.zero()),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check { common, axiom, k, variant, limit } => {
            let b = load_bundle(&common.bundle)?;
            let checker = Checker::new(limit, common.jobs);
            let r = run_check(&checker, &b, &common, &axiom, k, &variant)?;
            let doc = reports_doc("check", &common.algebra, std::slice::from_ref(&r), json!({}));
            finish(out, &doc, common.format, common.output.as_deref(), None)
        }
        Command::Build { common, construction, verify, structure } => {
            let b = load_bundle(&common.bundle)?;
            let res = run_build(&b, &common, &construction, verify, &structure)?;
            let mut bundle = AlgebraBundle::empty(b.field);
            let name = format!("{}.{}", common.algebra, construction);
            bundle.push_algebra(name.clone(), res.algebra.clone());
            for (i, d) in res.derived.iter().enumerate() {
                bundle.push_algebra(format!("{name}.derived{}", i + 1), d.clone());
            }
            let mut reports = res.hypothesis_reports.clone();
            reports.extend(res.conclusion_reports.iter().cloned());
            let doc = reports_doc(
                "build",
                &name,
                &reports,
                json!({ "algebra": algebra_json(&name, &res.algebra, false), "notes": res.notes }),
            );
            let file = bundle.to_canonical_string();
            finish(out, &doc, common.format, common.output.as_deref(), Some(&file))
        }
        Command::Search { common, kind, weight, budget, max_dim, max_p, max_results, k } => {
            let b = load_bundle(&common.bundle)?;
            let a = b.algebra(&common.algebra)?.clone();
            let mut bundle = AlgebraBundle::empty(b.field);
            let mut extra = json!({});
            match kind.as_str() {
                "rota-baxter" | "derivation" => {
                    let op_kind = if kind == "rota-baxter" { OperatorKind::RotaBaxter } else { OperatorKind::Derivation };
                    let defaults = SearchLimits::default();
                    let limits = SearchLimits {
                        max_dim: max_dim.unwrap_or(defaults.max_dim),
                        max_p: max_p.unwrap_or(defaults.max_p),
                        max_results,
                        budget: budget.unwrap_or(defaults.budget),
                    };
                    let spec = SearchSpec::new(a, parse_weight(&b, &weight)?, op_kind)
                        .with_limits(limits)
                        .with_jobs(common.jobs);
                    let res = search::enumerate(&spec)?;
                    for (i, op) in res.operators.iter().enumerate() {
                        bundle.operators.push((format!("{kind}_{}", i + 1), op.clone()));
                    }
                    extra = json!({
                        "candidates_scanned": res.candidates_scanned,
                        "found": res.operators.len(),
                    });
                }
                "linear-derivation" => {
                    for (i, m) in search::solve_linear_derivations(&a, k)?.into_iter().enumerate() {
                        bundle.maps.push((format!("derivation_{}", i + 1), m));
                    }
                    extra = json!({ "found": bundle.maps.len() });
                }
                "admissible-functional" => {
                    let r = search::admissible_functionals(&a)?;
                    for (i, f) in r.linear_basis.iter().enumerate() {
                        bundle.functionals.push((format!("basis_{}", i + 1), f.clone()));
                    }
                    if let Some(all) = &r.exhaustive {
                        for (i, f) in all.iter().enumerate() {
                            bundle.functionals.push((format!("admissible_{}", i + 1), f.clone()));
                        }
                    }
                    extra = json!({ "found": bundle.functionals.len() });
                }
                other => return Err(Error::Semantic(format!("unknown search kind {other:?}"))),
            }
            let mut doc = reports_doc("search", &common.algebra, &[], extra);
            doc["operators"] = Value::Array(bundle.operators.iter().map(|(n, o)| operator_json(n, o)).collect());
            doc["maps"] = Value::Array(
                bundle.maps.iter().map(|(n, m)| json!({ "name": n, "matrix": matrix_json(m) })).collect(),
            );
            doc["functionals"] = Value::Array(bundle.functionals.iter().map(|(n, f)| functional_json(n, f)).collect());
            let file = bundle.to_canonical_string();
            finish(out, &doc, common.format, common.output.as_deref(), Some(&file))
        }
        Command::Dualize { common, verify } => {
            let b = load_bundle(&common.bundle)?;
            let a: &HomAlgebra = b.algebra(&common.algebra)?;
            let op_name = need(&common.operator, "operator")?;
            let op = b.operator(op_name)?;
            let dir = match op.kind {
                OperatorKind::RotaBaxter => DualDirection::RotaBaxterToDerivation,
                OperatorKind::Derivation => DualDirection::DerivationToRotaBaxter,
                _ => {
                    return Err(Error::WrongKind {
                        expected: "rota-baxter or derivation".into(),
                        found: op.kind.to_string(),
                    })
                }
            };
            let dual = dualize(a, op, dir)?;
            let checker = Checker::new(DEFAULT_VIOLATION_LIMIT, common.jobs);
            let reports = if verify {
                vec![match dual.kind {
                    OperatorKind::RotaBaxter => checker.rota_baxter(a, &dual)?,
                    _ => checker.derivation_weight(a, &dual)?,
                }]
            } else {
                Vec::new()
            };
            let dual_name = format!("{op_name}.dual");
            let mut bundle = AlgebraBundle::empty(b.field);
            bundle.operators.push((dual_name.clone(), dual.clone()));
            let doc = reports_doc("dualize", op_name, &reports, json!({ "operator": operator_json(&dual_name, &dual) }));
            let file = bundle.to_canonical_string();
            finish(out, &doc, common.format, common.output.as_deref(), Some(&file))
        }
        Command::Catalog { name } => {
            match name {
                Some(n) => emit(out, &catalog::load_file(&n)?.to_canonical_string())?,
                None => {
                    let mut s = String::new();
                    for (file, bundle) in catalog::load()? {
                        s.push_str(&format!("{file} (field {})\n", bundle.field));
                        for a in &bundle.algebras {
                            s.push_str(&format!(
                                "  algebra {} dim {} arity {}: {}\n",
                                a.name,
                                a.algebra.dim(),
                                a.algebra.arity(),
                                catalog::declared_axioms(&a.name).join(", ")
                            ));
                        }
                        for (n, o) in &bundle.operators {
                            s.push_str(&format!("  operator {n} ({}, weight {})\n", o.kind, o.weight));
                        }
                        for (n, _) in &bundle.functionals {
                            s.push_str(&format!("  functional {n}\n"));
                        }
                        for (n, _) in &bundle.maps {
                            s.push_str(&format!("  map {n}\n"));
                        }
                    }
                    emit(out, &s)?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Report { path, format } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Semantic(format!("cannot read {}: {e}", path.display())))?;
            let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            let pass = doc
                .get("pass")
                .and_then(Value::as_bool)
                .ok_or_else(|| Error::Semantic("report document lacks a boolean \"pass\"".into()))?;
            emit(out, &render(&doc, format))?;
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

/// Print the report; `-o` receives `file` when given, otherwise the report.
fn finish(out: &mut dyn Write, doc: &Value, format: Format, output: Option<&Path>, file: Option<&str>) -> Result<i32> {
    emit(out, &render(doc, format))?;
    if let Some(path) = output {
        let body = file.map(str::to_string).unwrap_or_else(|| canonical_string(doc));
        write_file(path, &body)?;
    }
    let pass = doc.get("pass").and_then(Value::as_bool).unwrap_or(false);
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["hom-nambu"];
        argv.extend_from_slice(args);
        let code = run_command(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn heisenberg_checks() {
        assert_eq!(run(&["check", "catalog:q", "--algebra", "H3", "--axiom", "hom-lie"]).0, 0);
        let (code, out, _) = run(&["check", "catalog:q", "--algebra", "H3", "--axiom", "commutative"]);
        assert_eq!(code, 1);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["reports"][0]["violations"][0]["tuple"], json!([1, 2]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["check", "catalog:q", "--algebra", "H3", "--axiom", "nope"]).0, 2);
        assert_eq!(run(&["check", "catalog:q", "--algebra", "H3"]).0, 2);
        assert_eq!(run(&["check", "catalog:q", "--algebra", "H3", "--axiom", "hom-lie", "--bogus"]).0, 2);
    }

    #[test]
    fn catalog_lists_algebras() {
        let (code, out, _) = run(&["catalog"]);
        assert_eq!(code, 0);
        assert!(out.contains("algebra N4 dim 4 arity 3"));
    }
}
