//! `wmha` — batch driver for building weak multiplier Hopf algebra
//! instances from JSON descriptions and running exact verification
//! suites over them.
//!
//! Exit status: `0` when every requested law holds, `1` when a law
//! fails, `2` on malformed or invalid input. JSON reports
//! (`--format json`) are byte-identical across runs with the same
//! configuration and seed; wall-clock timing appears only in the text
//! format.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wmha::axioms::{check_axioms_parallel, CheckBudget, LawReport, LawStatus};
use wmha::duality::{biduality_iso, build_dual};
use wmha::finvec::{Elem, TensorElem};
use wmha::integrals::{
    certify_designated, check_transfer_relations, compose_with_antipode,
    enumerate_left_integrals, enumerate_right_integrals, modular_element,
    spanning_forms_check, Side,
};
use wmha::registry::{Registry, RegistryError};
use wmha::solve::fin_rank;
use wmha::wmha::{
    e_elem, same_structure, source_algebra_basis, structure_tables,
    target_algebra_basis, Wmha,
};

const ALL_SUITES: [&str; 5] = ["axioms", "integrals", "transfer", "duality", "radford"];

#[derive(Parser)]
#[command(
    name = "wmha",
    version,
    about = "Build and verify weak multiplier Hopf algebra instances with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// Construction kind: kg | cg | sep | dual-of:<kind> | bidual-of:<kind>
    #[arg(long)]
    kind: String,
    /// Input description file (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Parallelism degree for the law suites
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized law sampling on large instances
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check all laws exhaustively up to this basis dimension
    #[arg(long, default_value_t = 64)]
    max_exhaustive_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an input file without building anything
    Validate(Common),
    /// Build the instance and run verification suites
    Check {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites: axioms,integrals,transfer,duality,radford
        #[arg(long, value_delimiter = ',', default_value = "axioms,integrals,transfer,duality")]
        suites: Vec<String>,
    },
    /// Report the integral spaces and the designated integral's certificate
    Integrals(Common),
    /// Build the dual and emit its structure constants
    Dual(Common),
    /// Build the bidual and verify the evaluation isomorphism
    Bidual(Common),
    /// Verify the modular element and the fourth-power antipode formula
    Radford(Common),
}

/// Everything a run produces, rendered at the end in one format.
struct Report {
    command: &'static str,
    common: Common,
    instance: Option<String>,
    dimensions: BTreeMap<&'static str, Value>,
    /// `(suite name, law reports)` in execution order.
    suites: Vec<(String, Vec<LawReport>)>,
    /// Free-form additional artifacts (structure constants, witnesses).
    extras: Vec<(&'static str, Value)>,
    /// Input-level errors (malformed file, invalid data): exit 2.
    input_errors: Vec<String>,
}

impl Report {
    fn new(command: &'static str, common: &Common) -> Self {
        Report {
            command,
            common: common.clone(),
            instance: None,
            dimensions: BTreeMap::new(),
            suites: Vec::new(),
            extras: Vec::new(),
            input_errors: Vec::new(),
        }
    }

    fn law_failure(&self) -> bool {
        self.suites
            .iter()
            .any(|(_, laws)| laws.iter().any(|l| l.status == LawStatus::Fail))
    }

    fn exit_code(&self) -> ExitCode {
        if !self.input_errors.is_empty() {
            ExitCode::from(2)
        } else if self.law_failure() {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    }

    fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|(name, laws)| json!({"suite": name, "laws": laws}))
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("schema".into(), json!("wmha-report/1"));
        obj.insert("command".into(), json!(self.command));
        obj.insert("kind".into(), json!(self.common.kind));
        obj.insert("input".into(), json!(self.common.input.display().to_string()));
        obj.insert("seed".into(), json!(self.common.seed));
        obj.insert("max_exhaustive_dim".into(), json!(self.common.max_exhaustive_dim));
        obj.insert("jobs".into(), json!(self.common.jobs));
        if let Some(name) = &self.instance {
            obj.insert("instance".into(), json!(name));
        }
        let dims: serde_json::Map<String, Value> = self
            .dimensions
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        obj.insert("dimensions".into(), Value::Object(dims));
        obj.insert("suites".into(), Value::Array(suites));
        for (k, v) in &self.extras {
            obj.insert(k.to_string(), v.clone());
        }
        obj.insert("input_errors".into(), json!(self.input_errors));
        let ok = self.input_errors.is_empty() && !self.law_failure();
        obj.insert("ok".into(), json!(ok));
        Value::Object(obj)
    }

    fn render_text(&self, elapsed_ms: u128) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "wmha {} --kind {} --input {} (seed {})\n",
            self.command,
            self.common.kind,
            self.common.input.display(),
            self.common.seed
        ));
        if let Some(name) = &self.instance {
            out.push_str(&format!("instance: {name}\n"));
        }
        for (k, v) in &self.dimensions {
            out.push_str(&format!("dim {k}: {v}\n"));
        }
        for (suite, laws) in &self.suites {
            out.push_str(&format!("suite {suite}:\n"));
            for law in laws {
                match law.status {
                    LawStatus::Ok => out.push_str(&format!("  ok   {}\n", law.name)),
                    LawStatus::Fail => out.push_str(&format!(
                        "  FAIL {}: {}\n",
                        law.name,
                        law.witness.as_deref().unwrap_or("(no witness)")
                    )),
                }
            }
        }
        for (k, v) in &self.extras {
            out.push_str(&format!(
                "{k}: {}\n",
                serde_json::to_string(v).expect("serializable")
            ));
        }
        for e in &self.input_errors {
            out.push_str(&format!("input error: {e}\n"));
        }
        let verdict = if !self.input_errors.is_empty() {
            "invalid input"
        } else if self.law_failure() {
            "LAW FAILURE"
        } else {
            "all requested laws hold"
        };
        out.push_str(&format!("result: {verdict}\n"));
        out.push_str(&format!("elapsed: {elapsed_ms} ms\n"));
        out
    }
}

fn elem_json(e: &Elem) -> Value {
    Value::Array(
        e.iter()
            .map(|(k, c)| json!([k, c.to_string()]))
            .collect(),
    )
}

fn tensor_json(t: &TensorElem) -> Value {
    Value::Array(
        t.iter()
            .map(|((k1, k2), c)| json!([k1, k2, c.to_string()]))
            .collect(),
    )
}

fn law(name: &str, witness: Option<String>) -> LawReport {
    LawReport {
        name: name.to_string(),
        status: if witness.is_some() { LawStatus::Fail } else { LawStatus::Ok },
        witness,
    }
}

/// Strips `dual-of:`/`bidual-of:` wrappers down to the base kind.
fn base_kind(kind: &str) -> &str {
    let mut k = kind;
    loop {
        if let Some(rest) = k.strip_prefix("dual-of:") {
            k = rest;
        } else if let Some(rest) = k.strip_prefix("bidual-of:") {
            k = rest;
        } else {
            return k;
        }
    }
}

fn read_input(common: &Common, report: &mut Report) -> Option<Value> {
    let text = match std::fs::read_to_string(&common.input) {
        Ok(t) => t,
        Err(e) => {
            report
                .input_errors
                .push(format!("cannot read {}: {e}", common.input.display()));
            return None;
        }
    };
    match serde_json::from_str(&text) {
        Ok(v) => Some(v),
        Err(e) => {
            report.input_errors.push(format!("cannot parse JSON: {e}"));
            None
        }
    }
}

fn build_instance(
    registry: &Registry,
    common: &Common,
    report: &mut Report,
) -> Option<Arc<dyn Wmha>> {
    let input = read_input(common, report)?;
    match registry.build(&common.kind, &input) {
        Ok(w) => {
            report.instance = Some(w.name());
            report
                .dimensions
                .insert("algebra", json!(w.basis().len()));
            Some(w)
        }
        Err(RegistryError::Build(msg)) => {
            // The data was well-formed but a construction precondition
            // (for example integral faithfulness) failed: a law failure.
            report
                .suites
                .push(("construction".into(), vec![law("construction", Some(msg))]));
            None
        }
        Err(e) => {
            report.input_errors.push(e.to_string());
            None
        }
    }
}

fn budget_of(common: &Common) -> CheckBudget {
    CheckBudget {
        max_exhaustive_dim: common.max_exhaustive_dim,
        seed: common.seed,
    }
}

fn suite_axioms(w: &dyn Wmha, common: &Common) -> Vec<LawReport> {
    check_axioms_parallel(w, &budget_of(common), common.jobs.max(1))
}

fn suite_integrals(w: &dyn Wmha, report: &mut Report) -> Vec<LawReport> {
    let mut laws = Vec::new();
    let lefts = enumerate_left_integrals(w);
    let rights = enumerate_right_integrals(w);
    report.dimensions.insert("left_integrals", json!(lefts.len()));
    report.dimensions.insert("right_integrals", json!(rights.len()));
    report
        .dimensions
        .insert("source_algebra", json!(fin_rank(&source_algebra_basis(w))));
    report
        .dimensions
        .insert("target_algebra", json!(fin_rank(&target_algebra_basis(w))));
    laws.push(law(
        "integral-space-nonzero",
        (lefts.is_empty() || rights.is_empty())
            .then(|| "no nonzero invariant functionals".to_string()),
    ));
    match certify_designated(w) {
        Ok(cert) => {
            laws.push(law(
                "designated-integral-left-invariant",
                match cert.side {
                    Side::Left | Side::TwoSided => None,
                    Side::Right => Some("designated integral is only right invariant".into()),
                },
            ));
            laws.push(law(
                "designated-integral-faithful",
                (!cert.faithful).then(|| "Gram matrix is singular".to_string()),
            ));
        }
        Err(e) => {
            laws.push(law("designated-integral-certificate", Some(e.to_string())));
        }
    }
    laws
}

fn suite_transfer(w: &dyn Wmha) -> Vec<LawReport> {
    let phi = w.designated_integral();
    let psi = compose_with_antipode(w, &phi);
    let mut laws = check_transfer_relations(w, &phi, &psi);
    laws.push(law(
        "spanning-forms",
        (!spanning_forms_check(w, &phi, &psi))
            .then(|| "sliced-coproduct forms do not span the dual space".to_string()),
    ));
    laws
}

fn suite_duality(
    w: &dyn Wmha,
    common: &Common,
    registry: &Registry,
    input: &Value,
    report: &mut Report,
) -> Vec<LawReport> {
    let mut laws = Vec::new();
    let dual = match build_dual(w) {
        Ok(d) => d,
        Err(e) => {
            laws.push(law("dual-construction", Some(e.to_string())));
            return laws;
        }
    };
    laws.push(law("dual-construction", None));
    report
        .dimensions
        .insert("dual_algebra", json!(dual.table().basis().len()));
    for mut l in check_axioms_parallel(dual.table(), &budget_of(common), common.jobs.max(1)) {
        l.name = format!("dual-{}", l.name);
        laws.push(l);
    }
    laws.push(law(
        "biduality-isomorphism",
        biduality_iso(w, &dual).err().map(|e| e.to_string()),
    ));
    if base_kind(&common.kind) == "kg" && common.kind == "kg" {
        match registry.build("cg", input) {
            Ok(cg) => {
                let outcome = same_structure(dual.table(), cg.as_ref());
                laws.push(law("dual-matches-convolution", outcome.err()));
                // The witness bijection: dual basis labels onto the
                // convolution algebra's arrow basis, identically.
                let bij: serde_json::Map<String, Value> = dual
                    .table()
                    .basis()
                    .iter()
                    .map(|k| (k.clone(), json!(k)))
                    .collect();
                report
                    .extras
                    .push(("dual_convolution_witness", Value::Object(bij)));
            }
            Err(e) => laws.push(law("dual-matches-convolution", Some(e.to_string()))),
        }
    }
    laws
}

fn suite_radford(
    w: &dyn Wmha,
    common: &Common,
    input: &Value,
    report: &mut Report,
) -> Vec<LawReport> {
    if base_kind(&common.kind) == "sep" && common.kind == "sep" {
        // The separability dual carries the full modular apparatus in
        // closed form; verify it there.
        let data = match wmha::sep::from_json(input) {
            Ok(d) => d,
            Err(e) => return vec![law("radford-input", Some(e.to_string()))],
        };
        let dual = match wmha::sep::build_sep_dual(&data) {
            Ok(d) => d,
            Err(e) => return vec![law("radford-dual-construction", Some(e.to_string()))],
        };
        match wmha::sep::sep_dual_integrals_and_radford(&data, &dual) {
            Ok(rep) => {
                report
                    .extras
                    .push(("modular_element", elem_json(&rep.delta)));
                rep.reports
            }
            Err(e) => vec![law("radford-verification", Some(e.to_string()))],
        }
    } else {
        // Generic route: δ solves φ∘S = φ(·δ); then S⁴ must be
        // conjugation by δ.
        let phi = w.designated_integral();
        let psi = compose_with_antipode(w, &phi);
        let delta = match modular_element(w, &phi, &psi) {
            Ok(d) => d,
            Err(e) => return vec![law("modular-element", Some(e.to_string()))],
        };
        report.extras.push(("modular_element", elem_json(&delta)));
        let mut witness = None;
        for k in &w.basis() {
            let a = Elem::basis(k.clone());
            let s4 = w.antipode(&w.antipode(&w.antipode(&w.antipode(&a))));
            if w.product(&delta, &s4) != w.product(&a, &delta) {
                witness = Some(format!("δ·S⁴({k}) ≠ {k}·δ"));
                break;
            }
        }
        vec![law("modular-element", None), law("radford-conjugation", witness)]
    }
}

fn run_suites(
    suites: &[String],
    w: &dyn Wmha,
    common: &Common,
    registry: &Registry,
    input: &Value,
    report: &mut Report,
) {
    for suite in suites {
        let laws = match suite.as_str() {
            "axioms" => suite_axioms(w, common),
            "integrals" => suite_integrals(w, report),
            "transfer" => suite_transfer(w),
            "duality" => suite_duality(w, common, registry, input, report),
            "radford" => suite_radford(w, common, input, report),
            _ => unreachable!("suite names validated up front"),
        };
        report.suites.push((suite.clone(), laws));
    }
}

fn cmd_validate(common: &Common, registry: &Registry, report: &mut Report) {
    if !registry.knows(&common.kind) {
        report
            .input_errors
            .push(RegistryError::UnknownKind(common.kind.clone()).to_string());
        return;
    }
    let Some(input) = read_input(common, report) else { return };
    match base_kind(&common.kind) {
        "sep" => match wmha::sep::from_json(&input) {
            Ok(data) => {
                let checks = wmha::sep::validate_sep(&data);
                for c in &checks {
                    if c.status == LawStatus::Fail {
                        report.input_errors.push(format!(
                            "{} [{}]",
                            c.name,
                            c.witness.as_deref().unwrap_or("")
                        ));
                    }
                }
                report.suites.push(("validation".into(), checks));
            }
            Err(e) => report.input_errors.push(e.to_string()),
        },
        _ => match wmha::groupoid::from_json(&input) {
            Ok(g) => {
                report
                    .dimensions
                    .insert("arrows", json!(g.arrows().len()));
                report
                    .dimensions
                    .insert("units", json!(g.unit_count()));
                report
                    .suites
                    .push(("validation".into(), vec![law("groupoid-axioms", None)]));
            }
            Err(e) => report.input_errors.push(e.to_string()),
        },
    }
}

fn cmd_dual(common: &Common, registry: &Registry, report: &mut Report) {
    let Some(w) = build_instance(registry, common, report) else { return };
    let dual = match build_dual(w.as_ref()) {
        Ok(d) => d,
        Err(e) => {
            report
                .suites
                .push(("dual".into(), vec![law("dual-construction", Some(e.to_string()))]));
            return;
        }
    };
    let mut laws = vec![law("dual-construction", None)];
    report
        .dimensions
        .insert("dual_algebra", json!(dual.table().basis().len()));
    let lefts = enumerate_left_integrals(dual.table());
    let rights = enumerate_right_integrals(dual.table());
    report.dimensions.insert("dual_left_integrals", json!(lefts.len()));
    report
        .dimensions
        .insert("dual_right_integrals", json!(rights.len()));
    // Structure constants of the dual.
    let tables = structure_tables(dual.table());
    let mut product = serde_json::Map::new();
    for ((a, b), v) in &tables.product {
        product.insert(format!("{a}|{b}"), elem_json(v));
    }
    let mut coproduct = serde_json::Map::new();
    let mut antipode = serde_json::Map::new();
    let mut counit = serde_json::Map::new();
    for k in &tables.basis {
        coproduct.insert(k.clone(), tensor_json(&tables.coproduct[k]));
        antipode.insert(k.clone(), elem_json(&tables.antipode[k]));
        counit.insert(k.clone(), json!(tables.counit.value(k).to_string()));
    }
    report.extras.push((
        "dual_structure",
        json!({
            "basis": tables.basis,
            "product": product,
            "coproduct": coproduct,
            "counit": counit,
            "antipode": antipode,
        }),
    ));
    report
        .extras
        .push(("dual_idempotent_support", tensor_json(&e_elem(dual.table()))));
    if common.kind == "kg" {
        if let Some(input) = read_input(common, report) {
            if let Ok(cg) = registry.build("cg", &input) {
                let outcome = same_structure(dual.table(), cg.as_ref());
                laws.push(law("dual-matches-convolution", outcome.err()));
                let bij: serde_json::Map<String, Value> = dual
                    .table()
                    .basis()
                    .iter()
                    .map(|k| (k.clone(), json!(k)))
                    .collect();
                report
                    .extras
                    .push(("dual_convolution_witness", Value::Object(bij)));
            }
        }
    }
    report.suites.push(("dual".into(), laws));
}

fn cmd_bidual(common: &Common, registry: &Registry, report: &mut Report) {
    let Some(w) = build_instance(registry, common, report) else { return };
    let dual = match build_dual(w.as_ref()) {
        Ok(d) => d,
        Err(e) => {
            report
                .suites
                .push(("bidual".into(), vec![law("dual-construction", Some(e.to_string()))]));
            return;
        }
    };
    report
        .dimensions
        .insert("dual_algebra", json!(dual.table().basis().len()));
    match biduality_iso(w.as_ref(), &dual) {
        Ok(iso) => {
            let mut witness = serde_json::Map::new();
            for k in &w.basis() {
                witness.insert(k.clone(), elem_json(&iso[k]));
            }
            report
                .extras
                .push(("biduality_witness", Value::Object(witness)));
            report
                .suites
                .push(("bidual".into(), vec![law("biduality-isomorphism", None)]));
        }
        Err(e) => {
            report.suites.push((
                "bidual".into(),
                vec![law("biduality-isomorphism", Some(e.to_string()))],
            ));
        }
    }
}

fn cmd_check(
    common: &Common,
    suites: &[String],
    registry: &Registry,
    report: &mut Report,
) {
    for s in suites {
        if !ALL_SUITES.contains(&s.as_str()) {
            report.input_errors.push(format!("unknown suite {s:?}"));
            return;
        }
    }
    if !registry.knows(&common.kind) {
        report
            .input_errors
            .push(RegistryError::UnknownKind(common.kind.clone()).to_string());
        return;
    }
    let Some(input) = read_input(common, report) else { return };
    let Some(w) = build_instance(registry, common, report) else { return };
    run_suites(suites, w.as_ref(), common, registry, &input, report);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = Registry::builtin();
    let start = Instant::now();

    let (name, common): (&'static str, Common) = match &cli.command {
        Command::Validate(c) => ("validate", c.clone()),
        Command::Check { common, .. } => ("check", common.clone()),
        Command::Integrals(c) => ("integrals", c.clone()),
        Command::Dual(c) => ("dual", c.clone()),
        Command::Bidual(c) => ("bidual", c.clone()),
        Command::Radford(c) => ("radford", c.clone()),
    };
    let mut report = Report::new(name, &common);

    match &cli.command {
        Command::Validate(c) => cmd_validate(c, &registry, &mut report),
        Command::Check { common, suites } => cmd_check(common, suites, &registry, &mut report),
        Command::Integrals(c) => {
            if let Some(w) = build_instance(&registry, c, &mut report) {
                let laws = suite_integrals(w.as_ref(), &mut report);
                report.suites.push(("integrals".into(), laws));
            }
        }
        Command::Dual(c) => cmd_dual(c, &registry, &mut report),
        Command::Bidual(c) => cmd_bidual(c, &registry, &mut report),
        Command::Radford(c) => {
            if let Some(input) = read_input(c, &mut report) {
                if let Some(w) = build_instance(&registry, c, &mut report) {
                    let laws = suite_radford(w.as_ref(), c, &input, &mut report);
                    report.suites.push(("radford".into(), laws));
                }
            }
        }
    }

    let elapsed = start.elapsed().as_millis();
    match common.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report.to_json()).expect("serializable")
            );
        }
        Format::Text => {
            print!("{}", report.render_text(elapsed));
        }
    }
    report.exit_code()
}
