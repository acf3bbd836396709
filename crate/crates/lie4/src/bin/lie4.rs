use clap::{error::ErrorKind, Parser, Subcommand};
use lie4::catalog::{self, FamilyId};
use lie4::classify::{identify, ClassifyError};
use lie4::external;
use lie4::io::{self, DocError, ReportDocument};
use lie4::product::{self, Decoration, PcType, SearchBudget};
use lie4::report::{Check, Report};
use lie4::verify::{self, VerifyOptions};
use lie4::{par, LieAlgebra, Matrix};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::process::ExitCode;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;
const EX_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "lie4", version, about = "Real solvable Lie algebras of dimension at most four, exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Name the catalog family of an algebra document and print the isomorphism witness
    Identify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay a reference table and report pass/fail/undecided per check
    Verify {
        #[arg(long, value_parser = table_names())]
        table: Option<String>,
        #[arg(long)]
        json: bool,
        /// seed for the random basis-change stress checks
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// re-run the checks recorded in a JSON report and compare
        #[arg(long, conflicts_with = "table")]
        recheck: Option<String>,
    },
    /// Search for paracomplex structures (E² = Id, both eigenspaces 2-dim subalgebras)
    Search {
        #[arg(long, required = true)]
        paracomplex: bool,
        #[arg(long = "type", value_parser = ["r2r2", "affr2", "affaff"])]
        ty: Option<String>,
        #[arg(long)]
        input: String,
        /// branch budget of the polynomial solver
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Basis of the derivation algebra
    Derivations {
        #[arg(long)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Build an algebra from a commutator-closed list of square matrices
    FromMatrices {
        #[arg(long)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// List catalog families, constraints and dictionary names
    Catalog {
        #[arg(long, required = true)]
        list: bool,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn table_names() -> Vec<&'static str> {
    let mut v = vec!["all"];
    v.extend(verify::TABLES);
    v.extend(verify::STRESS);
    v
}

struct Fail(u8, String);

impl From<DocError> for Fail {
    fn from(e: DocError) -> Self {
        Fail(EX_DATAERR, e.to_string())
    }
}

fn read(path: &str) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(EX_NOINPUT, format!("{path}: {e}")))
}

fn load(path: &str) -> Result<(LieAlgebra, String), Fail> {
    let g = io::parse_document(&read(path)?)?;
    let digest = io::digest(io::emit_document(&g).as_bytes());
    Ok((g, digest))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn matrix_lines(m: &Matrix) -> String {
    io::matrix_record(m).iter().map(|r| format!("  [{}]", r.join(", "))).collect::<Vec<_>>().join("\n")
}

fn classify_fail(e: ClassifyError) -> Fail {
    let code = match e {
        ClassifyError::NotSolvable
        | ClassifyError::IrreducibleCubicOrWorse(_)
        | ClassifyError::IrrationalParameter(_)
        | ClassifyError::Unsupported(_) => 2,
        ClassifyError::InternalMismatch(_) | ClassifyError::SingularWitness | ClassifyError::Catalog(_) => EX_SOFTWARE,
    };
    Fail(code, e.to_string())
}

fn cmd_identify(input: &str, as_json: bool) -> Result<u8, Fail> {
    let (g, digest) = load(input)?;
    let r = identify(&g).map_err(classify_fail)?;
    if !r.verified {
        return Err(Fail(EX_SOFTWARE, format!("witness for {} failed verification", r.family)));
    }
    if as_json {
        print_json(&json!({"input_digest": digest, "identification": io::identification_record(&r)}));
    } else {
        println!("{}", r.family);
        println!("witness (input coordinates to catalog coordinates):\n{}", matrix_lines(&r.witness));
    }
    Ok(0)
}

fn verify_digest() -> String {
    io::digest(&serde_json::to_vec(&external::catalog_document()).expect("serializable"))
}

fn cmd_verify(table: Option<String>, as_json: bool, seed: u64, recheck: Option<String>) -> Result<u8, Fail> {
    if let Some(path) = recheck {
        return cmd_recheck(&path, as_json);
    }
    let table = table.ok_or_else(|| Fail(EX_USAGE, "verify needs --table or --recheck".into()))?;
    let opts = VerifyOptions { seed, ..Default::default() };
    let reports = verify::run_table(&table, &opts).map_err(|e| Fail(EX_USAGE, format!("unknown table {}", e.0)))?;
    let doc = ReportDocument::new(&format!("verify --table {table}"), verify_digest(), Some(seed), &reports);
    emit_report(&doc, as_json);
    Ok(if doc.totals().fail == 0 { 0 } else { 1 })
}

fn emit_report(doc: &ReportDocument, as_json: bool) {
    if as_json {
        print!("{}", doc.to_json());
    } else {
        print!("{}", doc.to_text());
    }
}

/// Re-derive every recorded check under the recorded seed and compare record by record.
fn cmd_recheck(path: &str, as_json: bool) -> Result<u8, Fail> {
    let old = ReportDocument::from_json(&read(path)?)?;
    let mut rep = Report::new("recheck");
    rep.push(Check::new("recheck/counts", old.consistent(), "status counts agree with the records"));
    let digest = verify_digest();
    rep.push(Check::new("recheck/input-digest", old.input_digest == digest, format!("recorded {}", old.input_digest)));
    let opts = VerifyOptions { seed: old.seed.unwrap_or(VerifyOptions::default().seed), ..Default::default() };
    for t in &old.tables {
        let Ok(fresh) = verify::run_table(&t.table, &opts) else {
            rep.push(Check::new(format!("recheck/{}", t.table), false, "unknown table"));
            continue;
        };
        let fresh = ReportDocument::new("", String::new(), None, &fresh);
        let now: BTreeMap<&str, &io::CheckRecord> = fresh.tables[0].checks.iter().map(|c| (c.name.as_str(), c)).collect();
        for c in &t.checks {
            let id = format!("recheck/{}", c.name);
            match now.get(c.name.as_str()) {
                Some(n) if n.status == c.status && n.certificate == c.certificate => {
                    rep.push(Check::new(id, true, format!("reproduced {:?}", c.status).to_lowercase()))
                }
                Some(n) => rep.push(Check::new(id, false, format!("recorded {:?} / {}, now {:?} / {}", c.status, c.certificate, n.status, n.certificate))),
                None => rep.push(Check::new(id, false, "check no longer produced")),
            }
        }
        let complete = fresh.tables[0].checks.len() == t.checks.len();
        rep.push(Check::new(format!("recheck/{}/complete", t.table), complete, format!("{} records", t.checks.len())));
    }
    let doc = ReportDocument::new("verify --recheck", io::digest(old.to_json().as_bytes()), old.seed, &[rep]);
    emit_report(&doc, as_json);
    Ok(if doc.totals().fail == 0 { 0 } else { 1 })
}

fn cmd_search(ty: Option<String>, input: &str, budget: Option<usize>, as_json: bool) -> Result<u8, Fail> {
    let (g, digest) = load(input)?;
    let mut b = SearchBudget::default();
    if let Some(n) = budget {
        b.solver_branches = n;
    }
    let types: Vec<PcType> = match ty.as_deref() {
        None => PcType::ALL.to_vec(),
        Some(t) => PcType::ALL.iter().copied().filter(|p| p.tag() == t).collect(),
    };
    let (mut any_found, mut any_undecided) = (false, false);
    let mut records = Vec::new();
    let mut text = String::new();
    for t in types {
        let (outcome, cert, summary, found) = match product::paracomplex_search(&g, t, &b) {
            Ok(o) => {
                let outcome = if !o.found.is_empty() {
                    "found"
                } else if o.certificate.decided_empty() {
                    "decided-empty"
                } else {
                    "undecided"
                };
                (outcome, o.certificate.kind(), o.certificate.summary(&g), o.found)
            }
            Err(product::ProductError::BudgetExceeded { partial }) => ("undecided", "Undecided", "search budget exceeded".to_string(), partial),
            Err(product::ProductError::PreconditionViolated(m)) => return Err(Fail(EX_DATAERR, m)),
            Err(e) => return Err(Fail(EX_SOFTWARE, e.to_string())),
        };
        any_found |= !found.is_empty();
        any_undecided |= outcome == "undecided";
        let show = |vs: &[lie4::Vector]| vs.iter().map(|v| g.show(v)).collect::<Vec<_>>();
        let decomps: Vec<Value> = found
            .iter()
            .map(|p| {
                json!({
                    "plus": show(p.plus.basis()),
                    "minus": show(p.minus.basis()),
                    "decoration": Decoration::of(p.plus_ideal, p.minus_ideal).symbol(),
                    "e": io::matrix_record(&p.e),
                })
            })
            .collect();
        text.push_str(&format!("{}: {outcome} [{cert}] {summary}\n", t.tag()));
        for p in &found {
            text.push_str(&format!(
                "  <{}> {} <{}>\n",
                show(p.plus.basis()).join(", "),
                Decoration::of(p.plus_ideal, p.minus_ideal).symbol(),
                show(p.minus.basis()).join(", ")
            ));
        }
        records.push(json!({"type": t.tag(), "outcome": outcome, "certificate": {"kind": cert, "summary": summary}, "decompositions": decomps}));
    }
    if as_json {
        print_json(&json!({"input_digest": digest, "searches": records}));
    } else {
        print!("{text}");
    }
    Ok(if any_found {
        0
    } else if any_undecided {
        3
    } else {
        1
    })
}

fn cmd_derivations(input: &str, as_json: bool) -> Result<u8, Fail> {
    let (g, _) = load(input)?;
    let ds = g.derivations();
    if as_json {
        let doc = io::MatricesDocument { format_version: io::FORMAT_VERSION, matrices: ds.iter().map(io::matrix_record).collect() };
        print_json(&doc);
    } else {
        println!("dim Der = {}", ds.len());
        for (k, d) in ds.iter().enumerate() {
            println!("D{k}:\n{}", matrix_lines(d));
        }
    }
    Ok(0)
}

fn cmd_from_matrices(input: &str, as_json: bool) -> Result<u8, Fail> {
    let ms = io::parse_matrices(&read(input)?)?;
    let g = LieAlgebra::from_matrices(&ms).map_err(|e| Fail(EX_DATAERR, e.to_string()))?;
    let ident = identify(&g);
    if let Err(e @ (ClassifyError::InternalMismatch(_) | ClassifyError::SingularWitness | ClassifyError::Catalog(_))) = &ident {
        return Err(Fail(EX_SOFTWARE, e.to_string()));
    }
    if as_json {
        let id = match &ident {
            Ok(r) => serde_json::to_value(io::identification_record(r)).expect("serializable"),
            Err(e) => json!({"error": e.to_string()}),
        };
        print_json(&json!({"document": io::to_document(&g), "identification": id}));
    } else {
        print!("{}", io::emit_document(&g));
        match &ident {
            Ok(r) => println!("{}", r.family),
            Err(e) => println!("not identified: {e}"),
        }
    }
    Ok(0)
}

fn cmd_catalog(family: Option<String>, as_json: bool) -> Result<u8, Fail> {
    let ids: Vec<FamilyId> = match family {
        Some(f) => vec![FamilyId::from_tag(&f).map_err(|e| Fail(EX_USAGE, e.to_string()))?],
        None => catalog::ALL.to_vec(),
    };
    let mut names: BTreeMap<FamilyId, Vec<String>> = BTreeMap::new();
    for n in external::sample_names() {
        if let Ok(f) = external::corrected_family(&n) {
            let s = n.to_string();
            let list = names.entry(f.id).or_default();
            if !list.contains(&s) {
                list.push(s);
            }
        }
    }
    let rows: Vec<Value> = ids
        .iter()
        .map(|&id| {
            json!({
                "id": id.tag(),
                "name": id.name(),
                "dim": id.dim(),
                "params": id.param_names(),
                "constraint": id.constraint_text(),
                "dictionary_names": names.get(&id).cloned().unwrap_or_default(),
            })
        })
        .collect();
    if as_json {
        print_json(&rows);
    } else {
        for (id, r) in ids.iter().zip(&rows) {
            let ps = id.param_names().join(", ");
            println!("{:<12} {:<14} dim {}  params ({ps})  {}", id.tag(), id.name(), id.dim(), id.constraint_text());
            let dn = r["dictionary_names"].as_array().map(|a| a.iter().filter_map(|v| v.as_str()).collect::<Vec<_>>().join("; ")).unwrap_or_default();
            if !dn.is_empty() {
                println!("{:<12} also: {dn}", "");
            }
        }
    }
    Ok(0)
}

fn run(cmd: Cmd) -> Result<u8, Fail> {
    match cmd {
        Cmd::Identify { input, json } => cmd_identify(&input, json),
        Cmd::Verify { table, json, seed, recheck } => cmd_verify(table, json, seed, recheck),
        Cmd::Search { ty, input, budget, json, .. } => cmd_search(ty, &input, budget, json),
        Cmd::Derivations { input, json } => cmd_derivations(&input, json),
        Cmd::FromMatrices { input, json } => cmd_from_matrices(&input, json),
        Cmd::Catalog { family, json, .. } => cmd_catalog(family, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => EX_USAGE,
            });
        }
    };
    match par::with_threads(par::env_threads(), move || run(cli.cmd)) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("lie4: {msg}");
            ExitCode::from(code)
        }
    }
}
