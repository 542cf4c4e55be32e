//! Command-line front end. Every command produces a report of named checks;
//! the exit code is 0 when all pass, 1 when some check fails, 2 for usage
//! errors and 3 for internal inconsistencies.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebras::AlgebraTower;
use crate::capelli::{check_cartan_element, CapelliContext, XVariant, DEFAULT_CLOSURE_CAP};
use crate::error::{Error, Result};
use crate::family::{check_reflection_equation, FamilyDescriptor, FamilyKind, Partition};
use crate::freealg::{fmt_word, NCPoly, RewriteSystem};
use crate::knopsahi::{knop_sahi, verify_eigenvalues};
use crate::scalar::RatFunc;
use crate::uqmod::{UExpr, Uq};

pub const SCHEMA: &str = "qcapelli/1";

#[derive(Parser, Debug)]
#[command(name = "qcapelli", version, about = "Quantum Capelli operators and Knop-Sahi polynomials, computed exactly")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// ai, aii or diag
    #[arg(long, global = true)]
    pub family: Option<FamilyKind>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Also write the report as JSON to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Seed for randomized checks (recorded in the report).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximal dimension of a generated module.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    pub budget_closure: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Every check for one family up to the given partition size.
    VerifyAll {
        #[arg(long, default_value_t = 2)]
        max_lambda: u32,
    },
    /// The reflection equation for J.
    Reflection,
    /// Dump the derived rewrite rules as JSON.
    Relations {
        #[arg(long, default_value = "xd")]
        algebra: String,
    },
    /// Local confluence and PBW counts.
    Confluence {
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Triviality of the canonical generators under B_θ.
    CheckBtheta,
    /// The highest weight vectors H_r, or H_{2μ} with --mu.
    Hvector {
        #[arg(long)]
        mu: Option<Partition>,
    },
    /// The Cartan element X against K_{2ε_N} − 1.
    #[command(name = "lemma61")]
    Cartan {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Print C_λ.
    Capelli {
        #[arg(long)]
        lambda: Partition,
    },
    /// Eigenvalue of C_λ on H_{2μ}, or all μ with |μ| ≤ --max-size.
    Eigen {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Option<Partition>,
        #[arg(long)]
        max_size: Option<u32>,
    },
    /// Solve for P*_λ(x; a, g).
    Knopsahi {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        a: RatFunc,
        #[arg(long)]
        g: RatFunc,
        #[arg(long)]
        normalized: bool,
    },
    /// Compare Capelli eigenvalues with interpolation polynomials.
    #[command(name = "theoremb")]
    Interpolation {
        #[arg(long, default_value_t = 2)]
        max_lambda: u32,
        #[arg(long, default_value_t = 2)]
        max_mu: u32,
    },
    /// Apply a U_q generator (E1, F2, K1, Kinv1) to an element.
    Act {
        #[arg(long)]
        op: String,
        #[arg(long)]
        elem: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub status: &'static str,
    pub details: Value,
}

impl Record {
    pub fn new(name: impl Into<String>, pass: bool, details: Value) -> Self {
        Record { name: name.into(), status: if pass { "pass" } else { "fail" }, details }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Value,
    pub records: Vec<Record>,
    /// Command output that is not a check (rule dumps, polynomials).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Session {
    global: Global,
    ctx: Option<Arc<CapelliContext>>,
}

impl Session {
    fn family(&self) -> Result<FamilyDescriptor> {
        let kind = self.global.family.ok_or_else(|| Error::Invalid("--family is required".into()))?;
        let n = self.global.n.ok_or_else(|| Error::Invalid("--n is required".into()))?;
        FamilyDescriptor::new(kind, n)
    }

    fn ctx(&mut self) -> Result<Arc<CapelliContext>> {
        if let Some(c) = &self.ctx {
            return Ok(c.clone());
        }
        let fam = self.family()?;
        let uq = Uq::new(Arc::new(AlgebraTower::build(&fam)?))?;
        let mut c = CapelliContext::new(Arc::new(uq));
        c.closure_cap = self.global.budget_closure;
        let c = Arc::new(c);
        self.ctx = Some(c.clone());
        Ok(c)
    }
}

fn rules_json(sys: &RewriteSystem) -> Value {
    let rules: Vec<Value> = sys
        .sorted_rules()
        .into_iter()
        .map(|((a, b), rhs)| {
            let terms: Vec<Value> = rhs.terms().iter().map(|(w, c)| json!({"coef": c.to_string(), "word": fmt_word(w)})).collect();
            json!({"lhs": [a.to_string(), b.to_string()], "rhs": terms})
        })
        .collect();
    Value::Array(rules)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn reflection_records(fam: &FamilyDescriptor) -> Vec<Record> {
    let bad = check_reflection_equation(fam);
    vec![Record::new("reflection", bad.is_empty(), json!({"violations": bad.len()}))]
}

fn confluence_records(tower: &AlgebraTower, degree: usize, pbw_degree: usize) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (name, sys) in [("t", &tower.t), ("x", &tower.x), ("d", &tower.d), ("xd", &tower.xd)] {
        let v = sys.check_local_confluence(degree)?;
        let words: Vec<String> = v.iter().take(5).map(|c| fmt_word(&c.word)).collect();
        out.push(Record::new(format!("confluence {name} degree {degree}"), v.is_empty(), json!({"violations": v.len(), "examples": words})));
    }
    let g = tower.fam.canonical.len();
    for r in 1..=pbw_degree {
        let want = binomial(g + r - 1, r);
        let got = tower.x.count_normal_words(r);
        out.push(Record::new(format!("pbw count degree {r}"), got == want, json!({"count": got, "expected": want})));
    }
    Ok(out)
}

fn btheta_records(uq: &Uq) -> Result<Vec<Record>> {
    let bad = uq.check_btheta_invariance()?;
    let shown: Vec<String> = bad.iter().map(|(b, g)| format!("{g}·{b}")).collect();
    Ok(vec![Record::new("btheta invariance", bad.is_empty(), json!({"violations": shown}))])
}

fn hvector_records(ctx: &CapelliContext) -> Result<Vec<Record>> {
    let n = ctx.tower().fam.n;
    let mut out = Vec::new();
    let mut hs = Vec::new();
    for r in 1..=n {
        // build_h checks the weight and E_i·H_r = 0 itself
        let h = ctx.build_h(r)?;
        out.push(Record::new(format!("H_{r} highest weight"), true, json!({"weight": h.weight, "terms": h.poly.len()})));
        hs.push(h.poly);
    }
    for a in 0..hs.len() {
        for b in a + 1..hs.len() {
            let x = &ctx.tower().x;
            let ok = x.mul(&hs[a], &hs[b])? == x.mul(&hs[b], &hs[a])?;
            out.push(Record::new(format!("H_{} H_{} commute", a + 1, b + 1), ok, Value::Null));
        }
    }
    Ok(out)
}

fn cartan_records(tower: &AlgebraTower, max_degree: usize) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for v in XVariant::for_kind(tower.fam.kind) {
        let bad = check_cartan_element(tower, v, max_degree)?;
        let shown: Vec<String> = bad.iter().take(5).map(fmt_word).collect();
        out.push(Record::new(format!("cartan element {v:?}"), bad.is_empty(), json!({"max_degree": max_degree, "failures": shown})));
    }
    Ok(out)
}

fn vanishing_records(ctx: &CapelliContext, max_lambda: u32) -> Result<Vec<Record>> {
    let n = ctx.tower().fam.n;
    let mut out = Vec::new();
    for lambda in Partition::all_up_to(max_lambda, n) {
        let mut bad = Vec::new();
        for mu in Partition::all_up_to(lambda.size(), n) {
            let e = ctx.eigenvalue(&lambda, &mu)?;
            let want = if mu == lambda { RatFunc::one() } else { RatFunc::zero() };
            if e != want {
                bad.push(format!("{mu}: {e}"));
            }
        }
        out.push(Record::new(format!("capelli vanishing {lambda}"), bad.is_empty(), json!({"failures": bad})));
    }
    Ok(out)
}

fn interpolation_records(ctx: &CapelliContext, max_lambda: u32, max_mu: u32) -> Result<(Vec<Record>, Value)> {
    let cells = verify_eigenvalues(ctx, max_lambda, max_mu)?;
    let fails = cells.iter().filter(|c| !c.pass).count();
    let rec = Record::new("eigenvalues match interpolation", fails == 0, json!({"cells": cells.len(), "failures": fails}));
    Ok((vec![rec], serde_json::to_value(&cells).expect("cells serialize")))
}

fn run_command(s: &mut Session, cmd: &Command) -> Result<(Vec<Record>, Option<Value>)> {
    Ok(match cmd {
        Command::VerifyAll { max_lambda } => {
            let fam = s.family()?;
            let ctx = s.ctx()?;
            let mut recs = reflection_records(&fam);
            recs.extend(confluence_records(ctx.tower(), 3, 3)?);
            recs.extend(btheta_records(&ctx.uq)?);
            recs.extend(hvector_records(&ctx)?);
            recs.extend(cartan_records(ctx.tower(), 3)?);
            recs.extend(vanishing_records(&ctx, *max_lambda)?);
            recs.extend(interpolation_records(&ctx, *max_lambda, *max_lambda)?.0);
            (recs, None)
        }
        Command::Reflection => (reflection_records(&s.family()?), None),
        Command::Relations { algebra } => {
            let ctx = s.ctx()?;
            let t = ctx.tower();
            let sys = match algebra.as_str() {
                "t" => &t.t,
                "del" => &t.del,
                "x" => &t.x,
                "d" => &t.d,
                "xd" => &t.xd,
                other => return Err(Error::Invalid(format!("unknown algebra '{other}'"))),
            };
            (vec![], Some(rules_json(sys)))
        }
        Command::Confluence { degree } => (confluence_records(s.ctx()?.tower(), *degree, 4)?, None),
        Command::CheckBtheta => (btheta_records(&s.ctx()?.uq)?, None),
        Command::Hvector { mu } => {
            let ctx = s.ctx()?;
            match mu {
                None => {
                    let recs = hvector_records(&ctx)?;
                    let hs: Vec<String> = (1..=ctx.tower().fam.n).map(|r| ctx.build_h(r).map(|h| h.poly.to_string())).collect::<Result<_>>()?;
                    (recs, Some(json!(hs)))
                }
                Some(mu) => {
                    let h = ctx.build_h2mu(mu)?;
                    let hs = ctx.build_hstar(mu)?;
                    (vec![], Some(json!({"mu": mu.to_string(), "weight": h.weight, "H": h.poly.to_string(), "Hstar": hs.to_string()})))
                }
            }
        }
        Command::Cartan { max_degree } => (cartan_records(s.ctx()?.tower(), *max_degree)?, None),
        Command::Capelli { lambda } => {
            let op = s.ctx()?.build_capelli(lambda)?;
            let out = json!({"lambda": lambda.to_string(), "pairing": op.pairing.to_string(), "degree": op.degree(), "C": op.element.to_string()});
            (vec![], Some(out))
        }
        Command::Eigen { lambda, mu, max_size } => {
            let ctx = s.ctx()?;
            let mus = match (mu, max_size) {
                (Some(m), None) => vec![m.clone()],
                (None, Some(k)) => Partition::all_up_to(*k, ctx.tower().fam.n),
                _ => return Err(Error::Invalid("give exactly one of --mu and --max-size".into())),
            };
            let mut vals = Vec::new();
            for m in &mus {
                vals.push(json!({"mu": m.to_string(), "eigenvalue": ctx.eigenvalue(lambda, m)?.to_string()}));
            }
            let out = if mu.is_some() { vals[0]["eigenvalue"].clone() } else { Value::Array(vals) };
            (vec![], Some(out))
        }
        Command::Knopsahi { lambda, a, g, normalized } => {
            let n = s.global.n.ok_or_else(|| Error::Invalid("--n is required".into()))?;
            let p = knop_sahi(lambda, n, a, g, *normalized)?;
            let rec = Record::new("symmetric in y", p.is_symmetric_in_y(), Value::Null);
            (vec![rec], Some(json!({"poly": p.poly.to_string(), "c_lambda": p.c_lambda.to_string()})))
        }
        Command::Interpolation { max_lambda, max_mu } => {
            let ctx = s.ctx()?;
            let (recs, cells) = interpolation_records(&ctx, *max_lambda, *max_mu)?;
            (recs, Some(cells))
        }
        Command::Act { op, elem } => {
            let ctx = s.ctx()?;
            let g = ctx.uq.parse_op(op)?;
            let p = NCPoly::parse(elem)?;
            (vec![], Some(json!(ctx.uq.act_left(&UExpr::gen(g), &p)?.to_string())))
        }
    })
}

fn command_echo(cli: &Cli) -> Value {
    json!({
        "command": format!("{:?}", cli.command),
        "family": cli.global.family.map(|k| k.slug()),
        "n": cli.global.n,
        "seed": cli.global.seed,
    })
}

/// The module an error is attributed to in messages.
fn error_module(e: &Error) -> &'static str {
    match e {
        Error::Internal { module, .. } => module,
        Error::Arithmetic(_) => "scalar",
        Error::RewriteBudget(_) | Error::IncompletePresentation(_) => "freealg",
        Error::NotInP(_) | Error::NotHomogeneous => "algebras",
        Error::ClosureBudget(_) => "uqmod",
        Error::Invariance(_) | Error::NotEigenvector(_) => "capelli",
        Error::Degenerate(_) => "knopsahi",
        Error::Invalid(_) | Error::Parse(_) => "cli",
    }
}

/// Runs one parsed command; returns the report or the process exit code
/// for an error.
pub fn execute(cli: &Cli) -> std::result::Result<Report, (i32, String)> {
    let mut s = Session { global: cli.global.clone(), ctx: None };
    match run_command(&mut s, &cli.command) {
        Ok((records, output)) => Ok(Report { schema: SCHEMA, command: command_echo(cli), records, output }),
        Err(e @ (Error::Invalid(_) | Error::Parse(_))) => Err((2, format!("usage error: {e}"))),
        Err(e) => Err((3, format!("error in {}: {e}", error_module(&e)))),
    }
}

fn print_text(report: &Report) {
    for r in &report.records {
        let d = if r.details.is_null() { String::new() } else { format!(" {}", r.details) };
        println!("{} {}{}", r.status.to_uppercase(), r.name, d);
    }
    match &report.output {
        Some(Value::String(s)) => println!("{s}"),
        Some(v) => println!("{}", serde_json::to_string_pretty(v).expect("output serializes")),
        None => {}
    }
}

/// Entry point for the binary; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err((code, msg)) => {
            eprintln!("{msg}");
            return code;
        }
    };
    print_text(&report);
    if let Some(path) = &cli.global.json {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    eprintln!("done in {:.2?}", start.elapsed());
    if report.all_pass() {
        0
    } else {
        1
    }
}
