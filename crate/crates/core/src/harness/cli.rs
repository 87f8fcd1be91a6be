use std::ffi::OsString;
use std::time::Instant;

use clap::builder::BoolishValueParser;
use clap::{ArgAction, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use super::verify::{run_suite, SuiteParams, SuiteReport, SUITES};
use crate::combinatorics::{balanced_peel, hom_pi_lamina, matching_condition, sigma_decompose};
use crate::error::{Error, Result};
use crate::linalg::DEFAULT_PRIME;
use crate::multiseg::{balanced_witness, is_ladder, is_regular, is_split, BasicRep, Multisegment, Permutation};
use crate::pp::{Engine, RandomizedVerdict};

#[derive(Debug, Parser)]
#[command(name = "multiseg", version, about = "Multisegment and preprojective-module computations")]
pub struct Cli {
    /// Ambient size; inferred from the largest endpoint when omitted.
    #[arg(long, global = true, env = "MULTISEG_N")]
    pub n: Option<usize>,
    #[arg(long, global = true, env = "MULTISEG_PRIME", default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, global = true, env = "MULTISEG_TRIALS", default_value_t = 5)]
    pub trials: usize,
    #[arg(long, global = true, env = "MULTISEG_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Emit a JSON report instead of plain text.
    #[arg(long, global = true, env = "MULTISEG_JSON", action = ArgAction::SetTrue, value_parser = BoolishValueParser::new())]
    pub json: bool,
    /// Report `elapsed_ms` as null so that output is reproducible byte for byte.
    #[arg(long, global = true, env = "MULTISEG_NO_TIMING", action = ArgAction::SetTrue, value_parser = BoolishValueParser::new())]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generic extension class of the first component by the second.
    Star {
        #[arg(value_name = "M")]
        first: String,
        #[arg(value_name = "N")]
        second: String,
    },
    /// Generic dim Hom_Π between the two components.
    Hom {
        #[arg(value_name = "M")]
        first: String,
        #[arg(value_name = "N")]
        second: String,
    },
    /// Generic dim Ext¹_Π between the two components.
    Ext1 {
        #[arg(value_name = "M")]
        first: String,
        #[arg(value_name = "N")]
        second: String,
    },
    Rigid { m: String },
    /// Whether the two star products agree.
    Commute {
        #[arg(value_name = "M")]
        first: String,
        #[arg(value_name = "N")]
        second: String,
    },
    StrongCommute {
        #[arg(value_name = "M")]
        first: String,
        #[arg(value_name = "N")]
        second: String,
    },
    /// Mœglin–Waldspurger involution.
    Mw { m: String },
    Dual { m: String },
    Grdim { m: String },
    Regular { m: String },
    Balanced { m: String },
    Split { m: String },
    Ladder { m: String },
    /// Matching condition on the bipartite graph of the pair.
    Matching {
        #[arg(value_name = "M")]
        first: String,
        #[arg(value_name = "N")]
        second: String,
    },
    /// Solves star(known, x) = m for x; `known` must be rigid.
    Factor { m: String, known: String },
    /// σ-saturated/σ-reduced decomposition for σ written as `Z[a,b]` or `L[a,b]`.
    SigmaDecompose { m: String, sigma: String },
    /// First step of the balanced peeling.
    Peel { m: String },
    /// Multisegment attached to a permutation.
    Cw { permutation: String },
    /// Runs a verification battery; all batteries when no name is given.
    Verify {
        suite: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Star { .. } => "star",
            Command::Hom { .. } => "hom",
            Command::Ext1 { .. } => "ext1",
            Command::Rigid { .. } => "rigid",
            Command::Commute { .. } => "commute",
            Command::StrongCommute { .. } => "strong-commute",
            Command::Mw { .. } => "mw",
            Command::Dual { .. } => "dual",
            Command::Grdim { .. } => "grdim",
            Command::Regular { .. } => "regular",
            Command::Balanced { .. } => "balanced",
            Command::Split { .. } => "split",
            Command::Ladder { .. } => "ladder",
            Command::Matching { .. } => "matching",
            Command::Factor { .. } => "factor",
            Command::SigmaDecompose { .. } => "sigma-decompose",
            Command::Peel { .. } => "peel",
            Command::Cw { .. } => "cw",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub value: Value,
    pub trials: Option<usize>,
    pub error_bound: Option<f64>,
    pub elapsed_ms: Option<f64>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub success: bool,
}

/// Exit status with the text destined for stdout and stderr.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let started = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            if !cli.no_timing {
                report.elapsed_ms = Some((started.elapsed().as_secs_f64() * 1e6).round() / 1e3);
            }
            let stdout = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.text.clone()
            };
            Outcome { code: if report.success { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

struct Inputs {
    n: Option<usize>,
}

impl Inputs {
    fn one(&self, text: &str) -> Result<Multisegment> {
        match self.n {
            Some(n) => Multisegment::parse(text, n),
            None => Multisegment::parse_infer(text),
        }
    }

    /// Parses a pair over a common ambient size.
    fn two(&self, a: &str, b: &str) -> Result<(Multisegment, Multisegment)> {
        let (x, y) = (self.one(a)?, self.one(b)?);
        let n = x.n().max(y.n());
        Ok((x.with_n(n)?, y.with_n(n)?))
    }
}

fn exact(command: &Command, inputs: Value, value: Value, text: String) -> Report {
    Report {
        command: command.name().to_string(),
        inputs,
        value,
        trials: None,
        error_bound: None,
        elapsed_ms: None,
        text,
        success: true,
    }
}

fn randomized<T>(command: &Command, inputs: Value, v: RandomizedVerdict<T>, show: impl Fn(&T) -> (Value, String)) -> Report {
    let (value, text) = show(&v.value);
    Report {
        command: command.name().to_string(),
        inputs,
        value,
        trials: Some(v.trials),
        error_bound: Some(v.error_bound),
        elapsed_ms: None,
        text: format!("{text}\n"),
        success: true,
    }
}

fn ms_value(m: &Multisegment) -> (Value, String) {
    (json!(m.to_string()), m.to_string())
}

fn plain<T: Serialize + std::fmt::Display>(v: &T) -> (Value, String) {
    (json!(v), v.to_string())
}

fn pair_inputs(m: &Multisegment, n: &Multisegment) -> Value {
    json!({ "n": m.n(), "multisegments": [m.to_string(), n.to_string()] })
}

fn one_input(m: &Multisegment) -> Value {
    json!({ "n": m.n(), "multisegments": [m.to_string()] })
}

fn execute(cli: &Cli) -> Result<Report> {
    let engine = Engine::new(cli.prime, cli.trials, cli.seed)?;
    let inp = Inputs { n: cli.n };
    let c = &cli.command;
    let report = match c {
        Command::Star { first, second } => {
            let (m, n) = inp.two(first, second)?;
            randomized(c, pair_inputs(&m, &n), engine.star(&m, &n)?, ms_value)
        }
        Command::Hom { first, second } => {
            let (m, n) = inp.two(first, second)?;
            randomized(c, pair_inputs(&m, &n), engine.hom_pi(&m, &n)?, plain)
        }
        Command::Ext1 { first, second } => {
            let (m, n) = inp.two(first, second)?;
            randomized(c, pair_inputs(&m, &n), engine.ext1_pi(&m, &n)?, plain)
        }
        Command::Rigid { m } => {
            let m = inp.one(m)?;
            randomized(c, one_input(&m), engine.is_rigid(&m)?, plain)
        }
        Command::Commute { first, second } => {
            let (m, n) = inp.two(first, second)?;
            randomized(c, pair_inputs(&m, &n), engine.commute(&m, &n)?, plain)
        }
        Command::StrongCommute { first, second } => {
            let (m, n) = inp.two(first, second)?;
            randomized(c, pair_inputs(&m, &n), engine.strongly_commute(&m, &n)?, plain)
        }
        Command::Mw { m } => {
            let m = inp.one(m)?;
            randomized(c, one_input(&m), engine.mw(&m)?, ms_value)
        }
        Command::Factor { m, known } => {
            let (m, known) = inp.two(m, known)?;
            randomized(c, pair_inputs(&m, &known), engine.factor(&m, &known)?, |v| match v {
                Some(x) => ms_value(x),
                None => (Value::Null, "none".to_string()),
            })
        }
        Command::Dual { m } => {
            let m = inp.one(m)?;
            let d = m.dual();
            exact(c, one_input(&m), json!(d.to_string()), format!("{d}\n"))
        }
        Command::Grdim { m } => {
            let m = inp.one(m)?;
            let g = m.grdim();
            exact(c, one_input(&m), json!(g.counts), format!("{g}\n"))
        }
        Command::Regular { m } => flag(c, &inp.one(m)?, is_regular),
        Command::Split { m } => flag(c, &inp.one(m)?, is_split),
        Command::Ladder { m } => flag(c, &inp.one(m)?, is_ladder),
        Command::Balanced { m } => {
            let m = inp.one(m)?;
            let (value, text) = if !is_regular(&m) {
                (json!({ "balanced": false, "regular": false, "witness": null }), "false (not regular)".to_string())
            } else {
                match balanced_witness(&m)? {
                    None => (json!({ "balanced": true, "regular": true, "witness": null }), "true".to_string()),
                    Some(w) => {
                        let segs: Vec<String> = w.segments.iter().map(|s| s.to_string()).collect();
                        let kind = serde_json::to_value(w.kind).expect("pattern type serializes");
                        let text = format!("false (type {} witness {})", kind.as_str().unwrap_or(""), segs.join(", "));
                        (json!({ "balanced": false, "regular": true, "witness": w }), text)
                    }
                }
            };
            exact(c, one_input(&m), value, format!("{text}\n"))
        }
        Command::Matching { first, second } => {
            let (m, n) = inp.two(first, second)?;
            let outcome = matching_condition(&m, &n)?;
            let lamina = if is_ladder(&m) || is_ladder(&n) { Some(hom_pi_lamina(&m, &n)?) } else { None };
            let mut text = format!(
                "{} (maximum matching {} of {} left, {} right)",
                outcome.holds, outcome.max_matching, outcome.left, outcome.right
            );
            if let Some(h) = lamina {
                text.push_str(&format!("\nhom {h}"));
            }
            let value = json!({
                "holds": outcome.holds,
                "max_matching": outcome.max_matching,
                "left": outcome.left,
                "right": outcome.right,
                "hom": lamina,
            });
            exact(c, pair_inputs(&m, &n), value, format!("{text}\n"))
        }
        Command::SigmaDecompose { m, sigma } => {
            let m = inp.one(m)?;
            let s = BasicRep::parse(sigma).ok_or_else(|| Error::Parse {
                text: sigma.clone(),
                reason: "expected Z[a,b] or L[a,b]".to_string(),
            })?;
            let d = sigma_decompose(&engine, &m, s)?;
            let pieces: Vec<String> = d.pieces.iter().map(|p| p.to_string()).collect();
            let text = format!(
                "saturated {}\nreduced {}\npieces {}\nreduced input {}\n",
                d.saturated_part,
                d.reduced_part,
                if pieces.is_empty() { "none".to_string() } else { pieces.join(", ") },
                d.is_reduced
            );
            let inputs = json!({ "n": m.n(), "multisegments": [m.to_string()], "sigma": s.to_string() });
            let value = json!({
                "saturated_part": d.saturated_part.to_string(),
                "reduced_part": d.reduced_part.to_string(),
                "pieces": d.pieces,
                "subcomponents": d.subcomponents,
                "is_reduced": d.is_reduced,
            });
            exact(c, inputs, value, text)
        }
        Command::Peel { m } => {
            let m = inp.one(m)?;
            let p = balanced_peel(&m)?;
            let value = json!({ "sigma": p.sigma.to_string(), "rest": p.rest.to_string() });
            exact(c, one_input(&m), value, format!("sigma {}\nrest {}\n", p.sigma, p.rest))
        }
        Command::Cw { permutation } => {
            let w = Permutation::parse(permutation)?;
            let m = w.multisegment();
            exact(c, json!({ "permutation": w.images() }), json!(m.to_string()), format!("{m}\n"))
        }
        Command::Verify { suite, samples, k } => {
            let params = SuiteParams { samples: *samples, n: cli.n, k: *k, seed: cli.seed };
            let names: Vec<&str> = match suite {
                Some(s) => vec![s.as_str()],
                None => SUITES.to_vec(),
            };
            let mut reports = Vec::new();
            for name in names {
                reports.push(run_suite(name, &engine, &params)?);
            }
            verify_report(c, suite.as_deref(), &params, reports)
        }
    };
    Ok(report)
}

fn flag(c: &Command, m: &Multisegment, test: impl Fn(&Multisegment) -> bool) -> Report {
    let v = test(m);
    exact(c, one_input(m), json!(v), format!("{v}\n"))
}

fn verify_report(c: &Command, suite: Option<&str>, params: &SuiteParams, reports: Vec<SuiteReport>) -> Report {
    let mut text = String::new();
    for r in &reports {
        for case in &r.cases {
            let status = if case.pass { "PASS" } else { "FAIL" };
            text.push_str(&format!("{status} {} {}: {}\n", r.suite, case.label, case.detail));
        }
    }
    for r in &reports {
        text.push_str(&format!("{}: {}/{} passed\n", r.suite, r.passed, r.total()));
    }
    let success = reports.iter().all(SuiteReport::ok);
    let inputs = json!({ "suite": suite, "samples": params.samples, "n": params.n, "k": params.k, "seed": params.seed });
    let mut report = exact(c, inputs, json!(reports), text);
    report.success = success;
    report
}
