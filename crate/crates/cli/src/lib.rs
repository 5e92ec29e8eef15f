//! Command implementations for the `hhstring` binary.
//!
//! Every command returns an [`Outcome`] holding the text for standard
//! output and standard error together with the exit code, so the whole
//! front end can be exercised without spawning a process.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use hhstring::audit::self_audit;
use hhstring::bardzell::{ap_op_sets, ap_sets};
use hhstring::cup::{cup_table, CupReport};
use hhstring::generate::{random_presentation, GenOptions};
use hhstring::hochschild::{HhDegree, Method};
use hhstring::presentation::{render, Check};
use hhstring::{parse, CochainComplex, HhTable, Presentation, StringAlgebra, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hhstring", version, about = "Hochschild cohomology of triangular string algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Matrix,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Matrix => Method::Matrix,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct Output {
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Add wall-clock timing to the JSON report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the string-algebra hypotheses.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions of HH^n.
    Hh {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[command(flatten)]
        output: Output,
    },
    /// List the sets AP_n with their relation chains.
    Ap {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Certify that positive-degree cup products vanish.
    Cup {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run every self-check.
    Check {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Print a random valid presentation.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        /// Exactly vertices - 1 arrows.
        #[arg(long)]
        tree: bool,
        /// Only relations of length two.
        #[arg(long)]
        quadratic: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSummary {
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApDegree {
    pub degree: usize,
    pub count: usize,
    pub supports: Vec<String>,
    pub chains: Vec<Vec<String>>,
    pub op_chains: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApListing {
    pub cutoff: usize,
    pub degrees: Vec<ApDegree>,
    /// Forward and dual constructions give the same supports.
    pub dual_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub millis: u128,
}

/// Everything a command computed. Sections it did not compute are `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub presentation: PresentationSummary,
    pub validation: ValidationReport,
    pub ap: Option<ApListing>,
    pub hh: Option<HhTable>,
    pub cup: Option<CupReport>,
    pub properties: Option<Vec<Check>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

struct Loaded {
    report: Report,
    complex: Option<CochainComplex>,
}

fn summary(p: &Presentation) -> PresentationSummary {
    PresentationSummary {
        vertices: p.quiver().num_vertices(),
        arrows: p.quiver().num_arrows(),
        relations: p.relations().len(),
        dimension: p.basis().ok().map(|b| b.len()),
    }
}

fn load(file: &PathBuf) -> Result<Loaded, Outcome> {
    let text = fs::read_to_string(file)
        .map_err(|e| Outcome::error(EXIT_PARSE, format!("cannot read {}: {e}\n", file.display())))?;
    let p = parse(&text).map_err(|e| Outcome::error(EXIT_PARSE, format!("parse error: {e}\n")))?;
    let validation = p.validate();
    let presentation = summary(&p);
    let complex = if validation.overall {
        let algebra = StringAlgebra::new(p).map_err(|e| Outcome::error(EXIT_INVALID, format!("{}", e.0)))?;
        let cx = CochainComplex::new(&algebra)
            .map_err(|e| Outcome::error(EXIT_VIOLATION, format!("construction failed: {e}\n")))?;
        Some(cx)
    } else {
        None
    };
    Ok(Loaded {
        report: Report {
            presentation,
            validation,
            ap: None,
            hh: None,
            cup: None,
            properties: None,
            timing: None,
        },
        complex,
    })
}

fn ap_listing(cx: &CochainComplex, max_degree: Option<usize>) -> Result<ApListing, String> {
    let res = cx.resolution();
    let ap = res.ap();
    let top = max_degree.map_or(ap.cutoff(), |d| d.min(ap.cutoff()));
    let show = |paths: Vec<hhstring::Path>| paths.iter().map(|p| res.display(p)).collect::<Vec<_>>();
    let degrees = (0..=top)
        .map(|n| ApDegree {
            degree: n,
            count: ap.len(n),
            supports: show(ap.supports(n)),
            chains: ap.degree(n).iter().map(|w| show(w.chain())).collect(),
            op_chains: ap.degree(n).iter().map(|w| show(w.op_chain())).collect(),
        })
        .collect();
    let p = res.algebra().presentation();
    let forward = ap_sets(p, ap.cutoff()).map_err(|e| e.to_string())?;
    let dual = ap_op_sets(p, ap.cutoff()).map_err(|e| e.to_string())?;
    Ok(ApListing {
        cutoff: ap.cutoff(),
        degrees,
        dual_agrees: forward == dual,
    })
}

fn emit(report: &mut Report, output: &Output, started: Instant, human: String, code: i32) -> Outcome {
    if output.json {
        if output.timing {
            report.timing = Some(Timing {
                millis: started.elapsed().as_millis(),
            });
        }
        let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
        text.push('\n');
        Outcome::new(code, text)
    } else {
        Outcome::new(code, human)
    }
}

fn invalid(mut loaded: Loaded, output: &Output, started: Instant) -> Outcome {
    let human = format!("{}invalid presentation\n", loaded.report.validation);
    emit(&mut loaded.report, output, started, human, EXIT_INVALID)
}

fn dims_line(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("HH: {}\n", parts.join(" "))
}

fn show(v: Option<usize>) -> String {
    v.map_or("-".to_string(), |x| x.to_string())
}

fn hh_row(d: &HhDegree) -> String {
    format!(
        "{:>6} {:>7} {:>6} {:>5} {:>6} {:>6} {:>8} {:>8}\n",
        d.degree,
        show(d.dim_formula),
        show(d.dim_matrix),
        d.agree.map_or("-", |a| if a { "yes" } else { "NO" }),
        show(d.kernel),
        show(d.image),
        d.counts.zero_zero_minus_minus,
        d.counts.plus_minus_zero_one,
    )
}

pub fn cmd_validate(file: &PathBuf, output: &Output) -> Outcome {
    let started = Instant::now();
    let mut loaded = match load(file) {
        Ok(l) => l,
        Err(o) => return o,
    };
    if !loaded.report.validation.overall {
        return invalid(loaded, output, started);
    }
    let human = format!("{}valid\n", loaded.report.validation);
    emit(&mut loaded.report, output, started, human, EXIT_OK)
}

pub fn cmd_hh(file: &PathBuf, max_degree: Option<usize>, method: MethodArg, output: &Output) -> Outcome {
    let started = Instant::now();
    let mut loaded = match load(file) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let Some(cx) = loaded.complex.take() else {
        return invalid(loaded, output, started);
    };
    let table = cx.hh_table(method.into(), max_degree);
    let mut human = dims_line(&table.dims);
    human.push_str("degree formula matrix agree    ker     im  -(0,0)-  +-(0,1)\n");
    for d in &table.degrees {
        human.push_str(&hh_row(d));
    }
    let disagreement = table.degrees.iter().find(|d| d.agree == Some(false)).cloned();
    loaded.report.ap = ap_listing(&cx, max_degree).ok();
    loaded.report.hh = Some(table);
    let code = if disagreement.is_some() { EXIT_VIOLATION } else { EXIT_OK };
    let mut out = emit(&mut loaded.report, output, started, human, code);
    if let Some(d) = disagreement {
        out.stderr = format!(
            "formula and ranks disagree in degree {}\n{}\n",
            d.degree,
            serde_json::to_string_pretty(&d).expect("records serialize")
        );
    }
    out
}

pub fn cmd_ap(file: &PathBuf, max_degree: Option<usize>, output: &Output) -> Outcome {
    let started = Instant::now();
    let mut loaded = match load(file) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let Some(cx) = loaded.complex.take() else {
        return invalid(loaded, output, started);
    };
    let listing = match ap_listing(&cx, max_degree) {
        Ok(l) => l,
        Err(e) => return Outcome::error(EXIT_VIOLATION, format!("construction failed: {e}\n")),
    };
    let mut human = String::new();
    for d in &listing.degrees {
        human.push_str(&format!("degree {}: {} supports\n", d.degree, d.count));
        for ((s, chain), op) in d.supports.iter().zip(&d.chains).zip(&d.op_chains) {
            if chain.is_empty() {
                human.push_str(&format!("  {s}\n"));
            } else {
                human.push_str(&format!("  {s}  chain [{}]  op [{}]\n", chain.join(" | "), op.join(" | ")));
            }
        }
    }
    if listing.degrees.last().is_some_and(|d| d.degree == listing.cutoff) {
        human.push_str(&format!("degree {} and above: none\n", listing.cutoff));
    }
    let code = if listing.dual_agrees { EXIT_OK } else { EXIT_VIOLATION };
    if !listing.dual_agrees {
        human.push_str("forward and dual constructions differ\n");
    }
    loaded.report.ap = Some(listing);
    emit(&mut loaded.report, output, started, human, code)
}

pub fn cmd_cup(file: &PathBuf, max_degree: Option<usize>, output: &Output) -> Outcome {
    let started = Instant::now();
    let mut loaded = match load(file) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let Some(cx) = loaded.complex.take() else {
        return invalid(loaded, output, started);
    };
    let report = match cup_table(&cx, max_degree) {
        Ok(r) => r,
        Err(e) => return Outcome::error(EXIT_VIOLATION, format!("cup products failed: {e}\n")),
    };
    let positive: usize = report.class_counts.iter().sum();
    let mut human = if positive == 0 {
        "no positive-degree classes\n".to_string()
    } else if report.products_vanish() {
        format!("all cup products vanish (pairs checked: {})\n", report.pairs_checked)
    } else {
        format!(
            "cup products do not vanish: {} counterexamples, {} normalization failures\n",
            report.counterexamples.len(),
            report.normalization_failures.len()
        )
    };
    if !report.repaired_lifts.is_empty() {
        human.push_str(&format!(
            "displayed lift is not a chain map for {} basis cocycles; solved lifts used\n",
            report.repaired_lifts.len()
        ));
    }
    human.push_str(&format!("max odd-degree multiplicity: {}\n", report.max_odd_multiplicity));
    let code = if report.products_vanish() { EXIT_OK } else { EXIT_VIOLATION };
    let witnesses = (!report.products_vanish()).then(|| serde_json::to_string_pretty(&report.counterexamples));
    loaded.report.cup = Some(report);
    let mut out = emit(&mut loaded.report, output, started, human, code);
    if let Some(Ok(w)) = witnesses {
        out.stderr = format!("{w}\n");
    }
    out
}

pub fn cmd_check(file: &PathBuf, output: &Output) -> Outcome {
    let started = Instant::now();
    let mut loaded = match load(file) {
        Ok(l) => l,
        Err(o) => return o,
    };
    let Some(cx) = loaded.complex.take() else {
        return invalid(loaded, output, started);
    };
    let checks = match self_audit(&cx) {
        Ok(c) => c,
        Err(e) => return Outcome::error(EXIT_VIOLATION, format!("audit failed: {e}\n")),
    };
    let mut human = String::new();
    for c in &checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        human.push_str(&format!("[{mark}] {}: {}\n", c.name, c.detail));
    }
    let code = if checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_VIOLATION };
    loaded.report.hh = Some(cx.hh_table(Method::Both, None));
    loaded.report.properties = Some(checks);
    emit(&mut loaded.report, output, started, human, code)
}

pub fn cmd_gen(seed: u64, vertices: usize, tree: bool, quadratic: bool) -> Outcome {
    if vertices == 0 {
        return Outcome::error(EXIT_INVALID, "at least one vertex is required\n".to_string());
    }
    let opts = GenOptions {
        tree,
        quadratic_only: quadratic,
        ..Default::default()
    };
    let p = random_presentation(seed, vertices, opts);
    Outcome::new(EXIT_OK, format!("# seed {seed}\n{}", render(&p)))
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file, output } => cmd_validate(&file, &output),
        Command::Hh {
            file,
            max_degree,
            method,
            output,
        } => cmd_hh(&file, max_degree, method, &output),
        Command::Ap {
            file,
            max_degree,
            output,
        } => cmd_ap(&file, max_degree, &output),
        Command::Cup {
            file,
            max_degree,
            output,
        } => cmd_cup(&file, max_degree, &output),
        Command::Check { file, output } => cmd_check(&file, &output),
        Command::Gen {
            seed,
            vertices,
            tree,
            quadratic,
        } => cmd_gen(seed, vertices, tree, quadratic),
    }
}
