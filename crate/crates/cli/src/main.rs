//! `unidist`: JSON front end for the distinction engine.
//!
//! Exit codes: 0 on success, 1 on an internal failure, 2 on invalid input,
//! 3 when a size cap is exceeded.

mod sweep;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use unidist::orbits::{enumerate_orbit_shapes, exists_relevant};
use unidist::segcalc::{is_ladder, mw_dual, sp_dist_ladder};
use unidist::signgraph::{self, path_v0, path_v1, tau, walk, PathForm};
use unidist::verdicts::{
    cross_validate_ds, ds_vanishing, ladder_bc, speh_verdict, standard_module_verdict, tempered_vanishing,
};
use unidist::weylinv::{self, minimal_involutions, springer_path};
use unidist::wire::{BlocksDoc, DatumDoc, MultisegmentDoc, SingleSegmentDoc};
use unidist::{Config, SignTuple, SignedPermutation, SqintRule};

#[derive(Debug, Parser)]
#[command(name = "unidist", version, about = "Sp-distinction decision procedures for unitary groups")]
struct Cli {
    /// Emit graph subcommands as DOT instead of JSON.
    #[arg(long, global = true)]
    dot: bool,

    /// How GL(F)-distinction of long square-integrable segments is decided.
    #[arg(long, global = true, value_enum, default_value_t = RuleArg::Parity)]
    sqint_rule: RuleArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Copy, Clone, ValueEnum)]
enum RuleArg {
    Parity,
    Conservative,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sign tuples and their graph.
    #[command(subcommand)]
    Sign(SignCmd),
    /// Signed permutations and involutions.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Multisegment calculus.
    #[command(subcommand)]
    Seg(SegCmd),
    /// Orbit shapes and relevance search.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Distinction verdicts.
    #[command(subcommand)]
    Verdict(VerdictCmd),
    /// Exhaustive self-consistency sweeps.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Debug, Subcommand)]
enum SignCmd {
    /// Component index of a tuple over {+,-}.
    Component { tuple: String },
    /// Constrained path to f_0 or f_1.
    Path {
        tuple: String,
        #[arg(long, value_enum)]
        target: Option<Target>,
        /// Use the form starting at t_1 + 1.
        #[arg(long)]
        variant: bool,
    },
    /// The subgraph reachable from a tuple.
    Dot { tuple: String },
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Target {
    V0,
    V1,
}

#[derive(Debug, Subcommand)]
enum WeylCmd {
    /// Minimal involutions of rank n.
    Minimal { n: usize },
    /// Path from an involution to a minimal one.
    Springer { json: String },
    /// The involution graph of rank n ≤ 4.
    Dot { n: usize },
}

#[derive(Debug, Subcommand)]
enum SegCmd {
    /// Zelevinsky involution of a multisegment.
    Mw { json: String },
    /// Whether a ladder pairs as νΔ_{2i} = Δ_{2i-1}.
    LadderDist { json: String },
}

#[derive(Debug, Subcommand)]
enum OrbitCmd {
    /// Every orbit shape of a block list.
    Enumerate { blocks: String },
    /// Search for a relevant orbit.
    Relevant { blocks: String },
}

#[derive(Debug, Subcommand)]
enum VerdictCmd {
    /// Discrete series from an admissible datum.
    Discrete {
        datum: String,
        /// Confirm a vanishing verdict with the orbit engine.
        #[arg(long)]
        replay: bool,
    },
    /// Tempered representations from GL pairs and a datum.
    Tempered { datum: String },
    /// Base change analysis of a conjugate-self-dual ladder.
    LadderBc { multiseg: String },
    /// Speh representations U(δ, m).
    Speh {
        seg: String,
        #[arg(long)]
        m: usize,
    },
    /// Langlands quotients of generic standard modules.
    Standard { multiseg: String },
}

#[derive(Debug, Subcommand)]
enum OracleCmd {
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    suite: sweep::Suite,
    #[arg(long)]
    max: usize,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] unidist::Error),
    #[error("validation failed ({clause}): {detail}")]
    Input { clause: &'static str, detail: String },
    #[error("sweep found {0} failures")]
    Sweep(usize),
}

impl CliError {
    fn input(clause: &'static str, detail: impl ToString) -> Self {
        CliError::Input { clause, detail: detail.to_string() }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(unidist::Error::CapExceeded { .. }) => 3,
            CliError::Core(unidist::Error::Internal(_)) | CliError::Sweep(_) => 1,
            CliError::Core(_) | CliError::Input { .. } => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, clause) = match self {
            CliError::Core(unidist::Error::Validation { clause, .. }) => ("validation", Some(*clause)),
            CliError::Core(unidist::Error::Precondition { clause, .. }) => ("precondition", Some(*clause)),
            CliError::Core(unidist::Error::CapExceeded { .. }) => ("cap_exceeded", None),
            CliError::Core(unidist::Error::Internal(_)) => ("internal", None),
            CliError::Core(_) => ("validation", None),
            CliError::Input { clause, .. } => ("validation", Some(*clause)),
            CliError::Sweep(_) => ("sweep", None),
        };
        json!({ "error": { "kind": kind, "clause": clause, "message": self.to_string() } })
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a subcommand prints.
enum Output {
    Json(Value),
    Text(String),
}

fn to_value(v: impl Serialize) -> CliResult<Output> {
    serde_json::to_value(v).map(Output::Json).map_err(|e| CliError::Core(unidist::Error::Internal(e.to_string())))
}

/// Reads a JSON argument: inline when it starts with `{` or `[`, standard
/// input for `-`, otherwise a file path.
fn read_json<T: serde::de::DeserializeOwned>(arg: &str) -> CliResult<T> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_owned()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input("input file", e))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::input("input file", format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::input("json syntax", e))
}

fn parse_tuple(s: &str) -> CliResult<SignTuple> {
    Ok(s.parse::<SignTuple>()?)
}

fn config(rule: RuleArg) -> CliResult<Config> {
    let mut cfg = Config {
        sqint_rule: match rule {
            RuleArg::Parity => SqintRule::Parity,
            RuleArg::Conservative => SqintRule::Conservative,
        },
        ..Config::default()
    };
    if let Ok(v) = std::env::var("UNIDIST_MAX_SUPPORT") {
        cfg.max_support = v.trim().parse().map_err(|_| CliError::input("UNIDIST_MAX_SUPPORT", format!("{v:?} is not a count")))?;
    }
    Ok(cfg)
}

fn graph(dot: bool, text: String) -> Output {
    if dot {
        Output::Text(text)
    } else {
        Output::Json(json!({ "dot": text }))
    }
}

fn run(cli: Cli) -> CliResult<Output> {
    let cfg = config(cli.sqint_rule)?;
    match cli.command {
        Command::Sign(cmd) => sign(cmd, cli.dot, &cfg),
        Command::Weyl(cmd) => weyl(cmd, cli.dot),
        Command::Seg(cmd) => seg(cmd),
        Command::Orbit(cmd) => orbit(cmd, &cfg),
        Command::Verdict(cmd) => verdict(cmd, &cfg),
        Command::Oracle(OracleCmd::Sweep(args)) => {
            let report = sweep::run(args.suite, args.max, &cfg)?;
            if report.failures.is_empty() {
                to_value(report)
            } else {
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
                Err(CliError::Sweep(report.failures.len()))
            }
        }
    }
}

fn sign(cmd: SignCmd, dot: bool, cfg: &Config) -> CliResult<Output> {
    match cmd {
        SignCmd::Component { tuple } => {
            let e = parse_tuple(&tuple)?;
            let t = tau(&e);
            let search = signgraph::bfs_component(&e, cfg.bfs_cap).ok();
            to_value(json!({ "tuple": e, "tau": t, "search": search }))
        }
        SignCmd::Path { tuple, target, variant } => {
            let e = parse_tuple(&tuple)?;
            let target = match target {
                Some(t) => t,
                None if tau(&e) == 1 => Target::V1,
                None => Target::V0,
            };
            let form = if variant { PathForm::Variant } else { PathForm::Standard };
            let p = match target {
                Target::V0 => path_v0(&e, form)?,
                Target::V1 => path_v1(&e, form)?,
            };
            let (sink, history) = walk(&e, &p)?;
            to_value(json!({
                "tuple": e,
                "target": if target == Target::V0 { "v0" } else { "v1" },
                "form": if variant { "variant" } else { "standard" },
                "pattern": p,
                "history": history,
                "sink": sink,
            }))
        }
        SignCmd::Dot { tuple } => Ok(graph(dot, signgraph::to_dot(&parse_tuple(&tuple)?))),
    }
}

fn weyl(cmd: WeylCmd, dot: bool) -> CliResult<Output> {
    match cmd {
        WeylCmd::Minimal { n } => to_value(minimal_involutions(n)?),
        WeylCmd::Springer { json } => {
            let w: SignedPermutation = read_json(&json)?;
            to_value(springer_path(&w)?)
        }
        WeylCmd::Dot { n } => Ok(graph(dot, weylinv::to_dot(n)?)),
    }
}

fn seg(cmd: SegCmd) -> CliResult<Output> {
    match cmd {
        SegCmd::Mw { json } => {
            let m = read_json::<MultisegmentDoc>(&json)?.resolve()?;
            to_value(MultisegmentDoc::of(&mw_dual(&m)))
        }
        SegCmd::LadderDist { json } => {
            let m = read_json::<MultisegmentDoc>(&json)?.resolve()?;
            to_value(json!({ "ladder": is_ladder(&m), "sp_dist": sp_dist_ladder(&m)? }))
        }
    }
}

fn orbit(cmd: OrbitCmd, cfg: &Config) -> CliResult<Output> {
    match cmd {
        OrbitCmd::Enumerate { blocks } => {
            let blocks = read_json::<BlocksDoc>(&blocks)?.resolve()?;
            let shapes: Vec<_> = enumerate_orbit_shapes(&blocks, cfg)?.collect();
            to_value(json!({ "count": shapes.len(), "shapes": shapes }))
        }
        OrbitCmd::Relevant { blocks } => {
            let blocks = read_json::<BlocksDoc>(&blocks)?.resolve()?;
            to_value(exists_relevant(&blocks, cfg)?)
        }
    }
}

fn verdict(cmd: VerdictCmd, cfg: &Config) -> CliResult<Output> {
    match cmd {
        VerdictCmd::Discrete { datum, replay } => {
            let doc: DatumDoc = read_json(&datum)?;
            if doc.gl_pairs.is_some() {
                return Err(CliError::input("discrete datum", "gl_pairs belong to tempered data"));
            }
            let d = doc.resolve_admissible()?;
            let v = ds_vanishing(&d);
            if replay {
                to_value(json!({ "verdict": v, "replay": cross_validate_ds(&d, cfg)? }))
            } else {
                to_value(v)
            }
        }
        VerdictCmd::Tempered { datum } => {
            let td = read_json::<DatumDoc>(&datum)?.resolve_tempered()?;
            to_value(tempered_vanishing(&td))
        }
        VerdictCmd::LadderBc { multiseg } => {
            let m = read_json::<MultisegmentDoc>(&multiseg)?.resolve()?;
            to_value(ladder_bc(&m)?)
        }
        VerdictCmd::Speh { seg, m } => {
            let delta = read_json::<SingleSegmentDoc>(&seg)?.resolve()?;
            to_value(speh_verdict(&delta, m)?)
        }
        VerdictCmd::Standard { multiseg } => {
            let m = read_json::<MultisegmentDoc>(&multiseg)?.resolve()?;
            to_value(standard_module_verdict(&m, cfg)?)
        }
    }
}

/// Writes one document to standard output; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| {
        if text.ends_with('\n') {
            Ok(())
        } else {
            out.write_all(b"\n")
        }
    });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Json(v)) => {
            emit(&serde_json::to_string_pretty(&v).expect("values serialize"));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if !matches!(e, CliError::Sweep(_)) {
                emit(&serde_json::to_string_pretty(&e.to_json()).expect("errors serialize"));
            }
            eprintln!("unidist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
