use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pfree::chordal::{central_bag, triangulated_clique_tree};
use pfree::eds::{solve_eds, EdsConfig, EdsError};
use pfree::gen::{self, GenError, GenSpec};
use pfree::io::{parse_instance, write_instance, Problem, ResultRecord};
use pfree::mwis::{solve_mwis, MwisError, SolverConfig, Strictness};
use pfree::nuke::{Measure, NukeParams};
use pfree::oracle::{self, OracleError, OracleLimits};
use pfree::pattern::{find_induced_path_with_budget, PatternError};
use pfree::verify::{self, ClaimOutcome, HitReport, VerifyError};
use pfree::{VertexSet, WeightedGraph};

const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_STRUCTURE: u8 = 4;
const EXIT_GENERATION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "pfree",
    version,
    about = "Exact MWIS and efficient domination on P6-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum weight independent set.
    SolveMwis {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MwisMode::Robust)]
        mode: MwisMode,
        /// Maximum number of branching nodes.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Maximum weight efficient dominating set.
    SolveEds {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EdsModeArg::Strict)]
        mode: EdsModeArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Exit 0 if the graph has no induced path on k vertices, 1 otherwise.
    Check {
        file: PathBuf,
        #[arg(long)]
        forbid: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the fill edges, clique-tree bags and central bag of a minimal triangulation.
    Triangulate { file: PathBuf },
    /// Generate an instance.
    Gen(GenArgs),
    /// Check hitting bounds or the counterexample constructions.
    Verify(VerifyArgs),
    /// Brute-force reference answers.
    Oracle {
        #[arg(value_enum)]
        what: OracleKind,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MwisMode {
    Robust,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum EdsModeArg {
    Strict,
    Fallback,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    RandomPkfree,
    GrownPkfree,
    Cograph,
    Blowup,
    NukeCounterexample,
    SeparatorCounterexample,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (tree nodes for `blowup`).
    #[arg(long)]
    n: Option<usize>,
    /// Forbidden path length for `random-pkfree`, block parameter for the counterexamples.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 3)]
    max_module: usize,
    #[arg(long, default_value_t = 1000)]
    max_repair: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw vertex weights uniformly from `LO,HI`.
    #[arg(long, value_parser = parse_range)]
    weights: Option<(i64, i64)>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    HitSep,
    HitPmc,
    HitNuke,
    Counterexamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureKind {
    Uniform,
    Adversarial,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Instance file (not used for `counterexamples`).
    file: Option<PathBuf>,
    /// Target set as comma-separated 1-based ids; omitted means every
    /// minimal separator or potential maximal clique of the instance.
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = MeasureKind::Uniform)]
    measure: MeasureKind,
    /// Window parameter for `hit-nuke`.
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long, default_value_t = 4)]
    k_nuke: usize,
    #[arg(long, default_value_t = 3)]
    k_sep: usize,
    /// Extension budget for induced-path searches.
    #[arg(long, default_value_t = 20_000_000)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Mwis,
    Eds,
    Seps,
    Pmcs,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

/// An error with its exit code and a short status tag for result records.
struct Failure {
    code: u8,
    tag: &'static str,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Self {
        Failure {
            code: EXIT_PARSE,
            tag: "parse-error",
            message: message.to_string(),
        }
    }
    fn budget(message: impl ToString) -> Self {
        Failure {
            code: EXIT_BUDGET,
            tag: "budget-exceeded",
            message: message.to_string(),
        }
    }
    fn structure(message: impl ToString) -> Self {
        Failure {
            code: EXIT_STRUCTURE,
            tag: "structure-violation",
            message: message.to_string(),
        }
    }
    fn generation(message: impl ToString) -> Self {
        Failure {
            code: EXIT_GENERATION,
            tag: "generation-failure",
            message: message.to_string(),
        }
    }
}

impl From<MwisError> for Failure {
    fn from(e: MwisError) -> Self {
        match e {
            MwisError::BudgetExceeded(_) => Failure::budget(e),
            MwisError::NotP6Free(_) | MwisError::ClaimViolated(_) => Failure::structure(e),
            MwisError::NegativeWeight(_) | MwisError::InvalidConfig(_) => Failure::parse(e),
        }
    }
}

impl From<EdsError> for Failure {
    fn from(e: EdsError) -> Self {
        match e {
            EdsError::BudgetExceeded(_) => Failure::budget(e),
            EdsError::StructureViolation(_) | EdsError::NotAPmc(_) => Failure::structure(e),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::LimitExceeded { .. } => Failure::budget(e),
            OracleError::NegativeWeight(_) => Failure::parse(e),
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::generation(e)
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::structure(e)
    }
}

fn load(path: &Path) -> Result<WeightedGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn emit(record: &ResultRecord, as_json: bool) {
    if as_json {
        println!("{}", record.to_json());
    } else {
        print!("{}", record.to_plain());
    }
}

fn run_solver(
    problem: Problem,
    as_json: bool,
    run: impl FnOnce() -> Result<ResultRecord, Failure>,
) -> Result<u8, Failure> {
    match run() {
        Ok(rec) => {
            emit(&rec, as_json);
            Ok(0)
        }
        Err(f) => {
            if as_json {
                println!("{}", ResultRecord::error(problem, f.tag, &f.message).to_json());
            }
            Err(f)
        }
    }
}

fn solve_mwis_cmd(file: &Path, mode: MwisMode, budget: Option<u64>, as_json: bool) -> Result<u8, Failure> {
    run_solver(Problem::Mwis, as_json, || {
        let gw = load(file)?;
        let cfg = SolverConfig {
            strictness: match mode {
                MwisMode::Robust => Strictness::Robust,
                MwisMode::Strict => Strictness::Strict,
            },
            node_budget: budget,
            ..SolverConfig::default()
        };
        let (sol, stats) = solve_mwis(&gw, &cfg)?;
        ResultRecord::mwis(&gw, &sol, &stats).map_err(Failure::structure)
    })
}

fn solve_eds_cmd(file: &Path, mode: EdsModeArg, budget: Option<u64>, as_json: bool) -> Result<u8, Failure> {
    run_solver(Problem::Eds, as_json, || {
        let gw = load(file)?;
        let mut cfg = match mode {
            EdsModeArg::Strict => EdsConfig::default(),
            EdsModeArg::Fallback => EdsConfig::fallback(),
        };
        cfg.node_budget = budget;
        let out = solve_eds(&gw, &cfg)?;
        ResultRecord::eds(&gw, out.solution.as_ref(), &out.stats).map_err(Failure::structure)
    })
}

fn check_cmd(file: &Path, k: usize, budget: Option<u64>) -> Result<u8, Failure> {
    let gw = load(file)?;
    let found = find_induced_path_with_budget(&gw.graph, k, budget.unwrap_or(u64::MAX)).map_err(|e| match e {
        PatternError::BudgetExceeded(_) => Failure::budget(e),
    })?;
    match found {
        Some(p) => {
            let ids: Vec<String> = p.vertices.iter().map(|v| (v + 1).to_string()).collect();
            println!("induced P{k}: {}", ids.join(" "));
            Ok(1)
        }
        None => {
            println!("P{k}-free");
            Ok(0)
        }
    }
}

fn fmt_set(s: &VertexSet) -> String {
    let ids: Vec<String> = one_based(s).iter().map(usize::to_string).collect();
    ids.join(" ")
}

fn triangulate_cmd(file: &Path) -> Result<u8, Failure> {
    let gw = load(file)?;
    let (fill, tree) = triangulated_clique_tree(&gw.graph);
    println!("fill {}", fill.len());
    for &(u, v) in &fill.edges {
        println!("f {} {}", u + 1, v + 1);
    }
    println!("bags {}", tree.bags.len());
    for (i, bag) in tree.bags.iter().enumerate() {
        println!("b {} {}", i + 1, fmt_set(bag));
    }
    for &(i, j) in &tree.tree_edges {
        println!("t {} {}", i + 1, j + 1);
    }
    if !tree.bags.is_empty() {
        let c = central_bag(&gw.graph, &tree).map_err(Failure::structure)?;
        println!("central {}", c + 1);
    }
    Ok(0)
}

fn gen_cmd(a: &GenArgs) -> Result<u8, Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::generation(format!("--{name} is required for this family")))
    };
    let spec = match a.family {
        Family::RandomPkfree => GenSpec::RandomPkFree {
            n: need(a.n, "n")?,
            p: a.p,
            k: a.k.unwrap_or(6),
            seed: a.seed,
            max_repair: a.max_repair,
        },
        Family::GrownPkfree => GenSpec::GrownPkFree {
            n: need(a.n, "n")?,
            p: a.p,
            k: a.k.unwrap_or(6),
            seed: a.seed,
        },
        Family::Cograph => GenSpec::Cograph {
            n: need(a.n, "n")?,
            seed: a.seed,
        },
        Family::Blowup => GenSpec::Blowup {
            tree_nodes: need(a.n, "n")?,
            max_module: a.max_module,
            seed: a.seed,
        },
        Family::NukeCounterexample => GenSpec::NukeCounterexample { k: need(a.k, "k")? },
        Family::SeparatorCounterexample => GenSpec::SeparatorCounterexample { k: need(a.k, "k")? },
    };
    let g = spec.generate()?;
    let gw = match a.weights {
        Some((lo, hi)) => gen::assign_weights(&g, lo, hi, a.seed)?,
        None => WeightedGraph::unit(g),
    };
    let text = write_instance(&gw);
    match &a.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::generation(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn print_hit(label: &str, target: &VertexSet, r: &HitReport) {
    println!("{label} target=[{}] {r}", fmt_set(target));
}

fn verify_cmd(a: &VerifyArgs) -> Result<u8, Failure> {
    if let Theorem::Counterexamples = a.theorem {
        let report = verify::check_counterexamples(a.k_nuke, a.k_sep, a.budget)?;
        println!("k_nuke={} k_sep={} tau={}", report.k_nuke, report.k_sep, report.tau);
        for c in &report.claims {
            match &c.outcome {
                ClaimOutcome::Verified => println!("{} verified", c.name),
                ClaimOutcome::Failed(why) => println!("{} FAILED {why}", c.name),
                ClaimOutcome::Skipped(why) => println!("{} skipped {why}", c.name),
            }
        }
        report.into_result()?;
        return Ok(0);
    }

    let file = a
        .file
        .as_deref()
        .ok_or_else(|| Failure::parse("an instance file is required"))?;
    let gw = load(file)?;
    let g = &gw.graph;
    let explicit = match &a.set {
        Some(ids) => {
            if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > g.n()) {
                return Err(Failure::parse(format!("vertex id {bad} outside 1..={}", g.n())));
            }
            Some(VertexSet::from_vertices(g.n(), ids.iter().map(|i| i - 1)))
        }
        None => None,
    };
    let limits = OracleLimits::default();
    let targets = match (a.theorem, explicit) {
        (_, Some(s)) => vec![s],
        (Theorem::HitSep, None) => oracle::minimal_separators_bruteforce(g, &limits)?,
        (Theorem::HitPmc, None) => oracle::pmcs_bruteforce(g, &limits)?,
        _ => return Err(Failure::parse("--set is required for hit-nuke")),
    };
    let mut all_ok = true;
    for target in &targets {
        let mu = match a.measure {
            MeasureKind::Uniform => Measure::uniform(target),
            MeasureKind::Adversarial => Measure::adversarial(g, target),
        };
        let (label, report) = match a.theorem {
            Theorem::HitSep => ("hit-sep", verify::verify_hit_sep(g, target, &mu)?),
            Theorem::HitPmc => ("hit-pmc", verify::verify_hit_pmc(g, target, &mu)?),
            Theorem::HitNuke => {
                let tau = a.tau.ok_or_else(|| Failure::parse("--tau is required for hit-nuke"))?;
                (
                    "hit-nuke",
                    verify::verify_hit_nuke(g, target, &NukeParams::standard(tau), &mu)?,
                )
            }
            Theorem::Counterexamples => unreachable!("handled above"),
        };
        all_ok &= report.satisfied;
        print_hit(label, target, &report);
    }
    println!("targets {} all_satisfied {all_ok}", targets.len());
    Ok(if all_ok { 0 } else { 1 })
}

fn oracle_cmd(what: OracleKind, file: &Path) -> Result<u8, Failure> {
    let gw = load(file)?;
    let limits = OracleLimits::default();
    let value = match what {
        OracleKind::Mwis => {
            let s = oracle::mwis_bruteforce(&gw, &limits)?;
            json!({ "weight": s.weight, "solution": one_based(&s.chosen) })
        }
        OracleKind::Eds => match oracle::eds_bruteforce(&gw, &limits)? {
            Some(o) => json!({
                "exists": true,
                "weight": o.best.weight,
                "solution": one_based(&o.best.chosen),
                "solution_count": o.solution_count,
                "cardinalities": o.cardinalities,
            }),
            None => json!({ "exists": false }),
        },
        OracleKind::Seps => {
            let seps = oracle::minimal_separators_bruteforce(&gw.graph, &limits)?;
            json!({ "minimal_separators": seps.iter().map(one_based).collect::<Vec<_>>() })
        }
        OracleKind::Pmcs => {
            let pmcs = oracle::pmcs_bruteforce(&gw.graph, &limits)?;
            json!({ "pmcs": pmcs.iter().map(one_based).collect::<Vec<_>>() })
        }
    };
    println!("{value}");
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::SolveMwis {
            file,
            mode,
            budget,
            json,
        } => solve_mwis_cmd(file, *mode, *budget, *json),
        Command::SolveEds {
            file,
            mode,
            budget,
            json,
        } => solve_eds_cmd(file, *mode, *budget, *json),
        Command::Check { file, forbid, budget } => check_cmd(file, *forbid, *budget),
        Command::Triangulate { file } => triangulate_cmd(file),
        Command::Gen(a) => gen_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Oracle { what, file } => oracle_cmd(*what, file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            log::debug!("exiting with code {}", f.code);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
