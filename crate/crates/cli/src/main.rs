use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use covenc::bva::{bva_reencode, BvaPolicy};
use covenc::check::{check_equisat, check_isp_encoding, CheckMode, Verdict, DEFAULT_SAMPLES};
use covenc::cover::{
    encode_bc_isp, encode_cc_isp, greedy_biclique_cover, greedy_clique_cover, interval_clique_cover,
    kn_recursive_biclique_cover, Cover,
};
use covenc::dimacs::{parse_dimacs, to_dimacs};
use covenc::interval::{
    encode_interval_direct, encode_interval_isp_block83, encode_interval_isp_recursive, IntervalLits,
    RecursiveParams, DEFAULT_RECURSION_BASE,
};
use covenc::problems::{
    brute_force_schedule, decode_schedule, encode_clique, encode_coloring, encode_independent_set,
    encode_scheduling_with, encode_vertex_cover, is_valid_schedule, SchedulingInstance, SchedulingParams, Strategy,
};
use covenc::{Error, Formula, Graph, IntervalVariant, SatResult, VarMap, VarName};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "covenc", version, about = "Covering-based CNF encodings and their checkers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph file.
    GenGraph(GenGraphArgs),
    /// Encode a graph problem as DIMACS plus a variable map.
    Encode(EncodeArgs),
    /// Compute a clique or biclique cover.
    Cover(CoverArgs),
    /// Re-encode a DIMACS formula by bounded variable addition.
    Bva(BvaArgs),
    /// Check an encoding against its reference semantics.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Compare clause counts across strategies.
    Stats(StatsArgs),
    /// Encode a scheduling instance.
    Schedule(ScheduleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Interval,
    Complete,
    Bipartite,
    Random,
    Cycle,
    Petersen,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    #[value(name = "I")]
    Closed,
    #[value(name = "I0")]
    HalfOpen,
}

impl From<Variant> for IntervalVariant {
    fn from(v: Variant) -> IntervalVariant {
        match v {
            Variant::Closed => IntervalVariant::Closed,
            Variant::HalfOpen => IntervalVariant::HalfOpen,
        }
    }
}

#[derive(Args)]
struct GenGraphArgs {
    kind: GraphKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "I")]
    variant: Variant,
    /// Side sizes of a complete bipartite graph.
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Edge probability of a random graph.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    IndependentSet,
    VertexCover,
    Coloring,
    Clique,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::IndependentSet => "independent-set",
            Problem::VertexCover => "vertex-cover",
            Problem::Coloring => "coloring",
            Problem::Clique => "clique",
        }
    }
}

/// Where the graph comes from: a file, or the complete interval graph on `n`
/// points.
#[derive(Args)]
struct GraphSource {
    #[arg(long, conflicts_with = "n")]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "I")]
    variant: Variant,
}

#[derive(Args)]
struct StrategyParams {
    /// Number of blocks at the top level of the interval encoders.
    #[arg(long)]
    blocks: Option<u32>,
    /// Instances with at most this many points are encoded directly.
    #[arg(long, default_value_t = DEFAULT_RECURSION_BASE)]
    recursion_base: u32,
}

impl StrategyParams {
    fn apply(&self, strategy: Strategy) -> Strategy {
        match strategy {
            Strategy::RecursiveBlocks { .. } => Strategy::RecursiveBlocks {
                k: self.blocks,
                recursion_base: self.recursion_base,
            },
            Strategy::Block83 { .. } => Strategy::Block83 { k: self.blocks },
            other => other,
        }
    }
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    strategy: String,
    #[command(flatten)]
    params: StrategyParams,
    #[arg(long, value_enum, default_value = "independent-set")]
    problem: Problem,
    /// Cardinality (set size, cover size, colour count or clique size).
    #[arg(long)]
    k: Option<usize>,
    /// Use this cover file instead of computing a greedy cover.
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Variable map sidecar (defaults to `<out>.map`).
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverKind {
    Clique,
    Biclique,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverMethod {
    Greedy,
    /// Recursive halving cover of the complete graph on `--n` vertices.
    Kn,
    /// Cover of the closed interval graph on `--n` points by its maximal cliques.
    Interval,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long, value_enum)]
    kind: CoverKind,
    #[arg(long, value_enum, default_value = "greedy")]
    method: CoverMethod,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BvaArgs {
    #[arg(long)]
    cnf: PathBuf,
    /// Variable map of the input; variables without one are named `v(i)`.
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Variable map of the output (defaults to `<out>.map`).
    #[arg(long)]
    out_map: Option<PathBuf>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, default_value_t = 1)]
    min_gain: i64,
    /// Step log (stderr when omitted).
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check that a formula encodes the independent sets of a graph.
    Isp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check projection equisatisfiability over the variables both maps share.
    Equisat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        cnf2: PathBuf,
        #[arg(long)]
        map2: PathBuf,
        /// Only compare shared variables of this kind (e.g. `x`).
        #[arg(long)]
        kind: Option<String>,
    },
    /// Check that the scheduling encoding agrees with exhaustive search.
    Schedule {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        params: ScheduleParamsArgs,
    },
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Comma-separated strategy names (all when omitted).
    #[arg(long, value_delimiter = ',')]
    strategies: Vec<String>,
    #[command(flatten)]
    params: StrategyParams,
}

#[derive(Args)]
struct ScheduleParamsArgs {
    #[arg(long, default_value_t = DEFAULT_RECURSION_BASE)]
    recursion_base: u32,
    /// Per-time-unit AMO constraints instead of the interval encoder.
    #[arg(long)]
    per_time: bool,
}

impl ScheduleParamsArgs {
    fn params(&self) -> SchedulingParams {
        SchedulingParams {
            recursion_base: self.recursion_base,
            per_time: self.per_time,
        }
    }
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    params: ScheduleParamsArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    map: Option<PathBuf>,
    /// Also solve the formula and print the schedule.
    #[arg(long)]
    solve: bool,
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Verify(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Io(_) | Error::Parse { .. } => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_or_stdout(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => write(p, text),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn sidecar_path(out: &Path, explicit: Option<&PathBuf>) -> PathBuf {
    explicit.cloned().unwrap_or_else(|| {
        let mut s = out.as_os_str().to_owned();
        s.push(".map");
        PathBuf::from(s)
    })
}

fn load_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    Ok(Graph::parse(&read(path)?)?)
}

fn load_cnf(path: &Path) -> std::result::Result<Formula, Failure> {
    Ok(parse_dimacs(&read(path)?)?)
}

fn load_map(path: &Path) -> std::result::Result<VarMap, Failure> {
    Ok(VarMap::parse_sidecar(read(path)?.as_bytes())?)
}

fn require<T>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn gen_graph(args: GenGraphArgs) -> Outcome {
    let g = match args.kind {
        GraphKind::Interval => {
            let n = require(args.n, "n")?;
            Graph::interval(n as u32, args.variant.into())?
        }
        GraphKind::Complete => Graph::complete(require(args.n, "n")?),
        GraphKind::Bipartite => Graph::complete_bipartite(require(args.a, "a")?, require(args.b, "b")?),
        GraphKind::Random => {
            let seed = require(args.seed, "seed")?;
            Graph::random(require(args.n, "n")?, require(args.p, "p")?, seed)?
        }
        GraphKind::Cycle => Graph::cycle(require(args.n, "n")?),
        GraphKind::Petersen => Graph::petersen(),
    };
    write_or_stdout(args.out.as_deref(), &g.to_text())
}

fn parse_strategy(name: &str, params: &StrategyParams) -> std::result::Result<Strategy, Failure> {
    Ok(params.apply(name.parse::<Strategy>()?))
}

fn strategy_fields(strategy: Strategy) -> String {
    match strategy {
        Strategy::RecursiveBlocks { k, recursion_base } => format!(
            " blocks={} recursion_base={recursion_base}",
            k.map_or("auto".to_string(), |k| k.to_string())
        ),
        Strategy::Block83 { k } => format!(" blocks={}", k.map_or("auto".to_string(), |k| k.to_string())),
        _ => String::new(),
    }
}

/// Independent-set encodings of the complete interval graph on `n` points,
/// built without materialising the graph.
fn encode_interval_points(
    n: u32,
    variant: IntervalVariant,
    strategy: Strategy,
    pool: &mut VarMap,
) -> std::result::Result<Option<Formula>, Failure> {
    let f = match strategy {
        Strategy::Direct => {
            let x = IntervalLits::allocate(n, pool)?;
            encode_interval_direct(&x, variant)?.with_num_vars(pool.max_index())
        }
        Strategy::RecursiveBlocks { k, recursion_base } => {
            let x = IntervalLits::allocate(n, pool)?;
            let mut params = RecursiveParams::new(variant).with_recursion_base(recursion_base);
            if let Some(k) = k {
                params = params.with_k(k);
            }
            encode_interval_isp_recursive(&x, params, pool)?
        }
        Strategy::Block83 { k } => {
            let x = IntervalLits::allocate(n, pool)?;
            encode_interval_isp_block83(&x, variant, k, pool)?
        }
        _ => return Ok(None),
    };
    Ok(Some(f))
}

fn encode_with_cover(g: &Graph, strategy: Strategy, path: &Path, pool: &mut VarMap) -> std::result::Result<Formula, Failure> {
    let cover = Cover::parse(&read(path)?)?;
    match (strategy, cover) {
        (Strategy::CliqueCover, Cover::Clique(c)) => Ok(encode_cc_isp(g, &c, pool)?),
        (Strategy::BicliqueCover, Cover::Biclique(b)) => Ok(encode_bc_isp(g, &b, pool)?),
        (Strategy::CliqueCover | Strategy::BicliqueCover, _) => {
            Err(usage("cover file kind does not match the strategy"))
        }
        _ => Err(usage("--cover needs --strategy cliqueCover or bicliqueCover")),
    }
}

fn encode_problem(
    g: &Graph,
    problem: Problem,
    k: Option<usize>,
    strategy: Strategy,
    pool: &mut VarMap,
) -> std::result::Result<Formula, Failure> {
    let need_k = || k.ok_or_else(|| usage(format!("--k is required for {}", problem.name())));
    Ok(match problem {
        Problem::IndependentSet => encode_independent_set(g, k, strategy, pool)?,
        Problem::VertexCover => encode_vertex_cover(g, need_k()?, strategy, pool)?,
        Problem::Coloring => encode_coloring(g, need_k()?, strategy, pool)?,
        Problem::Clique => encode_clique(g, need_k()?, strategy, pool)?,
    })
}

fn encode(args: EncodeArgs) -> Outcome {
    let strategy = parse_strategy(&args.strategy, &args.params)?;
    let mut pool = VarMap::new();
    let mut fields = format!(" strategy={strategy}{} problem={}", strategy_fields(strategy), args.problem.name());
    if let Some(k) = args.k {
        fields.push_str(&format!(" k={k}"));
    }
    let plain_is = matches!(args.problem, Problem::IndependentSet) && args.k.is_none();
    let formula = match (&args.source.graph, args.source.n) {
        (Some(path), _) => {
            let g = load_graph(path)?;
            fields.push_str(&format!(" vertices={} edges={}", g.num_vertices(), g.num_edges()));
            match &args.cover {
                Some(cover) if plain_is => encode_with_cover(&g, strategy, cover, &mut pool)?,
                Some(_) => return Err(usage("--cover only applies to independent-set without --k")),
                None => encode_problem(&g, args.problem, args.k, strategy, &mut pool)?,
            }
        }
        (None, Some(n)) => {
            let variant: IntervalVariant = args.source.variant.into();
            fields.push_str(&format!(" n={n} variant={}", variant.tag()));
            if args.cover.is_some() {
                return Err(usage("--cover needs --graph"));
            }
            let fast = if plain_is {
                encode_interval_points(n, variant, strategy, &mut pool)?
            } else {
                None
            };
            match fast {
                Some(f) => f,
                None => {
                    let g = Graph::interval(n, variant)?;
                    encode_problem(&g, args.problem, args.k, strategy, &mut pool)?
                }
            }
        }
        (None, None) => return Err(usage("one of --graph or --n is required")),
    };
    write(&args.out, &to_dimacs(&formula))?;
    write(&sidecar_path(&args.out, args.map.as_ref()), &pool.to_sidecar())?;
    println!("vars={} clauses={}{fields}", formula.num_vars(), formula.len());
    Ok(())
}

fn cover(args: CoverArgs) -> Outcome {
    let graph = args.graph.as_deref().map(load_graph).transpose()?;
    let cover = match (args.kind, args.method) {
        (CoverKind::Clique, CoverMethod::Greedy) => Cover::Clique(greedy_clique_cover(graph.as_ref().ok_or_else(|| usage("missing --graph"))?)),
        (CoverKind::Biclique, CoverMethod::Greedy) => {
            Cover::Biclique(greedy_biclique_cover(graph.as_ref().ok_or_else(|| usage("missing --graph"))?))
        }
        (CoverKind::Biclique, CoverMethod::Kn) => {
            Cover::Biclique(kn_recursive_biclique_cover(require(args.n, "n")? as usize)?)
        }
        (CoverKind::Clique, CoverMethod::Interval) => Cover::Clique(interval_clique_cover(require(args.n, "n")?)?),
        _ => return Err(usage("kn covers are biclique covers and interval covers are clique covers")),
    };
    if let Some(g) = &graph {
        match &cover {
            Cover::Clique(c) => c.validate(g)?,
            Cover::Biclique(b) => b.validate(g)?,
        }
    }
    write_or_stdout(args.out.as_deref(), &cover.to_text())?;
    let (kind, parts, weight) = match &cover {
        Cover::Clique(c) => ("clique", c.cliques.len(), c.cliques.iter().map(Vec::len).sum::<usize>()),
        Cover::Biclique(b) => ("biclique", b.bicliques.len(), b.weight()),
    };
    if args.out.is_some() {
        println!("kind={kind} parts={parts} weight={weight}");
    }
    Ok(())
}

fn bva(args: BvaArgs) -> Outcome {
    let f = load_cnf(&args.cnf)?;
    let mut pool = match &args.map {
        Some(path) => load_map(path)?,
        None => VarMap::new(),
    };
    for v in pool.max_index() + 1..=f.num_vars() {
        pool.fresh(VarName::new("v", &[v]))?;
    }
    let policy = BvaPolicy {
        max_steps: args.max_steps,
        min_gain: args.min_gain,
    };
    let (g, steps) = bva_reencode(&f, &mut pool, policy)?;
    let log: String = steps
        .iter()
        .enumerate()
        .map(|(i, s)| format!("step {} {s}\n", i + 1))
        .collect();
    match &args.log {
        Some(path) => write(path, &log)?,
        None => eprint!("{log}"),
    }
    write(&args.out, &to_dimacs(&g))?;
    write(&sidecar_path(&args.out, args.out_map.as_ref()), &pool.to_sidecar())?;
    println!(
        "vars={} clauses={} steps={} vars_before={} clauses_before={}",
        g.num_vars(),
        g.len(),
        steps.len(),
        f.num_vars(),
        f.len()
    );
    Ok(())
}

fn report(verdict: &Verdict, map: Option<&VarMap>) -> Outcome {
    match verdict {
        Verdict::Pass { checked } => {
            println!("result=pass checked={checked}");
            Ok(())
        }
        Verdict::Fail { witness, expected_sat } => {
            let shown: Vec<String> = witness
                .iter()
                .map(|(var, value)| {
                    let name = map.and_then(|m| m.name(var)).map_or(var.to_string(), |n| n.to_string());
                    if value { name } else { format!("-{name}") }
                })
                .collect();
            Err(Failure::Verify(format!(
                "result=fail expected_sat={expected_sat} witness={}",
                shown.join(",")
            )))
        }
    }
}

fn schedule_instance(path: &Path) -> std::result::Result<SchedulingInstance, Failure> {
    let inst: SchedulingInstance =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    inst.validate()?;
    Ok(inst)
}

fn verify(cmd: VerifyCommand) -> Outcome {
    match cmd {
        VerifyCommand::Isp {
            graph,
            cnf,
            map,
            mode,
            samples,
            seed,
        } => {
            let mode = match mode {
                Mode::Exhaustive => CheckMode::Exhaustive,
                Mode::Sampled => CheckMode::Sampled {
                    count: samples,
                    seed: require(seed, "seed")?,
                },
            };
            let g = load_graph(&graph)?;
            let f = load_cnf(&cnf)?;
            let pool = load_map(&map)?;
            report(&check_isp_encoding(&g, &f, &pool, mode)?, Some(&pool))
        }
        VerifyCommand::Equisat {
            cnf,
            map,
            cnf2,
            map2,
            kind,
        } => {
            let (f1, m1) = (load_cnf(&cnf)?, load_map(&map)?);
            let (f2, m2) = (load_cnf(&cnf2)?, load_map(&map2)?);
            let mut shared = Vec::new();
            for (var, name) in m1.iter() {
                if kind.as_deref().is_some_and(|k| name.kind() != k) {
                    continue;
                }
                match m2.get(name) {
                    Some(other) if other == var => shared.push(var),
                    Some(_) => return Err(usage(format!("`{name}` has different indices in the two maps"))),
                    None => {}
                }
            }
            if shared.is_empty() {
                return Err(usage("the maps share no variables"));
            }
            report(&check_equisat(&f1, &f2, &shared)?, Some(&m1))
        }
        VerifyCommand::Schedule { instance, params } => {
            let inst = schedule_instance(&instance)?;
            let mut pool = VarMap::new();
            let f = encode_scheduling_with(&inst, params.params(), &mut pool)?;
            let expected = brute_force_schedule(&inst)?.is_feasible();
            let got = match covenc::solve(&f) {
                SatResult::Sat(model) => match decode_schedule(&inst, &pool, &model) {
                    Some(s) if is_valid_schedule(&inst, &s) => true,
                    _ => return Err(Failure::Verify("result=fail model does not decode to a valid schedule".into())),
                },
                SatResult::Unsat => false,
            };
            if got == expected {
                println!("result=pass feasible={expected}");
                Ok(())
            } else {
                Err(Failure::Verify(format!("result=fail encoding_feasible={got} search_feasible={expected}")))
            }
        }
    }
}

fn stats(args: StatsArgs) -> Outcome {
    let names: Vec<String> = if args.strategies.is_empty() {
        Strategy::NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        args.strategies.clone()
    };
    let strategies = names
        .iter()
        .map(|n| parse_strategy(n, &args.params))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let graph = match (&args.source.graph, args.source.n) {
        (Some(path), _) => Some(load_graph(path)?),
        (None, Some(_)) => None,
        (None, None) => return Err(usage("one of --graph or --n is required")),
    };
    let mut lazy: Option<Graph> = None;
    for strategy in strategies {
        let mut pool = VarMap::new();
        let result = match (&graph, args.source.n) {
            (Some(g), _) => encode_independent_set(g, None, strategy, &mut pool).map(Some),
            (None, Some(n)) => {
                let variant: IntervalVariant = args.source.variant.into();
                match encode_interval_points(n, variant, strategy, &mut pool)? {
                    Some(f) => Ok(Some(f)),
                    None => {
                        if lazy.is_none() {
                            lazy = Some(Graph::interval(n, variant)?);
                        }
                        encode_independent_set(lazy.as_ref().unwrap(), None, strategy, &mut pool).map(Some)
                    }
                }
            }
            (None, None) => unreachable!(),
        };
        let params = strategy_fields(strategy);
        match result {
            Ok(Some(f)) => println!("strategy={strategy}{params} vars={} clauses={}", f.num_vars(), f.len()),
            Ok(None) => {}
            Err(Error::NotApplicable { .. }) => println!("strategy={strategy}{params} status=not-applicable"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn schedule(args: ScheduleArgs) -> Outcome {
    let inst = schedule_instance(&args.instance)?;
    let params = args.params.params();
    let mut pool = VarMap::new();
    let f = encode_scheduling_with(&inst, params, &mut pool)?;
    write(&args.out, &to_dimacs(&f))?;
    write(&sidecar_path(&args.out, args.map.as_ref()), &pool.to_sidecar())?;
    println!(
        "vars={} clauses={} N={} M={} T={} recursion_base={} per_time={}",
        f.num_vars(),
        f.len(),
        inst.n,
        inst.m,
        inst.t,
        params.recursion_base,
        params.per_time
    );
    if args.solve {
        match covenc::solve(&f) {
            SatResult::Sat(model) => {
                let s = decode_schedule(&inst, &pool, &model)
                    .ok_or_else(|| Failure::Verify("model does not decode to a schedule".into()))?;
                println!("result=sat");
                for (i, (t, m)) in s.iter().enumerate() {
                    println!("task={} start={t} machine={m}", i + 1);
                }
            }
            SatResult::Unsat => println!("result=unsat"),
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::GenGraph(a) => gen_graph(a),
        Command::Encode(a) => encode(a),
        Command::Cover(a) => cover(a),
        Command::Bva(a) => bva(a),
        Command::Verify(c) => verify(c),
        Command::Stats(a) => stats(a),
        Command::Schedule(a) => schedule(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match f {
                Failure::Verify(_) => println!("{f}"),
                _ => eprintln!("covenc: {f}"),
            }
            ExitCode::from(f.code())
        }
    }
}
