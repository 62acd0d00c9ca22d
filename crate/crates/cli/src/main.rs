//! `weylorder`: normal ordering in the (q-deformed) Weyl algebra and the
//! combinatorics of generalized Stirling sequences, on the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error (budgets and
//! bounds), 3 verification failure.

mod render;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{Map, Value};

use render::{print_scalar, print_table, OutFormat};
use weylorder_core::graph::{
    enumerate_partitions_bounded, graph_stirling_vector, LabeledGraph,
};
use weylorder_core::qweight::q_graph_stirling_bounded;
use weylorder_core::rewrite::normal_order_q_with;
use weylorder_core::rewrite::normal_order_with;
use weylorder_core::word::parse_word_with_limit;
use weylorder_core::*;

#[derive(Parser)]
#[command(
    name = "weylorder",
    version,
    about = "Exact normal ordering of words in the (q-deformed) Weyl algebra, \
             with five cross-verifying routes to their Stirling sequences"
)]
struct Cli {
    /// Output format (tables and values)
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,

    /// Seed for pseudo-random block orders
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximum expanded word length accepted by the parser
    #[arg(long, global = true, default_value_t = 10_000)]
    max_word_length: usize,

    /// Vertex bound for partition enumeration
    /// [default: WEYLORDER_MAX_ENUM or 14]
    #[arg(long, global = true)]
    max_enum_vertices: Option<usize>,

    /// Budget of rewrite rule applications
    #[arg(long, global = true, default_value_t = 10_000_000)]
    step_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-order a word and print its coefficient table
    NormalOrder {
        /// Use the q-deformed relation Dx = qxD + 1
        #[arg(long)]
        q: bool,
        /// Word, e.g. "xxDxxDxDDD" or "(x^2D^2)^3"
        word: String,
    },
    /// Build one of the graphs attached to a word or to (n, r)
    Graph {
        /// Which graph: the quasi-threshold or indifference graph of a Dyck
        /// word, or their (n, r) versions
        #[arg(long, value_enum)]
        which: WhichGraph,
        /// Dyck word (for g and h)
        word: Option<String>,
        /// n (for gnr and hnr)
        #[arg(short)]
        n: Option<usize>,
        /// r (for gnr and hnr)
        #[arg(short)]
        r: Option<usize>,
        /// Graph output format
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Compute Stirling coefficients of a word by a chosen method
    Stirling {
        /// q-analog (methods: rewrite, graph-g)
        #[arg(long)]
        q: bool,
        #[arg(long, value_enum)]
        method: StirlingMethod,
        /// Word (all methods except summation)
        word: Option<String>,
        /// Coefficient index; omit for the whole table
        #[arg(short)]
        k: Option<usize>,
        /// n (method summation: the word is (x^s D^s)^n)
        #[arg(short)]
        n: Option<usize>,
        /// s (method summation)
        #[arg(short)]
        s: Option<usize>,
        /// Block order for the q partition weights
        #[arg(long, value_enum, default_value = "lex")]
        order: OrderKind,
    },
    /// Enumerate r-ary forests by component count
    Forests {
        /// Print only the count
        #[arg(long)]
        count: bool,
        /// List every forest
        #[arg(long)]
        list: bool,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "increasing")]
        direction: DirectionArg,
    },
    /// Map forests through the partition bijections
    Bijection {
        /// Which partition family: of G(n,r) or of H(n,r)
        #[arg(long, value_enum)]
        which: WhichBijection,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        /// Component count; omit for all
        #[arg(short)]
        k: Option<usize>,
        /// Verify both round trips and report instead of listing
        #[arg(long)]
        check_roundtrip: bool,
    },
    /// Carlitz q-Stirling numbers of the second kind, one row
    Qtable {
        #[arg(short)]
        n: usize,
    },
    /// Bell number of a word (sum of its Stirling coefficients)
    Bell { word: String },
    /// Coefficients f(n, s, l) of the summation formula
    Fcoeff {
        #[arg(long, value_enum)]
        method: FMethod,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        s: usize,
        /// Coefficient index; omit for the whole row
        #[arg(short)]
        l: Option<usize>,
    },
    /// Cross-verify the five computation routes
    Verify {
        /// Sweep every Dyck word up to --max-len
        #[arg(long)]
        all_dyck: bool,
        /// Length cap for --all-dyck
        #[arg(long)]
        max_len: Option<usize>,
        /// Verify a single word (Dyck or not)
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichGraph {
    G,
    H,
    Gnr,
    Hnr,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StirlingMethod {
    Rewrite,
    GraphG,
    GraphH,
    Rook,
    Closed,
    Summation,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderKind {
    Lex,
    Seeded,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichBijection {
    G,
    H,
}

struct Config {
    format: OutFormat,
    seed: u64,
    max_word_length: usize,
    max_enum_vertices: usize,
    step_budget: u64,
}

enum CliError {
    Usage(String),
    Compute(String),
    VerifyFailed(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
            CliError::VerifyFailed(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) | CliError::VerifyFailed(m) => m,
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::TooLong { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<RewriteError> for CliError {
    fn from(e: RewriteError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BoundExceeded { .. } | GraphError::InexactDivision { .. } => {
                CliError::Compute(e.to_string())
            }
            GraphError::InvalidPartition(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ForestError> for CliError {
    fn from(e: ForestError) -> Self {
        match e {
            ForestError::BoundExceeded { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<QWeightError> for CliError {
    fn from(e: QWeightError) -> Self {
        match e {
            QWeightError::Graph(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let env_bound = std::env::var("WEYLORDER_MAX_ENUM")
        .ok()
        .and_then(|v| v.parse().ok());
    let cfg = Config {
        format: cli.format,
        seed: cli.seed,
        max_word_length: cli.max_word_length,
        max_enum_vertices: cli
            .max_enum_vertices
            .or(env_bound)
            .unwrap_or(graph::DEFAULT_ENUM_BOUND),
        step_budget: cli.step_budget,
    };
    match dispatch(cli.command, &cfg) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

fn dispatch(command: Command, cfg: &Config) -> Result<(), CliError> {
    match command {
        Command::NormalOrder { q, word } => normal_order_cmd(cfg, q, &word),
        Command::Graph {
            which,
            word,
            n,
            r,
            format,
        } => graph_cmd(cfg, which, word.as_deref(), n, r, format),
        Command::Stirling {
            q,
            method,
            word,
            k,
            n,
            s,
            order,
        } => stirling_cmd(cfg, q, method, word.as_deref(), k, n, s, order),
        Command::Forests {
            count,
            list,
            r,
            n,
            k,
            direction,
        } => forests_cmd(cfg, count, list, r, n, k, direction),
        Command::Bijection {
            which,
            r,
            n,
            k,
            check_roundtrip,
        } => bijection_cmd(cfg, which, r, n, k, check_roundtrip),
        Command::Qtable { n } => qtable_cmd(cfg, n),
        Command::Bell { word } => {
            let w = parse_word_with_limit(&word, cfg.max_word_length)?;
            let nf = normal_order_with(&w, cfg.step_budget, ReductionOrder::Deterministic)?;
            print_scalar(cfg.format, "bell", &nf.coeff_sum().to_string());
            Ok(())
        }
        Command::Fcoeff { method, n, s, l } => fcoeff_cmd(cfg, method, n, s, l),
        Command::Verify {
            all_dyck,
            max_len,
            word,
        } => verify_cmd(cfg, all_dyck, max_len, word.as_deref()),
    }
}

fn parse_arg_word(cfg: &Config, text: &str) -> Result<Word, CliError> {
    Ok(parse_word_with_limit(text, cfg.max_word_length)?)
}

fn require_dyck(w: Word) -> Result<DyckWord, CliError> {
    let rendered = w.to_string();
    DyckWord::new(w).map_err(|_| {
        CliError::Usage(format!(
            "word {rendered} is not a Dyck word; its associated Dyck word can be \
             computed by padding with x's and D's"
        ))
    })
}

fn normal_order_cmd(cfg: &Config, q: bool, word: &str) -> Result<(), CliError> {
    let w = parse_arg_word(cfg, word)?;
    let (offset, pairs, json) = if q {
        let nf = normal_order_q_with(&w, cfg.step_budget, ReductionOrder::Deterministic)?;
        let pairs: Vec<(usize, String)> = nf
            .coeffs
            .iter()
            .map(|(k, p)| (*k, p.to_string()))
            .collect();
        (nf.offset, pairs, nf.to_json())
    } else {
        let nf = normal_order_with(&w, cfg.step_budget, ReductionOrder::Deterministic)?;
        let pairs: Vec<(usize, String)> = nf
            .coeffs
            .iter()
            .map(|(k, c)| (*k, c.to_string()))
            .collect();
        (nf.offset, pairs, nf.to_json())
    };
    match cfg.format {
        OutFormat::Text => {
            println!("offset: {offset}");
            let rows: Vec<Vec<String>> = pairs
                .iter()
                .map(|(k, c)| vec![k.to_string(), c.clone()])
                .collect();
            print_table(cfg.format, &["k", "coefficient"], &rows, Value::Null);
        }
        OutFormat::Csv => {
            let rows: Vec<Vec<String>> = pairs
                .iter()
                .map(|(k, c)| vec![offset.to_string(), k.to_string(), c.clone()])
                .collect();
            print_table(cfg.format, &["offset", "k", "coefficient"], &rows, Value::Null);
        }
        OutFormat::Json => println!("{json}"),
    }
    Ok(())
}

fn graph_cmd(
    cfg: &Config,
    which: WhichGraph,
    word: Option<&str>,
    n: Option<usize>,
    r: Option<usize>,
    format: GraphFormat,
) -> Result<(), CliError> {
    let g = match which {
        WhichGraph::G | WhichGraph::H => {
            let text = word.ok_or_else(|| {
                CliError::Usage("graph --which g|h needs a Dyck word argument".into())
            })?;
            let dyck = require_dyck(parse_arg_word(cfg, text)?)?;
            match which {
                WhichGraph::G => build_g(&dyck),
                _ => build_h(&dyck),
            }
        }
        WhichGraph::Gnr | WhichGraph::Hnr => {
            let (n, r) = match (n, r) {
                (Some(n), Some(r)) if n >= 1 && r >= 1 => (n, r),
                _ => {
                    return Err(CliError::Usage(
                        "graph --which gnr|hnr needs -n and -r, both at least 1".into(),
                    ))
                }
            };
            match which {
                WhichGraph::Gnr => build_g_nr(n, r),
                _ => build_h_nr(n, r),
            }
        }
    };
    match format {
        GraphFormat::Dot => print!("{}", g.to_dot()),
        GraphFormat::Json => println!("{}", g.to_json()),
    }
    Ok(())
}

// Stirling coefficients of an arbitrary word through the partition/rook
// routes, using the shift identity S_w(k) = S_assoc(k + b).
fn stirling_by_graph(
    cfg: &Config,
    word: &Word,
    use_h: bool,
) -> Result<(usize, Vec<BigInt>), CliError> {
    let assoc = associated_dyck(word);
    let g = if use_h {
        build_h(&assoc.dyck)
    } else {
        build_g(&assoc.dyck)
    };
    Ok((assoc.b, graph_stirling_vector(&g, cfg.max_enum_vertices)?))
}

#[allow(clippy::too_many_arguments)]
fn stirling_cmd(
    cfg: &Config,
    q: bool,
    method: StirlingMethod,
    word: Option<&str>,
    k: Option<usize>,
    n: Option<usize>,
    s: Option<usize>,
    order: OrderKind,
) -> Result<(), CliError> {
    if q {
        return stirling_q_cmd(cfg, method, word, k, order);
    }
    if matches!(method, StirlingMethod::Summation) {
        let (n, s) = match (n, s) {
            (Some(n), Some(s)) if n >= 1 && s >= 1 => (n, s),
            _ => {
                return Err(CliError::Usage(
                    "stirling --method summation needs -n and -s, both at least 1".into(),
                ))
            }
        };
        let values = |k: usize| summation_sw(n, s, k);
        return print_stirling_values(cfg, k, 0..=s * n, values);
    }

    let text = word.ok_or_else(|| CliError::Usage("stirling needs a word argument".into()))?;
    let w = parse_arg_word(cfg, text)?;
    let d_count = w.d_count();
    match method {
        StirlingMethod::Rewrite => {
            let nf = normal_order_with(&w, cfg.step_budget, ReductionOrder::Deterministic)?;
            print_stirling_values(cfg, k, 0..=d_count, |k| nf.coeff(k))
        }
        StirlingMethod::GraphG | StirlingMethod::GraphH => {
            let (b, vector) = stirling_by_graph(cfg, &w, matches!(method, StirlingMethod::GraphH))?;
            print_stirling_values(cfg, k, 0..=d_count, |k| {
                vector.get(k + b).cloned().unwrap_or_else(BigInt::zero)
            })
        }
        StirlingMethod::Rook => {
            // S_w(k) = r_{n-k}(B_w) with n the number of D's
            let board = board_of(&w);
            print_stirling_values(cfg, k, 0..=d_count, |k| {
                if k > d_count {
                    BigInt::zero()
                } else {
                    rook_count(&board, d_count - k)
                }
            })
        }
        StirlingMethod::Closed => print_stirling_values(cfg, k, 0..=d_count, |k| {
            closed_form_sw(&w, k)
        }),
        StirlingMethod::Summation => unreachable!("handled above"),
    }
}

fn print_stirling_values(
    cfg: &Config,
    k: Option<usize>,
    full_range: std::ops::RangeInclusive<usize>,
    value: impl Fn(usize) -> BigInt,
) -> Result<(), CliError> {
    match k {
        Some(k) => {
            let v = value(k);
            match cfg.format {
                OutFormat::Json => {
                    let mut obj = Map::new();
                    obj.insert("k".into(), Value::from(k));
                    obj.insert("value".into(), Value::String(v.to_string()));
                    println!("{}", Value::Object(obj));
                }
                _ => print_scalar(cfg.format, "value", &v.to_string()),
            }
        }
        None => {
            let mut rows = Vec::new();
            let mut coeffs = Map::new();
            for k in full_range {
                let v = value(k);
                if v.is_zero() {
                    continue;
                }
                rows.push(vec![k.to_string(), v.to_string()]);
                coeffs.insert(k.to_string(), Value::String(v.to_string()));
            }
            let mut obj = Map::new();
            obj.insert("coeffs".into(), Value::Object(coeffs));
            print_table(cfg.format, &["k", "value"], &rows, Value::Object(obj));
        }
    }
    Ok(())
}

fn stirling_q_cmd(
    cfg: &Config,
    method: StirlingMethod,
    word: Option<&str>,
    k: Option<usize>,
    order: OrderKind,
) -> Result<(), CliError> {
    let text = word.ok_or_else(|| CliError::Usage("stirling needs a word argument".into()))?;
    let w = parse_arg_word(cfg, text)?;
    let values: Vec<(usize, QPolynomial)> = match method {
        StirlingMethod::Rewrite => {
            let nf = normal_order_q_with(&w, cfg.step_budget, ReductionOrder::Deterministic)?;
            nf.coeffs.into_iter().collect()
        }
        StirlingMethod::GraphG => {
            // the partition-weight interpretation is established for Dyck
            // words only; refuse anything else instead of guessing a shift
            let dyck = DyckWord::new(w).map_err(|e| CliError::Usage(format!(
                "q-weight computation needs a Dyck word: {e}"
            )))?;
            let order: Box<dyn BlockOrder> = match order {
                OrderKind::Lex => Box::new(LexOrder),
                OrderKind::Seeded => Box::new(SeededOrder::new(cfg.seed)),
            };
            let mut out = Vec::new();
            for k in 0..=dyck.half_length() {
                let p = q_graph_stirling_bounded(&dyck, k, order.as_ref(), cfg.max_enum_vertices)?;
                if !p.is_zero() {
                    out.push((k, p));
                }
            }
            out
        }
        _ => {
            return Err(CliError::Usage(
                "--q supports methods rewrite and graph-g only".into(),
            ))
        }
    };
    match k {
        Some(k) => {
            let p = values
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(QPolynomial::zero);
            match cfg.format {
                OutFormat::Json => {
                    let mut obj = Map::new();
                    obj.insert("k".into(), Value::from(k));
                    obj.insert("value".into(), p.to_json());
                    println!("{}", Value::Object(obj));
                }
                _ => print_scalar(cfg.format, "value", &p.to_string()),
            }
        }
        None => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|(k, p)| vec![k.to_string(), p.to_string()])
                .collect();
            let mut coeffs = Map::new();
            for (k, p) in &values {
                coeffs.insert(k.to_string(), p.to_json());
            }
            let mut obj = Map::new();
            obj.insert("coeffs".into(), Value::Object(coeffs));
            print_table(cfg.format, &["k", "value"], &rows, Value::Object(obj));
        }
    }
    Ok(())
}

fn forest_text(f: &RaryForest) -> String {
    (1..=f.vertex_count())
        .map(|label| match f.parent_of(label) {
            Some((parent, slot)) => format!("{label}->{parent}@{slot}"),
            None => format!("{label}=root"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn forests_cmd(
    cfg: &Config,
    count: bool,
    list: bool,
    r: usize,
    n: usize,
    k: usize,
    direction: DirectionArg,
) -> Result<(), CliError> {
    if count == list {
        return Err(CliError::Usage(
            "forests needs exactly one of --count or --list".into(),
        ));
    }
    if r < 1 {
        return Err(CliError::Usage("forests needs -r at least 1".into()));
    }
    let direction = match direction {
        DirectionArg::Increasing => Direction::Increasing,
        DirectionArg::Decreasing => Direction::Decreasing,
    };
    let forests = enumerate_forests(r, n, k, direction)?;
    if count {
        print_scalar(cfg.format, "count", &forests.len().to_string());
        return Ok(());
    }
    match cfg.format {
        OutFormat::Text => {
            for f in &forests {
                println!("{}", forest_text(f));
            }
        }
        OutFormat::Csv => {
            println!("forest,label,parent,slot");
            for (i, f) in forests.iter().enumerate() {
                for label in 1..=f.vertex_count() {
                    match f.parent_of(label) {
                        Some((parent, slot)) => println!("{i},{label},{parent},{slot}"),
                        None => println!("{i},{label},,"),
                    }
                }
            }
        }
        OutFormat::Json => {
            let arr: Vec<Value> = forests.iter().map(RaryForest::to_json).collect();
            println!("{}", Value::Array(arr));
        }
    }
    Ok(())
}

fn bijection_cmd(
    cfg: &Config,
    which: WhichBijection,
    r: usize,
    n: usize,
    k: Option<usize>,
    check_roundtrip: bool,
) -> Result<(), CliError> {
    if r < 1 {
        return Err(CliError::Usage("bijection needs -r at least 1".into()));
    }
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None if n == 0 => vec![0],
        None => (1..=n).collect(),
    };
    let to_partition = |f: &RaryForest| match which {
        WhichBijection::G => forest_to_partition_g(f),
        WhichBijection::H => forest_to_partition_h(f),
    };
    let to_forest = |p: &SetPartition| match which {
        WhichBijection::G => partition_to_forest_g(p, n, r),
        WhichBijection::H => partition_to_forest_h(p, n, r),
    };

    let mut listed = Vec::new();
    let mut forests_checked = 0usize;
    let mut partitions_checked = 0usize;
    for &k in &ks {
        let forests = enumerate_forests(r, n, k, Direction::Decreasing)?;
        for f in &forests {
            let p = to_partition(f)?;
            if check_roundtrip {
                let back = to_forest(&p)?;
                if back != *f {
                    return Err(CliError::VerifyFailed(format!(
                        "round trip failed at forest {} (k = {k})",
                        forest_text(f)
                    )));
                }
                forests_checked += 1;
            } else {
                listed.push((k, f.clone(), p));
            }
        }
        if check_roundtrip {
            let g = match which {
                WhichBijection::G => build_g_nr(n.max(1), r),
                WhichBijection::H => build_h_nr(n.max(1), r),
            };
            let g = if n == 0 { LabeledGraph::empty(0) } else { g };
            let parts =
                enumerate_partitions_bounded(&g, k + (r - 1) * n, cfg.max_enum_vertices)?;
            if parts.len() != forests.len() {
                return Err(CliError::VerifyFailed(format!(
                    "count mismatch at k = {k}: {} forests vs {} partitions",
                    forests.len(),
                    parts.len()
                )));
            }
            for p in &parts {
                let f = to_forest(p)?;
                if to_partition(&f)? != *p {
                    return Err(CliError::VerifyFailed(format!(
                        "reverse round trip failed at partition {p} (k = {k})"
                    )));
                }
                partitions_checked += 1;
            }
        }
    }

    if check_roundtrip {
        match cfg.format {
            OutFormat::Json => {
                let mut obj = Map::new();
                obj.insert("status".into(), Value::String("ok".into()));
                obj.insert("forests".into(), Value::from(forests_checked));
                obj.insert("partitions".into(), Value::from(partitions_checked));
                println!("{}", Value::Object(obj));
            }
            _ => println!(
                "roundtrip OK: {forests_checked} forests and {partitions_checked} partitions"
            ),
        }
        return Ok(());
    }

    match cfg.format {
        OutFormat::Text => {
            for (k, f, p) in &listed {
                println!("k={k}  {}  =>  {p}", forest_text(f));
            }
        }
        OutFormat::Csv => {
            println!("k,forest,partition");
            for (k, f, p) in &listed {
                println!("{k},{},{}", forest_text(f), p);
            }
        }
        OutFormat::Json => {
            let arr: Vec<Value> = listed
                .iter()
                .map(|(k, f, p)| {
                    let mut obj = Map::new();
                    obj.insert("k".into(), Value::from(*k));
                    obj.insert("forest".into(), f.to_json());
                    obj.insert("partition".into(), p.to_json());
                    Value::Object(obj)
                })
                .collect();
            println!("{}", Value::Array(arr));
        }
    }
    Ok(())
}

fn qtable_cmd(cfg: &Config, n: usize) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = (0..=n)
        .map(|k| vec![k.to_string(), q_stirling_carlitz(n, k).to_string()])
        .collect();
    let mut table = Map::new();
    for k in 0..=n {
        table.insert(k.to_string(), q_stirling_carlitz(n, k).to_json());
    }
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(n));
    obj.insert("rows".into(), Value::Object(table));
    print_table(cfg.format, &["k", "value"], &rows, Value::Object(obj));
    Ok(())
}

fn fcoeff_cmd(
    cfg: &Config,
    method: FMethod,
    n: usize,
    s: usize,
    l: Option<usize>,
) -> Result<(), CliError> {
    if n < 1 || s < 1 {
        return Err(CliError::Usage("fcoeff needs -n and -s at least 1".into()));
    }
    let value = |l: usize| match method {
        FMethod::Nested => f_nested(n, s, l),
        FMethod::Genfunc => f_genfunc(n, s, l),
        FMethod::Stirling1 => f_stirling1(n, s, l),
    };
    match l {
        Some(l) => {
            print_scalar(cfg.format, "value", &value(l).to_string());
            Ok(())
        }
        None => {
            let top = (s - 1) * (n - 1);
            let mut rows = Vec::new();
            let mut values = Map::new();
            for l in 0..=top {
                let v = value(l);
                rows.push(vec![l.to_string(), v.to_string()]);
                values.insert(l.to_string(), Value::String(v.to_string()));
            }
            let mut obj = Map::new();
            obj.insert("values".into(), Value::Object(values));
            print_table(cfg.format, &["l", "value"], &rows, Value::Object(obj));
            Ok(())
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FMethod {
    Nested,
    Genfunc,
    Stirling1,
}

// The five-way agreement check for one word; Err(VerifyFailed) carries the
// offending word, k and method.
fn five_way_check(cfg: &Config, w: &Word) -> Result<(), CliError> {
    let assoc = associated_dyck(w);
    let b = assoc.b;
    let half = assoc.dyck.half_length();
    let nf = normal_order_with(w, cfg.step_budget, ReductionOrder::Deterministic)?;
    let g_vec = graph_stirling_vector(&build_g(&assoc.dyck), cfg.max_enum_vertices)?;
    let h_vec = graph_stirling_vector(&build_h(&assoc.dyck), cfg.max_enum_vertices)?;
    let at = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
    for k in 0..=half + 1 {
        let expected = nf.coeff(k);
        let methods: [(&str, BigInt); 4] = [
            ("graph-g", at(&g_vec, k + b)),
            ("graph-h", at(&h_vec, k + b)),
            ("rook", stirling_via_rooks(&assoc.dyck, k + b)),
            ("closed", closed_form_sw(w, k)),
        ];
        for (name, got) in methods {
            if got != expected {
                return Err(CliError::VerifyFailed(format!(
                    "word {w} k {k} method {name}: rewrite gives {expected}, {name} gives {got}"
                )));
            }
        }
    }
    Ok(())
}

fn verify_cmd(
    cfg: &Config,
    all_dyck: bool,
    max_len: Option<usize>,
    word: Option<&str>,
) -> Result<(), CliError> {
    match (all_dyck, word) {
        (true, None) => {
            let max_len = max_len.ok_or_else(|| {
                CliError::Usage("verify --all-dyck needs --max-len".into())
            })?;
            for half in 0..=max_len / 2 {
                for w in dyck_words(half) {
                    five_way_check(cfg, w.word())?;
                }
            }
        }
        (false, Some(text)) => {
            let w = parse_arg_word(cfg, text)?;
            five_way_check(cfg, &w)?;
        }
        _ => {
            return Err(CliError::Usage(
                "verify needs exactly one of --all-dyck or --word".into(),
            ))
        }
    }
    println!("OK");
    Ok(())
}
