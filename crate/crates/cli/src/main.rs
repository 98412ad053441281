//! `gspec`: associative spectra of graph algebras from the command line.

use std::fmt;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graph_spectra::algebra::{homomorphisms, satisfies_identity, DEFAULT_MAX_HOMS};
use graph_spectra::classify::{classify_undirected, is_antiassociative, is_associative, witness_identity};
use graph_spectra::digraph::{parse_digraph, Digraph};
use graph_spectra::formulas::{
    bounded_height_by_recurrence, bounded_height_count, modular_catalan, ClosedFormSpectrum, ThreeVertexCase,
    TwoVertexCase,
};
use graph_spectra::spectrum::{
    fine_spectrum, spectrum, term_table_spectrum, Budget, SpectrumResult, DEFAULT_MAX_ORACLE,
};
use graph_spectra::trees::{
    bracketing_to_dfs, depth_sequence, dfs_to_bracketing, dfs_to_dyck, enumerate_dfs_trees, parse_bracketing,
    ZagSequence, DEFAULT_MAX_TREES,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "gspec", version, about = "Associative spectra of graph algebras")]
struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,

    /// Cap on the number of trees enumerated for one size.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TREES)]
    max_trees: u64,

    /// Cap on the size of one homomorphism set.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_HOMS)]
    max_homs: u64,

    /// Cap on term evaluations for the value-table method.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORACLE)]
    max_evals: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum s_1..s_N of a graph.
    Spectrum {
        /// Edge-list file, or `-` for standard input.
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Hom)]
        method: MethodArg,
    },
    /// Classes of bracketings of size N inducing the same term operation.
    Fine {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        n: usize,
    },
    /// Whether the graph algebra satisfies t = u.
    Identity {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        t: String,
        #[arg(short, long)]
        u: String,
    },
    /// Associativity, antiassociativity and (for undirected graphs) the spectrum class.
    Classify {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// A nontrivial bracketing identity satisfied by the graph algebra.
    Witness {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// All bracketings of size N, one per line.
    Enumerate {
        #[arg(short, long)]
        n: usize,
        #[arg(long = "as", value_enum, default_value_t = Encoding::Zag)]
        encoding: Encoding,
    },
    /// Reproduce the bounded-height table or the two-vertex table.
    Table {
        #[arg(long, value_enum)]
        which: Which,
        /// Largest size listed.
        #[arg(short, long)]
        n: Option<usize>,
    },
    /// Evaluate a closed-form spectrum or counting sequence for n = 1..N.
    ///
    /// Families: path:L, path-loop:L, cycle:M, two-vertex:EDGES (e.g. uu,uv),
    /// three-vertex:out-star|loop-path, height:H (trees of height at most H),
    /// modular:M (modular Catalan numbers C_{M,n-1}).
    Formulas {
        #[arg(short, long)]
        family: String,
        #[arg(short, long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Hom,
    Table,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Encoding {
    Zag,
    Dyck,
    Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    T1,
    T2,
}

#[derive(Debug)]
enum CliError {
    Core(graph_spectra::Error),
    Io(PathBuf, io::Error),
    Usage(String),
    Disagreement(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_parse() => 3,
            CliError::Core(e) if e.is_budget() => 4,
            CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io(..) | CliError::Disagreement(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Disagreement(msg) => write!(f, "methods disagree: {msg}"),
        }
    }
}

impl From<graph_spectra::Error> for CliError {
    fn from(e: graph_spectra::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_graph(path: &Path) -> CliResult<Digraph> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io(path.into(), e))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?;
    }
    let g = parse_digraph(&text)?;
    log::info!("read {} vertices and {} edges from {}", g.vertex_count(), g.edge_count(), path.display());
    Ok(g)
}

/// Big counts become JSON numbers when they fit in 64 bits, strings otherwise.
fn big_value(v: &impl ToString) -> Value {
    let s = v.to_string();
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

struct Ctx {
    csv: bool,
    budget: Budget,
}

fn run_spectrum(ctx: &Ctx, out: &mut impl Write, graph: &Path, n: usize, method: MethodArg) -> CliResult<()> {
    let g = read_graph(graph)?;
    let result: SpectrumResult = match method {
        MethodArg::Hom => spectrum(&g, n, ctx.budget)?,
        MethodArg::Table => term_table_spectrum(&g, n, ctx.budget)?,
        MethodArg::Auto => {
            let by_homs = spectrum(&g, n, ctx.budget)?;
            match term_table_spectrum(&g, n, ctx.budget) {
                Ok(by_tables) if by_tables.counts() != by_homs.counts() => {
                    return Err(CliError::Disagreement(format!(
                        "hom-signature {:?}, term-table {:?}",
                        by_homs.counts(),
                        by_tables.counts()
                    )));
                }
                Ok(_) => log::info!("term-table method confirms the spectrum"),
                Err(e) if e.is_budget() => log::info!("term-table cross-check skipped: {e}"),
                Err(e) => return Err(e.into()),
            }
            by_homs
        }
    };
    if ctx.csv {
        write!(out, "{}", result.to_csv()).map_err(io_err)?;
    } else {
        emit_json(out, &result).map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(PathBuf::from("<stdout>"), e)
}

#[derive(Serialize)]
struct FineClassOut {
    representative: ZagSequence,
    size: usize,
    hom_count: u64,
    members: Vec<ZagSequence>,
}

fn run_fine(ctx: &Ctx, out: &mut impl Write, graph: &Path, n: usize) -> CliResult<()> {
    let g = read_graph(graph)?;
    let classes = fine_spectrum(&g, n, ctx.budget)?;
    let classes: Vec<FineClassOut> = classes
        .iter()
        .map(|c| FineClassOut {
            representative: depth_sequence(c.representative()),
            size: c.members.len(),
            hom_count: c.hom_count,
            members: c.members.iter().map(depth_sequence).collect(),
        })
        .collect();
    if ctx.csv {
        writeln!(out, "class,zag,hom_count").map_err(io_err)?;
        for (i, c) in classes.iter().enumerate() {
            for m in &c.members {
                writeln!(out, "{},\"{m}\",{}", i + 1, c.hom_count).map_err(io_err)?;
            }
        }
    } else {
        emit_json(out, &json!({ "n": n, "s_n": classes.len(), "classes": classes })).map_err(io_err)?;
    }
    Ok(())
}

fn run_identity(ctx: &Ctx, out: &mut impl Write, graph: &Path, t: &str, u: &str) -> CliResult<()> {
    let g = read_graph(graph)?;
    let (t, u) = (parse_bracketing(t)?, parse_bracketing(u)?);
    let holds = satisfies_identity(&g, &t, &u, ctx.budget.max_homs)?;
    let left = homomorphisms(&bracketing_to_dfs(&t), &g, ctx.budget.max_homs)?.len();
    let right = homomorphisms(&bracketing_to_dfs(&u), &g, ctx.budget.max_homs)?.len();
    let verdict = if holds { "SATISFIED" } else { "NOT SATISFIED" };
    if ctx.csv {
        writeln!(out, "verdict,left,right,left_homs,right_homs\n{verdict},{t},{u},{left},{right}").map_err(io_err)?;
    } else {
        let value = json!({
            "verdict": verdict,
            "satisfied": holds,
            "left": { "term": t.to_string(), "homs": left },
            "right": { "term": u.to_string(), "homs": right },
        });
        emit_json(out, &value).map_err(io_err)?;
    }
    Ok(())
}

fn run_classify(ctx: &Ctx, out: &mut impl Write, graph: &Path) -> CliResult<()> {
    let g = read_graph(graph)?;
    let associative = is_associative(&g);
    let report = is_antiassociative(&g, ctx.budget.max_homs)?;
    let undirected = if g.is_symmetric() { Some(classify_undirected(&g)?) } else { None };
    if ctx.csv {
        let mut rows = vec![
            ("associative".to_string(), associative.to_string()),
            ("antiassociative".into(), report.antiassociative.to_string()),
            ("components_are_whirls".into(), report.conditions.components_are_whirls.to_string()),
            ("no_path_between_components".into(), report.conditions.no_path_between_components.to_string()),
            ("longest_pleasant_path".into(), report.longest_pleasant_path.to_string()),
            ("whirl_lcm".into(), report.m.to_string()),
        ];
        if let Some(w) = &report.witness {
            rows.push(("witness".into(), format!("{} = {}", w.left, w.right)));
        }
        if let Some(c) = &undirected {
            rows.push(("undirected_class".into(), format!("{:?}", c.kind)));
        }
        writeln!(out, "property,value").map_err(io_err)?;
        for (k, v) in rows {
            writeln!(out, "{k},{v}").map_err(io_err)?;
        }
    } else {
        let value = json!({
            "vertices": g.labels(),
            "associative": associative,
            "antiassociativity": report,
            "undirected": undirected,
        });
        emit_json(out, &value).map_err(io_err)?;
    }
    Ok(())
}

fn run_witness(ctx: &Ctx, out: &mut impl Write, graph: &Path) -> CliResult<()> {
    let g = read_graph(graph)?;
    let (t, u) = witness_identity(&g)?;
    let verified = satisfies_identity(&g, &t, &u, ctx.budget.max_homs)?;
    if !verified {
        return Err(CliError::Disagreement(format!("witness {t} = {u} does not hold")));
    }
    if ctx.csv {
        writeln!(out, "size,left,right\n{},{t},{u}", t.size()).map_err(io_err)?;
    } else {
        let value = json!({ "size": t.size(), "left": t.to_string(), "right": u.to_string(), "verified": verified });
        emit_json(out, &value).map_err(io_err)?;
    }
    Ok(())
}

fn run_enumerate(ctx: &Ctx, out: &mut impl Write, n: usize, encoding: Encoding) -> CliResult<()> {
    for tree in enumerate_dfs_trees(n, ctx.budget.max_trees)? {
        let line = match encoding {
            Encoding::Zag => depth_sequence(&tree).to_string(),
            Encoding::Dyck => dfs_to_dyck(&tree).to_string(),
            Encoding::Term => dfs_to_bracketing(&tree).to_string(),
        };
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

const HEIGHT_ROWS: [(usize, &str, &str); 4] = [
    (2, "T(n+1) = 2T(n)", "2^(n-2)"),
    (3, "T(n+1) = 3T(n) - T(n-1)", "F(2n-3)"),
    (4, "T(n+1) = 4T(n) - 3T(n-1)", "(3^(n-2)+1)/2"),
    (5, "T(n+1) = 5T(n) - 6T(n-1) + T(n-2)", ""),
];

fn run_table(ctx: &Ctx, out: &mut impl Write, which: Which, max_n: Option<usize>) -> CliResult<()> {
    match which {
        Which::T1 => {
            let max_n = max_n.unwrap_or(12);
            let rows: Vec<Value> = HEIGHT_ROWS
                .iter()
                .map(|&(h, recurrence, formula)| {
                    let values: Vec<Value> = (1..=max_n).map(|n| big_value(&bounded_height_count(h, n))).collect();
                    let agrees = (1..=max_n).all(|n| bounded_height_count(h, n) == bounded_height_by_recurrence(h, n));
                    json!({ "h": h, "recurrence": recurrence, "formula": formula, "values": values, "recurrence_agrees": agrees })
                })
                .collect();
            if ctx.csv {
                let header: Vec<String> = (1..=max_n).map(|n| format!("n={n}")).collect();
                writeln!(out, "h,{}", header.join(",")).map_err(io_err)?;
                for &(h, _, _) in &HEIGHT_ROWS {
                    let values: Vec<String> = (1..=max_n).map(|n| bounded_height_count(h, n).to_string()).collect();
                    writeln!(out, "{h},{}", values.join(",")).map_err(io_err)?;
                }
            } else {
                emit_json(out, &rows).map_err(io_err)?;
            }
        }
        Which::T2 => {
            let max_n = max_n.unwrap_or(7);
            let mut rows = Vec::new();
            for case in TwoVertexCase::ALL {
                let family = ClosedFormSpectrum::TwoVertex(case);
                let g = case.graph();
                let formula: Vec<String> =
                    (1..=max_n).map(|n| family.eval(n).map(|v| v.to_string())).collect::<Result<_, _>>()?;
                let brute: Vec<String> = spectrum(&g, max_n, ctx.budget)?.counts().iter().map(u64::to_string).collect();
                rows.push((case, family.formula(), formula, brute));
            }
            if ctx.csv {
                writeln!(out, "edges,formula,values,checked").map_err(io_err)?;
                for (case, formula, values, brute) in &rows {
                    writeln!(out, "\"{}\",{formula},\"{}\",{}", case.edge_set(), values.join(" "), values == brute)
                        .map_err(io_err)?;
                }
            } else {
                let rows: Vec<Value> = rows
                    .into_iter()
                    .map(|(case, formula, values, brute)| {
                        let checked = values == brute;
                        json!({
                            "edges": case.edge_set(),
                            "formula": formula,
                            "values": values.iter().map(big_value).collect::<Vec<_>>(),
                            "checked": checked,
                        })
                    })
                    .collect();
                emit_json(out, &rows).map_err(io_err)?;
            }
        }
    }
    Ok(())
}

enum Sequence {
    Spectrum(ClosedFormSpectrum),
    Height(usize),
    Modular(usize),
}

fn parse_family(spec: &str) -> CliResult<Sequence> {
    let (name, param) = spec.split_once(':').unwrap_or((spec, ""));
    let number = || {
        param
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("family '{name}' needs a numeric parameter, got '{param}'")))
    };
    Ok(match name {
        "path" => Sequence::Spectrum(ClosedFormSpectrum::Path(number()?)),
        "path-loop" => Sequence::Spectrum(ClosedFormSpectrum::PathWithFinalLoop(number()?)),
        "cycle" => Sequence::Spectrum(ClosedFormSpectrum::Cycle(number()?)),
        "height" => Sequence::Height(number()?),
        "modular" => Sequence::Modular(number()?),
        "two-vertex" => {
            let mut edges = Vec::new();
            for e in param.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let index = |c: char| match c {
                    'u' => Ok(0),
                    'v' => Ok(1),
                    _ => Err(CliError::Usage(format!("two-vertex edges use u and v, got '{e}'"))),
                };
                let mut chars = e.chars();
                match (chars.next(), chars.next(), chars.next()) {
                    (Some(a), Some(b), None) => edges.push((index(a)?, index(b)?)),
                    _ => return Err(CliError::Usage(format!("bad edge '{e}'"))),
                }
            }
            let g = Digraph::from_edges(2, edges)?;
            Sequence::Spectrum(ClosedFormSpectrum::TwoVertex(TwoVertexCase::identify(&g)?))
        }
        "three-vertex" => Sequence::Spectrum(ClosedFormSpectrum::ThreeVertex(match param {
            "out-star" => ThreeVertexCase::OutStarSinkLoops,
            "loop-path" => ThreeVertexCase::LoopPathTwoCycle,
            _ => {
                return Err(CliError::Usage(format!("three-vertex case must be out-star or loop-path, got '{param}'")))
            }
        })),
        _ => return Err(CliError::Usage(format!("unknown family '{name}'"))),
    })
}

fn run_formulas(ctx: &Ctx, out: &mut impl Write, family: &str, max_n: usize) -> CliResult<()> {
    let sequence = parse_family(family)?;
    let mut values = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let v = match &sequence {
            Sequence::Spectrum(s) => s.eval(n)?,
            Sequence::Height(h) => bounded_height_count(*h, n),
            Sequence::Modular(m) => modular_catalan(*m, n - 1)?,
        };
        values.push(v.to_string());
    }
    let formula = match &sequence {
        Sequence::Spectrum(s) => s.formula(),
        Sequence::Height(h) => format!("T_{h}(n)"),
        Sequence::Modular(m) => format!("C_{{{m},n-1}}"),
    };
    if ctx.csv {
        writeln!(out, "n,value").map_err(io_err)?;
        for (i, v) in values.iter().enumerate() {
            writeln!(out, "{},{v}", i + 1).map_err(io_err)?;
        }
    } else {
        let entries: Vec<Value> =
            values.iter().enumerate().map(|(i, v)| json!({ "n": i + 1, "value": big_value(v) })).collect();
        emit_json(out, &json!({ "family": family, "formula": formula, "values": entries })).map_err(io_err)?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let ctx = Ctx {
        csv: cli.csv,
        budget: Budget { max_trees: cli.max_trees, max_homs: cli.max_homs, max_oracle: cli.max_evals },
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match &cli.command {
        Command::Spectrum { graph, n, method } => run_spectrum(&ctx, &mut out, graph, *n, *method),
        Command::Fine { graph, n } => run_fine(&ctx, &mut out, graph, *n),
        Command::Identity { graph, t, u } => run_identity(&ctx, &mut out, graph, t, u),
        Command::Classify { graph } => run_classify(&ctx, &mut out, graph),
        Command::Witness { graph } => run_witness(&ctx, &mut out, graph),
        Command::Enumerate { n, encoding } => run_enumerate(&ctx, &mut out, *n, *encoding),
        Command::Table { which, n } => run_table(&ctx, &mut out, *which, *n),
        Command::Formulas { family, n } => run_formulas(&ctx, &mut out, family, *n),
    }?;
    out.flush().map_err(io_err)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gspec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
