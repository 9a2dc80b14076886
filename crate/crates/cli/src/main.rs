use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cwlin::resolution::betti::betti_table;
use cwlin::resolution::linearity::{is_componentwise_linear_with, CwlOptions};
use cwlin::resolution::quotients::{find_linear_quotient_order, linear_quotients_check, OrderStrategy};
use cwlin::search::{sweep, to_csv, to_jsonl, SweepConfig};
use cwlin::{
    complete_graph, counterexample_graph, cover_ideal, knt_closed_form, polymatroidal_check,
    theorem_order, CoverMethod, Engine, Error, Exchange, FieldChoice, Limits, MonomialIdeal,
    OrderedGenerators, SimpleGraph,
};

mod render;

#[derive(Parser)]
#[command(name = "cwlin", version, about = "Componentwise linearity of cover ideals of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of ∩⟨x_i, x_j⟩^t over the edges of a graph.
    Gens {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Use the closed form for complete graphs.
        #[arg(long)]
        closed_form: bool,
    },
    /// Decide componentwise linearity.
    CheckCwl {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        algebra: Algebra,
        /// Degrees to check past the largest generator degree.
        #[arg(long, default_value_t = 0)]
        extra_degrees: u32,
    },
    /// Graded Betti numbers.
    Betti {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        algebra: Algebra,
        /// Restrict to the degree-d component.
        #[arg(long)]
        component: Option<u32>,
        /// Also print the multigraded Betti numbers.
        #[arg(long)]
        multigraded: bool,
    },
    /// Test or search for an order with linear quotients.
    Quotients {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_enum, default_value_t = Order::Deglex)]
        order: Order,
        /// Restrict to the degree-d component.
        #[arg(long)]
        component: Option<u32>,
    },
    /// The exchange condition on each degree component.
    Polymatroidal {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Check only the degree-d component.
        #[arg(long)]
        component: Option<u32>,
    },
    /// Sweep all labeled graphs in a vertex range.
    Search(SearchArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct SourceChoice {
    /// Graph file: `graph <n>` then one 1-based edge `u v` per line.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// The complete graph on n vertices.
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// The four-vertex chordal graph with edges 12, 13, 23, 24, 34.
    #[arg(long)]
    counterexample: bool,
    /// Ideal file: `vars <n>` then one monomial per line.
    #[arg(long, value_name = "FILE")]
    ideal: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    choice: SourceChoice,
    /// Power on each edge prime; required for graph sources.
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct Algebra {
    /// Coefficient field: `Q` or a prime such as `2` or `GF(32003)`.
    #[arg(long, env = "CWL_FIELD", default_value = "Q")]
    field: FieldChoice,
    #[arg(long, default_value = "auto", value_parser = parse_engine)]
    engine: Engine,
}

#[derive(Args)]
struct SearchArgs {
    /// Graphs on exactly n vertices.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Values of t; repeat the flag or separate with commas.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    t: Vec<u32>,
    #[arg(long)]
    chordal_only: bool,
    #[arg(long)]
    connected_only: bool,
    #[arg(long)]
    complete_only: bool,
    #[arg(long, env = "CWL_FIELD", default_value = "Q")]
    field: FieldChoice,
    #[arg(long, default_value = "auto", value_parser = parse_engine)]
    engine: Engine,
    /// Seconds per row before it is marked skipped.
    #[arg(long, default_value_t = 30.0)]
    budget: f64,
    #[arg(long, value_enum, default_value_t = SearchFormat::Jsonl)]
    format: SearchFormat,
    /// Leave out wall times so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchFormat {
    #[value(alias = "json")]
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Deglex,
    Theorem,
    Backtracking,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit statuses: 0 holds, 1 fails, 2 bad input, 3 capacity or budget.
enum Failure {
    Input(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } | Error::Budget | Error::ExponentCap { .. } => Failure::Capacity(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<bool, Failure>;

struct Loaded {
    label: String,
    ideal: MonomialIdeal,
    graph: Option<SimpleGraph>,
    t: Option<u32>,
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(source: &Source) -> Result<Option<(String, SimpleGraph)>, Failure> {
    let c = &source.choice;
    Ok(if let Some(n) = c.complete {
        Some((format!("complete {n}"), complete_graph(n)?))
    } else if c.counterexample {
        Some(("counterexample".into(), counterexample_graph()))
    } else if let Some(path) = &c.graph {
        Some((format!("graph {}", path.display()), SimpleGraph::parse(&read(path)?)?))
    } else {
        None
    })
}

fn require_t(source: &Source) -> Result<u32, Failure> {
    match source.t {
        Some(0) => Err(Failure::Input("--t must be at least 1".into())),
        Some(t) => Ok(t),
        None => Err(Failure::Input("--t is required with a graph source".into())),
    }
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    if let Some((label, g)) = load_graph(source)? {
        let t = require_t(source)?;
        let ideal = cover_ideal(&g, t, CoverMethod::TCovers)?;
        return Ok(Loaded {
            label,
            ideal,
            graph: Some(g),
            t: Some(t),
        });
    }
    let path = source.choice.ideal.as_ref().expect("clap enforces one source");
    Ok(Loaded {
        label: format!("ideal {}", path.display()),
        ideal: MonomialIdeal::parse(&read(path)?)?,
        graph: None,
        t: None,
    })
}

fn with_component(ideal: MonomialIdeal, component: Option<u32>) -> Result<MonomialIdeal, Failure> {
    Ok(match component {
        Some(d) => ideal.component(d)?,
        None => ideal,
    })
}

fn emit(format: Format, value: Value, table: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("plain data")),
        Format::Table => print!("{table}"),
    }
}

fn cmd_gens(source: &Source, output: &Output, closed_form: bool) -> CmdResult {
    let loaded = if closed_form {
        let Some((label, g)) = load_graph(source)? else {
            return Err(Failure::Input("--closed-form needs a graph source".into()));
        };
        if !g.is_complete() {
            return Err(Failure::Input("--closed-form applies to complete graphs only".into()));
        }
        let t = require_t(source)?;
        Loaded {
            label,
            ideal: knt_closed_form(g.n_vertices(), t)?,
            graph: Some(g),
            t: Some(t),
        }
    } else {
        load(source)?
    };
    let gens: Vec<String> = loaded.ideal.generators().iter().map(ToString::to_string).collect();
    let value = json!({
        "source": loaded.label,
        "nvars": loaded.ideal.nvars(),
        "t": loaded.t,
        "count": gens.len(),
        "generators": gens,
    });
    emit(output.format, value, render::gens(&loaded.label, loaded.t, &loaded.ideal));
    Ok(true)
}

fn cmd_check_cwl(source: &Source, output: &Output, algebra: &Algebra, extra_degrees: u32) -> CmdResult {
    let loaded = load(source)?;
    let options = CwlOptions {
        field: algebra.field,
        engine: algebra.engine,
        extra_degrees,
        limits: Limits::default(),
        certificate: true,
    };
    let report = is_componentwise_linear_with(&loaded.ideal, &options)?;
    emit(output.format, report.to_json(), render::cwl(&loaded.label, &report));
    Ok(report.overall)
}

fn cmd_betti(source: &Source, output: &Output, algebra: &Algebra, component: Option<u32>, multigraded: bool) -> CmdResult {
    let loaded = load(source)?;
    let ideal = with_component(loaded.ideal, component)?;
    let table = betti_table(&ideal, algebra.field, algebra.engine, &Limits::default())?;
    emit(output.format, table.to_json(), render::betti(&table, multigraded));
    Ok(true)
}

fn cmd_quotients(source: &Source, output: &Output, order: Order, component: Option<u32>) -> CmdResult {
    let loaded = load(source)?;
    let ideal = with_component(loaded.ideal, component)?;
    if ideal.is_zero() {
        return Err(Failure::Input("the ideal has no generators to order".into()));
    }
    let limits = Limits::default();
    let ordered: Option<OrderedGenerators> = match order {
        Order::Theorem => {
            let (Some(g), Some(t)) = (&loaded.graph, loaded.t) else {
                return Err(Failure::Input("--order theorem needs a complete graph source".into()));
            };
            if !g.is_complete() || component.is_some() {
                return Err(Failure::Input(
                    "--order theorem applies to the full ideal of a complete graph".into(),
                ));
            }
            Some(theorem_order(g.n_vertices(), t)?)
        }
        Order::Deglex => Some(OrderedGenerators::deglex(&ideal)),
        Order::Backtracking => find_linear_quotient_order(&ideal, OrderStrategy::Backtracking, &limits)?,
    };
    let (value, table, holds) = match &ordered {
        Some(o) => {
            let check = linear_quotients_check(o);
            let holds = check.is_linear();
            (render::quotients_json(o, &check), render::quotients(o, &check), holds)
        }
        None => (
            json!({ "holds": false, "order": Value::Null, "reason": "no degree-nondecreasing order has linear quotients" }),
            "no degree-nondecreasing order has linear quotients\n".to_string(),
            false,
        ),
    };
    emit(output.format, value, table);
    Ok(holds)
}

fn cmd_polymatroidal(source: &Source, output: &Output, component: Option<u32>) -> CmdResult {
    let loaded = load(source)?;
    let ideal = &loaded.ideal;
    let degrees: Vec<u32> = match (component, ideal.min_degree(), ideal.max_degree()) {
        (Some(d), _, _) => vec![d],
        (None, Some(lo), Some(hi)) => (lo..=hi).collect(),
        _ => Vec::new(),
    };
    let mut rows = Vec::new();
    for d in degrees {
        let part = ideal.component(d)?;
        rows.push((d, part.len(), polymatroidal_check(&part)?));
    }
    let holds = rows.iter().all(|(_, _, e)| e.holds());
    let value = json!({
        "source": loaded.label,
        "holds": holds,
        "components": rows.iter().map(|(d, n, e)| json!({
            "degree": d,
            "generators": n,
            "holds": e.holds(),
            "witness": match e {
                Exchange::Holds => Value::Null,
                Exchange::Violated(w) => w.to_json(),
            },
        })).collect::<Vec<_>>(),
    });
    emit(output.format, value, render::polymatroidal(&loaded.label, &rows));
    Ok(holds)
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let (n_min, n_max) = args.n.map_or((args.n_min, args.n_max), |n| (n, n));
    if !(args.budget.is_finite() && args.budget > 0.0) {
        return Err(Failure::Input("--budget must be a positive number of seconds".into()));
    }
    let config = SweepConfig {
        n_min,
        n_max,
        t_set: args.t.iter().copied().collect::<BTreeSet<_>>(),
        chordal_only: args.chordal_only,
        connected_only: args.connected_only,
        complete_only: args.complete_only,
        field: args.field,
        engine: args.engine,
        row_budget: Duration::from_secs_f64(args.budget),
    };
    let (records, summary) = sweep(&config)?;
    let timing = !args.no_timing;
    match args.format {
        SearchFormat::Jsonl => print!("{}", to_jsonl(&records, &summary, timing)),
        SearchFormat::Csv => print!("{}", to_csv(&records, &summary, timing)?),
    }
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    if summary.failures() > 0 {
        return Ok(false);
    }
    if summary.skipped() > 0 {
        return Err(Failure::Capacity(format!("{} rows skipped", summary.skipped())));
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gens { source, output, closed_form } => cmd_gens(source, output, *closed_form),
        Command::CheckCwl { source, output, algebra, extra_degrees } => {
            cmd_check_cwl(source, output, algebra, *extra_degrees)
        }
        Command::Betti { source, output, algebra, component, multigraded } => {
            cmd_betti(source, output, algebra, *component, *multigraded)
        }
        Command::Quotients { source, output, order, component } => cmd_quotients(source, output, *order, *component),
        Command::Polymatroidal { source, output, component } => cmd_polymatroidal(source, output, *component),
        Command::Search(args) => cmd_search(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
