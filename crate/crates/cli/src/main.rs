//! `zminor`: orbit census, classification and table verification for
//! stabilizer states seen as points of the binary principal-minor variety.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error (input not on the
//! variety, invalid group), 4 verification failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use zminor_core::minorvariety::{lagrangian_from_point, minor_point};
use zminor_core::tables;
use zminor_core::{
    census_stabilizer_states, enumerate_lagrangians, graph_generators, graph_lagrangian,
    graph_to_point, lagrangian_count, variety_size, Census, Classification, Convention, Error,
    Graph, IndexOrder, MinorPoint, StabilizerGroup, ENUMERATION_BOUND, PARTITION_BOUND,
};

#[derive(Parser)]
#[command(name = "zminor", version, about = "Stabilizer states on the binary principal-minor variety")]
struct Cli {
    /// Worker threads for parallel sections; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit census of Z_n.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write one DOT file per orbit representative into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Orbit, canonical point and witness of a graph, point or group.
    #[command(group(ArgGroup::new("input").required(true).args(["edges", "point", "generators"])))]
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        generators: Option<String>,
        /// Coordinate order of --point.
        #[arg(long, value_enum, default_value_t = Order::GradedLex)]
        order: Order,
    },
    /// Graph → generators → Lagrangian → point.
    Map {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
        convention: ConventionArg,
    },
    /// Recompute the published n = 4 or n = 5 orbit tables.
    Verify {
        #[arg(long)]
        n: usize,
        /// Also print every recomputed point.
        #[arg(long)]
        paper_tables: bool,
    },
    /// List all Lagrangian subspaces as stabilizer groups.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Brute-force count of stabilizer state rays against 4^n|Z_n| and 2^n|Z_n|.
    States {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    GradedLex,
    Bitmask,
}

impl From<Order> for IndexOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::GradedLex => IndexOrder::GradedLex,
            Order::Bitmask => IndexOrder::Bitmask,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Standard,
    MinorTable,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Standard => Convention::Standard,
            ConventionArg::MinorTable => Convention::MinorTable,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::BoundExceeded { .. } | Error::IndexOutOfRange { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(report)) => {
            print!("{report}");
            ExitCode::from(4)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Orbits { n, format, dot } => orbits(n, format, dot),
        Command::Classify {
            n,
            edges,
            point,
            generators,
            order,
        } => classify(n, edges, point, generators, order),
        Command::Map { n, edges, convention } => map(n, &edges, convention.into()),
        Command::Verify { n, paper_tables } => verify(n, paper_tables),
        Command::Enumerate { n, count } => enumerate(n, count),
        Command::States { n } => states(n),
    }
}

fn census(n: usize) -> Result<Census, Failure> {
    if n == 0 || n > PARTITION_BOUND {
        return Err(Failure::Usage(format!("n must be in 1..={PARTITION_BOUND}, got {n}")));
    }
    Ok(Census::compute(n)?)
}

fn orbits(n: usize, format: Format, dot: Option<PathBuf>) -> Outcome {
    let census = census(n)?;
    if let Some(dir) = dot {
        fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        for r in census.reports() {
            let path = dir.join(format!("orbit_{}.dot", r.orbit_id));
            fs::write(&path, r.representative_graph.to_dot())
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(match format {
        Format::Table => census.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&census.to_file()).expect("serializable");
            s.push('\n');
            s
        }
    })
}

fn describe(census: &Census, c: &Classification) -> String {
    let r = census.report(c.orbit_id).expect("valid orbit id");
    let rep = &r.representative_graph;
    format!(
        "orbit: {}{}\nsize: {}\ncanonical point (graded-lex): {}\ncanonical point (bitmask): {}\n\
         representative: {}\nwitness: {}\nverified: {}\n",
        c.orbit_id,
        r.paper_label.as_ref().map_or(String::new(), |l| format!(" ({l})")),
        r.size,
        c.canonical_point.to_string_in(IndexOrder::GradedLex),
        c.canonical_point.to_string_in(IndexOrder::Bitmask),
        if rep.edges().is_empty() { "(empty)".to_string() } else { rep.edge_string() },
        c.witness,
        if c.verified { "yes" } else { "no" },
    )
}

fn classify(
    n: usize,
    edges: Option<String>,
    point: Option<String>,
    generators: Option<String>,
    order: Order,
) -> Outcome {
    let census = census(n)?;
    let c = if let Some(e) = edges {
        census.classify_graph(&Graph::parse(&e, n)?)?
    } else if let Some(p) = point {
        let p = MinorPoint::parse_in(&p, order.into())?;
        if p.n() != n {
            return Err(Failure::Usage(format!("point has n = {}, expected {n}", p.n())));
        }
        census.classify_point(&p)?
    } else {
        let s = StabilizerGroup::parse(generators.as_deref().unwrap_or_default())?;
        if s.n() != n {
            return Err(Failure::Usage(format!("group has n = {}, expected {n}", s.n())));
        }
        census.classify_group(&s)?
    };
    Ok(describe(&census, &c))
}

fn map(n: usize, edges: &str, convention: Convention) -> Outcome {
    let g = Graph::parse(edges, n)?;
    let group = graph_generators(&g, convention);
    let l = graph_lagrangian(&g, convention);
    let minors = graph_to_point(&g)?;
    let lpoint = minor_point(&l);
    debug_assert_eq!(lagrangian_from_point(&lpoint).as_ref(), Ok(&l));
    let mut out = String::from("theta:\n");
    for r in 0..n {
        out.push_str(&format!("  {}\n", g.theta().row(r)));
    }
    out.push_str(&format!("generators: {group}\nlagrangian rows (mu|nu):\n"));
    let rows = l.generator_rows();
    for r in 0..n {
        let row = rows.row(r);
        out.push_str(&format!("  {}|{}\n", row.slice(0, n), row.slice(n, n)));
    }
    out.push_str(&format!(
        "principal minors (graded-lex): {}\nprincipal minors (bitmask): {}\n\
         lagrangian point (graded-lex): {}\nlagrangian point (bitmask): {}\n",
        minors.to_string_in(IndexOrder::GradedLex),
        minors.to_string_in(IndexOrder::Bitmask),
        lpoint.to_string_in(IndexOrder::GradedLex),
        lpoint.to_string_in(IndexOrder::Bitmask),
    ));
    Ok(out)
}

fn verify(n: usize, verbose: bool) -> Outcome {
    if tables::table(n).is_none() {
        return Err(Failure::Usage(format!("no published table for n = {n} (available: 4, 5)")));
    }
    let report = tables::verify(&census(n)?)?;
    let text = report.to_text(verbose);
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn enumerate(n: usize, count: bool) -> Outcome {
    if n == 0 || n > ENUMERATION_BOUND {
        return Err(Failure::Usage(format!("n must be in 1..={ENUMERATION_BOUND}, got {n}")));
    }
    if count {
        return Ok(format!("{}\n", lagrangian_count(n)));
    }
    let mut out = String::new();
    for l in enumerate_lagrangians(n)? {
        out.push_str(&format!("{}\n", l.to_group()));
    }
    Ok(out)
}

fn states(n: usize) -> Outcome {
    let found = census_stabilizer_states(n)?;
    let z = variety_size(n);
    Ok(format!(
        "n={n}\ndistinct state rays: {found}\n2^n * |Z_n| = {}\n4^n * |Z_n| = {}\n",
        z << n,
        z << (2 * n)
    ))
}
