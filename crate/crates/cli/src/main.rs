//! Command-line front end: diagram export, sequence computation by one or
//! all methods, sign-balance sweeps, the self-verification suites, and
//! generating-function tables.
//!
//! Exit codes: 0 on success, 1 when a verification fails (method
//! disagreement, nonzero sign balance, failing suite), 2 on usage errors.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use pbratteli::fibo::{classify_case, m_brute_with_budget, CaseLabel};
use pbratteli::paths::path_count_u64;
use pbratteli::verify::Scale;
use pbratteli::{
    add_children, floor_vertices, gf_coeff, gf_for_case, m_closed, sign_balance, Count, Edge,
    OddPrime, RecurMemo, VertexId, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "pbratteli",
    version,
    about = "Exact combinatorics of the hook-partition branching diagram"
)]
struct Cli {
    /// Worker threads for internal sweeps (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the vertices and edges of floors 1..=max-floor.
    Diagram {
        #[arg(long)]
        p: u64,
        #[arg(long = "max-floor")]
        max_floor: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sequence values at a vertex family, by one or all methods.
    Fib {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        pos: u64,
        /// Depth range, e.g. `3..9` (inclusive) or a single value.
        #[arg(long)]
        s: SRange,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Cap on brute-force path enumeration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check that the sign balance vanishes at every class-k vertex.
    Signbal {
        #[arg(long)]
        p: u64,
        #[arg(long = "max-floor")]
        max_floor: u64,
    },
    /// Run every self-verification suite and print a JSON report.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long = "max-floor")]
        max_floor: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Generating-function parameters and coefficients next to the closed
    /// sequence values.
    Gf {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        pos: u64,
        #[arg(long, default_value_t = 10)]
        terms: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
    Bfile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Recur,
    Closed,
    All,
}

/// Inclusive depth range `A..B` or a single `A`.
#[derive(Clone, Copy)]
struct SRange {
    from: u64,
    to: u64,
}

impl FromStr for SRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| v.parse::<u64>().map_err(|_| format!("bad depth `{v}`"));
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if from == 0 || from > to {
            return Err(format!("bad depth range `{s}`"));
        }
        Ok(SRange { from, to })
    }
}

#[derive(Serialize)]
struct VertexJson {
    p: u64,
    floor: u64,
    k: u64,
    pos: u64,
    size: u64,
    leg: u64,
}

impl From<&VertexId> for VertexJson {
    fn from(v: &VertexId) -> Self {
        let h = v.to_hook();
        VertexJson {
            p: v.p().get(),
            floor: v.floor(),
            k: v.class_k(),
            pos: v.pos(),
            size: h.size,
            leg: h.leg,
        }
    }
}

#[derive(Serialize)]
struct BlockJson {
    idx: u64,
    m: u64,
    n: u64,
}

#[derive(Serialize)]
struct EdgeJson {
    upper: String,
    lower: String,
    block: BlockJson,
}

impl From<&Edge> for EdgeJson {
    fn from(e: &Edge) -> Self {
        EdgeJson {
            upper: e.upper.to_string(),
            lower: e.lower.to_string(),
            block: BlockJson {
                idx: e.block.idx,
                m: e.block.horiz,
                n: e.block.vert,
            },
        }
    }
}

#[derive(Serialize)]
struct DiagramJson {
    p: u64,
    max_floor: u64,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct FibRowJson {
    s: u64,
    floor: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recur: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<String>,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct SuiteJson {
    name: String,
    checked: u64,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct GfJson {
    p: u64,
    k: u64,
    pos: u64,
    case: String,
    scale_num: u64,
    scale_den: u64,
    a: String,
    c: String,
    d: String,
    coefficients: Vec<GfRowJson>,
}

#[derive(Serialize)]
struct GfRowJson {
    n: u64,
    s: u64,
    coefficient: String,
    closed: String,
    #[serde(rename = "match")]
    matches: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Diagram {
            p,
            max_floor,
            format,
        } => cmd_diagram(OddPrime::new(p)?, max_floor, format),
        Command::Fib {
            p,
            k,
            pos,
            s,
            method,
            format,
            budget,
        } => cmd_fib(OddPrime::new(p)?, k, pos, s, method, format, budget),
        Command::Signbal { p, max_floor } => cmd_signbal(OddPrime::new(p)?, max_floor),
        Command::Verify {
            p,
            max_floor,
            budget,
        } => cmd_verify(OddPrime::new(p)?, max_floor, budget),
        Command::Gf {
            p,
            k,
            pos,
            terms,
            format,
        } => cmd_gf(OddPrime::new(p)?, k, pos, terms, format),
    }
}

fn collect_diagram(p: OddPrime, max_floor: u64) -> anyhow::Result<(Vec<VertexId>, Vec<Edge>)> {
    anyhow::ensure!(max_floor >= 1, "max-floor must be >= 1");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for floor in 1..=max_floor {
        let slice = floor_vertices(p, floor)?;
        if floor < max_floor {
            for v in &slice.vertices {
                edges.extend(add_children(v)?);
            }
        }
        vertices.extend(slice.vertices);
    }
    Ok((vertices, edges))
}

fn cmd_diagram(p: OddPrime, max_floor: u64, format: Format) -> anyhow::Result<ExitCode> {
    let (vertices, edges) = collect_diagram(p, max_floor)?;
    match format {
        Format::Json => {
            let doc = DiagramJson {
                p: p.get(),
                max_floor,
                vertices: vertices.iter().map(VertexJson::from).collect(),
                edges: edges.iter().map(EdgeJson::from).collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Dot => {
            println!("graph diagram {{");
            println!("  rankdir=BT;");
            let mut floor = 0;
            for v in &vertices {
                if v.floor() != floor {
                    floor = v.floor();
                    println!("  // floor {floor}");
                }
                let h = v.to_hook();
                println!("  \"{v}\" [label=\"({},{})\\n{v}\"];", h.size, h.leg);
            }
            for e in &edges {
                println!(
                    "  \"{}\" -- \"{}\" [label=\"({},{})\"];",
                    e.lower, e.upper, e.block.horiz, e.block.vert
                );
            }
            println!("}}");
        }
        Format::Table => {
            for v in &vertices {
                let h = v.to_hook();
                println!("vertex {v} size={} leg={}", h.size, h.leg);
            }
            for e in &edges {
                println!(
                    "edge {} -> {} block=({},{})",
                    e.upper, e.lower, e.block.horiz, e.block.vert
                );
            }
        }
        Format::Bfile => anyhow::bail!("bfile output applies to sequences, not diagrams"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fib(
    p: OddPrime,
    k: u64,
    pos: u64,
    s: SRange,
    method: MethodArg,
    format: Format,
    budget: u64,
) -> anyhow::Result<ExitCode> {
    if format == Format::Dot {
        anyhow::bail!("dot output applies to diagrams, not sequences");
    }
    anyhow::ensure!(
        s.to <= 10_000 && k <= 10_000,
        "depth out of supported range"
    );
    let mut memo = RecurMemo::new();
    let mut rows = Vec::new();
    let mut all_match = true;
    for s in s.from..=s.to {
        let floor = 2 * (s + k);
        let v = VertexId::new(p, floor, k, pos)?;
        let brute = |budget: u64| -> anyhow::Result<Option<Count>> {
            if path_count_u64(&v)? <= budget {
                Ok(Some(m_brute_with_budget(&v, budget)?))
            } else {
                Ok(None)
            }
        };
        let row = match method {
            MethodArg::Brute => FibRowJson {
                s,
                floor,
                brute: Some(m_brute_with_budget(&v, budget)?.to_string()),
                recur: None,
                closed: None,
                matches: true,
            },
            MethodArg::Recur => FibRowJson {
                s,
                floor,
                brute: None,
                recur: Some(memo.eval(&v)?.to_string()),
                closed: None,
                matches: true,
            },
            MethodArg::Closed => FibRowJson {
                s,
                floor,
                brute: None,
                recur: None,
                closed: Some(m_closed(&v)?.to_string()),
                matches: true,
            },
            MethodArg::All => {
                let brute = brute(budget)?;
                let recur = memo.eval(&v)?;
                let closed = m_closed(&v)?;
                let matches =
                    recur == closed && brute.as_ref().map(|b| *b == closed).unwrap_or(true);
                all_match &= matches;
                FibRowJson {
                    s,
                    floor,
                    brute: brute.map(|b| b.to_string()),
                    recur: Some(recur.to_string()),
                    closed: Some(closed.to_string()),
                    matches,
                }
            }
        };
        rows.push(row);
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Bfile => {
            for row in &rows {
                let value = row
                    .closed
                    .as_ref()
                    .or(row.recur.as_ref())
                    .or(row.brute.as_ref())
                    .expect("every row has a value");
                println!("{} {}", row.s, value);
            }
        }
        Format::Table => {
            for row in &rows {
                let mut line = format!("s={}", row.s);
                if let Some(b) = &row.brute {
                    line += &format!(" brute={b}");
                } else if matches!(method, MethodArg::All) {
                    line += " brute=-";
                }
                if let Some(r) = &row.recur {
                    line += &format!(" recur={r}");
                }
                if let Some(c) = &row.closed {
                    line += &format!(" closed={c}");
                }
                if matches!(method, MethodArg::All) {
                    line += &format!(" match={}", if row.matches { "yes" } else { "NO" });
                }
                println!("{line}");
            }
        }
        Format::Dot => unreachable!(),
    }
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_signbal(p: OddPrime, max_floor: u64) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(max_floor >= 1, "max-floor must be >= 1");
    let mut bad = 0u64;
    let mut floor = 2;
    while floor <= max_floor {
        let r = floor / 2;
        let mut count = 0u64;
        for k in 0..r {
            let mut pos = 0;
            while let Ok(v) = VertexId::new(p, floor, k, pos) {
                let balance = sign_balance(&v)?;
                if !balance.is_zero() {
                    println!("floor {floor}: {v} has sign balance {balance}");
                    bad += 1;
                }
                count += 1;
                pos += 1;
            }
        }
        println!("floor {floor}: {count} vertices checked");
        floor += 2;
    }
    if bad == 0 {
        println!("sign balance zero everywhere");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{bad} vertices with nonzero sign balance");
        Ok(ExitCode::from(1))
    }
}

fn cmd_verify(p: OddPrime, max_floor: u64, budget: u64) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(max_floor >= 2, "max-floor must be >= 2");
    let scale = Scale {
        p,
        max_floor,
        budget,
    };
    let reports = pbratteli::run_all(&scale);
    let ok = reports.iter().all(|r| r.failures.is_empty());
    let doc: Vec<SuiteJson> = reports
        .into_iter()
        .map(|r| SuiteJson {
            name: r.name.to_string(),
            checked: r.checked,
            failures: r.failures,
        })
        .collect();
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn case_of(p: OddPrime, k: u64, pos: u64) -> anyhow::Result<CaseLabel> {
    Ok(classify_case(p, k, k + 2, pos)?)
}

fn cmd_gf(p: OddPrime, k: u64, pos: u64, terms: u64, format: Format) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(terms >= 1, "terms must be >= 1");
    anyhow::ensure!(
        terms <= 10_000 && k <= 10_000,
        "terms out of supported range"
    );
    if matches!(format, Format::Dot | Format::Bfile) {
        anyhow::bail!("gf output supports json and table formats");
    }
    let label = case_of(p, k, pos)?;
    let g = gf_for_case(p, k, &label)?;
    let mut rows = Vec::new();
    let mut all_match = true;
    for n in 0..terms {
        let s = n + k + 2;
        let coefficient = gf_coeff(&g, n)?;
        let closed = pbratteli::closed_value(p, k, s, pos)?;
        let matches = coefficient == closed;
        all_match &= matches;
        rows.push(GfRowJson {
            n,
            s,
            coefficient: coefficient.to_string(),
            closed: closed.to_string(),
            matches,
        });
    }
    match format {
        Format::Json => {
            let doc = GfJson {
                p: p.get(),
                k,
                pos,
                case: label.to_string(),
                scale_num: g.scale_num,
                scale_den: g.scale_den,
                a: g.a.to_string(),
                c: g.c.to_string(),
                d: g.d.to_string(),
                coefficients: rows,
            };
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Table => {
            println!(
                "case {} scale={}/{} A={} C={} D={}",
                label, g.scale_num, g.scale_den, g.a, g.c, g.d
            );
            for row in &rows {
                println!(
                    "n={} s={} gf={} closed={} match={}",
                    row.n,
                    row.s,
                    row.coefficient,
                    row.closed,
                    if row.matches { "yes" } else { "NO" }
                );
            }
        }
        _ => unreachable!(),
    }
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
