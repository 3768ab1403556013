use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cactus_dim::cactus::Cactus;
use cactus_dim::generate::{extremal_family, random_cactus, random_tree};
use cactus_dim::graph::cyclomatic_number;
use cactus_dim::oracle::{
    audit_bounds, metric_dimension_bruteforce, zero_forcing_number, ZERO_FORCING_LIMIT,
};
use cactus_dim::report::JsonReport;
use cactus_dim::solver::{compute_dimensions_of, DimensionReport, GraphKind};
use cactus_dim::{parse_edge_list, Error, Graph, Mode};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "cactus-dim",
    version,
    about = "Vertex and edge metric dimension of cactus graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Vertex,
    Edge,
    Both,
}

impl ModeArg {
    fn modes(self) -> &'static [Mode] {
        match self {
            ModeArg::Vertex => &[Mode::Vertex],
            ModeArg::Edge => &[Mode::Edge],
            ModeArg::Both => &Mode::BOTH,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute dim and edim of a cactus given as an edge list ("-" reads stdin)
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        /// Print the full report as JSON
        #[arg(long)]
        json: bool,
        /// Write a DOT drawing with the certificate vertices filled
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Largest n for which the zero forcing audit runs
        #[arg(long, default_value_t = ZERO_FORCING_LIMIT)]
        z_limit: usize,
    },
    /// Compare the solver with brute force on random cacti
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 13)]
        max_n: usize,
        /// Upper end of the cycle count; each instance draws from 1..=cycles
        #[arg(long, default_value_t = 3)]
        cycles: usize,
        /// Largest n on which the brute-force oracle runs
        #[arg(long, default_value_t = 14)]
        oracle_limit: usize,
        #[arg(long, default_value_t = 8)]
        max_girth: usize,
        #[arg(long, default_value_t = 0.35)]
        thread_bias: f64,
    },
    /// Print a generated instance as an edge list
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Zero forcing number, with the dim <= Z + c audit for cacti
    Zf {
        input: PathBuf,
        #[arg(long, default_value_t = ZERO_FORCING_LIMIT)]
        limit: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random cactus on exactly N vertices
    Cactus {
        n: usize,
        #[arg(long, default_value_t = 2)]
        cycles: usize,
        #[arg(long, default_value_t = 8)]
        max_girth: usize,
        #[arg(long, default_value_t = 0.35)]
        thread_bias: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform attachment tree on N vertices
    Tree {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cactus with L = B and dim = edim = B + 2C
    Extremal { b: usize, c: usize },
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::NotACactus { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        fs::read(path)
    }
    .map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(parse_edge_list(&bytes)?)
}

fn label_set(g: &Graph, vs: &[usize]) -> String {
    let mut ls: Vec<u64> = vs.iter().map(|&v| g.label(v)).collect();
    ls.sort_unstable();
    let parts: Vec<String> = ls.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn flag_string(flags: &cactus_dim::resolving::Flags, mode: Mode) -> String {
    let s: String = mode
        .configurations()
        .iter()
        .filter(|&&c| flags.get(c))
        .map(|c| format!("{c:?}"))
        .collect();
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}

fn render_human(
    out: &mut String,
    g: &Graph,
    r: &DimensionReport,
    modes: &[Mode],
    audit: &cactus_dim::oracle::BoundsAudit,
) -> std::fmt::Result {
    writeln!(
        out,
        "n={} m={} cycles={} L={} B={}",
        r.n, r.m, r.cyclomatic, r.l, r.b
    )?;
    match r.kind {
        GraphKind::SingleVertex => writeln!(out, "single vertex: dim=edim=0")?,
        GraphKind::Path => writeln!(out, "path: dim=1 edim={}", r.edim)?,
        GraphKind::Tree => writeln!(out, "tree: dim=edim=L={}", r.l)?,
        GraphKind::Cactus => {
            writeln!(
                out,
                "{:>5} {:>5} {:>3}  {:<9} {:<9} {:<6} {}",
                "cycle", "girth", "b", "abc", "ade", "flagsV", "flagsE"
            )?;
            for c in &r.cycles {
                writeln!(
                    out,
                    "{:>5} {:>5} {:>3}  {:<9} {:<9} {:<6} {}",
                    c.index,
                    c.girth,
                    c.b,
                    format!("{:?}", c.class_abc).to_lowercase(),
                    format!("{:?}", c.class_ade).to_lowercase(),
                    flag_string(&c.flags.vertex, Mode::Vertex),
                    flag_string(&c.flags.edge, Mode::Edge),
                )?;
            }
            for &mode in modes {
                let (pos, tau, edges) = match mode {
                    Mode::Vertex => (r.c_abc, r.tau_vi, &r.incidence_vi.edges),
                    Mode::Edge => (r.c_ade, r.tau_ei, &r.incidence_ei.edges),
                };
                let name = if mode == Mode::Vertex { "vi" } else { "ei" };
                let inc: Vec<String> = edges
                    .iter()
                    .map(|&(i, j, v)| format!("C{i}-C{j}@{}", g.label(v)))
                    .collect();
                writeln!(
                    out,
                    "{}: positive={pos} tau_{name}={tau} incidences=[{}]",
                    if mode == Mode::Vertex { "abc" } else { "ade" },
                    inc.join(", ")
                )?;
            }
        }
    }
    let values: Vec<String> = modes
        .iter()
        .map(|&m| match m {
            Mode::Vertex => format!("dim={}", r.dim),
            Mode::Edge => format!("edim={}", r.edim),
        })
        .collect();
    writeln!(out, "{}", values.join(" "))?;
    for &mode in modes {
        let name = if mode == Mode::Vertex {
            "vertex"
        } else {
            "edge"
        };
        writeln!(
            out,
            "{name} certificate: {}",
            label_set(g, r.certificate(mode))
        )?;
    }
    let z = audit
        .z
        .map_or_else(|| "skipped".to_string(), |z| z.to_string());
    if audit.all_pass() {
        writeln!(out, "audits: pass ({} bounds, Z={z})", audit.checks.len())?;
    } else {
        for v in audit.violations() {
            writeln!(out, "audit FAIL: {} ({} > {})", v.name, v.lhs, v.rhs)?;
        }
    }
    Ok(())
}

fn cmd_analyze(
    input: &Path,
    mode: ModeArg,
    json: bool,
    dot: Option<&Path>,
    z_limit: usize,
) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let cactus = Cactus::new(g.clone())?;
    let report = compute_dimensions_of(&cactus)?;
    let audit = audit_bounds(&g, &report, z_limit);
    let modes = mode.modes();
    if let Some(path) = dot {
        let mut marked: Vec<usize> = modes
            .iter()
            .flat_map(|&m| report.certificate(m).to_vec())
            .collect();
        marked.sort_unstable();
        marked.dedup();
        fs::write(path, g.to_dot(&marked)).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        })?;
    }
    if json {
        let out = serde_json::to_string_pretty(&JsonReport::new(&g, &report, audit))
            .expect("report serializes");
        emit(&format!("{out}\n"));
    } else {
        let mut out = String::new();
        render_human(&mut out, &g, &report, modes, &audit).expect("writing to a String");
        emit(&out);
    }
    Ok(())
}

/// Outcome of one fuzz instance.
struct Case {
    seed: u64,
    graph: Graph,
    oracle_ran: bool,
    problem: Option<String>,
}

/// Describes how the solver disagrees with brute force (or the bounds) on
/// `g`, if it does.
fn check_instance(g: &Graph, oracle_limit: usize) -> (bool, Option<String>) {
    let report = match Cactus::new(g.clone()).and_then(|c| compute_dimensions_of(&c)) {
        Ok(r) => r,
        Err(e) => return (false, Some(format!("solver error: {e}"))),
    };
    let audit = audit_bounds(g, &report, oracle_limit.min(ZERO_FORCING_LIMIT));
    if let Some(v) = audit.violations().first() {
        return (
            false,
            Some(format!("bound {} violated: {} > {}", v.name, v.lhs, v.rhs)),
        );
    }
    if g.n() > oracle_limit {
        return (false, None);
    }
    for mode in Mode::BOTH {
        let (want, _) = metric_dimension_bruteforce(g, mode, oracle_limit).expect("within limit");
        if report.value(mode) != want {
            return (
                true,
                Some(format!(
                    "{mode:?} mode: solver {} oracle {want}",
                    report.value(mode)
                )),
            );
        }
    }
    (true, None)
}

/// Greedily deletes vertices while the instance stays connected and keeps
/// failing.
fn shrink(g: &Graph, oracle_limit: usize) -> Graph {
    let mut cur = g.clone();
    'outer: loop {
        for v in 0..cur.n() {
            let keep: Vec<usize> = (0..cur.n()).filter(|&x| x != v).collect();
            let Ok(smaller) = cur.induced(&keep) else {
                continue;
            };
            if check_instance(&smaller, oracle_limit).1.is_some() {
                cur = smaller;
                continue 'outer;
            }
        }
        return cur;
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    count: u64,
    seed: u64,
    max_n: usize,
    cycles: usize,
    oracle_limit: usize,
    max_girth: usize,
    thread_bias: f64,
) -> Result<bool, Failure> {
    let cycles = cycles.max(1);
    let min_n = 3 * cycles;
    if max_n < min_n {
        return Err(Failure {
            code: 1,
            message: format!("--max-n {max_n} is too small for {cycles} cycles (need {min_n})"),
        });
    }
    // reject bad generator parameters once, before spawning work
    random_cactus(min_n, cycles, max_girth, thread_bias, seed)?;

    let cases: Vec<Case> = (0..count)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let c = rng.gen_range(1..=cycles);
            let n = rng.gen_range((3 * c).max(4).min(max_n)..=max_n);
            let graph = random_cactus(n, c, max_girth, thread_bias, s).expect("parameters checked");
            let (oracle_ran, problem) = check_instance(&graph, oracle_limit);
            Case {
                seed: s,
                graph,
                oracle_ran,
                problem,
            }
        })
        .collect();

    let mut failures = 0;
    for case in cases.iter().filter(|c| c.problem.is_some()) {
        failures += 1;
        println!(
            "MISMATCH seed {}: {}",
            case.seed,
            case.problem.as_deref().unwrap_or_default()
        );
        print!("{}", case.graph.to_edge_list());
        let small = shrink(&case.graph, oracle_limit);
        println!("shrunk reproduction ({} vertices):", small.n());
        print!("{}", small.to_edge_list());
    }
    let oracle_runs = cases.iter().filter(|c| c.oracle_ran).count();
    println!("{}/{} match", count as usize - failures, count);
    println!(
        "oracle ran on {oracle_runs}, skipped on {} (n > {oracle_limit}); bound audits run on all",
        count as usize - oracle_runs
    );
    Ok(failures == 0)
}

fn cmd_gen(kind: GenKind) -> Result<(), Failure> {
    let g = match kind {
        GenKind::Cactus {
            n,
            cycles,
            max_girth,
            thread_bias,
            seed,
        } => random_cactus(n, cycles, max_girth, thread_bias, seed)?,
        GenKind::Tree { n, seed } => random_tree(n, seed)?,
        GenKind::Extremal { b, c } => extremal_family(b, c)?,
    };
    emit(&g.to_edge_list());
    Ok(())
}

fn cmd_zf(input: &Path, limit: usize) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let (z, witness) = zero_forcing_number(&g, limit)?;
    println!("Z={z}");
    println!("witness: {}", label_set(&g, &witness));
    match Cactus::new(g.clone()) {
        Ok(cactus) => {
            let r = compute_dimensions_of(&cactus)?;
            let c = cyclomatic_number(&g);
            let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
            println!(
                "dim={} <= Z+c={}: {}",
                r.dim,
                z + c,
                verdict(r.dim <= z + c)
            );
            println!(
                "edim={} <= Z+c={}: {}",
                r.edim,
                z + c,
                verdict(r.edim <= z + c)
            );
            println!("L+B={} <= Z={z}: {}", r.l + r.b, verdict(r.l + r.b <= z));
        }
        Err(Error::NotACactus { .. }) => println!("not a cactus: dimension audit skipped"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Analyze {
            input,
            mode,
            json,
            dot,
            z_limit,
        } => cmd_analyze(&input, mode, json, dot.as_deref(), z_limit),
        Command::Fuzz {
            count,
            seed,
            max_n,
            cycles,
            oracle_limit,
            max_girth,
            thread_bias,
        } => match cmd_fuzz(
            count,
            seed,
            max_n,
            cycles,
            oracle_limit,
            max_girth,
            thread_bias,
        ) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(3),
            Err(f) => Err(f),
        },
        Command::Gen { kind } => cmd_gen(kind),
        Command::Zf { input, limit } => cmd_zf(&input, limit),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
