//! Command implementations for the `detarr` binary. Each command returns an
//! [`Outcome`] instead of printing, so the commands can be tested in-process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use detarr::arrangement::Arrangement;
use detarr::derivations::{
    is_logarithmic_componentwise, parse_derivation_file, saito_check, std_basis, DerivationError,
    LabeledDerivation, SaitoMethod, SaitoMode, SaitoVerdict, DEFAULT_SAMPLE_POINTS,
};
use detarr::graphs::{
    chordal_build_order, is_chordal, pdim_lower_bound, Chordality, Graph, GraphError, PdimBound,
};
use detarr::topology::{betti, homotopy_report, poincare_chordal, HomotopyReport, PoincareJson};
use detarr::Ring;
use serde::Serialize;
use thiserror::Error;

/// Largest `n` accepted for a symbolic Saito determinant.
pub const SYMBOLIC_MAX_N: usize = 7;
/// Largest `n` accepted for a randomized Saito check.
pub const RANDOMIZED_MAX_N: usize = 16;
/// `auto` mode switches from symbolic to randomized above this `n`.
pub const AUTO_SYMBOLIC_MAX_N: usize = 4;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_SCOPE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "detarr",
    version,
    about = "Determinantal arrangements of a generic 2×n matrix"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "DETARR_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Sample points for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLE_POINTS)]
    pub points: usize,
    /// Worker threads for parallel kernels (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Randomized,
    Auto,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chordality verdict, elimination order or chordless cycle, pdim bound.
    Chordal {
        /// A graph file, or `complete <n>`.
        #[arg(required = true, num_args = 1..=2)]
        graph: Vec<String>,
    },
    /// Verify the explicit basis for K_n with Saito's criterion.
    Saito {
        #[arg(required = true, num_args = 1..=2)]
        graph: Vec<String>,
    },
    /// Factored Poincaré polynomial of the complement of a chordal arrangement.
    Poincare {
        #[arg(required = true, num_args = 1..=2)]
        graph: Vec<String>,
    },
    /// Edge-by-edge logarithmic membership of derivations read from a file.
    Verify {
        /// Derivation file, or `std` for the explicit basis on n columns.
        derivations: String,
        #[arg(required = true, num_args = 1..=2)]
        graph: Vec<String>,
    },
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("bad graph source: {0}")]
    Source(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Derivation(#[from] DerivationError),
}

/// What a command produced: an exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(e: InputError) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }

    fn scope(message: String) -> Self {
        Outcome {
            code: EXIT_SCOPE,
            stdout: String::new(),
            stderr: format!("refused: {message}\n"),
        }
    }
}

/// Reads a graph from `["complete", n]`, `["complete <n>"]` or `[path]`.
pub fn load_graph(source: &[String]) -> Result<Graph, InputError> {
    let words: Vec<&str> = source.iter().flat_map(|s| s.split_whitespace()).collect();
    match words.as_slice() {
        ["complete", k] => {
            let n = usize::from_str(k)
                .map_err(|_| InputError::Source(format!("bad vertex count '{k}'")))?;
            Ok(Graph::complete(n))
        }
        _ if source.len() == 1 => {
            let path = PathBuf::from(&source[0]);
            let text = std::fs::read_to_string(&path).map_err(|source| InputError::Io {
                path: path.clone(),
                source,
            })?;
            Graph::parse(&text).map_err(|e| match e {
                GraphError::Parse { line, message } => InputError::Parse {
                    path: path.display().to_string(),
                    line,
                    message,
                },
                other => other.into(),
            })
        }
        _ => Err(InputError::Source(source.join(" "))),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    let body = || match &cli.command {
        Command::Chordal { graph } => cmd_chordal(opts, graph),
        Command::Saito { graph } => cmd_saito(opts, graph),
        Command::Poincare { graph } => cmd_poincare(opts, graph),
        Command::Verify { derivations, graph } => cmd_verify(opts, derivations, graph),
    };
    match opts.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(body),
            Err(e) => Outcome::input_error(InputError::Source(format!("thread pool: {e}"))),
        },
        None => body(),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn number(v: impl ToString) -> serde_json::Number {
    serde_json::Number::from_str(&v.to_string()).expect("integers are JSON numbers")
}

#[derive(Debug, Serialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct ChordalJson {
    command: &'static str,
    graph: GraphJson,
    chordal: bool,
    elimination_order: Option<Vec<usize>>,
    earlier_neighbors: Option<Vec<usize>>,
    witness_cycle: Option<Vec<usize>>,
    pdim_lower_bound: usize,
    pdim_cycle: Option<Vec<usize>>,
    /// `longest` when the bound comes from an exhaustive longest-hole search,
    /// `witness` when the graph was too large and the witness was used,
    /// `no_obstruction` for chordal graphs (the bound 0 is then trivial).
    pdim_source: &'static str,
}

pub fn cmd_chordal(opts: &GlobalOpts, source: &[String]) -> Outcome {
    let g = match load_graph(source) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(e),
    };
    let report = match is_chordal(&g) {
        Chordality::Chordal(_) => {
            let build = chordal_build_order(&g).expect("chordal");
            ChordalJson {
                command: "chordal",
                graph: (&g).into(),
                chordal: true,
                elimination_order: Some(build.order),
                earlier_neighbors: Some(build.earlier),
                witness_cycle: None,
                pdim_lower_bound: 0,
                pdim_cycle: None,
                pdim_source: "no_obstruction",
            }
        }
        Chordality::NotChordal(witness) => {
            let (bound, cycle, src) = match pdim_lower_bound(&g) {
                Ok(PdimBound::AtLeast { bound, cycle }) => (bound, cycle, "longest"),
                _ => (witness.len() - 3, witness.clone(), "witness"),
            };
            ChordalJson {
                command: "chordal",
                graph: (&g).into(),
                chordal: false,
                elimination_order: None,
                earlier_neighbors: None,
                witness_cycle: Some(witness),
                pdim_lower_bound: bound,
                pdim_cycle: Some(cycle),
                pdim_source: src,
            }
        }
    };
    let code = if report.chordal {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let stdout = if opts.json {
        to_json(&report)
    } else {
        let mut s = String::new();
        if let Some(order) = &report.elimination_order {
            let _ = writeln!(s, "chordal: yes");
            let _ = writeln!(s, "elimination order: {}", join(order));
            let _ = writeln!(
                s,
                "no chordless-cycle obstruction to freeness (freeness not certified)"
            );
        } else {
            let w = report.witness_cycle.as_deref().unwrap_or_default();
            let _ = writeln!(s, "chordal: no");
            let _ = writeln!(s, "chordless cycle: ({})", join(w));
            let _ = writeln!(
                s,
                "pdim >= {} (from chordless cycle of length {})",
                report.pdim_lower_bound,
                report.pdim_cycle.as_ref().map_or(0, Vec::len)
            );
        }
        s
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Serialize)]
struct MembershipJson {
    label: String,
    all_pass: bool,
    failed_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
struct MethodJson {
    kind: &'static str,
    points: Option<usize>,
    seed: Option<u64>,
    failure_bound: Option<f64>,
}

#[derive(Debug, Serialize)]
struct SaitoJson {
    command: &'static str,
    n: usize,
    mode: &'static str,
    mode_selected_by: &'static str,
    membership: Vec<MembershipJson>,
    det_degree: Option<u32>,
    f_degree: u32,
    verdict: &'static str,
    fail_reason: Option<String>,
    c_num: Option<serde_json::Number>,
    c_den: Option<serde_json::Number>,
    abs_c: Option<String>,
    method: MethodJson,
    free: bool,
}

pub fn cmd_saito(opts: &GlobalOpts, source: &[String]) -> Outcome {
    let g = match load_graph(source) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(e),
    };
    let n = g.n();
    if !g.is_complete() {
        return Outcome::scope(format!(
            "the explicit basis is only established for complete graphs; {g} is not complete"
        ));
    }
    if n < 3 {
        return Outcome::scope(format!("the explicit basis needs n >= 3, got n = {n}"));
    }
    let (symbolic, selected_by) = match opts.mode {
        ModeArg::Symbolic => (true, "flag"),
        ModeArg::Randomized => (false, "flag"),
        ModeArg::Auto => (n <= AUTO_SYMBOLIC_MAX_N, "auto"),
    };
    let limit = if symbolic {
        SYMBOLIC_MAX_N
    } else {
        RANDOMIZED_MAX_N
    };
    if n > limit {
        return Outcome::scope(format!(
            "n = {n} is too large for {} mode (limit {limit})",
            if symbolic { "symbolic" } else { "randomized" }
        ));
    }

    let start = Instant::now();
    let basis = std_basis(n).expect("n >= 3");
    let arrangement = Arrangement::new(g);
    let mut membership = Vec::new();
    for ld in basis.labeled() {
        let rep = match is_logarithmic_componentwise(&ld.derivation, &arrangement) {
            Ok(r) => r,
            Err(e) => return Outcome::input_error(e.into()),
        };
        membership.push(MembershipJson {
            label: ld.label,
            all_pass: rep.all_pass(),
            failed_edges: rep.failures().collect(),
        });
    }
    let mode = if symbolic {
        SaitoMode::Symbolic
    } else {
        SaitoMode::Randomized {
            points: opts.points,
            seed: opts.seed,
        }
    };
    let report = match saito_check(&basis.saito_order(), &arrangement, mode) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e.into()),
    };
    let elapsed = start.elapsed();

    let members_pass = membership.iter().all(|m| m.all_pass);
    let (verdict, fail_reason, c_num, c_den) = match &report.verdict {
        SaitoVerdict::Basis { c_num, c_den } => {
            ("basis", None, Some(c_num.clone()), Some(c_den.clone()))
        }
        SaitoVerdict::Fails(r) => ("fails", Some(r.to_string()), None, None),
    };
    let abs_c = report.abs_c().map(|(a, b)| {
        if b == 1.into() {
            a.to_string()
        } else {
            format!("{a}/{b}")
        }
    });
    let method = match report.method {
        SaitoMethod::Symbolic => MethodJson {
            kind: "symbolic",
            points: None,
            seed: None,
            failure_bound: None,
        },
        SaitoMethod::Randomized {
            points,
            seed,
            failure_bound,
        } => MethodJson {
            kind: "randomized",
            points: Some(points),
            seed: Some(seed),
            failure_bound: Some(failure_bound),
        },
    };
    let free = members_pass && report.is_basis();
    let out = SaitoJson {
        command: "saito",
        n,
        mode: if symbolic { "symbolic" } else { "randomized" },
        mode_selected_by: selected_by,
        membership,
        det_degree: report.det_degree,
        f_degree: report.f_degree,
        verdict,
        fail_reason,
        c_num: c_num.map(number),
        c_den: c_den.map(number),
        abs_c,
        method,
        free,
    };
    let code = if free { EXIT_OK } else { EXIT_NEGATIVE };
    let timing = format!("elapsed: {:.3} s\n", elapsed.as_secs_f64());
    if opts.json {
        return Outcome {
            code,
            stdout: to_json(&out),
            stderr: timing,
        };
    }
    let mut s = String::new();
    let _ = writeln!(s, "n = {n}, mode: {} ({})", out.mode, out.mode_selected_by);
    for m in &out.membership {
        if m.all_pass {
            let _ = writeln!(s, "  {}: logarithmic on every edge", m.label);
        } else {
            let _ = writeln!(s, "  {}: fails on edges {:?}", m.label, m.failed_edges);
        }
    }
    let _ = writeln!(
        s,
        "deg det = {}, deg f = {}",
        out.det_degree.map_or("-".to_string(), |d| d.to_string()),
        out.f_degree
    );
    match (&out.abs_c, &out.fail_reason) {
        (Some(c), _) => {
            let _ = writeln!(s, "verdict: basis, |c| = {c}");
        }
        (None, Some(r)) => {
            let _ = writeln!(s, "verdict: fails ({r})");
        }
        _ => {}
    }
    match &out.method {
        MethodJson {
            points: Some(p),
            seed: Some(sd),
            failure_bound: Some(fb),
            ..
        } => {
            let _ = writeln!(
                s,
                "method: randomized, {p} points, seed {sd}, failure bound {fb:e}"
            );
        }
        _ => {
            let _ = writeln!(s, "method: symbolic");
        }
    }
    let _ = writeln!(s, "free: {}", if free { "yes" } else { "no" });
    s.push_str(&timing);
    Outcome {
        code,
        stdout: s,
        stderr: String::new(),
    }
}

#[derive(Debug, Serialize)]
struct PoincareOut {
    command: &'static str,
    graph: GraphJson,
    factored_text: String,
    poincare: PoincareJson,
    betti: Vec<serde_json::Number>,
    edge_count: usize,
    linear_term_count_is_2v_minus_3: bool,
    linear_term_count_is_2e_minus_3: bool,
    homotopy: HomotopyReport,
}

#[derive(Debug, Serialize)]
struct NotChordalJson {
    command: &'static str,
    chordal: bool,
    witness_cycle: Vec<usize>,
}

pub fn cmd_poincare(opts: &GlobalOpts, source: &[String]) -> Outcome {
    let g = match load_graph(source) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(e),
    };
    let p = match poincare_chordal(&g) {
        Ok(p) => p,
        Err(detarr::TopologyError::NotChordal(w)) => {
            let stdout = if opts.json {
                to_json(&NotChordalJson {
                    command: "poincare",
                    chordal: false,
                    witness_cycle: w,
                })
            } else {
                format!("not chordal; chordless cycle ({})\n", join(&w))
            };
            return Outcome {
                code: EXIT_NEGATIVE,
                stdout,
                stderr: String::new(),
            };
        }
        Err(e) => {
            return Outcome::input_error(InputError::Source(e.to_string()));
        }
    };
    let homotopy = homotopy_report(&g).expect("chordal");
    let linear = p.linear_term_count() as i64;
    let (v, e) = (g.n() as i64, g.edge_count() as i64);
    let out = PoincareOut {
        command: "poincare",
        graph: (&g).into(),
        factored_text: p.to_string(),
        poincare: p.to_json(),
        betti: betti(&p).iter().map(number).collect(),
        edge_count: g.edge_count(),
        linear_term_count_is_2v_minus_3: linear == 2 * v - 3,
        linear_term_count_is_2e_minus_3: linear == 2 * e - 3,
        homotopy,
    };
    let stdout = if opts.json {
        to_json(&out)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "P(t) = {}", out.factored_text);
        let _ = writeln!(s, "     = {}", p.expand());
        let _ = writeln!(
            s,
            "betti: [{}]",
            out.betti
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        let _ = writeln!(
            s,
            "linear factors: {} (2v-3 = {}, 2e-3 = {}); cubic factor: {}",
            linear,
            2 * v - 3,
            2 * e - 3,
            if out.poincare.cubic_present {
                "yes"
            } else {
                "no"
            }
        );
        let _ = writeln!(s, "pi_1: {}", out.homotopy.pi1);
        let _ = writeln!(s, "pi_2: {}", out.homotopy.pi2);
        let _ = writeln!(s, "pi_i, i >= 3: {}", out.homotopy.pi_i_for_i_ge_3);
        s
    };
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

#[derive(Debug, Serialize)]
struct EdgeJson {
    edge: (usize, usize),
    pass: bool,
    quotient: Option<String>,
}

#[derive(Debug, Serialize)]
struct VerifyEntry {
    label: String,
    derivation: String,
    all_pass: bool,
    edges: Vec<EdgeJson>,
}

#[derive(Debug, Serialize)]
struct VerifyJson {
    command: &'static str,
    graph: GraphJson,
    derivations: Vec<VerifyEntry>,
    all_pass: bool,
}

fn load_derivations(spec: &str, n: usize) -> Result<Vec<LabeledDerivation>, InputError> {
    if spec == "std" {
        return Ok(std_basis(n)?.labeled());
    }
    let path = PathBuf::from(spec);
    let text = std::fs::read_to_string(&path).map_err(|source| InputError::Io {
        path: path.clone(),
        source,
    })?;
    parse_derivation_file(Ring::new(n), &text).map_err(|e| match e {
        DerivationError::Parse { line, message } => InputError::Parse {
            path: spec.to_string(),
            line,
            message,
        },
        other => other.into(),
    })
}

pub fn cmd_verify(opts: &GlobalOpts, derivations: &str, source: &[String]) -> Outcome {
    let g = match load_graph(source) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(e),
    };
    if g.edge_count() == 0 {
        return Outcome::input_error(InputError::Source("the graph has no edges".into()));
    }
    let ds = match load_derivations(derivations, g.n()) {
        Ok(ds) => ds,
        Err(e) => return Outcome::input_error(e),
    };
    let arrangement = Arrangement::new(g);
    let mut entries = Vec::new();
    for ld in ds {
        let rep = match is_logarithmic_componentwise(&ld.derivation, &arrangement) {
            Ok(r) => r,
            Err(e) => return Outcome::input_error(e.into()),
        };
        entries.push(VerifyEntry {
            label: ld.label,
            derivation: ld.derivation.to_string(),
            all_pass: rep.all_pass(),
            edges: rep
                .edges
                .iter()
                .map(|e| EdgeJson {
                    edge: e.edge,
                    pass: e.quotient.is_some(),
                    quotient: e.quotient.as_ref().map(ToString::to_string),
                })
                .collect(),
        });
    }
    let all_pass = entries.iter().all(|e| e.all_pass);
    let out = VerifyJson {
        command: "verify",
        graph: arrangement.graph().into(),
        derivations: entries,
        all_pass,
    };
    let stdout = if opts.json {
        to_json(&out)
    } else {
        let mut s = String::new();
        for d in &out.derivations {
            let _ = writeln!(s, "{}: {}", d.label, d.derivation);
            for e in &d.edges {
                let (i, j) = e.edge;
                match &e.quotient {
                    Some(q) => {
                        let _ = writeln!(s, "  ({i},{j}) pass, quotient {q}");
                    }
                    None => {
                        let _ = writeln!(s, "  ({i},{j}) FAIL");
                    }
                }
            }
        }
        let _ = writeln!(s, "all pass: {}", if all_pass { "yes" } else { "no" });
        s
    };
    Outcome {
        code: if all_pass { EXIT_OK } else { EXIT_NEGATIVE },
        stdout,
        stderr: String::new(),
    }
}
