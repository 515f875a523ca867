//! Command-line interface.
//!
//! Graphs travel as graph6, everything else as JSON with sorted keys.
//! Exit codes: 0 success or valid certificate, 1 invalid certificate,
//! 2 input error, 3 enumeration cap exceeded.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::fixtures;
use crate::graph::{parse_graph6, write_graph6, Graph, VertexSet};
use crate::search;
use crate::solvers::{self, ExtremalResult, SolverConfig, DEFAULT_CAP};
use crate::wod::{self, CertificateKind, WodCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "wodkit", version, about = "Exact weak odd domination computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute κ, κ', κ_Q and their bounds
    Compute(ComputeArgs),
    /// Check a WOD or non-WOD certificate
    Verify(VerifyArgs),
    /// Produce a certificate for a vertex set
    Certify(CertifyArgs),
    /// Print graphs from a family as graph6
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Measure κ_Q on seeded random graphs (JSON lines)
    Search(SearchArgs),
    /// Evaluate the local-lemma feasibility condition
    Lll(LllArgs),
}

#[derive(Args, Debug)]
struct GraphSource {
    /// graph6 string
    #[arg(long, conflicts_with_all = ["file", "gpq"])]
    graph: Option<String>,
    /// File whose first nonempty line is a graph6 string
    #[arg(long, conflicts_with = "gpq")]
    file: Option<PathBuf>,
    /// Complete multipartite graph with P parts of size Q, as "P,Q"
    #[arg(long, value_name = "P,Q")]
    gpq: Option<String>,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Largest order accepted by the exhaustive solvers
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Split the enumeration across threads
    #[arg(long)]
    parallel: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            cap: self.cap,
            parallel: self.parallel,
        }
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    kappa: bool,
    #[arg(long)]
    kappa_prime: bool,
    #[arg(long)]
    kappa_q: bool,
    #[arg(long)]
    bounds: bool,
    /// All of the above (the default when none is given)
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    solver: SolverArgs,
    /// Omit timing so output is byte-stable
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Certificate JSON: {"kind": "wod"|"non_wod", "set": [..], "witness": [..]}
    #[arg(long, conflicts_with = "certificate_file")]
    certificate: Option<String>,
    #[arg(long)]
    certificate_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Comma-separated vertices, e.g. "0,2"
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Complete multipartite graph, P parts of size Q
    Gpq {
        p: usize,
        q: usize,
    },
    /// R disjoint copies of a graph
    Power {
        graph6: String,
        r: usize,
    },
    Complement {
        graph6: String,
    },
    Union {
        first: String,
        second: String,
    },
    /// Uniform random graph from a seed
    Random {
        n: usize,
        seed: u64,
    },
    /// One of: k2, k4, c4, c5, q3, petersen, cubic (all cubic graphs, n <= 10)
    Named {
        name: String,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report the fraction of trials with κ_Q below threshold·n
    #[arg(long, default_value_t = 0.811)]
    threshold: f64,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct LllArgs {
    #[arg(long, default_value_t = 1e-3)]
    grid_step: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateInput {
    kind: CertificateKind,
    set: Vec<usize>,
    witness: Vec<usize>,
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EnumerationCap { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let mut out = Output { stdout, stderr };
    let result = match cli.command {
        Command::Compute(a) => compute(&a, stdin, &mut out),
        Command::Verify(a) => verify(&a, stdin, &mut out),
        Command::Certify(a) => certify(&a, stdin, &mut out),
        Command::Generate { family } => generate(&family, &mut out),
        Command::Search(a) => search_cmd(&a, &mut out),
        Command::Lll(a) => lll(&a, &mut out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(out.stderr, "error: {}", f.message);
            f.code
        }
    }
}

struct Output<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Output<'_> {
    fn line(&mut self, text: &str) -> std::result::Result<(), Failure> {
        writeln!(self.stdout, "{text}").map_err(|e| Failure::input(format!("write failed: {e}")))
    }

    fn json(&mut self, value: &Value) -> std::result::Result<(), Failure> {
        self.line(&value.to_string())
    }
}

fn first_line(text: &str) -> Option<&str> {
    text.lines().map(str::trim).find(|l| !l.is_empty())
}

fn parse_pair(text: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::input(format!("expected P,Q with positive integers, got {text:?}"));
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        p.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

fn load_graph(src: &GraphSource, stdin: &mut dyn Read) -> std::result::Result<Graph, Failure> {
    if let Some(text) = &src.graph {
        return Ok(parse_graph6(text.trim())?);
    }
    if let Some(spec) = &src.gpq {
        let (p, q) = parse_pair(spec)?;
        return Ok(Graph::complete_multipartite(p, q)?);
    }
    let text = match &src.file {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let line = first_line(&text).ok_or_else(|| Failure::input("no graph6 input"))?;
    Ok(parse_graph6(line)?)
}

fn envelope(command: &str, g: &Graph, results: Value, timing_ms: Option<f64>) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("graph6".into(), json!(write_graph6(g)));
    map.insert("n".into(), json!(g.order()));
    map.insert("results".into(), results);
    if let Some(ms) = timing_ms {
        map.insert("timing_ms".into(), json!(ms));
    }
    map.insert("version".into(), json!(VERSION));
    Value::Object(map)
}

fn checked(g: &Graph, r: ExtremalResult) -> std::result::Result<ExtremalResult, Failure> {
    if r.verify(g) {
        Ok(r)
    } else {
        Err(Failure {
            code: EXIT_INVALID,
            message: "internal error: witness failed re-verification".into(),
        })
    }
}

fn kappa_json(r: &ExtremalResult) -> Value {
    json!({
        "value": r.value,
        "witness": r.witness,
        "wod_set": r.certified_set,
    })
}

fn kappa_prime_json(r: &ExtremalResult) -> Value {
    json!({
        "value": r.value,
        "witness": r.witness,
        "non_wod_set": r.certified_set,
    })
}

fn compute(a: &ComputeArgs, stdin: &mut dyn Read, out: &mut Output) -> Outcome {
    let g = load_graph(&a.source, stdin)?;
    let cfg = a.solver.config();
    let none = !(a.kappa || a.kappa_prime || a.kappa_q || a.bounds);
    let want = |flag: bool| flag || a.all || none;
    let start = Instant::now();
    let mut results = Map::new();

    let need_kappa = want(a.kappa) || want(a.kappa_q);
    let need_prime = want(a.kappa_prime) || want(a.kappa_q);
    let kappa = if need_kappa {
        Some(checked(&g, solvers::kappa_with(&g, &cfg)?)?)
    } else {
        None
    };
    let kappa_prime = if need_prime {
        Some(checked(&g, solvers::kappa_prime_with(&g, &cfg)?)?)
    } else {
        None
    };
    if let (true, Some(k)) = (want(a.kappa), &kappa) {
        results.insert("kappa".into(), kappa_json(k));
    }
    if let (true, Some(k)) = (want(a.kappa_prime), &kappa_prime) {
        results.insert("kappa_prime".into(), kappa_prime_json(k));
    }
    if let (true, Some(k), Some(kp)) = (want(a.kappa_q), &kappa, &kappa_prime) {
        results.insert("kappa_q".into(), json!(k.value.max(g.order() - kp.value)));
    }
    if want(a.bounds) {
        let (kl, ku) = solvers::kappa_bounds(&g)?;
        let (pl, pu) = solvers::kappa_prime_bounds(&g)?;
        results.insert("bounds".into(), json!({ "kappa": [kl, ku], "kappa_prime": [pl, pu] }));
    }
    let timing = (!a.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    out.json(&envelope("compute", &g, Value::Object(results), timing))?;
    Ok(EXIT_OK)
}

fn to_set(n: usize, vertices: &[usize], what: &str) -> std::result::Result<VertexSet, Failure> {
    VertexSet::from_vertices(n, vertices.iter().copied())
        .map_err(|e| Failure::input(format!("certificate {what}: {e}")))
}

fn verify(a: &VerifyArgs, stdin: &mut dyn Read, out: &mut Output) -> Outcome {
    let g = load_graph(&a.source, stdin)?;
    let text = match (&a.certificate, &a.certificate_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?
        }
        (None, None) => return Err(Failure::input("a certificate is required")),
    };
    let input: CertificateInput =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("malformed certificate JSON: {e}")))?;
    let n = g.order();
    let cert = WodCertificate {
        kind: input.kind,
        set: to_set(n, &input.set, "set")?,
        witness: to_set(n, &input.witness, "witness")?,
    };
    let valid = cert.verify(&g);
    if !valid {
        let reason = match cert.kind {
            CertificateKind::Wod if !cert.witness.is_disjoint(cert.set) => "witness intersects the set",
            CertificateKind::Wod => "some vertex of the set has an even number of neighbours in the witness",
            CertificateKind::NonWod if !cert.witness.is_subset(cert.set) => "witness is not contained in the set",
            CertificateKind::NonWod if cert.witness.len().is_multiple_of(2) => "witness has even size",
            CertificateKind::NonWod => "some vertex outside the set has an odd number of neighbours in the witness",
        };
        let _ = writeln!(out.stderr, "invalid certificate: {reason}");
    }
    out.json(&envelope(
        "verify",
        &g,
        json!({ "certificate": cert, "valid": valid }),
        None,
    ))?;
    Ok(if valid { EXIT_OK } else { EXIT_INVALID })
}

fn certify(a: &CertifyArgs, stdin: &mut dyn Read, out: &mut Output) -> Outcome {
    let g = load_graph(&a.source, stdin)?;
    let vertices = a
        .set
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::input(format!("bad vertex {s:?}")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let b = VertexSet::from_vertices(g.order(), vertices)?;
    let cert = wod::certify(&g, b);
    if !cert.verify(&g) {
        return Err(Failure {
            code: EXIT_INVALID,
            message: "internal error: certificate failed re-verification".into(),
        });
    }
    let results = json!({
        "certificate": cert,
        "is_wod": cert.kind == CertificateKind::Wod,
        "pi": wod::pi(&g, b),
    });
    out.json(&envelope("certify", &g, results, None))?;
    Ok(EXIT_OK)
}

fn generate(family: &Family, out: &mut Output) -> Outcome {
    let graphs = match family {
        Family::Gpq { p, q } => vec![Graph::complete_multipartite(*p, *q)?],
        Family::Power { graph6, r } => vec![parse_graph6(graph6)?.power(*r)?],
        Family::Complement { graph6 } => vec![parse_graph6(graph6)?.complement()],
        Family::Union { first, second } => vec![parse_graph6(first)?.disjoint_union(&parse_graph6(second)?)?],
        Family::Random { n, seed } => vec![Graph::random(*n, *seed)?],
        Family::Named { name } if name == "cubic" => fixtures::cubic_graphs(),
        Family::Named { name } => vec![fixtures::named(name).ok_or_else(|| {
            Failure::input(format!(
                "unknown fixture {name:?}; expected cubic or one of {}",
                fixtures::NAMES.join(", ")
            ))
        })?],
    };
    for g in &graphs {
        out.line(&write_graph6(g))?;
    }
    Ok(EXIT_OK)
}

fn search_cmd(a: &SearchArgs, out: &mut Output) -> Outcome {
    if !a.threshold.is_finite() {
        return Err(Failure::input("threshold must be finite"));
    }
    let reports = search::sample_and_measure(a.n, a.trials, a.seed, &a.solver.config())?;
    for r in &reports {
        if !r.verify() {
            return Err(Failure {
                code: EXIT_INVALID,
                message: format!("internal error: trial {} failed re-verification", r.trial),
            });
        }
        let mut value = serde_json::to_value(r).expect("report serializes");
        if !a.no_timing {
            value["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
        }
        out.json(&value)?;
    }
    let summary = search::summarize(&reports, a.threshold);
    out.json(&json!({ "summary": summary }))?;
    Ok(EXIT_OK)
}

fn lll(a: &LllArgs, out: &mut Output) -> Outcome {
    let c = search::min_feasible_c(a.grid_step)?;
    let results = json!({
        "grid_step": a.grid_step,
        "min_feasible_c": c,
        "condition_at_c_0_80_d_0_1": search::lll_asymptotic_condition(0.80, 0.1)?,
        "condition_at_c_0_811_d_0_1": search::lll_asymptotic_condition(0.811, 0.1)?,
    });
    out.json(&json!({ "command": "lll", "results": results, "version": VERSION }))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut argv = vec!["wodkit".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn parse(text: &str) -> Value {
        serde_json::from_str(text.trim()).unwrap()
    }

    #[test]
    fn compute_gpq() {
        let (code, out, _) = call(&["compute", "--gpq", "2,3", "--all", "--no-timing"], "");
        assert_eq!(code, 0);
        let v = parse(&out);
        assert_eq!(v["results"]["kappa"]["value"], 4);
        assert_eq!(v["results"]["kappa_prime"]["value"], 3);
        assert_eq!(v["results"]["kappa_q"], 4);
        assert_eq!(v["n"], 6);
        assert!(v.get("timing_ms").is_none());
    }

    #[test]
    fn compute_star_from_flag_and_stdin() {
        let (code, out, _) = call(&["compute", "--graph", "D?{", "--no-timing"], "");
        assert_eq!(code, 0);
        let (code2, out2, _) = call(&["compute", "--no-timing"], "D?{\n");
        assert_eq!(code2, 0);
        assert_eq!(out, out2);
        let v = parse(&out);
        // K_{1,4}: the leaves form a WOD set; κ' is 2 with a leaf and the centre
        assert_eq!(v["results"]["kappa"]["value"], 4);
        assert_eq!(v["results"]["kappa_prime"]["value"], 2);
        assert_eq!(v["results"]["bounds"]["kappa"], json!([4, 4]));
    }

    #[test]
    fn compute_errors() {
        assert_eq!(call(&["compute", "--graph", "D?"], "").0, 2);
        assert_eq!(call(&["compute"], "").0, 2);
        let (code, _, err) = call(&["compute", "--graph", "D?{", "--cap", "3"], "");
        assert_eq!(code, 3, "{err}");
        assert_eq!(call(&["compute", "--graph", "A_", "--file", "x"], "").0, 2);
    }

    #[test]
    fn verify_exit_codes() {
        let c4 = write_graph6(&Graph::cycle(4).unwrap());
        let ok = r#"{"kind":"wod","set":[0,2],"witness":[1]}"#;
        let bad = r#"{"kind":"wod","set":[0,2],"witness":[0]}"#;
        assert_eq!(call(&["verify", "--graph", &c4, "--certificate", ok], "").0, 0);
        let (code, _, err) = call(&["verify", "--graph", &c4, "--certificate", bad], "");
        assert_eq!(code, 1);
        assert!(err.contains("intersects"));
        assert_eq!(
            call(
                &["verify", "--graph", &c4, "--certificate", r#"{"kind":"wod","set":[0"#],
                ""
            )
            .0,
            2
        );
        assert_eq!(
            call(
                &[
                    "verify",
                    "--graph",
                    &c4,
                    "--certificate",
                    r#"{"kind":"wod","set":[9],"witness":[]}"#
                ],
                ""
            )
            .0,
            2
        );
    }

    #[test]
    fn certify_round_trips_through_verify() {
        let g6 = write_graph6(&Graph::petersen());
        for set in ["0,2", "0,1,2,3,4", ""] {
            let (code, out, _) = call(&["certify", "--graph", &g6, "--set", set], "");
            assert_eq!(code, 0);
            let cert = parse(&out)["results"]["certificate"].to_string();
            assert_eq!(call(&["verify", "--graph", &g6, "--certificate", &cert], "").0, 0);
        }
        assert_eq!(call(&["certify", "--graph", &g6, "--set", "0,x"], "").0, 2);
    }

    #[test]
    fn generate_families() {
        assert_eq!(call(&["generate", "gpq", "1", "4"], "").1, "C~\n");
        let a = call(&["generate", "random", "12", "42"], "");
        assert_eq!(a, call(&["generate", "random", "12", "42"], ""));
        let (code, out, _) = call(&["generate", "power", "A_", "3"], "");
        assert_eq!(code, 0);
        let g = parse_graph6(out.trim()).unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 3));
        assert_eq!(call(&["generate", "complement", "C~"], "").1, "C?\n");
        assert_eq!(call(&["generate", "named", "cubic"], "").1.lines().count(), 30);
        assert_eq!(call(&["generate", "named", "nope"], "").0, 2);
        assert_eq!(call(&["generate", "nope"], "").0, 2);
    }

    #[test]
    fn search_output() {
        let args = [
            "search",
            "--n",
            "14",
            "--trials",
            "20",
            "--seed",
            "1",
            "--threshold",
            "0.85",
            "--no-timing",
        ];
        let (code, out, _) = call(&args, "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 21);
        assert_eq!(parse(out.lines().last().unwrap())["summary"]["trials"], 20);
        assert_eq!(call(&args, "").1, out);
        let (code, out, _) = call(&["search", "--n", "8", "--trials", "0", "--no-timing"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        assert_eq!(parse(&out)["summary"]["trials"], 0);
        assert_eq!(call(&["search", "--n", "40", "--trials", "1"], "").0, 3);
    }

    #[test]
    fn help_and_version() {
        let (code, out, _) = call(&["--version"], "");
        assert_eq!(code, 0);
        assert!(out.contains(VERSION));
        assert_eq!(call(&["--help"], "").0, 0);
    }
}
