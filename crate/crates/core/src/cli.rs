//! Command-line front end. [`run`] parses arguments, dispatches, writes JSON
//! (or a plain-text rendering with `--pretty`) and returns the exit code.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::backtrack::backtrack_search;
use crate::closed_forms::{
    all_vars_inconsistency, complete_hypergraph_terms, complete_pair_sum, cycle_q_conjecture,
    cycle_q_conjecture_printed, ie_bounds, m2_inconsistency, m2_profile, path_a, path_b, path_q,
    path_q_closed, product_bound, split_complexity_bound, star_center_p01, star_q,
    tripartite_m3_inconsistency, TripartiteProfile,
};
use crate::dimacs::dimacs_export;
use crate::error::{Error, Result};
use crate::extremal::{verify_forest_max, verify_path_exchange, verify_tree_sandwich};
use crate::hypergraph::{families, Hypergraph};
use crate::monte_carlo::{mc_q, McConfig, DEFAULT_Z};
use crate::oracle::{oracle_q_with, OracleConfig, DEFAULT_INSTANCE_CAP};
use crate::rational::{Rational, RationalJson};
use crate::sweep::DEFAULT_ASSIGNMENT_CAP;
use crate::system::{random_system, RandomSource, SystemInstance};
use crate::tree_dp::forest_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sparse-f2",
    version,
    about = "Consistency probabilities of random sparse Boolean equation systems"
)]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker thread cap.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file (JSON or edge list); `-` reads stdin.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Built-in family: path:N, star:N, cycle:N, complete:N:K, disjoint:C:K.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact q and p by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        graph: GraphArgs,
        /// Include per-vertex solution-projection counts and states.
        #[arg(long)]
        vertex_states: bool,
        #[arg(long, default_value_t = DEFAULT_INSTANCE_CAP)]
        instance_cap: u64,
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        assignment_cap: usize,
    },
    /// Exact q and vertex states of a 2-uniform forest.
    Tree {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Closed-form values.
    Formula(FormulaArgs),
    /// Inclusion-exclusion and product bounds.
    Bounds {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Monte Carlo estimate of q.
    Mc {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_Z)]
        z: f64,
    },
    /// Cycle formula, optionally compared with the oracle.
    ConjectureCycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Exhaustive extremal checks.
    Extremal {
        #[command(subcommand)]
        what: ExtremalCommand,
    },
    /// Random system on a graph, as JSON.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        seed: u64,
    },
    /// DIMACS CNF of a system.
    ExportDimacs {
        /// System JSON file; `-` reads stdin.
        #[arg(long)]
        system: PathBuf,
    },
    /// Decide a system with the backtracking search.
    Solve {
        #[arg(long)]
        system: PathBuf,
    },
    /// Expected cost 2^|Y| (Q1 + q1 Q2 + q1 q2 Q) of a split solve.
    SplitBound {
        #[arg(long)]
        ysize: u32,
        /// Rational such as 3/4.
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        cost1: f64,
        #[arg(long)]
        cost2: f64,
        #[arg(long)]
        cost: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtremalCommand {
    /// Tree sandwich over all classes with the given edge count.
    Trees {
        #[arg(long)]
        n_edges: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Balanced-path forest maximum over all forests on the given vertices.
    Forests {
        #[arg(long)]
        n_vertices: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Path exchange inequality over a range.
    Exchange {
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[arg(long, default_value_t = 10)]
        max_d: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormulaName {
    Path,
    PathClosed,
    Star,
    Cycle,
    CyclePrinted,
    M2,
    Complete,
    CompletePairSum,
    AllVars,
    Tripartite,
    Sequences,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    pub name: FormulaName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub d1: Option<u32>,
    #[arg(long)]
    pub d2: Option<u32>,
    #[arg(long)]
    pub c: Option<u32>,
    /// Three comma-separated private-part sizes.
    #[arg(long, value_delimiter = ',')]
    pub private: Vec<u32>,
    /// Three comma-separated pairwise-part sizes (12, 13, 23).
    #[arg(long, value_delimiter = ',')]
    pub pairwise: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    pub inter: u32,
    #[command(flatten)]
    pub graph: GraphArgs,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::InvariantViolation(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    pretty: bool,
    threads: Option<usize>,
}

impl Io<'_> {
    fn read_source(&mut self, path: &PathBuf) -> CliResult<String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))
        }
    }

    fn graph(&mut self, g: &GraphArgs) -> CliResult<Hypergraph> {
        match (&g.graph, &g.family) {
            (Some(path), None) => Ok(Hypergraph::parse(&self.read_source(path)?)?),
            (None, Some(name)) => Ok(families::by_name(name)?),
            _ => Err(Failure::Usage(
                "exactly one of --graph or --family is required".into(),
            )),
        }
    }

    fn system(&mut self, path: &PathBuf) -> CliResult<SystemInstance> {
        let text = self.read_source(path)?;
        serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Parse(e.to_string())))
    }
}

fn rational_value(r: &Rational) -> Value {
    serde_json::to_value(RationalJson::from(r)).expect("serializable")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    let bad = || Failure::Usage(format!("not a rational: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

/// Formula output: the value's fields merged with the formula id and inputs.
fn formula_value(name: &str, inputs: Value, r: &Rational) -> Value {
    let mut v = rational_value(r);
    let obj = v.as_object_mut().expect("object");
    obj.insert("formula".into(), json!(name));
    obj.insert("inputs".into(), inputs);
    v
}

fn formula(io: &mut Io, a: &FormulaArgs) -> CliResult<Value> {
    let value = match a.name {
        FormulaName::Path => {
            let n = need(a.n, "n")?;
            formula_value("path", json!({"n": n}), &path_q(n)?)
        }
        FormulaName::PathClosed => {
            let n = need(a.n, "n")?;
            json!({"formula": "path-closed", "inputs": {"n": n}, "approx": path_q_closed(n)?})
        }
        FormulaName::Star => {
            let n = need(a.n, "n")?;
            let mut v = formula_value("star", json!({"n": n}), &star_q(n)?);
            v["center_p01"] = rational_value(&star_center_p01(n));
            v
        }
        FormulaName::Cycle => {
            let n = need(a.n, "n")?;
            formula_value("cycle", json!({"n": n}), &cycle_q_conjecture(n)?)
        }
        FormulaName::CyclePrinted => {
            let n = need(a.n, "n")?;
            formula_value(
                "cycle-printed",
                json!({"n": n}),
                &cycle_q_conjecture_printed(n)?,
            )
        }
        FormulaName::M2 => {
            let (d1, d2, c) = if a.graph.graph.is_some() || a.graph.family.is_some() {
                m2_profile(&io.graph(&a.graph)?)?
            } else {
                (need(a.d1, "d1")?, need(a.d2, "d2")?, need(a.c, "c")?)
            };
            formula_value(
                "m2",
                json!({"d1": d1, "d2": d2, "c": c}),
                &m2_inconsistency(d1, d2, c)?,
            )
        }
        FormulaName::Complete => {
            let (n, k) = (need(a.n, "n")?, need(a.k, "k")?);
            let t = complete_hypergraph_terms(n, k)?;
            json!({"formula": "complete", "inputs": {"n": n, "k": k}, "leading": rational_value(&t.leading), "error_scale": rational_value(&t.error_scale)})
        }
        FormulaName::CompletePairSum => {
            let (n, k) = (need(a.n, "n")?, need(a.k, "k")?);
            formula_value(
                "complete-pair-sum",
                json!({"n": n, "k": k}),
                &complete_pair_sum(n, k)?,
            )
        }
        FormulaName::AllVars => {
            let (n, m) = (need(a.n, "n")?, need(a.m, "m")?);
            formula_value(
                "all-vars",
                json!({"n": n, "m": m}),
                &all_vars_inconsistency(n, m)?,
            )
        }
        FormulaName::Tripartite => {
            let profile = if a.graph.graph.is_some() || a.graph.family.is_some() {
                TripartiteProfile::from_graph(&io.graph(&a.graph)?)?
            } else {
                let three = |v: &[u32], flag: &str| -> CliResult<[u32; 3]> {
                    v.try_into()
                        .map_err(|_| Failure::Usage(format!("--{flag} needs three values")))
                };
                TripartiteProfile {
                    private: three(&a.private, "private")?,
                    pairwise: three(&a.pairwise, "pairwise")?,
                    inter: a.inter,
                }
            };
            formula_value(
                "tripartite",
                to_value(&profile),
                &tripartite_m3_inconsistency(&profile)?,
            )
        }
        FormulaName::Sequences => {
            let n = need(a.n, "n")?;
            let rows: Vec<Value> = (1..=n)
                .map(|i| {
                    Ok(json!({"n": i, "a": rational_value(&path_a(i)), "b": rational_value(&path_b(i)), "q": rational_value(&path_q(i)?)}))
                })
                .collect::<Result<_>>()?;
            json!({"formula": "sequences", "inputs": {"n": n}, "rows": rows})
        }
    };
    Ok(value)
}

fn dispatch(io: &mut Io, cmd: &Command) -> CliResult<Output> {
    let v = match cmd {
        Command::Oracle {
            graph,
            vertex_states,
            instance_cap,
            assignment_cap,
        } => {
            let g = io.graph(graph)?;
            let cfg = OracleConfig {
                instance_cap: *instance_cap,
                assignment_cap: *assignment_cap,
                threads: io.threads,
                ..OracleConfig::default()
            };
            let report = oracle_q_with(&g, *vertex_states, &cfg)?;
            let mut v = to_value(&report);
            if *vertex_states {
                let states: Vec<Value> = (0..g.n())
                    .map(|i| to_value(&report.vertex_state(i)))
                    .collect();
                v["vertex_states"] = Value::Array(states);
            }
            v
        }
        Command::Tree { graph } => to_value(&forest_report(&io.graph(graph)?)?),
        Command::Formula(a) => formula(io, a)?,
        Command::Bounds { graph } => {
            let g = io.graph(graph)?;
            let ie = ie_bounds(&g)?;
            json!({
                "graph": to_value(&g),
                "ie_bounds": {"q_lower": rational_value(&ie.lower), "q_upper": rational_value(&ie.upper), "union_sum": rational_value(&ie.union_sum)},
                "product_bound": {"p_lower": rational_value(&product_bound(&g))},
            })
        }
        Command::Mc {
            graph,
            trials,
            seed,
            z,
        } => {
            let g = io.graph(graph)?;
            let cfg = McConfig {
                trials: *trials,
                seed: *seed,
                z: *z,
                threads: io.threads,
            };
            to_value(&mc_q(&g, &cfg)?)
        }
        Command::ConjectureCycle { n, verify_oracle } => {
            let formula = cycle_q_conjecture(*n)?;
            let mut v = json!({
                "n": n,
                "formula": rational_value(&formula),
                "printed_formula": rational_value(&cycle_q_conjecture_printed(*n)?),
            });
            if *verify_oracle {
                let cfg = OracleConfig {
                    threads: io.threads,
                    ..OracleConfig::default()
                };
                let oracle = oracle_q_with(&families::cycle(*n)?, false, &cfg)?.q;
                v["oracle"] = rational_value(&oracle);
                v["equal"] = json!(oracle == formula);
            }
            v
        }
        Command::Extremal { what } => match what {
            ExtremalCommand::Trees { n_edges, csv } => {
                let r = verify_tree_sandwich(*n_edges)?;
                if *csv {
                    return Ok(Output::Text(r.to_csv()));
                }
                let mut v = to_value(&r);
                v["passed"] = json!(r.passed());
                v
            }
            ExtremalCommand::Forests { n_vertices, csv } => {
                let r = verify_forest_max(*n_vertices)?;
                if *csv {
                    return Ok(Output::Text(r.to_csv()));
                }
                let mut v = to_value(&r);
                v["passed"] = json!(r.passed());
                v
            }
            ExtremalCommand::Exchange { max_k, max_d } => {
                let bad = verify_path_exchange(*max_k, *max_d)?;
                json!({"max_k": max_k, "max_d": max_d, "violations": bad, "passed": bad.is_empty()})
            }
        },
        Command::Generate { graph, seed } => {
            let g = io.graph(graph)?;
            to_value(&random_system(&g, &mut RandomSource::new(*seed)))
        }
        Command::ExportDimacs { system } => {
            let sys = io.system(system)?;
            return Ok(Output::Text(dimacs_export(&sys)));
        }
        Command::Solve { system } => {
            let sys = io.system(system)?;
            let out = backtrack_search(&sys);
            to_value(&out)
        }
        Command::SplitBound {
            ysize,
            q1,
            q2,
            cost1,
            cost2,
            cost,
        } => {
            let (r1, r2) = (parse_rational(q1)?, parse_rational(q2)?);
            let bound = split_complexity_bound(*ysize, &r1, &r2, *cost1, *cost2, *cost)?;
            json!({"ysize": ysize, "q1": rational_value(&r1), "q2": rational_value(&r2), "cost1": cost1, "cost2": cost2, "cost": cost, "bound": bound})
        }
    };
    Ok(Output::Json(v))
}

enum Output {
    Json(Value),
    Text(String),
}

fn is_rational(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() == 3 {
        let (n, d, a) = (
            o.get("num")?.as_str()?,
            o.get("den")?.as_str()?,
            o.get("approx")?,
        );
        return Some(format!("{n}/{d} (~{a})"));
    }
    None
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            let width = o.keys().map(String::len).max().unwrap_or(0).max(5);
            let mut o = o.clone();
            if let (Some(Value::String(n)), Some(Value::String(d))) = (o.get("num"), o.get("den")) {
                let approx = o.get("approx").cloned().unwrap_or(Value::Null);
                out.push_str(&format!("{pad}{:<width$}  {n}/{d} (~{approx})\n", "value"));
                for key in ["num", "den", "approx"] {
                    o.remove(key);
                }
            }
            for (k, x) in &o {
                if let Some(r) = is_rational(x) {
                    out.push_str(&format!("{pad}{k:<width$}  {r}\n"));
                } else if x.is_object()
                    || x.as_array()
                        .is_some_and(|a| a.iter().any(|e| e.is_object() || e.is_array()))
                {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k:<width$}  {x}\n"));
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if let Some(r) = is_rational(x) {
                    out.push_str(&format!("{pad}[{i}] {r}\n"));
                } else if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}[{i}] {x}\n"));
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut io = Io {
        stdin,
        pretty: cli.pretty,
        threads: cli.threads,
    };
    match dispatch(&mut io, &cli.command) {
        Ok(Output::Json(v)) => {
            let text = if io.pretty {
                let mut s = String::new();
                render(&v, 0, &mut s);
                s
            } else {
                format!("{v}\n")
            };
            match stdout.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Ok(Output::Text(t)) => match stdout.write_all(t.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["sparse-f2"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn json_of(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn formula_path() {
        let (code, out, _) = call(&["formula", "path", "--n", "3"], "");
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["num"], "2799");
        assert_eq!(v["den"], "4096");
    }

    #[test]
    fn oracle_from_stdin() {
        let (code, out, _) = call(&["oracle", "--graph", "-"], "3 2\n0 1\n1 2\n");
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["q"]["num"], "207");
        assert_eq!(v["q"]["den"], "256");
    }

    #[test]
    fn generate_round_trips() {
        let (code, sys, _) = call(&["generate", "--family", "path:3", "--seed", "4"], "");
        assert_eq!(code, 0);
        let (code, cnf, _) = call(&["export-dimacs", "--system", "-"], &sys);
        assert_eq!(code, 0);
        assert!(cnf.starts_with("p cnf 4 "));
        let (code, solved, _) = call(&["solve", "--system", "-"], &sys);
        assert_eq!(code, 0);
        assert!(json_of(&solved)["consistent"].is_boolean());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["bogus"], "").0, EXIT_USAGE);
        assert_eq!(call(&["formula", "path"], "").0, EXIT_USAGE);
        assert_eq!(call(&["oracle", "--family", "path:40"], "").0, EXIT_CAP);
        assert_eq!(
            call(
                &["oracle", "--family", "path:3", "--instance-cap", "10"],
                ""
            )
            .0,
            EXIT_CAP
        );
        assert_eq!(call(&["tree", "--family", "cycle:3"], "").0, EXIT_USAGE);
    }

    #[test]
    fn cycle_verify() {
        let (code, out, _) = call(&["conjecture-cycle", "--n", "3", "--verify-oracle"], "");
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["equal"], true);
        assert_eq!(v["oracle"]["num"], "2397");
    }

    #[test]
    fn pretty_output() {
        let (code, out, _) = call(&["--pretty", "formula", "star", "--n", "3"], "");
        assert_eq!(code, 0);
        assert!(out.contains("2727/4096"));
    }

    #[test]
    fn split_bound() {
        let (code, out, _) = call(
            &[
                "split-bound",
                "--ysize",
                "2",
                "--q1",
                "1/2",
                "--q2",
                "1/4",
                "--cost1",
                "1",
                "--cost2",
                "1",
                "--cost",
                "1",
            ],
            "",
        );
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["bound"], 6.5);
    }

    #[test]
    fn tripartite_from_flags() {
        let (code, out, _) = call(
            &[
                "formula",
                "tripartite",
                "--private",
                "1,1,1",
                "--pairwise",
                "0,0,0",
            ],
            "",
        );
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(
            (v["num"].as_str(), v["den"].as_str()),
            (Some("37"), Some("64"))
        );
    }
}
