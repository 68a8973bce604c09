//! The `relcyl` command line. Exit codes: 0 success or holds, 1 checked and
//! failed (violations, budget exhausted), 2 usage or format error.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::axioms::{check_class, AxiomSystem, CheckOptions};
use crate::bao::{Dimension, Element, FiniteBao};
use crate::config::Limits;
use crate::duality::{complex_algebra, search_superamalgam, tuple_frame, zigzag_product, AmalgamOutcome, AmalgamProblem, Frame, World};
use crate::error::{Error, Result};
use crate::game::{play, GameConfig, Strategy};
use crate::networks::{build_pt, build_t, check_network, NetMode, PreNetwork};
use crate::represent::{check_complete, extract, verify, Representation};
use crate::setalg::{abstract_unit, classify_unit, SetClass, Unit};
use crate::terms::{check_equation, eval_term, parse_equation, parse_term, CheckMode, CheckOutcome};
use crate::transform::{decompose, hat, FiniteTransformation, SubstWord};

#[derive(Parser, Debug)]
#[command(name = "relcyl", version, about = "Finite relativized cylindric-like algebras: axioms, games, representations, frames")]
pub struct Cli {
    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the main output here instead of stdout (a directory for `represent`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an algebra against an axiom system.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        class: AxiomSystem,
        #[arg(long)]
        s7_alt: bool,
    },
    /// Play the representation game and verify the result.
    Represent {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        game: GameArgs,
    },
    /// Verify a representation file against an algebra.
    VerifyRep {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value = "PTA")]
        mode: NetMode,
    },
    #[command(subcommand)]
    Setalg(SetalgCommand),
    /// Recover the diagonals of a diagonal-free algebra.
    DefineDiagonals {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Drop the operators outside a class's signature.
    Reduct {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        class: AxiomSystem,
    },
    /// Evaluate a term, or decide an equation (`=` or `<=`).
    Eval {
        #[arg(long)]
        algebra: PathBuf,
        expr: String,
        /// Values of x0, x1, … as a JSON array of atom-index arrays.
        #[arg(long)]
        assign: Option<String>,
        /// Check every assignment even when generators would do.
        #[arg(long)]
        exhaustive: bool,
    },
    #[command(subcommand)]
    Word(WordCommand),
    #[command(subcommand)]
    Network(NetworkCommand),
    /// Complex algebra of a frame, with its validity report.
    Complex {
        #[arg(long)]
        frame: PathBuf,
    },
    /// The frame of a unit closed under finite transformations.
    TupleFrame {
        #[arg(long)]
        unit: PathBuf,
    },
    /// Zigzag product of frames; the carrier defaults to the full product.
    Zigzag {
        #[arg(long, required = true)]
        frame: Vec<PathBuf>,
        #[arg(long)]
        carrier: Option<PathBuf>,
    },
    /// Search for a superamalgam of a small amalgamation problem.
    Amalgam {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
}

#[derive(Args, Debug)]
struct GameArgs {
    #[arg(long, default_value = "PTA")]
    mode: NetMode,
    #[arg(long, default_value = "atomic-fast")]
    strategy: Strategy,
    #[arg(long, default_value_t = 10_000)]
    max_rounds: usize,
    #[arg(long, default_value_t = 512)]
    max_nodes: usize,
    /// Always answer witness moves with a fresh node.
    #[arg(long)]
    no_reuse: bool,
}

#[derive(Subcommand, Debug)]
enum SetalgCommand {
    /// The full unit `ⁿbase`.
    Build {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        base: usize,
    },
    /// The abstract algebra of the full set algebra over a unit.
    Abstract {
        #[arg(long)]
        unit: PathBuf,
        #[arg(long, default_value = "Crs")]
        class: SetClass,
    },
    Classify {
        #[arg(long)]
        unit: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum WordCommand {
    /// The transformation of a word, e.g. `[["sub",0,1],["swap",1,2]]`.
    Hat {
        #[arg(long)]
        dim: usize,
        word: String,
    },
    /// A word for a transformation, e.g. `[1,0,2]`.
    Decompose { map: String },
}

#[derive(Subcommand, Debug)]
enum NetworkCommand {
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        network: PathBuf,
        #[arg(long, default_value = "PTA")]
        mode: NetMode,
    },
    /// Partial transposition network of an atom over a node tuple.
    Pt {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        atom: usize,
        #[arg(long)]
        tuple: String,
    },
    /// Transposition network of an atom over a node tuple.
    T {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        atom: usize,
        #[arg(long)]
        tuple: String,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path, limits: &Limits) -> Result<FiniteBao> {
    FiniteBao::from_json(&read(path)?, limits)
}

fn load_unit(path: &Path, limits: &Limits) -> Result<Unit> {
    Unit::from_json(&read(path)?, limits)
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// What a command produced: the text to emit and whether the check passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Closure(_)
        | Error::Precondition(_)
        | Error::Zigzag { .. }
        | Error::Invariant(_)
        | Error::Budget(_)
        | Error::IllegalMove(_) => 1,
        _ => 2,
    }
}

/// Runs the command line, writing to stdout/stderr; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = cli.out.as_ref().filter(|_| !matches!(cli.command, Command::Represent { .. })) {
                if let Err(e) = fs::write(path, &out.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            } else if let Err(e) = writeln!(std::io::stdout().lock(), "{}", out.text) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: stdout: {e}");
                    return 2;
                }
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let limits = Limits::from_env();
    match &cli.command {
        Command::Check { algebra, class, s7_alt } => {
            let a = load_algebra(algebra, &limits)?;
            let opts = CheckOptions { s7_alt: *s7_alt, ..CheckOptions::default() };
            let report = check_class(&a, *class, opts, &limits)?;
            Ok(Output { text: report.to_json(), ok: report.is_empty() })
        }
        Command::Represent { algebra, game } => represent(algebra, game, cli.out.as_deref(), &limits),
        Command::VerifyRep { algebra, rep, mode } => {
            let a = load_algebra(algebra, &limits)?;
            let r = Representation::from_json(&read(rep)?)?;
            let report = verify(&a, &r, *mode);
            let complete = check_complete(&r);
            let ok = report.passed() && complete && r.saturated;
            let text = pretty(&serde_json::json!({ "report": report, "complete": complete, "saturated": r.saturated }));
            Ok(Output { text, ok })
        }
        Command::Setalg(SetalgCommand::Build { dim, base }) => {
            Ok(Output::ok(Unit::full(Dimension::with_limits(*dim, &limits)?, *base)?.to_json()))
        }
        Command::Setalg(SetalgCommand::Abstract { unit, class }) => {
            Ok(Output::ok(abstract_unit(&load_unit(unit, &limits)?, *class)?.to_json()))
        }
        Command::Setalg(SetalgCommand::Classify { unit }) => Ok(Output::ok(pretty(&classify_unit(&load_unit(unit, &limits)?)))),
        Command::DefineDiagonals { algebra } => {
            let a = load_algebra(algebra, &limits)?;
            Ok(Output::ok(a.define_diagonals(limits.max_atoms)?.to_json()))
        }
        Command::Reduct { algebra, class } => {
            Ok(Output::ok(load_algebra(algebra, &limits)?.reduct(class.required())?.to_json()))
        }
        Command::Eval { algebra, expr, assign, exhaustive } => {
            let a = load_algebra(algebra, &limits)?;
            let values: Vec<Element> = match assign {
                Some(s) => serde_json::from_str(s)?,
                None => Vec::new(),
            };
            if expr.contains('=') {
                let e = parse_equation(expr, a.dim())?;
                let mode = if *exhaustive { CheckMode::AllElements } else { CheckMode::Generators };
                Ok(match check_equation(&a, &e, mode, &limits)? {
                    CheckOutcome::Holds => Output::ok(pretty(&serde_json::json!({ "holds": true }))),
                    CheckOutcome::Fails(cex) => Output {
                        text: pretty(&serde_json::json!({ "holds": false, "counterexample": cex })),
                        ok: false,
                    },
                })
            } else {
                let t = parse_term(expr, a.dim())?;
                if values.len() < t.arity() {
                    return Err(Error::UnboundVariable(values.len()));
                }
                Ok(Output::ok(pretty(&eval_term(&a, &t, &values)?)))
            }
        }
        Command::Word(WordCommand::Hat { dim, word }) => {
            let n = Dimension::with_limits(*dim, &limits)?.get();
            let w: SubstWord = serde_json::from_str(word)?;
            w.check(n)?;
            Ok(Output::ok(pretty(&hat(&w, n))))
        }
        Command::Word(WordCommand::Decompose { map }) => {
            let tau = FiniteTransformation::new(serde_json::from_str(map)?)?;
            Ok(Output::ok(pretty(&decompose(&tau))))
        }
        Command::Network(NetworkCommand::Check { algebra, network, mode }) => {
            let a = load_algebra(algebra, &limits)?;
            let net = PreNetwork::from_json(&read(network)?)?;
            let report = check_network(&a, &net, *mode);
            Ok(Output { text: pretty(&report), ok: report.is_empty() })
        }
        Command::Network(NetworkCommand::Pt { algebra, atom, tuple }) | Command::Network(NetworkCommand::T { algebra, atom, tuple }) => {
            let a = load_algebra(algebra, &limits)?;
            if *atom >= a.num_atoms() {
                return Err(Error::Format(format!("atom {atom} ≥ {}", a.num_atoms())));
            }
            let x: Vec<usize> = serde_json::from_str(tuple)?;
            let net = if matches!(cli.command, Command::Network(NetworkCommand::Pt { .. })) {
                build_pt(&a, a.atom(*atom), &x)?
            } else {
                build_t(&a, a.atom(*atom), &x)?
            };
            Ok(Output::ok(net.to_json()))
        }
        Command::Complex { frame } => {
            let (a, report) = complex_algebra(&Frame::from_json(&read(frame)?)?)?;
            let text = pretty(&serde_json::json!({ "algebra": a.to_parts(), "report": report }));
            Ok(Output { text, ok: report.is_empty() })
        }
        Command::TupleFrame { unit } => Ok(Output::ok(tuple_frame(&load_unit(unit, &limits)?)?.to_json())),
        Command::Zigzag { frame, carrier } => {
            let frames = frame.iter().map(|p| Frame::from_json(&read(p)?)).collect::<Result<Vec<_>>>()?;
            let carrier: Vec<Vec<World>> = match carrier {
                Some(p) => serde_json::from_str(&read(p)?)?,
                None => frames.iter().fold(vec![Vec::new()], |acc, f| {
                    acc.into_iter()
                        .flat_map(|u| {
                            (0..f.worlds).map(move |x| {
                                let mut v = u.clone();
                                v.push(x);
                                v
                            })
                        })
                        .collect()
                }),
            };
            Ok(Output::ok(zigzag_product(&frames, &carrier)?.to_json()))
        }
        Command::Amalgam { problem, bound } => {
            let p = AmalgamProblem::from_json(&read(problem)?, &limits)?;
            Ok(match search_superamalgam(&p, *bound, &limits)? {
                AmalgamOutcome::Found { d, certificate } => Output::ok(pretty(&serde_json::json!({
                    "found": true,
                    "algebra": d.to_parts(),
                    "certificate": certificate,
                }))),
                AmalgamOutcome::NotFoundWithinBound => Output { text: pretty(&serde_json::json!({ "found": false })), ok: false },
            })
        }
    }
}

fn represent(algebra: &Path, game: &GameArgs, out: Option<&Path>, limits: &Limits) -> Result<Output> {
    let a = load_algebra(algebra, limits)?;
    let sys = match game.mode {
        NetMode::Pta => AxiomSystem::Pta,
        NetMode::Tea => AxiomSystem::Tea,
    };
    let axioms = check_class(&a, sys, CheckOptions::default(), limits)?;
    if !axioms.is_empty() {
        return Ok(Output {
            text: pretty(&serde_json::json!({ "refused": format!("the algebra fails {sys}"), "violations": axioms })),
            ok: false,
        });
    }
    let cfg = GameConfig {
        mode: game.mode,
        strategy: game.strategy,
        max_rounds: game.max_rounds,
        max_nodes: game.max_nodes,
        reuse: !game.no_reuse,
    };
    let p = play(&a, cfg)?;
    let rep = extract(&a, &p);
    let report = verify(&a, &rep, game.mode);
    let complete = check_complete(&rep);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        let write = |name: &str, text: &str| {
            fs::write(dir.join(name), text).map_err(|e| Error::Io(format!("{name}: {e}")))
        };
        write("play.json", &p.to_json())?;
        write("representation.json", &rep.to_json())?;
        write("verify.json", &report.to_json())?;
    }
    let ok = p.outcome.is_saturated() && report.passed() && complete;
    let text = pretty(&serde_json::json!({
        "outcome": p.outcome,
        "rounds": p.rounds.len(),
        "nodes": p.m.nodes.len(),
        "edges": rep.edges.len(),
        "verify_passed": report.passed(),
        "failed_checks": report.failed().map(|c| c.name.clone()).collect::<Vec<_>>(),
        "complete": complete,
    }));
    Ok(Output { text, ok })
}
