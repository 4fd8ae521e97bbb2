use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use projline::oracle::{corpus_axis, random_pairs, sweep, Summary, VerifyOptions};
use projline::render::{klein_dot, sails_svg};
use projline::transition::default_sail_window;
use projline::{
    all_shortest_paths, consistent_paths, corner_graph, count_shortest_paths, distance,
    factorization, hamiltonian_cycle, is_distant, klein_graph, sails, standard_path,
    standard_shortest_path, transition, Error, Path, ProjPoint,
};

/// Shortest paths in the distant graph of P(Z). Points are written `a:b`.
#[derive(Parser, Debug)]
#[command(name = "projline", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(allow_hyphen_values = true)]
    x: String,
    #[arg(allow_hyphen_values = true)]
    y: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Graph distance between two points.
    Dist(Pair),
    /// One shortest path.
    Path {
        #[command(flatten)]
        pair: Pair,
        /// Print the unreduced standard path instead.
        #[arg(long)]
        standard: bool,
    },
    /// Every shortest path.
    Paths {
        #[command(flatten)]
        pair: Pair,
        /// Print only the number of shortest paths.
        #[arg(long)]
        count: bool,
    },
    /// Both consistent paths, their lengths and whether the shorter is unique.
    Consistent(Pair),
    /// The Klein graph as DOT (default) or JSON.
    Klein {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Restrict to the corner graph.
        #[arg(long)]
        corners: bool,
    },
    /// Standard word, reduced word and the matrices of the shortest paths.
    Factor(Pair),
    /// A cycle made of two consistent paths of lengths DA and DB.
    Cycle {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long = "da")]
        d_a: u64,
        #[arg(long = "db")]
        d_b: u64,
    },
    /// Check the closed forms against breadth-first search; one JSON line per pair.
    Verify {
        /// Sweep x = 1:0 against every y with coordinates in [-MAX, MAX].
        #[arg(long, default_value_t = 0)]
        max: i64,
        /// Search bound for the brute-force graph.
        #[arg(long)]
        bound: Option<i64>,
        /// Also check N random pairs with coordinates in [-MAX, MAX].
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the repeated search at twice the bound.
        #[arg(long)]
        no_stability: bool,
    },
    /// Draw the four sails cut out by the lines through X and Y.
    Sails {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
        /// Clipping half-width (default ten times the largest coordinate).
        #[arg(long)]
        window: Option<i64>,
    },
}

enum Fail {
    Usage(String),
    Domain(String),
    Disagreement(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Fail::Usage(e.to_string()),
            Error::Internal(_) => Fail::Disagreement(e.to_string()),
            _ => Fail::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Domain(e.to_string())
    }
}

type Out = Result<String, Fail>;

fn point(s: &str) -> Result<ProjPoint, Fail> {
    Ok(s.parse::<ProjPoint>()?)
}

fn pair(p: &Pair) -> Result<(ProjPoint, ProjPoint), Fail> {
    Ok((point(&p.x)?, point(&p.y)?))
}

fn joined(ps: &[ProjPoint]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn shortest(x: ProjPoint, y: ProjPoint, standard: bool) -> Result<Path, Error> {
    if x == y || is_distant(x, y) {
        return Ok(all_shortest_paths(x, y)?.remove(0));
    }
    let td = transition(x, y)?;
    if standard {
        standard_path(&td)
    } else {
        standard_shortest_path(&td)
    }
}

fn run(cli: Cli) -> Out {
    let json = cli.json;
    match cli.cmd {
        Cmd::Dist(p) => {
            let (x, y) = pair(&p)?;
            let d = distance(x, y)?;
            Ok(if json {
                pretty(&json!({"x": x, "y": y, "distance": d}))
            } else {
                d.to_string()
            })
        }
        Cmd::Path { pair: p, standard } => {
            let (x, y) = pair(&p)?;
            let path = shortest(x, y, standard)?;
            Ok(if json {
                pretty(&path)
            } else {
                joined(path.vertices())
            })
        }
        Cmd::Paths { pair: p, count } => {
            let (x, y) = pair(&p)?;
            if count {
                let n = count_shortest_paths(x, y)?;
                return Ok(if json {
                    pretty(&json!({"x": x, "y": y, "count": n}))
                } else {
                    n.to_string()
                });
            }
            let all = all_shortest_paths(x, y)?;
            Ok(if json {
                pretty(&all)
            } else {
                all.iter()
                    .map(|p| joined(p.vertices()))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Cmd::Consistent(p) => {
            let (x, y) = pair(&p)?;
            let td = transition(x, y)?;
            let (e, f) = consistent_paths(&td)?;
            let (da, db) = (td.d_a(), td.d_b());
            let unique = da != db;
            if json {
                return Ok(pretty(&json!({
                    "x": x, "y": y, "e_path": e, "f_path": f,
                    "d_a": da, "d_b": db, "unique": unique, "transition": td.to_doc()?,
                })));
            }
            Ok(format!(
                "e: {}\nf: {}\nd_a={da} d_b={db} unique={unique}",
                joined(e.vertices()),
                joined(f.vertices())
            ))
        }
        Cmd::Klein {
            pair: p,
            dot: _,
            corners,
        } => {
            let (x, y) = pair(&p)?;
            let mut kg = klein_graph(&transition(x, y)?)?;
            if corners {
                kg = corner_graph(&kg);
            }
            Ok(if json {
                pretty(&kg.to_doc())
            } else {
                klein_dot(&kg, "klein").trim_end().to_string()
            })
        }
        Cmd::Factor(p) => {
            let (x, y) = pair(&p)?;
            let fac = factorization(x, y)?;
            if json {
                return Ok(pretty(&fac));
            }
            let mut s = format!("standard: {}\nreduced: {}", fac.standard.word, fac.reduced);
            for m in &fac.matrices {
                s.push_str(&format!("\nmatrix: {m}"));
            }
            s.push_str(&format!("\nunique={}", fac.unique));
            Ok(s)
        }
        Cmd::Cycle { x, d_a, d_b } => {
            let c = hamiltonian_cycle(point(&x)?, d_a, d_b)?;
            Ok(if json {
                pretty(&c)
            } else {
                joined(c.vertices())
            })
        }
        Cmd::Verify {
            max,
            bound,
            random,
            seed,
            no_stability,
        } => {
            if max < 1 {
                return Err(Fail::Usage("--max must be at least 1".into()));
            }
            let mut pairs = corpus_axis(max);
            pairs.extend(random_pairs(random, max, seed));
            let opts = VerifyOptions {
                bound,
                stability: !no_stability,
            };
            let reports = sweep(&pairs, opts);
            let mut out = String::new();
            for r in &reports {
                out.push_str(&serde_json::to_string(r).expect("serializable"));
                out.push('\n');
            }
            let sum = Summary::of(&reports);
            if json {
                eprintln!("{}", serde_json::to_string(&sum).expect("serializable"));
            } else {
                eprintln!("{} pairs, {} with disagreements", sum.pairs, sum.failed);
            }
            if sum.failed > 0 {
                print!("{out}");
                return Err(Fail::Disagreement(format!(
                    "{} of {} pairs disagree",
                    sum.failed, sum.pairs
                )));
            }
            Ok(out.trim_end().to_string())
        }
        Cmd::Sails {
            pair: p,
            svg,
            window,
        } => {
            let (x, y) = pair(&p)?;
            let w = window.unwrap_or_else(|| default_sail_window(x, y));
            let ss = sails(x, y, w)?;
            if let Some(file) = svg {
                std::fs::write(&file, sails_svg(&ss, w))?;
            }
            if json {
                return Ok(pretty(&ss));
            }
            let lines: Vec<String> = ss
                .iter()
                .map(|s| {
                    let vs: Vec<String> = s
                        .vertices
                        .iter()
                        .map(|v| format!("({},{})", v.u, v.v))
                        .collect();
                    vs.join(" ")
                })
                .collect();
            Ok(lines.join("\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(s) => {
            let mut out = std::io::stdout().lock();
            if !s.is_empty() {
                let _ = writeln!(out, "{s}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, msg) = match f {
                Fail::Usage(m) => (1, m),
                Fail::Domain(m) => (2, m),
                Fail::Disagreement(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
