//! Command-line front end: argument parsing, file loading and output formatting.
//!
//! [`dispatch`] does the work and returns the exit status with the captured output, so the
//! binary and the tests share one code path.

use std::fmt::Display;
use std::path::PathBuf;

use braidforge::braidclass::{self, ClassVerdict};
use braidforge::coxeter::{classify_type, AnySystem, CoxeterGraph, Depth, ScalarMode};
use braidforge::krammer::{self, Bounds, EssentialVerdict, NotEssentialReason};
use braidforge::surface::{self, VertexOrder};
use braidforge::words::parse_braid;
use braidforge::{dehornoy, garside, with_system};
use clap::{Parser, Subcommand, ValueEnum};

pub const SCALAR_MODE_VAR: &str = "BRAIDFORGE_SCALAR_MODE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One `key=value` record per line.
    Kv,
    /// Aligned `key: value` lines.
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Braid groups, Garside normal forms and Coxeter root systems"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "kv", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Garside normal form of a braid word.
    NormalForm {
        #[arg(long)]
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Compare two braids in the Dehornoy order.
    Compare {
        #[arg(long)]
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Periodic / reducible classification of a braid.
    Classify {
        #[arg(long)]
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Positive roots of a Coxeter graph.
    Roots {
        #[arg(long)]
        graph: PathBuf,
        /// A number of levels, or `full` for finite types.
        #[arg(long, default_value = "4")]
        depth: String,
    },
    /// Inversion set and length of a Coxeter group element.
    Inversions {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Bounded essentiality certificate.
    Essential {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = Bounds::default().depth)]
        depth: usize,
        #[arg(long, default_value_t = Bounds::default().m_max)]
        mmax: usize,
        #[arg(long, default_value_t = Bounds::default().closure_depth)]
        closure_depth: usize,
    },
    /// Monodromy surface of a small-type graph.
    Surface {
        #[arg(long)]
        graph: PathBuf,
        /// Vertex labels, smallest first.
        #[arg(long)]
        order: Option<String>,
        /// Word in the Artin generators whose homological image to print.
        #[arg(long, allow_hyphen_values = true)]
        rep: Option<String>,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    /// `auto`, `rational`, `quadratic` or `float`.
    pub scalar_mode: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<braidforge::Error> for Failure {
    fn from(e: braidforge::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

#[derive(Default)]
struct Record {
    lines: Vec<(String, String)>,
}

impl Record {
    fn put(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    fn render(&self, format: Format) -> String {
        let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.lines
            .iter()
            .map(|(k, v)| match format {
                Format::Kv => format!("{k}={v}\n"),
                Format::Text => format!("{k:<width$}  {v}\n"),
            })
            .collect()
    }
}

/// Parses arguments (first item is the program name) into a config.
pub fn parse_args<I, T>(args: I, scalar_mode: Option<String>) -> Result<RunConfig, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(RunConfig {
            command: cli.command,
            format: cli.format,
            scalar_mode: scalar_mode.unwrap_or_else(|| "auto".to_string()),
        }),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            Err(Outcome {
                code,
                stdout,
                stderr,
            })
        }
    }
}

/// Parses `args` and runs the request, reading the scalar mode from the environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args, std::env::var(SCALAR_MODE_VAR).ok()) {
        Ok(config) => dispatch(&config),
        Err(outcome) => outcome,
    }
}

/// Runs one request. Exit status 0 on success, 1 on domain errors, 2 on usage errors.
pub fn dispatch(config: &RunConfig) -> Outcome {
    let mut rec = Record::default();
    match execute(config, &mut rec) {
        Ok(()) => Outcome {
            code: 0,
            stdout: rec.render(config.format),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn load_graph(path: &PathBuf) -> Result<CoxeterGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read graph file `{}`: {e}", path.display())))?;
    Ok(CoxeterGraph::parse(&text)?)
}

/// Vertex labels or 1-based indices.
fn parse_group_word(
    graph: &CoxeterGraph,
    text: &str,
) -> Result<braidforge::coxeter::GroupWord, Failure> {
    let letters = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|tok| match graph.index_of(tok) {
            Ok(s) => Ok(s),
            Err(e) => match tok.parse::<usize>() {
                Ok(i) if i >= 1 && i <= graph.len() => Ok(i - 1),
                _ => Err(Failure::from(e)),
            },
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(braidforge::coxeter::GroupWord(letters))
}

fn system(graph: &CoxeterGraph, request: &str) -> Result<AnySystem, Failure> {
    let mode = ScalarMode::select(request, graph)?;
    Ok(AnySystem::new(graph, mode)?)
}

fn execute(config: &RunConfig, rec: &mut Record) -> Result<(), Failure> {
    match &config.command {
        Command::NormalForm { strands, word } => {
            let w = parse_braid(word, *strands)?;
            let nf = garside::group_normal_form(&w);
            rec.put("factors", &nf);
            rec.put("canonical_length", nf.canonical_length());
            rec.put("negative_factors", nf.negative().len());
            rec.put("positive_factors", nf.positive().len());
            rec.put("exponent_sum", w.exponent_sum());
        }
        Command::Compare { strands, u, v } => {
            let (u, v) = (parse_braid(u, *strands)?, parse_braid(v, *strands)?);
            let cmp = dehornoy::compare(&u, &v)?;
            let order = match cmp.ordering {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            rec.put("order", order);
            rec.put("quotient_verdict", cmp.verdict);
            rec.put("certificate", &cmp.certificate);
        }
        Command::Classify {
            strands,
            word,
            radius,
        } => {
            if *strands < 3 {
                return Err(Failure::Domain(format!(
                    "classification needs at least 3 strands, got {strands}"
                )));
            }
            let f = parse_braid(word, *strands)?;
            let verdict = braidclass::classify(&f, *radius);
            match &verdict {
                ClassVerdict::Periodic { m, k } => {
                    rec.put("verdict", "periodic");
                    rec.put("m", m);
                    rec.put("k", k);
                }
                ClassVerdict::Reducible { witness, orbit } => {
                    rec.put("verdict", "reducible");
                    rec.put("conjugator", &witness.conjugator);
                    let support: Vec<String> =
                        witness.support.iter().map(usize::to_string).collect();
                    rec.put("support", support.join(","));
                    rec.put("orbit", orbit);
                }
                ClassVerdict::NoWitnessFound { radius } => {
                    rec.put("verdict", "no-witness-found");
                    rec.put("radius", radius);
                }
            }
            rec.put("verified", braidclass::verify(&f, &verdict)?);
        }
        Command::Roots { graph, depth } => {
            let g = load_graph(graph)?;
            let depth = match depth.as_str() {
                "full" => Depth::Full,
                d => Depth::Levels(
                    d.parse()
                        .map_err(|_| Failure::Usage(format!("bad depth `{d}`")))?,
                ),
            };
            let sys = system(&g, &config.scalar_mode)?;
            rec.put("mode", sys.mode());
            rec.put("type", classify_type(&g)?);
            with_system!(&sys, s => {
                let roots = s.positive_roots(depth)?;
                rec.put("count", roots.len());
                for e in roots {
                    rec.put("root", format!("{} {}", e.depth, e.root));
                }
            });
        }
        Command::Inversions { graph, word } => {
            let g = load_graph(graph)?;
            let w = parse_group_word(&g, word)?;
            let sys = system(&g, &config.scalar_mode)?;
            rec.put("mode", sys.mode());
            with_system!(&sys, s => {
                let phi = s.inversion_set(&w);
                rec.put("length", phi.len());
                rec.put("reduced_word", g.format_word(&s.reduced_word(&w)));
                for r in phi {
                    rec.put("inversion", r);
                }
            });
        }
        Command::Essential {
            graph,
            word,
            depth,
            mmax,
            closure_depth,
        } => {
            if *mmax == 0 {
                return Err(Failure::Usage("--mmax must be positive".into()));
            }
            let g = load_graph(graph)?;
            let w = parse_group_word(&g, word)?;
            let sys = system(&g, &config.scalar_mode)?;
            let bounds = Bounds {
                depth: *depth,
                m_max: *mmax,
                closure_depth: *closure_depth,
            };
            rec.put("mode", sys.mode());
            with_system!(&sys, s => {
                match krammer::essential_certificate(s, &w, bounds)? {
                    EssentialVerdict::CertifiedEssential { witness } => {
                        rec.put("verdict", "certified-essential");
                        rec.put("odd_roots", witness.len());
                        for r in witness {
                            rec.put("odd_root", r);
                        }
                    }
                    EssentialVerdict::NotEssential(NotEssentialReason::ProperSupport { missing }) => {
                        rec.put("verdict", "not-essential");
                        rec.put("reason", "proper-support");
                        let labels: Vec<&str> = missing.iter().map(|&v| g.label(v)).collect();
                        rec.put("missing", labels.join(","));
                    }
                    EssentialVerdict::NotEssential(NotEssentialReason::FiniteOrder { order }) => {
                        rec.put("verdict", "not-essential");
                        rec.put("reason", "finite-order");
                        rec.put("order", order);
                    }
                    EssentialVerdict::Inconclusive { bounds, odd, unknown } => {
                        rec.put("verdict", "inconclusive");
                        rec.put("depth", bounds.depth);
                        rec.put("mmax", bounds.m_max);
                        rec.put("closure_depth", bounds.closure_depth);
                        rec.put("odd_roots", odd);
                        rec.put("unknown_roots", unknown);
                    }
                }
            });
        }
        Command::Surface { graph, order, rep } => {
            let g = load_graph(graph)?;
            let order = match order {
                Some(text) => VertexOrder::parse(&g, text)?,
                None => VertexOrder::natural(g.len()),
            };
            let labels: Vec<&str> = order.sequence().into_iter().map(|s| g.label(s)).collect();
            rec.put("order", labels.join(","));
            if let Some(word) = rep {
                let letters = surface::parse_artin_word(&g, word)?;
                let m = surface::homological_rep(&g, &order, &letters)?;
                put_matrix(rec, "rep_row", &m);
                return Ok(());
            }
            let sf = surface::build_surface(&g, &order)?;
            rec.put("genus", sf.genus);
            rec.put("boundary", sf.boundary_components);
            rec.put("euler_characteristic", sf.euler_characteristic);
            rec.put("components", sf.components);
            rec.put("orientable", sf.orientable);
            rec.put("h1_rank", sf.h1_rank);
            rec.put("curve_span_rank", sf.curve_span_rank);
            rec.put("sign_convention", "J(s,t)=+1 for s<t");
            put_matrix(
                rec,
                "intersection_row",
                &surface::intersection_matrix(&g, &order)?,
            );
            let report = surface::verify_artin_relations(&g, &order)?;
            rec.put("relations_checked", report.checked);
            rec.put("relations", if report.all_hold() { "ok" } else { "failed" });
            for (s, t, m) in report.failures {
                rec.put(
                    "relation_failure",
                    format!("{} {} {m}", g.label(s), g.label(t)),
                );
            }
        }
    }
    Ok(())
}

fn put_matrix(rec: &mut Record, key: &str, m: &braidforge::nalgebra::DMatrix<i64>) {
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        rec.put(key, cells.join(" "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        match parse_args(
            std::iter::once("braidforge").chain(args.iter().copied()),
            None,
        ) {
            Ok(c) => dispatch(&c),
            Err(o) => o,
        }
    }

    #[test]
    fn normal_form_example() {
        let out = go(&["normal-form", "--strands", "3", "1 2 1 1"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("factors=D.1\n"));
    }

    #[test]
    fn compare_example() {
        let out = go(&["compare", "--strands", "3", "1", "2"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("order=LT\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["roots", "--graph", "missing.cox"]).code, 2);
        assert_eq!(go(&["normal-form", "--strands", "3", "1 7"]).code, 1);
        assert_eq!(go(&["normal-form"]).code, 2);
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn text_format() {
        let out = go(&[
            "--format",
            "text",
            "normal-form",
            "--strands",
            "3",
            "1 2 1 1",
        ]);
        assert!(
            out.stdout.starts_with("factors           D.1\n"),
            "{}",
            out.stdout
        );
    }
}
