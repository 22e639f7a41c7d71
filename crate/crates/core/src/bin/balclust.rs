use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use balclust::graph::{EditSet, Instance, Variant};
use balclust::harness::gen::{gen_cluster, gen_example1, gen_hardness, gen_random, N3DMInput};
use balclust::harness::io::{parse_instance, serialize_instance, ParseError};
use balclust::harness::run::{bench, selftest, solve_report, Algo};
use balclust::{kernel_bound, kernelize, Outcome};

macro_rules! out {
    ($($t:tt)*) => {
        write!(std::io::stdout(), $($t)*)?
    };
}

macro_rules! outln {
    ($($t:tt)*) => {
        writeln!(std::io::stdout(), $($t)*)?
    };
}

#[derive(Parser)]
#[command(
    name = "balclust",
    version,
    about = "Balanced cluster completion, deletion and editing"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Oracle,
    Partition,
    Fast,
    Branch,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Bcc,
    Bcd,
    Bce,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance file and print a witness.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        algo: AlgoArg,
    },
    /// Run the kernel and print the reduced instance and rule trace.
    Kernelize {
        file: PathBuf,
        /// Override the variant given in the file header.
        #[arg(long, value_enum)]
        problem: Option<Problem>,
        /// Write the reduced instance here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance file on standard output.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Kernel shrinkage on seeded random instances.
    Bench {
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check all solvers and kernels on the built-in corpus.
    Selftest {
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "BCE")]
        variant: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        eta: usize,
    },
    Cluster {
        /// Comma separated clique sizes.
        sizes: String,
        #[arg(long, default_value = "BCC")]
        variant: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        eta: usize,
    },
    Example1 {
        k: usize,
        n: usize,
    },
    Hardness {
        t: u64,
        /// Comma separated.
        a: String,
        b: String,
        c: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
}

/// Errors that should exit with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn variant(s: &str) -> Result<Variant> {
    Variant::parse(s).ok_or_else(|| Usage(format!("unknown variant `{s}`")).into())
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Usage(format!("bad list entry `{x}`")).into())
        })
        .collect()
}

fn load(path: &PathBuf) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| path.display().to_string())
}

fn print_edits(f: &EditSet) -> Result<()> {
    for (u, v) in &f.additions {
        outln!("add: {u} {v}");
    }
    for (u, v) in &f.deletions {
        outln!("delete: {u} {v}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Solve { file, algo } => {
            let inst = load(&file)?;
            let algo = match algo {
                AlgoArg::Oracle => Algo::Oracle,
                AlgoArg::Partition => Algo::Partition,
                AlgoArg::Fast => Algo::Fast,
                AlgoArg::Branch => Algo::Branch,
            };
            let r = solve_report(&inst, algo)?;
            outln!("variant: {}", inst.variant);
            outln!("algo: {algo}");
            outln!("answer: {}", if r.answer.is_some() { "yes" } else { "no" });
            if let Some(f) = &r.answer {
                outln!("edits: {}", f.len());
                print_edits(f)?;
                outln!("verified: {}", r.verified);
            }
            outln!("time_ms: {:.3}", r.elapsed.as_secs_f64() * 1e3);
        }
        Cmd::Kernelize { file, problem, out } => {
            let mut inst = load(&file)?;
            if let Some(p) = problem {
                inst.variant = match p {
                    Problem::Bcc => Variant::Bcc,
                    Problem::Bcd => Variant::Bcd,
                    Problem::Bce => Variant::Bce,
                };
            }
            let t = Instant::now();
            let r = kernelize(&inst)?;
            let elapsed = t.elapsed();
            for e in &r.trace {
                outln!("rule: {e}");
            }
            match r.outcome {
                Outcome::TrivialYes => outln!("answer: yes"),
                Outcome::TrivialNo => outln!("answer: no"),
                Outcome::Reduced { instance, .. } => {
                    outln!("answer: reduced");
                    outln!("n_out: {}", instance.graph.n());
                    outln!("bound: {}", kernel_bound(instance.variant, instance.k));
                    let text = serialize_instance(&instance);
                    match out {
                        Some(p) => fs::write(&p, text)
                            .with_context(|| format!("writing {}", p.display()))?,
                        None => out!("{text}"),
                    }
                }
            }
            outln!("time_ms: {:.3}", elapsed.as_secs_f64() * 1e3);
        }
        Cmd::Gen { kind } => {
            let inst = match kind {
                GenKind::Random {
                    n,
                    p,
                    seed,
                    variant: v,
                    k,
                    eta,
                } => {
                    let g = gen_random(n, p, seed).map_err(|e| Usage(e.to_string()))?;
                    Instance::new(g, k, eta, variant(&v)?).map_err(|e| Usage(e.to_string()))?
                }
                GenKind::Cluster {
                    sizes,
                    variant: v,
                    k,
                    eta,
                } => Instance::new(gen_cluster(&list(&sizes)?), k, eta, variant(&v)?)?,
                GenKind::Example1 { k, n } => {
                    gen_example1(k, n).map_err(|e| Usage(e.to_string()))?
                }
                GenKind::Hardness { t, a, b, c, d } => {
                    let input = N3DMInput {
                        t,
                        a: list(&a)?,
                        b: list(&b)?,
                        c: list(&c)?,
                    };
                    gen_hardness(&input, d)
                        .map_err(|e| Usage(e.to_string()))?
                        .instance
                }
            };
            out!("{}", serialize_instance(&inst));
        }
        Cmd::Bench { n, k, count, seed } => {
            for row in bench(n, k, count, seed)? {
                let out = row.n_out.map_or("decided".to_string(), |x| x.to_string());
                let ratio = row.n_out.map_or(0.0, |x| x as f64 / row.bound as f64);
                outln!(
                    "variant: {} n_in: {} k: {} n_out: {out} bound: {} ratio: {ratio:.4} time_ms: {:.3}",
                    row.variant,
                    row.n_in,
                    row.k,
                    row.bound,
                    row.elapsed.as_secs_f64() * 1e3
                );
            }
        }
        Cmd::Selftest { deep } => {
            let sum = selftest(deep);
            outln!("instances: {}", sum.instances);
            outln!("checks: {}", sum.checks);
            outln!("failures: {}", sum.failures.len());
            for f in &sum.failures {
                outln!("failure: {f}");
            }
            if !sum.failures.is_empty() {
                bail!("{} self-test checks failed", sum.failures.len());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let closed = e.chain().any(|c| {
                c.downcast_ref::<std::io::Error>()
                    .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            });
            if closed {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<ParseError>() || c.is::<Usage>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
