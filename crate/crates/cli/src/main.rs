use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sonar_core::harness::{self, ExportFormat, Policy};
use sonar_core::search::{self, SearchMode};
use sonar_core::sidon::{self, canonical_alpha, SidonSet};
use sonar_core::verify::{check_values, Mode};
use sonar_core::{classic, fold, Budget, FieldCtx, FieldElem, SearchOptions, SonarSeq};

#[derive(Parser)]
#[command(
    name = "sonar",
    version,
    about = "Sidon sets and modular sonar sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a sonar sequence by construction name
    Construct {
        #[command(subcommand)]
        which: Construction,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check the distinct-differences property of a sequence JSON file
    Verify(VerifyArgs),
    /// Build or check Sidon sets
    Sidon {
        #[command(subcommand)]
        which: SidonCmd,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Fold a Sidon set of Z_{mb} into an m-row modular sonar sequence
    Fold {
        /// Sidon set JSON
        input: PathBuf,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for the longest sequence with m rows
    Search(SearchArgs),
    /// Check G(mod p) = p+1 and G(mod q-1) = q against constructions and search
    Relations {
        /// Values of p or q to check
        #[arg(required = true, value_delimiter = ',')]
        values: Vec<u64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Tabulate every construction over a parameter sweep
    Compare {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        q_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// TOML or JSON element policy
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// f(i) = a i^2 + b i + c mod p, p x (p+1)
    Quadratic {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c: i64,
    },
    /// Trace-log construction over GF(q^2), (q-1) x q
    Shift {
        #[arg(long)]
        q: u64,
        /// Primitive element of GF(q^2) (default: smallest)
        #[arg(long)]
        alpha: Option<u64>,
        /// Primitive element of GF(q) (default: smallest)
        #[arg(long)]
        beta: Option<u64>,
    },
    /// f(i) = alpha^(i+s) mod p; p x p, or p x (p-1) with --short
    WelchExp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i64,
        #[arg(long)]
        short: bool,
    },
    /// f(i) = log_alpha(i) mod p-1, (p-1) x (p-1)
    WelchLog {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// alpha^i + beta^f(i) = 1 over GF(q), (q-1) x (q-2)
    Golomb {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        beta: Option<u64>,
    },
    /// Bose set of Z_{q^2-1} folded with b = q+1, (q-1) x q
    BoseFold {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        theta: Option<u64>,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Ruzsa set of Z_{p(p-1)} folded with b = p, (p-1) x (p-1)
    RuzsaFoldModP {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        theta: Option<u64>,
    },
    /// Ruzsa set of Z_{p(p-1)} folded with b = p-1, p x (p-1)
    #[command(name = "ruzsa-fold-mod-p-minus-1")]
    RuzsaFoldModPMinus1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        theta: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SidonCmd {
    /// Bose set in Z_{q^2-1}
    Bose {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        theta: Option<u64>,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Ruzsa set in Z_{p(p-1)}
    Ruzsa {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        theta: Option<u64>,
    },
    /// Check that a Sidon set JSON file really is a Sidon set
    Verify { input: PathBuf },
}

#[derive(Args)]
struct VerifyArgs {
    /// Sequence JSON; reads stdin when omitted or "-"
    input: Option<PathBuf>,
    /// Check plain differences even for a modular sequence
    #[arg(long)]
    plain: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after this many search nodes
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Stop after this many milliseconds
    #[arg(long)]
    max_time_ms: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Disable the f(1) = 0 symmetry cut in modular mode
    #[arg(long)]
    no_prune: bool,
}

impl BudgetArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            budget: Budget {
                max_nodes: self.max_nodes,
                max_time: self.max_time_ms.map(Duration::from_millis),
            },
            prune_symmetry: !self.no_prune,
            threads: self.threads.max(1),
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Modular)]
    mode: ModeArg,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        // output piped into `head` and friends
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Construct { which, out } => {
            let seq = construct(which)?;
            emit_json(&seq, out.as_deref())?;
        }
        Command::Verify(args) => return verify(args),
        Command::Sidon { which, out } => match which {
            SidonCmd::Bose { q, theta, alpha } => {
                let ext = FieldCtx::quadratic_extension(q)?;
                let (theta, alpha) = bose_elements(&ext, theta, alpha)?;
                emit_json(&sidon::bose(&ext, theta, alpha)?, out.as_deref())?;
            }
            SidonCmd::Ruzsa { p, theta } => {
                let theta = prime_root(p, theta)?;
                emit_json(&sidon::ruzsa(p, theta)?, out.as_deref())?;
            }
            SidonCmd::Verify { input } => {
                let set = SidonSet::from_json_file(&input)?;
                let report = sidon::verify_sidon(&set);
                return Ok(match report.witness {
                    None => {
                        println!(
                            "ok: Sidon set of {} elements in Z_{}",
                            set.len(),
                            set.modulus()
                        );
                        ExitCode::SUCCESS
                    }
                    Some(w) => {
                        println!(
                            "fail: {}+{} = {}+{} (mod {})",
                            w.a,
                            w.b,
                            w.c,
                            w.d,
                            set.modulus()
                        );
                        ExitCode::FAILURE
                    }
                });
            }
        },
        Command::Fold { input, m, b, out } => {
            let set = SidonSet::from_json_file(&input)?;
            emit_json(&fold::fold_sidon(&set, m, b)?, out.as_deref())?;
        }
        Command::Search(args) => {
            let mode = match args.mode {
                ModeArg::Plain => SearchMode::Plain,
                ModeArg::Modular => SearchMode::Modular,
            };
            let result = search::search_max(args.m, mode, &args.budget.options())?;
            emit_json(&result, args.out.as_deref())?;
        }
        Command::Relations { values, budget } => {
            let rows = search::verify_relations(&values, &budget.options())?;
            for r in rows {
                let witness = r
                    .witness
                    .map(|(name, n)| format!("{name} (n={n})"))
                    .unwrap_or_else(|| "none".into());
                let searched = match r.search_best {
                    Some(n) if r.exhaustive => n.to_string(),
                    Some(n) => format!("{n}+"),
                    None => "-".into(),
                };
                println!(
                    "{:<24} m={:<3} expected={:<3} witness={:<28} search={:<4} {:?}",
                    r.claim, r.m, r.expected, witness, searched, r.status
                );
            }
        }
        Command::Compare {
            p_max,
            q_max,
            format,
            out,
            config,
        } => {
            let policy = match config {
                Some(path) => Policy::from_file(&path)?,
                None => Policy::default(),
            };
            let cmp = harness::run_comparison(p_max, q_max, &policy)?;
            for s in &cmp.skipped {
                eprintln!(
                    "skipped {} at {}: {}",
                    s.construction, s.parameter, s.reason
                );
            }
            let format = match format {
                Format::Csv => ExportFormat::Csv,
                Format::Json => ExportFormat::Json,
            };
            match out {
                Some(path) => harness::export(&cmp.rows, format, &path)?,
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    match format {
                        ExportFormat::Csv => harness::write_csv(&cmp.rows, &mut lock)?,
                        ExportFormat::Json => harness::write_json(&cmp.rows, &mut lock)?,
                    }
                    lock.flush()?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(which: Construction) -> anyhow::Result<SonarSeq> {
    Ok(match which {
        Construction::Quadratic { p, a, b, c } => classic::quadratic(p, a, b, c)?,
        Construction::Shift { q, alpha, beta } => {
            let ext = FieldCtx::quadratic_extension(q)?;
            let base = FieldCtx::with_order(q)?;
            let alpha = elem_or_primitive(&ext, alpha)?;
            let beta = elem_or_primitive(&base, beta)?;
            classic::shift(&ext, &base, alpha, beta)?
        }
        Construction::WelchExp { p, alpha, s, short } => {
            classic::welch_exp(p, prime_root(p, alpha)?, s, !short)?
        }
        Construction::WelchLog { p, alpha } => classic::welch_log(p, prime_root(p, alpha)?)?,
        Construction::Golomb { q, alpha, beta } => {
            let field = FieldCtx::with_order(q)?;
            let alpha = elem_or_primitive(&field, alpha)?;
            let beta = elem_or_primitive(&field, beta)?;
            classic::golomb(&field, alpha, beta)?
        }
        Construction::BoseFold { q, theta, alpha } => {
            let ext = FieldCtx::quadratic_extension(q)?;
            let (theta, alpha) = bose_elements(&ext, theta, alpha)?;
            fold::sonar_from_bose(&ext, theta, alpha)?
        }
        Construction::RuzsaFoldModP { p, theta } => {
            fold::sonar_from_ruzsa_mod_p(p, prime_root(p, theta)?)?
        }
        Construction::RuzsaFoldModPMinus1 { p, theta } => {
            fold::sonar_from_ruzsa_mod_p_minus_1(p, prime_root(p, theta)?)?
        }
    })
}

fn elem_or_primitive(field: &FieldCtx, value: Option<u64>) -> anyhow::Result<FieldElem> {
    Ok(match value {
        Some(v) => field.elem(v)?,
        None => field.primitive(),
    })
}

fn bose_elements(
    ext: &FieldCtx,
    theta: Option<u64>,
    alpha: Option<u64>,
) -> anyhow::Result<(FieldElem, FieldElem)> {
    let theta = elem_or_primitive(ext, theta)?;
    let alpha = match alpha {
        Some(v) => ext.elem(v)?,
        None => canonical_alpha(ext)?,
    };
    Ok((theta, alpha))
}

fn prime_root(p: u64, value: Option<u64>) -> anyhow::Result<u64> {
    match value {
        Some(v) => Ok(v),
        None => Ok(FieldCtx::new(p, 1)?.primitive().value()),
    }
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let (text, name) = match args.input.as_deref() {
        None => (read_stdin()?, "<stdin>".to_string()),
        Some(p) if p == Path::new("-") => (read_stdin()?, "<stdin>".to_string()),
        Some(p) => (
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            p.display().to_string(),
        ),
    };
    let seq: SonarSeq = serde_json::from_str(&text)
        .with_context(|| format!("parsing {name} as a sonar sequence"))?;
    // plain differences do not depend on the value offset, so a modular
    // sequence can be checked as-is
    let mode = if args.plain || !seq.is_modular() {
        Mode::Plain
    } else {
        Mode::Modular(seq.m())
    };
    let report = check_values(seq.values(), mode)?;
    let label = match mode {
        Mode::Plain => "plain".to_string(),
        Mode::Modular(m) => format!("mod {m}"),
    };
    match report.witness {
        None => {
            println!(
                "ok: {} x {} sequence, distinct differences ({label})",
                seq.m(),
                seq.n()
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(w) => {
            let (a, b) = (seq.values()[w.i - 1], seq.values()[w.i + w.h - 1]);
            let (c, d) = (seq.values()[w.j - 1], seq.values()[w.j + w.h - 1]);
            println!(
                "fail ({label}): shift h={} repeats at i={} and j={}: f({})-f({}) = {}-{}, f({})-f({}) = {}-{}",
                w.h,
                w.i,
                w.j,
                w.i + w.h,
                w.i,
                b,
                a,
                w.j + w.h,
                w.j,
                d,
                c
            );
            Ok(ExitCode::FAILURE)
        }
    }
}

fn read_stdin() -> anyhow::Result<String> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .context("reading stdin")?;
    if s.trim().is_empty() {
        bail!("no input on stdin");
    }
    Ok(s)
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}
