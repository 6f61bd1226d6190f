use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use koszulgraph_core::{betti_table_capped, FieldSpec, Graph, DEFAULT_BETTI_CAP};
use koszulgraph_workbench::{
    classify, emit_dot, emit_edgelist, emit_graph6, parse_edgelist, parse_graph6,
    run_verification, ClassifyOptions, Certificate, Mode, VerificationConfig,
};

const EXIT_NOT_UK: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ANOMALY: u8 = 3;

/// Decide whether the edge ring of a graph is universally Koszul, with a
/// certificate, and verify the surrounding theory over graph corpora.
#[derive(Parser)]
#[command(name = "koszulgraph", version)]
struct Cli {
    /// Worker threads for parallel phases.
    #[arg(long, global = true, env = "KOSZULGRAPH_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graph; exits 1 when it is not universally Koszul.
    Check {
        #[command(flatten)]
        input: Input,
        /// Attach the Betti table, linearity and complement chordality.
        #[arg(long)]
        consequences: bool,
        #[command(flatten)]
        algebra: Algebra,
        /// Write Graphviz DOT with the witness highlighted instead of JSON.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the graded Betti table of the edge ring.
    Betti {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        algebra: Algebra,
        /// JSON instead of the text table.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print only the certificate: a join decomposition or an obstruction.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every graph of a corpus and write a report; exits 3 on any
    /// anomaly.
    Enumerate {
        /// Smallest vertex count.
        #[arg(long, default_value_t = 1)]
        min: usize,
        /// Largest vertex count.
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = CorpusMode::Labeled)]
        mode: CorpusMode,
        /// Graphs per vertex count in sample mode.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the Betti-side checks for vertex counts up to this bound.
        #[arg(long, default_value_t = 0)]
        betti_up_to: usize,
        #[command(flatten)]
        algebra: Algebra,
        /// Second field whose Betti numbers must agree with --field.
        #[arg(long)]
        cross_field: Option<FieldSpec>,
        /// JSON report path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV summary path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Convert a graph between formats.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        to: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Input file, or `-` for stdin (the default).
    path: Option<PathBuf>,
    /// The graph itself, inline.
    #[arg(short = 'e', long = "graph", conflicts_with = "path")]
    inline: Option<String>,
    #[arg(long, value_enum, default_value_t = InputFormat::G6)]
    format: InputFormat,
}

#[derive(Args)]
struct Algebra {
    /// Coefficient field: q, gf2 or gfp:<p>.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    /// Largest vertex count for Betti computations.
    #[arg(long, default_value_t = DEFAULT_BETTI_CAP)]
    betti_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    G6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    G6,
    Edgelist,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusMode {
    Labeled,
    Canonical,
    Sample,
}

fn read_graph(input: &Input) -> Result<Graph> {
    let text = match (&input.inline, &input.path) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
    };
    match input.format {
        InputFormat::Edgelist => Ok(parse_edgelist(&text)?),
        InputFormat::G6 => {
            let text = text.strip_prefix(koszulgraph_workbench::graph6::HEADER).unwrap_or(&text);
            let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            match lines.as_slice() {
                [line] => Ok(parse_graph6(line.trim())?),
                [] => Ok(parse_graph6("")?),
                _ => bail!("expected one graph6 line, found {}", lines.len()),
            }
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn json_line<T: serde::Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Check { input, consequences, algebra, dot, out } => {
            let g = read_graph(&input)?;
            let opts = ClassifyOptions {
                with_consequences: consequences,
                field: algebra.field,
                betti_cap: algebra.betti_cap,
            };
            let c = classify(&g, opts)?;
            let text = if dot { emit_dot(&g, Some(&c)) } else { json_line(&c)? };
            emit(out.as_ref(), &text)?;
            Ok(if c.verdict.is_uk() { 0 } else { EXIT_NOT_UK })
        }
        Command::Betti { input, algebra, json, out } => {
            let g = read_graph(&input)?;
            let t = betti_table_capped(&g, algebra.field, algebra.betti_cap)?;
            let text = if json { json_line(&t)? } else { t.render() };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Decompose { input, out } => {
            let g = read_graph(&input)?;
            let c = classify(&g, ClassifyOptions::default())?;
            let text = match &c.certificate {
                Certificate::Join { decomposition } => json_line(decomposition)?,
                certificate => json_line(certificate)?,
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Enumerate {
            min,
            max,
            mode,
            count,
            seed,
            betti_up_to,
            algebra,
            cross_field,
            out,
            csv,
        } => {
            let mode = match mode {
                CorpusMode::Labeled => Mode::Labeled,
                CorpusMode::Canonical => Mode::Canonical,
                CorpusMode::Sample => Mode::Sample { count, seed },
            };
            let cfg = VerificationConfig {
                range: min..=max,
                mode,
                field: algebra.field,
                betti_up_to,
                cross_field,
                jobs: cli.jobs,
                betti_cap: algebra.betti_cap,
            };
            let report = run_verification(&cfg)?;
            emit(out.as_ref(), &(report.to_json()? + "\n"))?;
            if let Some(p) = csv {
                let f = fs::File::create(&p).with_context(|| format!("writing {}", p.display()))?;
                report.write_csv(f)?;
            }
            if !report.is_clean() {
                eprintln!("{} anomalies", report.anomalies.len());
                return Ok(EXIT_ANOMALY);
            }
            Ok(0)
        }
        Command::Convert { input, to, out } => {
            let g = read_graph(&input)?;
            let text = match to {
                OutputFormat::G6 => emit_graph6(&g) + "\n",
                OutputFormat::Edgelist => emit_edgelist(&g),
                OutputFormat::Dot => emit_dot(&g, None),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        // every failure (bad input, caps, I/O) is reported as an input error
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
