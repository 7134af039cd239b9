//! `svc`: validate, format, merge, report on and query business-model corpora.

mod load;
mod query;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use svc_core::export::{to_dot, to_graphml};
use svc_core::metrics::{robustness_curve, LowDegreeClustering};
use svc_core::report::render_text;
use svc_core::{
    build_report, merge, serialize, simple_undirected_projection, EcosystemGraph, RemovalStrategy,
    ReportOptions,
};

use load::CliError;

#[derive(Parser)]
#[command(name = "svc", version, about = "Stakeholder value-chain corpus tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CorpusArgs {
    /// Model files, or directories of `*.svc` files.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Alias map (`alias = canonical` per line).
    #[arg(long = "alias", env = "SVC_ALIASES")]
    alias: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate files; problems go to stderr.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Rewrite files in canonical form.
    Fmt {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// List files that are not canonical instead of rewriting them.
        #[arg(long)]
        check: bool,
    },
    /// Corpus, ecosystem and largest-component report.
    Report {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Lower cutoff for the power-law fit.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        k_min: u64,
        /// Entries per centrality list.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        top: u64,
        /// Leave degree-0/1 nodes out of the clustering average.
        #[arg(long)]
        exclude_low_degree: bool,
    },
    /// Draw the merged ecosystem.
    Export {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label-aware questions about the merged ecosystem.
    Query {
        #[command(subcommand)]
        query: QueryCommand,
    },
    /// Largest-component fraction as nodes are removed, as CSV.
    Robustness {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value_t = Strategy::Degree)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum QueryCommand {
    /// Payment edges received per stakeholder.
    Payments(QueryArgs),
    /// Personal-data edges received per stakeholder.
    Exposure(QueryArgs),
    /// Stakeholders that receive personal data and never pass it on.
    Sinks(QueryArgs),
    /// Received profit sufficiency per stakeholder.
    Rps(QueryArgs),
    /// Top stakeholders by degree and betweenness.
    Central {
        #[command(flatten)]
        args: QueryArgs,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        top: u64,
    },
    /// Where data from one stakeholder can end up, respecting timesteps.
    Trace {
        #[command(flatten)]
        args: QueryArgs,
        #[arg(long)]
        from: String,
        /// Comma-separated data kinds: n, p, pi, personal, all.
        #[arg(long, default_value = "personal")]
        kinds: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Graphml,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Degree,
    Random,
}

fn ecosystem(corpus: &CorpusArgs) -> Result<EcosystemGraph, CliError> {
    let models = load::corpus(&corpus.files)?;
    let aliases = load::aliases(corpus.alias.as_deref())?;
    Ok(merge(&models, aliases.as_ref())?)
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(CliError::Write)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn fmt_files(files: &[PathBuf], check: bool) -> Result<(), CliError> {
    let mut problems = 0;
    let mut pending = Vec::new();
    for path in load::expand(files)? {
        let text = load::read(&path)?;
        let (models, p) = load::check_file(&path, &text);
        problems += p;
        if p == 0 {
            let canonical = serialize(&models).expect("validated models serialize");
            if canonical != text {
                pending.push((path, canonical));
            }
        }
    }
    if problems > 0 {
        return Err(CliError::Invalid(problems));
    }
    if check {
        for (path, _) in &pending {
            println!("{}", path.display());
        }
        if !pending.is_empty() {
            return Err(CliError::Domain(format!(
                "{} file(s) not in canonical form",
                pending.len()
            )));
        }
        return Ok(());
    }
    for (path, canonical) in pending {
        write_file(&path, &canonical)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { files } => load::corpus(&files).map(|_| ()),
        Command::Fmt { files, check } => fmt_files(&files, check),
        Command::Report {
            corpus,
            format,
            k_min,
            top,
            exclude_low_degree,
        } => {
            let models = load::corpus(&corpus.files)?;
            let aliases = load::aliases(corpus.alias.as_deref())?;
            let options = ReportOptions {
                k_min: k_min as usize,
                top: top as usize,
                clustering: if exclude_low_degree {
                    LowDegreeClustering::Exclude
                } else {
                    LowDegreeClustering::Zero
                },
            };
            let doc = build_report(&models, aliases.as_ref(), options)?;
            let text = match format {
                ReportFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
                    s.push('\n');
                    s
                }
                ReportFormat::Text => render_text(&doc),
            };
            emit(&text)
        }
        Command::Export {
            corpus,
            format,
            out,
        } => {
            let eco = ecosystem(&corpus)?;
            let text = match format {
                ExportFormat::Dot => to_dot(&eco),
                ExportFormat::Graphml => to_graphml(&eco),
            };
            match out {
                Some(path) => write_file(&path, &text),
                None => emit(&text),
            }
        }
        Command::Query { query: q } => {
            let text = match q {
                QueryCommand::Payments(a) => query::payments(&ecosystem(&a.corpus)?, a.json),
                QueryCommand::Exposure(a) => query::exposure(&ecosystem(&a.corpus)?, a.json),
                QueryCommand::Sinks(a) => query::sinks(&ecosystem(&a.corpus)?, a.json),
                QueryCommand::Rps(a) => query::rps_table(&ecosystem(&a.corpus)?, a.json),
                QueryCommand::Central { args, top } => {
                    query::central(&ecosystem(&args.corpus)?, top as usize, args.json)?
                }
                QueryCommand::Trace { args, from, kinds } => {
                    query::trace(&ecosystem(&args.corpus)?, &from, &kinds, args.json)?
                }
            };
            emit(&text)
        }
        Command::Robustness {
            corpus,
            strategy,
            seed,
        } => {
            let sg = simple_undirected_projection(&ecosystem(&corpus)?);
            let strategy = match strategy {
                Strategy::Degree => RemovalStrategy::HighestDegreeFirst,
                Strategy::Random => RemovalStrategy::Random(seed),
            };
            let mut text = String::from("fraction_removed,lcc_fraction\n");
            for (f, l) in robustness_curve(&sg, strategy) {
                text.push_str(&format!("{f},{l}\n"));
            }
            emit(&text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("svc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
