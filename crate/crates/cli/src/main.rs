//! Command-line front end: decodes a corpus file of HamNoSys labels into
//! numeric class vectors and reports corpus-level effectiveness.
//!
//! Rows that decode cleanly go to the destination file, everything else to
//! the error file with diagnostics, so a run never stops at a bad row.
//! Reports land on stdout; progress and per-row diagnostics on stderr.
//!
//! Exit codes: 0 on success (rejected rows are data, not failure), 2 for
//! usage errors, 1 for I/O or dictionary problems.

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, ValueEnum};
use hamnosys_core::{
    decoding, effectiveness, process_file, ColumnConfig, RowResult, SymbolTable, CELL_NAMES,
    DEFAULT_GLOSS_COLUMN, DEFAULT_INPUT_COLUMNS, DEFAULT_LABEL_COLUMN,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Environment variable naming an alternative symbol dictionary.
const DICT_ENV: &str = "HAMNOSYS_DICT";

#[derive(Parser, Debug)]
#[command(
    name = "parse-hamnosys",
    version,
    about = "Decode HamNoSys notation corpora into numeric class vectors"
)]
struct Cli {
    /// Corpus file to decode (headerless, single-space separated)
    #[arg(long = "src_file", value_name = "FILE")]
    src_file: PathBuf,

    /// Cleanly decoded rows are written here
    #[arg(long = "dst_file", value_name = "FILE")]
    dst_file: PathBuf,

    /// Rejected rows with diagnostics are written here
    #[arg(long = "err_file", value_name = "FILE")]
    err_file: PathBuf,

    /// Input column names, comma separated; must include "Hamnosys"
    #[arg(
        long = "column",
        value_name = "NAMES",
        value_delimiter = ',',
        default_values_t = DEFAULT_INPUT_COLUMNS.map(String::from)
    )]
    column: Vec<String>,

    /// Output column names: input columns and/or vector cell names
    /// [default: the input columns followed by all 25 cells]
    #[arg(long = "column_out", value_name = "NAMES", value_delimiter = ',')]
    column_out: Option<Vec<String>>,

    /// Symbol dictionary file (TSV); overrides the HAMNOSYS_DICT
    /// environment variable and the built-in dictionary
    #[arg(long = "dict_file", value_name = "FILE")]
    dict_file: Option<PathBuf>,

    /// Reports to print; parsing effectiveness is always included
    #[arg(long = "report", value_enum, value_delimiter = ',')]
    report: Vec<ReportKind>,

    /// Also write the reports to this file as tab-separated values
    #[arg(long = "report_file", value_name = "FILE")]
    report_file: Option<PathBuf>,

    /// Column holding the gloss, used by the decoding report
    #[arg(long = "gloss_column", value_name = "NAME", default_value = DEFAULT_GLOSS_COLUMN)]
    gloss_column: String,

    /// Compare glosses case-insensitively in the decoding report
    #[arg(long = "fold_case")]
    fold_case: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ReportKind {
    /// Share of rows that decode cleanly
    Effectiveness,
    /// Share of glosses holding a unique vector
    Decoding,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let plan = match Plan::from_cli(&cli) {
        Ok(plan) => plan,
        Err(message) => {
            // same exit code as clap's own usage errors
            let mut cmd = Cli::command();
            eprintln!("{}", cmd.render_usage());
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    match run(&cli, plan) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(1)
        }
    }
}

/// Everything derivable from the flags alone; building it surfaces usage
/// errors before any file is touched.
struct Plan {
    config: ColumnConfig,
    gloss_index: Option<usize>,
    want_decoding: bool,
}

impl Plan {
    fn from_cli(cli: &Cli) -> Result<Plan, String> {
        for (a, name_a, b, name_b) in [
            (&cli.src_file, "--src_file", &cli.dst_file, "--dst_file"),
            (&cli.src_file, "--src_file", &cli.err_file, "--err_file"),
            (&cli.dst_file, "--dst_file", &cli.err_file, "--err_file"),
        ] {
            if a == b {
                return Err(format!("{name_a} and {name_b} must be different files"));
            }
        }

        let output_names = cli.column_out.clone().unwrap_or_else(|| {
            cli.column
                .iter()
                .cloned()
                .chain(CELL_NAMES.iter().map(|s| s.to_string()))
                .collect()
        });
        let config = ColumnConfig::new(cli.column.clone(), DEFAULT_LABEL_COLUMN, output_names)
            .map_err(|e| e.to_string())?;

        let want_decoding = cli.report.contains(&ReportKind::Decoding);
        let gloss_index = config.input_index(&cli.gloss_column);
        if want_decoding && gloss_index.is_none() {
            return Err(format!(
                "--gloss_column {:?} is not among the input columns",
                cli.gloss_column
            ));
        }
        Ok(Plan {
            config,
            gloss_index,
            want_decoding,
        })
    }
}

fn load_dictionary(cli: &Cli) -> Result<SymbolTable> {
    if let Some(path) = &cli.dict_file {
        return SymbolTable::load(path)
            .with_context(|| format!("loading dictionary {}", path.display()));
    }
    if let Ok(path) = std::env::var(DICT_ENV) {
        if !path.is_empty() {
            return SymbolTable::load(Path::new(&path))
                .with_context(|| format!("loading dictionary {path} (from {DICT_ENV})"));
        }
    }
    Ok(SymbolTable::bundled())
}

fn run(cli: &Cli, plan: Plan) -> Result<()> {
    let table = load_dictionary(cli)?;
    eprintln!("dictionary version: {}", table.version());

    let (results, ok, rejected) = process_file(
        &table,
        &plan.config,
        &cli.src_file,
        &cli.dst_file,
        &cli.err_file,
    )
    .with_context(|| format!("processing {}", cli.src_file.display()))?;

    for result in &results {
        match result {
            RowResult::Parsed { .. } => {}
            RowResult::Failed { row, outcome } => {
                let first = outcome.first_error.expect("failed rows carry an error");
                eprintln!(
                    "line {}: {} code {} at symbol {}",
                    row.line_number, first.class_name, first.code, first.position
                );
            }
            RowResult::Malformed(m) => {
                eprintln!(
                    "line {}: schema mismatch (expected {} fields, found {})",
                    m.line_number, m.expected, m.found
                );
            }
        }
    }
    eprintln!(
        "decoded {ok} rows to {}, rejected {rejected} rows to {}",
        cli.dst_file.display(),
        cli.err_file.display()
    );

    let eff = effectiveness(&results);
    print!("{}", eff.render_text());
    let mut delimited = eff.render_delimited();

    if plan.want_decoding {
        let gloss_index = plan.gloss_index.expect("validated when decoding is requested");
        let dec = decoding(&results, gloss_index, cli.fold_case);
        println!();
        print!("{}", dec.render_text());
        delimited.push_str(&dec.render_delimited());
    }

    if let Some(path) = &cli.report_file {
        std::fs::write(path, delimited)
            .with_context(|| format!("writing report {}", path.display()))?;
    }
    Ok(())
}
