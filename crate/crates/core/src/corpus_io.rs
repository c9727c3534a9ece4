//! Corpus file handling: headerless space-separated rows in, decoded rows
//! out.
//!
//! A corpus file carries one annotation per line, fields separated by single
//! spaces, with no header line; the column layout is configuration. Rows
//! whose field count disagrees with the configured layout are kept as
//! schema mismatches so they can be reported without stopping the run.
//! Decoding runs in parallel but the output order always matches the input
//! order, so repeated runs over the same file produce identical bytes.

use crate::parser::{parse_label, ParseOutcome, ParseStatus};
use crate::symbol_table::SymbolTable;
use crate::vector::{ClassVector, CELL_NAMES};
use rayon::prelude::*;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

/// Column layout of the corpus files this tool was built around.
pub const DEFAULT_INPUT_COLUMNS: [&str; 6] = ["Name", "Start", "End", "Dict", "Word", "Hamnosys"];

/// Default name of the column holding the notation.
pub const DEFAULT_LABEL_COLUMN: &str = "Hamnosys";

/// Default name of the column holding the gloss.
pub const DEFAULT_GLOSS_COLUMN: &str = "Word";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("at least one input column is required")]
    NoInputColumns,
    #[error("duplicate input column {0:?}")]
    DuplicateInput(String),
    #[error("label column {0:?} is not among the input columns")]
    LabelColumnUnknown(String),
    #[error("output column {0:?} is neither an input column nor a cell name")]
    OutputUnknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputColumn {
    /// Echo an input field.
    Input(usize),
    /// Emit one cell of the decoded vector.
    Cell(usize),
}

/// Where the fields live on each line and what the output rows carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnConfig {
    input_names: Vec<String>,
    label_index: usize,
    output_names: Vec<String>,
    outputs: Vec<OutputColumn>,
}

impl ColumnConfig {
    /// Output names resolve against the input columns first and the cell
    /// names of the decoded vector second.
    pub fn new(
        input_names: Vec<String>,
        label_column: &str,
        output_names: Vec<String>,
    ) -> Result<ColumnConfig, ConfigError> {
        if input_names.is_empty() {
            return Err(ConfigError::NoInputColumns);
        }
        for (i, name) in input_names.iter().enumerate() {
            if input_names[..i].contains(name) {
                return Err(ConfigError::DuplicateInput(name.clone()));
            }
        }
        let label_index = input_names
            .iter()
            .position(|n| n == label_column)
            .ok_or_else(|| ConfigError::LabelColumnUnknown(label_column.to_string()))?;
        let outputs = output_names
            .iter()
            .map(|name| {
                if let Some(i) = input_names.iter().position(|n| n == name) {
                    Ok(OutputColumn::Input(i))
                } else if let Some(i) = CELL_NAMES.iter().position(|n| n == name) {
                    Ok(OutputColumn::Cell(i))
                } else {
                    Err(ConfigError::OutputUnknown(name.clone()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ColumnConfig {
            input_names,
            label_index,
            output_names,
            outputs,
        })
    }

    /// The stock layout: the six input columns echoed back, followed by all
    /// 25 cells of the decoded vector.
    pub fn default_config() -> ColumnConfig {
        let inputs: Vec<String> = DEFAULT_INPUT_COLUMNS.iter().map(|s| s.to_string()).collect();
        let outputs = inputs
            .iter()
            .cloned()
            .chain(CELL_NAMES.iter().map(|s| s.to_string()))
            .collect();
        ColumnConfig::new(inputs, DEFAULT_LABEL_COLUMN, outputs)
            .expect("stock layout is consistent")
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.input_names.iter().position(|n| n == name)
    }

    pub fn label_index(&self) -> usize {
        self.label_index
    }
}

impl Default for ColumnConfig {
    fn default() -> Self {
        ColumnConfig::default_config()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    /// 1-based line number in the source file.
    pub line_number: usize,
    pub fields: Vec<String>,
}

/// A line whose field count disagrees with the configured layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaMismatch {
    pub line_number: usize,
    pub expected: usize,
    pub found: usize,
    pub raw: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReadRecord {
    Row(CorpusRow),
    Mismatch(SchemaMismatch),
}

/// Splits on single spaces; consecutive spaces therefore produce empty
/// fields and surface as schema mismatches instead of silently merging.
pub fn read_corpus_str(text: &str, config: &ColumnConfig) -> Vec<ReadRecord> {
    let expected = config.input_names.len();
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let fields: Vec<String> = line.split(' ').map(str::to_string).collect();
            let line_number = i + 1;
            if fields.len() == expected {
                ReadRecord::Row(CorpusRow {
                    line_number,
                    fields,
                })
            } else {
                ReadRecord::Mismatch(SchemaMismatch {
                    line_number,
                    expected,
                    found: fields.len(),
                    raw: line.to_string(),
                })
            }
        })
        .collect()
}

pub fn read_corpus(path: &Path, config: &ColumnConfig) -> io::Result<Vec<ReadRecord>> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    Ok(read_corpus_str(&text, config))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowResult {
    Parsed { row: CorpusRow, outcome: ParseOutcome },
    Failed { row: CorpusRow, outcome: ParseOutcome },
    Malformed(SchemaMismatch),
}

impl RowResult {
    pub fn is_parsed(&self) -> bool {
        matches!(self, RowResult::Parsed { .. })
    }

    pub fn line_number(&self) -> usize {
        match self {
            RowResult::Parsed { row, .. } | RowResult::Failed { row, .. } => row.line_number,
            RowResult::Malformed(m) => m.line_number,
        }
    }

    pub fn vector(&self) -> Option<&ClassVector> {
        match self {
            RowResult::Parsed { outcome, .. } | RowResult::Failed { outcome, .. } => {
                Some(&outcome.vector)
            }
            RowResult::Malformed(_) => None,
        }
    }
}

/// Decodes every row. Rows are processed in parallel; the result order is
/// the input order regardless of thread count.
pub fn parse_records(
    table: &SymbolTable,
    records: Vec<ReadRecord>,
    config: &ColumnConfig,
) -> Vec<RowResult> {
    records
        .into_par_iter()
        .map(|record| match record {
            ReadRecord::Mismatch(m) => RowResult::Malformed(m),
            ReadRecord::Row(row) => {
                let outcome = parse_label(table, &row.fields[config.label_index]);
                match outcome.status {
                    ParseStatus::Parsed => RowResult::Parsed { row, outcome },
                    ParseStatus::Failed => RowResult::Failed { row, outcome },
                }
            }
        })
        .collect()
}

fn projected_fields(row: &CorpusRow, outcome: &ParseOutcome, config: &ColumnConfig) -> Vec<String> {
    config
        .outputs
        .iter()
        .map(|col| match col {
            OutputColumn::Input(i) => row.fields[*i].clone(),
            OutputColumn::Cell(i) => outcome.vector.cell(*i).to_string(),
        })
        .collect()
}

/// Writes decoded rows to `dst` and everything else to `err`, returning
/// `(decoded, rejected)` line counts.
///
/// Rejected parse rows carry the same projected columns (error cells show
/// their negative codes) plus four diagnostic fields: line number, the name
/// of the first failing cell, its error code, and the 0-based symbol
/// position. Schema mismatches carry the raw line, the line number, a
/// `Schema` tag with the expected/found field counts, and `-` in the
/// position field.
pub fn write_results<W1: Write, W2: Write>(
    dst: &mut W1,
    err: &mut W2,
    results: &[RowResult],
    config: &ColumnConfig,
) -> io::Result<(usize, usize)> {
    let mut ok = 0usize;
    let mut rejected = 0usize;
    for result in results {
        match result {
            RowResult::Parsed { row, outcome } => {
                writeln!(dst, "{}", projected_fields(row, outcome, config).join(" "))?;
                ok += 1;
            }
            RowResult::Failed { row, outcome } => {
                let first = outcome
                    .first_error
                    .expect("failed outcomes carry their first error");
                writeln!(
                    err,
                    "{} {} {} {} {}",
                    projected_fields(row, outcome, config).join(" "),
                    row.line_number,
                    first.class_name,
                    first.code,
                    first.position,
                )?;
                rejected += 1;
            }
            RowResult::Malformed(m) => {
                writeln!(
                    err,
                    "{} {} Schema expected={},found={} -",
                    m.raw, m.line_number, m.expected, m.found,
                )?;
                rejected += 1;
            }
        }
    }
    Ok((ok, rejected))
}

/// Reads `src`, decodes every row, writes `dst` and `err`, and hands the
/// results back for reporting.
pub fn process_file(
    table: &SymbolTable,
    config: &ColumnConfig,
    src: &Path,
    dst: &Path,
    err: &Path,
) -> io::Result<(Vec<RowResult>, usize, usize)> {
    let records = read_corpus(src, config)?;
    let results = parse_records(table, records, config);
    let mut dst_file = BufWriter::new(File::create(dst)?);
    let mut err_file = BufWriter::new(File::create(err)?);
    let (ok, rejected) = write_results(&mut dst_file, &mut err_file, &results, config)?;
    dst_file.flush()?;
    err_file.flush()?;
    Ok((results, ok, rejected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Cell;
    use std::sync::OnceLock;

    fn table() -> &'static SymbolTable {
        static TABLE: OnceLock<SymbolTable> = OnceLock::new();
        TABLE.get_or_init(SymbolTable::bundled)
    }

    fn label(names: &[&str]) -> String {
        names
            .iter()
            .map(|n| table().codepoint_of_name(n).expect("dictionary name"))
            .collect()
    }

    fn minimal_label() -> String {
        label(&["hamfist", "hamextfingeru", "hampalmu"])
    }

    fn row_line(name: &str, word: &str, notation: &str) -> String {
        format!("{name} 0.0 1.0 dict {word} {notation}")
    }

    #[test]
    fn stock_layout_has_six_inputs_and_all_cells() {
        let config = ColumnConfig::default_config();
        assert_eq!(config.input_names().len(), 6);
        assert_eq!(config.label_index(), 5);
        assert_eq!(config.output_names().len(), 6 + 25);
        assert_eq!(config.input_index("Word"), Some(4));
        assert_eq!(config.input_index("Absent"), None);
    }

    #[test]
    fn config_rejects_bad_layouts() {
        let err = ColumnConfig::new(vec![], "Hamnosys", vec![]).unwrap_err();
        assert_eq!(err, ConfigError::NoInputColumns);

        let err = ColumnConfig::new(
            vec!["A".into(), "A".into()],
            "A",
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, ConfigError::DuplicateInput("A".into()));

        let err = ColumnConfig::new(vec!["A".into()], "B", vec![]).unwrap_err();
        assert_eq!(err, ConfigError::LabelColumnUnknown("B".into()));

        let err = ColumnConfig::new(
            vec!["A".into()],
            "A",
            vec!["A".into(), "Nope".into()],
        )
        .unwrap_err();
        assert_eq!(err, ConfigError::OutputUnknown("Nope".into()));
    }

    #[test]
    fn output_columns_may_mix_inputs_and_cells() {
        let config = ColumnConfig::new(
            DEFAULT_INPUT_COLUMNS.iter().map(|s| s.to_string()).collect(),
            "Hamnosys",
            vec!["Word".into(), "Symmetry".into(), "LocationTB".into()],
        )
        .unwrap();
        let text = row_line("s1", "HELLO", &minimal_label());
        let results = parse_records(table(), read_corpus_str(&text, &config), &config);
        let mut dst = Vec::new();
        let mut err = Vec::new();
        write_results(&mut dst, &mut err, &results, &config).unwrap();
        assert_eq!(String::from_utf8(dst).unwrap(), "HELLO 0 14\n");
        assert!(err.is_empty());
    }

    #[test]
    fn reading_keeps_line_numbers_and_tolerates_crlf() {
        let config = ColumnConfig::default_config();
        let text = format!(
            "{}\r\n{}\nbad row\n",
            row_line("a", "ONE", &minimal_label()),
            row_line("b", "TWO", &minimal_label()),
        );
        let records = read_corpus_str(&text, &config);
        assert_eq!(records.len(), 3);
        match &records[0] {
            ReadRecord::Row(row) => {
                assert_eq!(row.line_number, 1);
                assert_eq!(row.fields[4], "ONE");
                assert_eq!(row.fields[5], minimal_label());
            }
            other => panic!("expected a row, got {other:?}"),
        }
        match &records[2] {
            ReadRecord::Mismatch(m) => {
                assert_eq!(m.line_number, 3);
                assert_eq!(m.expected, 6);
                assert_eq!(m.found, 2);
                assert_eq!(m.raw, "bad row");
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn parse_results_keep_the_input_order() {
        let config = ColumnConfig::default_config();
        let text: String = (0..64)
            .map(|i| row_line(&format!("s{i}"), &format!("G{i}"), &minimal_label()) + "\n")
            .collect();
        let results = parse_records(table(), read_corpus_str(&text, &config), &config);
        assert_eq!(results.len(), 64);
        for (i, result) in results.iter().enumerate() {
            assert_eq!(result.line_number(), i + 1);
            assert!(result.is_parsed());
        }
    }

    #[test]
    fn decoded_rows_echo_inputs_and_append_cells() {
        let config = ColumnConfig::default_config();
        let text = row_line("clip7", "WORD", &minimal_label());
        let results = parse_records(table(), read_corpus_str(&text, &config), &config);
        let mut dst = Vec::new();
        let mut err = Vec::new();
        let (ok, rejected) = write_results(&mut dst, &mut err, &results, &config).unwrap();
        assert_eq!((ok, rejected), (1, 0));
        let line = String::from_utf8(dst).unwrap();
        let expected_cells = "0 0 0 0 0 0 0 NaN NaN NaN NaN NaN NaN NaN NaN NaN NaN \
             NaN NaN NaN NaN NaN 0 14 0";
        assert_eq!(
            line,
            format!("clip7 0.0 1.0 dict WORD {} {expected_cells}\n", minimal_label())
        );
    }

    #[test]
    fn rejected_rows_carry_diagnostics() {
        let config = ColumnConfig::default_config();
        // missing palm orientation: mandatory cell error at the end
        let bad = label(&["hamfist", "hamextfingeru"]);
        let text = format!("{}\nshort line\n", row_line("x", "W", &bad));
        let results = parse_records(table(), read_corpus_str(&text, &config), &config);
        let mut dst = Vec::new();
        let mut err = Vec::new();
        let (ok, rejected) = write_results(&mut dst, &mut err, &results, &config).unwrap();
        assert_eq!((ok, rejected), (0, 2));
        assert!(dst.is_empty());
        let err_text = String::from_utf8(err).unwrap();
        let lines: Vec<&str> = err_text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].ends_with("1 Dom1Palm -2 2"), "got {:?}", lines[0]);
        assert!(lines[0].contains(" -2 NaN "), "error cell rendered: {:?}", lines[0]);
        assert_eq!(lines[1], "short line 2 Schema expected=6,found=2 -");
    }

    #[test]
    fn empty_fields_from_double_spaces_are_schema_mismatches() {
        let config = ColumnConfig::default_config();
        let text = format!("a 0.0 1.0 dict  W {}\n", minimal_label());
        let records = read_corpus_str(&text, &config);
        match &records[0] {
            ReadRecord::Mismatch(m) => assert_eq!(m.found, 7),
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn process_file_round_trips_through_the_filesystem() {
        let dir = tempfile::tempdir().unwrap();
        let src = dir.path().join("src.txt");
        let dst = dir.path().join("dst.txt");
        let err = dir.path().join("err.txt");
        let text = format!(
            "{}\n{}\nbroken\n",
            row_line("a", "ONE", &minimal_label()),
            row_line("b", "TWO", &label(&["hamfist", "hampalmu"])),
        );
        std::fs::write(&src, &text).unwrap();
        let config = ColumnConfig::default_config();
        let (results, ok, rejected) =
            process_file(table(), &config, &src, &dst, &err).unwrap();
        assert_eq!(results.len(), 3);
        assert_eq!((ok, rejected), (1, 2));
        let dst_text = std::fs::read_to_string(&dst).unwrap();
        let err_text = std::fs::read_to_string(&err).unwrap();
        assert_eq!(dst_text.lines().count(), 1);
        assert_eq!(err_text.lines().count(), 2);
        assert!(results[1].vector().unwrap().dom1.ext_finger_dir == Cell::Error(-2));
    }
}
