//! Decoding of HamNoSys sign-language notation into fixed-width numeric
//! class vectors, plus the corpus plumbing and reporting around it.
//!
//! The center of the crate is [`parse_label`]: it turns one notation string
//! into a [`ClassVector`] of 25 cells covering symmetry, both hands'
//! shapes and positions, and the location of the initial posture. Cells are
//! numeric class values, `NaN` for classes a label legitimately leaves out,
//! or negative error codes where the label violates the notation's order.
//! [`render`] is the inverse mapping for well-formed vectors and
//! [`sample_valid_vector`] feeds it for round-trip checking.
//!
//! [`corpus_io`] streams annotation files through the decoder in parallel
//! with deterministic output, and [`analytics`] computes the two corpus
//! metrics: parsing effectiveness (share of rows that decode) and decoding
//! effectiveness (share of glosses holding a unique initial posture).

#![forbid(unsafe_code)]

pub mod analytics;
pub mod corpus_io;
pub mod generator;
pub mod parser;
pub mod symbol_table;
pub mod tokenizer;
pub mod vector;

pub use analytics::{
    decoding, effectiveness, percent_2dp, CollisionGroup, DecodingReport, EffectivenessReport,
};
pub use corpus_io::{
    parse_records, process_file, read_corpus, read_corpus_str, write_results, ColumnConfig,
    ConfigError, CorpusRow, ReadRecord, RowResult, SchemaMismatch, DEFAULT_GLOSS_COLUMN,
    DEFAULT_INPUT_COLUMNS, DEFAULT_LABEL_COLUMN,
};
pub use generator::{render, sample_valid_vector, RenderError};
pub use parser::{
    apply_defaults, parse_label, FirstError, ParseOutcome, ParseStatus, ERR_MISSING_MANDATORY,
    ERR_UNEXPECTED_ORDER, ERR_UNKNOWN_SYMBOL,
};
pub use symbol_table::{
    DictionaryError, SymbolEntry, SymbolKind, SymbolTable, BUNDLED_DICTIONARY,
};
pub use tokenizer::{tokenize, Token};
pub use vector::{Cell, ClassId, ClassVector, HandCells, HandField, HandSlot, CELL_NAMES};
