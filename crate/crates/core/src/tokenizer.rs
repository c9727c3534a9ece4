//! Splits a label into per-codepoint tokens annotated with their dictionary
//! entries. Unknown characters are kept; deciding what to do with them is
//! the parser's job.

use crate::symbol_table::{SymbolEntry, SymbolTable};

/// One scalar of the input label.
#[derive(Debug, Clone, Copy)]
pub struct Token<'t> {
    /// 0-based index in the label's scalar sequence.
    pub position: usize,
    pub codepoint: char,
    /// Dictionary entry, or `None` for unknown characters.
    pub entry: Option<&'t SymbolEntry>,
}

impl<'t> Token<'t> {
    pub fn is_known(&self) -> bool {
        self.entry.is_some()
    }
}

/// Tokenizes a label against a dictionary. Total: any string, including the
/// empty one, yields a token per scalar in input order.
pub fn tokenize<'t>(table: &'t SymbolTable, label: &str) -> Vec<Token<'t>> {
    label
        .chars()
        .enumerate()
        .map(|(position, codepoint)| Token {
            position,
            codepoint,
            entry: table.lookup(codepoint),
        })
        .collect()
}
