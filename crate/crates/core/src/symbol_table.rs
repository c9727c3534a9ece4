//! The symbol dictionary: maps Unicode codepoints to named entries carrying
//! a class and a numeric value.
//!
//! The dictionary is an external, versioned data file so the symbol
//! inventory can be corrected without touching parser logic. Each
//! non-comment line reads
//!
//! ```text
//! <codepoint hex>\t<name>\t<class>\t<value or "-">
//! ```
//!
//! Codepoints may be written with or without a `U+` prefix. `#` starts a
//! comment line; a comment of the form `# version: <id>` names the file
//! revision. Structural symbols (operators, brackets, movement symbols)
//! carry `-` instead of a value.
//!
//! Three structural entries have an active parsing role and are recognised
//! by name: [`NAME_BACKSLASH`], [`NAME_HAND_SEPARATOR`] and
//! [`NAME_RELAXED_HAND`]. Every other structural entry is skipped by the
//! parser wherever it appears.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::vector::ClassId;

/// The dictionary shipped with the crate, embedded at build time.
pub const BUNDLED_DICTIONARY: &str = include_str!("../data/hamnosys_dict.tsv");

/// Name of the secondary-description operator entry.
pub const NAME_BACKSLASH: &str = "backslash";
/// Name of the hand-separator entry.
pub const NAME_HAND_SEPARATOR: &str = "hamplus";
/// Name of the relaxed-hand entry that flags non-dominant-first signs.
pub const NAME_RELAXED_HAND: &str = "hamrelaxedhand";
/// Name of the tilde entry, skippable before the first base form.
pub const NAME_TILDE: &str = "tilde";
/// Name of the opening-bracket entry, skippable before the first base form.
pub const NAME_OPEN_BRACKET: &str = "openbracket";

/// What a dictionary entry contributes to parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    /// A value-bearing symbol of one of the nine classes.
    Class { id: ClassId, value: u8 },
    /// Operator, bracket, movement or other symbol without a class value.
    Structural,
}

/// One dictionary entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolEntry {
    pub codepoint: char,
    pub name: String,
    pub kind: SymbolKind,
}

impl SymbolEntry {
    /// Class and value if this is a value-bearing symbol.
    pub fn class_value(&self) -> Option<(ClassId, u8)> {
        match self.kind {
            SymbolKind::Class { id, value } => Some((id, value)),
            SymbolKind::Structural => None,
        }
    }

    pub fn is_structural(&self) -> bool {
        matches!(self.kind, SymbolKind::Structural)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DictionaryError {
    #[error("cannot read dictionary {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("dictionary line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("dictionary line {line}: duplicate codepoint U+{codepoint:04X}")]
    DuplicateCodepoint { line: usize, codepoint: u32 },
    #[error("dictionary line {line}: value {value} out of range for {class} (max {max})")]
    ValueOutOfRange {
        line: usize,
        class: ClassId,
        value: u32,
        max: u8,
    },
}

/// An immutable, loaded dictionary. Safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    version: String,
    entries: HashMap<char, SymbolEntry>,
    by_class_value: HashMap<(ClassId, u8), char>,
    by_name: HashMap<String, char>,
    backslash: Option<char>,
    hand_separator: Option<char>,
    relaxed_hand: Option<char>,
}

impl SymbolTable {
    /// Loads a dictionary file from disk.
    pub fn load(path: impl AsRef<Path>) -> Result<SymbolTable, DictionaryError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| DictionaryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        SymbolTable::parse_str(&text)
    }

    /// Parses dictionary text. Entry order in the file decides which symbol
    /// wins reverse lookups when two entries share a class and value.
    pub fn parse_str(text: &str) -> Result<SymbolTable, DictionaryError> {
        let mut table = SymbolTable {
            version: String::from("unversioned"),
            entries: HashMap::new(),
            by_class_value: HashMap::new(),
            by_name: HashMap::new(),
            backslash: None,
            hand_separator: None,
            relaxed_hand: None,
        };

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if let Some(comment) = line.trim_start().strip_prefix('#') {
                if let Some(version) = comment.trim().strip_prefix("version:") {
                    table.version = version.trim().to_string();
                }
                continue;
            }

            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(DictionaryError::Syntax {
                    line: line_no,
                    reason: format!("expected 4 tab-separated fields, found {}", fields.len()),
                });
            }

            let hex = fields[0]
                .trim()
                .trim_start_matches("U+")
                .trim_start_matches("u+");
            let scalar = u32::from_str_radix(hex, 16).map_err(|_| DictionaryError::Syntax {
                line: line_no,
                reason: format!("bad codepoint {:?}", fields[0]),
            })?;
            let codepoint = char::from_u32(scalar).ok_or_else(|| DictionaryError::Syntax {
                line: line_no,
                reason: format!("U+{scalar:04X} is not a Unicode scalar value"),
            })?;

            let name = fields[1].trim();
            if name.is_empty() {
                return Err(DictionaryError::Syntax {
                    line: line_no,
                    reason: "empty symbol name".to_string(),
                });
            }

            let class_field = fields[2].trim();
            let value_field = fields[3].trim();
            let kind = if class_field == "Structural" {
                if value_field != "-" {
                    return Err(DictionaryError::Syntax {
                        line: line_no,
                        reason: format!("structural symbol {name} must carry \"-\", found {value_field:?}"),
                    });
                }
                SymbolKind::Structural
            } else {
                let id = ClassId::from_name(class_field).ok_or_else(|| DictionaryError::Syntax {
                    line: line_no,
                    reason: format!("unknown class {class_field:?}"),
                })?;
                let value: u32 = value_field.parse().map_err(|_| DictionaryError::Syntax {
                    line: line_no,
                    reason: format!("bad numeric value {value_field:?}"),
                })?;
                if value > u32::from(id.max_value()) {
                    return Err(DictionaryError::ValueOutOfRange {
                        line: line_no,
                        class: id,
                        value,
                        max: id.max_value(),
                    });
                }
                SymbolKind::Class {
                    id,
                    value: value as u8,
                }
            };

            if table.entries.contains_key(&codepoint) {
                return Err(DictionaryError::DuplicateCodepoint {
                    line: line_no,
                    codepoint: scalar,
                });
            }

            if let SymbolKind::Class { id, value } = kind {
                table.by_class_value.entry((id, value)).or_insert(codepoint);
            }
            table
                .by_name
                .entry(name.to_string())
                .or_insert(codepoint);
            match name {
                NAME_BACKSLASH => {
                    table.backslash.get_or_insert(codepoint);
                }
                NAME_HAND_SEPARATOR => {
                    table.hand_separator.get_or_insert(codepoint);
                }
                NAME_RELAXED_HAND => {
                    table.relaxed_hand.get_or_insert(codepoint);
                }
                _ => {}
            }

            table.entries.insert(
                codepoint,
                SymbolEntry {
                    codepoint,
                    name: name.to_string(),
                    kind,
                },
            );
        }

        Ok(table)
    }

    /// The dictionary shipped with the crate.
    pub fn bundled() -> SymbolTable {
        SymbolTable::parse_str(BUNDLED_DICTIONARY).expect("bundled dictionary is well-formed")
    }

    /// Revision identifier from the file header, or `"unversioned"`.
    pub fn version(&self) -> &str {
        &self.version
    }

    /// Entry for a codepoint; `None` means the character is unknown.
    pub fn lookup(&self, codepoint: char) -> Option<&SymbolEntry> {
        self.entries.get(&codepoint)
    }

    /// Codepoint of the first entry with the given class and value, used
    /// when rendering vectors back into labels.
    pub fn codepoint_for(&self, class: ClassId, value: u8) -> Option<char> {
        self.by_class_value.get(&(class, value)).copied()
    }

    /// Codepoint of the first entry with the given name.
    pub fn codepoint_of_name(&self, name: &str) -> Option<char> {
        self.by_name.get(name).copied()
    }

    /// The secondary-description operator, if the dictionary defines one.
    pub fn backslash_operator(&self) -> Option<char> {
        self.backslash
    }

    /// The hand separator introducing a non-dominant description.
    pub fn hand_separator(&self) -> Option<char> {
        self.hand_separator
    }

    /// The relaxed-hand symbol flagging non-dominant-first signs.
    pub fn relaxed_hand(&self) -> Option<char> {
        self.relaxed_hand
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &SymbolEntry> {
        self.entries.values()
    }

    /// Number of entries carrying values of one class.
    pub fn class_count(&self, class: ClassId) -> usize {
        self.entries()
            .filter(|e| matches!(e.kind, SymbolKind::Class { id, .. } if id == class))
            .count()
    }
}
