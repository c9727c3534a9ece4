//! Decodes one label into a [`ClassVector`].
//!
//! The walk follows the block order of the notation: an optional leading
//! symmetry operator, an optional prefix (relaxed-hand marker, tilde,
//! brackets), the dominant hand's handshape group (base form with thumb and
//! bending modifiers), then a lenient scan that collects hand position
//! (extended finger direction, palm orientation), an optional non-dominant
//! description introduced by the hand separator, and the location block.
//! Movement and other skippable symbols are recognised and discarded; the
//! initial posture is all this decoder reports.
//!
//! Decoding never aborts. A class that cannot be decoded gets a negative
//! error code in its cell and the walk resynchronises, so later classes
//! (typically location) are still extracted. A label fails as a whole
//! exactly when at least one cell holds an error code.

use crate::symbol_table::{SymbolKind, SymbolTable};
use crate::tokenizer::tokenize;
use crate::vector::{
    hand_cell_index, Cell, ClassId, ClassVector, HandField, HandSlot, DEFAULT_LOCATION_DIST,
    DEFAULT_LOCATION_LR, DEFAULT_LOCATION_TB, LOCATION_DIST_IDX, LOCATION_LR_IDX,
    LOCATION_TB_IDX, NONDOM_FIRST_IDX, SYMMETRY_IDX,
};

/// A class symbol appeared somewhere the walk does not allow it.
pub const ERR_UNEXPECTED_ORDER: i8 = -1;
/// A mandatory class never appeared in the label.
pub const ERR_MISSING_MANDATORY: i8 = -2;
/// A character unknown to the dictionary sat where a class symbol was
/// expected.
pub const ERR_UNKNOWN_SYMBOL: i8 = -3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseStatus {
    Parsed,
    Failed,
}

/// Earliest failure of a failed parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FirstError {
    /// Cell name from [`crate::vector::CELL_NAMES`].
    pub class_name: &'static str,
    pub code: i8,
    /// 0-based token position; the token count when the walk ran out of
    /// input while a class was still expected.
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOutcome {
    pub vector: ClassVector,
    pub status: ParseStatus,
    pub first_error: Option<FirstError>,
}

impl ParseOutcome {
    pub fn is_parsed(&self) -> bool {
        self.status == ParseStatus::Parsed
    }
}

/// Fills absent location cells with the neutral defaults. Idempotent; cells
/// that already hold a value or an error are left alone.
pub fn apply_defaults(mut vector: ClassVector) -> ClassVector {
    if vector.location_lr.is_missing() {
        vector.location_lr = Cell::Value(DEFAULT_LOCATION_LR);
    }
    if vector.location_tb.is_missing() {
        vector.location_tb = Cell::Value(DEFAULT_LOCATION_TB);
    }
    if vector.location_dist.is_missing() {
        vector.location_dist = Cell::Value(DEFAULT_LOCATION_DIST);
    }
    vector
}

/// Decodes a label. Total over arbitrary strings; never panics.
pub fn parse_label(table: &SymbolTable, label: &str) -> ParseOutcome {
    Walk::new(table, label).run()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Hand {
    Dom,
    NonDom,
}

impl Hand {
    fn primary(self) -> HandSlot {
        match self {
            Hand::Dom => HandSlot::Dom1,
            Hand::NonDom => HandSlot::NonDom1,
        }
    }

    fn secondary(self) -> HandSlot {
        match self {
            Hand::Dom => HandSlot::Dom2,
            Hand::NonDom => HandSlot::NonDom2,
        }
    }
}

/// Position classes that the backslash operator can double up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PosClass {
    Ext,
    Palm,
}

impl PosClass {
    fn class(self) -> ClassId {
        match self {
            PosClass::Ext => ClassId::ExtFingerDirection,
            PosClass::Palm => ClassId::PalmOrientation,
        }
    }

    fn field(self) -> HandField {
        match self {
            PosClass::Ext => HandField::ExtFingerDir,
            PosClass::Palm => HandField::Palm,
        }
    }
}

/// How the walk sees one token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Class(ClassId, u8),
    Backslash,
    Separator,
    RelaxedHand,
    Skippable,
    Unknown,
}

struct Walk {
    kinds: Vec<Tok>,
    v: ClassVector,
    errors: Vec<(usize, i8, usize)>,
    i: usize,
    hand: Hand,
    last_pos_class: Option<PosClass>,
    armed: Option<PosClass>,
    thumb_explicit: [bool; 4],
    bend_explicit: [bool; 4],
    lr_done: bool,
    tb_seen: bool,
}

fn slot_ix(slot: HandSlot) -> usize {
    match slot {
        HandSlot::Dom1 => 0,
        HandSlot::Dom2 => 1,
        HandSlot::NonDom1 => 2,
        HandSlot::NonDom2 => 3,
    }
}

impl Walk {
    fn new(table: &SymbolTable, label: &str) -> Walk {
        let backslash = table.backslash_operator();
        let separator = table.hand_separator();
        let relaxed = table.relaxed_hand();
        let kinds = tokenize(table, label)
            .iter()
            .map(|t| match t.entry.map(|e| e.kind) {
                Some(SymbolKind::Class { id, value }) => Tok::Class(id, value),
                Some(SymbolKind::Structural) => {
                    if Some(t.codepoint) == backslash {
                        Tok::Backslash
                    } else if Some(t.codepoint) == separator {
                        Tok::Separator
                    } else if Some(t.codepoint) == relaxed {
                        Tok::RelaxedHand
                    } else {
                        Tok::Skippable
                    }
                }
                None => Tok::Unknown,
            })
            .collect();
        Walk {
            kinds,
            v: ClassVector::missing(),
            errors: Vec::new(),
            i: 0,
            hand: Hand::Dom,
            last_pos_class: None,
            armed: None,
            thumb_explicit: [false; 4],
            bend_explicit: [false; 4],
            lr_done: false,
            tb_seen: false,
        }
    }

    fn len(&self) -> usize {
        self.kinds.len()
    }

    fn kind(&self, i: usize) -> Tok {
        self.kinds[i]
    }

    /// Cells already holding an error are sticky; later values or error
    /// codes never overwrite them, so the earliest failure survives.
    fn set_value(&mut self, idx: usize, value: u8) {
        if !self.v.cell(idx).is_error() {
            self.v.set_cell(idx, Cell::Value(value));
        }
    }

    fn err(&mut self, idx: usize, code: i8, position: usize) {
        if !self.v.cell(idx).is_error() {
            self.v.set_cell(idx, Cell::Error(code));
        }
        self.errors.push((idx, code, position));
    }

    fn err_hand(&mut self, slot: HandSlot, field: HandField, code: i8, position: usize) {
        self.err(hand_cell_index(slot, field), code, position);
    }

    fn run(mut self) -> ParseOutcome {
        self.set_value(SYMMETRY_IDX, 0);
        self.set_value(NONDOM_FIRST_IDX, 0);

        self.symmetry();
        self.handshape_section(Hand::Dom, true);
        self.scan();
        self.mandatory_sweep();
        self.v = apply_defaults(self.v);

        let first_error = self
            .errors
            .iter()
            .min_by_key(|(idx, _, pos)| (*pos, *idx))
            .map(|&(idx, code, position)| FirstError {
                class_name: ClassVector::cell_name(idx),
                code,
                position,
            });
        let status = if first_error.is_some() {
            ParseStatus::Failed
        } else {
            ParseStatus::Parsed
        };
        ParseOutcome {
            vector: self.v,
            status,
            first_error,
        }
    }

    /// A symmetry operator counts only ahead of the hand description;
    /// skippable structurals may precede it.
    fn symmetry(&mut self) {
        let mut j = self.i;
        while j < self.len() && self.kind(j) == Tok::Skippable {
            j += 1;
        }
        if j < self.len() {
            if let Tok::Class(ClassId::Symmetry, value) = self.kind(j) {
                self.set_value(SYMMETRY_IDX, value);
                self.i = j + 1;
            }
        }
    }

    /// Prefix skip plus the handshape group of one hand: base form, strict
    /// thumb/bending modifiers, optional backslashed secondary group.
    ///
    /// Unknown characters in front of the base form each cost an error but
    /// are stepped over, so a label with leading garbage still surrenders
    /// its handshape.
    fn handshape_section(&mut self, hand: Hand, dom_prefix: bool) {
        let primary = hand.primary();
        loop {
            if self.i >= self.len() {
                return; // missing mandatory cells are swept up at the end
            }
            match self.kind(self.i) {
                Tok::RelaxedHand => {
                    if dom_prefix {
                        self.set_value(NONDOM_FIRST_IDX, 1);
                    }
                    self.i += 1;
                }
                Tok::Skippable => self.i += 1,
                Tok::Unknown => {
                    self.err_hand(primary, HandField::BaseForm, ERR_UNKNOWN_SYMBOL, self.i);
                    self.i += 1;
                }
                _ => break,
            }
        }

        let at = self.i;
        match self.kind(at) {
            Tok::Class(ClassId::HandshapeBaseForm, value) => {
                self.begin_hand_group(primary, value);
                self.i += 1;
                self.modifiers(primary);
                self.secondary_handshape(hand);
            }
            Tok::Class(_, _) => {
                // wrong class where the base form belongs; the scan will
                // reprocess this token
                self.err_hand(primary, HandField::BaseForm, ERR_UNEXPECTED_ORDER, at);
            }
            Tok::Backslash | Tok::Separator => {
                self.err_hand(primary, HandField::BaseForm, ERR_UNEXPECTED_ORDER, at);
                self.i += 1;
            }
            Tok::RelaxedHand | Tok::Skippable | Tok::Unknown => {
                unreachable!("consumed by the prefix loop")
            }
        }
    }

    /// A base form always values its slot's thumb and bending cells; 0 means
    /// "no modifier written".
    fn begin_hand_group(&mut self, slot: HandSlot, base: u8) {
        self.set_value(hand_cell_index(slot, HandField::BaseForm), base);
        self.set_value(hand_cell_index(slot, HandField::Thumb), 0);
        self.set_value(hand_cell_index(slot, HandField::Bending), 0);
    }

    /// Thumb and bending symbols bind only in direct adjacency to the base
    /// form or each other. A second explicit modifier of the same kind is an
    /// order error.
    fn modifiers(&mut self, slot: HandSlot) {
        while self.i < self.len() {
            match self.kind(self.i) {
                Tok::Class(ClassId::ThumbPosition, value) => {
                    if self.thumb_explicit[slot_ix(slot)] {
                        self.err_hand(slot, HandField::Thumb, ERR_UNEXPECTED_ORDER, self.i);
                    } else {
                        self.thumb_explicit[slot_ix(slot)] = true;
                        self.set_value(hand_cell_index(slot, HandField::Thumb), value);
                    }
                    self.i += 1;
                }
                Tok::Class(ClassId::Bending, value) => {
                    if self.bend_explicit[slot_ix(slot)] {
                        self.err_hand(slot, HandField::Bending, ERR_UNEXPECTED_ORDER, self.i);
                    } else {
                        self.bend_explicit[slot_ix(slot)] = true;
                        self.set_value(hand_cell_index(slot, HandField::Bending), value);
                    }
                    self.i += 1;
                }
                _ => break,
            }
        }
    }

    fn peek_past_skippables(&self, mut j: usize) -> usize {
        while j < self.len() && self.kind(j) == Tok::Skippable {
            j += 1;
        }
        j
    }

    /// `base \ base` doubles the handshape into the secondary slot. Anything
    /// else after the backslash is an order error, and the offending token
    /// is left for the scan to resynchronise on.
    fn secondary_handshape(&mut self, hand: Hand) {
        let j = self.peek_past_skippables(self.i);
        if j >= self.len() || self.kind(j) != Tok::Backslash {
            return;
        }
        let secondary = hand.secondary();
        let k = self.peek_past_skippables(j + 1);
        if k >= self.len() {
            self.err_hand(secondary, HandField::BaseForm, ERR_UNEXPECTED_ORDER, self.len());
            self.i = self.len();
            return;
        }
        match self.kind(k) {
            Tok::Class(ClassId::HandshapeBaseForm, value) => {
                self.begin_hand_group(secondary, value);
                self.i = k + 1;
                self.modifiers(secondary);
            }
            Tok::Unknown => {
                self.err_hand(secondary, HandField::BaseForm, ERR_UNKNOWN_SYMBOL, k);
                self.i = j + 1;
            }
            _ => {
                self.err_hand(secondary, HandField::BaseForm, ERR_UNEXPECTED_ORDER, k);
                self.i = j + 1;
            }
        }
    }

    /// True when a hand separator at `j - 1` really introduces another hand
    /// description. Separators inside movement blocks are not followed by a
    /// base form and are skipped instead.
    fn base_form_follows(&self, mut j: usize) -> bool {
        while j < self.len() {
            match self.kind(j) {
                Tok::Skippable | Tok::RelaxedHand => j += 1,
                Tok::Class(ClassId::HandshapeBaseForm, _) => return true,
                _ => return false,
            }
        }
        false
    }

    /// Lenient single pass over the rest of the label: collects position
    /// values for the current hand, switches hands at a real separator,
    /// resolves the location block, skips movement and unknown characters.
    fn scan(&mut self) {
        while self.i < self.len() {
            let at = self.i;
            let tok = self.kind(at);

            if let Some(pc) = self.armed.take() {
                match tok {
                    Tok::Class(id, value) if id == pc.class() => {
                        let twin = self.hand.secondary();
                        self.set_value(hand_cell_index(twin, pc.field()), value);
                        self.i += 1;
                        continue;
                    }
                    Tok::Skippable => {
                        self.armed = Some(pc);
                        self.i += 1;
                        continue;
                    }
                    Tok::Unknown => {
                        let twin = self.hand.secondary();
                        self.err_hand(twin, pc.field(), ERR_UNKNOWN_SYMBOL, at);
                        self.i += 1;
                        continue;
                    }
                    _ => {
                        let twin = self.hand.secondary();
                        self.err_hand(twin, pc.field(), ERR_UNEXPECTED_ORDER, at);
                        // fall through and reprocess the token
                    }
                }
            }

            match self.kind(at) {
                Tok::Backslash => {
                    self.on_backslash(at);
                    self.i += 1;
                }
                Tok::Separator => {
                    if self.base_form_follows(at + 1) {
                        if self.hand == Hand::Dom {
                            self.hand = Hand::NonDom;
                            self.last_pos_class = None;
                            self.i = at + 1;
                            self.handshape_section(Hand::NonDom, false);
                        } else {
                            // a third hand description has nowhere to go
                            self.err_hand(
                                HandSlot::NonDom2,
                                HandField::BaseForm,
                                ERR_UNEXPECTED_ORDER,
                                at,
                            );
                            self.i += 1;
                        }
                    } else {
                        self.i += 1;
                    }
                }
                Tok::RelaxedHand | Tok::Skippable | Tok::Unknown => self.i += 1,
                Tok::Class(class, value) => {
                    self.class_in_scan(class, value, at);
                    self.i += 1;
                }
            }
        }

        if let Some(pc) = self.armed.take() {
            let twin = self.hand.secondary();
            self.err_hand(twin, pc.field(), ERR_UNEXPECTED_ORDER, self.len());
        }
    }

    fn class_in_scan(&mut self, class: ClassId, value: u8, at: usize) {
        let primary = self.hand.primary();
        match class {
            ClassId::Symmetry => {
                // symmetry operators only lead a label
                self.err(SYMMETRY_IDX, ERR_UNEXPECTED_ORDER, at);
            }
            ClassId::HandshapeBaseForm => {
                // a handshape with no separator in front of it: another hand
                // description started where none was announced
                let cell = match self.hand {
                    Hand::Dom => HandSlot::NonDom1,
                    Hand::NonDom => HandSlot::NonDom2,
                };
                self.err_hand(cell, HandField::BaseForm, ERR_UNEXPECTED_ORDER, at);
            }
            ClassId::ThumbPosition => {
                self.err_hand(primary, HandField::Thumb, ERR_UNEXPECTED_ORDER, at);
            }
            ClassId::Bending => {
                self.err_hand(primary, HandField::Bending, ERR_UNEXPECTED_ORDER, at);
            }
            ClassId::ExtFingerDirection => {
                let idx = hand_cell_index(primary, HandField::ExtFingerDir);
                if self.v.cell(idx).is_missing() {
                    self.set_value(idx, value);
                }
                self.last_pos_class = Some(PosClass::Ext);
            }
            ClassId::PalmOrientation => {
                let idx = hand_cell_index(primary, HandField::Palm);
                if self.v.cell(idx).is_missing() {
                    self.set_value(idx, value);
                }
                self.last_pos_class = Some(PosClass::Palm);
            }
            ClassId::LocationTB => {
                if !self.tb_seen {
                    self.tb_seen = true;
                    self.set_value(LOCATION_TB_IDX, value);
                }
            }
            ClassId::LocationLR => {
                // the marker's side of the top/bottom symbol decides
                // left (as written) or right (value + 2)
                if !self.lr_done {
                    self.lr_done = true;
                    let resolved = if self.tb_seen { value + 2 } else { value };
                    self.set_value(LOCATION_LR_IDX, resolved);
                }
            }
            ClassId::LocationDistance => {
                if self.v.cell(LOCATION_DIST_IDX).is_missing() {
                    self.set_value(LOCATION_DIST_IDX, value);
                }
            }
        }
    }

    fn on_backslash(&mut self, at: usize) {
        let twin = self.hand.secondary();
        match self.last_pos_class {
            Some(pc) => {
                if self.v.cell(hand_cell_index(twin, pc.field())).is_missing() {
                    self.armed = Some(pc);
                } else {
                    // a third description of the same class
                    self.err_hand(twin, pc.field(), ERR_UNEXPECTED_ORDER, at);
                }
            }
            None => {
                if self.v.cell(hand_cell_index(twin, HandField::BaseForm)).is_value() {
                    self.err_hand(twin, HandField::BaseForm, ERR_UNEXPECTED_ORDER, at);
                } else {
                    let primary = self.hand.primary();
                    self.err_hand(primary, HandField::ExtFingerDir, ERR_UNEXPECTED_ORDER, at);
                }
            }
        }
    }

    /// The dominant hand must end up with a base form, an extended finger
    /// direction and a palm orientation somewhere in the label.
    fn mandatory_sweep(&mut self) {
        let end = self.len();
        for field in [HandField::BaseForm, HandField::ExtFingerDir, HandField::Palm] {
            let idx = hand_cell_index(HandSlot::Dom1, field);
            if self.v.cell(idx).is_missing() {
                self.err(idx, ERR_MISSING_MANDATORY, end);
            }
        }
    }
}
