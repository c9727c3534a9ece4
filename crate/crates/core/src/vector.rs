//! Shared value types: per-class cells, class identifiers and the 25-cell
//! vector describing the initial posture of a sign.
//!
//! A decomposed label always carries the same 25 cells, in a fixed order:
//! symmetry, non-dominant-first flag, five handshape/position cells for each
//! of the four hand slots (dominant and non-dominant, primary and secondary),
//! and the three location axes. Cells a label does not describe stay
//! [`Cell::Missing`] and print as `NaN`; cells that could not be decoded hold
//! a negative error code.

use std::fmt;

/// Default for the left/right location axis when no marker is present.
pub const DEFAULT_LOCATION_LR: u8 = 0;
/// Default for the top/bottom location axis: the neutral signing height.
pub const DEFAULT_LOCATION_TB: u8 = 14;
/// Default for the distance axis: natural distance from the body.
pub const DEFAULT_LOCATION_DIST: u8 = 0;

/// A single slot of a [`ClassVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Cell {
    /// The label said nothing about this class. Rendered as `NaN`.
    #[default]
    Missing,
    /// Decoded numeric value, always within the owning class range.
    Value(u8),
    /// Decoding failed; holds one of the negative error codes.
    Error(i8),
}

impl Cell {
    pub fn is_missing(self) -> bool {
        matches!(self, Cell::Missing)
    }

    pub fn is_value(self) -> bool {
        matches!(self, Cell::Value(_))
    }

    pub fn is_error(self) -> bool {
        matches!(self, Cell::Error(_))
    }

    /// Numeric value if this cell holds one.
    pub fn value(self) -> Option<u8> {
        match self {
            Cell::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Missing => f.write_str("NaN"),
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Error(code) => write!(f, "{code}"),
        }
    }
}

/// The nine value-bearing symbol classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassId {
    Symmetry,
    HandshapeBaseForm,
    ThumbPosition,
    Bending,
    ExtFingerDirection,
    PalmOrientation,
    LocationLR,
    LocationTB,
    LocationDistance,
}

impl ClassId {
    pub const ALL: [ClassId; 9] = [
        ClassId::Symmetry,
        ClassId::HandshapeBaseForm,
        ClassId::ThumbPosition,
        ClassId::Bending,
        ClassId::ExtFingerDirection,
        ClassId::PalmOrientation,
        ClassId::LocationLR,
        ClassId::LocationTB,
        ClassId::LocationDistance,
    ];

    /// Largest value a symbol of this class may carry.
    pub fn max_value(self) -> u8 {
        match self {
            ClassId::Symmetry => 8,
            ClassId::HandshapeBaseForm => 11,
            ClassId::ThumbPosition => 3,
            ClassId::Bending => 5,
            ClassId::ExtFingerDirection => 17,
            ClassId::PalmOrientation => 7,
            ClassId::LocationLR => 4,
            ClassId::LocationTB => 36,
            ClassId::LocationDistance => 5,
        }
    }

    pub fn contains(self, value: u8) -> bool {
        value <= self.max_value()
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassId::Symmetry => "Symmetry",
            ClassId::HandshapeBaseForm => "HandshapeBaseForm",
            ClassId::ThumbPosition => "ThumbPosition",
            ClassId::Bending => "Bending",
            ClassId::ExtFingerDirection => "ExtFingerDirection",
            ClassId::PalmOrientation => "PalmOrientation",
            ClassId::LocationLR => "LocationLR",
            ClassId::LocationTB => "LocationTB",
            ClassId::LocationDistance => "LocationDistance",
        }
    }

    pub fn from_name(name: &str) -> Option<ClassId> {
        ClassId::ALL.iter().copied().find(|c| c.name() == name)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four hand description slots.
///
/// `Dom2`/`NonDom2` are the secondary slots filled by the backslash operator
/// when a label gives two values for one class on the same hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HandSlot {
    Dom1,
    Dom2,
    NonDom1,
    NonDom2,
}

impl HandSlot {
    pub const ALL: [HandSlot; 4] = [
        HandSlot::Dom1,
        HandSlot::Dom2,
        HandSlot::NonDom1,
        HandSlot::NonDom2,
    ];

    /// Secondary twin of a primary slot and vice versa.
    pub fn twin(self) -> HandSlot {
        match self {
            HandSlot::Dom1 => HandSlot::Dom2,
            HandSlot::Dom2 => HandSlot::Dom1,
            HandSlot::NonDom1 => HandSlot::NonDom2,
            HandSlot::NonDom2 => HandSlot::NonDom1,
        }
    }

    pub fn is_primary(self) -> bool {
        matches!(self, HandSlot::Dom1 | HandSlot::NonDom1)
    }

    fn ordinal(self) -> usize {
        match self {
            HandSlot::Dom1 => 0,
            HandSlot::Dom2 => 1,
            HandSlot::NonDom1 => 2,
            HandSlot::NonDom2 => 3,
        }
    }
}

/// Per-hand fields, in cell order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HandField {
    BaseForm,
    Thumb,
    Bending,
    ExtFingerDir,
    Palm,
}

impl HandField {
    fn offset(self) -> usize {
        match self {
            HandField::BaseForm => 0,
            HandField::Thumb => 1,
            HandField::Bending => 2,
            HandField::ExtFingerDir => 3,
            HandField::Palm => 4,
        }
    }
}

/// The five cells describing one hand slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HandCells {
    pub base_form: Cell,
    pub thumb: Cell,
    pub bending: Cell,
    pub ext_finger_dir: Cell,
    pub palm: Cell,
}

impl HandCells {
    pub fn field(&self, field: HandField) -> Cell {
        match field {
            HandField::BaseForm => self.base_form,
            HandField::Thumb => self.thumb,
            HandField::Bending => self.bending,
            HandField::ExtFingerDir => self.ext_finger_dir,
            HandField::Palm => self.palm,
        }
    }

    pub fn field_mut(&mut self, field: HandField) -> &mut Cell {
        match field {
            HandField::BaseForm => &mut self.base_form,
            HandField::Thumb => &mut self.thumb,
            HandField::Bending => &mut self.bending,
            HandField::ExtFingerDir => &mut self.ext_finger_dir,
            HandField::Palm => &mut self.palm,
        }
    }
}

/// Index of the symmetry cell in the canonical 25-cell order.
pub const SYMMETRY_IDX: usize = 0;
/// Index of the non-dominant-first flag cell.
pub const NONDOM_FIRST_IDX: usize = 1;
/// Index of the left/right location cell.
pub const LOCATION_LR_IDX: usize = 22;
/// Index of the top/bottom location cell.
pub const LOCATION_TB_IDX: usize = 23;
/// Index of the distance location cell.
pub const LOCATION_DIST_IDX: usize = 24;

/// Cell names in canonical order; also the default output column names.
pub const CELL_NAMES: [&str; 25] = [
    "Symmetry",
    "NonDomFirst",
    "Dom1BaseForm",
    "Dom1Thumb",
    "Dom1Bending",
    "Dom1ExtFingerDir",
    "Dom1Palm",
    "Dom2BaseForm",
    "Dom2Thumb",
    "Dom2Bending",
    "Dom2ExtFingerDir",
    "Dom2Palm",
    "NonDom1BaseForm",
    "NonDom1Thumb",
    "NonDom1Bending",
    "NonDom1ExtFingerDir",
    "NonDom1Palm",
    "NonDom2BaseForm",
    "NonDom2Thumb",
    "NonDom2Bending",
    "NonDom2ExtFingerDir",
    "NonDom2Palm",
    "LocationLR",
    "LocationTB",
    "LocationDist",
];

/// Cell index of one hand field, in the canonical 25-cell order.
pub fn hand_cell_index(slot: HandSlot, field: HandField) -> usize {
    2 + slot.ordinal() * 5 + field.offset()
}

/// The 25-cell decomposition of one label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassVector {
    pub symmetry: Cell,
    pub nondom_first: Cell,
    pub dom1: HandCells,
    pub dom2: HandCells,
    pub nondom1: HandCells,
    pub nondom2: HandCells,
    pub location_lr: Cell,
    pub location_tb: Cell,
    pub location_dist: Cell,
}

impl ClassVector {
    pub const CELL_COUNT: usize = 25;

    /// A vector with every cell [`Cell::Missing`].
    pub fn missing() -> Self {
        ClassVector {
            symmetry: Cell::Missing,
            nondom_first: Cell::Missing,
            dom1: HandCells::default(),
            dom2: HandCells::default(),
            nondom1: HandCells::default(),
            nondom2: HandCells::default(),
            location_lr: Cell::Missing,
            location_tb: Cell::Missing,
            location_dist: Cell::Missing,
        }
    }

    pub fn hand(&self, slot: HandSlot) -> &HandCells {
        match slot {
            HandSlot::Dom1 => &self.dom1,
            HandSlot::Dom2 => &self.dom2,
            HandSlot::NonDom1 => &self.nondom1,
            HandSlot::NonDom2 => &self.nondom2,
        }
    }

    pub fn hand_mut(&mut self, slot: HandSlot) -> &mut HandCells {
        match slot {
            HandSlot::Dom1 => &mut self.dom1,
            HandSlot::Dom2 => &mut self.dom2,
            HandSlot::NonDom1 => &mut self.nondom1,
            HandSlot::NonDom2 => &mut self.nondom2,
        }
    }

    /// All cells in canonical order.
    pub fn cells(&self) -> [Cell; 25] {
        [
            self.symmetry,
            self.nondom_first,
            self.dom1.base_form,
            self.dom1.thumb,
            self.dom1.bending,
            self.dom1.ext_finger_dir,
            self.dom1.palm,
            self.dom2.base_form,
            self.dom2.thumb,
            self.dom2.bending,
            self.dom2.ext_finger_dir,
            self.dom2.palm,
            self.nondom1.base_form,
            self.nondom1.thumb,
            self.nondom1.bending,
            self.nondom1.ext_finger_dir,
            self.nondom1.palm,
            self.nondom2.base_form,
            self.nondom2.thumb,
            self.nondom2.bending,
            self.nondom2.ext_finger_dir,
            self.nondom2.palm,
            self.location_lr,
            self.location_tb,
            self.location_dist,
        ]
    }

    fn cell_refs_mut(&mut self) -> [&mut Cell; 25] {
        [
            &mut self.symmetry,
            &mut self.nondom_first,
            &mut self.dom1.base_form,
            &mut self.dom1.thumb,
            &mut self.dom1.bending,
            &mut self.dom1.ext_finger_dir,
            &mut self.dom1.palm,
            &mut self.dom2.base_form,
            &mut self.dom2.thumb,
            &mut self.dom2.bending,
            &mut self.dom2.ext_finger_dir,
            &mut self.dom2.palm,
            &mut self.nondom1.base_form,
            &mut self.nondom1.thumb,
            &mut self.nondom1.bending,
            &mut self.nondom1.ext_finger_dir,
            &mut self.nondom1.palm,
            &mut self.nondom2.base_form,
            &mut self.nondom2.thumb,
            &mut self.nondom2.bending,
            &mut self.nondom2.ext_finger_dir,
            &mut self.nondom2.palm,
            &mut self.location_lr,
            &mut self.location_tb,
            &mut self.location_dist,
        ]
    }

    pub fn cell(&self, index: usize) -> Cell {
        self.cells()[index]
    }

    pub fn set_cell(&mut self, index: usize, cell: Cell) {
        *self.cell_refs_mut()[index] = cell;
    }

    /// Class owning a cell; `None` for the non-dominant-first flag, which is
    /// a derived 0/1 marker rather than a symbol class.
    pub fn cell_class(index: usize) -> Option<ClassId> {
        match index {
            SYMMETRY_IDX => Some(ClassId::Symmetry),
            NONDOM_FIRST_IDX => None,
            LOCATION_LR_IDX => Some(ClassId::LocationLR),
            LOCATION_TB_IDX => Some(ClassId::LocationTB),
            LOCATION_DIST_IDX => Some(ClassId::LocationDistance),
            i => Some(match (i - 2) % 5 {
                0 => ClassId::HandshapeBaseForm,
                1 => ClassId::ThumbPosition,
                2 => ClassId::Bending,
                3 => ClassId::ExtFingerDirection,
                _ => ClassId::PalmOrientation,
            }),
        }
    }

    pub fn cell_name(index: usize) -> &'static str {
        CELL_NAMES[index]
    }

    pub fn has_error(&self) -> bool {
        self.cells().iter().any(|c| c.is_error())
    }
}
