//! Renders a [`ClassVector`] back into a label, and samples well-formed
//! vectors for round-trip checking.
//!
//! Rendering is the inverse of parsing on its own output: for any vector
//! accepted by [`render`], decoding the produced label yields the same
//! vector. Cells that the decoder fills implicitly (thumb and bending value
//! 0, neutral location) emit no symbols, so the label stays minimal.

use crate::symbol_table::{
    SymbolTable, NAME_BACKSLASH, NAME_HAND_SEPARATOR, NAME_RELAXED_HAND,
};
use crate::vector::{Cell, ClassId, ClassVector, HandCells, HandSlot, DEFAULT_LOCATION_DIST,
    DEFAULT_LOCATION_LR, DEFAULT_LOCATION_TB};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    /// The vector holds error codes, out-of-range values, or an
    /// inconsistent combination of cells.
    #[error("vector cannot be rendered: {0}")]
    InvalidVector(String),
    /// The dictionary has no symbol for a class value the vector uses.
    #[error("dictionary has no symbol for {class} value {value}")]
    MissingSymbol { class: ClassId, value: u8 },
    /// The dictionary lacks one of the structural symbols rendering needs.
    #[error("dictionary has no \"{0}\" symbol")]
    MissingStructural(&'static str),
}

fn invalid(reason: String) -> RenderError {
    RenderError::InvalidVector(reason)
}

type FieldGetter = fn(HandCells) -> Cell;

pub fn render(table: &SymbolTable, vector: &ClassVector) -> Result<String, RenderError> {
    validate(vector)?;

    let mut out = String::new();

    let symmetry = vector.symmetry.value().unwrap_or(0);
    if symmetry > 0 {
        out.push(class_symbol(table, ClassId::Symmetry, symmetry)?);
    }
    if vector.nondom_first.value().unwrap_or(0) == 1 {
        out.push(structural(table.relaxed_hand(), NAME_RELAXED_HAND)?);
    }

    push_hand_pair(table, &mut out, vector.dom1, vector.dom2)?;
    if vector.nondom1.base_form.is_value() {
        out.push(structural(table.hand_separator(), NAME_HAND_SEPARATOR)?);
        push_hand_pair(table, &mut out, vector.nondom1, vector.nondom2)?;
    }

    push_location(table, &mut out, vector)?;
    Ok(out)
}

fn class_symbol(table: &SymbolTable, class: ClassId, value: u8) -> Result<char, RenderError> {
    table
        .codepoint_for(class, value)
        .ok_or(RenderError::MissingSymbol { class, value })
}

fn structural(codepoint: Option<char>, name: &'static str) -> Result<char, RenderError> {
    codepoint.ok_or(RenderError::MissingStructural(name))
}

/// Handshape group, then extended finger direction, then palm orientation,
/// each with its backslashed secondary description when present.
fn push_hand_pair(
    table: &SymbolTable,
    out: &mut String,
    primary: HandCells,
    secondary: HandCells,
) -> Result<(), RenderError> {
    push_handshape_group(table, out, primary)?;
    if secondary.base_form.is_value() {
        out.push(structural(table.backslash_operator(), NAME_BACKSLASH)?);
        push_handshape_group(table, out, secondary)?;
    }
    let pos_fields: [(FieldGetter, ClassId); 2] = [
        (|h| h.ext_finger_dir, ClassId::ExtFingerDirection),
        (|h| h.palm, ClassId::PalmOrientation),
    ];
    for (field_of, class) in pos_fields {
        if let Some(value) = field_of(primary).value() {
            out.push(class_symbol(table, class, value)?);
            if let Some(twin) = field_of(secondary).value() {
                out.push(structural(table.backslash_operator(), NAME_BACKSLASH)?);
                out.push(class_symbol(table, class, twin)?);
            }
        }
    }
    Ok(())
}

/// Base form plus any non-zero thumb and bending modifiers. Value 0 means
/// "no modifier written" and emits nothing.
fn push_handshape_group(
    table: &SymbolTable,
    out: &mut String,
    hand: HandCells,
) -> Result<(), RenderError> {
    let base = hand
        .base_form
        .value()
        .expect("validated: handshape group starts with a base form");
    out.push(class_symbol(table, ClassId::HandshapeBaseForm, base)?);
    if let Some(thumb) = hand.thumb.value() {
        if thumb > 0 {
            out.push(class_symbol(table, ClassId::ThumbPosition, thumb)?);
        }
    }
    if let Some(bend) = hand.bending.value() {
        if bend > 0 {
            out.push(class_symbol(table, ClassId::Bending, bend)?);
        }
    }
    Ok(())
}

/// The neutral location `(0, 14, 0)` emits nothing. Otherwise the
/// top/bottom symbol is always written; a left/right marker lands before it
/// for values 1-2 and after it for values 3-4, and a non-zero distance
/// closes the block.
fn push_location(
    table: &SymbolTable,
    out: &mut String,
    vector: &ClassVector,
) -> Result<(), RenderError> {
    let lr = vector.location_lr.value().unwrap_or(DEFAULT_LOCATION_LR);
    let tb = vector.location_tb.value().unwrap_or(DEFAULT_LOCATION_TB);
    let dist = vector
        .location_dist
        .value()
        .unwrap_or(DEFAULT_LOCATION_DIST);
    if lr == DEFAULT_LOCATION_LR && tb == DEFAULT_LOCATION_TB && dist == DEFAULT_LOCATION_DIST {
        return Ok(());
    }
    if (1..=2).contains(&lr) {
        out.push(class_symbol(table, ClassId::LocationLR, lr)?);
    }
    out.push(class_symbol(table, ClassId::LocationTB, tb)?);
    if (3..=4).contains(&lr) {
        out.push(class_symbol(table, ClassId::LocationLR, lr - 2)?);
    }
    if dist > 0 {
        out.push(class_symbol(table, ClassId::LocationDistance, dist)?);
    }
    Ok(())
}

fn validate(vector: &ClassVector) -> Result<(), RenderError> {
    let cells = vector.cells();
    for (i, cell) in cells.iter().enumerate() {
        let name = ClassVector::cell_name(i);
        match *cell {
            Cell::Error(code) => {
                return Err(invalid(format!("cell {name} holds error code {code}")));
            }
            Cell::Value(value) => {
                let ok = match ClassVector::cell_class(i) {
                    Some(class) => class.contains(value),
                    None => value <= 1,
                };
                if !ok {
                    return Err(invalid(format!("cell {name} value {value} is out of range")));
                }
            }
            Cell::Missing => {}
        }
    }

    for (cell, name) in [
        (vector.dom1.base_form, "Dom1BaseForm"),
        (vector.dom1.ext_finger_dir, "Dom1ExtFingerDir"),
        (vector.dom1.palm, "Dom1Palm"),
    ] {
        if !cell.is_value() {
            return Err(invalid(format!("mandatory cell {name} is absent")));
        }
    }

    for slot in HandSlot::ALL {
        let hand = vector.hand(slot);
        if (hand.thumb.is_value() || hand.bending.is_value()) && !hand.base_form.is_value() {
            return Err(invalid(format!(
                "{slot:?} has modifiers without a base form"
            )));
        }
    }

    // a secondary description presupposes the primary one of the same class
    for (pair, primary, secondary) in [
        ("Dom", vector.dom1, vector.dom2),
        ("NonDom", vector.nondom1, vector.nondom2),
    ] {
        let fields: [(FieldGetter, &str); 3] = [
            (|h| h.base_form, "base form"),
            (|h| h.ext_finger_dir, "extended finger direction"),
            (|h| h.palm, "palm orientation"),
        ];
        for (field_of, what) in fields {
            if field_of(secondary).is_value() && !field_of(primary).is_value() {
                return Err(invalid(format!(
                    "{pair}2 {what} without the {pair}1 one"
                )));
            }
        }
    }

    // anything on the non-dominant hand requires its base form
    let nondom_used = [vector.nondom1, vector.nondom2].iter().any(|h| {
        [h.base_form, h.thumb, h.bending, h.ext_finger_dir, h.palm]
            .iter()
            .any(|c| c.is_value())
    });
    if nondom_used && !vector.nondom1.base_form.is_value() {
        return Err(invalid(
            "non-dominant cells without a NonDom1 base form".to_string(),
        ));
    }

    Ok(())
}

/// Draws a well-formed vector from a seeded generator; the same seed always
/// yields the same vector. Every vector drawn here satisfies [`render`]'s
/// validity rules.
pub fn sample_valid_vector(seed: u64) -> ClassVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = ClassVector::missing();

    v.symmetry = rand_cell(&mut rng, ClassId::Symmetry);
    v.nondom_first = Cell::Value(rng.gen_range(0..=1u8));

    v.dom1.base_form = rand_cell(&mut rng, ClassId::HandshapeBaseForm);
    v.dom1.thumb = rand_cell(&mut rng, ClassId::ThumbPosition);
    v.dom1.bending = rand_cell(&mut rng, ClassId::Bending);
    v.dom1.ext_finger_dir = rand_cell(&mut rng, ClassId::ExtFingerDirection);
    v.dom1.palm = rand_cell(&mut rng, ClassId::PalmOrientation);

    if rng.gen_bool(0.5) {
        v.dom2.base_form = rand_cell(&mut rng, ClassId::HandshapeBaseForm);
        v.dom2.thumb = rand_cell(&mut rng, ClassId::ThumbPosition);
        v.dom2.bending = rand_cell(&mut rng, ClassId::Bending);
    }
    if rng.gen_bool(0.5) {
        v.dom2.ext_finger_dir = rand_cell(&mut rng, ClassId::ExtFingerDirection);
    }
    if rng.gen_bool(0.5) {
        v.dom2.palm = rand_cell(&mut rng, ClassId::PalmOrientation);
    }

    if rng.gen_bool(0.5) {
        v.nondom1.base_form = rand_cell(&mut rng, ClassId::HandshapeBaseForm);
        v.nondom1.thumb = rand_cell(&mut rng, ClassId::ThumbPosition);
        v.nondom1.bending = rand_cell(&mut rng, ClassId::Bending);
        if rng.gen_bool(0.5) {
            v.nondom1.ext_finger_dir = rand_cell(&mut rng, ClassId::ExtFingerDirection);
        }
        if rng.gen_bool(0.5) {
            v.nondom1.palm = rand_cell(&mut rng, ClassId::PalmOrientation);
        }
        if rng.gen_bool(0.5) {
            v.nondom2.base_form = rand_cell(&mut rng, ClassId::HandshapeBaseForm);
            v.nondom2.thumb = rand_cell(&mut rng, ClassId::ThumbPosition);
            v.nondom2.bending = rand_cell(&mut rng, ClassId::Bending);
        }
        if v.nondom1.ext_finger_dir.is_value() && rng.gen_bool(0.5) {
            v.nondom2.ext_finger_dir = rand_cell(&mut rng, ClassId::ExtFingerDirection);
        }
        if v.nondom1.palm.is_value() && rng.gen_bool(0.5) {
            v.nondom2.palm = rand_cell(&mut rng, ClassId::PalmOrientation);
        }
    }

    v.location_lr = rand_cell(&mut rng, ClassId::LocationLR);
    v.location_tb = rand_cell(&mut rng, ClassId::LocationTB);
    v.location_dist = rand_cell(&mut rng, ClassId::LocationDistance);
    v
}

fn rand_cell(rng: &mut ChaCha8Rng, class: ClassId) -> Cell {
    Cell::Value(rng.gen_range(0..=class.max_value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_label, ParseStatus};
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

    fn hand(base: i16, thumb: i16, bend: i16, ext: i16, palm: i16) -> HandCells {
        fn cell(x: i16) -> Cell {
            if x < 0 {
                Cell::Missing
            } else {
                Cell::Value(x as u8)
            }
        }
        HandCells {
            base_form: cell(base),
            thumb: cell(thumb),
            bending: cell(bend),
            ext_finger_dir: cell(ext),
            palm: cell(palm),
        }
    }

    fn two_handed_reference() -> ClassVector {
        ClassVector {
            symmetry: Cell::Value(7),
            nondom_first: Cell::Value(0),
            dom1: hand(0, 0, 0, 0, 5),
            dom2: hand(2, 0, 4, -1, -1),
            nondom1: hand(0, 0, 0, 1, 6),
            nondom2: hand(2, 0, 4, -1, -1),
            location_lr: Cell::Value(0),
            location_tb: Cell::Value(13),
            location_dist: Cell::Value(0),
        }
    }

    fn one_handed_reference() -> ClassVector {
        ClassVector {
            symmetry: Cell::Value(0),
            nondom_first: Cell::Value(0),
            dom1: hand(0, 1, 0, 0, 4),
            dom2: hand(-1, -1, -1, 7, 2),
            nondom1: hand(-1, -1, -1, -1, -1),
            nondom2: hand(-1, -1, -1, -1, -1),
            location_lr: Cell::Value(4),
            location_tb: Cell::Value(3),
            location_dist: Cell::Value(0),
        }
    }

    #[test]
    fn two_handed_reference_vector_renders_to_the_known_label() {
        let rendered = render(table(), &two_handed_reference()).unwrap();
        let expected = label(&[
            "hamsymmparoi",
            "hamfist",
            "backslash",
            "hamfinger2",
            "hamdoublebent",
            "hamextfingeru",
            "hampalmdl",
            "hamplus",
            "hamfist",
            "backslash",
            "hamfinger2",
            "hamdoublebent",
            "hamextfingerur",
            "hampalml",
            "hamunderchin",
        ]);
        assert_eq!(rendered, expected);
    }

    #[test]
    fn one_handed_reference_vector_renders_to_the_known_label() {
        let rendered = render(table(), &one_handed_reference()).unwrap();
        let expected = label(&[
            "hamfist",
            "hamthumboutmod",
            "hamextfingeru",
            "backslash",
            "hamextfingerul",
            "hampalmd",
            "backslash",
            "hampalmr",
            "hameyebrows",
            "hamlrat",
        ]);
        assert_eq!(rendered, expected);
    }

    #[test]
    fn minimal_vector_renders_three_symbols() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(0, 0, 0, 0, 0);
        let rendered = render(table(), &v).unwrap();
        assert_eq!(rendered, label(&["hamfist", "hamextfingeru", "hampalmu"]));
    }

    #[test]
    fn neutral_location_emits_no_symbols_but_nonneutral_parts_do() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(1, 0, 0, 2, 2);
        v.location_lr = Cell::Value(0);
        v.location_tb = Cell::Value(DEFAULT_LOCATION_TB);
        v.location_dist = Cell::Value(0);
        let neutral = render(table(), &v).unwrap();
        assert_eq!(neutral.chars().count(), 3);

        // a non-zero distance forces the top/bottom symbol out even at the
        // neutral height
        v.location_dist = Cell::Value(2);
        let with_dist = render(table(), &v).unwrap();
        assert_eq!(
            with_dist,
            label(&["hamflathand", "hamextfingerr", "hampalmr", "hamneck", "hamclose"])
        );
    }

    #[test]
    fn left_right_marker_lands_on_the_matching_side_of_the_location() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(0, 0, 0, 0, 0);
        v.location_tb = Cell::Value(17);

        v.location_lr = Cell::Value(2);
        let before = render(table(), &v).unwrap();
        assert_eq!(
            before,
            label(&["hamfist", "hamextfingeru", "hampalmu", "hamlrat", "hamchest"])
        );

        v.location_lr = Cell::Value(3);
        let after = render(table(), &v).unwrap();
        assert_eq!(
            after,
            label(&["hamfist", "hamextfingeru", "hampalmu", "hamchest", "hamlrbeside"])
        );
    }

    #[test]
    fn vectors_with_error_codes_do_not_render() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(0, 0, 0, 0, 0);
        v.dom1.thumb = Cell::Error(-1);
        assert!(matches!(
            render(table(), &v),
            Err(RenderError::InvalidVector(_))
        ));
    }

    #[test]
    fn out_of_range_values_do_not_render() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(12, 0, 0, 0, 0);
        assert!(matches!(
            render(table(), &v),
            Err(RenderError::InvalidVector(_))
        ));
    }

    #[test]
    fn missing_mandatory_cells_do_not_render() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(0, 0, 0, 0, -1);
        assert!(matches!(
            render(table(), &v),
            Err(RenderError::InvalidVector(_))
        ));
    }

    #[test]
    fn modifiers_without_a_base_form_do_not_render() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(0, 0, 0, 0, 0);
        v.dom2.thumb = Cell::Value(1);
        assert!(matches!(
            render(table(), &v),
            Err(RenderError::InvalidVector(_))
        ));
    }

    #[test]
    fn secondary_descriptions_require_the_primary_one() {
        let mut v = ClassVector::missing();
        v.dom1 = hand(0, 0, 0, 0, 0);
        v.nondom2.base_form = Cell::Value(1);
        v.nondom2.thumb = Cell::Value(0);
        v.nondom2.bending = Cell::Value(0);
        assert!(matches!(
            render(table(), &v),
            Err(RenderError::InvalidVector(_))
        ));

        let mut w = ClassVector::missing();
        w.dom1 = hand(0, 0, 0, 0, 0);
        w.nondom1.ext_finger_dir = Cell::Value(3);
        assert!(matches!(
            render(table(), &w),
            Err(RenderError::InvalidVector(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        assert_eq!(sample_valid_vector(42), sample_valid_vector(42));
        assert_eq!(sample_valid_vector(7), sample_valid_vector(7));
        let distinct = (0..32)
            .map(sample_valid_vector)
            .collect::<std::collections::HashSet<_>>();
        assert!(distinct.len() > 16, "seeds should mostly differ");
    }

    #[test]
    fn sampled_vectors_always_render() {
        for seed in 0..512 {
            let v = sample_valid_vector(seed);
            render(table(), &v).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }

    #[test]
    fn reference_vectors_survive_a_round_trip() {
        for v in [two_handed_reference(), one_handed_reference()] {
            let rendered = render(table(), &v).unwrap();
            let outcome = parse_label(table(), &rendered);
            assert_eq!(outcome.status, ParseStatus::Parsed);
            assert_eq!(outcome.vector, v);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sampled_vectors_round_trip_through_render_and_parse(seed in any::<u64>()) {
                let v = sample_valid_vector(seed);
                let rendered = render(table(), &v).unwrap();
                let outcome = parse_label(table(), &rendered);
                prop_assert_eq!(outcome.status, ParseStatus::Parsed);
                prop_assert_eq!(outcome.vector, v);
            }

            #[test]
            fn skippable_noise_does_not_change_the_decoded_vector(seed in any::<u64>()) {
                let v = sample_valid_vector(seed);
                let rendered = render(table(), &v).unwrap();
                let noisy = format!(
                    "~{rendered}{}{}",
                    table().codepoint_of_name("hammoveu").unwrap(),
                    table().codepoint_of_name("hamfullstop").unwrap(),
                );
                let outcome = parse_label(table(), &noisy);
                prop_assert_eq!(outcome.status, ParseStatus::Parsed);
                prop_assert_eq!(outcome.vector, v);
            }
        }
    }
}
