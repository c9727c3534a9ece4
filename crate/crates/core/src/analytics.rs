//! Corpus-level reporting: parsing effectiveness and decoding
//! effectiveness.
//!
//! Parsing effectiveness is the share of rows that decode cleanly. Decoding
//! effectiveness asks the opposite question of the output space: of all
//! distinct glosses that decoded, how many own their initial-posture vector
//! alone? Glosses that share a vector form collision groups; a large group
//! means many signs are indistinguishable by initial posture alone.
//!
//! Percentages are computed in integer arithmetic and rounded half-up to
//! two decimals, so reports are reproducible bit for bit.

use crate::corpus_io::RowResult;
use crate::vector::ClassVector;
use std::collections::HashMap;
use std::fmt::Write as _;

/// `100 * part / whole` rounded half-up to two decimals; 0 when `whole` is 0.
pub fn percent_2dp(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        return 0.0;
    }
    let scaled = part * 10_000;
    let mut hundredths = scaled / whole;
    if (scaled % whole) * 2 >= whole {
        hundredths += 1;
    }
    hundredths as f64 / 100.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivenessReport {
    pub total: usize,
    pub parsed: usize,
    /// Failed parses plus schema mismatches.
    pub errors: usize,
    pub eta_p: f64,
}

pub fn effectiveness(results: &[RowResult]) -> EffectivenessReport {
    let total = results.len();
    let parsed = results.iter().filter(|r| r.is_parsed()).count();
    EffectivenessReport {
        total,
        parsed,
        errors: total - parsed,
        eta_p: percent_2dp(parsed as u64, total as u64),
    }
}

impl EffectivenessReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rows read: {}", self.total);
        let _ = writeln!(out, "rows parsed: {}", self.parsed);
        let _ = writeln!(out, "rows failed: {}", self.errors);
        let _ = writeln!(out, "parsing effectiveness: {:.2}%", self.eta_p);
        out
    }

    pub fn render_delimited(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rows_total\t{}", self.total);
        let _ = writeln!(out, "rows_parsed\t{}", self.parsed);
        let _ = writeln!(out, "rows_failed\t{}", self.errors);
        let _ = writeln!(out, "eta_p\t{:.2}", self.eta_p);
        out
    }
}

/// Glosses that map to the same initial-posture vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionGroup {
    pub vector: ClassVector,
    /// Sorted ascending; always at least two entries.
    pub glosses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodingReport {
    /// Distinct glosses among the cleanly decoded rows.
    pub unique_glosses: usize,
    /// Glosses whose vector no other gloss shares.
    pub singly_labelled: usize,
    /// Glosses that share their vector with at least one other gloss.
    pub repeated: usize,
    pub eta_d: f64,
    /// Size of the biggest collision group; 1 when every gloss is alone, 0
    /// when nothing decoded.
    pub max_group_size: usize,
    /// Groups of two or more, biggest first, ties by first gloss.
    pub collision_groups: Vec<CollisionGroup>,
    /// Whether glosses were compared case-insensitively.
    pub fold_case: bool,
}

/// Considers only cleanly decoded rows. A gloss occurring on several rows
/// counts once; if its rows decoded to different vectors (annotation
/// variants), the smallest vector in cell order represents it, which keeps
/// the report independent of row order.
pub fn decoding(results: &[RowResult], gloss_index: usize, fold_case: bool) -> DecodingReport {
    let mut representative: HashMap<String, ClassVector> = HashMap::new();
    for result in results {
        if let RowResult::Parsed { row, outcome } = result {
            let gloss = &row.fields[gloss_index];
            let key = if fold_case {
                gloss.to_lowercase()
            } else {
                gloss.clone()
            };
            representative
                .entry(key)
                .and_modify(|v| {
                    if outcome.vector < *v {
                        *v = outcome.vector;
                    }
                })
                .or_insert(outcome.vector);
        }
    }

    let mut by_vector: HashMap<ClassVector, Vec<String>> = HashMap::new();
    for (gloss, vector) in &representative {
        by_vector.entry(*vector).or_default().push(gloss.clone());
    }

    let unique_glosses = representative.len();
    let singly_labelled = by_vector.values().filter(|g| g.len() == 1).count();
    let repeated = unique_glosses - singly_labelled;
    let max_group_size = by_vector.values().map(Vec::len).max().unwrap_or(0);

    let mut collision_groups: Vec<CollisionGroup> = by_vector
        .into_iter()
        .filter(|(_, glosses)| glosses.len() > 1)
        .map(|(vector, mut glosses)| {
            glosses.sort();
            CollisionGroup { vector, glosses }
        })
        .collect();
    collision_groups.sort_by(|a, b| {
        b.glosses
            .len()
            .cmp(&a.glosses.len())
            .then_with(|| a.glosses[0].cmp(&b.glosses[0]))
            .then_with(|| a.vector.cmp(&b.vector))
    });

    DecodingReport {
        unique_glosses,
        singly_labelled,
        repeated,
        eta_d: percent_2dp(singly_labelled as u64, unique_glosses as u64),
        max_group_size,
        collision_groups,
        fold_case,
    }
}

impl DecodingReport {
    pub fn render_text(&self) -> String {
        let mode = if self.fold_case { "case-folded" } else { "exact" };
        let mut out = String::new();
        let _ = writeln!(out, "gloss comparison: {mode}");
        let _ = writeln!(out, "unique glosses: {}", self.unique_glosses);
        let _ = writeln!(out, "singly labelled: {}", self.singly_labelled);
        let _ = writeln!(out, "sharing a vector: {}", self.repeated);
        let _ = writeln!(out, "decoding effectiveness: {:.2}%", self.eta_d);
        let _ = writeln!(out, "largest collision group: {}", self.max_group_size);
        for group in self.collision_groups.iter().take(10) {
            let _ = writeln!(
                out,
                "collision ({}): {}",
                group.glosses.len(),
                group.glosses.join(" ")
            );
        }
        if self.collision_groups.len() > 10 {
            let _ = writeln!(
                out,
                "... and {} more groups",
                self.collision_groups.len() - 10
            );
        }
        out
    }

    pub fn render_delimited(&self) -> String {
        let mode = if self.fold_case { "folded" } else { "exact" };
        let mut out = String::new();
        let _ = writeln!(out, "gloss_mode\t{mode}");
        let _ = writeln!(out, "unique_glosses\t{}", self.unique_glosses);
        let _ = writeln!(out, "singly_labelled\t{}", self.singly_labelled);
        let _ = writeln!(out, "repeated\t{}", self.repeated);
        let _ = writeln!(out, "eta_d\t{:.2}", self.eta_d);
        let _ = writeln!(out, "max_group\t{}", self.max_group_size);
        for group in &self.collision_groups {
            let cells = group
                .vector
                .cells()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                out,
                "collision_group\t{}\t{}\t{}",
                group.glosses.len(),
                cells,
                group.glosses.join(" ")
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_io::{CorpusRow, SchemaMismatch};
    use crate::generator::sample_valid_vector;
    use crate::parser::{FirstError, ParseOutcome, ParseStatus};
    use crate::vector::Cell;

    fn fields(gloss: &str) -> Vec<String> {
        vec![
            "clip".into(),
            "0.0".into(),
            "1.0".into(),
            "dict".into(),
            gloss.into(),
            "label".into(),
        ]
    }

    fn parsed(line: usize, gloss: &str, vector: ClassVector) -> RowResult {
        RowResult::Parsed {
            row: CorpusRow {
                line_number: line,
                fields: fields(gloss),
            },
            outcome: ParseOutcome {
                vector,
                status: ParseStatus::Parsed,
                first_error: None,
            },
        }
    }

    fn failed(line: usize, gloss: &str) -> RowResult {
        let mut vector = sample_valid_vector(0);
        vector.symmetry = Cell::Error(-1);
        RowResult::Failed {
            row: CorpusRow {
                line_number: line,
                fields: fields(gloss),
            },
            outcome: ParseOutcome {
                vector,
                status: ParseStatus::Failed,
                first_error: Some(FirstError {
                    class_name: "Symmetry",
                    code: -1,
                    position: 0,
                }),
            },
        }
    }

    fn malformed(line: usize) -> RowResult {
        RowResult::Malformed(SchemaMismatch {
            line_number: line,
            expected: 6,
            found: 2,
            raw: "bad row".into(),
        })
    }

    #[test]
    fn percentages_round_half_up_to_two_decimals() {
        assert_eq!(percent_2dp(0, 0), 0.0);
        assert_eq!(percent_2dp(0, 7), 0.0);
        assert_eq!(percent_2dp(7, 7), 100.0);
        assert_eq!(percent_2dp(1, 3), 33.33);
        assert_eq!(percent_2dp(2, 3), 66.67);
        // exact midpoint rounds up: 3/800 = 0.375%
        assert_eq!(percent_2dp(3, 800), 0.38);
        assert_eq!(percent_2dp(1, 800), 0.13);
        assert_eq!(percent_2dp(17, 20), 85.0);
    }

    #[test]
    fn known_corpus_ratios_reproduce() {
        // (parsed, total, expected parsing effectiveness)
        for (parsed, total, expected) in [
            (561u64, 568u64, 98.77),
            (778, 829, 93.85),
            (2828, 2835, 99.75),
            (3907, 4123, 94.76),
            (3316, 3476, 95.40),
        ] {
            assert_eq!(percent_2dp(parsed, total), expected, "{parsed}/{total}");
        }
        // (singly labelled, unique glosses, expected decoding effectiveness)
        for (singly, unique, expected) in [
            (484u64, 514u64, 94.16),
            (684, 723, 94.61),
            (2259, 2480, 91.09),
            (2580, 3078, 83.82),
            (283, 300, 94.33),
        ] {
            assert_eq!(percent_2dp(singly, unique), expected, "{singly}/{unique}");
        }
    }

    #[test]
    fn effectiveness_counts_failed_and_malformed_rows_as_errors() {
        let mut results: Vec<RowResult> = (0..17)
            .map(|i| parsed(i + 1, &format!("G{i}"), sample_valid_vector(i as u64)))
            .collect();
        results.push(failed(18, "BAD1"));
        results.push(failed(19, "BAD2"));
        results.push(malformed(20));
        let report = effectiveness(&results);
        assert_eq!(report.total, 20);
        assert_eq!(report.parsed, 17);
        assert_eq!(report.errors, 3);
        assert_eq!(report.eta_p, 85.0);
    }

    #[test]
    fn decoding_ignores_rows_that_did_not_parse() {
        let v = sample_valid_vector(1);
        let results = vec![parsed(1, "ONE", v), failed(2, "TWO"), malformed(3)];
        let report = decoding(&results, 4, false);
        assert_eq!(report.unique_glosses, 1);
        assert_eq!(report.singly_labelled, 1);
        assert_eq!(report.repeated, 0);
        assert_eq!(report.eta_d, 100.0);
        assert_eq!(report.max_group_size, 1);
        assert!(report.collision_groups.is_empty());
    }

    #[test]
    fn empty_input_produces_a_zeroed_report() {
        let report = decoding(&[], 4, false);
        assert_eq!(report.unique_glosses, 0);
        assert_eq!(report.eta_d, 0.0);
        assert_eq!(report.max_group_size, 0);
    }

    #[test]
    fn shared_vectors_form_sorted_collision_groups() {
        let shared = sample_valid_vector(10);
        let other = sample_valid_vector(11);
        assert_ne!(shared, other);
        let results = vec![
            parsed(1, "CHARLIE", shared),
            parsed(2, "ALPHA", shared),
            parsed(3, "BRAVO", shared),
            parsed(4, "DELTA", other),
        ];
        let report = decoding(&results, 4, false);
        assert_eq!(report.unique_glosses, 4);
        assert_eq!(report.singly_labelled, 1);
        assert_eq!(report.repeated, 3);
        assert_eq!(report.eta_d, 25.0);
        assert_eq!(report.max_group_size, 3);
        assert_eq!(report.collision_groups.len(), 1);
        assert_eq!(
            report.collision_groups[0].glosses,
            vec!["ALPHA", "BRAVO", "CHARLIE"]
        );
    }

    #[test]
    fn repeated_glosses_count_once_with_the_smallest_vector() {
        let small = ClassVector::missing();
        let big = sample_valid_vector(2);
        assert!(small < big);
        let results = vec![
            parsed(1, "SAME", big),
            parsed(2, "SAME", small),
            parsed(3, "SAME", big),
        ];
        let report = decoding(&results, 4, false);
        assert_eq!(report.unique_glosses, 1);
        assert_eq!(report.singly_labelled, 1);

        // the representative is order-independent
        let reversed: Vec<RowResult> = results.into_iter().rev().collect();
        assert_eq!(decoding(&reversed, 4, false), report);
    }

    #[test]
    fn report_is_invariant_under_row_permutation() {
        let results: Vec<RowResult> = (0..40)
            .map(|i| parsed(i + 1, &format!("G{}", i % 13), sample_valid_vector((i % 7) as u64)))
            .collect();
        let forward = decoding(&results, 4, false);
        let reversed: Vec<RowResult> = results.into_iter().rev().collect();
        assert_eq!(decoding(&reversed, 4, false), forward);
    }

    #[test]
    fn case_folding_merges_glosses_only_when_asked() {
        let v1 = sample_valid_vector(20);
        let v2 = sample_valid_vector(21);
        assert_ne!(v1, v2);
        let results = vec![parsed(1, "Hello", v1), parsed(2, "HELLO", v2)];

        let exact = decoding(&results, 4, false);
        assert_eq!(exact.unique_glosses, 2);

        let folded = decoding(&results, 4, true);
        assert_eq!(folded.unique_glosses, 1);
        assert!(folded.fold_case);
    }

    #[test]
    fn reports_render_both_shapes() {
        let shared = sample_valid_vector(30);
        let results = vec![parsed(1, "A", shared), parsed(2, "B", shared), failed(3, "C")];
        let eff = effectiveness(&results);
        let text = eff.render_text();
        assert!(text.contains("rows read: 3"));
        assert!(text.contains("parsing effectiveness: 66.67%"));
        let tsv = eff.render_delimited();
        assert!(tsv.contains("rows_parsed\t2"));
        assert!(tsv.contains("eta_p\t66.67"));

        let dec = decoding(&results, 4, false);
        let text = dec.render_text();
        assert!(text.contains("gloss comparison: exact"));
        assert!(text.contains("decoding effectiveness: 0.00%"));
        assert!(text.contains("collision (2): A B"));
        let tsv = dec.render_delimited();
        assert!(tsv.contains("eta_d\t0.00"));
        assert!(tsv.contains("collision_group\t2\t"));
        let cells_field = tsv
            .lines()
            .find(|l| l.starts_with("collision_group"))
            .unwrap()
            .split('\t')
            .nth(2)
            .unwrap()
            .to_string();
        assert_eq!(cells_field.split(',').count(), 25);
    }
}
