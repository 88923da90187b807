use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{SeqError, Sequence};

/// Symbol counts, ordered by symbol.
pub type Counts = BTreeMap<char, usize>;

/// Per-window symbol counts over a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub window: usize,
    pub step: usize,
    /// Start offset of each window.
    pub offsets: Vec<usize>,
    pub windows: Vec<Counts>,
    /// Counts over the whole sequence.
    pub totals: Counts,
}

impl CompositionReport {
    /// G+C share of the whole sequence.
    pub fn gc_fraction(&self) -> f64 {
        gc_fraction(&self.totals)
    }

    pub fn window_gc_fractions(&self) -> Vec<f64> {
        self.windows.iter().map(gc_fraction).collect()
    }
}

fn gc_fraction(counts: &Counts) -> f64 {
    let total: usize = counts.values().sum();
    if total == 0 {
        return 0.0;
    }
    let gc = counts.get(&'G').copied().unwrap_or(0) + counts.get(&'C').copied().unwrap_or(0);
    gc as f64 / total as f64
}

fn count(bytes: &[u8]) -> Counts {
    let mut counts = Counts::new();
    for &b in bytes {
        *counts.entry(b as char).or_insert(0) += 1;
    }
    counts
}

/// Count symbols in windows starting at `0, step, 2*step, ...`.
///
/// A trailing window shorter than `window` is reported only when
/// `include_partial` is set.
pub fn composition_windows(
    s: &Sequence,
    window: usize,
    step: usize,
    include_partial: bool,
) -> Result<CompositionReport, SeqError> {
    let bytes = s.as_bytes();
    if window == 0 || step == 0 {
        return Err(SeqError::InvalidParameter("window and step must be positive".into()));
    }
    if window > bytes.len() {
        return Err(SeqError::WindowTooLarge { window, len: bytes.len() });
    }
    let mut offsets = Vec::new();
    let mut windows = Vec::new();
    let mut offset = 0;
    while offset < bytes.len() {
        let end = offset + window;
        if end > bytes.len() && !include_partial {
            break;
        }
        offsets.push(offset);
        windows.push(count(&bytes[offset..end.min(bytes.len())]));
        offset += step;
    }
    Ok(CompositionReport {
        window,
        step,
        offsets,
        windows,
        totals: count(bytes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Alphabet;
    use proptest::prelude::*;

    fn dna(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Dna).unwrap()
    }

    fn counts(pairs: &[(char, usize)]) -> Counts {
        pairs.iter().copied().collect()
    }

    #[test]
    fn tiled_windows() {
        let r = composition_windows(&dna("AAAACCCC"), 4, 4, false).unwrap();
        assert_eq!(r.windows, vec![counts(&[('A', 4)]), counts(&[('C', 4)])]);
        assert_eq!(r.offsets, vec![0, 4]);
    }

    #[test]
    fn gc_totals() {
        let r = composition_windows(&dna("GGCC"), 4, 4, false).unwrap();
        assert_eq!(r.gc_fraction(), 1.0);
    }

    #[test]
    fn overlapping_windows() {
        let r = composition_windows(&dna("ACGTACGT"), 4, 2, false).unwrap();
        let each = counts(&[('A', 1), ('C', 1), ('G', 1), ('T', 1)]);
        assert_eq!(r.windows, vec![each.clone(), each.clone(), each]);
        assert_eq!(r.offsets, vec![0, 2, 4]);
    }

    #[test]
    fn partial_window_flag() {
        let s = dna("ACGTA");
        assert_eq!(composition_windows(&s, 2, 2, false).unwrap().windows.len(), 2);
        let r = composition_windows(&s, 2, 2, true).unwrap();
        assert_eq!(r.windows.len(), 3);
        assert_eq!(r.windows[2], counts(&[('A', 1)]));
    }

    #[test]
    fn window_too_large() {
        assert_eq!(
            composition_windows(&dna("ACG"), 4, 1, false),
            Err(SeqError::WindowTooLarge { window: 4, len: 3 })
        );
    }

    proptest! {
        #[test]
        fn tiling_sums_to_totals(raw in "[ACGT]{1,120}", window in 1usize..20) {
            let s = dna(&raw);
            prop_assume!(window <= s.len());
            let r = composition_windows(&s, window, window, true).unwrap();
            let mut sum = Counts::new();
            for (w, off) in r.windows.iter().zip(&r.offsets) {
                let expected_len = window.min(s.len() - off);
                prop_assert_eq!(w.values().sum::<usize>(), expected_len);
                for (k, v) in w {
                    *sum.entry(*k).or_insert(0) += v;
                }
            }
            prop_assert_eq!(sum, r.totals);
        }
    }
}
