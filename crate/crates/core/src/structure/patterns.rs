use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::StructureError;
use crate::seq::{Alphabet, Sequence};

pub const DEFAULT_HYDROPHOBIC: &str = "LIVMFWYC";

/// Residues i..i+7 of one helical face test.
pub const HELIX_SPAN: usize = 8;
const HELIX_FACE: [bool; HELIX_SPAN] = [true, false, false, true, true, false, false, true];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HydrophobicSet {
    residues: Vec<u8>,
}

impl Default for HydrophobicSet {
    fn default() -> Self {
        HydrophobicSet::new(DEFAULT_HYDROPHOBIC)
    }
}

impl HydrophobicSet {
    pub fn new(residues: &str) -> Self {
        let mut r: Vec<u8> = residues.bytes().map(|b| b.to_ascii_uppercase()).collect();
        r.sort_unstable();
        r.dedup();
        HydrophobicSet { residues: r }
    }

    pub fn contains(&self, residue: u8) -> bool {
        self.residues.binary_search(&residue).is_ok()
    }

    pub fn residues(&self) -> String {
        String::from_utf8(self.residues.clone()).expect("ascii residues")
    }
}

pub fn hydrophobic_mask(s: &Sequence, set: &HydrophobicSet) -> Vec<bool> {
    s.as_bytes().iter().map(|&r| set.contains(r)).collect()
}

/// Merge overlapping ranges; input must be sorted by start.
fn merge(ranges: impl IntoIterator<Item = Range<usize>>) -> Vec<Range<usize>> {
    let mut out: Vec<Range<usize>> = Vec::new();
    for r in ranges {
        match out.last_mut() {
            Some(last) if r.start < last.end => last.end = last.end.max(r.end),
            _ => out.push(r),
        }
    }
    out
}

/// Helix flags on a hydrophobicity mask, such as per-column conservation in
/// an alignment. Every window with hydrophobic positions exactly at
/// i, i+3, i+4, i+7 is flagged; overlapping windows are merged and merged
/// ranges shorter than `min_window` dropped.
pub fn detect_helix_mask(mask: &[bool], min_window: usize) -> Result<Vec<Range<usize>>, StructureError> {
    if min_window < HELIX_SPAN {
        return Err(StructureError::InvalidParameter(format!(
            "helix window must be at least {HELIX_SPAN}, got {min_window}"
        )));
    }
    let hits = mask
        .windows(HELIX_SPAN)
        .enumerate()
        .filter(|(_, w)| *w == HELIX_FACE)
        .map(|(i, _)| i..i + HELIX_SPAN);
    Ok(merge(hits).into_iter().filter(|r| r.len() >= min_window).collect())
}

pub fn detect_helix(s: &Sequence, set: &HydrophobicSet, min_window: usize) -> Result<Vec<Range<usize>>, StructureError> {
    s.require(Alphabet::Protein)?;
    detect_helix_mask(&hydrophobic_mask(s, set), min_window)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrandKind {
    /// Alternating hydrophobic and polar residues: one face buried.
    HalfBuried,
    /// A run of hydrophobic residues.
    Buried,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandRange {
    pub range: Range<usize>,
    pub kind: StrandKind,
}

/// Strand flags: maximal alternating stretches of at least `min_alt`
/// residues and maximal hydrophobic runs of at least `min_run`, sorted by
/// start.
pub fn detect_strand(
    s: &Sequence,
    set: &HydrophobicSet,
    min_alt: usize,
    min_run: usize,
) -> Result<Vec<StrandRange>, StructureError> {
    s.require(Alphabet::Protein)?;
    if min_alt < 4 || min_run < 4 {
        return Err(StructureError::InvalidParameter(format!(
            "strand lengths must be at least 4, got {min_alt} and {min_run}"
        )));
    }
    let mask = hydrophobic_mask(s, set);
    let n = mask.len();
    let mut out = Vec::new();

    let mut start = 0;
    for i in 1..=n {
        if i == n || mask[i] == mask[i - 1] {
            if i - start >= min_alt {
                out.push(StrandRange { range: start..i, kind: StrandKind::HalfBuried });
            }
            start = i;
        }
    }

    let mut i = 0;
    while i < n {
        if !mask[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && mask[i] {
            i += 1;
        }
        if i - start >= min_run {
            out.push(StrandRange { range: start..i, kind: StrandKind::Buried });
        }
    }
    out.sort_by_key(|r| (r.range.start, r.range.end, r.kind));
    Ok(out)
}
