use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::codon::{translate_bytes, CodonTable, Frame, StopPolicy};
use super::GeneError;
use crate::seq::{reverse_complement, Alphabet, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrfParams {
    /// Minimum peptide length, stop excluded.
    pub min_peptide: usize,
    /// Also report ORFs starting at an ATG inside another ORF of the same frame.
    pub nested: bool,
    /// Report ORFs that reach the end of the strand without a stop.
    pub open_ended: bool,
}

impl Default for OrfParams {
    fn default() -> Self {
        OrfParams {
            min_peptide: 30,
            nested: false,
            open_ended: false,
        }
    }
}

/// A start-to-stop span in one reading frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orf {
    pub frame: Frame,
    /// Forward-strand coordinates of the coding bases, stop codon excluded.
    pub range: Range<usize>,
    pub peptide: Sequence,
    /// False for open-ended ORFs that run off the strand.
    pub has_stop: bool,
}

/// Coding spans within one strand, as strand-local ranges.
fn scan_strand(strand: &[u8], offset: usize, params: OrfParams) -> Vec<(Range<usize>, bool)> {
    let table = CodonTable::standard();
    let mut found = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    let mut pos = offset;
    while pos + 3 <= strand.len() {
        let codon = &strand[pos..pos + 3];
        if table.is_stop(codon) {
            found.extend(open.drain(..).map(|start| (start..pos, true)));
        } else if table.is_start(codon) && (params.nested || open.is_empty()) {
            open.push(pos);
        }
        pos += 3;
    }
    if params.open_ended {
        found.extend(open.into_iter().map(|start| (start..pos, false)));
    }
    found
}

/// Every ATG-initiated ORF in all six frames whose peptide reaches `min_peptide`.
///
/// By default only the first ATG before each stop starts an ORF. Results are
/// sorted by frame (`+1..+3`, then `-1..-3`) and then forward-strand start.
pub fn find_orfs(s: &Sequence, params: OrfParams) -> Result<Vec<Orf>, GeneError> {
    s.require(Alphabet::Dna)?;
    if params.min_peptide == 0 {
        return Err(GeneError::InvalidParameter("minimum peptide length must be at least 1".into()));
    }
    let rc = reverse_complement(s)?;
    let n = s.len();
    let mut orfs = Vec::new();
    for frame in Frame::ALL {
        let strand = if frame.is_reverse() { rc.as_bytes() } else { s.as_bytes() };
        for (local, has_stop) in scan_strand(strand, frame.offset(), params) {
            let residues = local.len() / 3;
            if residues < params.min_peptide {
                continue;
            }
            let peptide = translate_bytes(&strand[local.clone()], 0, StopPolicy::RunThrough);
            let range = if frame.is_reverse() {
                n - local.end..n - local.start
            } else {
                local
            };
            let id = format!("{}_{}_{}-{}", s.id(), frame, range.start + 1, range.end);
            orfs.push(Orf {
                frame,
                range,
                peptide: Sequence::from_valid(&id, Alphabet::Protein, peptide),
                has_stop,
            });
        }
    }
    orfs.sort_by(|a, b| {
        a.frame
            .cmp(&b.frame)
            .then(a.range.start.cmp(&b.range.start))
            .then(a.range.end.cmp(&b.range.end))
    });
    Ok(orfs)
}
