use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GeneError;
use crate::seq::{reverse_complement, Alphabet, Sequence, STOP};

/// The standard genetic code, RNA codons.
#[rustfmt::skip]
const STANDARD: [(&str, u8); 64] = [
    ("UUU", b'F'), ("UUC", b'F'), ("UUA", b'L'), ("UUG", b'L'),
    ("UCU", b'S'), ("UCC", b'S'), ("UCA", b'S'), ("UCG", b'S'),
    ("UAU", b'Y'), ("UAC", b'Y'), ("UAA", b'*'), ("UAG", b'*'),
    ("UGU", b'C'), ("UGC", b'C'), ("UGA", b'*'), ("UGG", b'W'),
    ("CUU", b'L'), ("CUC", b'L'), ("CUA", b'L'), ("CUG", b'L'),
    ("CCU", b'P'), ("CCC", b'P'), ("CCA", b'P'), ("CCG", b'P'),
    ("CAU", b'H'), ("CAC", b'H'), ("CAA", b'Q'), ("CAG", b'Q'),
    ("CGU", b'R'), ("CGC", b'R'), ("CGA", b'R'), ("CGG", b'R'),
    ("AUU", b'I'), ("AUC", b'I'), ("AUA", b'I'), ("AUG", b'M'),
    ("ACU", b'T'), ("ACC", b'T'), ("ACA", b'T'), ("ACG", b'T'),
    ("AAU", b'N'), ("AAC", b'N'), ("AAA", b'K'), ("AAG", b'K'),
    ("AGU", b'S'), ("AGC", b'S'), ("AGA", b'R'), ("AGG", b'R'),
    ("GUU", b'V'), ("GUC", b'V'), ("GUA", b'V'), ("GUG", b'V'),
    ("GCU", b'A'), ("GCC", b'A'), ("GCA", b'A'), ("GCG", b'A'),
    ("GAU", b'D'), ("GAC", b'D'), ("GAA", b'E'), ("GAG", b'E'),
    ("GGU", b'G'), ("GGC", b'G'), ("GGA", b'G'), ("GGG", b'G'),
];

fn base_index(b: u8) -> Option<usize> {
    match b {
        b'U' | b'T' => Some(0),
        b'C' => Some(1),
        b'A' => Some(2),
        b'G' => Some(3),
        _ => None,
    }
}

fn codon_index(codon: &[u8]) -> Option<usize> {
    let mut idx = 0;
    for &b in codon {
        idx = idx * 4 + base_index(b)?;
    }
    Some(idx)
}

/// Codon → amino acid (or `*` for stop). Accepts T in place of U.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodonTable {
    table: [u8; 64],
}

impl CodonTable {
    pub fn standard() -> &'static CodonTable {
        static TABLE: std::sync::OnceLock<CodonTable> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| {
            let mut table = [0u8; 64];
            for (codon, aa) in STANDARD {
                table[codon_index(codon.as_bytes()).expect("valid codon")] = aa;
            }
            CodonTable { table }
        })
    }

    /// Residue for a three-base codon; `X` when it holds an ambiguous base.
    pub fn translate_codon(&self, codon: &[u8]) -> u8 {
        match codon_index(codon) {
            Some(i) if codon.len() == 3 => self.table[i],
            _ => b'X',
        }
    }

    pub fn is_stop(&self, codon: &[u8]) -> bool {
        self.translate_codon(codon) == STOP
    }

    pub fn is_start(&self, codon: &[u8]) -> bool {
        matches!(codon, b"ATG" | b"AUG")
    }

    /// All 64 codons (RNA form) with their residues.
    pub fn entries(&self) -> impl Iterator<Item = (String, u8)> + '_ {
        STANDARD.iter().map(|(codon, _)| (codon.to_string(), self.translate_codon(codon.as_bytes())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopPolicy {
    /// Render stops as `*` and keep going.
    RunThrough,
    /// End the peptide at the first stop, excluding it.
    HaltAtStop,
}

/// One of the six reading frames: `+1..+3` on the given strand, `-1..-3` on
/// its reverse complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct Frame(i8);

impl Frame {
    pub const ALL: [Frame; 6] = [Frame(1), Frame(2), Frame(3), Frame(-1), Frame(-2), Frame(-3)];

    pub fn new(value: i8) -> Result<Frame, GeneError> {
        match value {
            1..=3 | -3..=-1 => Ok(Frame(value)),
            _ => Err(GeneError::InvalidFrame(value)),
        }
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn is_reverse(self) -> bool {
        self.0 < 0
    }

    /// Codon phase on the strand the frame reads.
    pub fn offset(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    fn rank(self) -> (bool, u8) {
        (self.is_reverse(), self.0.unsigned_abs())
    }
}

impl Ord for Frame {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Frame {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<i8> for Frame {
    type Error = GeneError;
    fn try_from(v: i8) -> Result<Self, Self::Error> {
        Frame::new(v)
    }
}

impl From<Frame> for i8 {
    fn from(f: Frame) -> i8 {
        f.0
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

impl std::str::FromStr for Frame {
    type Err = GeneError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: i8 = s.trim().parse().map_err(|_| GeneError::InvalidParameter(format!("frame {s:?}")))?;
        Frame::new(v)
    }
}

/// DNA → RNA on the coding strand: T becomes U.
pub fn transcribe(dna: &Sequence) -> Result<Sequence, GeneError> {
    dna.require(Alphabet::Dna)?;
    Ok(dna.derive(Alphabet::Rna, dna.residues().replace('T', "U")))
}

fn nucleic(s: &Sequence) -> Result<(), GeneError> {
    if !s.alphabet().is_nucleic() {
        return Err(GeneError::Seq(crate::seq::SeqError::WrongAlphabet {
            expected: Alphabet::Dna,
            found: s.alphabet(),
        }));
    }
    Ok(())
}

pub(crate) fn translate_bytes(bases: &[u8], offset: usize, policy: StopPolicy) -> String {
    let table = CodonTable::standard();
    let mut out = String::with_capacity(bases.len().saturating_sub(offset) / 3);
    for codon in bases.get(offset..).unwrap_or_default().chunks_exact(3) {
        let aa = table.translate_codon(codon);
        if aa == STOP && policy == StopPolicy::HaltAtStop {
            break;
        }
        out.push(aa as char);
    }
    out
}

/// Translate codons from `offset`; a trailing partial codon is ignored.
///
/// DNA is read directly as its RNA transcript.
pub fn translate(s: &Sequence, offset: usize, policy: StopPolicy) -> Result<Sequence, GeneError> {
    nucleic(s)?;
    if offset > 2 {
        return Err(GeneError::InvalidParameter(format!("frame offset {offset}")));
    }
    if s.len() < offset + 3 {
        return Err(GeneError::TooShort { len: s.len(), offset });
    }
    let peptide = translate_bytes(s.as_bytes(), offset, policy);
    if peptide.is_empty() {
        return Err(GeneError::EmptyPeptide);
    }
    Ok(s.derive(Alphabet::Protein, peptide))
}

/// Run-through translation in all six frames. Frames with no complete codon
/// (possible only for sequences shorter than five bases) are left out.
pub fn six_frame(s: &Sequence) -> Result<BTreeMap<Frame, Sequence>, GeneError> {
    s.require(Alphabet::Dna)?;
    if s.len() < 3 {
        return Err(GeneError::TooShort { len: s.len(), offset: 0 });
    }
    let rc = reverse_complement(s)?;
    let mut out = BTreeMap::new();
    for frame in Frame::ALL {
        let strand = if frame.is_reverse() { &rc } else { s };
        if strand.len() >= frame.offset() + 3 {
            out.insert(frame, translate(strand, frame.offset(), StopPolicy::RunThrough)?);
        }
    }
    Ok(out)
}
