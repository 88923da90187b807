//! Sequences, alphabets and whole-strand statistics.
//!
//! Everything here is a pure function over immutable [`Sequence`] values.

mod assembly;
mod composition;
mod hairpin;
mod sequence;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use assembly::{assemble_fragments, Assembly, Contig, Placement};
pub use composition::{composition_windows, CompositionReport, Counts};
pub use hairpin::{find_hairpins, Hairpin, HairpinParams};
pub use sequence::{Alphabet, Sequence, Validation, NUCLEOTIDE_AMBIGUOUS, PROTEIN_AMBIGUOUS, STOP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("invalid residue {residue:?} at position {position}")]
    InvalidResidue { position: usize, residue: char },
    #[error("empty sequence")]
    EmptySequence,
    #[error("expected {expected} sequence, found {found}")]
    WrongAlphabet { expected: Alphabet, found: Alphabet },
    #[error("invalid sequence id {0:?}")]
    InvalidId(String),
    #[error("unknown alphabet {0:?}")]
    UnknownAlphabet(String),
    #[error("window of {window} exceeds sequence length {len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("fragments do not assemble into one contig ({contigs} contigs)")]
    Disconnected { contigs: usize },
}

/// Watson-Crick partner of a DNA base. `N` maps to itself.
pub fn complement_base(base: u8) -> u8 {
    match base {
        b'A' => b'T',
        b'T' => b'A',
        b'C' => b'G',
        b'G' => b'C',
        other => other,
    }
}

/// Whether two DNA bases form a Watson-Crick pair.
pub fn pairs(a: u8, b: u8) -> bool {
    a != NUCLEOTIDE_AMBIGUOUS && complement_base(a) == b
}

fn map_bases(s: &Sequence, reverse: bool) -> Result<Sequence, SeqError> {
    s.require(Alphabet::Dna)?;
    let out: String = if reverse {
        s.as_bytes().iter().rev().map(|&b| complement_base(b) as char).collect()
    } else {
        s.as_bytes().iter().map(|&b| complement_base(b) as char).collect()
    };
    Ok(s.derive(Alphabet::Dna, out))
}

/// Position-wise complement of a DNA strand (not reversed).
pub fn complement(s: &Sequence) -> Result<Sequence, SeqError> {
    map_bases(s, false)
}

/// The antiparallel partner strand read 5'→3'.
pub fn reverse_complement(s: &Sequence) -> Result<Sequence, SeqError> {
    map_bases(s, true)
}

/// Base counts and single-strand parity deviations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityStats {
    pub a: usize,
    pub c: usize,
    pub g: usize,
    pub t: usize,
    /// `|A - T| / (A + T)`, zero when neither base occurs.
    pub deviation_at: f64,
    /// `|G - C| / (G + C)`, zero when neither base occurs.
    pub deviation_gc: f64,
}

fn deviation(x: usize, y: usize) -> f64 {
    if x + y == 0 {
        0.0
    } else {
        x.abs_diff(y) as f64 / (x + y) as f64
    }
}

pub fn parity_stats(s: &Sequence) -> Result<ParityStats, SeqError> {
    s.require(Alphabet::Dna)?;
    let (mut a, mut c, mut g, mut t) = (0, 0, 0, 0);
    for &b in s.as_bytes() {
        match b {
            b'A' => a += 1,
            b'C' => c += 1,
            b'G' => g += 1,
            b'T' => t += 1,
            _ => {}
        }
    }
    Ok(ParityStats {
        a,
        c,
        g,
        t,
        deviation_at: deviation(a, t),
        deviation_gc: deviation(g, c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dna(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Dna).unwrap()
    }

    #[test]
    fn complement_duplex() {
        assert_eq!(complement(&dna("ACGATGCCGTAGCATCGT")).unwrap().residues(), "TGCTACGGCATCGTAGCA");
        assert_eq!(complement(&dna("A")).unwrap().residues(), "T");
        assert_eq!(complement(&dna("ACGT")).unwrap().residues(), "TGCA");
    }

    #[test]
    fn reverse_complement_examples() {
        assert_eq!(reverse_complement(&dna("ACGT")).unwrap().residues(), "ACGT");
        assert_eq!(reverse_complement(&dna("AAAA")).unwrap().residues(), "TTTT");
        assert_eq!(
            reverse_complement(&dna("ACGATGCCGTAGCATCGT")).unwrap().residues(),
            "ACGATGCTACGGCATCGT"
        );
    }

    #[test]
    fn complement_needs_dna() {
        let rna = Sequence::parse("ACGU", Alphabet::Rna).unwrap();
        assert!(matches!(complement(&rna), Err(SeqError::WrongAlphabet { .. })));
        assert!(matches!(reverse_complement(&rna), Err(SeqError::WrongAlphabet { .. })));
    }

    #[test]
    fn parity_examples() {
        let p = parity_stats(&dna("ACGT")).unwrap();
        assert_eq!((p.a, p.c, p.g, p.t), (1, 1, 1, 1));
        assert_eq!((p.deviation_at, p.deviation_gc), (0.0, 0.0));

        let p = parity_stats(&dna("ACGATGCCGTAGCATCGT")).unwrap();
        assert_eq!((p.a, p.t, p.c, p.g), (4, 4, 5, 5));
        assert_eq!((p.deviation_at, p.deviation_gc), (0.0, 0.0));

        let p = parity_stats(&dna("AAAA")).unwrap();
        assert_eq!(p.deviation_at, 1.0);
        assert_eq!(p.deviation_gc, 0.0);
    }

    fn dna_strategy() -> impl Strategy<Value = String> {
        proptest::collection::vec(prop::sample::select(b"ACGT".to_vec()), 1..200)
            .prop_map(|v| String::from_utf8(v).unwrap())
    }

    proptest! {
        #[test]
        fn revcomp_is_involution(raw in dna_strategy()) {
            let s = dna(&raw);
            let twice = reverse_complement(&reverse_complement(&s).unwrap()).unwrap();
            prop_assert_eq!(twice, s);
        }

        #[test]
        fn complement_swaps_purines(raw in dna_strategy()) {
            let s = dna(&raw);
            let c = complement(&s).unwrap();
            prop_assert_eq!(c.len(), s.len());
            for (x, y) in s.as_bytes().iter().zip(c.as_bytes()) {
                let purine = |b: &u8| matches!(b, b'A' | b'G');
                prop_assert_ne!(purine(x), purine(y));
            }
        }

        #[test]
        fn strand_plus_partner_has_zero_deviation(raw in dna_strategy()) {
            let s = dna(&raw);
            let rc = reverse_complement(&s).unwrap();
            let both = dna(&format!("{}{}", s, rc));
            let p = parity_stats(&both).unwrap();
            prop_assert_eq!(p.deviation_at, 0.0);
            prop_assert_eq!(p.deviation_gc, 0.0);
        }

        #[test]
        fn deviations_in_unit_interval(raw in dna_strategy()) {
            let p = parity_stats(&dna(&raw)).unwrap();
            prop_assert!((0.0..=1.0).contains(&p.deviation_at));
            prop_assert!((0.0..=1.0).contains(&p.deviation_gc));
        }
    }
}
