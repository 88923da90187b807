//! Peptide mass fingerprinting: in-silico digestion, monoisotopic masses and
//! fingerprint identification against a protein database.

mod digest;
mod identify;
mod mass;

use thiserror::Error;

use crate::seq::SeqError;

pub use digest::{digest, digest_spans, parse_rules, DigestRule};
pub use identify::{identify, parse_peaks, render_identifications, Fingerprint, Identification, Tolerance};
pub use mass::{peptide_mass, MassTable, CARBAMIDOMETHYL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PmfError {
    #[error("no mass for residue {0}")]
    UnknownResidue(char),
    #[error("empty peptide")]
    Empty,
    #[error("unknown digest rule {0:?}")]
    UnknownRule(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
}
