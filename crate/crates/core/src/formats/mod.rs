//! Flat-file carriers: FASTA, a GenBank subset, and PROSITE signatures.

mod fasta;
mod genbank;
mod prosite;

use thiserror::Error;

use crate::seq::SeqError;

pub use fasta::{
    detect_alphabet, parse_fasta, parse_fasta_str, render_entry, render_fasta, FastaDoc, FastaOptions, DEFAULT_WRAP,
};
pub use genbank::{parse_genbank, parse_genbank_str, render_genbank, GenBankRecord, Reference, Section};
pub use prosite::{parse_prosite, scan_motif, Element, MotifPattern};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: sequence data before any '>' header")]
    NoHeader { line: usize },
    #[error("duplicate sequence id {0:?}")]
    DuplicateId(String),
    #[error("entry {id:?} (line {line}): {source}")]
    Entry {
        id: String,
        line: usize,
        #[source]
        source: SeqError,
    },
    #[error("record {locus:?} has no ACCESSION")]
    MissingAccession { locus: String },
    #[error("record {locus:?}: LOCUS declares {declared} bases, ORIGIN holds {actual}")]
    LengthMismatch { locus: String, declared: usize, actual: usize },
    #[error("record {locus:?} is not terminated by '//'")]
    UnterminatedRecord { locus: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("pattern syntax error at position {position}: {reason}")]
    Syntax { position: usize, reason: String },
    #[error("empty pattern")]
    EmptyPattern,
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
