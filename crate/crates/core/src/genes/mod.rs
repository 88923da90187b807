//! Gene finding: translation, reading frames, ORFs and intron boundary candidates.

mod codon;
mod orf;
mod splice;

use thiserror::Error;

use crate::seq::SeqError;

pub use codon::{six_frame, transcribe, translate, CodonTable, Frame, StopPolicy};
pub use orf::{find_orfs, Orf, OrfParams};
pub use splice::{splice_candidates, SpliceCandidate, SpliceParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneError {
    #[error("sequence of length {len} has no complete codon at offset {offset}")]
    TooShort { len: usize, offset: usize },
    #[error("translation stopped before the first residue")]
    EmptyPeptide,
    #[error("invalid reading frame {0} (expected +1..+3 or -1..-3)")]
    InvalidFrame(i8),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}
