//! Pairwise alignment, k-tuple search, BLAST-style rendering and distance trees.

mod pairwise;
mod render;
mod scoring;
mod search;
mod tree;

use thiserror::Error;

use crate::seq::Alphabet;

pub use pairwise::{align, needleman_wunsch, smith_waterman, AlignMode, Alignment, GAP};
pub use render::{parse_counts, render_blast, RenderedCounts, DEFAULT_WIDTH};
pub use scoring::{AffineGap, ScoringScheme, DEFAULT_GROUPS};
pub use search::{default_dropoff, ktup_search, Hsp, SearchHit, SearchParams};
pub use tree::{distance_matrix, upgma, DistanceMatrix, Tree, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignError {
    #[error("cannot align {query} against {subject}")]
    AlphabetMismatch { query: Alphabet, subject: Alphabet },
    #[error("invalid scoring scheme: {0}")]
    InvalidScheme(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed distance matrix: {0}")]
    MalformedMatrix(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
