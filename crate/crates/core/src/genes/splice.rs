use serde::{Deserialize, Serialize};

use super::GeneError;
use crate::seq::{Alphabet, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceParams {
    pub min_intron: usize,
    pub max_intron: usize,
}

impl Default for SpliceParams {
    fn default() -> Self {
        SpliceParams {
            min_intron: 20,
            max_intron: 10_000,
        }
    }
}

/// A GT...AG span that could be an intron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceCandidate {
    /// Index of the G in the opening GT.
    pub donor: usize,
    /// Index of the A in the closing AG.
    pub acceptor: usize,
    /// Intron length including both dinucleotides.
    pub span: usize,
}

/// All GT...AG pairs whose span lies within the bounds, ascending by donor
/// then acceptor.
pub fn splice_candidates(s: &Sequence, params: SpliceParams) -> Result<Vec<SpliceCandidate>, GeneError> {
    s.require(Alphabet::Dna)?;
    if params.min_intron < 4 || params.max_intron < params.min_intron {
        return Err(GeneError::InvalidParameter(format!(
            "intron bounds {}..={} (minimum must be at least 4)",
            params.min_intron, params.max_intron
        )));
    }
    let b = s.as_bytes();
    let acceptors: Vec<usize> = b.windows(2).enumerate().filter(|(_, w)| w == b"AG").map(|(i, _)| i).collect();
    let mut out = Vec::new();
    for donor in b.windows(2).enumerate().filter(|(_, w)| w == b"GT").map(|(i, _)| i) {
        let first = acceptors.partition_point(|&a| a + 2 < donor + params.min_intron);
        for &acceptor in &acceptors[first..] {
            let span = acceptor + 2 - donor;
            if span > params.max_intron {
                break;
            }
            out.push(SpliceCandidate { donor, acceptor, span });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Dna).unwrap()
    }

    fn bounds(min: usize, max: usize) -> SpliceParams {
        SpliceParams { min_intron: min, max_intron: max }
    }

    #[test]
    fn donor_and_acceptor() {
        let hits = splice_candidates(&dna("AAGTAAAGCC"), bounds(4, 100)).unwrap();
        assert_eq!(hits, vec![SpliceCandidate { donor: 2, acceptor: 6, span: 6 }]);
        assert!(splice_candidates(&dna("AAGTAAAGCC"), SpliceParams::default()).unwrap().is_empty());
    }

    #[test]
    fn minimal_intron() {
        let hits = splice_candidates(&dna("GTAG"), bounds(4, 4)).unwrap();
        assert_eq!(hits, vec![SpliceCandidate { donor: 0, acceptor: 2, span: 4 }]);
    }

    #[test]
    fn nothing_found() {
        assert!(splice_candidates(&dna("AAAA"), bounds(4, 10)).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(splice_candidates(&dna("GTAG"), bounds(3, 10)).is_err());
        assert!(splice_candidates(&dna("GTAG"), bounds(8, 5)).is_err());
    }

    #[test]
    fn agrees_with_pair_scan() {
        let raw = "GTAGGTCAGTTAGAGGTAAGTAGCAG";
        let b = raw.as_bytes();
        let mut expected = Vec::new();
        for d in 0..b.len() - 1 {
            for a in 0..b.len() - 1 {
                if &b[d..d + 2] == b"GT" && &b[a..a + 2] == b"AG" && a > d {
                    let span = a + 2 - d;
                    if (4..=12).contains(&span) {
                        expected.push(SpliceCandidate { donor: d, acceptor: a, span });
                    }
                }
            }
        }
        assert_eq!(splice_candidates(&dna(raw), bounds(4, 12)).unwrap(), expected);
    }
}
