use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{pairs, Alphabet, SeqError, Sequence};

/// Search thresholds for [`find_hairpins`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HairpinParams {
    pub min_stem: usize,
    pub min_loop: usize,
    pub max_loop: usize,
}

impl Default for HairpinParams {
    fn default() -> Self {
        HairpinParams {
            min_stem: 4,
            min_loop: 3,
            max_loop: 8,
        }
    }
}

/// A stem-loop: a run of bases paired with their own downstream reverse complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hairpin {
    pub stem_length: usize,
    /// Unpaired bases enclosed by the stem.
    pub loop_span: Range<usize>,
    /// Paired positions, outermost first.
    pub pairs: Vec<(usize, usize)>,
}

impl Hairpin {
    /// First paired position.
    pub fn start(&self) -> usize {
        self.loop_span.start - self.stem_length
    }

    /// One past the last paired position.
    pub fn end(&self) -> usize {
        self.loop_span.end + self.stem_length
    }
}

/// Every maximal exact-complement stem-loop meeting the thresholds.
///
/// For each candidate loop the stem is grown outward as far as bases pair.
/// A loop whose innermost two bases could themselves pair (leaving a loop of
/// at least `min_loop`) is not reported, since the longer stem around the
/// shorter loop covers it. Results are ordered by start, then longer stems
/// first.
pub fn find_hairpins(s: &Sequence, params: HairpinParams) -> Result<Vec<Hairpin>, SeqError> {
    s.require(Alphabet::Dna)?;
    if params.min_stem < 1 || params.min_loop > params.max_loop {
        return Err(SeqError::InvalidParameter(format!("{params:?}")));
    }
    let b = s.as_bytes();
    let n = b.len();
    let mut found = Vec::new();
    for loop_start in 1..n {
        for loop_len in params.min_loop.max(1)..=params.max_loop {
            let loop_end = loop_start + loop_len;
            if loop_end >= n {
                break;
            }
            let mut stem = 0;
            while stem < loop_start
                && loop_end + stem < n
                && pairs(b[loop_start - 1 - stem], b[loop_end + stem])
            {
                stem += 1;
            }
            if stem < params.min_stem {
                continue;
            }
            let can_shrink = loop_len >= params.min_loop + 2 && pairs(b[loop_start], b[loop_end - 1]);
            if can_shrink {
                continue;
            }
            let start = loop_start - stem;
            let end = loop_end + stem;
            found.push(Hairpin {
                stem_length: stem,
                loop_span: loop_start..loop_end,
                pairs: (0..stem).map(|t| (start + t, end - 1 - t)).collect(),
            });
        }
    }
    found.sort_by(|x, y| {
        x.start()
            .cmp(&y.start())
            .then(y.stem_length.cmp(&x.stem_length))
            .then(x.loop_span.start.cmp(&y.loop_span.start))
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::complement_base;
    use proptest::prelude::*;

    fn dna(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Dna).unwrap()
    }

    #[test]
    fn palindromic_stem() {
        let params = HairpinParams { min_stem: 4, min_loop: 3, max_loop: 6 };
        let hits = find_hairpins(&dna("GCGCAAAAGCGC"), params).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].stem_length, 4);
        assert_eq!(hits[0].loop_span, 4..8);
        assert_eq!(&"GCGCAAAAGCGC"[hits[0].loop_span.clone()], "AAAA");
        assert_eq!(hits[0].pairs, vec![(0, 11), (1, 10), (2, 9), (3, 8)]);
    }

    #[test]
    fn no_self_complement() {
        assert!(find_hairpins(&dna("AAAAAAAA"), HairpinParams::default()).unwrap().is_empty());
    }

    #[test]
    fn short_stem() {
        let params = HairpinParams { min_stem: 2, min_loop: 3, max_loop: 8 };
        let hits = find_hairpins(&dna("GCAAAGC"), params).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].stem_length, 2);
        assert_eq!(hits[0].loop_span, 2..5);
    }

    proptest! {
        #[test]
        fn reported_pairs_are_complementary(raw in "[ACGT]{1,80}") {
            let s = dna(&raw);
            let params = HairpinParams { min_stem: 2, min_loop: 3, max_loop: 6 };
            let b = raw.as_bytes();
            let hits = find_hairpins(&s, params).unwrap();
            for h in &hits {
                prop_assert!(h.stem_length >= 2);
                prop_assert!(h.loop_span.len() >= 3 && h.loop_span.len() <= 6);
                prop_assert_eq!(h.pairs.len(), h.stem_length);
                for w in h.pairs.windows(2) {
                    // nested: each inner pair strictly inside the outer one
                    prop_assert!(w[0].0 < w[1].0 && w[1].1 < w[0].1);
                }
                for &(i, j) in &h.pairs {
                    prop_assert!(i < j && j < b.len());
                    prop_assert_eq!(complement_base(b[i]), b[j]);
                }
            }
            for w in hits.windows(2) {
                prop_assert!(w[0].start() < w[1].start()
                    || (w[0].start() == w[1].start() && w[0].stem_length >= w[1].stem_length));
            }
        }
    }
}
