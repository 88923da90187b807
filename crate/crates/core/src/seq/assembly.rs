use serde::{Deserialize, Serialize};

use super::{Alphabet, SeqError, Sequence};

/// Where a fragment sits inside its contig.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    /// Index into the input fragment list.
    pub fragment: usize,
    pub id: String,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contig {
    pub sequence: Sequence,
    /// Sorted by offset, then fragment index.
    pub placements: Vec<Placement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub contigs: Vec<Contig>,
}

impl Assembly {
    /// The single superstring, or `Disconnected` when more than one contig remains.
    pub fn superstring(&self) -> Result<&Sequence, SeqError> {
        match self.contigs.as_slice() {
            [only] => Ok(&only.sequence),
            many => Err(SeqError::Disconnected { contigs: many.len() }),
        }
    }
}

struct Working {
    text: String,
    layout: Vec<(usize, usize)>,
}

fn suffix_prefix_overlap(x: &str, y: &str, min: usize) -> usize {
    let max = x.len().min(y.len()).saturating_sub(1);
    (min..=max).rev().find(|&o| x.as_bytes()[x.len() - o..] == y.as_bytes()[..o]).unwrap_or(0)
}

fn absorb_contained(contigs: &mut Vec<Working>) {
    let mut i = 0;
    while i < contigs.len() {
        let host = (0..contigs.len()).find(|&j| {
            j != i
                && contigs[j].text.len() >= contigs[i].text.len()
                && (contigs[j].text.len() > contigs[i].text.len() || j < i)
                && contigs[j].text.contains(contigs[i].text.as_str())
        });
        match host {
            Some(j) => {
                let inner = contigs.remove(i);
                let j = if j > i { j - 1 } else { j };
                let at = contigs[j].text.find(inner.text.as_str()).expect("contained");
                contigs[j].layout.extend(inner.layout.into_iter().map(|(f, o)| (f, o + at)));
                i = 0;
            }
            None => i += 1,
        }
    }
}

/// Greedy shortest-superstring assembly of exact overlaps.
///
/// Fragments contained in others are placed inside their host first. Then the
/// pair with the longest suffix/prefix overlap of at least `min_overlap` is
/// merged, repeatedly; ties go to the lexicographically smallest merged
/// string. Fragments that never reach the threshold end up in separate
/// contigs.
pub fn assemble_fragments(frags: &[Sequence], min_overlap: usize) -> Result<Assembly, SeqError> {
    if frags.is_empty() {
        return Err(SeqError::InvalidParameter("no fragments".into()));
    }
    if min_overlap == 0 {
        return Err(SeqError::InvalidParameter("minimum overlap must be at least 1".into()));
    }
    for f in frags {
        f.require(Alphabet::Dna)?;
    }
    let mut contigs: Vec<Working> = frags
        .iter()
        .enumerate()
        .map(|(i, f)| Working {
            text: f.residues().to_string(),
            layout: vec![(i, 0)],
        })
        .collect();

    loop {
        absorb_contained(&mut contigs);
        let mut best: Option<(usize, String, usize, usize)> = None;
        for (xi, x) in contigs.iter().enumerate() {
            for (yi, y) in contigs.iter().enumerate() {
                if xi == yi {
                    continue;
                }
                let o = suffix_prefix_overlap(&x.text, &y.text, min_overlap);
                if o == 0 {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((bo, merged, _, _)) => {
                        o > *bo || (o == *bo && {
                            let candidate = [&x.text[..], &y.text[o..]].concat();
                            candidate < *merged
                        })
                    }
                };
                if better {
                    best = Some((o, [&x.text[..], &y.text[o..]].concat(), xi, yi));
                }
            }
        }
        let Some((o, merged, xi, yi)) = best else { break };
        let shift = contigs[xi].text.len() - o;
        let right = std::mem::take(&mut contigs[yi].layout);
        let left = &mut contigs[xi];
        left.text = merged;
        left.layout.extend(right.into_iter().map(|(f, off)| (f, off + shift)));
        contigs.remove(yi);
    }

    let mut out: Vec<Contig> = contigs
        .into_iter()
        .map(|mut w| {
            w.layout.sort_by_key(|&(f, o)| (o, f));
            let id = match w.layout.as_slice() {
                [(f, _)] => frags[*f].id().to_string(),
                _ => String::new(),
            };
            Contig {
                sequence: Sequence::from_valid(&id, Alphabet::Dna, w.text),
                placements: w
                    .layout
                    .into_iter()
                    .map(|(fragment, offset)| Placement {
                        fragment,
                        id: frags[fragment].id().to_string(),
                        offset,
                    })
                    .collect(),
            }
        })
        .collect();
    out.sort_by_key(|c| c.placements.iter().map(|p| p.fragment).min());
    for (n, c) in out.iter_mut().enumerate() {
        if c.sequence.id().is_empty() {
            c.sequence = c.sequence.clone().with_id(&format!("contig{}", n + 1))?;
        }
    }
    Ok(Assembly { contigs: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frags(raw: &[&str]) -> Vec<Sequence> {
        raw.iter()
            .enumerate()
            .map(|(i, r)| Sequence::new(&format!("f{i}"), "", Alphabet::Dna, r).unwrap())
            .collect()
    }

    /// Every (x, y) overlap length found by trying all lengths.
    fn brute_overlap(x: &str, y: &str) -> usize {
        (1..x.len().min(y.len())).filter(|&o| x.ends_with(&y[..o])).max().unwrap_or(0)
    }

    #[test]
    fn overlap_pair() {
        assert_eq!(brute_overlap("ACGT", "CGTA"), 3);
        assert_eq!(brute_overlap("CGTA", "ACGT"), 1);
        let a = assemble_fragments(&frags(&["ACGT", "CGTA"]), 3).unwrap();
        assert_eq!(a.superstring().unwrap().residues(), "ACGTA");
        assert_eq!(a.contigs[0].placements[1].offset, 1);
    }

    #[test]
    fn singleton() {
        let a = assemble_fragments(&frags(&["AAA"]), 1).unwrap();
        assert_eq!(a.superstring().unwrap().residues(), "AAA");
    }

    #[test]
    fn disconnected() {
        let a = assemble_fragments(&frags(&["ACG", "TTT"]), 2).unwrap();
        let contigs: Vec<_> = a.contigs.iter().map(|c| c.sequence.residues()).collect();
        assert_eq!(contigs, vec!["ACG", "TTT"]);
        assert_eq!(a.superstring(), Err(SeqError::Disconnected { contigs: 2 }));
    }

    #[test]
    fn contained_fragment() {
        let a = assemble_fragments(&frags(&["ACGTTG", "GTT", "TTGCA"]), 2).unwrap();
        assert_eq!(a.superstring().unwrap().residues(), "ACGTTGCA");
        let gtt = a.contigs[0].placements.iter().find(|p| p.fragment == 1).unwrap();
        assert_eq!(gtt.offset, 2);
    }

    #[test]
    fn tie_prefers_smaller_merge() {
        // CAT->ATG and CAT->ATC both overlap by 2; "CATC" < "CATG"
        let a = assemble_fragments(&frags(&["CAT", "ATG", "ATC"]), 2).unwrap();
        assert_eq!(a.contigs[0].sequence.residues(), "CATC");
    }

    #[test]
    fn shredded_read_reassembles() {
        let genome = "ATGGCGTACGTTAGCCGATAGGCTTACGATCGGATCCTAGGCATTC";
        let pieces: Vec<&str> = (0..genome.len() - 12).step_by(6).map(|i| &genome[i..i + 12]).collect();
        let a = assemble_fragments(&frags(&pieces), 5).unwrap();
        assert!(a.superstring().unwrap().residues().contains(&genome[..genome.len() - 6]));
    }

    proptest! {
        #[test]
        fn output_contains_every_fragment(raw in proptest::collection::vec("[ACGT]{1,12}", 1..8), min in 1usize..4) {
            let refs: Vec<&str> = raw.iter().map(String::as_str).collect();
            let input = frags(&refs);
            let a = assemble_fragments(&input, min).unwrap();
            let mut seen = vec![false; input.len()];
            for c in &a.contigs {
                for p in &c.placements {
                    let text = c.sequence.residues();
                    let frag = input[p.fragment].residues();
                    prop_assert_eq!(&text[p.offset..p.offset + frag.len()], frag);
                    seen[p.fragment] = true;
                }
            }
            prop_assert!(seen.iter().all(|&s| s));
        }
    }
}
