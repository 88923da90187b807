use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Store, StoreError};
use crate::align::{ktup_search, ScoringScheme, SearchParams};
use crate::seq::{Alphabet, Sequence};

pub const NEIGHBOR_METHOD: &str = "ktup";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NeighborLink {
    pub from: String,
    pub to: String,
    pub score: i32,
    pub method: String,
}

fn word_size(alphabet: Alphabet) -> usize {
    match alphabet {
        Alphabet::Protein => 3,
        Alphabet::Dna | Alphabet::Rna => 8,
    }
}

/// All-vs-all k-tuple search over records with sequences. A pair is linked
/// in both directions with the best score found either way, when that score
/// reaches `threshold`. Links are sorted by source then target.
pub fn build_neighbors(store: &Store, threshold: i32, scheme: Option<&ScoringScheme>) -> Vec<NeighborLink> {
    let seqs: Vec<(&str, &Sequence)> = store
        .records()
        .iter()
        .filter_map(|r| r.sequence.as_ref().map(|s| (r.accession.as_str(), s)))
        .collect();
    let mut best: BTreeMap<(&str, &str), i32> = BTreeMap::new();
    for alphabet in [Alphabet::Dna, Alphabet::Rna, Alphabet::Protein] {
        let group: Vec<(&str, &Sequence)> = seqs.iter().copied().filter(|(_, s)| s.alphabet() == alphabet).collect();
        if group.len() < 2 {
            continue;
        }
        let default_scheme = ScoringScheme::for_alphabet(alphabet);
        let sc = scheme.unwrap_or(&default_scheme);
        let db: Vec<Sequence> = group.iter().map(|(_, s)| (*s).clone()).collect();
        for (qi, (qacc, q)) in group.iter().enumerate() {
            let params = SearchParams::new(word_size(alphabet).min(q.len()), threshold.max(0), sc);
            let hits = ktup_search(q, &db, sc, params).expect("parameters are in range");
            for hit in hits {
                if hit.record == qi || hit.hsp.score() < threshold {
                    continue;
                }
                let tacc = group[hit.record].0;
                let key = if *qacc <= tacc { (*qacc, tacc) } else { (tacc, *qacc) };
                let slot = best.entry(key).or_insert(i32::MIN);
                *slot = (*slot).max(hit.hsp.score());
            }
        }
    }
    let mut links: Vec<NeighborLink> = best
        .into_iter()
        .flat_map(|((a, b), score)| {
            let link = |from: &str, to: &str| NeighborLink {
                from: from.to_string(),
                to: to.to_string(),
                score,
                method: NEIGHBOR_METHOD.to_string(),
            };
            [link(a, b), link(b, a)]
        })
        .collect();
    links.sort();
    links
}

pub(crate) fn render(links: &[NeighborLink]) -> String {
    let mut out = String::new();
    for l in links {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", l.from, l.to, l.score, l.method);
    }
    out
}

pub(crate) fn parse(text: &str) -> Result<Vec<NeighborLink>, StoreError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let cols: Vec<&str> = line.split('\t').collect();
            let bad = || StoreError::CorruptStore(format!("neighbors line {}: {line:?}", i + 1));
            if cols.len() != 4 {
                return Err(bad());
            }
            Ok(NeighborLink {
                from: cols[0].to_string(),
                to: cols[1].to_string(),
                score: cols[2].parse().map_err(|_| bad())?,
                method: cols[3].to_string(),
            })
        })
        .collect()
}
