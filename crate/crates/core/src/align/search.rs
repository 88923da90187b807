use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pairwise::{align_bytes, AlignMode, Alignment};
use super::{AlignError, ScoringScheme};
use crate::seq::Sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub k: usize,
    /// Minimum ungapped score for a diagonal segment to be re-aligned.
    pub threshold: i32,
    /// X-drop for ungapped extension; `None` extends to the ends of the diagonal.
    pub dropoff: Option<i32>,
    /// Residues added on each side of a segment before local re-alignment.
    pub band: usize,
}

impl SearchParams {
    pub fn new(k: usize, threshold: i32, scheme: &ScoringScheme) -> Self {
        SearchParams {
            k,
            threshold,
            dropoff: Some(default_dropoff(scheme)),
            band: 10,
        }
    }
}

pub fn default_dropoff(scheme: &ScoringScheme) -> i32 {
    5 * scheme.match_score()
}

/// A high-scoring segment pair: the ungapped diagonal segment and its
/// gapped re-alignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hsp {
    /// Subject offset minus query offset.
    pub diagonal: isize,
    /// 0-based start of the ungapped segment in the query.
    pub query_offset: usize,
    /// 0-based start of the ungapped segment in the subject.
    pub subject_offset: usize,
    pub length: usize,
    pub ungapped_score: i32,
    pub alignment: Alignment,
}

impl Hsp {
    pub fn score(&self) -> i32 {
        self.alignment.score
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Index into the searched database.
    pub record: usize,
    pub id: String,
    pub hsp: Hsp,
}

/// Ungapped extension of a seed on one diagonal. Returns (start, end, score)
/// of the best segment containing the seed, in query coordinates.
fn extend(q: &[u8], s: &[u8], qi: usize, sj: usize, k: usize, scheme: &ScoringScheme, dropoff: Option<i32>) -> (usize, usize, i32) {
    let seed: i32 = (0..k).map(|t| scheme.score(q[qi + t], s[sj + t])).sum();
    let within = |best: i32, run: i32| dropoff.is_none_or(|x| best - run <= x);

    let (mut run, mut best, mut right) = (0, 0, qi + k);
    let (mut a, mut b) = (qi + k, sj + k);
    while a < q.len() && b < s.len() {
        run += scheme.score(q[a], s[b]);
        a += 1;
        b += 1;
        if run > best {
            best = run;
            right = a;
        } else if !within(best, run) {
            break;
        }
    }
    let right_gain = best;

    let (mut run, mut best, mut left) = (0, 0, qi);
    let (mut a, mut b) = (qi, sj);
    while a > 0 && b > 0 {
        a -= 1;
        b -= 1;
        run += scheme.score(q[a], s[b]);
        if run > best {
            best = run;
            left = a;
        } else if !within(best, run) {
            break;
        }
    }
    (left, right, seed + right_gain + best)
}

fn search_one(
    query: &[u8],
    index: &HashMap<&[u8], Vec<usize>>,
    subject: &[u8],
    scheme: &ScoringScheme,
    params: &SearchParams,
) -> Vec<Hsp> {
    let k = params.k;
    if subject.len() < k {
        return Vec::new();
    }
    let mut seeds: Vec<(isize, usize)> = Vec::new();
    for j in 0..=subject.len() - k {
        if let Some(hits) = index.get(&subject[j..j + k]) {
            seeds.extend(hits.iter().map(|&i| (j as isize - i as isize, i)));
        }
    }
    seeds.sort_unstable();

    let mut segments: BTreeSet<(isize, usize, usize, i32)> = BTreeSet::new();
    for &(diag, i) in &seeds {
        let j = (i as isize + diag) as usize;
        let (start, end, score) = extend(query, subject, i, j, k, scheme, params.dropoff);
        if score >= params.threshold {
            segments.insert((diag, start, end, score));
        }
    }

    let mut ordered: Vec<_> = segments.into_iter().collect();
    ordered.sort_by_key(|&(diag, start, _, score)| (std::cmp::Reverse(score), diag, start));
    let mut out: Vec<Hsp> = Vec::new();
    for (diag, start, end, score) in ordered {
        let s_start = (start as isize + diag) as usize;
        let s_end = (end as isize + diag) as usize;
        let q0 = start.saturating_sub(params.band);
        let q1 = (end + params.band).min(query.len());
        let s0 = s_start.saturating_sub(params.band);
        let s1 = (s_end + params.band).min(subject.len());
        let alignment = align_bytes(&query[q0..q1], &subject[s0..s1], scheme, AlignMode::Local).offset(q0, s0);
        if out.iter().any(|h| h.alignment == alignment) {
            continue;
        }
        out.push(Hsp {
            diagonal: diag,
            query_offset: start,
            subject_offset: s_start,
            length: end - start,
            ungapped_score: score,
            alignment,
        });
    }
    out
}

/// FASTA-style search: shared k-mers seed diagonals, seeds are extended
/// without gaps, and segments scoring at least `threshold` are re-aligned
/// locally inside a window around the segment.
///
/// Records of a different alphabet or shorter than `k` produce no hits.
/// Hits are sorted by score descending, then record id, then coordinates.
pub fn ktup_search(
    query: &Sequence,
    db: &[Sequence],
    scheme: &ScoringScheme,
    params: SearchParams,
) -> Result<Vec<SearchHit>, AlignError> {
    if params.k == 0 || params.k > query.len() {
        return Err(AlignError::InvalidParameter(format!(
            "k must be between 1 and the query length {}, got {}",
            query.len(),
            params.k
        )));
    }
    if params.threshold < 0 {
        return Err(AlignError::InvalidParameter("threshold must be non-negative".into()));
    }
    if params.dropoff.is_some_and(|x| x < 0) {
        return Err(AlignError::InvalidParameter("dropoff must be non-negative".into()));
    }
    let q = query.as_bytes();
    let mut index: HashMap<&[u8], Vec<usize>> = HashMap::new();
    for i in 0..=q.len() - params.k {
        index.entry(&q[i..i + params.k]).or_default().push(i);
    }
    let mut hits: Vec<SearchHit> = db
        .par_iter()
        .enumerate()
        .filter(|(_, rec)| rec.alphabet() == query.alphabet())
        .flat_map_iter(|(record, rec)| {
            search_one(q, &index, rec.as_bytes(), scheme, &params)
                .into_iter()
                .map(move |hsp| SearchHit {
                    record,
                    id: rec.id().to_string(),
                    hsp,
                })
        })
        .collect();
    hits.sort_by(|a, b| {
        let (x, y) = (&a.hsp.alignment, &b.hsp.alignment);
        y.score
            .cmp(&x.score)
            .then_with(|| a.id.cmp(&b.id))
            .then(a.record.cmp(&b.record))
            .then(x.query_start.cmp(&y.query_start))
            .then(x.subject_start.cmp(&y.subject_start))
            .then(x.query_end.cmp(&y.query_end))
            .then(x.subject_end.cmp(&y.subject_end))
    });
    Ok(hits)
}
