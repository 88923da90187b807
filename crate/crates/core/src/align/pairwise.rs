use serde::{Deserialize, Serialize};

use super::{AlignError, AffineGap, ScoringScheme};
use crate::seq::Sequence;

pub const GAP: u8 = b'-';

/// A scored pairwise alignment.
///
/// Coordinates are 1-based and inclusive; an empty local alignment has all
/// four set to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    pub query_row: String,
    /// Residue where identical, `+` where similar, blank otherwise.
    pub midline: String,
    pub subject_row: String,
    pub score: i32,
    pub query_start: usize,
    pub query_end: usize,
    pub subject_start: usize,
    pub subject_end: usize,
    pub identities: usize,
    pub positives: usize,
    pub gaps: usize,
}

impl Alignment {
    /// Build from gapped rows; `query_from` and `subject_from` are the 0-based
    /// offsets of the first aligned residues.
    pub fn from_rows(
        query_row: Vec<u8>,
        subject_row: Vec<u8>,
        query_from: usize,
        subject_from: usize,
        score: i32,
        scheme: &ScoringScheme,
    ) -> Alignment {
        debug_assert_eq!(query_row.len(), subject_row.len());
        let mut midline = Vec::with_capacity(query_row.len());
        let (mut identities, mut positives, mut gaps) = (0, 0, 0);
        for (&q, &s) in query_row.iter().zip(&subject_row) {
            debug_assert!(!(q == GAP && s == GAP));
            if q == GAP || s == GAP {
                gaps += 1;
                midline.push(b' ');
            } else if q == s {
                identities += 1;
                positives += 1;
                midline.push(q);
            } else if scheme.is_similar(q, s) {
                positives += 1;
                midline.push(b'+');
            } else {
                midline.push(b' ');
            }
        }
        let residues = |row: &[u8]| row.iter().filter(|&&c| c != GAP).count();
        let (qn, sn) = (residues(&query_row), residues(&subject_row));
        let span = |from: usize, n: usize| if n == 0 { (0, 0) } else { (from + 1, from + n) };
        let (query_start, query_end) = span(query_from, qn);
        let (subject_start, subject_end) = span(subject_from, sn);
        let text = |v: Vec<u8>| String::from_utf8(v).expect("ascii rows");
        Alignment {
            query_row: text(query_row),
            midline: text(midline),
            subject_row: text(subject_row),
            score,
            query_start,
            query_end,
            subject_start,
            subject_end,
            identities,
            positives,
            gaps,
        }
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.query_row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.query_row.is_empty()
    }

    /// Shift coordinates by 0-based offsets, for alignments of subsequences.
    pub(crate) fn offset(mut self, query: usize, subject: usize) -> Alignment {
        if self.query_start > 0 {
            self.query_start += query;
            self.query_end += query;
        }
        if self.subject_start > 0 {
            self.subject_start += subject;
            self.subject_end += subject;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignMode {
    Global,
    Local,
}

const STOP: u8 = 0;
const DIAG: u8 = 1;
const UP: u8 = 2;
const LEFT: u8 = 3;

/// Two-bit traceback moves, four cells per byte.
struct Trace {
    bits: Vec<u8>,
    cols: usize,
}

impl Trace {
    fn new(rows: usize, cols: usize) -> Self {
        Trace {
            bits: vec![0; (rows * cols).div_ceil(4)],
            cols,
        }
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, dir: u8) {
        let idx = i * self.cols + j;
        self.bits[idx >> 2] |= dir << ((idx & 3) * 2);
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> u8 {
        let idx = i * self.cols + j;
        (self.bits[idx >> 2] >> ((idx & 3) * 2)) & 3
    }
}

fn check_alphabets(a: &Sequence, b: &Sequence) -> Result<(), AlignError> {
    if a.alphabet() != b.alphabet() {
        return Err(AlignError::AlphabetMismatch {
            query: a.alphabet(),
            subject: b.alphabet(),
        });
    }
    Ok(())
}

/// Linear-gap dynamic programme over raw residues. Ties prefer the diagonal,
/// then a gap in the subject (consuming the query), then a gap in the query.
pub(crate) fn align_linear(a: &[u8], b: &[u8], scheme: &ScoringScheme, mode: AlignMode) -> Alignment {
    let (n, m) = (a.len(), b.len());
    let gap = scheme.gap();
    let local = mode == AlignMode::Local;
    let table = scheme.table();
    let mut trace = Trace::new(n + 1, m + 1);
    let mut prev: Vec<i32> = (0..=m as i32).map(|j| if local { 0 } else { j * gap }).collect();
    let mut cur = vec![0i32; m + 1];
    if !local {
        for j in 1..=m {
            trace.set(0, j, LEFT);
        }
    }
    let mut best = (0i32, 0usize, 0usize);
    for i in 1..=n {
        let row = &table[a[i - 1] as usize];
        cur[0] = if local { 0 } else { i as i32 * gap };
        if !local {
            trace.set(i, 0, UP);
        }
        for j in 1..=m {
            let diag = prev[j - 1] + row[b[j - 1] as usize];
            let up = prev[j] + gap;
            let left = cur[j - 1] + gap;
            let (mut score, mut dir) = if diag >= up && diag >= left {
                (diag, DIAG)
            } else if up >= left {
                (up, UP)
            } else {
                (left, LEFT)
            };
            if local && score <= 0 {
                score = 0;
                dir = STOP;
            }
            cur[j] = score;
            trace.set(i, j, dir);
            if local && score > best.0 {
                best = (score, i, j);
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let (score, mut i, mut j) = if local { best } else { (prev[m], n, m) };
    let mut qrow = Vec::new();
    let mut srow = Vec::new();
    loop {
        match trace.get(i, j) {
            DIAG => {
                i -= 1;
                j -= 1;
                qrow.push(a[i]);
                srow.push(b[j]);
            }
            UP => {
                i -= 1;
                qrow.push(a[i]);
                srow.push(GAP);
            }
            LEFT => {
                j -= 1;
                qrow.push(GAP);
                srow.push(b[j]);
            }
            _ => break,
        }
    }
    qrow.reverse();
    srow.reverse();
    Alignment::from_rows(qrow, srow, i, j, score, scheme)
}

const NEG: i32 = i32::MIN / 4;
const FROM_M: u8 = 0;
const FROM_X: u8 = 1;
const FROM_Y: u8 = 2;
const FROM_START: u8 = 3;

fn best_of(m: i32, x: i32, y: i32) -> (i32, u8) {
    if m >= x && m >= y {
        (m, FROM_M)
    } else if x >= y {
        (x, FROM_X)
    } else {
        (y, FROM_Y)
    }
}

/// Three-state affine-gap programme. `X` ends in a gap in the subject, `Y` in
/// a gap in the query.
pub(crate) fn align_affine(a: &[u8], b: &[u8], scheme: &ScoringScheme, gaps: AffineGap, mode: AlignMode) -> Alignment {
    let (n, m) = (a.len(), b.len());
    let local = mode == AlignMode::Local;
    let (open, ext) = (gaps.open, gaps.extend);
    let cols = m + 1;
    // per cell: bits 0-1 M origin, 2-3 X origin, 4-5 Y origin
    let mut trace = vec![0u8; (n + 1) * cols];
    let mut pm = vec![NEG; cols];
    let mut px = vec![NEG; cols];
    let mut py = vec![NEG; cols];
    let mut cm = vec![NEG; cols];
    let mut cx = vec![NEG; cols];
    let mut cy = vec![NEG; cols];
    pm[0] = 0;
    if !local {
        for j in 1..=m {
            py[j] = open + j as i32 * ext;
            trace[j] = FROM_Y << 4;
        }
    }
    trace[0] = FROM_START;
    let mut best = (0i32, 0usize, 0usize);
    for i in 1..=n {
        cm[0] = NEG;
        cy[0] = NEG;
        cx[0] = if local { NEG } else { open + i as i32 * ext };
        trace[i * cols] = FROM_X << 2;
        for j in 1..=m {
            let s = scheme.score(a[i - 1], b[j - 1]);
            let (mut h, mut mo) = best_of(pm[j - 1], px[j - 1], py[j - 1]);
            if local && h <= 0 {
                h = 0;
                mo = FROM_START;
            }
            cm[j] = h + s;
            let (xv, xo) = best_of(pm[j] + open + ext, px[j] + ext, py[j] + open + ext);
            cx[j] = xv;
            let (yv, yo) = best_of(cm[j - 1] + open + ext, cx[j - 1] + open + ext, cy[j - 1] + ext);
            cy[j] = yv;
            trace[i * cols + j] = mo | (xo << 2) | (yo << 4);
            if local && cm[j] > best.0 {
                best = (cm[j], i, j);
            }
        }
        std::mem::swap(&mut pm, &mut cm);
        std::mem::swap(&mut px, &mut cx);
        std::mem::swap(&mut py, &mut cy);
    }
    let (score, mut i, mut j, mut state) = if local {
        (best.0, best.1, best.2, FROM_M)
    } else {
        let (v, st) = best_of(pm[m], px[m], py[m]);
        (v, n, m, st)
    };
    let mut qrow = Vec::new();
    let mut srow = Vec::new();
    if !(local && score == 0) {
        while i > 0 || j > 0 {
            let t = trace[i * cols + j];
            match state {
                FROM_M => {
                    state = t & 3;
                    i -= 1;
                    j -= 1;
                    qrow.push(a[i]);
                    srow.push(b[j]);
                }
                FROM_X => {
                    state = (t >> 2) & 3;
                    i -= 1;
                    qrow.push(a[i]);
                    srow.push(GAP);
                }
                FROM_Y => {
                    state = (t >> 4) & 3;
                    j -= 1;
                    qrow.push(GAP);
                    srow.push(b[j]);
                }
                _ => break,
            }
            if state == FROM_START {
                break;
            }
        }
    }
    qrow.reverse();
    srow.reverse();
    Alignment::from_rows(qrow, srow, i, j, score, scheme)
}

pub(crate) fn align_bytes(a: &[u8], b: &[u8], scheme: &ScoringScheme, mode: AlignMode) -> Alignment {
    match scheme.affine() {
        Some(gaps) => align_affine(a, b, scheme, gaps, mode),
        None => align_linear(a, b, scheme, mode),
    }
}

/// Optimal global alignment of `a` (query) against `b` (subject).
pub fn needleman_wunsch(a: &Sequence, b: &Sequence, scheme: &ScoringScheme) -> Result<Alignment, AlignError> {
    check_alphabets(a, b)?;
    Ok(align_bytes(a.as_bytes(), b.as_bytes(), scheme, AlignMode::Global))
}

/// Optimal local alignment; the highest-scoring cell wins, first by row then
/// column on ties. Score 0 yields an empty alignment.
pub fn smith_waterman(a: &Sequence, b: &Sequence, scheme: &ScoringScheme) -> Result<Alignment, AlignError> {
    check_alphabets(a, b)?;
    Ok(align_bytes(a.as_bytes(), b.as_bytes(), scheme, AlignMode::Local))
}

pub fn align(a: &Sequence, b: &Sequence, scheme: &ScoringScheme, mode: AlignMode) -> Result<Alignment, AlignError> {
    match mode {
        AlignMode::Global => needleman_wunsch(a, b, scheme),
        AlignMode::Local => smith_waterman(a, b, scheme),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Alphabet;
    use proptest::prelude::*;

    fn dna(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Dna).unwrap()
    }

    fn scheme() -> ScoringScheme {
        ScoringScheme::new(1, -1, -2).unwrap()
    }

    /// Every global alignment of `a` and `b`, as row pairs.
    fn all_alignments(a: &[u8], b: &[u8]) -> Vec<(Vec<u8>, Vec<u8>)> {
        if a.is_empty() && b.is_empty() {
            return vec![(Vec::new(), Vec::new())];
        }
        let mut out = Vec::new();
        let mut extend = |rest: Vec<(Vec<u8>, Vec<u8>)>, q: u8, s: u8| {
            for (mut qr, mut sr) in rest {
                qr.insert(0, q);
                sr.insert(0, s);
                out.push((qr, sr));
            }
        };
        if !a.is_empty() && !b.is_empty() {
            extend(all_alignments(&a[1..], &b[1..]), a[0], b[0]);
        }
        if !a.is_empty() {
            extend(all_alignments(&a[1..], b), a[0], GAP);
        }
        if !b.is_empty() {
            extend(all_alignments(a, &b[1..]), GAP, b[0]);
        }
        out
    }

    fn row_score(q: &[u8], s: &[u8], sc: &ScoringScheme) -> i32 {
        let mut total = 0;
        let mut prev_gap: Option<bool> = None;
        for (&x, &y) in q.iter().zip(s) {
            if x == GAP || y == GAP {
                let in_query = x == GAP;
                total += match sc.affine() {
                    None => sc.gap(),
                    Some(g) if prev_gap == Some(in_query) => g.extend,
                    Some(g) => g.open + g.extend,
                };
                prev_gap = Some(in_query);
            } else {
                total += sc.score(x, y);
                prev_gap = None;
            }
        }
        total
    }

    fn brute_global(a: &[u8], b: &[u8], sc: &ScoringScheme) -> i32 {
        all_alignments(a, b).iter().map(|(q, s)| row_score(q, s, sc)).max().unwrap()
    }

    fn brute_local(a: &[u8], b: &[u8], sc: &ScoringScheme) -> i32 {
        let mut best = 0;
        for i in 0..a.len() {
            for i2 in i + 1..=a.len() {
                for j in 0..b.len() {
                    for j2 in j + 1..=b.len() {
                        best = best.max(brute_global(&a[i..i2], &b[j..j2], sc));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn identity() {
        let al = needleman_wunsch(&dna("A"), &dna("A"), &scheme()).unwrap();
        assert_eq!((al.score, al.query_row.as_str(), al.subject_row.as_str()), (1, "A", "A"));
    }

    #[test]
    fn gat_gtt() {
        assert_eq!(brute_global(b"GAT", b"GTT", &scheme()), 1);
        let al = needleman_wunsch(&dna("GAT"), &dna("GTT"), &scheme()).unwrap();
        assert_eq!((al.score, al.query_row.as_str(), al.subject_row.as_str()), (1, "GAT", "GTT"));
        assert_eq!((al.query_start, al.query_end, al.identities, al.gaps), (1, 3, 2, 0));
    }

    #[test]
    fn local_examples() {
        let empty = smith_waterman(&dna("AAAA"), &dna("CCCC"), &scheme()).unwrap();
        assert_eq!(empty.score, 0);
        assert!(empty.is_empty());
        assert_eq!((empty.query_start, empty.subject_end), (0, 0));

        let p = |s: &str| Sequence::parse(s, Alphabet::Protein).unwrap();
        assert_eq!(brute_local(b"XXGATXX", b"YYGATYY", &scheme()), 3);
        // X and Y are not protein residues here, so use nucleotides around GAT
        let al = smith_waterman(&p("WWGATWW"), &p("YYGATYY"), &scheme()).unwrap();
        assert_eq!((al.score, al.query_row.as_str(), al.subject_row.as_str()), (3, "GAT", "GAT"));
        assert_eq!((al.query_start, al.query_end, al.subject_start, al.subject_end), (3, 5, 3, 5));
    }

    #[test]
    fn gapped_global() {
        let al = needleman_wunsch(&dna("ACGT"), &dna("AGT"), &scheme()).unwrap();
        assert_eq!(al.query_row, "ACGT");
        assert_eq!(al.subject_row, "A-GT");
        assert_eq!(al.score, 1);
        assert_eq!((al.gaps, al.identities, al.len()), (1, 3, 4));
        assert_eq!(al.midline, "A GT");
    }

    #[test]
    fn alphabet_mismatch() {
        let p = Sequence::parse("ACG", Alphabet::Protein).unwrap();
        assert!(matches!(needleman_wunsch(&dna("ACG"), &p, &scheme()), Err(AlignError::AlphabetMismatch { .. })));
    }

    #[test]
    fn affine_penalises_opening() {
        let sc = scheme().with_affine(AffineGap { open: -4, extend: -1 }).unwrap();
        let al = needleman_wunsch(&dna("AAAAGGGGTTTT"), &dna("AAAATTTT"), &sc).unwrap();
        assert_eq!(al.subject_row, "AAAA----TTTT");
        assert_eq!(al.score, 8 - 4 - 4);
    }

    fn small(alpha: &'static [u8]) -> impl Strategy<Value = String> {
        proptest::collection::vec(prop::sample::select(alpha.to_vec()), 1..=5).prop_map(|v| String::from_utf8(v).unwrap())
    }

    proptest! {
        #[test]
        fn linear_matches_enumeration(a in small(b"ACGT"), b in small(b"ACGT")) {
            let sc = scheme();
            let g = needleman_wunsch(&dna(&a), &dna(&b), &sc).unwrap();
            prop_assert_eq!(g.score, brute_global(a.as_bytes(), b.as_bytes(), &sc));
            prop_assert_eq!(row_score(g.query_row.as_bytes(), g.subject_row.as_bytes(), &sc), g.score);
            let l = smith_waterman(&dna(&a), &dna(&b), &sc).unwrap();
            prop_assert_eq!(l.score, brute_local(a.as_bytes(), b.as_bytes(), &sc));
            prop_assert_eq!(row_score(l.query_row.as_bytes(), l.subject_row.as_bytes(), &sc), l.score);
        }

        #[test]
        fn affine_matches_enumeration(a in small(b"ACGT"), b in small(b"ACGT"), open in -4i32..=0, extend in -3i32..=-1) {
            let sc = scheme().with_affine(AffineGap { open, extend }).unwrap();
            let g = needleman_wunsch(&dna(&a), &dna(&b), &sc).unwrap();
            prop_assert_eq!(g.score, brute_global(a.as_bytes(), b.as_bytes(), &sc));
            prop_assert_eq!(row_score(g.query_row.as_bytes(), g.subject_row.as_bytes(), &sc), g.score);
            let l = smith_waterman(&dna(&a), &dna(&b), &sc).unwrap();
            prop_assert_eq!(l.score, brute_local(a.as_bytes(), b.as_bytes(), &sc));
        }

        #[test]
        fn rows_are_consistent(a in "[ACGT]{1,30}", b in "[ACGT]{1,30}") {
            for al in [
                needleman_wunsch(&dna(&a), &dna(&b), &scheme()).unwrap(),
                smith_waterman(&dna(&a), &dna(&b), &scheme()).unwrap(),
            ] {
                prop_assert_eq!(al.query_row.len(), al.subject_row.len());
                prop_assert!(al.query_row.bytes().zip(al.subject_row.bytes()).all(|(q, s)| !(q == GAP && s == GAP)));
                prop_assert!(al.identities <= al.positives && al.positives <= al.len());
                let q: String = al.query_row.chars().filter(|&c| c != '-').collect();
                if !q.is_empty() {
                    prop_assert_eq!(&a[al.query_start - 1..al.query_end], q.as_str());
                }
            }
        }

        #[test]
        fn scaling_keeps_traceback(a in "[ACGT]{1,25}", b in "[ACGT]{1,25}", k in 1i32..6) {
            let sc = scheme();
            let scaled = sc.scaled(k).unwrap();
            for mode in [AlignMode::Global, AlignMode::Local] {
                let x = align(&dna(&a), &dna(&b), &sc, mode).unwrap();
                let y = align(&dna(&a), &dna(&b), &scaled, mode).unwrap();
                prop_assert_eq!(&x.query_row, &y.query_row);
                prop_assert_eq!(&x.subject_row, &y.subject_row);
                prop_assert_eq!(x.score * k, y.score);
            }
        }

        #[test]
        fn local_score_symmetric(a in "[ACGT]{1,30}", b in "[ACGT]{1,30}") {
            let x = smith_waterman(&dna(&a), &dna(&b), &scheme()).unwrap();
            let y = smith_waterman(&dna(&b), &dna(&a), &scheme()).unwrap();
            prop_assert_eq!(x.score, y.score);
        }

        #[test]
        fn self_alignment(a in "[ACGT]{1,40}") {
            let al = needleman_wunsch(&dna(&a), &dna(&a), &scheme()).unwrap();
            prop_assert_eq!(al.score, a.len() as i32);
        }
    }
}
