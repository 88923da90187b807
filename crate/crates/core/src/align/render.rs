use std::fmt::Write;

use super::pairwise::{Alignment, GAP};
use super::AlignError;

pub const DEFAULT_WIDTH: usize = 60;

fn percent(part: usize, whole: usize) -> usize {
    (part * 100).checked_div(whole).unwrap_or(0)
}

/// BLAST-style text: identifiers, score, counts line, then three-line blocks
/// of at most `width` columns. No E-value is reported.
pub fn render_blast(al: &Alignment, query_id: &str, subject_id: &str, width: usize) -> String {
    let width = width.max(1);
    let n = al.len();
    let mut out = String::new();
    let _ = writeln!(out, "Query= {query_id}");
    let _ = writeln!(out, ">{subject_id}");
    let _ = writeln!(out, "Score = {}", al.score);
    let _ = writeln!(
        out,
        "Identities = {}/{n} ({}%), Positives = {}/{n} ({}%), Gaps = {}/{n} ({}%)",
        al.identities,
        percent(al.identities, n),
        al.positives,
        percent(al.positives, n),
        al.gaps,
        percent(al.gaps, n),
    );

    let w = [al.query_end, al.subject_end].iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    let (q, m, s) = (al.query_row.as_bytes(), al.midline.as_bytes(), al.subject_row.as_bytes());
    let mut qpos = al.query_start.max(1) - 1;
    let mut spos = al.subject_start.max(1) - 1;
    for start in (0..n).step_by(width) {
        let end = (start + width).min(n);
        let line = |out: &mut String, label: &str, row: &[u8], pos: &mut usize| {
            let residues = row.iter().filter(|&&c| c != GAP).count();
            let first = if residues > 0 { *pos + 1 } else { *pos };
            *pos += residues;
            let chunk = std::str::from_utf8(row).expect("ascii rows");
            let _ = writeln!(out, "{label} {first:<w$} {chunk} {}", *pos);
        };
        out.push('\n');
        line(&mut out, "Query:", &q[start..end], &mut qpos);
        let _ = writeln!(
            out,
            "{}{}",
            " ".repeat(7 + w + 1),
            std::str::from_utf8(&m[start..end]).expect("ascii rows").trim_end()
        );
        line(&mut out, "Sbjct:", &s[start..end], &mut spos);
    }
    out
}

/// Counts recovered from a rendered `Identities = ...` line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderedCounts {
    pub identities: usize,
    pub positives: usize,
    pub gaps: usize,
    pub length: usize,
}

/// Parse the counts line back out of [`render_blast`] output.
pub fn parse_counts(text: &str) -> Result<RenderedCounts, AlignError> {
    let (line_no, line) = text
        .lines()
        .enumerate()
        .find(|(_, l)| l.starts_with("Identities = "))
        .ok_or(AlignError::Parse { line: 0, reason: "no Identities line".into() })?;
    let err = |reason: &str| AlignError::Parse { line: line_no + 1, reason: reason.into() };
    let mut fields = Vec::new();
    for part in line.split(", ") {
        let (_, value) = part.split_once(" = ").ok_or_else(|| err("expected `name = a/n (p%)`"))?;
        let ratio = value.split_whitespace().next().ok_or_else(|| err("missing ratio"))?;
        let (a, n) = ratio.split_once('/').ok_or_else(|| err("missing '/'"))?;
        let a: usize = a.parse().map_err(|_| err("bad count"))?;
        let n: usize = n.parse().map_err(|_| err("bad length"))?;
        fields.push((a, n));
    }
    match fields.as_slice() {
        [(i, n), (p, _), (g, _)] => Ok(RenderedCounts { identities: *i, positives: *p, gaps: *g, length: *n }),
        _ => Err(err("expected three counts")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::{needleman_wunsch, smith_waterman, ScoringScheme};
    use crate::seq::{Alphabet, Sequence};
    use proptest::prelude::*;

    fn protein(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Protein).unwrap()
    }

    #[test]
    fn identical() {
        let sc = ScoringScheme::protein();
        let al = needleman_wunsch(&protein("MKVL"), &protein("MKVL"), &sc).unwrap();
        let text = render_blast(&al, "a", "b", DEFAULT_WIDTH);
        assert!(text.contains("Identities = 4/4 (100%)"));
        assert!(text.contains("Gaps = 0/4 (0%)"));
    }

    #[test]
    fn similar_column() {
        let sc = ScoringScheme::protein();
        let al = needleman_wunsch(&protein("MDVL"), &protein("MEVL"), &sc).unwrap();
        assert_eq!(al.midline, "M+VL");
        let text = render_blast(&al, "a", "b", DEFAULT_WIDTH);
        assert!(text.contains("Identities = 3/4 (75%), Positives = 4/4 (100%)"));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[5], "Query: 1 MDVL 4");
        assert_eq!(lines[6], "         M+VL");
        assert_eq!(lines[7], "Sbjct: 1 MEVL 4");
    }

    #[test]
    fn floor_percentages() {
        assert_eq!(percent(128, 146), 87);
        assert_eq!(percent(134, 146), 91);
        assert_eq!(percent(1, 146), 0);
    }

    #[test]
    fn blocks_and_coordinates() {
        let sc = ScoringScheme::protein();
        let a = protein("ACDEFGHIKLMNPQ");
        let b = protein("ACDEGHIKLMNPQ");
        let al = needleman_wunsch(&a, &b, &sc).unwrap();
        let text = render_blast(&al, "a", "b", 5);
        let query: Vec<&str> = text.lines().filter(|l| l.starts_with("Query:")).collect();
        let sbjct: Vec<&str> = text.lines().filter(|l| l.starts_with("Sbjct:")).collect();
        assert_eq!(query.len(), 3);
        assert_eq!(query[0], "Query: 1  ACDEF 5");
        assert_eq!(sbjct[0], "Sbjct: 1  ACDE- 4");
        assert_eq!(sbjct[1], "Sbjct: 5  GHIKL 9");
        assert!(query[2].ends_with(" 14"));
    }

    #[test]
    fn empty_alignment() {
        let sc = ScoringScheme::protein();
        let al = smith_waterman(&protein("AAAA"), &protein("WWWW"), &sc).unwrap();
        let text = render_blast(&al, "a", "b", DEFAULT_WIDTH);
        assert!(text.contains("Identities = 0/0 (0%)"));
        assert!(!text.contains("Query:"));
    }

    proptest! {
        #[test]
        fn counts_roundtrip(a in "[ACDEFGHIKLMNPQRSTVWY]{1,40}", b in "[ACDEFGHIKLMNPQRSTVWY]{1,40}", width in 1usize..70) {
            let sc = ScoringScheme::protein();
            let al = needleman_wunsch(&protein(&a), &protein(&b), &sc).unwrap();
            let mismatches = al.len() - al.gaps - al.positives;
            prop_assert_eq!(al.identities + mismatches + (al.positives - al.identities) + al.gaps, al.len());
            let text = render_blast(&al, "q", "s", width);
            let counts = parse_counts(&text).unwrap();
            prop_assert_eq!(counts, RenderedCounts { identities: al.identities, positives: al.positives, gaps: al.gaps, length: al.len() });
            let rebuilt: String = text.lines().filter(|l| l.starts_with("Query:")).map(|l| l.split_whitespace().nth(2).unwrap()).collect();
            prop_assert_eq!(rebuilt, al.query_row.clone());
        }
    }
}
