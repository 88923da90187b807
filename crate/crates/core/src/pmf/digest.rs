use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{data_lines, PmfError};
use crate::seq::{Alphabet, Sequence};

const RULES: &str = include_str!("../../data/rules.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigestRule {
    pub name: String,
    pub cleave_after: String,
    pub blocked_by_next: String,
    pub missed_cleavages: usize,
}

impl DigestRule {
    pub fn new(name: &str, cleave_after: &str, blocked_by_next: &str) -> Result<Self, PmfError> {
        if cleave_after.is_empty() {
            return Err(PmfError::InvalidParameter(format!("rule {name} cleaves after nothing")));
        }
        Ok(DigestRule {
            name: name.to_string(),
            cleave_after: cleave_after.to_ascii_uppercase(),
            blocked_by_next: blocked_by_next.to_ascii_uppercase(),
            missed_cleavages: 0,
        })
    }

    /// A rule from the bundled rules file, by name.
    pub fn builtin(name: &str) -> Result<Self, PmfError> {
        parse_rules(RULES)
            .expect("bundled rules are valid")
            .into_iter()
            .find(|r| r.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| PmfError::UnknownRule(name.to_string()))
    }

    /// Cleave after K or R unless followed by P.
    pub fn trypsin() -> Self {
        DigestRule::builtin("trypsin").expect("trypsin is bundled")
    }

    pub fn with_missed(mut self, missed: usize) -> Self {
        self.missed_cleavages = missed;
        self
    }

    fn cleaves(&self, here: u8, next: u8) -> bool {
        self.cleave_after.as_bytes().contains(&here) && !self.blocked_by_next.as_bytes().contains(&next)
    }
}

/// Parse `name<TAB>cleave-after<TAB>blocked-by-next` lines.
pub fn parse_rules(text: &str) -> Result<Vec<DigestRule>, PmfError> {
    data_lines(text)
        .map(|(line, content)| {
            let cols: Vec<&str> = content.split('\t').map(str::trim).collect();
            if cols.len() < 2 || cols[0].is_empty() {
                return Err(PmfError::Parse { line, reason: "expected name and cleave-after columns".into() });
            }
            DigestRule::new(cols[0], cols[1], cols.get(2).copied().unwrap_or(""))
        })
        .collect()
}

/// Peptide spans: base peptides in order, then joins of 2..=m+1 adjacent
/// peptides ordered by length and start.
pub fn digest_spans(residues: &[u8], rule: &DigestRule) -> Vec<Range<usize>> {
    let n = residues.len();
    let mut cuts = vec![0];
    for i in 0..n.saturating_sub(1) {
        if rule.cleaves(residues[i], residues[i + 1]) {
            cuts.push(i + 1);
        }
    }
    cuts.push(n);
    let pieces = cuts.len() - 1;
    let mut spans = Vec::new();
    for join in 1..=(rule.missed_cleavages + 1).min(pieces) {
        for start in 0..=pieces - join {
            spans.push(cuts[start]..cuts[start + join]);
        }
    }
    spans
}

/// Peptides named `{id}:{start}-{end}` with 1-based inclusive coordinates.
pub fn digest(p: &Sequence, rule: &DigestRule) -> Result<Vec<Sequence>, PmfError> {
    p.require(Alphabet::Protein)?;
    Ok(digest_spans(p.as_bytes(), rule)
        .into_iter()
        .map(|r| {
            let id = format!("{}:{}-{}", p.id(), r.start + 1, r.end);
            Sequence::from_valid(&id, Alphabet::Protein, p.residues()[r].to_string())
        })
        .collect())
}
