use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::digest::digest_spans;
use super::{data_lines, DigestRule, MassTable, PmfError};
use crate::seq::{Alphabet, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "unit", content = "value")]
pub enum Tolerance {
    Da(f64),
    Ppm(f64),
}

impl Tolerance {
    /// Half-width of the match window around `mass`.
    pub fn window(&self, mass: f64) -> f64 {
        match *self {
            Tolerance::Da(d) => d,
            Tolerance::Ppm(p) => mass * p * 1e-6,
        }
    }

    fn value(&self) -> f64 {
        match *self {
            Tolerance::Da(v) | Tolerance::Ppm(v) => v,
        }
    }
}

/// Observed peak masses, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    peaks: Vec<f64>,
    pub tolerance: Tolerance,
}

impl Fingerprint {
    pub fn new(mut peaks: Vec<f64>, tolerance: Tolerance) -> Result<Self, PmfError> {
        if !(tolerance.value().is_finite() && tolerance.value() > 0.0) {
            return Err(PmfError::InvalidParameter("tolerance must be positive".into()));
        }
        if peaks.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(PmfError::InvalidParameter("peak masses must be positive".into()));
        }
        peaks.sort_by(f64::total_cmp);
        Ok(Fingerprint { peaks, tolerance })
    }

    pub fn peaks(&self) -> &[f64] {
        &self.peaks
    }

    /// Peaks matched to distinct theoretical masses. Both lists are sorted;
    /// each peak takes the lightest unused mass inside its window, which is a
    /// maximum matching because window ends grow with the peak mass.
    fn count_matches(&self, theoretical: &[f64]) -> usize {
        let mut next = 0;
        let mut matched = 0;
        for &peak in &self.peaks {
            let w = self.tolerance.window(peak);
            while next < theoretical.len() && theoretical[next] < peak - w {
                next += 1;
            }
            if next < theoretical.len() && theoretical[next] <= peak + w {
                matched += 1;
                next += 1;
            }
        }
        matched
    }
}

/// One mass per line; `#` starts a comment.
pub fn parse_peaks(text: &str) -> Result<Vec<f64>, PmfError> {
    data_lines(text)
        .map(|(line, content)| {
            content.trim().parse::<f64>().map_err(|_| PmfError::Parse {
                line,
                reason: format!("not a mass: {:?}", content.trim()),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identification {
    pub accession: String,
    pub matched: usize,
    pub total: usize,
    /// Number of theoretical peptide masses for the record.
    pub theoretical: usize,
    pub score: f64,
}

/// Score every record by the fraction of peaks matched by its theoretical
/// digest, ranked by score, then fewer theoretical peptides, then accession.
/// Peptides containing residues without a mass are left out.
pub fn identify(
    f: &Fingerprint,
    db: &[(String, Sequence)],
    rule: &DigestRule,
    table: &MassTable,
) -> Result<Vec<Identification>, PmfError> {
    if db.is_empty() {
        return Err(PmfError::InvalidParameter("empty database".into()));
    }
    let total = f.peaks.len();
    let mut out: Vec<Identification> = db
        .par_iter()
        .map(|(accession, seq)| {
            let mut masses: Vec<f64> = if seq.alphabet() == Alphabet::Protein {
                digest_spans(seq.as_bytes(), rule)
                    .into_iter()
                    .filter_map(|r| table.mass_of(&seq.as_bytes()[r]).ok())
                    .collect()
            } else {
                Vec::new()
            };
            masses.sort_by(f64::total_cmp);
            let matched = f.count_matches(&masses);
            Identification {
                accession: accession.clone(),
                matched,
                total,
                theoretical: masses.len(),
                score: if total == 0 { 0.0 } else { matched as f64 / total as f64 },
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then(a.theoretical.cmp(&b.theoretical))
            .then_with(|| a.accession.cmp(&b.accession))
    });
    Ok(out)
}

/// TSV with a header: rank, accession, matched, total, score.
pub fn render_identifications(ids: &[Identification]) -> String {
    let mut out = String::from("rank\taccession\tmatched\ttotal\tscore\n");
    for (i, id) in ids.iter().enumerate() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{:.4}", i + 1, id.accession, id.matched, id.total, id.score);
    }
    out
}
