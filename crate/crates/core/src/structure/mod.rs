//! Secondary-structure heuristics: hydropathy profiles, helix and strand
//! periodicity detectors, and a weighted consensus of predictions.

mod consensus;
mod patterns;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seq::{Alphabet, SeqError, Sequence};

pub use consensus::{consensus, predict, SsPrediction, COIL, HELIX, STRAND};
pub use patterns::{
    detect_helix, detect_helix_mask, detect_strand, hydrophobic_mask, HydrophobicSet, StrandKind, StrandRange,
    DEFAULT_HYDROPHOBIC, HELIX_SPAN,
};

const KYTE_DOOLITTLE: &str = include_str!("../../data/kyte_doolittle.tsv");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("window of {window} exceeds sequence length {len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("window must be odd, got {0}")]
    EvenWindow(usize),
    #[error("scale {scale} has no value for residue {residue}")]
    MissingResidue { scale: String, residue: char },
    #[error("predictions differ in length: {expected} vs {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Per-residue hydropathy values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydropathyScale {
    pub name: String,
    values: BTreeMap<char, f64>,
}

impl HydropathyScale {
    /// Requires a value for each of the 20 standard residues.
    pub fn new(name: &str, values: BTreeMap<char, f64>) -> Result<Self, StructureError> {
        for &r in Alphabet::Protein.symbols() {
            if !values.contains_key(&(r as char)) {
                return Err(StructureError::MissingResidue {
                    scale: name.to_string(),
                    residue: r as char,
                });
            }
        }
        Ok(HydropathyScale {
            name: name.to_string(),
            values,
        })
    }

    /// Parse `residue<TAB>value` lines; `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<Self, StructureError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| StructureError::Parse { line: i + 1, reason: reason.into() };
            let mut parts = line.split_whitespace();
            let residue = parts.next().ok_or_else(|| err("missing residue"))?;
            let value = parts.next().ok_or_else(|| err("missing value"))?;
            let mut chars = residue.chars();
            let r = match (chars.next(), chars.next()) {
                (Some(c), None) => c.to_ascii_uppercase(),
                _ => return Err(err("residue must be a single letter")),
            };
            let v: f64 = value.parse().map_err(|_| err("value is not a number"))?;
            if !v.is_finite() {
                return Err(err("value is not finite"));
            }
            values.insert(r, v);
        }
        HydropathyScale::new(name, values)
    }

    /// The bundled Kyte-Doolittle scale.
    pub fn kyte_doolittle() -> Self {
        HydropathyScale::parse("kyte-doolittle", KYTE_DOOLITTLE).expect("bundled scale is valid")
    }

    pub fn value(&self, residue: u8) -> Option<f64> {
        self.values.get(&(residue as char).to_ascii_uppercase()).copied()
    }
}

/// Centered moving average. Near the ends the window shrinks symmetrically
/// so that it stays centered on the residue.
pub fn hydropathy_profile(s: &Sequence, scale: &HydropathyScale, window: usize) -> Result<Vec<f64>, StructureError> {
    s.require(Alphabet::Protein)?;
    if window.is_multiple_of(2) {
        return Err(StructureError::EvenWindow(window));
    }
    if window > s.len() {
        return Err(StructureError::WindowTooLarge { window, len: s.len() });
    }
    let raw = s
        .as_bytes()
        .iter()
        .map(|&r| {
            scale.value(r).ok_or(StructureError::MissingResidue {
                scale: scale.name.clone(),
                residue: r as char,
            })
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let mut prefix = vec![0.0; raw.len() + 1];
    for (i, v) in raw.iter().enumerate() {
        prefix[i + 1] = prefix[i] + v;
    }
    let half = window / 2;
    let n = raw.len();
    Ok((0..n)
        .map(|i| {
            let h = half.min(i).min(n - 1 - i);
            let (lo, hi) = (i - h, i + h + 1);
            if hi - lo == 1 {
                raw[i]
            } else {
                (prefix[hi] - prefix[lo]) / (hi - lo) as f64
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn protein(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Protein).unwrap()
    }

    #[test]
    fn bundled_scale() {
        let kd = HydropathyScale::kyte_doolittle();
        assert_eq!(kd.value(b'I'), Some(4.5));
        assert_eq!(kd.value(b'R'), Some(-4.5));
        assert_eq!(kd.value(b'X'), None);
    }

    #[test]
    fn incomplete_scale() {
        assert!(matches!(
            HydropathyScale::parse("x", "A\t1.0\n"),
            Err(StructureError::MissingResidue { .. })
        ));
        assert!(matches!(HydropathyScale::parse("x", "AB\t1.0\n"), Err(StructureError::Parse { line: 1, .. })));
    }

    #[test]
    fn uniform_and_identity() {
        let kd = HydropathyScale::kyte_doolittle();
        let p = hydropathy_profile(&protein("AAAAAAA"), &kd, 5).unwrap();
        assert!(p.iter().all(|&v| (v - 1.8).abs() < 1e-12));
        let raw = hydropathy_profile(&protein("IRD"), &kd, 1).unwrap();
        assert_eq!(raw, vec![4.5, -4.5, -3.5]);
    }

    #[test]
    fn decreasing_across_boundary() {
        let kd = HydropathyScale::kyte_doolittle();
        let p = hydropathy_profile(&protein("IIIDDD"), &kd, 3).unwrap();
        // I I [I I D] [I D D] D D
        assert_eq!(p[1], 4.5);
        assert!(p[1] > p[2] && p[2] > p[3] && p[3] > p[4]);
    }

    #[test]
    fn window_checks() {
        let kd = HydropathyScale::kyte_doolittle();
        assert!(matches!(hydropathy_profile(&protein("AAA"), &kd, 4), Err(StructureError::EvenWindow(4))));
        assert!(matches!(
            hydropathy_profile(&protein("AAA"), &kd, 5),
            Err(StructureError::WindowTooLarge { window: 5, len: 3 })
        ));
    }

    proptest! {
        #[test]
        fn profile_stays_in_scale_range(s in "[ACDEFGHIKLMNPQRSTVWY]{1,60}", half in 0usize..6) {
            let kd = HydropathyScale::kyte_doolittle();
            let w = 2 * half + 1;
            prop_assume!(w <= s.len());
            let p = hydropathy_profile(&protein(&s), &kd, w).unwrap();
            prop_assert_eq!(p.len(), s.len());
            for v in p {
                prop_assert!((-4.5 - 1e-9..=4.5 + 1e-9).contains(&v));
            }
        }
    }
}
