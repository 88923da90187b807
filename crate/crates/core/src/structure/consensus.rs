use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::patterns::{detect_helix, detect_strand, HydrophobicSet, HELIX_SPAN};
use super::StructureError;
use crate::seq::Sequence;

pub const HELIX: char = 'H';
pub const STRAND: char = 'E';
pub const COIL: char = 'C';

/// Per-residue labels over {H, E, C} with confidences in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SsPrediction {
    pub labels: String,
    pub method: String,
    pub confidence: Vec<f64>,
}

impl SsPrediction {
    pub fn new(labels: &str, method: &str, confidence: Vec<f64>) -> Result<Self, StructureError> {
        if let Some(c) = labels.chars().find(|c| ![HELIX, STRAND, COIL].contains(c)) {
            return Err(StructureError::InvalidParameter(format!("label {c:?} is not one of H, E, C")));
        }
        if confidence.len() != labels.len() {
            return Err(StructureError::LengthMismatch {
                expected: labels.len(),
                found: confidence.len(),
            });
        }
        if confidence.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return Err(StructureError::InvalidParameter("confidence outside [0, 1]".into()));
        }
        Ok(SsPrediction {
            labels: labels.to_string(),
            method: method.to_string(),
            confidence,
        })
    }

    /// Labels with full confidence.
    pub fn certain(labels: &str, method: &str) -> Result<Self, StructureError> {
        SsPrediction::new(labels, method, vec![1.0; labels.len()])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// One line per residue: `index<TAB>residue<TAB>label<TAB>confidence`,
    /// with 1-based indices.
    pub fn to_tsv(&self, s: &Sequence) -> Result<String, StructureError> {
        if s.len() != self.len() {
            return Err(StructureError::LengthMismatch {
                expected: s.len(),
                found: self.len(),
            });
        }
        let mut out = String::new();
        for (i, ((r, l), c)) in s.residues().chars().zip(self.labels.chars()).zip(&self.confidence).enumerate() {
            let _ = writeln!(out, "{}\t{r}\t{l}\t{c:.3}", i + 1);
        }
        Ok(out)
    }

    /// Read the label column back from [`SsPrediction::to_tsv`] output.
    pub fn from_tsv(text: &str, method: &str) -> Result<Self, StructureError> {
        let mut labels = String::new();
        let mut confidence = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let err = |reason: &str| StructureError::Parse { line: i + 1, reason: reason.into() };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 3 {
                return Err(err("expected index, residue, label and confidence columns"));
            }
            let label = cols[2].trim();
            if label.len() != 1 {
                return Err(err("label must be a single character"));
            }
            labels.push_str(label);
            let c = match cols.get(3) {
                Some(v) => v.trim().parse().map_err(|_| err("bad confidence"))?,
                None => 1.0,
            };
            confidence.push(c);
        }
        SsPrediction::new(&labels, method, confidence)
    }
}

/// Periodicity predictor: helix faces become H, strand flags E, overlaps
/// and everything else C. Conflicting residues get confidence 0.5.
pub fn predict(s: &Sequence, set: &HydrophobicSet) -> Result<SsPrediction, StructureError> {
    let n = s.len();
    let mut helix = vec![false; n];
    let mut strand = vec![false; n];
    for r in detect_helix(s, set, HELIX_SPAN)? {
        helix[r].iter_mut().for_each(|f| *f = true);
    }
    for r in detect_strand(s, set, 4, 4)? {
        strand[r.range].iter_mut().for_each(|f| *f = true);
    }
    let mut labels = String::with_capacity(n);
    let mut confidence = Vec::with_capacity(n);
    for (&h, &e) in helix.iter().zip(&strand) {
        let (l, c) = match (h, e) {
            (true, false) => (HELIX, 1.0),
            (false, true) => (STRAND, 1.0),
            (true, true) => (COIL, 0.5),
            (false, false) => (COIL, 1.0),
        };
        labels.push(l);
        confidence.push(c);
    }
    SsPrediction::new(&labels, "periodicity", confidence)
}

/// Weighted plurality per residue. Any tie for the top weight yields C;
/// confidence is the top weight over the total.
pub fn consensus(preds: &[SsPrediction], weights: &[f64]) -> Result<SsPrediction, StructureError> {
    let first = preds
        .first()
        .ok_or_else(|| StructureError::InvalidParameter("no predictions to combine".into()))?;
    if weights.len() != preds.len() {
        return Err(StructureError::InvalidWeights(format!(
            "{} weights for {} predictions",
            weights.len(),
            preds.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(StructureError::InvalidWeights("weights must be finite and non-negative".into()));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(StructureError::InvalidWeights("weights are all zero".into()));
    }
    for p in preds {
        if p.len() != first.len() {
            return Err(StructureError::LengthMismatch {
                expected: first.len(),
                found: p.len(),
            });
        }
    }
    if preds.len() == 1 {
        return Ok(first.clone());
    }
    let tie = total * 1e-12;
    let columns: Vec<Vec<u8>> = preds.iter().map(|p| p.labels.bytes().collect()).collect();
    let mut labels = String::with_capacity(first.len());
    let mut confidence = Vec::with_capacity(first.len());
    for i in 0..first.len() {
        let mut tally = [0.0f64; 3];
        for (col, w) in columns.iter().zip(weights) {
            let slot = match col[i] as char {
                HELIX => 0,
                STRAND => 1,
                _ => 2,
            };
            tally[slot] += w;
        }
        let top = tally.iter().cloned().fold(f64::MIN, f64::max);
        let winners: Vec<usize> = (0..3).filter(|&k| top - tally[k] <= tie).collect();
        let label = match winners.as_slice() {
            [0] => HELIX,
            [1] => STRAND,
            _ => COIL,
        };
        labels.push(label);
        confidence.push((top / total).clamp(0.0, 1.0));
    }
    SsPrediction::new(&labels, "consensus", confidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Alphabet;
    use proptest::prelude::*;

    fn pred(labels: &str) -> SsPrediction {
        SsPrediction::certain(labels, "test").unwrap()
    }

    #[test]
    fn identical_inputs() {
        let out = consensus(&[pred("HHEC"), pred("HHEC")], &[1.0, 1.0]).unwrap();
        assert_eq!(out.labels, "HHEC");
        assert!(out.confidence.iter().all(|&c| c == 1.0));
    }

    #[test]
    fn ties_become_coil() {
        let out = consensus(&[pred("H"), pred("E")], &[1.0, 1.0]).unwrap();
        assert_eq!((out.labels.as_str(), out.confidence[0]), ("C", 0.5));
        let out = consensus(&[pred("H"), pred("E"), pred("E")], &[2.0, 1.0, 1.0]).unwrap();
        assert_eq!((out.labels.as_str(), out.confidence[0]), ("C", 0.5));
        let out = consensus(&[pred("H"), pred("E"), pred("E")], &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(out.labels, "E");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            consensus(&[pred("HH"), pred("H")], &[1.0, 1.0]),
            Err(StructureError::LengthMismatch { .. })
        ));
        assert!(consensus(&[pred("H"), pred("H")], &[0.0, 0.0]).is_err());
        assert!(consensus(&[pred("H"), pred("H")], &[1.0, -1.0]).is_err());
        assert!(consensus(&[pred("H")], &[1.0, 1.0]).is_err());
        assert!(SsPrediction::certain("HXC", "m").is_err());
    }

    #[test]
    fn periodicity_predictor() {
        let s = Sequence::parse("LAALLAALDDDVVVVDKDKLALALKD", Alphabet::Protein).unwrap();
        let p = predict(&s, &HydrophobicSet::new("LIVMF")).unwrap();
        assert_eq!(p.len(), s.len());
        assert_eq!(&p.labels[..8], "HHHHHHHH");
        assert_eq!(&p.labels[11..15], "EEEE");
    }

    #[test]
    fn tsv_roundtrip() {
        let s = Sequence::parse("MKV", Alphabet::Protein).unwrap();
        let p = SsPrediction::new("HEC", "m", vec![1.0, 0.5, 0.25]).unwrap();
        let text = p.to_tsv(&s).unwrap();
        assert_eq!(text.lines().next(), Some("1\tM\tH\t1.000"));
        assert_eq!(SsPrediction::from_tsv(&text, "m").unwrap(), p);
    }

    fn labels(n: usize) -> impl Strategy<Value = String> {
        proptest::collection::vec(prop::sample::select(vec!['H', 'E', 'C']), n).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn single_input_verbatim(l in labels(12)) {
            let p = SsPrediction::new(&l, "x", vec![0.3; 12]).unwrap();
            prop_assert_eq!(consensus(std::slice::from_ref(&p), &[2.5]).unwrap(), p);
        }

        #[test]
        fn scale_invariant(ls in proptest::collection::vec(labels(10), 2..6), seed in proptest::collection::vec(1u32..10, 6), k in 0.01f64..100.0) {
            let preds: Vec<SsPrediction> = ls.iter().map(|l| pred(l)).collect();
            let w: Vec<f64> = seed.iter().take(preds.len()).map(|&x| x as f64).collect();
            let scaled: Vec<f64> = w.iter().map(|x| x * k).collect();
            let a = consensus(&preds, &w).unwrap();
            let b = consensus(&preds, &scaled).unwrap();
            prop_assert_eq!(&a.labels, &b.labels);
            for (x, y) in a.confidence.iter().zip(&b.confidence) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }
}
