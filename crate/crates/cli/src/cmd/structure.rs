use std::path::Path;

use seqforge::seq::{Alphabet, Sequence};
use seqforge::structure::{consensus, hydropathy_profile, predict, HydropathyScale, HydrophobicSet, SsPrediction};

use crate::args::{ConsensusArgs, PredictArgs};
use crate::config::Config;
use crate::fail::{Failure, Result};
use crate::input::{load_as, read_text};
use crate::report::Report;
use crate::row;

pub fn predict_cmd(a: &PredictArgs, cfg: &Config) -> Result<Report> {
    let loaded = load_as(&a.seq, Some(Alphabet::Protein))?;
    let mut text = String::new();
    let header = |text: &mut String, s: &Sequence| {
        if !loaded.raw {
            text.push_str(&format!(">{}\n", s.id()));
        }
    };
    if let Some(window) = cfg.pick(a.hydropathy, "hydropathy")? {
        let scale = match cfg.pick(a.scale.clone(), "scale")? {
            Some(p) => {
                let p: std::path::PathBuf = p;
                let name = p.file_stem().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                HydropathyScale::parse(&name, &read_text(Some(&p))?)?
            }
            None => HydropathyScale::kyte_doolittle(),
        };
        let mut rows = Vec::new();
        for s in &loaded.seqs {
            header(&mut text, s);
            let profile = hydropathy_profile(s, &scale, window)?;
            for (i, (r, v)) in s.residues().chars().zip(&profile).enumerate() {
                row!(text, i + 1, r, format!("{v:.3}"));
            }
            rows.push(serde_json::json!({ "id": s.id(), "scale": scale.name, "window": window, "profile": profile }));
        }
        return Report::new(text, rows);
    }
    let set = match cfg.pick(a.hydrophobic.clone(), "hydrophobic")? {
        Some(r) => HydrophobicSet::new(&r),
        None => HydrophobicSet::default(),
    };
    let mut rows = Vec::new();
    for s in &loaded.seqs {
        header(&mut text, s);
        let p = predict(s, &set)?;
        text.push_str(&p.to_tsv(s)?);
        rows.push(serde_json::json!({ "id": s.id(), "prediction": p }));
    }
    Report::new(text, rows)
}

fn method_name(path: &Path) -> String {
    path.file_stem().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
}

pub fn consensus_cmd(a: &ConsensusArgs) -> Result<Report> {
    let texts = a.predictions.iter().map(|p| read_text(Some(p))).collect::<Result<Vec<_>>>()?;
    let preds = a
        .predictions
        .iter()
        .zip(&texts)
        .map(|(p, t)| SsPrediction::from_tsv(t, &method_name(p)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let weights = match &a.weights {
        Some(w) if w.len() != preds.len() => {
            return Err(Failure::usage(format!("{} weights for {} predictions", w.len(), preds.len())))
        }
        Some(w) => w.clone(),
        None => vec![1.0; preds.len()],
    };
    let merged = consensus(&preds, &weights)?;
    let residues: String = texts[0]
        .lines()
        .filter(|l| !l.trim().is_empty())
        .filter_map(|l| l.split('\t').nth(1))
        .collect();
    let text = match Sequence::parse_with(&residues, Alphabet::Protein, seqforge::seq::Validation::lenient()) {
        Ok(s) if s.len() == merged.len() => merged.to_tsv(&s)?,
        _ => {
            let mut t = String::new();
            for (i, (l, c)) in merged.labels.chars().zip(&merged.confidence).enumerate() {
                row!(t, i + 1, "-", l, format!("{c:.3}"));
            }
            t
        }
    };
    Report::new(text, &merged)
}
