use serde_json::json;
use seqforge::pmf::{
    digest, identify, parse_peaks, parse_rules, peptide_mass, render_identifications, DigestRule, Fingerprint,
    MassTable, Tolerance, CARBAMIDOMETHYL,
};
use seqforge::seq::Alphabet;

use crate::args::{DigestOpts, MassOpts, PmfAction};
use crate::config::Config;
use crate::fail::{Failure, Result};
use crate::input::{load_as, load_path, read_text};
use crate::report::Report;
use crate::row;

fn rule(o: &DigestOpts, cfg: &Config) -> Result<DigestRule> {
    let name = cfg.or(o.rule.clone(), "rule", "trypsin".to_string())?;
    let base = match cfg.pick(o.rules_file.clone(), "rules-file")? {
        Some(path) => {
            let path: std::path::PathBuf = path;
            parse_rules(&read_text(Some(&path))?)?
                .into_iter()
                .find(|r| r.name == name)
                .ok_or_else(|| Failure::data(format!("rule {name:?} not in {}", path.display())))?
        }
        None => DigestRule::builtin(&name)?,
    };
    Ok(base.with_missed(cfg.or(o.missed, "missed", 0)?))
}

fn table(o: &MassOpts, cfg: &Config) -> Result<MassTable> {
    let plain = cfg.flag(o.no_carbamidomethyl, "no-carbamidomethyl")?;
    let t = match cfg.pick(o.masses.clone(), "masses")? {
        Some(path) => {
            let path: std::path::PathBuf = path;
            let t = MassTable::parse(&read_text(Some(&path))?)?;
            if plain {
                t
            } else {
                t.with_modification('C', CARBAMIDOMETHYL)
            }
        }
        None if plain => MassTable::monoisotopic().without_modifications(),
        None => MassTable::monoisotopic(),
    };
    Ok(t)
}

fn mass_cell(m: &std::result::Result<f64, seqforge::pmf::PmfError>) -> String {
    match m {
        Ok(v) => format!("{v:.5}"),
        Err(_) => "NA".into(),
    }
}

pub fn run(action: &PmfAction, cfg: &Config) -> Result<Report> {
    match action {
        PmfAction::Digest { seq, digest: d, mass } => {
            let loaded = load_as(seq, Some(Alphabet::Protein))?;
            let (rule, table) = (rule(d, cfg)?, table(mass, cfg)?);
            let mut text = String::from("peptide\tsequence\tmass\n");
            let mut rows = Vec::new();
            for s in &loaded.seqs {
                for p in digest(s, &rule)? {
                    let m = peptide_mass(&p, &table);
                    row!(text, p.id(), p.residues(), mass_cell(&m));
                    rows.push(json!({ "peptide": p.id(), "sequence": p.residues(), "mass": m.ok() }));
                }
            }
            Report::new(text, rows)
        }
        PmfAction::Mass { seq, mass } => {
            let loaded = load_as(seq, Some(Alphabet::Protein))?;
            let table = table(mass, cfg)?;
            let mut text = String::from("id\tmass\n");
            let mut rows = Vec::new();
            for s in &loaded.seqs {
                let m = peptide_mass(s, &table)?;
                row!(text, s.id(), format!("{m:.5}"));
                rows.push(json!({ "id": s.id(), "mass": m }));
            }
            Report::new(text, rows)
        }
        PmfAction::Identify { peaks, db, tolerance, ppm, digest: d, mass } => {
            let width = cfg.or(*tolerance, "tolerance", 0.5)?;
            let tol = if cfg.flag(*ppm, "ppm")? { Tolerance::Ppm(width) } else { Tolerance::Da(width) };
            let fp = Fingerprint::new(parse_peaks(&read_text(Some(peaks))?)?, tol)?;
            let proteins = load_path(db, Some(Alphabet::Protein), true)?;
            let entries: Vec<_> = proteins.seqs.into_iter().map(|s| (s.id().to_string(), s)).collect();
            let ids = identify(&fp, &entries, &rule(d, cfg)?, &table(mass, cfg)?)?;
            let none = ids.iter().all(|i| i.matched == 0);
            Ok(Report::new(render_identifications(&ids), &ids)?.empty_if(none, "no peaks matched any protein"))
        }
    }
}
