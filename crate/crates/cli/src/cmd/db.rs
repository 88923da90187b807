use std::path::PathBuf;

use seqforge::formats::{parse_fasta_str, parse_genbank_str, FastaOptions};
use seqforge::store::{build_neighbors, records_from_fasta, Record, Store};

use crate::args::{DbAction, DbCmd};
use crate::config::Config;
use crate::fail::{Failure, Result};
use crate::input::read_text;
use crate::report::Report;
use crate::row;

pub const DATA_ENV: &str = "SEQFORGE_DATA";

fn data_dir(cmd: &DbCmd, cfg: &Config) -> Result<PathBuf> {
    if let Some(d) = &cmd.data {
        return Ok(d.clone());
    }
    if let Some(d) = std::env::var_os(DATA_ENV).filter(|v| !v.is_empty()) {
        return Ok(PathBuf::from(d));
    }
    cfg.get::<PathBuf>("data")?
        .ok_or_else(|| Failure::usage(format!("no data directory: pass --data or set {DATA_ENV}")))
}

/// FASTA, GenBank flat file, a JSON array of records or JSON records one after another.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let body = text.trim_start();
    if body.starts_with('>') {
        let doc = parse_fasta_str(text, FastaOptions { alphabet: None, lenient: true })?;
        Ok(records_from_fasta(&doc))
    } else if body.starts_with("LOCUS") {
        Ok(parse_genbank_str(text)?.iter().map(Record::from).collect())
    } else if body.starts_with('[') {
        Ok(serde_json::from_str(body)?)
    } else if body.starts_with('{') {
        serde_json::Deserializer::from_str(body)
            .into_iter::<Record>()
            .map(|r| r.map_err(Failure::from))
            .collect()
    } else if body.is_empty() {
        Ok(Vec::new())
    } else {
        Err(Failure::data("unrecognised record format: expected FASTA, GenBank or JSON"))
    }
}

fn links_text(links: &[seqforge::store::NeighborLink]) -> String {
    let mut text = String::from("from\tto\tscore\tmethod\n");
    for l in links {
        row!(text, l.from, l.to, l.score, l.method);
    }
    text
}

pub fn run(cmd: &DbCmd, cfg: &Config) -> Result<Report> {
    let dir = data_dir(cmd, cfg)?;
    let mut store = Store::open(&dir)?;
    match &cmd.action {
        DbAction::Ingest { files } => {
            let mut records = Vec::new();
            for f in files {
                let parsed = parse_records(&read_text(Some(f))?)
                    .map_err(|e| Failure::data(format!("{}: {}", f.display(), e.message)))?;
                records.extend(parsed);
            }
            let seen = records.len();
            let added = store.ingest(records)?;
            let text = format!("ingested {added} of {seen} records; store holds {}\n", store.len());
            Report::new(text, serde_json::json!({ "read": seen, "added": added, "total": store.len() }))
        }
        DbAction::Query { query } => {
            let hits = store.query(query)?;
            let text: String = hits.iter().map(|a| format!("{a}\n")).collect();
            let none = hits.is_empty();
            Ok(Report::new(text, &hits)?.empty_if(none, "no records match"))
        }
        DbAction::Neighbors { accession, build, threshold } => {
            if cfg.flag(*build, "build")? {
                let links = build_neighbors(&store, cfg.or(*threshold, "threshold", 30)?, None);
                store.save_neighbors(&links)?;
            }
            let links = match accession {
                Some(a) => {
                    if store.get(a).is_none() {
                        return Err(Failure::data(format!("no record with accession {a}")));
                    }
                    store.neighbors_of(a)?
                }
                None => store.neighbors()?,
            };
            let none = links.is_empty();
            Ok(Report::new(links_text(&links), &links)?.empty_if(none, "no neighbors"))
        }
        DbAction::Get { accession } => {
            let record = store
                .get(accession)
                .ok_or_else(|| Failure::data(format!("no record with accession {accession}")))?;
            let mut text = serde_json::to_string_pretty(record)?;
            text.push('\n');
            Report::new(text, record)
        }
    }
}
