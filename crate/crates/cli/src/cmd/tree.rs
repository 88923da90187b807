use seqforge::align::{distance_matrix, upgma, DistanceMatrix};

use super::scheme;
use crate::args::{SeqInput, ScoringArgs, TreeAction};
use crate::config::Config;
use crate::fail::Result;
use crate::input::{parse_sequences, read_text};
use crate::report::Report;

fn matrix(input: &SeqInput, scoring: &ScoringArgs, cfg: &Config, allow_tsv: bool) -> Result<DistanceMatrix> {
    let text = read_text(input.input.as_deref())?;
    if allow_tsv && text.starts_with('\t') {
        return Ok(DistanceMatrix::from_tsv(&text)?);
    }
    let loaded = parse_sequences(&text, input.alphabet.map(Into::into), input.lenient)?;
    let scheme = scheme(scoring, cfg, loaded.seqs[0].alphabet())?;
    Ok(distance_matrix(&loaded.seqs, &scheme)?)
}

pub fn run(action: &TreeAction, cfg: &Config) -> Result<Report> {
    match action {
        TreeAction::Distmat { seq, scoring } => {
            let m = matrix(seq, scoring, cfg, false)?;
            Report::new(m.to_tsv(), &m)
        }
        TreeAction::Upgma { seq, scoring } => {
            let tree = upgma(&matrix(seq, scoring, cfg, true)?)?;
            Report::new(format!("{}\n", tree.newick()), &tree)
        }
    }
}
