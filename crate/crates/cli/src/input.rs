use std::io::Read;
use std::path::Path;

use seqforge::formats::{detect_alphabet, parse_fasta_str, render_fasta, FastaDoc, FastaOptions};
use seqforge::seq::{Alphabet, Sequence, Validation};

use crate::args::{AlphabetArg, SeqInput};
use crate::fail::{Failure, Result};

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Alphabet {
        match a {
            AlphabetArg::Dna => Alphabet::Dna,
            AlphabetArg::Rna => Alphabet::Rna,
            AlphabetArg::Protein => Alphabet::Protein,
        }
    }
}

/// File contents, or standard input for `-` and `None`.
pub fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| Failure::data(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::data(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

/// Parsed input sequences. `raw` is set when the text was a bare sequence
/// rather than FASTA, so output can mirror the input style.
#[derive(Debug)]
pub struct Loaded {
    pub seqs: Vec<Sequence>,
    pub raw: bool,
}

impl Loaded {
    pub fn first(self) -> Sequence {
        self.seqs.into_iter().next().expect("loaders reject empty input")
    }

    /// Sequences in the style of the input: bare residues or FASTA.
    pub fn render(&self, seqs: Vec<Sequence>) -> Result<String> {
        if self.raw {
            Ok(seqs.iter().map(|s| format!("{}\n", s.residues())).collect())
        } else {
            Ok(render_fasta(&FastaDoc::new(seqs)?, 60))
        }
    }
}

pub fn parse_sequences(text: &str, alphabet: Option<Alphabet>, lenient: bool) -> Result<Loaded> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('>') {
        let doc = parse_fasta_str(text, FastaOptions { alphabet, lenient })?;
        if doc.entries.is_empty() {
            return Err(Failure::data("no sequences in input"));
        }
        return Ok(Loaded { seqs: doc.entries, raw: false });
    }
    let residues: String = text.split_whitespace().collect();
    if residues.is_empty() {
        return Err(Failure::data("no sequences in input"));
    }
    let alphabet = alphabet.unwrap_or_else(|| detect_alphabet(&residues));
    let rules = if lenient { Validation::lenient() } else { Validation::default() };
    let s = Sequence::parse_with(&residues, alphabet, rules)?;
    Ok(Loaded { seqs: vec![s], raw: true })
}

pub fn load(input: &SeqInput) -> Result<Loaded> {
    load_as(input, None)
}

/// Like [`load`], with an alphabet used when `--alphabet` is absent.
pub fn load_as(input: &SeqInput, fallback: Option<Alphabet>) -> Result<Loaded> {
    let text = read_text(input.input.as_deref())?;
    parse_sequences(&text, input.alphabet.map(Alphabet::from).or(fallback), input.lenient)
}

pub fn load_path(path: &Path, alphabet: Option<Alphabet>, lenient: bool) -> Result<Loaded> {
    parse_sequences(&read_text(Some(path))?, alphabet, lenient)
}
