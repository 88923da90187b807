use std::collections::HashSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::seq::{Alphabet, Sequence, Validation};

pub const DEFAULT_WRAP: usize = 60;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastaDoc {
    pub entries: Vec<Sequence>,
}

impl FastaDoc {
    pub fn new(entries: Vec<Sequence>) -> Result<Self, FormatError> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.id()) {
                return Err(FormatError::DuplicateId(e.id().to_string()));
            }
        }
        Ok(FastaDoc { entries })
    }

    pub fn get(&self, id: &str) -> Option<&Sequence> {
        self.entries.iter().find(|e| e.id() == id)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FastaOptions {
    /// Force every entry onto this alphabet instead of detecting it.
    pub alphabet: Option<Alphabet>,
    /// Admit ambiguity codes (mapped to `N` / `X`).
    pub lenient: bool,
}

/// Nucleic when every symbol is one of `ACGTNU`, protein otherwise.
pub fn detect_alphabet(residues: &str) -> Alphabet {
    let mut has_t = false;
    let mut has_u = false;
    for b in residues.bytes().filter(|b| !b.is_ascii_whitespace()) {
        match b.to_ascii_uppercase() {
            b'A' | b'C' | b'G' | b'N' => {}
            b'T' => has_t = true,
            b'U' => has_u = true,
            _ => return Alphabet::Protein,
        }
    }
    match (has_t, has_u) {
        (false, true) => Alphabet::Rna,
        (true, true) => Alphabet::Protein,
        _ => Alphabet::Dna,
    }
}

struct Pending {
    id: String,
    description: String,
    line: usize,
    residues: String,
}

fn finish(p: Pending, opts: FastaOptions) -> Result<Sequence, FormatError> {
    let alphabet = opts.alphabet.unwrap_or_else(|| detect_alphabet(&p.residues));
    let has_n = alphabet.is_nucleic() && p.residues.bytes().any(|b| b.eq_ignore_ascii_case(&b'N'));
    let rules = Validation {
        lenient: opts.lenient || has_n,
        ..Validation::default()
    };
    let at = |source| FormatError::Entry {
        id: p.id.clone(),
        line: p.line,
        source,
    };
    Sequence::parse_with(&p.residues, alphabet, rules)
        .and_then(|s| s.with_id(&p.id))
        .and_then(|s| s.with_description(&p.description))
        .map_err(at)
}

/// Parse FASTA text from a reader. CR before LF is tolerated.
pub fn parse_fasta<R: BufRead>(reader: R, opts: FastaOptions) -> Result<FastaDoc, FormatError> {
    let mut entries = Vec::new();
    let mut current: Option<Pending> = None;
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            if let Some(p) = current.take() {
                entries.push(finish(p, opts)?);
            }
            let header = header.trim();
            let (id, description) = match header.split_once(char::is_whitespace) {
                Some((id, rest)) => (id, rest.trim()),
                None => (header, ""),
            };
            current = Some(Pending {
                id: id.to_string(),
                description: description.to_string(),
                line: n + 1,
                residues: String::new(),
            });
        } else if line.trim().is_empty() || line.starts_with(';') {
            continue;
        } else {
            match current.as_mut() {
                Some(p) => p.residues.push_str(line.trim()),
                None => return Err(FormatError::NoHeader { line: n + 1 }),
            }
        }
    }
    if let Some(p) = current.take() {
        entries.push(finish(p, opts)?);
    }
    if entries.is_empty() {
        return Err(FormatError::NoHeader { line: 1 });
    }
    FastaDoc::new(entries)
}

pub fn parse_fasta_str(input: &str, opts: FastaOptions) -> Result<FastaDoc, FormatError> {
    parse_fasta(input.as_bytes(), opts)
}

pub fn render_entry(out: &mut String, s: &Sequence, wrap: usize) {
    let wrap = wrap.max(1);
    out.push('>');
    out.push_str(s.id());
    if !s.description().is_empty() {
        out.push(' ');
        out.push_str(s.description());
    }
    out.push('\n');
    for chunk in s.as_bytes().chunks(wrap) {
        out.push_str(std::str::from_utf8(chunk).expect("ascii residues"));
        out.push('\n');
    }
}

/// Render with residue lines wrapped at `wrap` columns and LF line endings.
pub fn render_fasta(doc: &FastaDoc, wrap: usize) -> String {
    let mut out = String::new();
    for e in &doc.entries {
        render_entry(&mut out, e, wrap);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> Result<FastaDoc, FormatError> {
        parse_fasta_str(s, FastaOptions::default())
    }

    #[test]
    fn single_entry() {
        let d = parse(">x desc\nACGT\n").unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.entries[0].id(), "x");
        assert_eq!(d.entries[0].description(), "desc");
        assert_eq!(d.entries[0].residues(), "ACGT");
        assert_eq!(d.entries[0].alphabet(), Alphabet::Dna);
    }

    #[test]
    fn concatenates_lines() {
        let d = parse(">a\nAC\nGT\n>b\nTTTT\n").unwrap();
        assert_eq!(d.entries.len(), 2);
        assert_eq!(d.entries[0].residues(), "ACGT");
        assert_eq!(d.entries[1].residues(), "TTTT");
    }

    #[test]
    fn missing_header() {
        assert!(matches!(parse("ACGT\n"), Err(FormatError::NoHeader { line: 1 })));
        assert!(matches!(parse(""), Err(FormatError::NoHeader { .. })));
    }

    #[test]
    fn duplicate_ids() {
        assert!(matches!(parse(">a\nA\n>a\nC\n"), Err(FormatError::DuplicateId(id)) if id == "a"));
    }

    #[test]
    fn invalid_residue_reports_entry() {
        let err = parse(">p\nMK?L\n").unwrap_err();
        assert!(matches!(err, FormatError::Entry { ref id, line: 1, .. } if id == "p"), "{err:?}");
    }

    #[test]
    fn carriage_returns_and_detection() {
        let d = parse(">r\r\nACGU\r\n>p prot\r\nMKLV\r\n>n\r\nACNNT\r\n").unwrap();
        assert_eq!(d.entries[0].alphabet(), Alphabet::Rna);
        assert_eq!(d.entries[1].alphabet(), Alphabet::Protein);
        assert_eq!(d.entries[1].description(), "prot");
        assert_eq!(d.entries[2].alphabet(), Alphabet::Dna);
        assert_eq!(d.entries[2].ambiguous_count(), 2);
    }

    #[test]
    fn forced_alphabet() {
        let opts = FastaOptions { alphabet: Some(Alphabet::Protein), lenient: false };
        let d = parse_fasta_str(">p\nACGT\n", opts).unwrap();
        assert_eq!(d.entries[0].alphabet(), Alphabet::Protein);
    }

    #[test]
    fn render_examples() {
        let s = Sequence::new("x", "", Alphabet::Dna, "ACGT").unwrap();
        let doc = FastaDoc::new(vec![s]).unwrap();
        assert_eq!(render_fasta(&doc, 2), ">x\nAC\nGT\n");

        let long = Sequence::new("y", "d", Alphabet::Dna, &"A".repeat(61)).unwrap();
        let text = render_fasta(&FastaDoc::new(vec![long]).unwrap(), DEFAULT_WRAP);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], ">y d");
        assert_eq!((lines[1].len(), lines[2].len(), lines.len()), (60, 1, 3));
    }

    fn entry() -> impl Strategy<Value = (String, String, String, bool)> {
        (
            "[A-Za-z0-9_.|]{1,10}",
            "([a-z0-9]{1,6}( [a-z0-9]{1,6}){0,3})?",
            "[ACGT]{1,150}",
            any::<bool>(),
        )
    }

    proptest! {
        #[test]
        fn roundtrip(raw in proptest::collection::vec(entry(), 1..6), wrap in 1usize..80) {
            let mut entries = Vec::new();
            let mut seen = HashSet::new();
            for (id, desc, residues, protein) in raw {
                if !seen.insert(id.clone()) {
                    continue;
                }
                let (alphabet, residues) = if protein {
                    (Alphabet::Protein, format!("M{}", residues.replace('T', "W")))
                } else {
                    (Alphabet::Dna, residues)
                };
                entries.push(Sequence::new(&id, &desc, alphabet, &residues).unwrap());
            }
            let doc = FastaDoc::new(entries).unwrap();
            let text = render_fasta(&doc, wrap);
            prop_assert_eq!(parse(&text).unwrap(), doc);
        }
    }
}
