use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::seq::{Alphabet, Sequence, Validation};

const KEYWORD_WIDTH: usize = 12;
const LINE_WIDTH: usize = 79;

/// A section this parser does not interpret, kept line for line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub keyword: String,
    pub lines: Vec<String>,
}

/// One REFERENCE block: its header text and subkeyword fields (AUTHORS, TITLE, ...).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub text: String,
    pub fields: Vec<(String, String)>,
}

impl Reference {
    pub fn field(&self, name: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    /// Names from the AUTHORS field, split on ", " and the final "and".
    pub fn authors(&self) -> Vec<String> {
        let Some(raw) = self.field("AUTHORS") else { return Vec::new() };
        raw.split(", ")
            .flat_map(|part| part.split(" and "))
            .map(|a| a.trim().to_string())
            .filter(|a| !a.is_empty())
            .collect()
    }

    /// All fields joined into one citation string.
    pub fn citation(&self) -> String {
        self.fields.iter().map(|(_, v)| v.as_str()).collect::<Vec<_>>().join(". ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenBankRecord {
    pub locus: String,
    /// Everything after the LOCUS keyword, verbatim.
    pub locus_line: String,
    pub declared_length: Option<usize>,
    pub date: Option<String>,
    pub accession: String,
    pub secondary_accessions: Vec<String>,
    pub definition: String,
    pub source: String,
    pub organism: String,
    pub lineage: String,
    pub references: Vec<Reference>,
    pub extras: Vec<Section>,
    pub origin: Option<Sequence>,
}

impl GenBankRecord {
    /// A minimal record around a DNA sequence.
    pub fn new(locus: &str, accession: &str, definition: &str, organism: &str, origin: Sequence) -> Result<Self, FormatError> {
        origin.require(Alphabet::Dna)?;
        let origin = origin.with_id(accession)?.with_description(definition)?;
        Ok(GenBankRecord {
            locus: locus.to_string(),
            locus_line: format!("{:<16} {:>11} bp    DNA", locus, origin.len()),
            declared_length: Some(origin.len()),
            date: None,
            accession: accession.to_string(),
            secondary_accessions: Vec::new(),
            definition: definition.to_string(),
            source: organism.to_string(),
            organism: organism.to_string(),
            lineage: String::new(),
            references: Vec::new(),
            extras: Vec::new(),
            origin: Some(origin),
        })
    }

    /// Year from the LOCUS date (`21-JUN-1999` → `1999`).
    pub fn year(&self) -> Option<&str> {
        let date = self.date.as_deref()?;
        let year = date.rsplit('-').next()?;
        (year.len() == 4 && year.bytes().all(|b| b.is_ascii_digit())).then_some(year)
    }

    pub fn authors(&self) -> Vec<String> {
        self.references.iter().flat_map(Reference::authors).collect()
    }
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.char_indices().nth(KEYWORD_WIDTH) {
        Some((at, _)) => (line[..at].trim(), line[at..].trim()),
        None => (line.trim(), ""),
    }
}

fn is_continuation(line: &str) -> bool {
    split_keyword(line).0.is_empty()
}

fn joined<'a>(first: &'a str, rest: impl Iterator<Item = &'a String>) -> String {
    let mut out = first.to_string();
    for line in rest {
        let piece = line.trim();
        if piece.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(piece);
    }
    out
}

/// Parsing state for the record under construction.
struct RawRecord {
    sections: Vec<(usize, Section)>,
}

fn parse_locus(value: &str) -> (String, Option<usize>, Option<String>) {
    let tokens: Vec<&str> = value.split_whitespace().collect();
    let locus = tokens.first().copied().unwrap_or_default().to_string();
    let declared = tokens
        .windows(2)
        .find(|w| w[1] == "bp" || w[1] == "aa")
        .and_then(|w| w[0].parse().ok());
    let date = tokens
        .last()
        .filter(|t| t.len() == 11 && t.as_bytes()[2] == b'-' && t.as_bytes()[6] == b'-')
        .map(|t| t.to_string());
    (locus, declared, date)
}

fn parse_origin(line_no: usize, lines: &[String], locus: &str, accession: &str, definition: &str) -> Result<Option<Sequence>, FormatError> {
    let mut bases = String::new();
    for (offset, line) in lines.iter().enumerate().skip(1) {
        for ch in line.chars() {
            if ch.is_ascii_alphabetic() {
                bases.push(ch);
            } else if !(ch.is_ascii_digit() || ch.is_whitespace()) {
                return Err(FormatError::Malformed {
                    line: line_no + offset,
                    reason: format!("unexpected {ch:?} in ORIGIN of {locus}"),
                });
            }
        }
    }
    if bases.is_empty() {
        return Ok(None);
    }
    let id = if accession.is_empty() { locus } else { accession };
    let seq = Sequence::parse_with(&bases, Alphabet::Dna, Validation::lenient())
        .and_then(|s| s.with_id(id))
        .and_then(|s| s.with_description(definition))
        .map_err(|source| FormatError::Entry {
            id: id.to_string(),
            line: line_no,
            source,
        })?;
    Ok(Some(seq))
}

fn build(raw: RawRecord) -> Result<GenBankRecord, FormatError> {
    let mut rec = GenBankRecord {
        locus: String::new(),
        locus_line: String::new(),
        declared_length: None,
        date: None,
        accession: String::new(),
        secondary_accessions: Vec::new(),
        definition: String::new(),
        source: String::new(),
        organism: String::new(),
        lineage: String::new(),
        references: Vec::new(),
        extras: Vec::new(),
        origin: None,
    };
    let mut origin_at = None;
    for (line_no, section) in raw.sections {
        let (_, value) = split_keyword(&section.lines[0]);
        match section.keyword.as_str() {
            "LOCUS" => {
                rec.locus_line = value.to_string();
                (rec.locus, rec.declared_length, rec.date) = parse_locus(value);
            }
            "DEFINITION" => rec.definition = joined(value, section.lines[1..].iter()),
            "ACCESSION" => {
                let all = joined(value, section.lines[1..].iter());
                let mut tokens = all.split_whitespace().map(str::to_string);
                rec.accession = tokens.next().unwrap_or_default();
                rec.secondary_accessions = tokens.collect();
            }
            "SOURCE" => {
                let sub = section.lines[1..].iter().position(|l| !is_continuation(l)).map(|p| p + 1);
                let source_end = sub.unwrap_or(section.lines.len());
                rec.source = joined(value, section.lines[1..source_end].iter());
                if let Some(start) = sub {
                    let (kw, org) = split_keyword(&section.lines[start]);
                    if kw == "ORGANISM" {
                        rec.organism = org.to_string();
                        rec.lineage = joined("", section.lines[start + 1..].iter());
                    }
                }
            }
            "REFERENCE" => {
                let mut reference = Reference {
                    text: String::new(),
                    fields: Vec::new(),
                };
                let mut header = vec![value.to_string()];
                for line in &section.lines[1..] {
                    let (kw, v) = split_keyword(line);
                    if kw.is_empty() {
                        match reference.fields.last_mut() {
                            Some((_, text)) => {
                                text.push(' ');
                                text.push_str(v);
                            }
                            None => header.push(v.to_string()),
                        }
                    } else {
                        reference.fields.push((kw.to_string(), v.to_string()));
                    }
                }
                reference.text = header.join(" ").trim().to_string();
                rec.references.push(reference);
            }
            "ORIGIN" => origin_at = Some((line_no, section.lines)),
            _ => rec.extras.push(section),
        }
    }
    if rec.accession.is_empty() {
        return Err(FormatError::MissingAccession { locus: rec.locus });
    }
    if let Some((line_no, lines)) = origin_at {
        rec.origin = parse_origin(line_no, &lines, &rec.locus, &rec.accession, &rec.definition)?;
    }
    if let (Some(declared), Some(origin)) = (rec.declared_length, &rec.origin) {
        if declared != origin.len() {
            return Err(FormatError::LengthMismatch {
                locus: rec.locus,
                declared,
                actual: origin.len(),
            });
        }
    }
    Ok(rec)
}

/// Parse `//`-terminated GenBank records.
pub fn parse_genbank<R: BufRead>(reader: R) -> Result<Vec<GenBankRecord>, FormatError> {
    let mut records = Vec::new();
    let mut current: Option<RawRecord> = None;
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let line = line.trim_end_matches('\r').trim_end().to_string();
        if line == "//" {
            match current.take() {
                Some(raw) => records.push(build(raw)?),
                None => {
                    return Err(FormatError::Malformed {
                        line: line_no,
                        reason: "'//' outside a record".into(),
                    })
                }
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let top_level = !line.starts_with(' ');
        match (&mut current, top_level) {
            (cur, true) => {
                let keyword = split_keyword(&line).0.to_string();
                let raw = cur.get_or_insert_with(|| RawRecord { sections: Vec::new() });
                raw.sections.push((line_no, Section { keyword, lines: vec![line] }));
            }
            (Some(raw), false) => raw.sections.last_mut().expect("record starts with a keyword").1.lines.push(line),
            (None, false) => {
                return Err(FormatError::Malformed {
                    line: line_no,
                    reason: "indented line outside a record".into(),
                })
            }
        }
    }
    if let Some(raw) = current {
        let locus = raw
            .sections
            .iter()
            .find(|(_, s)| s.keyword == "LOCUS")
            .map(|(_, s)| parse_locus(split_keyword(&s.lines[0]).1).0)
            .unwrap_or_default();
        return Err(FormatError::UnterminatedRecord { locus });
    }
    Ok(records)
}

pub fn parse_genbank_str(input: &str) -> Result<Vec<GenBankRecord>, FormatError> {
    parse_genbank(input.as_bytes())
}

fn push_verbatim(out: &mut String, keyword: &str, text: &str) {
    let row = format!("{keyword:<KEYWORD_WIDTH$}{text}");
    out.push_str(row.trim_end());
    out.push('\n');
}

fn push_wrapped(out: &mut String, keyword: &str, text: &str) {
    let width = LINE_WIDTH - KEYWORD_WIDTH;
    let mut lines: Vec<String> = Vec::new();
    let mut current = String::new();
    for word in text.split_whitespace() {
        if !current.is_empty() && current.len() + 1 + word.len() > width {
            lines.push(std::mem::take(&mut current));
        }
        if !current.is_empty() {
            current.push(' ');
        }
        current.push_str(word);
    }
    if !current.is_empty() || lines.is_empty() {
        lines.push(current);
    }
    for (i, line) in lines.iter().enumerate() {
        let label = if i == 0 { keyword } else { "" };
        let row = format!("{label:<KEYWORD_WIDTH$}{line}");
        out.push_str(row.trim_end());
        out.push('\n');
    }
}

/// Render records with the keyword column at 1-12 and ORIGIN in numbered
/// lines of 60 bases grouped by 10.
pub fn render_genbank(records: &[GenBankRecord]) -> String {
    let mut out = String::new();
    for r in records {
        push_verbatim(&mut out, "LOCUS", &r.locus_line);
        if !r.definition.is_empty() {
            push_wrapped(&mut out, "DEFINITION", &r.definition);
        }
        let mut accessions = vec![r.accession.as_str()];
        accessions.extend(r.secondary_accessions.iter().map(String::as_str));
        push_wrapped(&mut out, "ACCESSION", &accessions.join(" "));
        for section in &r.extras {
            for line in &section.lines {
                out.push_str(line);
                out.push('\n');
            }
        }
        if !r.source.is_empty() || !r.organism.is_empty() {
            push_wrapped(&mut out, "SOURCE", &r.source);
            if !r.organism.is_empty() {
                push_wrapped(&mut out, "  ORGANISM", &r.organism);
                if !r.lineage.is_empty() {
                    push_wrapped(&mut out, "", &r.lineage);
                }
            }
        }
        for reference in &r.references {
            push_verbatim(&mut out, "REFERENCE", &reference.text);
            for (key, value) in &reference.fields {
                push_wrapped(&mut out, &format!("  {key}"), value);
            }
        }
        if let Some(origin) = &r.origin {
            out.push_str("ORIGIN\n");
            let lower = origin.residues().to_ascii_lowercase();
            for (line_no, line) in lower.as_bytes().chunks(60).enumerate() {
                out.push_str(&format!("{:>9}", line_no * 60 + 1));
                for group in line.chunks(10) {
                    out.push(' ');
                    out.push_str(std::str::from_utf8(group).expect("ascii"));
                }
                out.push('\n');
            }
        }
        out.push_str("//\n");
    }
    out
}
