use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::query::{Field, Query};
use super::Record;

/// Lowercase alphanumeric runs.
pub(crate) fn tokenize_plain(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// A query word reduced to the joined form used for hyphenated terms.
pub(crate) fn normalize(word: &str) -> String {
    word.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect()
}

/// Plain tokens plus the joined form of every whitespace-delimited word that
/// splits into several tokens, so `DNA-binding` yields `dna`, `binding` and
/// `dnabinding`.
pub(crate) fn index_tokens(text: &str) -> Vec<String> {
    let mut out = tokenize_plain(text);
    for word in text.split_whitespace() {
        if tokenize_plain(word).len() > 1 {
            out.push(normalize(word));
        }
    }
    out
}

/// Field to token to record positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Index {
    postings: BTreeMap<Field, BTreeMap<String, BTreeSet<usize>>>,
}

impl Index {
    pub(crate) fn build(records: &[Record]) -> Index {
        let mut index = Index::default();
        for (i, r) in records.iter().enumerate() {
            index.add(i, r);
        }
        index
    }

    pub(crate) fn add(&mut self, position: usize, record: &Record) {
        for field in Field::ALL {
            let map = self.postings.entry(field).or_default();
            for value in record.field_values(field) {
                for token in index_tokens(value) {
                    map.entry(token).or_default().insert(position);
                }
            }
        }
    }

    fn fields(field: Field) -> &'static [Field] {
        match field {
            Field::All => &Field::ALL,
            Field::Au => &[Field::Au],
            Field::Mh => &[Field::Mh],
            Field::Dp => &[Field::Dp],
            Field::Pt => &[Field::Pt],
            Field::La => &[Field::La],
            Field::Ti => &[Field::Ti],
        }
    }

    fn term(&self, token: &str, field: Field) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for f in Self::fields(field) {
            if let Some(set) = self.postings.get(f).and_then(|m| m.get(token)) {
                out.extend(set);
            }
        }
        out
    }

    fn prefix(&self, prefix: &str, field: Field) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for f in Self::fields(field) {
            if let Some(map) = self.postings.get(f) {
                for (_, set) in map.range(prefix.to_string()..).take_while(|(t, _)| t.starts_with(prefix)) {
                    out.extend(set);
                }
            }
        }
        out
    }

    fn phrase(&self, words: &[String], field: Field, records: &[Record]) -> BTreeSet<usize> {
        let mut candidates = self.term(&words[0], field);
        for w in &words[1..] {
            let next = self.term(w, field);
            candidates.retain(|i| next.contains(i));
        }
        candidates
            .into_iter()
            .filter(|&i| {
                Self::fields(field).iter().any(|&f| {
                    records[i].field_values(f).iter().any(|v| {
                        let tokens = tokenize_plain(v);
                        tokens.windows(words.len()).any(|w| w == words)
                    })
                })
            })
            .collect()
    }

    /// Matching record positions. `Not` complements within all records.
    pub(crate) fn evaluate(&self, q: &Query, records: &[Record]) -> BTreeSet<usize> {
        match q {
            Query::Term { text, field } => self.term(text, *field),
            Query::Truncated { prefix, field } => self.prefix(prefix, *field),
            Query::Phrase { words, field } => self.phrase(words, *field, records),
            Query::And(a, b) => {
                let left = self.evaluate(a, records);
                if left.is_empty() {
                    return left;
                }
                let right = self.evaluate(b, records);
                left.intersection(&right).copied().collect()
            }
            Query::Or(a, b) => {
                let mut left = self.evaluate(a, records);
                left.extend(self.evaluate(b, records));
                left
            }
            Query::Not(a) => {
                let inner = self.evaluate(a, records);
                (0..records.len()).filter(|i| !inner.contains(i)).collect()
            }
        }
    }

    /// One file per field: `token<TAB>pos,pos,...` lines.
    pub(crate) fn to_files(&self) -> Vec<(Field, String)> {
        Field::ALL
            .into_iter()
            .map(|f| {
                let mut text = String::new();
                if let Some(map) = self.postings.get(&f) {
                    for (token, set) in map {
                        let list: Vec<String> = set.iter().map(usize::to_string).collect();
                        let _ = writeln!(text, "{token}\t{}", list.join(","));
                    }
                }
                (f, text)
            })
            .collect()
    }

    /// Inverse of [`Index::to_files`]; `None` on any inconsistency.
    pub(crate) fn from_files(files: &[(Field, String)], records: usize) -> Option<Index> {
        let mut index = Index::default();
        for (field, text) in files {
            let map = index.postings.entry(*field).or_default();
            for line in text.lines() {
                let (token, list) = line.split_once('\t')?;
                let mut set = BTreeSet::new();
                for p in list.split(',') {
                    let p: usize = p.parse().ok()?;
                    if p >= records {
                        return None;
                    }
                    set.insert(p);
                }
                map.insert(token.to_string(), set);
            }
        }
        Some(index)
    }
}
