//! PROSITE-style signatures such as `H-[FW]-x-[LIVM]-x-G-x(5)-[LV]-H-x(3)-[DE]`.
//!
//! Supported syntax: literal residues, `x` for any residue, `[..]` for any of
//! a set, `{..}` for any residue outside a set, a repetition suffix `(n)` or
//! range `(m,n)`, a leading `<` (match at the N-terminus), a trailing `>`
//! (match at the C-terminus) and an optional final `.`.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::seq::{Alphabet, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Element {
    Literal(u8),
    /// Residues in first-seen order, no duplicates.
    AnySet(Vec<u8>),
    /// Anything except these residues.
    NoneOf(Vec<u8>),
    Wildcard,
    Repeat(Box<Element>, usize),
    /// Between `min` and `max` consecutive residues, each matching the inner element.
    Range(Box<Element>, usize, usize),
}

impl Element {
    fn accepts(&self, residue: u8) -> bool {
        match self {
            Element::Literal(c) => *c == residue,
            Element::AnySet(set) => set.contains(&residue),
            Element::NoneOf(set) => !set.contains(&residue),
            Element::Wildcard => true,
            Element::Repeat(inner, _) | Element::Range(inner, _, _) => inner.accepts(residue),
        }
    }

    /// Inclusive bounds on the residues one element consumes.
    pub fn width(&self) -> (usize, usize) {
        match self {
            Element::Repeat(_, n) => (*n, *n),
            Element::Range(_, lo, hi) => (*lo, *hi),
            _ => (1, 1),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[u8]| String::from_utf8_lossy(s).into_owned();
        match self {
            Element::Literal(c) => write!(f, "{}", *c as char),
            Element::AnySet(s) => write!(f, "[{}]", set(s)),
            Element::NoneOf(s) => write!(f, "{{{}}}", set(s)),
            Element::Wildcard => f.write_str("x"),
            Element::Repeat(inner, n) => write!(f, "{inner}({n})"),
            Element::Range(inner, lo, hi) => write!(f, "{inner}({lo},{hi})"),
        }
    }
}

/// A compiled signature. Equality ignores the original source text.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MotifPattern {
    pub source: String,
    pub elements: Vec<Element>,
    pub anchored_start: bool,
    pub anchored_end: bool,
}

impl PartialEq for MotifPattern {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
            && self.anchored_start == other.anchored_start
            && self.anchored_end == other.anchored_end
    }
}

impl Eq for MotifPattern {}

impl MotifPattern {
    /// Number of residues a match covers, when that is fixed.
    pub fn fixed_span(&self) -> Option<usize> {
        let (lo, hi) = self.span_bounds();
        (lo == hi).then_some(lo)
    }

    pub fn span_bounds(&self) -> (usize, usize) {
        self.elements
            .iter()
            .map(Element::width)
            .fold((0, 0), |(a, b), (lo, hi)| (a + lo, b + hi))
    }

    /// Canonical text form; parsing it yields an equal pattern.
    pub fn canonical(&self) -> String {
        let body = self.elements.iter().map(Element::to_string).collect::<Vec<_>>().join("-");
        format!(
            "{}{}{}",
            if self.anchored_start { "<" } else { "" },
            body,
            if self.anchored_end { ">" } else { "" }
        )
    }

    /// Shortest match end for a match starting at `start`, if any.
    pub fn match_at(&self, residues: &[u8], start: usize) -> Option<usize> {
        if self.anchored_start && start != 0 {
            return None;
        }
        self.walk(residues, 0, start)
    }

    fn walk(&self, residues: &[u8], element: usize, pos: usize) -> Option<usize> {
        let Some(el) = self.elements.get(element) else {
            return (!self.anchored_end || pos == residues.len()).then_some(pos);
        };
        let (lo, hi) = el.width();
        let mut taken = 0;
        while taken < lo {
            if pos + taken >= residues.len() || !el.accepts(residues[pos + taken]) {
                return None;
            }
            taken += 1;
        }
        loop {
            if let Some(end) = self.walk(residues, element + 1, pos + taken) {
                return Some(end);
            }
            if taken == hi || pos + taken >= residues.len() || !el.accepts(residues[pos + taken]) {
                return None;
            }
            taken += 1;
        }
    }
}

impl fmt::Display for MotifPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, at: usize, reason: &str) -> FormatError {
        FormatError::Syntax {
            position: at,
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<usize, FormatError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error(start, "expected a number"))
    }

    fn residue_set(&mut self, close: u8) -> Result<Vec<u8>, FormatError> {
        let open = self.pos;
        self.pos += 1;
        let mut set = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c == close => {
                    self.pos += 1;
                    break;
                }
                Some(c) if Alphabet::Protein.contains(c) => {
                    if !set.contains(&c) {
                        set.push(c);
                    }
                    self.pos += 1;
                }
                Some(_) => return Err(self.error(self.pos, "expected a residue inside the set")),
                None => return Err(self.error(open, "unterminated residue set")),
            }
        }
        if set.is_empty() {
            return Err(self.error(open, "empty residue set"));
        }
        Ok(set)
    }

    fn element(&mut self) -> Result<Element, FormatError> {
        let at = self.pos;
        let base = match self.peek() {
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                Element::Wildcard
            }
            Some(b'[') => Element::AnySet(self.residue_set(b']')?),
            Some(b'{') => Element::NoneOf(self.residue_set(b'}')?),
            Some(c) if Alphabet::Protein.contains(c) => {
                self.pos += 1;
                Element::Literal(c)
            }
            Some(_) => return Err(self.error(at, "expected a residue, 'x', '[' or '{'")),
            None => return Err(self.error(at, "expected an element")),
        };
        if self.peek() != Some(b'(') {
            return Ok(base);
        }
        let paren = self.pos;
        self.pos += 1;
        let lo = self.number()?;
        let hi = if self.peek() == Some(b',') {
            self.pos += 1;
            Some(self.number()?)
        } else {
            None
        };
        if self.peek() != Some(b')') {
            return Err(self.error(self.pos, "expected ')'"));
        }
        self.pos += 1;
        match hi {
            None if lo >= 1 => Ok(Element::Repeat(Box::new(base), lo)),
            None => Err(self.error(paren, "repeat count must be at least 1")),
            Some(hi) if hi >= lo && hi >= 1 => Ok(Element::Range(Box::new(base), lo, hi)),
            Some(_) => Err(self.error(paren, "invalid repeat range")),
        }
    }
}

/// Compile a signature. Whitespace is ignored.
pub fn parse_prosite(pattern: &str) -> Result<MotifPattern, FormatError> {
    let compact: Vec<u8> = pattern.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut text: &[u8] = &compact;
    if text.last() == Some(&b'.') {
        text = &text[..text.len() - 1];
    }
    if text.is_empty() {
        return Err(FormatError::EmptyPattern);
    }
    let mut p = Parser { text, pos: 0 };
    let anchored_start = p.peek() == Some(b'<');
    if anchored_start {
        p.pos += 1;
    }
    let mut elements = vec![p.element()?];
    let mut anchored_end = false;
    while let Some(c) = p.peek() {
        match c {
            b'-' => {
                p.pos += 1;
                elements.push(p.element()?);
            }
            b'>' if p.pos + 1 == text.len() => {
                anchored_end = true;
                p.pos += 1;
            }
            _ => return Err(p.error(p.pos, "expected '-' between elements")),
        }
    }
    Ok(MotifPattern {
        source: pattern.trim().to_string(),
        elements,
        anchored_start,
        anchored_end,
    })
}

/// Every start offset where the pattern matches, ascending; overlapping hits
/// are all reported. Each range ends at the shortest match from its start.
pub fn scan_motif(pattern: &MotifPattern, s: &Sequence) -> Result<Vec<Range<usize>>, FormatError> {
    s.require(Alphabet::Protein)?;
    let residues = s.as_bytes();
    let (min_span, _) = pattern.span_bounds();
    if residues.len() < min_span {
        return Ok(Vec::new());
    }
    let last = if pattern.anchored_start { 0 } else { residues.len() - min_span };
    Ok((0..=last)
        .filter_map(|start| pattern.match_at(residues, start).map(|end| start..end))
        .collect())
}
