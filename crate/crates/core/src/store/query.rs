use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StoreError;

/// Searchable record fields and their bracket tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    All,
    Au,
    Mh,
    Dp,
    Pt,
    La,
    Ti,
}

impl Field {
    pub const ALL: [Field; 7] = [Field::All, Field::Au, Field::Mh, Field::Dp, Field::Pt, Field::La, Field::Ti];
    /// Every field except `all`.
    pub const INDEXED: [Field; 6] = [Field::Au, Field::Mh, Field::Dp, Field::Pt, Field::La, Field::Ti];

    pub fn tag(self) -> &'static str {
        match self {
            Field::All => "all",
            Field::Au => "au",
            Field::Mh => "mh",
            Field::Dp => "dp",
            Field::Pt => "pt",
            Field::La => "la",
            Field::Ti => "ti",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Field {
    type Err = StoreError;
    fn from_str(s: &str) -> Result<Self, StoreError> {
        let t = s.trim().to_ascii_lowercase();
        Field::ALL
            .into_iter()
            .find(|f| f.tag() == t)
            .ok_or_else(|| StoreError::UnknownField(s.trim().to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Query {
    Term { text: String, field: Field },
    Phrase { words: Vec<String>, field: Field },
    Truncated { prefix: String, field: Field },
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
    Not(Box<Query>),
}

impl Query {
    pub fn term(text: &str, field: Field) -> Query {
        Query::Term { text: text.to_string(), field }
    }

    pub fn and(a: Query, b: Query) -> Query {
        Query::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Query, b: Query) -> Query {
        Query::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Query) -> Query {
        Query::Not(Box::new(a))
    }
}

/// Renders back into the query language; the output reparses to an equal tree.
impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |f: &mut fmt::Formatter<'_>, field: &Field| {
            if *field == Field::All {
                Ok(())
            } else {
                write!(f, " [{field}]")
            }
        };
        match self {
            Query::Term { text, field } => {
                f.write_str(text)?;
                tag(f, field)
            }
            Query::Truncated { prefix, field } => {
                write!(f, "{prefix}*")?;
                tag(f, field)
            }
            Query::Phrase { words, field } => {
                write!(f, "\"{}\"", words.join(" "))?;
                tag(f, field)
            }
            Query::And(a, b) => write!(f, "({a} AND {b})"),
            Query::Or(a, b) => write!(f, "({a} OR {b})"),
            Query::Not(a) => write!(f, "(NOT {a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
    Tag(String),
    LParen,
    RParen,
    And,
    Or,
    Not,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, StoreError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '"' | '[' => {
                let close = if c == '"' { '"' } else { ']' };
                let end = chars[i + 1..]
                    .iter()
                    .position(|&(_, d)| d == close)
                    .map(|k| i + 1 + k)
                    .ok_or(StoreError::Syntax {
                        position: pos,
                        reason: format!("unterminated {c}"),
                    })?;
                let inner: String = chars[i + 1..end].iter().map(|&(_, d)| d).collect();
                out.push((pos, if c == '"' { Tok::Quoted(inner) } else { Tok::Tag(inner) }));
                i = end + 1;
            }
            ']' => {
                return Err(StoreError::Syntax {
                    position: pos,
                    reason: "unexpected ]".into(),
                })
            }
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].1.is_whitespace() && !"()\"[]".contains(chars[i].1) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, d)| d).collect();
                let tok = match word.as_str() {
                    "AND" => Tok::And,
                    "OR" => Tok::Or,
                    "NOT" => Tok::Not,
                    _ => Tok::Word(word),
                };
                out.push((pos, tok));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn error<T>(&self, reason: &str) -> Result<T, StoreError> {
        Err(StoreError::Syntax {
            position: self.pos(),
            reason: reason.into(),
        })
    }

    fn or(&mut self) -> Result<Query, StoreError> {
        let mut left = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            left = Query::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Query, StoreError> {
        let mut left = self.group()?;
        loop {
            match self.peek() {
                Some(Tok::And) => {
                    self.at += 1;
                    left = Query::and(left, self.group()?);
                }
                Some(Tok::Not) => {
                    self.at += 1;
                    left = Query::and(left, Query::not(self.group()?));
                }
                _ => return Ok(left),
            }
        }
    }

    /// Adjacent operands joined by implicit AND.
    fn group(&mut self) -> Result<Query, StoreError> {
        let mut left = self.unary()?;
        while matches!(self.peek(), Some(Tok::Word(_) | Tok::Quoted(_) | Tok::LParen)) {
            left = Query::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Query, StoreError> {
        if self.peek() == Some(&Tok::Not) {
            self.at += 1;
            return Ok(Query::not(self.unary()?));
        }
        self.primary()
    }

    fn field(&mut self) -> Result<Field, StoreError> {
        if let Some(Tok::Tag(t)) = self.peek() {
            let f = t.parse()?;
            self.at += 1;
            Ok(f)
        } else {
            Ok(Field::All)
        }
    }

    fn primary(&mut self) -> Result<Query, StoreError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected )");
                }
                self.at += 1;
                if matches!(self.peek(), Some(Tok::Tag(_))) {
                    return self.error("field tags apply to single terms");
                }
                Ok(inner)
            }
            Some(Tok::Word(w)) => {
                self.at += 1;
                let field = self.field()?;
                let (body, truncated) = match w.strip_suffix('*') {
                    Some(p) => (p, true),
                    None => (w.as_str(), false),
                };
                let norm = super::index::normalize(body);
                if norm.is_empty() || body.contains('*') {
                    return Err(StoreError::Syntax {
                        position: pos,
                        reason: format!("{w:?} is not a searchable term"),
                    });
                }
                Ok(if truncated {
                    Query::Truncated { prefix: norm, field }
                } else {
                    Query::Term { text: norm, field }
                })
            }
            Some(Tok::Quoted(q)) => {
                self.at += 1;
                let field = self.field()?;
                let words = super::index::tokenize_plain(&q);
                if words.is_empty() {
                    return Err(StoreError::Syntax {
                        position: pos,
                        reason: "empty phrase".into(),
                    });
                }
                Ok(Query::Phrase { words, field })
            }
            Some(Tok::Tag(_)) => self.error("field tag without a term"),
            Some(Tok::RParen) => self.error("unexpected )"),
            Some(Tok::And | Tok::Or | Tok::Not) => self.error("operator without a left operand"),
            None => self.error("unexpected end of query"),
        }
    }
}

/// Parse the boolean query language.
///
/// Uppercase `AND`, `OR` and `NOT` are operators; `a NOT b` means `a AND
/// NOT b`. From loosest to tightest: `OR`, `AND`/`NOT`, adjacency (implicit
/// AND), prefix `NOT`. Binary operators are left-associative. A `[tag]`
/// binds to the preceding term, quotes make a phrase and a trailing `*` a
/// prefix search.
pub fn parse_query(text: &str) -> Result<Query, StoreError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(StoreError::Syntax {
            position: 0,
            reason: "empty query".into(),
        });
    }
    let mut p = Parser { toks, at: 0, len: text.len() };
    let q = p.or()?;
    if p.at < p.toks.len() {
        return p.error("unexpected token");
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(text: &str, field: Field) -> Query {
        Query::term(text, field)
    }

    #[test]
    fn tagged_conjunction() {
        let q = parse_query("dna [mh] AND crick [au] AND 1993 [dp]").unwrap();
        assert_eq!(
            q,
            Query::and(Query::and(t("dna", Field::Mh), t("crick", Field::Au)), t("1993", Field::Dp))
        );
    }

    #[test]
    fn implicit_and_groups_tighter() {
        let q = parse_query("(heat OR humidity) AND multiple sclerosis").unwrap();
        assert_eq!(
            q,
            Query::and(
                Query::or(t("heat", Field::All), t("humidity", Field::All)),
                Query::and(t("multiple", Field::All), t("sclerosis", Field::All))
            )
        );
        assert_eq!(parse_query("a b c").unwrap(), parse_query("a AND b AND c").unwrap());
    }

    #[test]
    fn phrases_truncation_and_not() {
        assert_eq!(
            parse_query("\"single cell\"").unwrap(),
            Query::Phrase { words: vec!["single".into(), "cell".into()], field: Field::All }
        );
        assert_eq!(
            parse_query("child* [mh]").unwrap(),
            Query::Truncated { prefix: "child".into(), field: Field::Mh }
        );
        assert_eq!(
            parse_query("a NOT b").unwrap(),
            Query::and(t("a", Field::All), Query::not(t("b", Field::All)))
        );
        assert_eq!(parse_query("NOT a").unwrap(), Query::not(t("a", Field::All)));
        assert_eq!(parse_query("a and b").unwrap(), parse_query("a AND and AND b").unwrap());
    }

    #[test]
    fn precedence() {
        let q = parse_query("a OR b AND c").unwrap();
        assert_eq!(q, Query::or(t("a", Field::All), Query::and(t("b", Field::All), t("c", Field::All))));
        let q = parse_query("NOT a b").unwrap();
        assert_eq!(q, Query::and(Query::not(t("a", Field::All)), t("b", Field::All)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_query(""), Err(StoreError::Syntax { position: 0, .. })));
        assert!(matches!(parse_query("a AND"), Err(StoreError::Syntax { position: 5, .. })));
        assert!(matches!(parse_query("(a"), Err(StoreError::Syntax { .. })));
        assert!(matches!(parse_query("a )"), Err(StoreError::Syntax { position: 2, .. })));
        assert!(matches!(parse_query("a [xx]"), Err(StoreError::UnknownField(f)) if f == "xx"));
        assert!(matches!(parse_query("\"abc"), Err(StoreError::Syntax { position: 0, .. })));
        assert!(matches!(parse_query("*"), Err(StoreError::Syntax { .. })));
    }

    #[test]
    fn display_reparses() {
        for text in ["dna [mh] AND crick [au]", "\"single cell\" [ti] OR x*", "NOT (a OR b) c NOT d"] {
            let q = parse_query(text).unwrap();
            assert_eq!(parse_query(&q.to_string()).unwrap(), q);
        }
    }
}
