use serde::{Deserialize, Serialize};

use super::AlignError;
use crate::seq::Alphabet;

/// Default protein similarity groups. Only D/E is motivated by the BLAST
/// example this toolkit mirrors; the rest are a conventional choice.
pub const DEFAULT_GROUPS: [&str; 7] = ["DE", "KRH", "ILVM", "FYW", "ST", "NQ", "AG"];

/// Gap of length `L` costs `open + L * extend`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineGap {
    pub open: i32,
    pub extend: i32,
}

/// Integer scores for identical, similar and unrelated residue pairs plus a
/// per-symbol gap penalty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SchemeSpec", into = "SchemeSpec")]
pub struct ScoringScheme {
    match_score: i32,
    similar: i32,
    mismatch: i32,
    gap: i32,
    affine: Option<AffineGap>,
    groups: Vec<String>,
    /// `group[b]` is 1 + the index of the group holding byte `b`, or 0.
    group_of: Box<[u8; 128]>,
}

#[derive(Serialize, Deserialize)]
struct SchemeSpec {
    #[serde(rename = "match")]
    match_score: i32,
    similar: i32,
    mismatch: i32,
    gap: i32,
    affine: Option<AffineGap>,
    groups: Vec<String>,
}

impl TryFrom<SchemeSpec> for ScoringScheme {
    type Error = AlignError;
    fn try_from(s: SchemeSpec) -> Result<Self, AlignError> {
        let mut scheme = ScoringScheme::new(s.match_score, s.mismatch, s.gap)?.with_groups(&s.groups, s.similar)?;
        if let Some(a) = s.affine {
            scheme = scheme.with_affine(a)?;
        }
        Ok(scheme)
    }
}

impl From<ScoringScheme> for SchemeSpec {
    fn from(s: ScoringScheme) -> Self {
        SchemeSpec {
            match_score: s.match_score,
            similar: s.similar,
            mismatch: s.mismatch,
            gap: s.gap,
            affine: s.affine,
            groups: s.groups,
        }
    }
}

impl ScoringScheme {
    /// Linear-gap scheme with no similarity groups.
    pub fn new(match_score: i32, mismatch: i32, gap: i32) -> Result<Self, AlignError> {
        let scheme = ScoringScheme {
            match_score,
            similar: mismatch,
            mismatch,
            gap,
            affine: None,
            groups: Vec::new(),
            group_of: Box::new([0; 128]),
        };
        scheme.validate()?;
        Ok(scheme)
    }

    /// +2 identical, +1 similar, -1 otherwise, -2 per gap symbol.
    pub fn protein() -> Self {
        ScoringScheme::new(2, -1, -2)
            .and_then(|s| s.with_groups(&DEFAULT_GROUPS, 1))
            .expect("default protein scheme is valid")
    }

    /// +1 match, -1 mismatch, -2 per gap symbol.
    pub fn nucleotide() -> Self {
        ScoringScheme::new(1, -1, -2).expect("default nucleotide scheme is valid")
    }

    pub fn for_alphabet(alphabet: Alphabet) -> Self {
        match alphabet {
            Alphabet::Protein => Self::protein(),
            Alphabet::Dna | Alphabet::Rna => Self::nucleotide(),
        }
    }

    pub fn with_groups<S: AsRef<str>>(mut self, groups: &[S], similar: i32) -> Result<Self, AlignError> {
        self.groups = groups.iter().map(|g| g.as_ref().to_ascii_uppercase()).collect();
        self.similar = similar;
        self.group_of = Box::new([0; 128]);
        for (i, g) in self.groups.iter().enumerate() {
            if g.is_empty() {
                return Err(AlignError::InvalidScheme("empty similarity group".into()));
            }
            for b in g.bytes() {
                let slot = self
                    .group_of
                    .get_mut(b as usize)
                    .ok_or_else(|| AlignError::InvalidScheme(format!("non-ASCII residue in group {g:?}")))?;
                if *slot != 0 {
                    return Err(AlignError::InvalidScheme(format!("residue {} is in two groups", b as char)));
                }
                *slot = (i + 1) as u8;
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn with_affine(mut self, affine: AffineGap) -> Result<Self, AlignError> {
        if affine.extend >= 0 || affine.open > 0 {
            return Err(AlignError::InvalidScheme("affine gaps need open <= 0 and extend < 0".into()));
        }
        self.affine = Some(affine);
        Ok(self)
    }

    fn validate(&self) -> Result<(), AlignError> {
        if !(self.match_score >= self.similar && self.similar >= self.mismatch) {
            return Err(AlignError::InvalidScheme(format!(
                "need match >= similar >= mismatch, got {} / {} / {}",
                self.match_score, self.similar, self.mismatch
            )));
        }
        if self.gap >= 0 {
            return Err(AlignError::InvalidScheme(format!("gap penalty must be negative, got {}", self.gap)));
        }
        Ok(())
    }

    /// Every score multiplied by `factor`.
    pub fn scaled(&self, factor: i32) -> Result<Self, AlignError> {
        if factor <= 0 {
            return Err(AlignError::InvalidScheme("scale factor must be positive".into()));
        }
        let mut s = self.clone();
        s.match_score *= factor;
        s.similar *= factor;
        s.mismatch *= factor;
        s.gap *= factor;
        s.affine = s.affine.map(|a| AffineGap {
            open: a.open * factor,
            extend: a.extend * factor,
        });
        Ok(s)
    }

    pub fn match_score(&self) -> i32 {
        self.match_score
    }

    pub fn mismatch(&self) -> i32 {
        self.mismatch
    }

    pub fn similar_score(&self) -> i32 {
        self.similar
    }

    pub fn gap(&self) -> i32 {
        self.gap
    }

    pub fn affine(&self) -> Option<AffineGap> {
        self.affine
    }

    pub fn groups(&self) -> &[String] {
        &self.groups
    }

    /// Distinct residues in the same similarity group.
    pub fn is_similar(&self, a: u8, b: u8) -> bool {
        if a == b {
            return false;
        }
        let group = |x: u8| self.group_of.get(x as usize).copied().unwrap_or(0);
        let g = group(a);
        g != 0 && g == group(b)
    }

    #[inline]
    pub fn score(&self, a: u8, b: u8) -> i32 {
        if a == b {
            self.match_score
        } else if self.is_similar(a, b) {
            self.similar
        } else {
            self.mismatch
        }
    }

    /// Dense score lookup indexed by `[a][b]` over ASCII.
    pub(crate) fn table(&self) -> Vec<[i32; 128]> {
        (0..128u8)
            .map(|a| {
                let mut row = [self.mismatch; 128];
                for (b, slot) in row.iter_mut().enumerate() {
                    *slot = self.score(a, b as u8);
                }
                row
            })
            .collect()
    }
}
