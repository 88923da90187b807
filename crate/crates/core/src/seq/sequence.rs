use std::fmt;

use serde::{Deserialize, Serialize};

use super::SeqError;

/// Residue alphabet of a [`Sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Dna,
    Rna,
    Protein,
}

const DNA: &[u8] = b"ACGT";
const RNA: &[u8] = b"ACGU";
const PROTEIN: &[u8] = b"ACDEFGHIKLMNPQRSTVWY";

/// Symbol that lenient nucleotide validation substitutes for IUPAC ambiguity codes.
pub const NUCLEOTIDE_AMBIGUOUS: u8 = b'N';
/// Symbol that lenient protein validation substitutes for ambiguous residues.
pub const PROTEIN_AMBIGUOUS: u8 = b'X';
/// Stop marker produced by run-through translation.
pub const STOP: u8 = b'*';

impl Alphabet {
    /// The canonical symbols, in sorted order.
    pub fn symbols(self) -> &'static [u8] {
        match self {
            Alphabet::Dna => DNA,
            Alphabet::Rna => RNA,
            Alphabet::Protein => PROTEIN,
        }
    }

    pub fn contains(self, symbol: u8) -> bool {
        self.symbols().contains(&symbol)
    }

    pub fn is_nucleic(self) -> bool {
        matches!(self, Alphabet::Dna | Alphabet::Rna)
    }

    /// The symbol lenient validation maps ambiguity codes onto.
    pub fn ambiguous_symbol(self) -> u8 {
        match self {
            Alphabet::Dna | Alphabet::Rna => NUCLEOTIDE_AMBIGUOUS,
            Alphabet::Protein => PROTEIN_AMBIGUOUS,
        }
    }

    fn is_ambiguity_code(self, symbol: u8) -> bool {
        match self {
            Alphabet::Dna | Alphabet::Rna => b"NRYSWKMBDHV".contains(&symbol),
            Alphabet::Protein => b"XBZJUO".contains(&symbol),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Dna => "dna",
            Alphabet::Rna => "rna",
            Alphabet::Protein => "protein",
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Alphabet {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dna" => Ok(Alphabet::Dna),
            "rna" => Ok(Alphabet::Rna),
            "protein" | "aa" => Ok(Alphabet::Protein),
            other => Err(SeqError::UnknownAlphabet(other.to_string())),
        }
    }
}

/// How raw text is turned into residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validation {
    /// Drop whitespace before checking residues.
    pub strip_whitespace: bool,
    /// Map IUPAC ambiguity codes onto the alphabet's ambiguous symbol instead of rejecting them.
    pub lenient: bool,
    /// Accept the `*` stop marker in protein sequences.
    pub allow_stop: bool,
}

impl Default for Validation {
    fn default() -> Self {
        Validation {
            strip_whitespace: true,
            lenient: false,
            allow_stop: false,
        }
    }
}

impl Validation {
    /// No whitespace stripping, no ambiguity codes.
    pub fn strict() -> Self {
        Validation {
            strip_whitespace: false,
            lenient: false,
            allow_stop: false,
        }
    }

    pub fn lenient() -> Self {
        Validation {
            lenient: true,
            ..Validation::default()
        }
    }
}

/// A validated, uppercase residue string with an identifier.
///
/// Residues are stored as ASCII bytes. Every residue is a member of the
/// alphabet, except for the ambiguity symbol (`N` or `X`) admitted by lenient
/// validation and the `*` stop marker admitted in translated proteins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    id: String,
    description: String,
    alphabet: Alphabet,
    residues: String,
}

pub(crate) const DEFAULT_ID: &str = "seq";

fn check_id(id: &str) -> Result<(), SeqError> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(SeqError::InvalidId(id.to_string()));
    }
    Ok(())
}

impl Sequence {
    /// Validate `raw` against `alphabet` with default rules (whitespace stripped, strict symbols).
    pub fn parse(raw: &str, alphabet: Alphabet) -> Result<Self, SeqError> {
        Self::parse_with(raw, alphabet, Validation::default())
    }

    pub fn parse_with(raw: &str, alphabet: Alphabet, rules: Validation) -> Result<Self, SeqError> {
        let mut residues = String::with_capacity(raw.len());
        for (position, ch) in raw.chars().enumerate() {
            if rules.strip_whitespace && ch.is_whitespace() {
                continue;
            }
            let upper = ch.to_ascii_uppercase();
            if !upper.is_ascii() {
                return Err(SeqError::InvalidResidue { position, residue: ch });
            }
            let byte = upper as u8;
            let accepted = if alphabet.contains(byte) {
                Some(byte)
            } else if rules.lenient && alphabet.is_ambiguity_code(byte) {
                Some(alphabet.ambiguous_symbol())
            } else if rules.allow_stop && alphabet == Alphabet::Protein && byte == STOP {
                Some(STOP)
            } else {
                None
            };
            match accepted {
                Some(b) => residues.push(b as char),
                None => return Err(SeqError::InvalidResidue { position, residue: ch }),
            }
        }
        if residues.is_empty() {
            return Err(SeqError::EmptySequence);
        }
        Ok(Sequence {
            id: DEFAULT_ID.to_string(),
            description: String::new(),
            alphabet,
            residues,
        })
    }

    /// Build a named sequence; `id` must be a non-empty token without whitespace.
    pub fn new(id: &str, description: &str, alphabet: Alphabet, raw: &str) -> Result<Self, SeqError> {
        Self::parse(raw, alphabet)?.with_id(id)?.with_description(description)
    }

    /// Residues already known to be valid uppercase symbols of `alphabet`.
    pub(crate) fn from_valid(id: &str, alphabet: Alphabet, residues: String) -> Self {
        debug_assert!(!residues.is_empty());
        Sequence {
            id: id.to_string(),
            description: String::new(),
            alphabet,
            residues,
        }
    }

    pub fn with_id(mut self, id: &str) -> Result<Self, SeqError> {
        check_id(id)?;
        self.id = id.to_string();
        Ok(self)
    }

    pub fn with_description(mut self, description: &str) -> Result<Self, SeqError> {
        self.description = description.trim().to_string();
        Ok(self)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn residues(&self) -> &str {
        &self.residues
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.residues.as_bytes()
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Number of ambiguity symbols admitted by lenient validation.
    pub fn ambiguous_count(&self) -> usize {
        let amb = self.alphabet.ambiguous_symbol();
        self.as_bytes().iter().filter(|&&b| b == amb).count()
    }

    /// `WrongAlphabet` unless this sequence uses `alphabet`.
    pub fn require(&self, alphabet: Alphabet) -> Result<(), SeqError> {
        if self.alphabet != alphabet {
            return Err(SeqError::WrongAlphabet {
                expected: alphabet,
                found: self.alphabet,
            });
        }
        Ok(())
    }

    /// A copy with different residues but the same id, description and alphabet.
    pub(crate) fn derive(&self, alphabet: Alphabet, residues: String) -> Sequence {
        Sequence {
            id: self.id.clone(),
            description: self.description.clone(),
            alphabet,
            residues,
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.residues)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_sizes() {
        assert_eq!(Alphabet::Dna.symbols().len(), 4);
        assert_eq!(Alphabet::Rna.symbols().len(), 4);
        assert_eq!(Alphabet::Protein.symbols().len(), 20);
    }

    #[test]
    fn normalizes_case() {
        let s = Sequence::parse("acgt", Alphabet::Dna).unwrap();
        assert_eq!(s.residues(), "ACGT");
    }

    #[test]
    fn rejects_wrong_alphabet() {
        let err = Sequence::parse("ACGU", Alphabet::Dna).unwrap_err();
        assert_eq!(err, SeqError::InvalidResidue { position: 3, residue: 'U' });
    }

    #[test]
    fn strict_mode_rejects_whitespace() {
        let err = Sequence::parse_with("FSL VGDK", Alphabet::Protein, Validation::strict()).unwrap_err();
        assert_eq!(err, SeqError::InvalidResidue { position: 3, residue: ' ' });
        let ok = Sequence::parse("FSL VGDK", Alphabet::Protein).unwrap();
        assert_eq!(ok.residues(), "FSLVGDK");
        let err = Sequence::parse_with("FSLVGDK?", Alphabet::Protein, Validation::strict()).unwrap_err();
        assert_eq!(err, SeqError::InvalidResidue { position: 7, residue: '?' });
    }

    #[test]
    fn empty_input() {
        assert_eq!(Sequence::parse("  \n", Alphabet::Dna), Err(SeqError::EmptySequence));
    }

    #[test]
    fn lenient_maps_ambiguity() {
        assert!(Sequence::parse("ACNT", Alphabet::Dna).is_err());
        let s = Sequence::parse_with("ACRYT", Alphabet::Dna, Validation::lenient()).unwrap();
        assert_eq!(s.residues(), "ACNNT");
        assert_eq!(s.ambiguous_count(), 2);
        let p = Sequence::parse_with("MKBZ", Alphabet::Protein, Validation::lenient()).unwrap();
        assert_eq!(p.residues(), "MKXX");
    }

    #[test]
    fn ids_are_tokens() {
        assert!(Sequence::new("a b", "", Alphabet::Dna, "A").is_err());
        assert!(Sequence::new("", "", Alphabet::Dna, "A").is_err());
        let s = Sequence::new("x1", " some text ", Alphabet::Dna, "a").unwrap();
        assert_eq!((s.id(), s.description()), ("x1", "some text"));
    }
}
