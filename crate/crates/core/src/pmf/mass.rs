use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{data_lines, PmfError};
use crate::seq::{Alphabet, Sequence};

const MONOISOTOPIC: &str = include_str!("../../data/monoisotopic.tsv");

/// Carbamidomethylation of cysteine, in Da.
pub const CARBAMIDOMETHYL: f64 = 57.02146;

/// Residue masses plus water and fixed modifications, all in Da.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassTable {
    residues: BTreeMap<char, f64>,
    water: f64,
    modifications: BTreeMap<char, f64>,
}

impl MassTable {
    /// Parse `residue<TAB>mass` lines plus one `H2O<TAB>mass` line.
    pub fn parse(text: &str) -> Result<Self, PmfError> {
        let mut residues = BTreeMap::new();
        let mut water = None;
        for (line, content) in data_lines(text) {
            let err = |reason: &str| PmfError::Parse { line, reason: reason.into() };
            let mut parts = content.split_whitespace();
            let key = parts.next().ok_or_else(|| err("missing residue"))?;
            let mass: f64 = parts
                .next()
                .ok_or_else(|| err("missing mass"))?
                .parse()
                .map_err(|_| err("mass is not a number"))?;
            if !(mass.is_finite() && mass > 0.0) {
                return Err(err("mass must be positive"));
            }
            if key.eq_ignore_ascii_case("H2O") {
                water = Some(mass);
                continue;
            }
            let mut chars = key.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => residues.insert(c.to_ascii_uppercase(), mass),
                _ => return Err(err("residue must be a single letter")),
            };
        }
        for &r in Alphabet::Protein.symbols() {
            if !residues.contains_key(&(r as char)) {
                return Err(PmfError::UnknownResidue(r as char));
            }
        }
        let water = water.ok_or(PmfError::Parse { line: 0, reason: "no H2O line".into() })?;
        Ok(MassTable {
            residues,
            water,
            modifications: BTreeMap::new(),
        })
    }

    /// Bundled monoisotopic masses with carbamidomethyl-C.
    pub fn monoisotopic() -> Self {
        MassTable::parse(MONOISOTOPIC)
            .expect("bundled mass table is valid")
            .with_modification('C', CARBAMIDOMETHYL)
    }

    pub fn with_modification(mut self, residue: char, delta: f64) -> Self {
        self.modifications.insert(residue.to_ascii_uppercase(), delta);
        self
    }

    pub fn without_modifications(mut self) -> Self {
        self.modifications.clear();
        self
    }

    pub fn water(&self) -> f64 {
        self.water
    }

    pub fn modifications(&self) -> &BTreeMap<char, f64> {
        &self.modifications
    }

    /// Residue mass including any fixed modification.
    pub fn residue(&self, r: u8) -> Option<f64> {
        let c = (r as char).to_ascii_uppercase();
        self.residues.get(&c).map(|m| m + self.modifications.get(&c).copied().unwrap_or(0.0))
    }

    pub(crate) fn mass_of(&self, residues: &[u8]) -> Result<f64, PmfError> {
        if residues.is_empty() {
            return Err(PmfError::Empty);
        }
        let mut total = self.water;
        for &r in residues {
            total += self.residue(r).ok_or(PmfError::UnknownResidue(r as char))?;
        }
        Ok(total)
    }
}

impl Default for MassTable {
    fn default() -> Self {
        MassTable::monoisotopic()
    }
}

/// Sum of residue masses plus one water.
pub fn peptide_mass(p: &Sequence, table: &MassTable) -> Result<f64, PmfError> {
    p.require(Alphabet::Protein)?;
    table.mass_of(p.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn protein(s: &str) -> Sequence {
        Sequence::parse(s, Alphabet::Protein).unwrap()
    }

    #[test]
    fn glycine() {
        let t = MassTable::monoisotopic();
        let m = peptide_mass(&protein("G"), &t).unwrap();
        assert!((m - (57.02146 + 18.01056)).abs() < 1e-4);
    }

    #[test]
    fn cysteine_modification_toggles() {
        let t = MassTable::monoisotopic();
        let on = peptide_mass(&protein("C"), &t).unwrap();
        let off = peptide_mass(&protein("C"), &t.clone().without_modifications()).unwrap();
        assert!((on - off - CARBAMIDOMETHYL).abs() < 1e-9);
    }

    #[test]
    fn empty_and_unknown() {
        let t = MassTable::monoisotopic();
        assert_eq!(t.mass_of(b""), Err(PmfError::Empty));
        assert_eq!(t.mass_of(b"AX"), Err(PmfError::UnknownResidue('X')));
    }

    #[test]
    fn table_validation() {
        assert!(MassTable::parse("A\t71.0\nH2O\t18.0\n").is_err());
        assert!(MassTable::parse("A\t-1\n").is_err());
    }

    proptest! {
        #[test]
        fn additivity(x in "[ACDEFGHIKLMNPQRSTVWY]{1,30}", y in "[ACDEFGHIKLMNPQRSTVWY]{1,30}") {
            let t = MassTable::monoisotopic();
            let joined = peptide_mass(&protein(&format!("{x}{y}")), &t).unwrap();
            let parts = peptide_mass(&protein(&x), &t).unwrap() + peptide_mass(&protein(&y), &t).unwrap() - t.water();
            prop_assert!((joined - parts).abs() < 1e-6);
        }
    }
}
