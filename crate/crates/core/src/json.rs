//! The on-disk algebra format, shared by color algebras and superalgebras:
//!
//! ```json
//! {"name": "osp(1|2)", "grading_bits": 1, "pairing": "dot",
//!  "basis": [{"label": "h", "grade": "0"}, ...],
//!  "brackets": [{"left": "h", "right": "e", "terms": [{"target": "e", "coeff": "2/1"}]}]}
//! ```
//!
//! Absent bracket entries are zero. Loading checks structure only; grading
//! closure and the bracket axioms are the auditors' job.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{BasisElement, ColorAlgebra, Element};
use crate::error::{Error, Result};
use crate::grading::{GradeVec, PairingKind};
use crate::scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub grading_bits: usize,
    pub pairing: PairingKind,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub grade: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<TermEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub target: String,
    pub coeff: String,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &ColorAlgebra) -> Self {
        let basis = alg
            .basis()
            .iter()
            .map(|b| BasisEntry {
                label: b.label.clone(),
                grade: b.grade.to_bit_string(),
            })
            .collect();
        let brackets = alg
            .nonzero_entries()
            .map(|((i, j), e)| BracketEntry {
                left: alg.label(i).to_string(),
                right: alg.label(j).to_string(),
                terms: e
                    .iter()
                    .map(|(k, c)| TermEntry {
                        target: alg.label(k).to_string(),
                        coeff: scalar::format(c),
                    })
                    .collect(),
            })
            .collect();
        Self {
            name: alg.name().to_string(),
            grading_bits: alg.grading_bits(),
            pairing: alg.pairing(),
            basis,
            brackets,
        }
    }

    /// Structural conversion; does not enforce grading closure.
    pub fn to_algebra(&self) -> Result<ColorAlgebra> {
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let grade: GradeVec = b.grade.parse()?;
                if grade.len() != self.grading_bits {
                    return Err(Error::Parse(format!(
                        "grade `{}` of `{}` has {} components, expected {}",
                        b.grade,
                        b.label,
                        grade.len(),
                        self.grading_bits
                    )));
                }
                Ok(BasisElement::new(b.label.clone(), grade))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut alg = ColorAlgebra::from_parts(
            self.name.clone(),
            self.grading_bits,
            self.pairing,
            basis,
            std::iter::empty(),
        )?;
        let mut seen = HashSet::new();
        for br in &self.brackets {
            let i = alg.index_of(&br.left)?;
            let j = alg.index_of(&br.right)?;
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!(
                    "duplicate bracket entry [{}, {}]",
                    br.left, br.right
                )));
            }
            let mut e = Element::zero();
            for t in &br.terms {
                e.add_term(alg.index_of(&t.target)?, scalar::parse(&t.coeff)?);
            }
            alg.set_entry(i, j, e)?;
        }
        Ok(alg)
    }
}

pub fn to_string(alg: &ColorAlgebra) -> Result<String> {
    Ok(serde_json::to_string_pretty(&AlgebraFile::from_algebra(
        alg,
    ))?)
}

pub fn from_str(s: &str) -> Result<ColorAlgebra> {
    let file: AlgebraFile = serde_json::from_str(s)?;
    file.to_algebra()
}

pub fn read_algebra(path: impl AsRef<Path>) -> Result<ColorAlgebra> {
    from_str(&fs::read_to_string(path)?)
}

pub fn write_algebra(path: impl AsRef<Path>, alg: &ColorAlgebra) -> Result<()> {
    let mut text = to_string(alg)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::clifford_as_color_algebra;
    use crate::clifford::Signature;

    #[test]
    fn clifford_round_trip() {
        let alg =
            clifford_as_color_algebra(Signature::new(1, 1).unwrap(), PairingKind::Dot).unwrap();
        let text = to_string(&alg).unwrap();
        let back = from_str(&text).unwrap();
        assert_eq!(
            AlgebraFile::from_algebra(&back),
            AlgebraFile::from_algebra(&alg)
        );
        assert!(text.contains("\"pairing\": \"dot\""));
        assert!(text.contains("\"coeff\": \"-2/1\""));
    }

    #[test]
    fn schema_errors() {
        let ok = r#"{"name":"t","grading_bits":1,"pairing":"dot",
            "basis":[{"label":"q","grade":"1"},{"label":"z","grade":"0"}],
            "brackets":[{"left":"q","right":"q","terms":[{"target":"z","coeff":"2"}]}]}"#;
        let alg = from_str(ok).unwrap();
        assert_eq!(alg.format_element(alg.entry(0, 0)), "2*z");

        let unknown_field = ok.replace("\"pairing\"", "\"colour\":1,\"pairing\"");
        assert!(matches!(from_str(&unknown_field), Err(Error::Json(_))));
        let bad_label = ok.replace("\"target\":\"z\"", "\"target\":\"w\"");
        assert!(matches!(from_str(&bad_label), Err(Error::UnknownLabel(_))));
        let bad_grade = ok.replace("\"grade\":\"1\"", "\"grade\":\"10\"");
        assert!(matches!(from_str(&bad_grade), Err(Error::Parse(_))));
        let bad_coeff = ok.replace("\"2\"", "\"two\"");
        assert!(matches!(from_str(&bad_coeff), Err(Error::Parse(_))));
        let bad_pairing = ok.replace("\"dot\"", "\"cross\"");
        assert!(matches!(from_str(&bad_pairing), Err(Error::Json(_))));
        let dup = ok.replace(
            "\"brackets\":[",
            "\"brackets\":[{\"left\":\"q\",\"right\":\"q\",\"terms\":[]},",
        );
        assert!(matches!(from_str(&dup), Err(Error::Parse(_))));
    }
}
