//! Triring description files.
//!
//! ```json
//! { "name": "TE(4,2)",
//!   "even":   {"kind": "zmod", "n": 4},
//!   "odd":    {"kind": "zmod-sharp", "m": 2},
//!   "action": {"kind": "reduction"} }
//! ```
//!
//! Each part may instead be given by tables: `{"kind": "table", "add",
//! "mul", "one"}` for the even part, `{"kind": "table", "add", "sharp",
//! "localOne"}` for the odd part and `{"kind": "table", "left", "right"}`
//! for the actions, with `left[x0][α]` and `right[α][x0]`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::FiniteCommutativeRing;
use crate::triring::FiniteTriring;
use crate::validate::validate_triring;

type Table = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum EvenSpec {
    Zmod { n: usize },
    Table { add: Table, mul: Table, one: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OddSpec {
    ZmodSharp {
        m: usize,
    },
    Table {
        add: Table,
        sharp: Table,
        #[serde(rename = "localOne")]
        local_one: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionSpec {
    Reduction,
    Table { left: Table, right: Table },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriringFile {
    pub name: String,
    pub even: EvenSpec,
    pub odd: OddSpec,
    pub action: ActionSpec,
}

impl TriringFile {
    /// Table form of a triring.
    pub fn from_triring(r: &FiniteTriring) -> Self {
        let t = r.tables();
        TriringFile {
            name: t.name,
            even: EvenSpec::Table { add: t.even_add, mul: t.even_mul, one: t.one },
            odd: OddSpec::Table { add: t.odd_add, sharp: t.odd_sharp, local_one: t.local_one },
            action: ActionSpec::Table { left: t.left, right: t.right },
        }
    }

    /// Builds the tables without checking the axioms.
    pub fn build(&self) -> Result<FiniteTriring> {
        let even = match &self.even {
            EvenSpec::Zmod { n: 0 } => return Err(Error::Schema("zmod requires n >= 1".into())),
            EvenSpec::Zmod { n } => FiniteCommutativeRing::zmod(*n),
            EvenSpec::Table { add, mul, one } => {
                FiniteCommutativeRing::from_named_tables(add.clone(), mul.clone(), *one, "even.add", "even.mul", "one")?
            }
        };
        let odd = match &self.odd {
            OddSpec::ZmodSharp { m: 0 } => return Err(Error::Schema("zmod-sharp requires m >= 1".into())),
            OddSpec::ZmodSharp { m } => FiniteCommutativeRing::zmod(*m),
            OddSpec::Table { add, sharp, local_one } => FiniteCommutativeRing::from_named_tables(
                add.clone(),
                sharp.clone(),
                *local_one,
                "odd.add",
                "odd.sharp",
                "localOne",
            )?,
        };
        let (left, right) = match (&self.action, &self.even, &self.odd) {
            (ActionSpec::Table { left, right }, _, _) => (left.clone(), right.clone()),
            (ActionSpec::Reduction, EvenSpec::Zmod { n }, OddSpec::ZmodSharp { m }) => {
                if n % m != 0 {
                    return Err(Error::Schema(format!("reduction action needs m | n, got n = {n}, m = {m}")));
                }
                let t: Table = (0..*n).map(|x| (0..*m).map(|a| x * a % m).collect()).collect();
                let u: Table = (0..*m).map(|a| (0..*n).map(|x| x * a % m).collect()).collect();
                (t, u)
            }
            (ActionSpec::Reduction, _, _) => {
                return Err(Error::Schema("reduction action needs zmod and zmod-sharp parts".into()))
            }
        };
        FiniteTriring::new(self.name.clone(), even, odd, left, right)
    }
}

/// Parses a description; JSON errors carry line and column.
pub fn parse_triring_file(text: &str) -> Result<TriringFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Reads and builds a triring without checking the axioms.
pub fn read_triring(path: impl AsRef<Path>) -> Result<FiniteTriring> {
    parse_triring_file(&std::fs::read_to_string(path)?)?.build()
}

/// Reads, builds and validates a triring. An axiom failure is reported
/// with the first failing check and its witness.
pub fn load_triring(path: impl AsRef<Path>) -> Result<FiniteTriring> {
    let r = read_triring(path)?;
    let rep = validate_triring(&r);
    let failure = rep.failures().next().map(|c| Error::AxiomFailure { id: c.id.clone(), witness: c.witness.clone() });
    failure.map_or(Ok(r), Err)
}

pub fn to_json(r: &FiniteTriring) -> String {
    serde_json::to_string_pretty(&TriringFile::from_triring(r)).expect("tables serialize")
}

/// Writes the table form.
pub fn save_triring(r: &FiniteTriring, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(r) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_form_matches_builtin() {
        let text = r#"{"name":"TE(4,4)","even":{"kind":"zmod","n":4},"odd":{"kind":"zmod-sharp","m":4},"action":{"kind":"reduction"}}"#;
        let r = parse_triring_file(text).unwrap().build().unwrap();
        assert_eq!(r.tables(), FiniteTriring::te(4, 4).unwrap().tables());
        assert_eq!(r.size(), 16);
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse_triring_file("{\n  \"name\": \"x\",\n  \"even\": 3\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_triring_file("{\"name\": \"x\",").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn reduction_needs_divisibility() {
        let text = r#"{"name":"x","even":{"kind":"zmod","n":4},"odd":{"kind":"zmod-sharp","m":3},"action":{"kind":"reduction"}}"#;
        assert!(matches!(parse_triring_file(text).unwrap().build(), Err(Error::Schema(_))));
    }
}
