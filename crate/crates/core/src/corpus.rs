//! Builtin example trirings with golden structural facts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_triideals, Triideal};
use crate::radical::trinilradical;
use crate::rational::RationalTriring;
use crate::ring::IndexSet;
use crate::spectrum::trispectrum;
use crate::triring::FiniteTriring;
use crate::validate::{validate_triring, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Constructor {
    /// Trivial extension of `Z/n` by `Z/m`.
    Te { n: usize, m: usize },
    /// Triquaternions over `F_p`.
    TqModp { p: usize },
    /// Triquaternions over `Q`.
    TqRational,
}

impl Constructor {
    pub fn name(&self) -> String {
        match self {
            Constructor::Te { n, m } => format!("TE({n},{m})"),
            Constructor::TqModp { p } => format!("TQ-modp({p})"),
            Constructor::TqRational => "TQ-rational".into(),
        }
    }

    pub fn build(&self) -> Result<Backend> {
        Ok(match *self {
            Constructor::Te { n, m } => Backend::Finite(FiniteTriring::te(n, m)?),
            Constructor::TqModp { p } => Backend::Finite(FiniteTriring::tq_modp(p)?),
            Constructor::TqRational => Backend::Rational(RationalTriring::triquaternions()),
        })
    }
}

/// Parses `TE(n,m)`, `TQ-modp(p)` or `TQ-rational`; spaces are ignored.
pub fn parse_builtin_name(name: &str) -> Result<Constructor> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let args = |prefix: &str| -> Option<Vec<&str>> {
        compact.strip_prefix(prefix)?.strip_suffix(')').map(|inner| inner.split(',').collect())
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidBuiltin(format!("`{s}` in `{name}` is not a natural number")));
    if compact.eq_ignore_ascii_case("TQ-rational") {
        return Ok(Constructor::TqRational);
    }
    if let Some(a) = args("TE(") {
        if let [n, m] = a[..] {
            return Ok(Constructor::Te { n: num(n)?, m: num(m)? });
        }
        return Err(Error::InvalidBuiltin(format!("`{name}` needs two parameters")));
    }
    if let Some(a) = args("TQ-modp(") {
        if let [p] = a[..] {
            return Ok(Constructor::TqModp { p: num(p)? });
        }
        return Err(Error::InvalidBuiltin(format!("`{name}` needs one parameter")));
    }
    Err(Error::UnknownBuiltin(name.to_string()))
}

/// A triring from either backend.
#[derive(Clone, Debug)]
pub enum Backend {
    Finite(FiniteTriring),
    Rational(RationalTriring),
}

impl Backend {
    pub fn name(&self) -> &str {
        match self {
            Backend::Finite(r) => r.name(),
            Backend::Rational(r) => &r.name,
        }
    }

    /// The finite triring, or `RequiresFiniteBackend`.
    pub fn finite(&self) -> Result<&FiniteTriring> {
        match self {
            Backend::Finite(r) => Ok(r),
            Backend::Rational(_) => Err(Error::RequiresFiniteBackend),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Backend::Finite(r) => validate_triring(r),
            Backend::Rational(r) => r.validate(),
        }
    }
}

pub fn builtin(name: &str) -> Result<Backend> {
    parse_builtin_name(name)?.build()
}

/// Structural facts every build of an entry must reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpectedFacts {
    pub triideals: usize,
    pub even_points: usize,
    pub odd_points: usize,
    pub trinilradical: Triideal,
    /// How the values were obtained.
    pub provenance: &'static str,
}

impl ExpectedFacts {
    pub fn points(&self) -> usize {
        self.even_points + self.odd_points
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusEntry {
    pub name: String,
    pub constructor: Constructor,
    /// `None` for the rational backend, whose spectrum is not computed.
    pub expected: Option<ExpectedFacts>,
}

/// Observed facts for a finite triring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObservedFacts {
    pub triideals: usize,
    pub even_points: usize,
    pub odd_points: usize,
    pub trinilradical: Triideal,
}

pub fn observe(r: &FiniteTriring) -> ObservedFacts {
    let spec = trispectrum(r);
    ObservedFacts {
        triideals: enumerate_triideals(r).len(),
        even_points: spec.even_points.len(),
        odd_points: spec.odd_points.len(),
        trinilradical: trinilradical(r),
    }
}

impl CorpusEntry {
    pub fn build(&self) -> Result<Backend> {
        self.constructor.build()
    }

    /// Differences between expected and observed facts.
    pub fn drift(&self, r: &FiniteTriring) -> Vec<String> {
        let Some(e) = &self.expected else { return Vec::new() };
        let o = observe(r);
        let mut out = Vec::new();
        let mut cmp = |what: &str, a: String, b: String| {
            if a != b {
                out.push(format!("{}: {what} expected {a}, found {b}", self.name));
            }
        };
        cmp("triideals", e.triideals.to_string(), o.triideals.to_string());
        cmp("even points", e.even_points.to_string(), o.even_points.to_string());
        cmp("odd points", e.odd_points.to_string(), o.odd_points.to_string());
        cmp("trinilradical", e.trinilradical.to_string(), o.trinilradical.to_string());
        out
    }
}

const ENUMERATED: &str = "exhaustive enumeration of triideals and primality over the tables";

fn te(n: usize, m: usize, triideals: usize, points: (usize, usize), nil: (&[usize], &[usize])) -> CorpusEntry {
    let c = Constructor::Te { n, m };
    CorpusEntry {
        name: c.name(),
        constructor: c,
        expected: Some(ExpectedFacts {
            triideals,
            even_points: points.0,
            odd_points: points.1,
            trinilradical: Triideal::new(IndexSet::new(nil.0.to_vec()), IndexSet::new(nil.1.to_vec())),
            provenance: ENUMERATED,
        }),
    }
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let tq = Constructor::TqModp { p: 3 };
    vec![
        te(2, 2, 3, (1, 1), (&[0], &[0])),
        te(4, 4, 6, (1, 1), (&[0, 2], &[0, 2])),
        te(4, 2, 5, (1, 1), (&[0, 2], &[0])),
        te(6, 3, 6, (2, 1), (&[0], &[0])),
        te(8, 4, 9, (1, 1), (&[0, 2, 4, 6], &[0, 2])),
        CorpusEntry {
            name: tq.name(),
            constructor: tq,
            expected: Some(ExpectedFacts {
                triideals: 3,
                even_points: 1,
                odd_points: 1,
                trinilradical: Triideal::zero(),
                provenance: ENUMERATED,
            }),
        },
        CorpusEntry { name: "TQ-rational".into(), constructor: Constructor::TqRational, expected: None },
        te(4, 1, 3, (1, 0), (&[0, 2], &[0])),
        te(6, 1, 4, (2, 0), (&[0], &[0])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(parse_builtin_name("TE(4, 4)").unwrap(), Constructor::Te { n: 4, m: 4 });
        assert_eq!(parse_builtin_name("TQ-modp(3)").unwrap(), Constructor::TqModp { p: 3 });
        assert_eq!(parse_builtin_name("TQ-rational").unwrap(), Constructor::TqRational);
        assert!(matches!(parse_builtin_name("TE(4)"), Err(Error::InvalidBuiltin(_))));
        assert!(matches!(parse_builtin_name("Z/4"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("TE(4,3)"), Err(Error::InvalidBuiltin(_))));
    }

    #[test]
    fn rational_entry_rejects_spectrum_operations() {
        let b = builtin("TQ-rational").unwrap();
        assert!(matches!(b.finite(), Err(Error::RequiresFiniteBackend)));
        assert!(b.validate().passed());
    }
}
