//! Golden B2 data, top-class files, and presentation dictionaries.
//!
//! Fixture polynomials are written in presentation coordinates (for B2,
//! `x1 = 2λ1 − λ2`, `x2 = λ2`) and converted to λ-coordinates on load, so
//! every comparison happens in the engine's own basis.

use serde::Deserialize;

use crate::algebra::{parse_polynomial, parse_scalar, Environment, LinearForm, LinearMap, Polynomial, Scalar, TermJson};
use crate::error::{Error, Result};

/// The bundled B2 fixture.
pub const B2_FIXTURE: &str = include_str!("../../../fixtures/b2.json");

/// The bundled B2 top-class file.
pub const B2_TOP: &str = include_str!("../../../fixtures/b2_top.json");

/// Named linear coordinates, e.g. `x1 = 2*l1 - l2`.
#[derive(Clone, Debug)]
pub struct Dictionary {
    names: Vec<String>,
    map: LinearMap,
    env: Environment,
}

impl Dictionary {
    /// Builds a dictionary from `name = λ-expression` pairs. There must be
    /// one entry per fundamental weight and the change of coordinates must
    /// be invertible.
    pub fn new(rank: usize, entries: &[(String, String)]) -> Result<Self> {
        if entries.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: entries.len(),
            });
        }
        let base = Environment::new(rank);
        let forms = entries
            .iter()
            .map(|(_, expr)| LinearForm::from_polynomial(&parse_polynomial(expr, &base)?))
            .collect::<Result<Vec<_>>>()?;
        let map = LinearMap::new(forms)?;
        map.inverse()?;
        let env = base.with_dictionary(entries.iter().map(|(n, e)| (n.as_str(), e.as_str())))?;
        Ok(Dictionary {
            names: entries.iter().map(|(n, _)| n.clone()).collect(),
            map,
            env,
        })
    }

    /// Parses `name=expr,name=expr`.
    pub fn parse_assignments(rank: usize, text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|part| {
                let (name, expr) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected name=expression, got `{part}`")))?;
                Ok((name.trim().to_string(), expr.trim().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, &entries)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The new coordinates as linear forms in `λ`.
    pub fn forms(&self) -> &[LinearForm] {
        self.map.forms()
    }

    /// Parser environment with both `λ` names and the dictionary names bound.
    pub fn environment(&self) -> &Environment {
        &self.env
    }

    pub fn parse(&self, expr: &str) -> Result<Polynomial> {
        parse_polynomial(expr, &self.env)
    }

    /// Renders a λ-polynomial in the dictionary coordinates.
    pub fn render(&self, f: &Polynomial) -> Result<String> {
        let rewritten = self.map.rewrite(f)?;
        let (_, q) = Polynomial::default_names(f.rank());
        Ok(rewritten.display_with(&self.names, &q))
    }
}

/// Reads a top-class file. Two shapes are accepted:
/// `{"expression": "...", "dictionary": [[name, expr], ...]}` with the
/// dictionary optional, and `{"rank": l, "polynomial": [terms]}`.
pub fn parse_top_class(text: &str, rank: usize) -> Result<Polynomial> {
    #[derive(Deserialize)]
    struct TopFile {
        expression: Option<String>,
        #[serde(default)]
        dictionary: Vec<(String, String)>,
        rank: Option<usize>,
        polynomial: Option<Vec<TermJson>>,
    }
    let file: TopFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidTopClass(format!("bad top-class file: {e}")))?;
    match (file.expression, file.polynomial) {
        (Some(expr), None) => {
            if file.dictionary.is_empty() {
                parse_polynomial(&expr, &Environment::new(rank))
            } else {
                Dictionary::new(rank, &file.dictionary)?.parse(&expr)
            }
        }
        (None, Some(terms)) => {
            if let Some(r) = file.rank.filter(|&r| r != rank) {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: r,
                });
            }
            Polynomial::from_json_terms(rank, &terms)
        }
        _ => Err(Error::InvalidTopClass(
            "top-class file needs exactly one of `expression` or `polynomial`".into(),
        )),
    }
}

#[derive(Deserialize)]
struct FixtureFile {
    #[serde(rename = "type")]
    type_label: String,
    dictionary: Vec<(String, String)>,
    invariants: Vec<String>,
    top: String,
    classical: Vec<WordPoly>,
    quantum_corrections: Vec<WordPoly>,
    operators: Vec<OperatorFile>,
    tilde_roots: Vec<Vec<i64>>,
    psi_top: String,
    a1: String,
    a2: String,
    relations: Vec<RelationFile>,
}

#[derive(Deserialize)]
struct WordPoly {
    word: String,
    poly: String,
}

#[derive(Deserialize)]
struct OperatorFile {
    variable: String,
    terms: Vec<OperatorTermFile>,
}

#[derive(Deserialize)]
struct OperatorTermFile {
    coeff: String,
    q: Vec<u32>,
    word: String,
}

#[derive(Deserialize)]
struct RelationFile {
    relation: String,
    free_term: String,
}

/// One quantum term `coeff · q^exponents · Δ_word` of a coordinate operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: Scalar,
    pub q: Vec<u32>,
    pub word: String,
}

/// A coordinate operator: the variable's name, its λ-form, and its quantum
/// terms.
#[derive(Clone, Debug)]
pub struct OperatorRow {
    pub variable: String,
    pub form: LinearForm,
    pub terms: Vec<OperatorTerm>,
}

/// A candidate quantum relation and its expected classical part.
#[derive(Clone, Debug)]
pub struct RelationRow {
    pub relation: Polynomial,
    pub free_term: Polynomial,
}

/// Golden data for one group, converted to λ-coordinates.
#[derive(Clone, Debug)]
pub struct GoldenFixture {
    pub type_label: String,
    pub dictionary: Dictionary,
    pub invariants: Vec<Polynomial>,
    pub top: Polynomial,
    /// `(word, c_w)`.
    pub classical: Vec<(String, Polynomial)>,
    /// `(word, ĉ_w − c_w)`.
    pub quantum_corrections: Vec<(String, Polynomial)>,
    pub operators: Vec<OperatorRow>,
    /// Simple-root coordinates of the roots expected in `Φ̃⁺`.
    pub tilde_roots: Vec<Vec<i64>>,
    pub psi_top: Polynomial,
    pub a1: Polynomial,
    pub a2: Polynomial,
    pub relations: Vec<RelationRow>,
}

impl GoldenFixture {
    pub fn b2() -> Result<Self> {
        Self::parse(B2_FIXTURE, 2)
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let file: FixtureFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad fixture: {e}")))?;
        let dictionary = Dictionary::new(rank, &file.dictionary)?;
        let p = |s: &str| dictionary.parse(s);
        let rows = |rows: &[WordPoly]| -> Result<Vec<(String, Polynomial)>> {
            rows.iter().map(|r| Ok((r.word.clone(), p(&r.poly)?))).collect()
        };
        let operators = file
            .operators
            .iter()
            .map(|op| {
                let form = LinearForm::from_polynomial(&p(&op.variable)?)?;
                let terms = op
                    .terms
                    .iter()
                    .map(|t| {
                        Ok(OperatorTerm {
                            coeff: parse_scalar(&t.coeff)?,
                            q: t.q.clone(),
                            word: t.word.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(OperatorRow {
                    variable: op.variable.clone(),
                    form,
                    terms,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let relations = file
            .relations
            .iter()
            .map(|r| {
                Ok(RelationRow {
                    relation: p(&r.relation)?,
                    free_term: p(&r.free_term)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GoldenFixture {
            type_label: file.type_label,
            invariants: file.invariants.iter().map(|s| p(s)).collect::<Result<_>>()?,
            top: p(&file.top)?,
            classical: rows(&file.classical)?,
            quantum_corrections: rows(&file.quantum_corrections)?,
            operators,
            tilde_roots: file.tilde_roots,
            psi_top: p(&file.psi_top)?,
            a1: p(&file.a1)?,
            a2: p(&file.a2)?,
            relations,
            dictionary,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_fixture_loads_in_lambda_coordinates() {
        let fx = GoldenFixture::b2().unwrap();
        assert_eq!(fx.type_label, "B2");
        assert_eq!(fx.classical.len(), 7);
        assert_eq!(fx.quantum_corrections.len(), 7);
        // c_{s1} = (x1 + x2)/2 = λ1.
        assert_eq!(fx.classical[6].1, Polynomial::lambda(2, 0));
        assert_eq!(fx.operators[0].form, LinearForm::from_integers(&[2, -1]));
        assert_eq!(fx.relations.len(), 2);
    }

    #[test]
    fn top_class_file_shapes() {
        let from_expr = parse_top_class(B2_TOP, 2).unwrap();
        assert_eq!(from_expr, GoldenFixture::b2().unwrap().top);
        let terms = serde_json::to_string(&from_expr.to_json_terms()).unwrap();
        let from_terms = parse_top_class(&format!(r#"{{"rank": 2, "polynomial": {terms}}}"#), 2).unwrap();
        assert_eq!(from_terms, from_expr);
        assert!(parse_top_class(r#"{"expression": "l1^2"}"#, 2).is_ok());
        assert!(parse_top_class(r#"{"rank": 3, "polynomial": []}"#, 2).is_err());
        assert!(parse_top_class(r#"{}"#, 2).is_err());
        assert!(parse_top_class("not json", 2).is_err());
    }

    #[test]
    fn dictionary_rendering() {
        let d = Dictionary::parse_assignments(2, "x1=2*l1-l2, x2=l2").unwrap();
        let f = d.parse("(x1 + x2)^2/4 - q1").unwrap();
        assert_eq!(d.render(&f).unwrap(), "1/4*x1^2 + 1/2*x1*x2 + 1/4*x2^2 - q1");
        assert!(Dictionary::parse_assignments(2, "x1=l1, x2=l1").is_err());
        assert!(Dictionary::parse_assignments(2, "x1=l1").is_err());
        assert!(Dictionary::parse_assignments(2, "x1=l1^2, x2=l2").is_err());
    }
}
