//! JSON documents for algebras, homomorphisms and subspaces.
//!
//! Rationals travel as strings matching `-?digits(/digits)?`. Emitted
//! documents are canonical: keys sorted, every rational written as `p/q` in
//! lowest terms, and the carrier given by its echelon basis (omitted for the
//! full space).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error as ThisError;

use crate::error::Error;
use crate::falgebra::{FAlgebra, MultSpec, Weight};
use crate::hom::LinearMap;
use crate::lattice::Sublattice;
use crate::subspace::Subspace;
use crate::vector::{FnVector, PointSet};
use crate::Rational;

#[derive(Debug, ThisError)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error(transparent)]
    Math(#[from] Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    pub multiplication: MultiplicationDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MultiplicationDocument {
    Weight { w: Vec<String> },
    Table { products: Vec<Vec<Vec<String>>> },
}

/// `matrix[i]` is the image of the `i`-th basis vector of the domain
/// document, as values on the codomain's points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDocument {
    pub domain: String,
    pub codomain: String,
    pub matrix: Vec<Vec<String>>,
}

/// A spanning list of vectors; need not span a sublattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDocument {
    pub name: String,
    pub points: usize,
    pub vectors: Vec<Vec<String>>,
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return None;
    }
    let mut n: BigInt = num.parse().ok()?;
    if s.starts_with('-') {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Canonical wire form: always `p/q` in lowest terms.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn format_vector(v: &FnVector<Rational>) -> Vec<String> {
    v.values().iter().map(format_rational).collect()
}

fn parse_vector(field: &str, raw: &[String], len: usize) -> IoResult<FnVector<Rational>> {
    if raw.len() != len {
        return Err(IoError::Dimension(format!("{field} has {} entries, expected {len}", raw.len())));
    }
    raw.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).ok_or_else(|| IoError::Schema(format!("{field}[{i}]: invalid rational {s:?}"))))
        .collect::<IoResult<Vec<_>>>()
        .map(FnVector::new)
}

fn read_json<D: serde::de::DeserializeOwned>(text: &str) -> IoResult<D> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    serde_json::from_value(value).map_err(|e| IoError::Schema(e.to_string()))
}

/// Sorted keys, two-space indentation, trailing newline.
fn write_json<S: Serialize>(doc: &S) -> String {
    // serde_json::Map is ordered by key unless `preserve_order` is enabled
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

/// An algebra read from a document, with the basis the document used.
#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub name: String,
    pub algebra: FAlgebra<Rational>,
    /// The document's basis, or the unit vectors for the full space.
    pub basis: Vec<FnVector<Rational>>,
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> IoResult<Self> {
        read_json(text)
    }

    pub fn to_json(&self) -> String {
        write_json(self)
    }

    pub fn load(&self) -> IoResult<LoadedAlgebra> {
        let points = PointSet::new(self.points).map_err(|_| IoError::Schema("points must be positive".into()))?;
        let n = self.points;
        let (carrier, basis) = match &self.basis {
            None => {
                let basis = (0..n).map(|p| FnVector::unit(n, p)).collect();
                (Sublattice::full(points), basis)
            }
            Some(rows) => {
                let basis = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| parse_vector(&format!("basis[{i}]"), r, n))
                    .collect::<IoResult<Vec<_>>>()?;
                let space = Subspace::span(points, &basis)?;
                if space.dim() != basis.len() {
                    return Err(IoError::Dimension("basis vectors are linearly dependent".into()));
                }
                (Sublattice::new(space)?, basis)
            }
        };
        let algebra = match &self.multiplication {
            MultiplicationDocument::Weight { w } => {
                let w = Weight::new(parse_vector("multiplication.w", w, n)?)?;
                FAlgebra::from_weight(carrier, &w)?
            }
            MultiplicationDocument::Table { products } => {
                let k = basis.len();
                if products.len() != k || products.iter().any(|r| r.len() != k) {
                    return Err(IoError::Dimension(format!("multiplication.products must be {k}×{k}")));
                }
                let table = products
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, p)| parse_vector(&format!("multiplication.products[{i}][{j}]"), p, n))
                            .collect::<IoResult<Vec<_>>>()
                    })
                    .collect::<IoResult<Vec<_>>>()?;
                FAlgebra::from_table_on_basis(carrier, &basis, &table)?
            }
        };
        Ok(LoadedAlgebra {
            name: self.name.clone(),
            algebra,
            basis,
        })
    }

    /// Canonical document for `algebra`.
    pub fn from_algebra(name: &str, algebra: &FAlgebra<Rational>) -> Self {
        let carrier = algebra.carrier();
        let basis = if carrier.space().is_full() {
            None
        } else {
            Some(carrier.basis().iter().map(format_vector).collect())
        };
        let multiplication = match algebra.mult_spec() {
            MultSpec::Weight(w) => MultiplicationDocument::Weight {
                w: format_vector(w.values()),
            },
            MultSpec::Table(t) => MultiplicationDocument::Table {
                products: t.iter().map(|row| row.iter().map(format_vector).collect()).collect(),
            },
        };
        AlgebraDocument {
            name: name.to_string(),
            points: algebra.ambient().size(),
            basis,
            multiplication,
        }
    }
}

/// Parses an algebra document; shorthand for [`AlgebraDocument::load`].
pub fn parse_algebra(text: &str) -> IoResult<LoadedAlgebra> {
    AlgebraDocument::from_json(text)?.load()
}

pub fn emit_algebra(name: &str, algebra: &FAlgebra<Rational>) -> String {
    AlgebraDocument::from_algebra(name, algebra).to_json()
}

impl HomDocument {
    pub fn from_json(text: &str) -> IoResult<Self> {
        read_json(text)
    }

    pub fn to_json(&self) -> String {
        write_json(self)
    }

    /// The map between the named algebras; `domain.name` and
    /// `codomain.name` must match the document.
    pub fn load(&self, domain: &LoadedAlgebra, codomain: &LoadedAlgebra) -> IoResult<LinearMap<Rational>> {
        if self.domain != domain.name || self.codomain != codomain.name {
            return Err(IoError::Schema(format!(
                "homomorphism refers to {} → {}, given {} → {}",
                self.domain, self.codomain, domain.name, codomain.name
            )));
        }
        let m = codomain.algebra.ambient().size();
        if self.matrix.len() != domain.basis.len() {
            return Err(IoError::Dimension(format!(
                "matrix has {} rows, domain has dimension {}",
                self.matrix.len(),
                domain.basis.len()
            )));
        }
        let images = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| parse_vector(&format!("matrix[{i}]"), r, m))
            .collect::<IoResult<Vec<_>>>()?;
        Ok(LinearMap::from_basis_images(
            domain.algebra.carrier().space().clone(),
            &domain.basis,
            codomain.algebra.ambient(),
            &images,
        )?)
    }

    /// Canonical document: rows are images of the echelon basis.
    pub fn from_map(domain: &str, codomain: &str, map: &LinearMap<Rational>) -> Self {
        HomDocument {
            domain: domain.to_string(),
            codomain: codomain.to_string(),
            matrix: map.images().iter().map(format_vector).collect(),
        }
    }
}

impl SubspaceDocument {
    pub fn from_json(text: &str) -> IoResult<Self> {
        read_json(text)
    }

    pub fn to_json(&self) -> String {
        write_json(self)
    }

    pub fn load(&self) -> IoResult<(PointSet, Vec<FnVector<Rational>>)> {
        let points = PointSet::new(self.points).map_err(|_| IoError::Schema("points must be positive".into()))?;
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, r)| parse_vector(&format!("vectors[{i}]"), r, self.points))
            .collect::<IoResult<Vec<_>>>()?;
        Ok((points, vectors))
    }

    pub fn from_vectors(name: &str, points: PointSet, vectors: &[FnVector<Rational>]) -> Self {
        SubspaceDocument {
            name: name.to_string(),
            points: points.size(),
            vectors: vectors.iter().map(format_vector).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    const WEIGHT_DOC: &str = r#"{"name":"A","points":2,"multiplication":{"kind":"weight","w":["1","2"]}}"#;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("4/2"), Some(Rational::from_int(2)));
        assert_eq!(parse_rational("-3"), Some(Rational::from_int(-3)));
        assert_eq!(parse_rational("-1/3"), Some(Rational::from_frac(-1, 3)));
        for bad in ["", "-", "1/0", "1/", "/2", "+1", "1.5", "1/-2", " 1", "--1"] {
            assert_eq!(parse_rational(bad), None, "{bad:?}");
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2/1");
        assert_eq!(format_rational(&Rational::from_frac(-2, 4)), "-1/2");
    }

    #[test]
    fn weight_document() {
        let a = parse_algebra(WEIGHT_DOC).unwrap();
        assert!(a.algebra.carrier().space().is_full());
        assert_eq!(a.algebra.weight().unwrap().values(), &FnVector::from_ints(&[1, 2]));
        let emitted = emit_algebra(&a.name, &a.algebra);
        assert!(emitted.contains("\"2/1\""));
        let again = parse_algebra(&emitted).unwrap();
        assert_eq!(emit_algebra(&again.name, &again.algebra), emitted);
    }

    #[test]
    fn canonical_keys_are_sorted() {
        let a = parse_algebra(WEIGHT_DOC).unwrap();
        let emitted = emit_algebra("A", &a.algebra);
        let m = emitted.find("\"multiplication\"").unwrap();
        let n = emitted.find("\"name\"").unwrap();
        let p = emitted.find("\"points\"").unwrap();
        assert!(m < n && n < p);
        let k = emitted.find("\"kind\"").unwrap();
        let w = emitted.find("\"w\"").unwrap();
        assert!(k < w);
    }

    #[test]
    fn table_document_and_swap() {
        let swap = r#"{"name":"S","points":2,"multiplication":{"kind":"table","products":[
            [["1","0"],["1","0"]],
            [["1","0"],["0","2"]]]}}"#;
        let s = parse_algebra(swap).unwrap();
        assert_eq!(
            s.algebra.extract_weight().unwrap_err(),
            Error::NotFAlgebra { i: 0, j: 1, point: 0 }
        );
        let emitted = emit_algebra("S", &s.algebra);
        let again = parse_algebra(&emitted).unwrap();
        assert_eq!(again.algebra.table(), s.algebra.table());
    }

    #[test]
    fn explicit_basis_is_canonicalized() {
        let doc = r#"{"name":"D","points":3,"basis":[["2","2","0"],["0","0","4/2"]],
            "multiplication":{"kind":"weight","w":["1","1","0"]}}"#;
        let d = parse_algebra(doc).unwrap();
        let emitted = emit_algebra("D", &d.algebra);
        assert!(emitted.contains("\"1/1\""));
        let again = parse_algebra(&emitted).unwrap();
        assert_eq!(emit_algebra("D", &again.algebra), emitted);
    }

    #[test]
    fn errors() {
        match parse_algebra("{\"name\": \"A\",\n \"points\": }") {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_algebra(r#"{"name":"A","points":2,"multiplication":{"kind":"weight","w":["1","x"]}}"#),
            Err(IoError::Schema(m)) if m.contains("multiplication.w[1]")
        ));
        assert!(matches!(
            parse_algebra(r#"{"name":"A","points":2,"multiplication":{"kind":"weight","w":["1"]}}"#),
            Err(IoError::Dimension(_))
        ));
        assert!(matches!(
            parse_algebra(r#"{"name":"A","points":2,"extra":1,"multiplication":{"kind":"weight","w":["1","1"]}}"#),
            Err(IoError::Schema(_))
        ));
        assert!(matches!(
            parse_algebra(r#"{"name":"A","points":2,"basis":[["1","-1"]],"multiplication":{"kind":"weight","w":["1","1"]}}"#),
            Err(IoError::Math(Error::NotSublattice { .. }))
        ));
    }

    #[test]
    fn hom_document() {
        let a = parse_algebra(WEIGHT_DOC).unwrap();
        let c = parse_algebra(r#"{"name":"C","points":1,"multiplication":{"kind":"weight","w":["1"]}}"#).unwrap();
        let h = HomDocument::from_json(r#"{"domain":"A","codomain":"C","matrix":[["1"],["2"]]}"#).unwrap();
        let t = h.load(&a, &c).unwrap();
        assert_eq!(t.apply(&FnVector::from_ints(&[1, 1])).unwrap(), FnVector::from_ints(&[3]));
        let back = HomDocument::from_map("A", "C", &t);
        assert_eq!(back.matrix, vec![vec!["1/1".to_string()], vec!["2/1".to_string()]]);
        let wrong = HomDocument::from_json(r#"{"domain":"B","codomain":"C","matrix":[["1"],["2"]]}"#).unwrap();
        assert!(matches!(wrong.load(&a, &c), Err(IoError::Schema(_))));
    }

    #[test]
    fn subspace_document() {
        let s = SubspaceDocument::from_json(r#"{"name":"X","points":3,"vectors":[["1","1","0"],["0","1","1"]]}"#).unwrap();
        let (p, vs) = s.load().unwrap();
        assert_eq!(p.size(), 3);
        assert_eq!(SubspaceDocument::from_vectors("X", p, &vs).load().unwrap().1, vs);
    }
}
