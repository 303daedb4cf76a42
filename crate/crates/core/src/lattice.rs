//! Vector sublattices of `Q^n`: detection, closure with sup-inf
//! certificates, atom decomposition and the two-point membership test.
//!
//! A finite-dimensional vector sublattice of `Q^n` is spanned by pairwise
//! disjoint nonnegative vectors (its atoms). Points where the lattice does
//! not vanish fall into classes: two points share a class when their
//! evaluation functionals are positive multiples of each other. Each class
//! carries exactly one atom.

use crate::error::{Error, Result};
use crate::expr::SupInfExpr;
use crate::linalg;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::vector::{FnVector, PointSet};

/// Sup-inf expressions reproducing each basis vector from a fixed list of
/// generators.
#[derive(Clone, Debug)]
pub struct Certificates<T> {
    generators: Vec<FnVector<T>>,
    exprs: Vec<SupInfExpr<T>>,
}

impl<T: Scalar> Certificates<T> {
    pub fn generators(&self) -> &[FnVector<T>] {
        &self.generators
    }

    /// One expression per basis vector, in basis order.
    pub fn exprs(&self) -> &[SupInfExpr<T>] {
        &self.exprs
    }
}

/// A vector sublattice, optionally remembering how it was generated.
#[derive(Clone, Debug)]
pub struct Sublattice<T> {
    space: Subspace<T>,
    certificates: Option<Certificates<T>>,
}

impl<T: Scalar> PartialEq for Sublattice<T> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl<T: Scalar> Sublattice<T> {
    /// Accepts `space` if it is closed under pointwise suprema.
    pub fn new(space: Subspace<T>) -> Result<Self> {
        if let Some(w) = sup_escape(&space) {
            return Err(Error::NotSublattice {
                witness: w.to_string(),
            });
        }
        Ok(Sublattice {
            space,
            certificates: None,
        })
    }

    pub fn full(ambient: PointSet) -> Self {
        Sublattice {
            space: Subspace::full(ambient),
            certificates: None,
        }
    }

    pub fn zero(ambient: PointSet) -> Self {
        Sublattice {
            space: Subspace::zero(ambient),
            certificates: None,
        }
    }

    pub fn space(&self) -> &Subspace<T> {
        &self.space
    }

    pub fn into_space(self) -> Subspace<T> {
        self.space
    }

    pub fn certificates(&self) -> Option<&Certificates<T>> {
        self.certificates.as_ref()
    }

    pub fn with_certificates(mut self, certs: Certificates<T>) -> Result<Self> {
        if certs.exprs.len() != self.space.dim() {
            return Err(Error::Dimension("one certificate per basis vector".into()));
        }
        self.certificates = Some(certs);
        Ok(self)
    }

    pub fn without_certificates(mut self) -> Self {
        self.certificates = None;
        self
    }

    pub fn ambient(&self) -> PointSet {
        self.space.ambient()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[FnVector<T>] {
        self.space.basis()
    }

    pub fn contains(&self, v: &FnVector<T>) -> bool {
        self.space.contains(v)
    }

    /// Points where some member does not vanish.
    pub fn upsilon(&self) -> Vec<usize> {
        self.space.support_points()
    }

    /// Whether every point carries a member that does not vanish there.
    pub fn is_admissible(&self) -> bool {
        self.upsilon().len() == self.ambient().size()
    }

    /// Pairwise disjoint nonnegative basis, one atom per point class.
    pub fn atoms(&self) -> Vec<Atom<T>> {
        point_classes(&self.space)
            .into_iter()
            .map(|class| {
                let n = self.ambient().size();
                let mut values = vec![T::zero(); n];
                for (p, s) in class.points.iter().zip(&class.scales) {
                    values[*p] = s.clone();
                }
                Atom {
                    vector: FnVector::new(values),
                    points: class.points,
                }
            })
            .collect()
    }

    /// Checks that every certificate evaluates to its basis vector.
    pub fn verify_certificates(&self) -> Result<()> {
        let certs = self.certificates.as_ref().ok_or(Error::CertificatesMissing)?;
        let mut ev = crate::expr::Evaluator::new(
            crate::expr::Generators(&certs.generators),
            self.ambient().size(),
        );
        for (i, (e, b)) in certs.exprs.iter().zip(self.basis()).enumerate() {
            let got = ev.eval(e)?;
            if &got != b {
                return Err(Error::Internal(format!(
                    "certificate {i} evaluates to {got}, basis vector is {b}"
                )));
            }
        }
        Ok(())
    }
}

/// A minimal nonnegative element of a sublattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom<T> {
    pub vector: FnVector<T>,
    /// Support of the atom, increasing.
    pub points: Vec<usize>,
}

struct PointClass<T> {
    points: Vec<usize>,
    // value of the normalized atom at each point; the first is one
    scales: Vec<T>,
}

/// Groups the support points of `space` by positive proportionality of
/// their evaluation functionals.
fn point_classes<T: Scalar>(space: &Subspace<T>) -> Vec<PointClass<T>> {
    // keyed by the functional scaled so its leading entry is ±1
    let mut classes: Vec<(Vec<T>, T, PointClass<T>)> = Vec::new();
    for p in space.support_points() {
        let col = space.column(p);
        let norm = linalg::normalize_positive(&col);
        let lead = col.iter().find(|x| !x.is_zero()).expect("support point").abs();
        match classes.iter_mut().find(|(key, _, _)| *key == norm) {
            Some((_, first_lead, class)) => {
                class.points.push(p);
                class.scales.push(lead / first_lead.clone());
            }
            None => classes.push((
                norm,
                lead,
                PointClass {
                    points: vec![p],
                    scales: vec![T::one()],
                },
            )),
        }
    }
    classes.into_iter().map(|(_, _, c)| c).collect()
}

/// Number of point classes; equals the dimension of the sublattice
/// generated by `space`.
pub fn generated_dimension<T: Scalar>(space: &Subspace<T>) -> usize {
    point_classes(space).len()
}

/// A supremum of echelon basis vectors (or of one basis vector with zero)
/// that falls outside `space`, if any.
///
/// With an echelon basis, `b_i ∨ 0 ∈ X` and `b_i ∨ b_j ∈ X` for all pairs
/// force the basis to be nonnegative and pairwise disjoint, so this finite
/// test decides closure under suprema.
pub fn sup_escape<T: Scalar>(space: &Subspace<T>) -> Option<FnVector<T>> {
    let b = space.basis();
    for (i, bi) in b.iter().enumerate() {
        let pos = bi.positive_part();
        if !space.contains(&pos) {
            return Some(pos);
        }
        for bj in &b[i + 1..] {
            let s = bi.sup(bj);
            if !space.contains(&s) {
                return Some(s);
            }
        }
    }
    None
}

pub fn is_sublattice<T: Scalar>(space: &Subspace<T>) -> bool {
    sup_escape(space).is_none()
}

/// Echelon basis of the span of `generators` together with expressions of
/// each basis vector as a linear combination of generator leaves.
fn tracked_basis<T: Scalar>(
    ambient: PointSet,
    vectors: &[FnVector<T>],
    exprs: &[SupInfExpr<T>],
) -> (Subspace<T>, Vec<SupInfExpr<T>>) {
    let rows: Vec<Vec<T>> = vectors.iter().map(|v| v.values().to_vec()).collect();
    let e = linalg::echelon(&rows, ambient.size());
    let basis_exprs = e
        .combos
        .iter()
        .map(|combo| {
            SupInfExpr::linear(
                combo
                    .iter()
                    .zip(exprs)
                    .map(|(c, x)| (c.clone(), x.clone()))
                    .collect(),
            )
        })
        .collect();
    let vs: Vec<FnVector<T>> = e.rows.into_iter().map(FnVector::new).collect();
    let space = Subspace::span(ambient, &vs).expect("rows share the ambient");
    (space, basis_exprs)
}

fn check_generators<T: Scalar>(ambient: PointSet, generators: &[FnVector<T>]) -> Result<()> {
    for g in generators {
        if g.len() != ambient.size() {
            return Err(Error::MixedAmbient {
                expected: ambient.size(),
                found: g.len(),
            });
        }
    }
    Ok(())
}

/// The vector sublattice generated by `generators`, certified by sup-inf
/// expressions over them.
///
/// Repeatedly adjoins `b_i ∨ 0` and `b_i ∨ b_j` for the current echelon
/// basis and re-spans until nothing new appears. Each round strictly grows
/// the dimension, so at most `n` rounds run.
pub fn sublattice_closure_of<T: Scalar>(
    ambient: PointSet,
    generators: &[FnVector<T>],
) -> Result<Sublattice<T>> {
    check_generators(ambient, generators)?;
    let mut vectors: Vec<FnVector<T>> = generators.to_vec();
    let mut exprs: Vec<SupInfExpr<T>> = (0..generators.len()).map(SupInfExpr::leaf).collect();
    loop {
        let (space, basis_exprs) = tracked_basis(ambient, &vectors, &exprs);
        let b = space.basis();
        let mut fresh_vectors = Vec::new();
        let mut fresh_exprs = Vec::new();
        for i in 0..b.len() {
            let pos = b[i].positive_part();
            if !space.contains(&pos) {
                fresh_vectors.push(pos);
                fresh_exprs.push(basis_exprs[i].positive_part());
            }
            for j in i + 1..b.len() {
                let s = b[i].sup(&b[j]);
                if !space.contains(&s) {
                    fresh_vectors.push(s);
                    fresh_exprs.push(SupInfExpr::sup(&basis_exprs[i], &basis_exprs[j]));
                }
            }
        }
        if fresh_vectors.is_empty() {
            return Ok(Sublattice {
                space,
                certificates: Some(Certificates {
                    generators: generators.to_vec(),
                    exprs: basis_exprs,
                }),
            });
        }
        vectors = b.to_vec();
        vectors.extend(fresh_vectors);
        exprs = basis_exprs;
        exprs.extend(fresh_exprs);
    }
}

/// [`sublattice_closure_of`] over the echelon basis of `space`.
pub fn sublattice_closure<T: Scalar>(space: &Subspace<T>) -> Sublattice<T> {
    sublattice_closure_of(space.ambient(), space.basis()).expect("basis shares the ambient")
}

/// Sup-inf description of one atom of the generated sublattice:
/// `atom = (∨_{σ ∈ class} ∧_{τ ∈ Υ} f_{στ}) ∨ 0`.
#[derive(Clone, Debug)]
pub struct AtomCertificate<T> {
    pub atom: Atom<T>,
    /// `f_{στ}` for each `σ` of the class (outer) and `τ` of Υ (inner).
    pub matches: Vec<Vec<SupInfExpr<T>>>,
    /// `∧_τ f_{στ}` for each `σ` of the class.
    pub meets: Vec<SupInfExpr<T>>,
    pub expr: SupInfExpr<T>,
    /// Whether every `f_{στ}` is a plain linear combination of generators.
    pub linear_matches: bool,
}

/// Atoms of the sublattice generated by `generators`, each certified by the
/// two-point construction.
///
/// For a target atom `u` and points `σ, τ`, `f_{στ}` is a member of the span
/// agreeing with `u` at both points when one exists; otherwise the two
/// evaluation functionals are opposite and `f_{στ} = x ∨ 0` for a member `x`
/// matching `u` at the point where `u` is positive.
pub fn atom_certificates<T: Scalar>(
    ambient: PointSet,
    generators: &[FnVector<T>],
) -> Result<Vec<AtomCertificate<T>>> {
    check_generators(ambient, generators)?;
    let leaves: Vec<SupInfExpr<T>> = (0..generators.len()).map(SupInfExpr::leaf).collect();
    let (space, basis_exprs) = tracked_basis(ambient, generators, &leaves);
    let upsilon = space.support_points();
    let k = space.dim();
    let member_expr = |t: &[T]| {
        SupInfExpr::linear(
            t.iter()
                .zip(&basis_exprs)
                .map(|(c, e)| (c.clone(), e.clone()))
                .collect(),
        )
    };
    let mut out = Vec::new();
    for class in point_classes(&space) {
        let mut values = vec![T::zero(); ambient.size()];
        for (p, s) in class.points.iter().zip(&class.scales) {
            values[*p] = s.clone();
        }
        let u = FnVector::new(values);
        let mut matches = Vec::new();
        let mut meets = Vec::new();
        let mut linear_matches = true;
        for &s in &class.points {
            let mut row = Vec::new();
            for &t in &upsilon {
                let f = if u[s].is_zero() && u[t].is_zero() {
                    SupInfExpr::zero()
                } else {
                    let rows = vec![space.column(s), space.column(t)];
                    match linalg::solve(&rows, &[u[s].clone(), u[t].clone()], k) {
                        Some(sol) => member_expr(&sol),
                        None => {
                            linear_matches = false;
                            let p = if u[s].is_zero() { t } else { s };
                            let sol = linalg::solve(&[space.column(p)], &[u[p].clone()], k)
                                .ok_or_else(|| Error::Internal("support point with zero column".into()))?;
                            member_expr(&sol).positive_part()
                        }
                    }
                };
                row.push(f);
            }
            let meet = SupInfExpr::inf_all(&row).expect("class point lies in Υ");
            meets.push(meet);
            matches.push(row);
        }
        let join = SupInfExpr::sup_all(&meets).expect("classes are nonempty");
        let expr = join.positive_part();
        out.push(AtomCertificate {
            atom: Atom {
                vector: u,
                points: class.points,
            },
            matches,
            meets,
            expr,
            linear_matches,
        });
    }
    Ok(out)
}

/// The generated sublattice with certificates from the two-point
/// construction; an independent route to [`sublattice_closure_of`].
pub fn two_point_closure_of<T: Scalar>(
    ambient: PointSet,
    generators: &[FnVector<T>],
) -> Result<Sublattice<T>> {
    let atoms = atom_certificates(ambient, generators)?;
    let vectors: Vec<FnVector<T>> = atoms.iter().map(|a| a.atom.vector.clone()).collect();
    let space = Subspace::span(ambient, &vectors)?;
    let exprs = space
        .basis()
        .iter()
        .map(|b| {
            SupInfExpr::linear(
                atoms
                    .iter()
                    .map(|a| (b[a.atom.points[0]].clone(), a.expr.clone()))
                    .collect(),
            )
        })
        .collect();
    Ok(Sublattice {
        space,
        certificates: Some(Certificates {
            generators: generators.to_vec(),
            exprs,
        }),
    })
}

/// The pair of points at which `v` cannot be matched by the sublattice
/// generated by `space`, if any.
///
/// For each pair `(σ, τ)` the projection of `space` onto those two points is
/// a subspace `P` of `Q^2`; the generated sublattice restricts onto the
/// sublattice generated by `P`, which is `P` itself unless `P` is a line
/// through a vector with entries of opposite sign, in which case it is all
/// of `Q^2`. A vector matched on every pair lies in the generated
/// sublattice (it is the supremum over `σ` of infima over `τ` of matching
/// members), so this decides membership without computing a closure.
pub fn two_point_violation<T: Scalar>(space: &Subspace<T>, v: &FnVector<T>) -> Option<(usize, usize)> {
    let n = space.ambient().size();
    assert_eq!(v.len(), n, "point sets differ");
    let k = space.dim();
    for s in 0..n {
        for t in s..n {
            let rows = if s == t {
                vec![space.column(s)]
            } else {
                vec![space.column(s), space.column(t)]
            };
            let rhs: Vec<T> = if s == t {
                vec![v[s].clone()]
            } else {
                vec![v[s].clone(), v[t].clone()]
            };
            if linalg::solve(&rows, &rhs, k).is_some() {
                continue;
            }
            // unsolvable: rank is at most one; a line with mixed signs
            // still generates the whole plane
            if s != t {
                let (cs, ct) = (&rows[0], &rows[1]);
                let lead = cs.iter().zip(ct).position(|(a, b)| !a.is_zero() || !b.is_zero());
                if let Some(i) = lead {
                    // direction of the projected line is (cs·t, ct·t) for
                    // any t; take t = e_i
                    let (a, b) = (&cs[i], &ct[i]);
                    if (a.clone() * b.clone()).is_negative() {
                        continue;
                    }
                }
            }
            return Some((s, t));
        }
    }
    None
}

pub fn member_two_point<T: Scalar>(space: &Subspace<T>, v: &FnVector<T>) -> bool {
    two_point_violation(space, v).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> FnVector<Rational> {
        FnVector::from_ints(xs)
    }

    fn span(vs: &[FnVector<Rational>]) -> Subspace<Rational> {
        Subspace::from_vectors(vs).unwrap()
    }

    #[test]
    fn diagonal_is_a_sublattice() {
        assert!(is_sublattice(&span(&[v(&[1, 1])])));
        assert!(is_sublattice(&Subspace::<Rational>::full(PointSet::new(4).unwrap())));
    }

    #[test]
    fn two_overlapping_vectors_are_not() {
        let x = span(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(!is_sublattice(&x));
        // the basis is (1,0,-1),(0,1,1); its positive part escapes
        assert_eq!(sup_escape(&x), Some(v(&[1, 0, 0])));
        assert!(!x.contains(&v(&[1, 1, 0]).sup(&v(&[0, 1, 1]))));
    }

    #[test]
    fn mixed_sign_line_is_not_a_sublattice() {
        // pairwise sups of basis vectors alone would accept this space
        assert!(!is_sublattice(&span(&[v(&[1, -1])])));
    }

    #[test]
    fn closure_examples() {
        let d = span(&[v(&[1, 1])]);
        assert_eq!(sublattice_closure(&d).space(), &d);
        let x = span(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let c = sublattice_closure(&x);
        assert_eq!(c.dim(), 3);
        c.verify_certificates().unwrap();
        let z = Subspace::<Rational>::zero(PointSet::new(3).unwrap());
        assert_eq!(sublattice_closure(&z).dim(), 0);
    }

    #[test]
    fn closure_needs_positive_parts() {
        let x = span(&[v(&[1, -1])]);
        let c = sublattice_closure(&x);
        assert_eq!(c.dim(), 2);
        c.verify_certificates().unwrap();
    }

    #[test]
    fn two_point_route_agrees() {
        let x = span(&[v(&[1, 2, 3, 0]), v(&[1, 1, 1, 1])]);
        let a = sublattice_closure(&x);
        let b = two_point_closure_of(x.ambient(), x.basis()).unwrap();
        assert_eq!(a, b);
        b.verify_certificates().unwrap();
        assert_eq!(generated_dimension(&x), a.dim());
    }

    #[test]
    fn atoms_are_disjoint_and_nonnegative() {
        let l = sublattice_closure(&span(&[v(&[1, 2, 0, 2]), v(&[0, 0, 1, 0])]));
        let atoms = l.atoms();
        assert_eq!(atoms.len(), l.dim());
        for (i, a) in atoms.iter().enumerate() {
            assert!(a.vector.is_nonnegative());
            assert!(l.contains(&a.vector));
            for b in &atoms[i + 1..] {
                assert!(a.vector.is_disjoint(&b.vector));
            }
        }
    }

    #[test]
    fn two_point_membership_examples() {
        let x = span(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(member_two_point(&x, &v(&[5, -2, 7])));
        let d = span(&[v(&[1, 1])]);
        assert!(!member_two_point(&d, &v(&[1, 2])));
        assert_eq!(two_point_violation(&d, &v(&[1, 2])), Some((0, 1)));
        assert!(member_two_point(&d, &v(&[0, 0])));
        // the generated sublattice of a mixed-sign line is everything
        assert!(member_two_point(&span(&[v(&[1, -1])]), &v(&[1, 0])));
    }

    #[test]
    fn upsilon_examples() {
        let l = Sublattice::new(span(&[v(&[1, 0])])).unwrap();
        assert_eq!(l.upsilon(), vec![0]);
        assert!(!l.is_admissible());
        let f = Sublattice::<Rational>::full(PointSet::new(3).unwrap());
        assert_eq!(f.upsilon(), vec![0, 1, 2]);
        assert!(Sublattice::<Rational>::zero(PointSet::new(2).unwrap()).upsilon().is_empty());
    }
}
