//! Linear subspaces of `Q^n` in canonical reduced echelon form.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::vector::{FnVector, PointSet};

/// A subspace of the functions on `ambient`.
///
/// The basis is the reduced row echelon form of any spanning set, so two
/// subspaces are equal exactly when their bases are equal. Coordinates of a
/// member with respect to the basis are its values at the pivot points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient: PointSet,
    basis: Vec<FnVector<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    /// Canonical echelon basis of the span of `vectors`.
    pub fn span(ambient: PointSet, vectors: &[FnVector<T>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient.size() {
                return Err(Error::MixedAmbient {
                    expected: ambient.size(),
                    found: v.len(),
                });
            }
        }
        let rows: Vec<Vec<T>> = vectors.iter().map(|v| v.values().to_vec()).collect();
        let e = linalg::echelon(&rows, ambient.size());
        Ok(Subspace {
            ambient,
            basis: e.rows.into_iter().map(FnVector::new).collect(),
            pivots: e.pivots,
        })
    }

    /// Span of a nonempty list, taking the point set from the first vector.
    pub fn from_vectors(vectors: &[FnVector<T>]) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::Dimension("empty vector list has no point set".into()))?;
        Self::span(PointSet::new(first.len())?, vectors)
    }

    pub fn zero(ambient: PointSet) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: PointSet) -> Self {
        let n = ambient.size();
        Subspace {
            ambient,
            basis: (0..n).map(|i| FnVector::unit(n, i)).collect(),
            pivots: (0..n).collect(),
        }
    }

    pub fn ambient(&self) -> PointSet {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FnVector<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient.size()
    }

    /// Coordinates of `v` over the basis, `None` if `v` is not a member.
    pub fn coordinates(&self, v: &FnVector<T>) -> Option<Vec<T>> {
        if v.len() != self.ambient.size() {
            return None;
        }
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.combine(&coords) == *v).then_some(coords)
    }

    pub fn contains(&self, v: &FnVector<T>) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn combine(&self, coords: &[T]) -> FnVector<T> {
        FnVector::combination(self.ambient.size(), coords, &self.basis)
    }

    pub fn is_subspace_of(&self, other: &Subspace<T>) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// The smallest subspace containing both.
    pub fn join(&self, other: &Subspace<T>) -> Result<Self> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vs)
    }

    /// Members of the subspace that vanish on every listed point.
    pub fn vanishing_on(&self, points: &[usize]) -> Self {
        let rows: Vec<Vec<T>> = points
            .iter()
            .map(|&p| self.basis.iter().map(|b| b[p].clone()).collect())
            .collect();
        let kernel = linalg::nullspace(&rows, self.dim());
        let vectors: Vec<FnVector<T>> = kernel.iter().map(|t| self.combine(t)).collect();
        Self::span(self.ambient, &vectors).expect("members share the ambient")
    }

    /// Image of the subspace under restriction to `points` (in order).
    pub fn restricted_to(&self, points: &[usize]) -> Result<Self> {
        let target = PointSet::new(points.len())?;
        let images: Vec<FnVector<T>> = self.basis.iter().map(|b| b.restrict(points)).collect();
        Self::span(target, &images)
    }

    /// Points where some member does not vanish.
    pub fn support_points(&self) -> Vec<usize> {
        self.ambient
            .points()
            .filter(|&p| self.basis.iter().any(|b| !b[p].is_zero()))
            .collect()
    }

    /// The evaluation functional at `point` in basis coordinates.
    pub fn column(&self, point: usize) -> Vec<T> {
        self.basis.iter().map(|b| b[point].clone()).collect()
    }
}

/// Matrix whose rows express `vectors` in the coordinates of `space`;
/// fails with `NotInCarrier` if some vector is not a member.
pub fn coordinate_rows<T: Scalar>(space: &Subspace<T>, vectors: &[FnVector<T>]) -> Result<Vec<Vec<T>>> {
    vectors
        .iter()
        .map(|v| {
            space
                .coordinates(v)
                .ok_or_else(|| Error::NotInCarrier(v.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> FnVector<Rational> {
        FnVector::from_ints(xs)
    }

    fn pts(n: usize) -> PointSet {
        PointSet::new(n).unwrap()
    }

    #[test]
    fn dependent_pair_collapses() {
        let s = Subspace::span(pts(3), &[v(&[1, 1, 0]), v(&[2, 2, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 1, 0])]);
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::<Rational>::span(pts(3), &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s, Subspace::zero(pts(3)));
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let s = Subspace::span(pts(3), &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 0, -1]), v(&[0, 1, 1])]);
        let t = Subspace::span(pts(3), &[v(&[1, 2, 1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn mixed_ambient_rejected() {
        let err = Subspace::span(pts(3), &[v(&[1, 1, 0]), v(&[1, 1])]).unwrap_err();
        assert_eq!(err, Error::MixedAmbient { expected: 3, found: 2 });
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::span(pts(3), &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(s.coordinates(&v(&[2, 5, 3])), Some(vec![Rational::from_int(2), Rational::from_int(5)]));
        assert!(!s.contains(&v(&[1, 1, 1])));
    }

    #[test]
    fn kernel_of_restriction() {
        let s = Subspace::<Rational>::full(pts(3));
        let k = s.vanishing_on(&[0, 2]);
        assert_eq!(k.basis(), &[v(&[0, 1, 0])]);
        let diag = Subspace::span(pts(2), &[v(&[1, 1])]).unwrap();
        assert_eq!(diag.vanishing_on(&[0]).dim(), 0);
    }
}
