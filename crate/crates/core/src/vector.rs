//! Finite point sets and rational-valued functions on them.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The finite set `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    size: usize,
}

impl PointSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyPointSet);
        }
        Ok(PointSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}

/// A total function from a point set to scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FnVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> FnVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        FnVector { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        FnVector::new(values.iter().map(|&v| T::from_int(v)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        FnVector::new(vec![T::zero(); len])
    }

    /// Indicator of a single point.
    pub fn unit(len: usize, point: usize) -> Self {
        let mut v = Self::zeros(len);
        v.values[point] = T::one();
        v
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// Points where the function does not vanish.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(self.len(), other.len(), "point sets differ");
        FnVector::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        FnVector::new(self.values.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    /// Pointwise supremum.
    pub fn sup(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    /// Pointwise infimum.
    pub fn inf(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    pub fn positive_part(&self) -> Self {
        self.map(|v| if v.is_positive() { v.clone() } else { T::zero() })
    }

    pub fn negative_part(&self) -> Self {
        self.map(|v| if v.is_negative() { -v.clone() } else { T::zero() })
    }

    /// Pointwise product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    /// `|self| ∧ |other| = 0`.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a.is_zero() || b.is_zero())
    }

    /// Values at the listed points, in order.
    pub fn restrict(&self, points: &[usize]) -> Self {
        FnVector::new(points.iter().map(|&p| self.values[p].clone()).collect())
    }

    /// `Σ coeffs[i] · vectors[i]` on `len` points.
    pub fn combination(len: usize, coeffs: &[T], vectors: &[FnVector<T>]) -> Self {
        let mut out = vec![T::zero(); len];
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&v.values) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        FnVector::new(out)
    }
}

impl<T> Index<usize> for FnVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.values[i]
    }
}

impl<T: Scalar> Add for &FnVector<T> {
    type Output = FnVector<T>;

    fn add(self, rhs: Self) -> FnVector<T> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: Scalar> Sub for &FnVector<T> {
    type Output = FnVector<T>;

    fn sub(self, rhs: Self) -> FnVector<T> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: Scalar> Neg for &FnVector<T> {
    type Output = FnVector<T>;

    fn neg(self) -> FnVector<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Scalar> From<Vec<T>> for FnVector<T> {
    fn from(values: Vec<T>) -> Self {
        FnVector::new(values)
    }
}

impl<T: fmt::Display> fmt::Display for FnVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> FnVector<Rational> {
        FnVector::from_ints(xs)
    }

    #[test]
    fn lattice_operations_are_pointwise() {
        let a = v(&[1, -2, 0]);
        let b = v(&[0, 1, -1]);
        assert_eq!(a.sup(&b), v(&[1, 1, 0]));
        assert_eq!(a.inf(&b), v(&[0, -2, -1]));
        assert_eq!(a.abs(), v(&[1, 2, 0]));
        assert_eq!(&a.positive_part() - &a.negative_part(), a);
    }

    #[test]
    fn disjointness_and_support() {
        assert!(v(&[1, 0, 0]).is_disjoint(&v(&[0, 5, -1])));
        assert!(!v(&[1, 1, 0]).is_disjoint(&v(&[0, 1, 1])));
        assert_eq!(v(&[0, 3, 0, -1]).support(), vec![1, 3]);
    }

    #[test]
    fn empty_point_set_rejected() {
        assert_eq!(PointSet::new(0), Err(Error::EmptyPointSet));
        assert_eq!(PointSet::new(3).unwrap().size(), 3);
    }

    #[test]
    fn display_uses_reduced_fractions() {
        let x = FnVector::new(vec![Rational::from_frac(2, 4), Rational::from_int(3)]);
        assert_eq!(x.to_string(), "(1/2,3)");
    }
}
