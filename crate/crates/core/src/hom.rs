//! Linear maps between function spaces and exact lattice-homomorphism
//! checks by sign-cell enumeration.

use std::ops::ControlFlow;

use crate::cells::{self, Sign};
use crate::error::{Error, Result};
use crate::lattice::Sublattice;
use crate::linalg;
use crate::scalar::Scalar;
use crate::subspace::{coordinate_rows, Subspace};
use crate::vector::{FnVector, PointSet};

/// Default cap on domain points plus codomain points for sign-cell
/// enumeration.
pub const DEFAULT_MAX_POINTS: usize = 12;

/// A linear map from a subspace into the functions on another point set,
/// stored as the images of the domain's echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<T> {
    domain: Subspace<T>,
    codomain: PointSet,
    images: Vec<FnVector<T>>,
}

impl<T: Scalar> LinearMap<T> {
    pub fn new(domain: Subspace<T>, codomain: PointSet, images: Vec<FnVector<T>>) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::Dimension(format!(
                "{} images for a domain of dimension {}",
                images.len(),
                domain.dim()
            )));
        }
        if let Some(bad) = images.iter().find(|y| y.len() != codomain.size()) {
            return Err(Error::MixedAmbient {
                expected: codomain.size(),
                found: bad.len(),
            });
        }
        Ok(LinearMap {
            domain,
            codomain,
            images,
        })
    }

    /// Map sending `basis[i]` to `images[i]`; `basis` must be a basis of
    /// `domain`.
    pub fn from_basis_images(
        domain: Subspace<T>,
        basis: &[FnVector<T>],
        codomain: PointSet,
        images: &[FnVector<T>],
    ) -> Result<Self> {
        if basis.len() != domain.dim() || images.len() != basis.len() {
            return Err(Error::Dimension(format!(
                "need {} basis vectors with images, got {} and {}",
                domain.dim(),
                basis.len(),
                images.len()
            )));
        }
        let coords = coordinate_rows(&domain, basis)?;
        let inv = linalg::invert(&coords)
            .ok_or_else(|| Error::Dependent("basis vectors do not span the domain".into()))?;
        let converted = inv
            .iter()
            .map(|row| FnVector::combination(codomain.size(), row, images))
            .collect();
        Self::new(domain, codomain, converted)
    }

    /// Pointwise multiplication by `q` (the domain and codomain coincide).
    pub fn multiplication(domain: Subspace<T>, q: &FnVector<T>) -> Self {
        let images = domain.basis().iter().map(|b| b.hadamard(q)).collect();
        LinearMap {
            codomain: domain.ambient(),
            domain,
            images,
        }
    }

    /// Restriction of functions to `points`.
    pub fn restriction(domain: Subspace<T>, points: &[usize]) -> Result<Self> {
        let codomain = PointSet::new(points.len())?;
        let images = domain.basis().iter().map(|b| b.restrict(points)).collect();
        Ok(LinearMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn zero(domain: Subspace<T>, codomain: PointSet) -> Self {
        let images = vec![FnVector::zeros(codomain.size()); domain.dim()];
        LinearMap {
            domain,
            codomain,
            images,
        }
    }

    pub fn domain(&self) -> &Subspace<T> {
        &self.domain
    }

    pub fn codomain(&self) -> PointSet {
        self.codomain
    }

    /// Images of the domain's echelon basis vectors.
    pub fn images(&self) -> &[FnVector<T>] {
        &self.images
    }

    pub fn apply_coords(&self, coords: &[T]) -> FnVector<T> {
        FnVector::combination(self.codomain.size(), coords, &self.images)
    }

    pub fn apply(&self, x: &FnVector<T>) -> Result<FnVector<T>> {
        let coords = self
            .domain
            .coordinates(x)
            .ok_or_else(|| Error::NotInCarrier(x.to_string()))?;
        Ok(self.apply_coords(&coords))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinearMap<T>) -> Result<LinearMap<T>> {
        let images = self
            .images
            .iter()
            .map(|y| other.apply(y))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(self.domain.clone(), other.codomain, images)
    }

    /// Span of the images.
    pub fn range(&self) -> Subspace<T> {
        Subspace::span(self.codomain, &self.images).expect("images share the codomain")
    }

    pub fn kernel(&self) -> Subspace<T> {
        let rows: Vec<Vec<T>> = self
            .codomain
            .points()
            .map(|p| self.images.iter().map(|y| y[p].clone()).collect())
            .collect();
        let null = linalg::nullspace(&rows, self.domain.dim());
        let vs: Vec<FnVector<T>> = null.iter().map(|t| self.domain.combine(t)).collect();
        Subspace::span(self.domain.ambient(), &vs).expect("members share the ambient")
    }
}

/// Outcome of an exact structure-preservation check.
#[derive(Clone, Debug, PartialEq)]
pub struct HomCheck<T> {
    pub holds: bool,
    /// A domain element violating the property.
    pub witness: Option<FnVector<T>>,
    pub cells: usize,
}

/// A linear map on a sublattice whose lattice-homomorphism property has
/// been decided.
#[derive(Clone, Debug)]
pub struct LatticeHom<T> {
    domain: Sublattice<T>,
    map: LinearMap<T>,
    certified: bool,
}

impl<T: Scalar> LatticeHom<T> {
    /// Decides the property; `certified` records the outcome.
    pub fn decide(domain: Sublattice<T>, map: LinearMap<T>, max_points: usize) -> Result<(Self, HomCheck<T>)> {
        let check = check_lattice_hom(&domain, &map, max_points)?;
        Ok((
            LatticeHom {
                domain,
                map,
                certified: check.holds,
            },
            check,
        ))
    }

    /// An uncertified wrapper; nothing is checked.
    pub fn unchecked(domain: Sublattice<T>, map: LinearMap<T>) -> Self {
        LatticeHom {
            domain,
            map,
            certified: false,
        }
    }

    pub fn domain(&self) -> &Sublattice<T> {
        &self.domain
    }

    pub fn map(&self) -> &LinearMap<T> {
        &self.map
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

fn size_guard(needed: usize, bound: usize) -> Result<()> {
    if needed > bound {
        Err(Error::SizeLimit { needed, bound })
    } else {
        Ok(())
    }
}

fn row_signs<T: Scalar>(rows: &[Vec<T>], t: &[T]) -> Vec<Sign> {
    rows.iter().map(|r| Sign::of(&linalg::dot(r, t))).collect()
}

/// Decides `T|x| = |Tx|` for every `x` in the domain.
///
/// Writing `x = Σ t_i b_i` over the echelon basis, the coordinates of `|x|`
/// are `ε_{p_i} t_i` where `ε` is the sign pattern of `x` and `p_i` the
/// pivot points. On a sign cell both sides are linear in `t`, so the
/// identity holds on the cell iff it holds on the cell's linear span.
pub fn check_lattice_hom<T: Scalar>(
    domain: &Sublattice<T>,
    map: &LinearMap<T>,
    max_points: usize,
) -> Result<HomCheck<T>> {
    if map.domain() != domain.space() {
        return Err(Error::Dimension("map domain differs from the sublattice".into()));
    }
    let n = domain.ambient().size();
    let m = map.codomain().size();
    size_guard(n + m, max_points)?;
    let space = domain.space();
    let k = space.dim();
    let mut rows: Vec<Vec<T>> = (0..n).map(|p| space.column(p)).collect();
    rows.extend((0..m).map(|q| map.images().iter().map(|y| y[q].clone()).collect()));
    let all: &[Sign] = &[Sign::Neg, Sign::Zero, Sign::Pos];
    let allowed = vec![all; n + m];
    let pivots = space.pivots().to_vec();
    let outcome = cells::enumerate_cells(&rows, k, &allowed, |cell| {
        for q in 0..m {
            let delta: T = cell.signs[n + q].as_scalar();
            let defect: Vec<T> = (0..k)
                .map(|i| {
                    let eps: T = cell.signs[pivots[i]].as_scalar();
                    (eps - delta.clone()) * map.images()[i][q].clone()
                })
                .collect();
            let Some(dir) = cell.span.iter().find(|d| !linalg::dot(&defect, d).is_zero()) else {
                continue;
            };
            let mut t = cell.point.to_vec();
            let mut step = T::one();
            while linalg::dot(&defect, &t).is_zero() || row_signs(&rows, &t) != cell.signs {
                t = cell
                    .point
                    .iter()
                    .zip(dir)
                    .map(|(a, b)| a.clone() + step.clone() * b.clone())
                    .collect();
                step = step / T::from_int(2);
            }
            return ControlFlow::Break(space.combine(&t));
        }
        ControlFlow::Continue(())
    });
    Ok(match outcome {
        Ok(cells) => HomCheck {
            holds: true,
            witness: None,
            cells,
        },
        Err(w) => HomCheck {
            holds: false,
            witness: Some(w),
            cells: 0,
        },
    })
}

/// Decides `x ≥ 0 ⇒ Tx ≥ 0` on the domain of `map`.
pub fn check_positive<T: Scalar>(map: &LinearMap<T>, max_points: usize) -> Result<HomCheck<T>> {
    let space = map.domain();
    let n = space.ambient().size();
    let m = map.codomain().size();
    size_guard(n + m, max_points)?;
    let k = space.dim();
    let rows: Vec<Vec<T>> = (0..n).map(|p| space.column(p)).collect();
    let nonneg: &[Sign] = &[Sign::Zero, Sign::Pos];
    let allowed = vec![nonneg; n];
    let outcome = cells::enumerate_cells(&rows, k, &allowed, |cell| {
        for q in 0..m {
            let neg: Vec<T> = map.images().iter().map(|y| -y[q].clone()).collect();
            if let Some(t) = cell.meets_positive(&neg, k) {
                return ControlFlow::Break(space.combine(&t));
            }
        }
        ControlFlow::Continue(())
    });
    Ok(match outcome {
        Ok(cells) => HomCheck {
            holds: true,
            witness: None,
            cells,
        },
        Err(w) => HomCheck {
            holds: false,
            witness: Some(w),
            cells: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> FnVector<Rational> {
        FnVector::from_ints(xs)
    }

    fn full(n: usize) -> Sublattice<Rational> {
        Sublattice::full(PointSet::new(n).unwrap())
    }

    fn map_on(l: &Sublattice<Rational>, images: &[FnVector<Rational>]) -> LinearMap<Rational> {
        let cod = PointSet::new(images.first().map_or(1, |y| y.len())).unwrap();
        LinearMap::new(l.space().clone(), cod, images.to_vec()).unwrap()
    }

    #[test]
    fn positive_diagonal_is_a_lattice_hom() {
        let l = full(2);
        let t = map_on(&l, &[v(&[2, 0]), v(&[0, 3])]);
        assert!(check_lattice_hom(&l, &t, DEFAULT_MAX_POINTS).unwrap().holds);
    }

    #[test]
    fn shear_is_not() {
        // T = [[1,1],[0,1]]: e0 -> (1,0), e1 -> (1,1)
        let l = full(2);
        let t = map_on(&l, &[v(&[1, 0]), v(&[1, 1])]);
        let c = check_lattice_hom(&l, &t, DEFAULT_MAX_POINTS).unwrap();
        assert!(!c.holds);
        let x = c.witness.unwrap();
        assert_ne!(t.apply(&x.abs()).unwrap(), t.apply(&x).unwrap().abs());
        // the hand-computed witness
        let x = v(&[1, -1]);
        assert_eq!(t.apply(&x.abs()).unwrap(), v(&[2, 1]));
        assert_eq!(t.apply(&x).unwrap().abs(), v(&[0, 1]));
    }

    #[test]
    fn zero_map_is_a_lattice_hom() {
        let l = full(3);
        let t = LinearMap::zero(l.space().clone(), PointSet::new(2).unwrap());
        assert!(check_lattice_hom(&l, &t, DEFAULT_MAX_POINTS).unwrap().holds);
    }

    #[test]
    fn size_limit_refuses() {
        let l = full(8);
        let t = LinearMap::zero(l.space().clone(), PointSet::new(8).unwrap());
        assert_eq!(
            check_lattice_hom(&l, &t, DEFAULT_MAX_POINTS).unwrap_err(),
            Error::SizeLimit { needed: 16, bound: 12 }
        );
    }

    #[test]
    fn positivity() {
        let l = full(2);
        let swap = map_on(&l, &[v(&[0, 1]), v(&[1, 0])]);
        assert!(check_positive(&swap, 12).unwrap().holds);
        let diff = map_on(&l, &[v(&[1]), v(&[-1])]);
        let c = check_positive(&diff, 12).unwrap();
        assert!(!c.holds);
        let x = c.witness.unwrap();
        assert!(x.is_nonnegative());
        assert!(!diff.apply(&x).unwrap().is_nonnegative());
    }

    #[test]
    fn change_of_basis() {
        let d = Subspace::from_vectors(&[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let t = LinearMap::from_basis_images(
            d.clone(),
            &[v(&[1, 1, 0]), v(&[0, 1, 1])],
            PointSet::new(1).unwrap(),
            &[v(&[2]), v(&[5])],
        )
        .unwrap();
        assert_eq!(t.apply(&v(&[1, 2, 1])).unwrap(), v(&[7]));
        assert_eq!(t.kernel().dim(), 1);
    }
}
