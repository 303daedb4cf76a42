//! Exact f-algebras on finite function lattices.
//!
//! Vector lattices are modeled as sublattices of the rational-valued
//! functions on a finite point set. On top of that this crate provides
//! weight representations of f-algebra multiplications, the Fremlin tensor
//! product with its induced multiplication, and the universal property of
//! that product, all with exact arithmetic.
//!
//! Every type is generic over an exact [`Scalar`]; [`Rational`] (arbitrary
//! precision) is the default used by the aliases below, the document layer
//! and the CLI.

pub mod cells;
pub mod error;
pub mod expr;
pub mod falgebra;
pub mod hom;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod morphisms;
pub mod propsuite;
pub mod scalar;
pub mod subspace;
pub mod tensor;
pub mod vector;

pub use error::{Error, Result};
pub use expr::SupInfExpr;
pub use falgebra::{
    band_complement, extract_orthomorphism_weight, extract_partial_weight, quotient_by_band, restrict_to_support,
    verify_falgebra, FAlgebra, FAlgebraReport, MultSpec, Quotient, Weight,
};
pub use hom::{check_lattice_hom, check_positive, HomCheck, LatticeHom, LinearMap, DEFAULT_MAX_POINTS};
pub use lattice::{
    is_sublattice, member_two_point, sublattice_closure, sublattice_closure_of, Atom, Certificates, Sublattice,
};
pub use morphisms::{
    check_algebra_hom, check_multext, induced_tensor_hom, positively_generated, verify_universal, AlgebraHom,
    InducedHom, MultCheck, MultextReport, UniversalReport,
};
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use tensor::{
    algebraic_tensor, fremlin_tensor, fremlin_tensor_of, outer, reconstruct_mult, reconstruct_mult_from_generators,
    tensor_falgebra, tensor_generators, tensor_weight, ProductPointSet, TensorAlgebra,
};
pub use vector::{FnVector, PointSet};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Rationals over `i64`; fast but may overflow on large instances.
pub type SmallRational = num_rational::Ratio<i64>;

pub type QVector = FnVector<Rational>;
pub type QSubspace = Subspace<Rational>;
pub type QSublattice = Sublattice<Rational>;
pub type QLinearMap = LinearMap<Rational>;
pub type QFAlgebra = FAlgebra<Rational>;
