//! Algebra homomorphisms, multiplicative extension along sup-inf closures,
//! and the map induced on a tensor product by a pair of homomorphisms.
//!
//! Every linear map between finite-dimensional function lattices is order
//! bounded, so that hypothesis is never checked at runtime.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cells;
use crate::error::{Error, Result};
use crate::expr::{Evaluator, Generators};
use crate::falgebra::{band_complement, FAlgebra};
use crate::hom::{check_lattice_hom, check_positive, HomCheck, LinearMap};
use crate::lattice::{atom_certificates, is_sublattice, two_point_closure_of, Sublattice};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::tensor::{outer, tensor_falgebra, tensor_generators, TensorAlgebra};
use crate::vector::FnVector;

/// Outcome of a multiplicativity check over basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultCheck {
    pub holds: bool,
    /// First basis pair `(i, j)` with `T(b_i ⋆ b_j) ≠ T b_i ∙ T b_j`.
    pub witness: Option<(usize, usize)>,
}

/// Decides `T(x ⋆ y) = Tx ∙ Ty` on the carrier of `a`, where `∙` is the
/// multiplication of `c`. Bilinearity reduces this to basis pairs.
pub fn check_algebra_hom<T: Scalar>(map: &LinearMap<T>, a: &FAlgebra<T>, c: &FAlgebra<T>) -> Result<MultCheck> {
    if map.domain() != a.carrier().space() {
        return Err(Error::Dimension("map domain differs from the algebra carrier".into()));
    }
    if map.codomain() != c.ambient() {
        return Err(Error::Dimension("map codomain differs from the target point set".into()));
    }
    if let Some(basis) = map.images().iter().position(|y| !c.carrier().contains(y)) {
        return Err(Error::NotIntoCodomain { basis });
    }
    let b = a.carrier().basis();
    let images = map.images();
    for i in 0..b.len() {
        for j in i..b.len() {
            let lhs = map.apply(&a.mult(&b[i], &b[j])?)?;
            let rhs = c.mult(&images[i], &images[j])?;
            if lhs != rhs || lhs != map.apply(&a.mult(&b[j], &b[i])?)? {
                return Ok(MultCheck {
                    holds: false,
                    witness: Some((i, j)),
                });
            }
        }
    }
    Ok(MultCheck {
        holds: true,
        witness: None,
    })
}

/// A linear map between algebras with its lattice and multiplicative
/// properties decided.
#[derive(Clone, Debug)]
pub struct AlgebraHom<T> {
    map: LinearMap<T>,
    domain: FAlgebra<T>,
    codomain: FAlgebra<T>,
    lattice: HomCheck<T>,
    mult: MultCheck,
}

impl<T: Scalar> AlgebraHom<T> {
    pub fn new(map: LinearMap<T>, domain: FAlgebra<T>, codomain: FAlgebra<T>, max_points: usize) -> Result<Self> {
        let mult = check_algebra_hom(&map, &domain, &codomain)?;
        let lattice = check_lattice_hom(domain.carrier(), &map, max_points)?;
        Ok(AlgebraHom {
            map,
            domain,
            codomain,
            lattice,
            mult,
        })
    }

    pub fn map(&self) -> &LinearMap<T> {
        &self.map
    }

    pub fn domain(&self) -> &FAlgebra<T> {
        &self.domain
    }

    pub fn codomain(&self) -> &FAlgebra<T> {
        &self.codomain
    }

    pub fn is_multiplicative(&self) -> bool {
        self.mult.holds
    }

    pub fn is_lattice_hom(&self) -> bool {
        self.lattice.holds
    }

    pub fn mult_check(&self) -> &MultCheck {
        &self.mult
    }

    pub fn lattice_check(&self) -> &HomCheck<T> {
        &self.lattice
    }
}

/// Whether `X ∩ Q^n_+` spans `X`.
///
/// This holds iff some member of `X` is strictly positive on `Υ(X)`: such
/// a member absorbs small multiples of any other member, and conversely the
/// sum of a nonnegative spanning set is positive wherever `X` is nonzero.
/// The strict system is decided by Fourier–Motzkin elimination.
pub fn positively_generated<T: Scalar>(space: &Subspace<T>, max_points: usize) -> Result<bool> {
    let upsilon = space.support_points();
    if upsilon.len() > max_points {
        return Err(Error::SizeLimit {
            needed: upsilon.len(),
            bound: max_points,
        });
    }
    let rows: Vec<Vec<T>> = upsilon.iter().map(|&p| space.column(p)).collect();
    Ok(cells::strict_point(&rows, space.dim()).is_some())
}

/// One stage of the extension cascade.
#[derive(Clone, Debug)]
pub struct StageReport<T> {
    pub name: &'static str,
    pub pairs: usize,
    pub witness: Option<(FnVector<T>, FnVector<T>)>,
}

#[derive(Clone, Debug)]
pub struct MultextReport<T> {
    pub stages: Vec<StageReport<T>>,
}

impl<T> MultextReport<T> {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.witness.is_none())
    }
}

fn stage<T: Scalar>(
    name: &'static str,
    map: &LinearMap<T>,
    a: &FAlgebra<T>,
    b: &FAlgebra<T>,
    left: &[FnVector<T>],
    right: &[FnVector<T>],
) -> Result<StageReport<T>> {
    let mut pairs = 0;
    for y in left {
        for z in right {
            pairs += 1;
            if map.apply(&a.mult(y, z)?)? != b.mult(&map.apply(y)?, &map.apply(z)?)? {
                return Ok(StageReport {
                    name,
                    pairs,
                    witness: Some((y.clone(), z.clone())),
                });
            }
        }
    }
    Ok(StageReport {
        name,
        pairs,
        witness: None,
    })
}

/// Multiplicativity of a lattice homomorphism `T: A → B` on the sublattice
/// generated by a positively generated subalgebra `X`, checked along the
/// cascade `X × X^∧`, `X^∧ × X^∧`, `X^∧ × X^∧∨`, `X^∧∨ × X^∧∨`.
///
/// `X^∧` is represented by the infima `∧_τ f_{στ}` of the two-point
/// construction together with a basis of `X`, and `X^∧∨` by the atoms of
/// the generated sublattice. When `X` is already a sublattice the cascade
/// collapses to a single basis-pair stage.
pub fn check_multext<T: Scalar>(
    t: &crate::hom::LatticeHom<T>,
    x: &Subspace<T>,
    a: &FAlgebra<T>,
    b: &FAlgebra<T>,
    max_points: usize,
) -> Result<MultextReport<T>> {
    if !t.is_certified() {
        return Err(Error::PreconditionFailed("T is not a certified lattice homomorphism".into()));
    }
    if t.domain() != a.carrier() {
        return Err(Error::PreconditionFailed("T is not defined on the carrier of A".into()));
    }
    if !x.is_subspace_of(a.carrier().space()) {
        return Err(Error::PreconditionFailed("X is not contained in A".into()));
    }
    let map = t.map();
    let xb = x.basis();
    for y in xb {
        for z in xb {
            if !x.contains(&a.mult(y, z)?) {
                return Err(Error::PreconditionFailed("X is not closed under multiplication".into()));
            }
        }
    }
    if !positively_generated(x, max_points)? {
        return Err(Error::PreconditionFailed("X is not positively generated".into()));
    }
    let base = stage("X×X", map, a, b, xb, xb)?;
    if base.witness.is_some() {
        return Err(Error::PreconditionFailed("T is not multiplicative on X".into()));
    }
    if is_sublattice(x) {
        return Ok(MultextReport { stages: vec![base] });
    }
    let certs = atom_certificates(x.ambient(), xb)?;
    if certs.iter().any(|c| !c.linear_matches) {
        return Err(Error::Internal("positively generated X needs no positive parts".into()));
    }
    let mut meets = xb.to_vec();
    let mut atoms = Vec::new();
    for c in &certs {
        for m in &c.meets {
            meets.push(m.evaluate(xb)?);
        }
        atoms.push(c.atom.vector.clone());
    }
    let stages = vec![
        base,
        stage("X×X^∧", map, a, b, xb, &meets)?,
        stage("X^∧×X^∧", map, a, b, &meets, &meets)?,
        stage("X^∧×X^∧∨", map, a, b, &meets, &atoms)?,
        stage("X^∧∨×X^∧∨", map, a, b, &atoms, &atoms)?,
    ];
    Ok(MultextReport { stages })
}

/// Images of the echelon basis of `carrier` obtained by evaluating its
/// certificates with leaves bound to `leaf_images`.
fn extend_along<T: Scalar>(carrier: &Sublattice<T>, leaf_images: &[FnVector<T>], len: usize) -> Result<Vec<FnVector<T>>> {
    let certs = carrier.certificates().ok_or(Error::CertificatesMissing)?;
    let mut ev = Evaluator::new(Generators(leaf_images), len);
    certs.exprs().iter().map(|e| ev.eval(e)).collect()
}

/// The map `S: A ⊗̄ B → C` with `S(a ⊗ b) = T_A(a) ∙ T_B(b)`.
#[derive(Clone, Debug)]
pub struct InducedHom<T> {
    pub tensor: TensorAlgebra<T>,
    pub hom: AlgebraHom<T>,
    /// `N^d` for the nilpotent band `N` of `C`.
    pub range_band: Sublattice<T>,
}

fn same_algebra<T: Scalar>(x: &FAlgebra<T>, y: &FAlgebra<T>) -> bool {
    x.carrier() == y.carrier() && x.weight() == y.weight()
}

/// Builds `S` on simple tensors of basis vectors and extends it to
/// `A ⊗̄ B` by evaluating the closure certificates in `C`.
///
/// Before returning, `S` is checked to reproduce its values on every
/// generator, to be a lattice homomorphism and an algebra homomorphism,
/// and to take values in `N^d`. The inputs must be multiplicative and
/// `Q ∘ T_A`, `Q ∘ T_B` lattice homomorphisms, where `Q` is restriction to
/// the support of the weight of `C`.
pub fn induced_tensor_hom<T: Scalar>(
    ta: &AlgebraHom<T>,
    tb: &AlgebraHom<T>,
    max_points: usize,
) -> Result<InducedHom<T>> {
    if !ta.is_multiplicative() || !tb.is_multiplicative() {
        return Err(Error::PreconditionFailed("T_A and T_B must be algebra homomorphisms".into()));
    }
    if !same_algebra(ta.codomain(), tb.codomain()) {
        return Err(Error::PreconditionFailed("T_A and T_B have different codomains".into()));
    }
    let c = ta.codomain();
    let w = c.require_weight()?;
    let q = LinearMap::restriction(c.carrier().space().clone(), &w.support());
    if let Ok(q) = q {
        for (name, t) in [("Q∘T_A", ta), ("Q∘T_B", tb)] {
            let qt = LinearMap::new(
                t.map().domain().clone(),
                q.codomain(),
                t.map().images().iter().map(|y| q.apply(y)).collect::<Result<_>>()?,
            )?;
            if !check_lattice_hom(t.domain().carrier(), &qt, max_points)?.holds {
                return Err(Error::PreconditionFailed(format!("{name} is not a lattice homomorphism")));
            }
        }
    }

    let tensor = tensor_falgebra(ta.domain(), tb.domain())?;
    let (ab, bb) = (ta.domain().carrier().basis(), tb.domain().carrier().basis());
    let mut leaf_images = Vec::with_capacity(ab.len() * bb.len());
    for ya in ta.map().images() {
        for yb in tb.map().images() {
            leaf_images.push(c.mult(ya, yb)?);
        }
    }
    let len = c.ambient().size();
    let carrier = tensor.algebra.carrier();
    let images = extend_along(carrier, &leaf_images, len)?;
    let s = LinearMap::new(carrier.space().clone(), c.ambient(), images)?;
    let gens = tensor_generators(ta.domain().carrier(), tb.domain().carrier());
    for (k, g) in gens.iter().enumerate() {
        if s.apply(g)? != leaf_images[k] {
            return Err(Error::ExtensionInconsistent(format!("generator {k} is not reproduced")));
        }
    }
    let hom = AlgebraHom::new(s, tensor.algebra.clone(), c.clone(), max_points)
        .map_err(|e| match e {
            Error::NotIntoCodomain { basis } => {
                Error::ExtensionInconsistent(format!("image of basis vector {basis} leaves C"))
            }
            e => e,
        })?;
    if !hom.is_lattice_hom() {
        return Err(Error::ExtensionInconsistent("S is not a lattice homomorphism".into()));
    }
    if !hom.is_multiplicative() {
        return Err(Error::ExtensionInconsistent("S is not multiplicative".into()));
    }
    let range_band = band_complement(c.carrier(), &c.nilpotent_band()?)?;
    if let Some(y) = hom.map().images().iter().find(|y| !range_band.contains(y)) {
        return Err(Error::ExtensionInconsistent(format!("{y} lies outside N^d")));
    }
    Ok(InducedHom {
        tensor,
        hom,
        range_band,
    })
}

/// Outcome of [`verify_universal`]; each field holds a failure description.
#[derive(Clone, Debug, Default)]
pub struct UniversalReport {
    pub precondition: Option<String>,
    pub existence: Option<String>,
    pub positivity: Option<String>,
    pub lattice_hom: Option<String>,
    pub generator_identity: Option<String>,
    pub uniqueness: Option<String>,
    pub samples: usize,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.precondition.is_none()
            && self.existence.is_none()
            && self.positivity.is_none()
            && self.lattice_hom.is_none()
            && self.generator_identity.is_none()
            && self.uniqueness.is_none()
    }
}

fn random_member<T: Scalar, R: Rng>(space: &Subspace<T>, rng: &mut R) -> FnVector<T> {
    let coords: Vec<T> = (0..space.dim()).map(|_| T::from_int(rng.gen_range(-3..=3))).collect();
    space.combine(&coords)
}

/// Existence, positivity, lattice-homomorphism property, the generator
/// identity on `samples` random simple tensors, and uniqueness: the
/// extension recomputed from two-point certificates of the same generators
/// agrees with `S` on a basis.
pub fn verify_universal<T: Scalar>(
    ta: &AlgebraHom<T>,
    tb: &AlgebraHom<T>,
    samples: usize,
    seed: u64,
    max_points: usize,
) -> Result<UniversalReport> {
    let mut report = UniversalReport {
        samples,
        ..Default::default()
    };
    if let Some((i, j)) = ta.mult_check().witness {
        report.precondition = Some(format!("T_A is not multiplicative on basis pair ({i},{j})"));
        return Ok(report);
    }
    if let Some((i, j)) = tb.mult_check().witness {
        report.precondition = Some(format!("T_B is not multiplicative on basis pair ({i},{j})"));
        return Ok(report);
    }
    let induced = match induced_tensor_hom(ta, tb, max_points) {
        Ok(s) => s,
        Err(e @ Error::PreconditionFailed(_)) => {
            report.precondition = Some(e.to_string());
            return Ok(report);
        }
        Err(e @ Error::ExtensionInconsistent(_)) => {
            report.existence = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let s = induced.hom.map();
    let pos = check_positive(s, max_points)?;
    if let Some(x) = pos.witness {
        report.positivity = Some(format!("S maps {x} ≥ 0 outside the positive cone"));
    }
    if let Some(x) = &induced.hom.lattice_check().witness {
        report.lattice_hom = Some(format!("|S{x}| ≠ S|{x}|"));
    }

    let c = ta.codomain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_member(ta.domain().carrier().space(), &mut rng);
        let b = random_member(tb.domain().carrier().space(), &mut rng);
        let lhs = s.apply(&outer(&a, &b))?;
        let rhs = c.mult(&ta.map().apply(&a)?, &tb.map().apply(&b)?)?;
        if lhs != rhs {
            report.generator_identity = Some(format!("S({a}⊗{b}) = {lhs}, expected {rhs}"));
            break;
        }
    }

    let gens = tensor_generators(ta.domain().carrier(), tb.domain().carrier());
    let leaf_images: Vec<FnVector<T>> = gens
        .iter()
        .map(|g| s.apply(g))
        .collect::<Result<_>>()?;
    let alt = two_point_closure_of(induced.tensor.points.point_set(), &gens)?;
    if alt.space() != induced.tensor.algebra.carrier().space() {
        report.uniqueness = Some("two-point certificates span a different sublattice".into());
    } else {
        let again = extend_along(&alt, &leaf_images, c.ambient().size())?;
        if let Some(i) = (0..again.len()).find(|&i| again[i] != s.images()[i]) {
            report.uniqueness = Some(format!(
                "extensions differ on basis vector {i}: {} vs {}",
                s.images()[i],
                again[i]
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::falgebra::Weight;
    use crate::hom::LatticeHom;
    use crate::vector::PointSet;
    use crate::Rational;

    fn v(xs: &[i64]) -> FnVector<Rational> {
        FnVector::from_ints(xs)
    }

    fn full(n: usize) -> Sublattice<Rational> {
        Sublattice::full(PointSet::new(n).unwrap())
    }

    fn alg(l: Sublattice<Rational>, w: &[i64]) -> FAlgebra<Rational> {
        FAlgebra::from_weight(l, &Weight::new(v(w)).unwrap()).unwrap()
    }

    fn scalar_map(a: &FAlgebra<Rational>, c: i64) -> LinearMap<Rational> {
        LinearMap::multiplication(a.carrier().space().clone(), &v(&vec![c; a.ambient().size()]))
    }

    #[test]
    fn algebra_hom_examples() {
        let a = alg(full(1), &[2]);
        let c = alg(full(1), &[1]);
        assert!(check_algebra_hom(&scalar_map(&a, 2), &a, &c).unwrap().holds);
        let id = check_algebra_hom(&scalar_map(&a, 1), &a, &c).unwrap();
        assert_eq!(id.witness, Some((0, 0)));
        let zero = LinearMap::zero(a.carrier().space().clone(), c.ambient());
        assert!(check_algebra_hom(&zero, &a, &c).unwrap().holds);

        let diag = alg(
            Sublattice::new(Subspace::from_vectors(&[v(&[1, 1])]).unwrap()).unwrap(),
            &[1, 1],
        );
        let into = LinearMap::new(a.carrier().space().clone(), diag.ambient(), vec![v(&[1, 0])]).unwrap();
        assert_eq!(
            check_algebra_hom(&into, &a, &diag).unwrap_err(),
            Error::NotIntoCodomain { basis: 0 }
        );
    }

    #[test]
    fn positively_generated_examples() {
        let s = |xs: &[FnVector<Rational>]| Subspace::from_vectors(xs).unwrap();
        assert!(positively_generated(&s(&[v(&[1, 1])]), 12).unwrap());
        assert!(!positively_generated(&s(&[v(&[1, -1])]), 12).unwrap());
        assert!(positively_generated(&Subspace::<Rational>::full(PointSet::new(2).unwrap()), 12).unwrap());
        assert!(positively_generated(&s(&[v(&[1, 1, 0]), v(&[0, 1, 1])]), 12).unwrap());
        assert!(!positively_generated(&s(&[v(&[1, -1, 0]), v(&[0, 1, -1])]), 12).unwrap());
        assert!(matches!(
            positively_generated(&Subspace::<Rational>::full(PointSet::new(5).unwrap()), 4),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn multext_cascade() {
        // X = span{(1,1,0),(0,1,1)} is positively generated and closed
        // under the zero multiplication; its closure is Q³
        let a = alg(full(3), &[0, 0, 0]);
        let x = Subspace::from_vectors(&[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let (t, _) = LatticeHom::decide(a.carrier().clone(), scalar_map(&a, 2), 12).unwrap();
        let r = check_multext(&t, &x, &a, &a, 12).unwrap();
        assert!(r.passed());
        assert_eq!(r.stages.len(), 5);

        // a sublattice X collapses to one stage
        let b = alg(full(2), &[1, 1]);
        let (id, _) = LatticeHom::decide(b.carrier().clone(), scalar_map(&b, 1), 12).unwrap();
        let r = check_multext(&id, b.carrier().space(), &b, &b, 12).unwrap();
        assert_eq!(r.stages.len(), 1);
        assert!(r.passed());

        let bare = LatticeHom::unchecked(b.carrier().clone(), scalar_map(&b, 1));
        assert!(matches!(
            check_multext(&bare, b.carrier().space(), &b, &b, 12),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn induced_scalar_example() {
        let a = alg(full(1), &[2]);
        let b = alg(full(1), &[3]);
        let c = alg(full(1), &[1]);
        let ta = AlgebraHom::new(scalar_map(&a, 2), a.clone(), c.clone(), 12).unwrap();
        let tb = AlgebraHom::new(scalar_map(&b, 3), b.clone(), c.clone(), 12).unwrap();
        let s = induced_tensor_hom(&ta, &tb, 12).unwrap();
        assert_eq!(s.hom.map().images(), &[v(&[6])]);
        assert_eq!(s.tensor.algebra.weight().unwrap().values(), &v(&[6]));
        let report = verify_universal(&ta, &tb, 20, 7, 12).unwrap();
        assert!(report.passed(), "{report:?}");

        let za = AlgebraHom::new(scalar_map(&a, 0), a.clone(), c.clone(), 12).unwrap();
        let s = induced_tensor_hom(&za, &tb, 12).unwrap();
        assert!(s.hom.map().images().iter().all(|y| y.is_zero()));

        let bad = AlgebraHom::new(scalar_map(&a, 1), a, c, 12).unwrap();
        let report = verify_universal(&bad, &tb, 5, 0, 12).unwrap();
        assert!(report.precondition.is_some());
    }

    #[test]
    fn induced_range_avoids_nilpotents() {
        // C on three points with u = (1,0,2); maps land in span{e0, e2}
        let c = alg(full(3), &[1, 0, 2]);
        let a = alg(full(1), &[1]);
        let b = alg(full(1), &[2]);
        // T_A x = λx e0 needs λ·1 = λ²·1, T_B y = μy e2 needs μ·2 = μ²·2
        let ta_map = LinearMap::new(a.carrier().space().clone(), c.ambient(), vec![v(&[1, 0, 0])]).unwrap();
        let tb_map = LinearMap::new(
            b.carrier().space().clone(),
            c.ambient(),
            vec![v(&[0, 0, 1])],
        )
        .unwrap();
        let ta = AlgebraHom::new(ta_map, a, c.clone(), 12).unwrap();
        let tb = AlgebraHom::new(tb_map, b, c.clone(), 12).unwrap();
        assert!(ta.is_multiplicative() && tb.is_multiplicative());
        let s = induced_tensor_hom(&ta, &tb, 12).unwrap();
        assert_eq!(s.range_band.basis(), &[v(&[1, 0, 0]), v(&[0, 0, 1])]);
        // e0 ∙ e2 = 0
        assert!(s.hom.map().images()[0].is_zero());
    }

    #[test]
    fn induced_identity_on_the_tensor_product() {
        let a = alg(full(2), &[1, 2]);
        let b = alg(full(2), &[3, 1]);
        let p = tensor_falgebra(&a, &b).unwrap();
        let c = p.algebra.clone();
        let ea = a.find_identity().unwrap().unwrap();
        let eb = b.find_identity().unwrap().unwrap();
        let ta_map = LinearMap::new(
            a.carrier().space().clone(),
            c.ambient(),
            a.carrier().basis().iter().map(|x| outer(x, &eb)).collect(),
        )
        .unwrap();
        let tb_map = LinearMap::new(
            b.carrier().space().clone(),
            c.ambient(),
            b.carrier().basis().iter().map(|y| outer(&ea, y)).collect(),
        )
        .unwrap();
        let ta = AlgebraHom::new(ta_map, a, c.clone(), 12).unwrap();
        let tb = AlgebraHom::new(tb_map, b, c.clone(), 12).unwrap();
        let s = induced_tensor_hom(&ta, &tb, 12).unwrap();
        assert_eq!(s.hom.map().images(), c.carrier().basis());
        assert!(verify_universal(&ta, &tb, 10, 1, 12).unwrap().passed());
    }
}
