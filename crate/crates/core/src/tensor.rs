//! Tensor products of function lattices and of f-algebras on them.
//!
//! For lattices `A` on `Σ` and `B` on `Ω` the product lives on `Σ × Ω`,
//! flattened row-major: the pair `(σ, ω)` is point `σ·|Ω| + ω`. The
//! algebraic tensor product is spanned by the simple tensors
//! `(σ, ω) ↦ a(σ) b(ω)`; the Fremlin product is the sublattice they
//! generate.

use crate::error::{Error, Result};
use crate::expr::{Evaluator, Generators};
use crate::falgebra::{FAlgebra, Weight};
use crate::lattice::{sublattice_closure_of, Sublattice};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::vector::{FnVector, PointSet};

/// `Σ × Ω` with row-major flattening.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductPointSet {
    pub left: PointSet,
    pub right: PointSet,
}

impl ProductPointSet {
    pub fn new(left: PointSet, right: PointSet) -> Self {
        ProductPointSet { left, right }
    }

    pub fn size(&self) -> usize {
        self.left.size() * self.right.size()
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::new(self.size()).expect("factors are nonempty")
    }

    pub fn index(&self, sigma: usize, omega: usize) -> usize {
        sigma * self.right.size() + omega
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        (index / self.right.size(), index % self.right.size())
    }
}

/// `(a ⊗ b)(σ, ω) = a(σ) b(ω)`.
pub fn outer<T: Scalar>(a: &FnVector<T>, b: &FnVector<T>) -> FnVector<T> {
    let mut values = Vec::with_capacity(a.len() * b.len());
    for x in a.values() {
        for y in b.values() {
            values.push(x.clone() * y.clone());
        }
    }
    FnVector::new(values)
}

/// Simple tensors of basis vectors; `outer(a_i, b_j)` sits at index
/// `i·dim B + j`.
pub fn tensor_generators<T: Scalar>(a: &Sublattice<T>, b: &Sublattice<T>) -> Vec<FnVector<T>> {
    let mut out = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            out.push(outer(x, y));
        }
    }
    out
}

pub fn product_points<T: Scalar>(a: &Sublattice<T>, b: &Sublattice<T>) -> ProductPointSet {
    ProductPointSet::new(a.ambient(), b.ambient())
}

/// `A ⊗ B`, of dimension `dim A · dim B`.
pub fn algebraic_tensor<T: Scalar>(a: &Sublattice<T>, b: &Sublattice<T>) -> Result<Subspace<T>> {
    let space = Subspace::span(product_points(a, b).point_set(), &tensor_generators(a, b))?;
    if space.dim() != a.dim() * b.dim() {
        return Err(Error::Internal("simple tensors of bases are dependent".into()));
    }
    Ok(space)
}

/// `A ⊗̄ B`, certified over [`tensor_generators`].
///
/// Simple tensors of atoms are pairwise disjoint atoms, so for sublattice
/// factors this coincides with `A ⊗ B`; the closure only adds to a
/// product of spans that are not sublattices (see [`fremlin_tensor_of`]).
pub fn fremlin_tensor<T: Scalar>(a: &Sublattice<T>, b: &Sublattice<T>) -> Result<Sublattice<T>> {
    sublattice_closure_of(product_points(a, b).point_set(), &tensor_generators(a, b))
}

/// The sublattice generated by `outer(x_i, y_j)`, certified over those
/// products in order `i·|ys| + j`.
pub fn fremlin_tensor_of<T: Scalar>(
    left: PointSet,
    xs: &[FnVector<T>],
    right: PointSet,
    ys: &[FnVector<T>],
) -> Result<Sublattice<T>> {
    let mut gens = Vec::with_capacity(xs.len() * ys.len());
    for x in xs {
        if x.len() != left.size() {
            return Err(Error::MixedAmbient { expected: left.size(), found: x.len() });
        }
        for y in ys {
            if y.len() != right.size() {
                return Err(Error::MixedAmbient { expected: right.size(), found: y.len() });
            }
            gens.push(outer(x, y));
        }
    }
    sublattice_closure_of(ProductPointSet::new(left, right).point_set(), &gens)
}

/// `u(σ, ω) = v(σ) w(ω)`.
pub fn tensor_weight<T: Scalar>(v: &Weight<T>, w: &Weight<T>) -> Weight<T> {
    Weight::new(outer(v.values(), w.values())).expect("products of nonnegative weights")
}

/// The product algebra together with its factors.
#[derive(Clone, Debug)]
pub struct TensorAlgebra<T> {
    pub left: FAlgebra<T>,
    pub right: FAlgebra<T>,
    pub points: ProductPointSet,
    /// Multiplication on `A ⊗̄ B`; the carrier keeps its closure
    /// certificates.
    pub algebra: FAlgebra<T>,
}

/// The f-algebra multiplication on `A ⊗̄ B` extending
/// `(a ⊗ b)(a' ⊗ b') = (a ⋆ a') ⊗ (b ∙ b')`.
///
/// Closure of the carrier under the product weight and the identity on
/// simple tensors of basis vectors are both checked; a failure is an
/// internal error.
pub fn tensor_falgebra<T: Scalar>(a: &FAlgebra<T>, b: &FAlgebra<T>) -> Result<TensorAlgebra<T>> {
    let v = a.require_weight()?;
    let w = b.require_weight()?;
    let carrier = fremlin_tensor(a.carrier(), b.carrier())?;
    let u = tensor_weight(v, w);
    let algebra = FAlgebra::from_weight(carrier, &u).map_err(|e| match e {
        Error::NotClosed { i, j } => Error::Internal(format!("tensor carrier not closed on basis pair ({i},{j})")),
        e => e,
    })?;
    let (ab, bb) = (a.carrier().basis(), b.carrier().basis());
    for (i, x) in ab.iter().enumerate() {
        for y in &ab[i..] {
            let xy = a.mult(x, y)?;
            for s in bb {
                for t in bb {
                    let lhs = algebra.mult(&outer(x, s), &outer(y, t))?;
                    if lhs != outer(&xy, &b.mult(s, t)?) {
                        return Err(Error::Internal("product disagrees on simple tensors".into()));
                    }
                }
            }
        }
    }
    Ok(TensorAlgebra {
        left: a.clone(),
        right: b.clone(),
        points: product_points(a.carrier(), b.carrier()),
        algebra,
    })
}

/// Products of the echelon basis of `carrier` recomputed from the products
/// of simple tensors alone.
///
/// `simple_mult` is called only on pairs of generators `outer(a_i, b_j)`.
/// Everything else follows from bilinearity, commutativity and the fact
/// that multiplication by a positive element is a lattice homomorphism,
/// applied along the certificates of `carrier`:
///
/// 1. for positive simple tensors `p` of atoms and every expression `e`,
///    `p ⋆ e` is evaluated by replacing each leaf `g_k` with `p ⋆ g_k`;
/// 2. for `q = h^±` with `h` a basis vector, `q ⋆ g_k` is a combination of
///    the values from step 1, and `h' ⋆ q` is evaluated along the
///    expression of `h'` with leaves `q ⋆ g_k`;
/// 3. `h' ⋆ h = h' ⋆ h^+ − h' ⋆ h^-`.
pub fn reconstruct_mult<T, F>(
    carrier: &Sublattice<T>,
    left: &Sublattice<T>,
    right: &Sublattice<T>,
    mut simple_mult: F,
) -> Result<Vec<Vec<FnVector<T>>>>
where
    T: Scalar,
    F: FnMut(&FnVector<T>, &FnVector<T>) -> Result<FnVector<T>>,
{
    let certs = carrier.certificates().ok_or(Error::CertificatesMissing)?;
    let gens = certs.generators();
    if gens != tensor_generators(left, right).as_slice() {
        return Err(Error::PreconditionFailed(
            "certificates are not over the simple tensors of the factor bases".into(),
        ));
    }
    let n = carrier.ambient().size();
    let kb = right.dim();
    let mut g_table = Vec::with_capacity(gens.len());
    for x in gens {
        let row = gens.iter().map(|y| simple_mult(x, y)).collect::<Result<Vec<_>>>()?;
        g_table.push(row);
    }

    // atom coordinates: atom_r = Σ_i c[r][i] a_i
    let atom_coords = |s: &Sublattice<T>| -> Vec<Vec<T>> {
        s.atoms()
            .iter()
            .map(|a| s.space().coordinates(&a.vector).expect("atoms are members"))
            .collect()
    };
    // basis vectors in atom coordinates: a_i = Σ_r a_i(first point of r) atom_r
    let basis_in_atoms = |s: &Sublattice<T>| -> Vec<Vec<T>> {
        let atoms = s.atoms();
        s.basis()
            .iter()
            .map(|b| atoms.iter().map(|a| b[a.points[0]].clone()).collect())
            .collect()
    };
    let (ca, cb) = (atom_coords(left), atom_coords(right));
    let (ba, bb) = (basis_in_atoms(left), basis_in_atoms(right));
    let nb = cb.len();

    // step 1: p ⋆ g_k for positive simple tensors p = atom_r ⊗ atom_s
    let mut positive_evals = Vec::with_capacity(ca.len() * nb);
    for ar in &ca {
        for bs in &cb {
            let mut pg = vec![FnVector::zeros(n); gens.len()];
            for (i, x) in ar.iter().enumerate() {
                for (j, y) in bs.iter().enumerate() {
                    let c = x.clone() * y.clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (k, slot) in pg.iter_mut().enumerate() {
                        *slot = &*slot + &g_table[i * kb + j][k].scale(&c);
                    }
                }
            }
            positive_evals.push(pg);
        }
    }
    let mut evaluators: Vec<_> = positive_evals.iter().map(|pg| Evaluator::new(Generators(pg), n)).collect();

    // g_k = Σ_{r,s} ba[i][r] bb[j][s] (atom_r ⊗ atom_s)
    let gen_in_positive = |k: usize| -> Vec<(usize, T)> {
        let (i, j) = (k / kb, k % kb);
        let mut out = Vec::new();
        for (r, x) in ba[i].iter().enumerate() {
            for (s, y) in bb[j].iter().enumerate() {
                let c = x.clone() * y.clone();
                if !c.is_zero() {
                    out.push((r * nb + s, c));
                }
            }
        }
        out
    };

    let exprs = certs.exprs();
    let dim = carrier.dim();
    let mut table = vec![vec![FnVector::zeros(n); dim]; dim];
    for (col, e) in exprs.iter().enumerate() {
        let parts = [e.positive_part(), e.neg().positive_part()];
        let mut halves = Vec::with_capacity(2);
        for q in &parts {
            // step 2: q ⋆ g_k = g_k ⋆ q
            let mut pq = Vec::with_capacity(evaluators.len());
            for ev in evaluators.iter_mut() {
                pq.push(ev.eval(q)?);
            }
            let qg: Vec<FnVector<T>> = (0..gens.len())
                .map(|k| {
                    gen_in_positive(k)
                        .into_iter()
                        .fold(FnVector::zeros(n), |acc, (p, c)| &acc + &pq[p].scale(&c))
                })
                .collect();
            let mut ev = Evaluator::new(Generators(&qg), n);
            let row = exprs.iter().map(|h| ev.eval(h)).collect::<Result<Vec<_>>>()?;
            halves.push(row);
        }
        for row in 0..dim {
            table[row][col] = &halves[0][row] - &halves[1][row];
        }
    }
    Ok(table)
}

/// [`reconstruct_mult`] for the product algebra, using its own
/// multiplication on simple tensors.
pub fn reconstruct_mult_from_generators<T: Scalar>(t: &TensorAlgebra<T>) -> Result<Vec<Vec<FnVector<T>>>> {
    reconstruct_mult(t.algebra.carrier(), t.left.carrier(), t.right.carrier(), |x, y| {
        t.algebra.mult(x, y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::two_point_closure_of;
    use crate::Rational;

    fn v(xs: &[i64]) -> FnVector<Rational> {
        FnVector::from_ints(xs)
    }

    fn full(n: usize) -> Sublattice<Rational> {
        Sublattice::full(PointSet::new(n).unwrap())
    }

    fn span(vs: &[FnVector<Rational>]) -> Sublattice<Rational> {
        Sublattice::new(Subspace::from_vectors(vs).unwrap()).unwrap()
    }

    fn alg(l: Sublattice<Rational>, w: &[i64]) -> FAlgebra<Rational> {
        FAlgebra::from_weight(l, &Weight::new(v(w)).unwrap()).unwrap()
    }

    #[test]
    fn outer_examples() {
        assert_eq!(outer(&v(&[1, 2]), &v(&[3, 1])), v(&[3, 1, 6, 2]));
        assert!(outer(&v(&[1, 2]), &v(&[0, 0])).is_zero());
        assert_eq!(outer(&v(&[1, 0]), &v(&[1, 0])), v(&[1, 0, 0, 0]));
        let p = ProductPointSet::new(PointSet::new(2).unwrap(), PointSet::new(3).unwrap());
        assert_eq!(p.index(1, 2), 5);
        assert_eq!(p.pair(4), (1, 1));
    }

    #[test]
    fn algebraic_tensor_examples() {
        assert!(algebraic_tensor(&full(2), &full(3)).unwrap().is_full());
        assert_eq!(algebraic_tensor(&span(&[v(&[1, 1])]), &full(1)).unwrap().dim(), 1);
        let d = span(&[v(&[1, 1])]);
        assert_eq!(algebraic_tensor(&d, &d).unwrap().dim(), 1);
    }

    #[test]
    fn fremlin_tensor_examples() {
        assert!(fremlin_tensor(&full(2), &full(3)).unwrap().space().is_full());
        let d = span(&[v(&[1, 1])]);
        let t = fremlin_tensor(&d, &d).unwrap();
        assert_eq!(t.basis(), &[v(&[1, 1, 1, 1])]);
        // generators spanning a non-lattice subspace: the closure grows
        let one = PointSet::new(1).unwrap();
        let t = fremlin_tensor_of(PointSet::new(3).unwrap(), &[v(&[1, 1, 0]), v(&[0, 1, 1])], one, &[v(&[1])]).unwrap();
        assert_eq!(t.dim(), 3);
        t.verify_certificates().unwrap();
    }

    #[test]
    fn tensor_weight_examples() {
        let a = Weight::new(v(&[1, 2])).unwrap();
        let b = Weight::new(v(&[3, 1])).unwrap();
        assert_eq!(tensor_weight(&a, &b).values(), &v(&[3, 1, 6, 2]));
        assert!(tensor_weight(&Weight::zero(2), &b).values().is_zero());
    }

    #[test]
    fn tensor_falgebra_examples() {
        let t = tensor_falgebra(&alg(full(2), &[1, 2]), &alg(full(2), &[3, 1])).unwrap();
        assert!(t.algebra.carrier().space().is_full());
        assert_eq!(t.algebra.weight().unwrap().values(), &v(&[3, 1, 6, 2]));
        let e = t.algebra.find_identity().unwrap().unwrap();
        let r = |n, d| Rational::from_frac(n, d);
        assert_eq!(e, FnVector::new(vec![r(1, 3), r(1, 1), r(1, 6), r(1, 2)]));

        let z = tensor_falgebra(&alg(full(2), &[0, 0]), &alg(full(2), &[3, 1])).unwrap();
        assert!(z.algebra.table().iter().flatten().all(|x| x.is_zero()));

        let unverified = alg(full(2), &[1, 2]).to_table_form();
        assert_eq!(
            tensor_falgebra(&unverified, &alg(full(1), &[1])).unwrap_err(),
            Error::NotVerified
        );
    }

    #[test]
    fn reconstruction_matches_weight_form() {
        let cases = [
            (alg(full(2), &[1, 2]), alg(full(2), &[3, 1])),
            (alg(full(2), &[0, 0]), alg(full(2), &[3, 1])),
            (alg(full(1), &[2]), alg(full(1), &[3])),
            (alg(span(&[v(&[1, 1, 0]), v(&[0, 0, 1])]), &[2, 2, 0]), alg(span(&[v(&[1, 2])]), &[2, 1])),
        ];
        for (a, b) in cases {
            let t = tensor_falgebra(&a, &b).unwrap();
            assert_eq!(reconstruct_mult_from_generators(&t).unwrap(), t.algebra.table());
        }
    }

    #[test]
    fn reconstruction_along_two_point_certificates() {
        let a = span(&[v(&[1, 2, 0]), v(&[0, 0, 1])]);
        let fa = alg(a, &[2, 1, 3]);
        let fb = alg(full(2), &[1, 4]);
        let t = tensor_falgebra(&fa, &fb).unwrap();
        assert_eq!(reconstruct_mult_from_generators(&t).unwrap(), t.algebra.table());

        // atoms built from two-point matches carry genuine sup/inf nodes
        let gens = tensor_generators(fa.carrier(), fb.carrier());
        let alt = two_point_closure_of(t.points.point_set(), &gens).unwrap();
        alt.verify_certificates().unwrap();
        assert_eq!(alt.space(), t.algebra.carrier().space());
        let table = reconstruct_mult(&alt, fa.carrier(), fb.carrier(), |x, y| t.algebra.mult(x, y)).unwrap();
        assert_eq!(table, t.algebra.table());
    }

    #[test]
    fn reconstruction_needs_certificates() {
        let t = tensor_falgebra(&alg(full(1), &[2]), &alg(full(1), &[3])).unwrap();
        let bare = t.algebra.carrier().clone().without_certificates();
        assert_eq!(
            reconstruct_mult(&bare, t.left.carrier(), t.right.carrier(), |x, y| t.algebra.mult(x, y)).unwrap_err(),
            Error::CertificatesMissing
        );
    }
}
