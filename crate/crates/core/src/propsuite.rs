//! Random instance generators and the executable property suite.
//!
//! Every property draws from its own ChaCha stream derived from the
//! configured seed, so reports are reproducible and independent of the
//! order in which properties run.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::falgebra::{
    band_complement, extract_orthomorphism_weight, extract_partial_weight, restrict_to_support, verify_falgebra,
    FAlgebra, Weight,
};
use crate::hom::{LinearMap, DEFAULT_MAX_POINTS};
use crate::lattice::{
    generated_dimension, is_sublattice, member_two_point, sublattice_closure, two_point_closure_of, Sublattice,
};
use crate::morphisms::{induced_tensor_hom, verify_universal, AlgebraHom};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::tensor::{outer, reconstruct_mult, reconstruct_mult_from_generators, tensor_falgebra, tensor_generators};
use crate::vector::{FnVector, PointSet};
use crate::Rational;

type Q = Rational;
type V = FnVector<Rational>;

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub seed: u64,
    /// Points per factor.
    pub max_points: usize,
    pub max_dim: usize,
    /// Chance that a weight entry (or a whole atom class) is zero.
    pub weight_zero_probability: Ratio<u32>,
    /// Instances for P1–P4 and P7.
    pub instance_count: usize,
    /// Instances for the costlier P5, P6 and P8.
    pub heavy_instance_count: usize,
    pub mutation_trials: usize,
    /// Replace the algebras checked by P2 and P5 with perturbed tables.
    pub inject_mutation: bool,
    /// Bound on points for sign-cell enumeration.
    pub max_cell_points: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0x5eed,
            max_points: 4,
            max_dim: 4,
            weight_zero_probability: Ratio::new(1, 4),
            instance_count: 200,
            heavy_instance_count: 100,
            mutation_trials: 50,
            inject_mutation: false,
            max_cell_points: DEFAULT_MAX_POINTS,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Default::default()
        }
    }

    /// A reproducible stream for the property or generator named `tag`.
    pub fn rng(&self, tag: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(tag);
        rng
    }

    fn zero_chance<R: Rng>(&self, rng: &mut R) -> bool {
        let p = self.weight_zero_probability;
        let (n, d) = (*p.numer(), *p.denom());
        n >= d || (n > 0 && rng.gen_ratio(n, d))
    }
}

fn small<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Q {
    Q::from_int(rng.gen_range(lo..=hi))
}

fn positive_scalar<R: Rng>(rng: &mut R) -> Q {
    Q::from_frac(rng.gen_range(1..=4), rng.gen_range(1..=2))
}

fn random_vector<R: Rng>(n: usize, lo: i64, hi: i64, rng: &mut R) -> V {
    FnVector::new((0..n).map(|_| small(rng, lo, hi)).collect())
}

fn random_member<R: Rng>(space: &Subspace<Q>, rng: &mut R) -> V {
    let coords: Vec<Q> = (0..space.dim()).map(|_| small(rng, -3, 3)).collect();
    space.combine(&coords)
}

fn nonneg_combination<R: Rng>(n: usize, vectors: &[V], rng: &mut R) -> V {
    let coeffs: Vec<Q> = vectors.iter().map(|_| small(rng, 0, 3)).collect();
    FnVector::combination(n, &coeffs, vectors)
}

fn atom_vectors(l: &Sublattice<Q>) -> Vec<V> {
    l.atoms().into_iter().map(|a| a.vector).collect()
}

/// A sublattice spanned by disjoint positive atoms on a random subset of
/// the points, never the full space.
fn proper_sublattice<R: Rng>(cfg: &GenConfig, n: usize, rng: &mut R) -> Sublattice<Q> {
    let mut kept: Vec<usize> = (0..n).filter(|_| rng.gen_ratio(3, 4)).collect();
    kept.shuffle(rng);
    if kept.is_empty() {
        return Sublattice::zero(PointSet::new(n).expect("n > 0"));
    }
    let mut classes = rng.gen_range(1..=kept.len().min(cfg.max_dim));
    if kept.len() == n && classes == n {
        if n == 1 {
            return Sublattice::zero(PointSet::new(1).expect("n > 0"));
        }
        classes = n - 1;
    }
    let mut atoms = vec![vec![Q::from_int(0); n]; classes];
    for (i, &p) in kept.iter().enumerate() {
        let c = if i < classes { i } else { rng.gen_range(0..classes) };
        atoms[c][p] = positive_scalar(rng);
    }
    let atoms: Vec<V> = atoms.into_iter().map(FnVector::new).collect();
    let space = Subspace::span(PointSet::new(n).expect("n > 0"), &atoms).expect("same ambient");
    Sublattice::new(space).expect("disjoint nonnegative vectors span a sublattice")
}

/// A random sublattice on `n` points: half the time a proper one built from
/// atoms, otherwise the closure of a few random vectors.
pub fn gen_sublattice_on<R: Rng>(cfg: &GenConfig, n: usize, rng: &mut R) -> Sublattice<Q> {
    if rng.gen_bool(0.5) {
        proper_sublattice(cfg, n, rng)
    } else {
        let k = rng.gen_range(1..=cfg.max_dim.min(n));
        let vs: Vec<V> = (0..k).map(|_| random_vector(n, -2, 2, rng)).collect();
        sublattice_closure(&Subspace::span(PointSet::new(n).expect("n > 0"), &vs).expect("same ambient"))
    }
}

pub fn gen_sublattice<R: Rng>(cfg: &GenConfig, rng: &mut R) -> Sublattice<Q> {
    let n = rng.gen_range(1..=cfg.max_points);
    gen_sublattice_on(cfg, n, rng)
}

/// How the weight of a generated algebra is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// Independent entries, falling back to a class-compatible weight when
    /// products leave the carrier.
    Random,
    /// Positive on every class: semi-prime with an identity.
    Positive,
    /// Zero on at least one class of a nonzero carrier.
    Nilpotent,
}

/// `w = c_R / u_R` on each atom class, with class constants `c`.
fn compatible_weight<R: Rng>(l: &Sublattice<Q>, constants: &[Q], rng: &mut R) -> V {
    let n = l.ambient().size();
    let mut w: Vec<Q> = (0..n).map(|_| small(rng, 0, 3)).collect();
    for (atom, c) in l.atoms().iter().zip(constants) {
        for &p in &atom.points {
            w[p] = c.clone() / atom.vector[p].clone();
        }
    }
    FnVector::new(w)
}

/// A verified algebra on `l` and the weight it was built from (before
/// canonicalization).
pub fn gen_weight_algebra<R: Rng>(
    cfg: &GenConfig,
    l: Sublattice<Q>,
    mode: WeightMode,
    rng: &mut R,
) -> (FAlgebra<Q>, Weight<Q>) {
    let n = l.ambient().size();
    if mode == WeightMode::Random {
        for _ in 0..8 {
            let w: V = FnVector::new(
                (0..n)
                    .map(|_| {
                        if cfg.zero_chance(rng) {
                            Q::from_int(0)
                        } else {
                            positive_scalar(rng)
                        }
                    })
                    .collect(),
            );
            let w = Weight::new(w).expect("nonnegative");
            if let Ok(a) = FAlgebra::from_weight(l.clone(), &w) {
                return (a, w);
            }
        }
    }
    let classes = l.atoms().len();
    let forced = match mode {
        WeightMode::Nilpotent if classes > 0 => Some(rng.gen_range(0..classes)),
        _ => None,
    };
    let constants: Vec<Q> = (0..classes)
        .map(|r| {
            let zero = match mode {
                WeightMode::Positive => false,
                WeightMode::Nilpotent => Some(r) == forced || cfg.zero_chance(rng),
                WeightMode::Random => cfg.zero_chance(rng),
            };
            if zero {
                Q::from_int(0)
            } else {
                positive_scalar(rng)
            }
        })
        .collect();
    let w = Weight::new(compatible_weight(&l, &constants, rng)).expect("nonnegative");
    let a = FAlgebra::from_weight(l, &w).expect("compatible weights are closed");
    (a, w)
}

/// A random verified algebra and its planted weight.
pub fn gen_falgebra<R: Rng>(cfg: &GenConfig, rng: &mut R) -> (FAlgebra<Q>, Weight<Q>) {
    let l = gen_sublattice(cfg, rng);
    gen_weight_algebra(cfg, l, WeightMode::Random, rng)
}

/// Like [`gen_falgebra`] on a nonzero carrier with `n ≤ max_points` points.
pub fn gen_nonzero_falgebra<R: Rng>(
    cfg: &GenConfig,
    max_points: usize,
    mode: WeightMode,
    rng: &mut R,
) -> (FAlgebra<Q>, Weight<Q>) {
    loop {
        let n = rng.gen_range(1..=max_points);
        let l = gen_sublattice_on(cfg, n, rng);
        if l.dim() > 0 {
            return gen_weight_algebra(cfg, l, mode, rng);
        }
    }
}

/// The table of `alg` with one entry raised by `+1` at a point of `Υ`.
///
/// The perturbation adds the atom through that point, scaled to one there,
/// so the entry stays in the carrier. Returns `None` for a zero carrier.
pub fn perturb_table<R: Rng>(alg: &FAlgebra<Q>, rng: &mut R) -> Option<(FAlgebra<Q>, (usize, usize, usize))> {
    let k = alg.dim();
    if k == 0 {
        return None;
    }
    let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
    let atoms = alg.carrier().atoms();
    let atom = atoms.choose(rng)?;
    let point = *atom.points.choose(rng)?;
    let bump = atom.vector.scale(&(Q::from_int(1) / atom.vector[point].clone()));
    let mut table = alg.table();
    table[i][j] = &table[i][j] + &bump;
    let mutated = FAlgebra::from_table(alg.carrier().clone(), table).ok()?;
    Some((mutated, (i, j, point)))
}

/// Pass/fail tally for one property.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub id: String,
    pub description: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
    /// Set when no instance ran, so a pass carries no evidence.
    pub no_evidence: bool,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// How often the generators hit the interesting cases.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Coverage {
    pub proper_sublattices: usize,
    pub closure_growth: usize,
    pub non_semi_prime: usize,
    pub identity_bearing: usize,
    pub nilpotent_codomains: usize,
}

impl Coverage {
    pub fn all_nonzero(&self) -> bool {
        self.proper_sublattices > 0
            && self.closure_growth > 0
            && self.non_semi_prime > 0
            && self.identity_bearing > 0
            && self.nilpotent_codomains > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub mutation_injected: bool,
    pub properties: Vec<PropertyOutcome>,
    pub mutation: PropertyOutcome,
    pub coverage: Coverage,
}

impl SuiteReport {
    /// Every property passed on at least one instance and every coverage
    /// counter is nonzero.
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.ok() && !p.no_evidence)
            && self.mutation.ok()
            && !self.mutation.no_evidence
            && self.coverage.all_nonzero()
    }

    pub fn property(&self, id: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.id == id)
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("unexpected error: {e}"))
}

fn run_property(
    cfg: &GenConfig,
    tag: u64,
    id: &str,
    description: &str,
    count: usize,
    mut instance: impl FnMut(&mut ChaCha8Rng) -> Check,
) -> PropertyOutcome {
    let mut rng = cfg.rng(tag);
    let mut out = PropertyOutcome {
        id: id.to_string(),
        description: description.to_string(),
        instances: count,
        passed: 0,
        failed: 0,
        first_counterexample: None,
        no_evidence: count == 0,
    };
    for k in 0..count {
        match instance(&mut rng) {
            Ok(()) => out.passed += 1,
            Err(msg) => {
                out.failed += 1;
                if out.first_counterexample.is_none() {
                    out.first_counterexample = Some(format!("instance {k}: {msg}"));
                }
            }
        }
    }
    out
}

/// Iterates `X ↦ span{ x^+ : x a {-1,0,1}-combination of a basis of X }`
/// until the dimension stops growing.
pub fn brute_force_closure(x: &Subspace<Q>) -> Subspace<Q> {
    let mut space = x.clone();
    loop {
        let b = space.basis().to_vec();
        let mut vs = b.clone();
        let k = b.len();
        let mut coeffs = vec![-1i64; k];
        'grid: loop {
            let c: Vec<Q> = coeffs.iter().map(|&x| Q::from_int(x)).collect();
            vs.push(FnVector::combination(space.ambient().size(), &c, &b).positive_part());
            for d in coeffs.iter_mut() {
                if *d < 1 {
                    *d += 1;
                    continue 'grid;
                }
                *d = -1;
            }
            break;
        }
        let next = Subspace::span(space.ambient(), &vs).expect("same ambient");
        if next.dim() == space.dim() {
            return space;
        }
        space = next;
    }
}

fn p1(cfg: &GenConfig, cov: &mut Coverage) -> PropertyOutcome {
    run_property(
        cfg,
        1,
        "P1",
        "closure membership agrees with the two-point oracle and brute-force closure",
        cfg.instance_count,
        |rng| {
            let n = rng.gen_range(1..=6);
            let k = rng.gen_range(1..=n.min(4));
            let gens: Vec<V> = (0..k).map(|_| random_vector(n, -2, 2, rng)).collect();
            let x = lib(Subspace::span(PointSet::new(n).expect("n > 0"), &gens))?;
            let closure = sublattice_closure(&x);
            lib(closure.verify_certificates())?;
            if closure.dim() > x.dim() {
                cov.closure_growth += 1;
            }
            ensure(closure.dim() == generated_dimension(&x), || {
                format!("closure of dimension {} but {} point classes", closure.dim(), generated_dimension(&x))
            })?;
            ensure(is_sublattice(closure.space()), || "closure is not a sublattice".into())?;
            let brute = brute_force_closure(&x);
            ensure(&brute == closure.space(), || {
                format!("brute-force closure has dimension {}, computed {}", brute.dim(), closure.dim())
            })?;
            for _ in 0..50 {
                let probe = match rng.gen_range(0..3) {
                    0 => random_vector(n, -3, 3, rng),
                    1 => random_member(closure.space(), rng),
                    _ => {
                        let mut v = random_member(closure.space(), rng).into_values();
                        let p = rng.gen_range(0..n);
                        v[p] = v[p].clone() + Q::from_int(1);
                        FnVector::new(v)
                    }
                };
                let (a, b) = (closure.contains(&probe), member_two_point(&x, &probe));
                ensure(a == b, || format!("probe {probe}: closure says {a}, two-point test says {b}"))?;
            }
            Ok(())
        },
    )
}

fn p2(cfg: &GenConfig, cov: &mut Coverage) -> PropertyOutcome {
    run_property(
        cfg,
        2,
        "P2",
        "extracting the weight of a weight-built algebra returns the weight on Υ",
        cfg.instance_count,
        |rng| {
            let (alg, planted) = gen_falgebra(cfg, rng);
            if !alg.carrier().space().is_full() {
                cov.proper_sublattices += 1;
            }
            let mut table = alg.to_table_form();
            let mut note = String::new();
            if cfg.inject_mutation {
                if let Some((m, (i, j, p))) = perturb_table(&alg, rng) {
                    table = m;
                    note = format!(" (entry ({i},{j}) raised at point {p})");
                }
            }
            let expected = planted.canonical_on(&alg.carrier().upsilon());
            match table.extract_weight() {
                Ok(w) => ensure(w == expected, || {
                    format!("extracted {} but planted {}{note}", w.values(), expected.values())
                }),
                Err(e) => Err(format!("{e}{note}")),
            }
        },
    )
}

fn p3(cfg: &GenConfig, cov: &mut Coverage) -> PropertyOutcome {
    run_property(
        cfg,
        3,
        "P3",
        "the tensor product is semi-prime iff both factors are",
        cfg.instance_count,
        |rng| {
            let factor = |rng: &mut ChaCha8Rng| {
                let mode = if rng.gen_ratio(1, 3) {
                    WeightMode::Nilpotent
                } else {
                    WeightMode::Random
                };
                gen_nonzero_falgebra(cfg, cfg.max_points, mode, rng).0
            };
            let (a, b) = (factor(rng), factor(rng));
            let t = lib(tensor_falgebra(&a, &b))?;
            let (sa, sb) = (lib(a.is_semi_prime())?, lib(b.is_semi_prime())?);
            let st = lib(t.algebra.is_semi_prime())?;
            if !sa || !sb {
                cov.non_semi_prime += 1;
            }
            ensure(st == (sa && sb), || format!("factors semi-prime: {sa}, {sb}; product: {st}"))
        },
    )
}

fn p4(cfg: &GenConfig, cov: &mut Coverage) -> PropertyOutcome {
    run_property(
        cfg,
        4,
        "P4",
        "the tensor product has an identity iff both factors do, namely e_A ⊗ e_B = 1/(v·w)",
        cfg.instance_count,
        |rng| {
            let factor = |rng: &mut ChaCha8Rng| {
                let mode = if rng.gen_bool(0.5) {
                    WeightMode::Positive
                } else {
                    WeightMode::Random
                };
                gen_nonzero_falgebra(cfg, cfg.max_points, mode, rng).0
            };
            let (a, b) = (factor(rng), factor(rng));
            let t = lib(tensor_falgebra(&a, &b))?;
            let (ea, eb) = (lib(a.find_identity())?, lib(b.find_identity())?);
            let et = lib(t.algebra.find_identity())?;
            ensure(et.is_some() == (ea.is_some() && eb.is_some()), || {
                format!(
                    "identities: A {}, B {}, product {}",
                    ea.is_some(),
                    eb.is_some(),
                    et.is_some()
                )
            })?;
            if let (Some(ea), Some(eb), Some(et)) = (ea, eb, et) {
                cov.identity_bearing += 1;
                let expected = outer(&ea, &eb);
                ensure(et == expected, || format!("identity {et}, expected {expected}"))?;
                let u = outer(
                    a.weight().expect("verified").values(),
                    b.weight().expect("verified").values(),
                );
                let upsilon = t.algebra.carrier().upsilon();
                for p in 0..et.len() {
                    let want = if upsilon.contains(&p) {
                        Q::from_int(1) / u[p].clone()
                    } else {
                        Q::from_int(0)
                    };
                    ensure(et[p] == want, || format!("identity at point {p} is {}, expected {want}", et[p]))?;
                }
            }
            Ok(())
        },
    )
}

fn weight_form_table(carrier: &Sublattice<Q>, u: &V) -> Vec<Vec<V>> {
    let b = carrier.basis();
    b.iter()
        .map(|x| b.iter().map(|y| u.hadamard(x).hadamard(y)).collect())
        .collect()
}

fn p5(cfg: &GenConfig) -> PropertyOutcome {
    run_property(
        cfg,
        5,
        "P5",
        "the product multiplication is recovered from simple tensors along both certificate sets",
        cfg.heavy_instance_count,
        |rng| {
            let (a, _) = gen_falgebra(cfg, rng);
            let (b, _) = gen_falgebra(cfg, rng);
            let mut t = lib(tensor_falgebra(&a, &b))?;
            let u = outer(
                a.weight().expect("verified").values(),
                b.weight().expect("verified").values(),
            );
            let expected = weight_form_table(t.algebra.carrier(), &u);
            let mut note = String::new();
            if cfg.inject_mutation {
                if let Some((m, (i, j, p))) = perturb_table(&t.algebra, rng) {
                    t.algebra = m;
                    note = format!(" (entry ({i},{j}) raised at point {p})");
                }
            }
            let rebuilt = lib(reconstruct_mult_from_generators(&t))?;
            ensure(rebuilt == expected, || format!("reconstruction from closure certificates differs{note}"))?;
            let gens = tensor_generators(a.carrier(), b.carrier());
            let alt = lib(two_point_closure_of(t.points.point_set(), &gens))?;
            let rebuilt = lib(reconstruct_mult(&alt, a.carrier(), b.carrier(), |x, y| t.algebra.mult(x, y)))?;
            ensure(rebuilt == expected, || format!("reconstruction from two-point certificates differs{note}"))
        },
    )
}

/// A multiplicative composition map `(Tx)(γ) = λ_γ x(φ(γ))` from `a` into
/// the full algebra on `Γ` with weight `u`; returns the map data.
fn composition_hom<R: Rng>(a: &FAlgebra<Q>, u: &V, rng: &mut R) -> Vec<Option<(usize, Q)>> {
    let n = a.ambient().size();
    let v = a.weight().expect("verified").values();
    let upsilon = a.carrier().upsilon();
    (0..u.len())
        .map(|g| {
            if rng.gen_ratio(1, 4) {
                return None;
            }
            let s = rng.gen_range(0..n);
            // λ v(s) = λ² u(γ) wherever the carrier lives at s
            let lambda = if !upsilon.contains(&s) {
                small(rng, 0, 3)
            } else if !u[g].is_zero() {
                if rng.gen_ratio(3, 4) {
                    v[s].clone() / u[g].clone()
                } else {
                    Q::from_int(0)
                }
            } else if v[s].is_zero() {
                small(rng, 0, 3)
            } else {
                Q::from_int(0)
            };
            Some((s, lambda))
        })
        .collect()
}

fn apply_composition(data: &[Option<(usize, Q)>], x: &V) -> V {
    FnVector::new(
        data.iter()
            .map(|d| match d {
                Some((s, l)) => l.clone() * x[*s].clone(),
                None => Q::from_int(0),
            })
            .collect(),
    )
}

fn p6(cfg: &GenConfig, cov: &mut Coverage) -> PropertyOutcome {
    run_property(
        cfg,
        6,
        "P6",
        "the induced map on the tensor product exists, is unique and is a lattice and algebra homomorphism into N^d",
        cfg.heavy_instance_count,
        |rng| {
            let (a, _) = gen_nonzero_falgebra(cfg, 3.min(cfg.max_points), WeightMode::Random, rng);
            let (b, _) = gen_nonzero_falgebra(cfg, 2.min(cfg.max_points), WeightMode::Random, rng);
            let gamma = rng.gen_range(1..=3);
            let c_lattice = Sublattice::full(PointSet::new(gamma).expect("γ > 0"));
            let (c, _) = gen_weight_algebra(cfg, c_lattice, WeightMode::Random, rng);
            let u = c.weight().expect("verified").values().clone();
            if u.values().iter().any(|x| x.is_zero()) {
                cov.nilpotent_codomains += 1;
            }
            let (da, db) = (composition_hom(&a, &u, rng), composition_hom(&b, &u, rng));
            let ta_map = lib(LinearMap::new(
                a.carrier().space().clone(),
                c.ambient(),
                a.carrier().basis().iter().map(|x| apply_composition(&da, x)).collect(),
            ))?;
            let tb_map = lib(LinearMap::new(
                b.carrier().space().clone(),
                c.ambient(),
                b.carrier().basis().iter().map(|y| apply_composition(&db, y)).collect(),
            ))?;
            let ta = lib(AlgebraHom::new(ta_map, a.clone(), c.clone(), cfg.max_cell_points))?;
            let tb = lib(AlgebraHom::new(tb_map, b.clone(), c.clone(), cfg.max_cell_points))?;
            ensure(ta.is_multiplicative() && tb.is_multiplicative(), || {
                "constructed inputs are not multiplicative".into()
            })?;
            let s = lib(induced_tensor_hom(&ta, &tb, cfg.max_cell_points))?;
            ensure(s.hom.is_lattice_hom() && s.hom.is_multiplicative(), || "S lost a property".into())?;
            // S(x)(γ) = u(γ) λ_A(γ) λ_B(γ) x(φ_A γ, φ_B γ)
            let m = b.ambient().size();
            for (h, img) in s.tensor.algebra.carrier().basis().iter().zip(s.hom.map().images()) {
                let want: V = FnVector::new(
                    (0..gamma)
                        .map(|g| match (&da[g], &db[g]) {
                            (Some((sa, la)), Some((sb, lb))) => {
                                u[g].clone() * la.clone() * lb.clone() * h[sa * m + sb].clone()
                            }
                            _ => Q::from_int(0),
                        })
                        .collect(),
                );
                ensure(&want == img, || format!("S maps {h} to {img}, composition oracle gives {want}"))?;
                ensure(s.range_band.contains(img), || format!("S({h}) = {img} leaves N^d"))?;
            }
            let report = lib(verify_universal(&ta, &tb, 10, rng.gen(), cfg.max_cell_points))?;
            ensure(report.passed(), || format!("{report:?}"))
        },
    )
}

fn p7(cfg: &GenConfig) -> PropertyOutcome {
    run_property(
        cfg,
        7,
        "P7",
        "generated algebras satisfy the f-algebra axioms and products lie in N^d",
        cfg.instance_count,
        |rng| {
            let (alg, _) = gen_falgebra(cfg, rng);
            let report = lib(verify_falgebra(&alg.to_table_form()))?;
            ensure(report.passed(), || format!("{report:?}"))?;
            let n = alg.ambient().size();
            let atoms = atom_vectors(alg.carrier());
            let band = lib(alg.nilpotent_band())?;
            let nd = lib(band_complement(alg.carrier(), &band))?;
            for _ in 0..5 {
                let (x, y) = (nonneg_combination(n, &atoms, rng), nonneg_combination(n, &atoms, rng));
                let xy = lib(alg.mult(&x, &y))?;
                ensure(xy.is_nonnegative(), || format!("{x} ⋆ {y} = {xy} is not positive"))?;

                let mut left = Vec::new();
                let mut right = Vec::new();
                for u in &atoms {
                    if rng.gen_bool(0.5) {
                        left.push(u.clone());
                    } else {
                        right.push(u.clone());
                    }
                }
                let a = nonneg_combination(n, &left, rng);
                let b = nonneg_combination(n, &right, rng);
                let c = nonneg_combination(n, &atoms, rng);
                let ac = lib(alg.mult(&a, &c))?;
                ensure(ac.inf(&b).is_zero(), || format!("a = {a} ⊥ b = {b} but (a ⋆ {c}) ∧ b ≠ 0"))?;

                let (p, q) = (random_member(alg.carrier().space(), rng), random_member(alg.carrier().space(), rng));
                let pq = lib(alg.mult(&p, &q))?;
                ensure(nd.contains(&pq), || format!("{p} ⋆ {q} = {pq} lies outside N^d"))?;
            }
            Ok(())
        },
    )
}

fn p8(cfg: &GenConfig) -> PropertyOutcome {
    run_property(
        cfg,
        8,
        "P8",
        "orthomorphism, partial and support representations recover planted weights",
        cfg.heavy_instance_count,
        |rng| {
            // planted multiplier
            let e = gen_sublattice(cfg, rng);
            let n = e.ambient().size();
            let q: V = FnVector::new(
                (0..n)
                    .map(|_| if cfg.zero_chance(rng) { Q::from_int(0) } else { positive_scalar(rng) })
                    .collect(),
            );
            let t = LinearMap::multiplication(e.space().clone(), &q);
            let got = lib(extract_orthomorphism_weight(&e, &t, cfg.max_cell_points))?;
            let want = Weight::new(q.clone()).expect("nonnegative").canonical_on(&e.upsilon());
            ensure(got == want, || format!("orthomorphism weight {}, planted {}", got.values(), want.values()))?;

            // planted weight seen through a sublattice G ⊆ H
            let (h, w) = gen_falgebra(cfg, rng);
            let atoms = atom_vectors(h.carrier());
            let mut groups: Vec<V> = Vec::new();
            for u in atoms {
                match rng.gen_range(0..3) {
                    0 => {}
                    1 if !groups.is_empty() => {
                        let last = groups.len() - 1;
                        groups[last] = &groups[last] + &u.scale(&positive_scalar(rng));
                    }
                    _ => groups.push(u),
                }
            }
            let g = lib(Subspace::span(h.ambient(), &groups).and_then(Sublattice::new))?;
            let table: Vec<Vec<V>> = g
                .basis()
                .iter()
                .map(|x| g.basis().iter().map(|y| h.mult(x, y)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()
                .map_err(|e| e.to_string())?;
            let got = lib(extract_partial_weight(h.carrier(), &g, &table))?;
            let want = w.canonical_on(&g.upsilon());
            ensure(got == want, || format!("partial weight {}, planted {}", got.values(), want.values()))?;

            // faithful representation of a semi-prime algebra
            let (sp, _) = gen_nonzero_falgebra(cfg, cfg.max_points, WeightMode::Positive, rng);
            let r = lib(restrict_to_support(&sp))?;
            let rw = r.algebra.weight().expect("verified");
            ensure(rw.values().values().iter().all(|x| x.is_positive()), || {
                format!("restricted weight {} is not strictly positive", rw.values())
            })?;
            ensure(r.map.kernel().dim() == 0, || "restriction map is not injective".into())?;
            for x in sp.carrier().basis() {
                let y = lib(r.map.apply(x))?;
                ensure(y == x.restrict(&r.points), || format!("{x} maps to {y}"))?;
            }
            Ok(())
        },
    )
}

/// Perturbs one table entry of `trials` verified algebras; a trial is
/// caught when verification fails or recovers a weight other than the
/// planted one.
pub fn mutation_check(cfg: &GenConfig, trials: usize) -> PropertyOutcome {
    run_property(
        cfg,
        9,
        "M",
        "single-entry table perturbations are detected",
        trials,
        |rng| {
            let (alg, planted) = gen_nonzero_falgebra(cfg, cfg.max_points, WeightMode::Random, rng);
            let (mutated, (i, j, p)) = perturb_table(&alg, rng).ok_or("zero carrier")?;
            let report = lib(verify_falgebra(&mutated))?;
            let expected = planted.canonical_on(&alg.carrier().upsilon());
            let same_weight = matches!(&report.weight_form, Ok(w) if *w == expected);
            ensure(!report.passed() || !same_weight, || {
                format!("perturbing entry ({i},{j}) at point {p} went unnoticed")
            })
        },
    )
}

/// Runs P1–P8 and the mutation check.
pub fn run_suite(cfg: &GenConfig) -> SuiteReport {
    let mut coverage = Coverage::default();
    let properties = vec![
        p1(cfg, &mut coverage),
        p2(cfg, &mut coverage),
        p3(cfg, &mut coverage),
        p4(cfg, &mut coverage),
        p5(cfg),
        p6(cfg, &mut coverage),
        p7(cfg),
        p8(cfg),
    ];
    SuiteReport {
        seed: cfg.seed,
        mutation_injected: cfg.inject_mutation,
        properties,
        mutation: mutation_check(cfg, cfg.mutation_trials),
        coverage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> GenConfig {
        GenConfig {
            instance_count: 6,
            heavy_instance_count: 3,
            mutation_trials: 5,
            ..Default::default()
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let cfg = GenConfig::with_seed(42);
        let a: Vec<_> = {
            let mut rng = cfg.rng(0);
            (0..20).map(|_| gen_sublattice(&cfg, &mut rng).basis().to_vec()).collect()
        };
        let b: Vec<_> = {
            let mut rng = cfg.rng(0);
            (0..20).map(|_| gen_sublattice(&cfg, &mut rng).basis().to_vec()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn generated_algebras_are_verified() {
        let cfg = GenConfig::default();
        let mut rng = cfg.rng(0);
        let mut proper = 0;
        for _ in 0..40 {
            let l = gen_sublattice(&cfg, &mut rng);
            assert!(is_sublattice(l.space()));
            if !l.space().is_full() {
                proper += 1;
            }
            let (a, _) = gen_weight_algebra(&cfg, l, WeightMode::Random, &mut rng);
            assert!(verify_falgebra(&a).unwrap().passed());
        }
        assert!(proper > 0);
    }

    #[test]
    fn weight_modes() {
        let cfg = GenConfig::default();
        let mut rng = cfg.rng(0);
        for _ in 0..20 {
            let (a, _) = gen_nonzero_falgebra(&cfg, 4, WeightMode::Nilpotent, &mut rng);
            assert!(!a.is_semi_prime().unwrap());
            let (b, _) = gen_nonzero_falgebra(&cfg, 4, WeightMode::Positive, &mut rng);
            assert!(b.is_semi_prime().unwrap());
            assert!(b.find_identity().unwrap().is_some());
        }
        let all_zero = GenConfig {
            weight_zero_probability: Ratio::new(1, 1),
            ..Default::default()
        };
        let (z, _) = gen_falgebra(&all_zero, &mut rng);
        assert!(z.table().iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn brute_force_closure_example() {
        let x = Subspace::from_vectors(&[V::from_ints(&[1, 1, 0]), V::from_ints(&[0, 1, 1])]).unwrap();
        assert_eq!(brute_force_closure(&x).dim(), 3);
        let d = Subspace::from_vectors(&[V::from_ints(&[1, 1])]).unwrap();
        assert_eq!(brute_force_closure(&d).dim(), 1);
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&tiny());
        for p in &report.properties {
            assert!(p.ok(), "{p:?}");
        }
        assert!(report.mutation.ok(), "{:?}", report.mutation);
    }

    #[test]
    fn zero_instances_carry_no_evidence() {
        let cfg = GenConfig {
            instance_count: 0,
            heavy_instance_count: 0,
            mutation_trials: 0,
            ..Default::default()
        };
        let report = run_suite(&cfg);
        assert!(report.properties.iter().all(|p| p.ok() && p.no_evidence));
        assert!(!report.passed());
    }

    #[test]
    fn injected_mutations_break_p2_and_p5() {
        let cfg = GenConfig {
            inject_mutation: true,
            heavy_instance_count: 20,
            ..tiny()
        };
        let report = run_suite(&cfg);
        assert!(report.property("P2").unwrap().failed > 0);
        assert!(report.property("P5").unwrap().failed > 0);
        assert!(report.property("P2").unwrap().first_counterexample.is_some());
    }
}
