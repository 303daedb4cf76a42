//! Sign cells of a central hyperplane arrangement, decided exactly with
//! Fourier–Motzkin elimination.
//!
//! A cell is the set of `t` for which every linear form `h_i · t` has a
//! prescribed sign in `{-, 0, +}`. Equalities are removed by passing to the
//! null space; the remaining strict homogeneous system is eliminated one
//! variable at a time, and back substitution produces a rational point.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::linalg;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of<T: Scalar>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn as_scalar<T: Scalar>(self) -> T {
        match self {
            Sign::Neg => -T::one(),
            Sign::Zero => T::zero(),
            Sign::Pos => T::one(),
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

/// A point with `rows[i] · s > 0` for all `i`, or `None` if there is none.
pub fn strict_point<T: Scalar>(rows: &[Vec<T>], nvars: usize) -> Option<Vec<T>> {
    let mut stages: Vec<(Vec<Vec<T>>, Vec<Vec<T>>)> = Vec::with_capacity(nvars);
    let mut current: Vec<Vec<T>> = dedup(rows.iter().map(|r| linalg::normalize_positive(r)));
    for var in 0..nvars {
        if current.iter().any(|r| r.iter().all(|x| x.is_zero())) {
            return None;
        }
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in current {
            if r[var].is_positive() {
                lower.push(r);
            } else if r[var].is_negative() {
                upper.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &lower {
            for q in &upper {
                // (-q_var)·p + p_var·q eliminates var and stays strict
                let a = -q[var].clone();
                let b = p[var].clone();
                let row: Vec<T> = p
                    .iter()
                    .zip(q)
                    .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                    .collect();
                rest.push(linalg::normalize_positive(&row));
            }
        }
        stages.push((lower, upper));
        current = dedup(rest.into_iter());
    }
    if !current.is_empty() {
        return None;
    }
    let mut point = vec![T::zero(); nvars];
    for var in (0..nvars).rev() {
        let (lower, upper) = &stages[var];
        // rows read r_var·s_var + rest > 0 with later variables fixed
        let rest = |r: &Vec<T>| -> T {
            (var + 1..nvars).fold(T::zero(), |acc, k| acc + r[k].clone() * point[k].clone())
        };
        let lo = lower
            .iter()
            .map(|r| -rest(r) / r[var].clone())
            .max();
        let hi = upper
            .iter()
            .map(|r| -rest(r) / r[var].clone())
            .min();
        point[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / T::from_int(2),
            (Some(l), None) => l + T::one(),
            (None, Some(h)) => h - T::one(),
            (None, None) => T::zero(),
        };
    }
    Some(point)
}

fn dedup<T: Scalar>(rows: impl Iterator<Item = Vec<T>>) -> Vec<Vec<T>> {
    let mut seen = HashSet::new();
    rows.filter(|r| seen.insert(r.clone())).collect()
}

/// A point satisfying `eq_rows · t = 0` and `strict_rows · t > 0`.
pub fn cell_point<T: Scalar>(eq_rows: &[Vec<T>], strict_rows: &[Vec<T>], nvars: usize) -> Option<Vec<T>> {
    let kernel = linalg::nullspace(eq_rows, nvars);
    let projected: Vec<Vec<T>> = strict_rows
        .iter()
        .map(|r| kernel.iter().map(|k| linalg::dot(r, k)).collect())
        .collect();
    let s = strict_point(&projected, kernel.len())?;
    Some(linalg::combine_rows(&s, &kernel, nvars))
}

/// One nonempty cell reached by [`enumerate_cells`].
pub struct Cell<'a, T> {
    /// Sign of each input hyperplane on the cell.
    pub signs: &'a [Sign],
    /// Basis of the linear span of the cell.
    pub span: &'a [Vec<T>],
    /// A point of the (relatively open) cell.
    pub point: &'a [T],
    pub eq_rows: &'a [Vec<T>],
    pub strict_rows: &'a [Vec<T>],
}

impl<T: Scalar> Cell<'_, T> {
    /// Whether the cell meets `{ t : row · t > 0 }`.
    pub fn meets_positive(&self, row: &[T], nvars: usize) -> Option<Vec<T>> {
        let mut strict = self.strict_rows.to_vec();
        strict.push(row.to_vec());
        cell_point(self.eq_rows, &strict, nvars)
    }
}

/// Depth-first enumeration of the nonempty cells of the arrangement
/// `rows`, restricted to the signs in `allowed[i]` for hyperplane `i`.
///
/// Hyperplanes that are positive multiples of an earlier one share its
/// sign; negative multiples take the opposite sign. Infeasible prefixes are
/// pruned. Returns the number of cells visited, or the break value.
pub fn enumerate_cells<T: Scalar, B>(
    rows: &[Vec<T>],
    nvars: usize,
    allowed: &[&[Sign]],
    mut visit: impl FnMut(&Cell<'_, T>) -> ControlFlow<B>,
) -> Result<usize, B> {
    assert_eq!(rows.len(), allowed.len());
    // map each hyperplane to a distinct representative and an orientation
    let mut reps: Vec<Vec<T>> = Vec::new();
    let mut link: Vec<Option<(usize, bool)>> = Vec::new();
    for r in rows {
        if r.iter().all(|x| x.is_zero()) {
            link.push(None);
            continue;
        }
        let n = linalg::normalize_positive(r);
        let neg: Vec<T> = n.iter().map(|x| -x.clone()).collect();
        if let Some(i) = reps.iter().position(|x| *x == n) {
            link.push(Some((i, false)));
        } else if let Some(i) = reps.iter().position(|x| *x == neg) {
            link.push(Some((i, true)));
        } else {
            reps.push(n);
            link.push(Some((reps.len() - 1, false)));
        }
    }
    // allowed signs per representative: intersection over linked rows
    let all = [Sign::Neg, Sign::Zero, Sign::Pos];
    let mut rep_allowed: Vec<Vec<Sign>> = vec![all.to_vec(); reps.len()];
    for (k, l) in link.iter().enumerate() {
        match l {
            None => {
                if !allowed[k].contains(&Sign::Zero) {
                    return Ok(0);
                }
            }
            Some((i, flipped)) => {
                rep_allowed[*i].retain(|s| {
                    let own = if *flipped { s.flip() } else { *s };
                    allowed[k].contains(&own)
                });
            }
        }
    }
    let mut state = Search {
        reps: &reps,
        rep_allowed: &rep_allowed,
        nvars,
        eq: Vec::new(),
        strict: Vec::new(),
        signs: Vec::new(),
        count: 0,
    };
    let mut leaf = |rep_signs: &[Sign], span: &[Vec<T>], point: &[T], eq: &[Vec<T>], strict: &[Vec<T>]| {
        let signs: Vec<Sign> = link
            .iter()
            .map(|l| match l {
                None => Sign::Zero,
                Some((i, false)) => rep_signs[*i],
                Some((i, true)) => rep_signs[*i].flip(),
            })
            .collect();
        visit(&Cell {
            signs: &signs,
            span,
            point,
            eq_rows: eq,
            strict_rows: strict,
        })
    };
    match state.descend(&mut leaf) {
        ControlFlow::Continue(()) => Ok(state.count),
        ControlFlow::Break(b) => Err(b),
    }
}

struct Search<'a, T> {
    reps: &'a [Vec<T>],
    rep_allowed: &'a [Vec<Sign>],
    nvars: usize,
    eq: Vec<Vec<T>>,
    strict: Vec<Vec<T>>,
    signs: Vec<Sign>,
    count: usize,
}

type Leaf<'f, T, B> = dyn FnMut(&[Sign], &[Vec<T>], &[T], &[Vec<T>], &[Vec<T>]) -> ControlFlow<B> + 'f;

impl<T: Scalar> Search<'_, T> {
    fn descend<B>(&mut self, leaf: &mut Leaf<'_, T, B>) -> ControlFlow<B> {
        let depth = self.signs.len();
        if depth == self.reps.len() {
            let span = linalg::nullspace(&self.eq, self.nvars);
            let point = cell_point(&self.eq, &self.strict, self.nvars).expect("pruned search keeps feasibility");
            self.count += 1;
            return leaf(&self.signs, &span, &point, &self.eq, &self.strict);
        }
        let row = self.reps[depth].clone();
        // a hyperplane vanishing on the current equality span is forced zero
        let span = linalg::nullspace(&self.eq, self.nvars);
        let forced_zero = span.iter().all(|k| linalg::dot(&row, k).is_zero());
        for &s in &self.rep_allowed[depth] {
            if forced_zero && s != Sign::Zero {
                continue;
            }
            match s {
                Sign::Zero => {
                    if !forced_zero {
                        self.eq.push(row.clone());
                    }
                }
                Sign::Pos => self.strict.push(row.clone()),
                Sign::Neg => self.strict.push(row.iter().map(|x| -x.clone()).collect()),
            }
            let feasible = forced_zero || cell_point(&self.eq, &self.strict, self.nvars).is_some();
            self.signs.push(s);
            let flow = if feasible { self.descend(leaf) } else { ControlFlow::Continue(()) };
            self.signs.pop();
            match s {
                Sign::Zero => {
                    if !forced_zero {
                        self.eq.pop();
                    }
                }
                _ => {
                    self.strict.pop();
                }
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Signed;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect()
    }

    fn satisfies(rows: &[Vec<Rational>], p: &[Rational]) -> bool {
        rows.iter().all(|r| linalg::dot(r, p).is_positive())
    }

    #[test]
    fn strict_systems() {
        let a = m(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(strict_point(&a, 2).is_none());
        let b = m(&[&[1, -1], &[0, 1], &[-1, 3]]);
        let p = strict_point(&b, 2).unwrap();
        assert!(satisfies(&b, &p));
        assert!(strict_point(&m(&[&[0, 0]]), 2).is_none());
        assert_eq!(strict_point::<Rational>(&[], 3), Some(vec![Rational::from_int(0); 3]));
    }

    #[test]
    fn equalities_reduce_dimension() {
        // t0 = t1, t0 > 0, t1 - 2 t2 > 0
        let p = cell_point(&m(&[&[1, -1, 0]]), &m(&[&[1, 0, 0], &[0, 1, -2]]), 3).unwrap();
        assert_eq!(p[0], p[1]);
        assert!(p[0].is_positive());
        assert!((p[1].clone() - Rational::from_int(2) * p[2].clone()).is_positive());
        assert!(cell_point(&m(&[&[1, 0]]), &m(&[&[1, 0]]), 2).is_none());
    }

    #[test]
    fn coordinate_arrangement_has_nine_cells_in_the_plane() {
        let rows = m(&[&[1, 0], &[0, 1]]);
        let all: &[Sign] = &[Sign::Neg, Sign::Zero, Sign::Pos];
        let n = enumerate_cells(&rows, 2, &[all, all], |_| ControlFlow::<()>::Continue(())).unwrap();
        assert_eq!(n, 9);
        // three lines through the origin: 6 rays + 6 sectors + origin
        let rows = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let n = enumerate_cells(&rows, 2, &[all, all, all], |_| ControlFlow::<()>::Continue(())).unwrap();
        assert_eq!(n, 13);
    }

    #[test]
    fn parallel_hyperplanes_share_signs() {
        let rows = m(&[&[1, 1], &[2, 2], &[-1, -1]]);
        let all: &[Sign] = &[Sign::Neg, Sign::Zero, Sign::Pos];
        let mut seen = Vec::new();
        enumerate_cells(&rows, 2, &[all, all, all], |c| {
            seen.push(c.signs.to_vec());
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
        assert_eq!(seen.len(), 3);
        for s in seen {
            assert_eq!(s[0], s[1]);
            assert_eq!(s[0], s[2].flip());
        }
    }

    #[test]
    fn cell_points_have_the_reported_signs() {
        let rows = m(&[&[1, -1, 0], &[0, 1, 2], &[3, 0, -1], &[1, 1, 1]]);
        let all: &[Sign] = &[Sign::Neg, Sign::Zero, Sign::Pos];
        enumerate_cells(&rows, 3, &[all; 4], |c| {
            for (r, s) in rows.iter().zip(c.signs) {
                assert_eq!(Sign::of(&linalg::dot(r, c.point)), *s);
            }
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
    }
}
