//! Sup-inf expressions over a list of generators.
//!
//! Closure certificates share subexpressions heavily, so nodes are
//! reference counted and evaluation memoizes on node identity.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::FnVector;

#[derive(Debug)]
enum Node<T> {
    Leaf(usize),
    Sup(SupInfExpr<T>, SupInfExpr<T>),
    Inf(SupInfExpr<T>, SupInfExpr<T>),
    Linear(Vec<(T, SupInfExpr<T>)>),
}

/// A directed acyclic expression whose leaves index a generator list.
#[derive(Debug)]
pub struct SupInfExpr<T>(Arc<Node<T>>);

impl<T> Clone for SupInfExpr<T> {
    fn clone(&self) -> Self {
        SupInfExpr(Arc::clone(&self.0))
    }
}

/// How leaves and lattice operations are interpreted during evaluation.
pub trait Interpretation<T: Scalar> {
    fn leaf(&mut self, index: usize) -> Result<FnVector<T>>;

    fn sup(&mut self, a: &FnVector<T>, b: &FnVector<T>) -> FnVector<T> {
        a.sup(b)
    }

    fn inf(&mut self, a: &FnVector<T>, b: &FnVector<T>) -> FnVector<T> {
        a.inf(b)
    }
}

/// Leaves are looked up in a fixed vector list; lattice operations are
/// pointwise.
pub struct Generators<'a, T>(pub &'a [FnVector<T>]);

impl<T: Scalar> Interpretation<T> for Generators<'_, T> {
    fn leaf(&mut self, index: usize) -> Result<FnVector<T>> {
        self.0
            .get(index)
            .cloned()
            .ok_or_else(|| Error::Dimension(format!("leaf {index} out of range")))
    }
}

/// Memo table for evaluating many expressions over one interpretation.
pub struct Evaluator<T, I> {
    interp: I,
    len: usize,
    memo: HashMap<usize, FnVector<T>>,
    // keeps memoized nodes alive so their addresses are not reused
    keep: Vec<SupInfExpr<T>>,
}

impl<T: Scalar, I: Interpretation<T>> Evaluator<T, I> {
    /// `len` is the number of points of the values produced.
    pub fn new(interp: I, len: usize) -> Self {
        Evaluator {
            interp,
            len,
            memo: HashMap::new(),
            keep: Vec::new(),
        }
    }

    pub fn eval(&mut self, e: &SupInfExpr<T>) -> Result<FnVector<T>> {
        let key = Arc::as_ptr(&e.0) as usize;
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = match &*e.0 {
            Node::Leaf(i) => self.interp.leaf(*i)?,
            Node::Sup(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.interp.sup(&x, &y)
            }
            Node::Inf(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.interp.inf(&x, &y)
            }
            Node::Linear(terms) => {
                let mut acc = FnVector::zeros(self.len);
                for (c, sub) in terms {
                    let x = self.eval(sub)?;
                    if x.len() != self.len {
                        return Err(Error::Dimension("expression values disagree in length".into()));
                    }
                    acc = &acc + &x.scale(c);
                }
                acc
            }
        };
        self.memo.insert(key, value.clone());
        self.keep.push(e.clone());
        Ok(value)
    }

    pub fn into_interpretation(self) -> I {
        self.interp
    }
}

impl<T: Scalar> SupInfExpr<T> {
    pub fn leaf(index: usize) -> Self {
        SupInfExpr(Arc::new(Node::Leaf(index)))
    }

    pub fn sup(a: &Self, b: &Self) -> Self {
        SupInfExpr(Arc::new(Node::Sup(a.clone(), b.clone())))
    }

    pub fn inf(a: &Self, b: &Self) -> Self {
        SupInfExpr(Arc::new(Node::Inf(a.clone(), b.clone())))
    }

    /// Linear combination; zero coefficients are dropped.
    pub fn linear(terms: Vec<(T, SupInfExpr<T>)>) -> Self {
        let terms = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        SupInfExpr(Arc::new(Node::Linear(terms)))
    }

    /// The constant zero (an empty combination).
    pub fn zero() -> Self {
        Self::linear(Vec::new())
    }

    pub fn neg(&self) -> Self {
        Self::linear(vec![(-T::one(), self.clone())])
    }

    /// `self ∨ 0`.
    pub fn positive_part(&self) -> Self {
        Self::sup(self, &Self::zero())
    }

    /// Supremum of a nonempty list (left fold).
    pub fn sup_all(items: &[Self]) -> Option<Self> {
        let (first, rest) = items.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, x| Self::sup(&acc, x)))
    }

    pub fn inf_all(items: &[Self]) -> Option<Self> {
        let (first, rest) = items.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, x| Self::inf(&acc, x)))
    }

    /// Evaluate with leaves bound to `generators` and pointwise lattice
    /// operations.
    pub fn evaluate(&self, generators: &[FnVector<T>]) -> Result<FnVector<T>> {
        let len = generators
            .first()
            .map(|g| g.len())
            .ok_or_else(|| Error::Dimension("no generators to evaluate over".into()))?;
        Evaluator::new(Generators(generators), len).eval(self)
    }

    /// Largest leaf index, if the expression has any leaves.
    pub fn max_leaf(&self) -> Option<usize> {
        let mut seen = HashMap::new();
        self.max_leaf_memo(&mut seen)
    }

    fn max_leaf_memo(&self, seen: &mut HashMap<usize, Option<usize>>) -> Option<usize> {
        let key = Arc::as_ptr(&self.0) as usize;
        if let Some(v) = seen.get(&key) {
            return *v;
        }
        let r = match &*self.0 {
            Node::Leaf(i) => Some(*i),
            Node::Sup(a, b) | Node::Inf(a, b) => a.max_leaf_memo(seen).max(b.max_leaf_memo(seen)),
            Node::Linear(terms) => terms.iter().filter_map(|(_, e)| e.max_leaf_memo(seen)).max(),
        };
        seen.insert(key, r);
        r
    }

    /// Number of distinct nodes in the DAG.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&e.0) as usize) {
                continue;
            }
            match &*e.0 {
                Node::Leaf(_) => {}
                Node::Sup(a, b) | Node::Inf(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Node::Linear(terms) => stack.extend(terms.iter().map(|(_, e)| e.clone())),
            }
        }
        seen.len()
    }
}

impl<T: Scalar> fmt::Display for SupInfExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Leaf(i) => write!(f, "g{i}"),
            Node::Sup(a, b) => write!(f, "({a} ∨ {b})"),
            Node::Inf(a, b) => write!(f, "({a} ∧ {b})"),
            Node::Linear(terms) if terms.is_empty() => write!(f, "0"),
            Node::Linear(terms) => {
                for (k, (c, e)) in terms.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·{e}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn evaluates_pointwise() {
        let g = vec![FnVector::<Rational>::from_ints(&[1, 1, 0]), FnVector::from_ints(&[0, 1, 1])];
        let x = SupInfExpr::leaf(0);
        let y = SupInfExpr::leaf(1);
        let e = SupInfExpr::sup(&x, &y);
        assert_eq!(e.evaluate(&g).unwrap(), FnVector::from_ints(&[1, 1, 1]));
        let d = SupInfExpr::linear(vec![(Rational::from_int(1), x.clone()), (Rational::from_int(-1), y.clone())]);
        assert_eq!(d.positive_part().evaluate(&g).unwrap(), FnVector::from_ints(&[1, 0, 0]));
        assert_eq!(SupInfExpr::inf(&x, &y).evaluate(&g).unwrap(), FnVector::from_ints(&[0, 1, 0]));
    }

    #[test]
    fn shared_nodes_are_counted_once() {
        let x = SupInfExpr::<Rational>::leaf(0);
        let s = SupInfExpr::sup(&x, &x);
        let t = SupInfExpr::inf(&s, &s);
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.max_leaf(), Some(0));
    }

    #[test]
    fn out_of_range_leaf_is_an_error() {
        let g = vec![FnVector::<Rational>::from_ints(&[1])];
        assert!(SupInfExpr::leaf(3).evaluate(&g).is_err());
    }
}
