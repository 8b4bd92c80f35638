//! Bracket-word expression trees.
//!
//! An [`IdentityExpr`] is a named expression over abstract generators
//! `X1..Xn` built from products, commutators, anticommutators, scalar
//! multiples and sums. The same tree is interpreted by several evaluators:
//! in the free superalgebra (here), against a structure-constant algebra
//! (`tensor`), against a bracket-table pair (`tensor`), and in the formal
//! bracket algebra (`formal`).

use std::fmt;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::Error;
use crate::free::FreeElement;
use crate::parity::{koszul_sign, Parity};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum ExprNode {
    /// Generator leaf `X{i+1}`.
    Gen(usize),
    /// Associative product of the children, left to right.
    Product(Vec<ExprNode>),
    Bracket(BracketKind, Box<ExprNode>, Box<ExprNode>),
    Scaled(Coeff, Box<ExprNode>),
    /// Multiplies the child by the parity-dependent sign
    /// `(-1)^{eps(Xi) eps(Xj)}`, resolved at evaluation time.
    KoszulScaled(usize, usize, Box<ExprNode>),
    Sum(Vec<ExprNode>),
}

pub fn gen(i: usize) -> ExprNode {
    ExprNode::Gen(i)
}

/// The product `Xi * Xj * ...` of the given generator indices.
pub fn word(indices: &[usize]) -> ExprNode {
    if indices.len() == 1 {
        return gen(indices[0]);
    }
    ExprNode::Product(indices.iter().copied().map(gen).collect())
}

pub fn comm(l: ExprNode, r: ExprNode) -> ExprNode {
    ExprNode::Bracket(BracketKind::Commutator, Box::new(l), Box::new(r))
}

pub fn anti(l: ExprNode, r: ExprNode) -> ExprNode {
    ExprNode::Bracket(BracketKind::Anticommutator, Box::new(l), Box::new(r))
}

pub fn scaled(c: Coeff, e: ExprNode) -> ExprNode {
    ExprNode::Scaled(c, Box::new(e))
}

pub fn neg(e: ExprNode) -> ExprNode {
    scaled(Coeff::minus_one(), e)
}

/// Koszul phase `(-1)^{eps(Xi) eps(Xj)}` applied to `e`.
pub fn phase(i: usize, j: usize, e: ExprNode) -> ExprNode {
    ExprNode::KoszulScaled(i, j, Box::new(e))
}

pub fn sum(terms: Vec<ExprNode>) -> ExprNode {
    ExprNode::Sum(terms)
}

impl ExprNode {
    /// Largest generator index referenced, if any.
    pub fn max_index(&self) -> Option<usize> {
        match self {
            ExprNode::Gen(i) => Some(*i),
            ExprNode::Product(c) | ExprNode::Sum(c) => c.iter().filter_map(|e| e.max_index()).max(),
            ExprNode::Bracket(_, l, r) => l.max_index().max(r.max_index()),
            ExprNode::Scaled(_, e) => e.max_index(),
            ExprNode::KoszulScaled(i, j, e) => {
                Some((*i).max(*j)).max(e.max_index())
            }
        }
    }

    /// Relabels generator (and phase) indices through `perm`:
    /// leaf `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> ExprNode {
        match self {
            ExprNode::Gen(i) => ExprNode::Gen(perm[*i]),
            ExprNode::Product(c) => ExprNode::Product(c.iter().map(|e| e.permuted(perm)).collect()),
            ExprNode::Sum(c) => ExprNode::Sum(c.iter().map(|e| e.permuted(perm)).collect()),
            ExprNode::Bracket(k, l, r) => {
                ExprNode::Bracket(*k, Box::new(l.permuted(perm)), Box::new(r.permuted(perm)))
            }
            ExprNode::Scaled(c, e) => ExprNode::Scaled(c.clone(), Box::new(e.permuted(perm))),
            ExprNode::KoszulScaled(i, j, e) => {
                ExprNode::KoszulScaled(perm[*i], perm[*j], Box::new(e.permuted(perm)))
            }
        }
    }

    /// Expands the expression in the free superalgebra with generator `i`
    /// carrying `parities[i]`.
    pub fn eval_free(&self, parities: &[Parity]) -> Result<FreeElement, Error> {
        match self {
            ExprNode::Gen(i) => {
                let p = *parities.get(*i).ok_or(Error::UnboundGenerator {
                    index: *i,
                    arity: parities.len(),
                })?;
                Ok(FreeElement::generator(*i as u32, p))
            }
            ExprNode::Product(children) => {
                let mut acc = FreeElement::unit();
                for child in children {
                    acc = &acc * &child.eval_free(parities)?;
                }
                Ok(acc)
            }
            ExprNode::Bracket(kind, l, r) => {
                let l = l.eval_free(parities)?;
                let r = r.eval_free(parities)?;
                Ok(match kind {
                    BracketKind::Commutator => l.commutator(&r),
                    BracketKind::Anticommutator => l.anticommutator(&r),
                })
            }
            ExprNode::Scaled(c, e) => Ok(e.eval_free(parities)?.scale(c)),
            ExprNode::KoszulScaled(i, j, e) => {
                let max = (*i).max(*j);
                if max >= parities.len() {
                    return Err(Error::UnboundGenerator { index: max, arity: parities.len() });
                }
                let s = koszul_sign(parities[*i], parities[*j]);
                Ok(e.eval_free(parities)?.scale(&s))
            }
            ExprNode::Sum(children) => {
                let mut acc = FreeElement::zero();
                for child in children {
                    acc = &acc + &child.eval_free(parities)?;
                }
                Ok(acc)
            }
        }
    }

    /// Top-level summands (the node itself if it is not a sum).
    pub fn summands(&self) -> Vec<&ExprNode> {
        match self {
            ExprNode::Sum(children) => children.iter().collect(),
            other => vec![other],
        }
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::Gen(i) => write!(f, "X{}", i + 1),
            ExprNode::Product(children) => {
                for (pos, child) in children.iter().enumerate() {
                    if pos > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(child, ExprNode::Sum(_) | ExprNode::Scaled(..)) {
                        write!(f, "({child})")?;
                    } else {
                        write!(f, "{child}")?;
                    }
                }
                Ok(())
            }
            ExprNode::Bracket(BracketKind::Commutator, l, r) => write!(f, "[{l}, {r}]"),
            ExprNode::Bracket(BracketKind::Anticommutator, l, r) => write!(f, "{{{l}, {r}}}"),
            ExprNode::Scaled(c, e) => {
                if c == &Coeff::minus_one() {
                    write!(f, "-{e}")
                } else {
                    write!(f, "{c}*{e}")
                }
            }
            ExprNode::KoszulScaled(i, j, e) => {
                write!(f, "(-1)^(e{}e{})*{}", i + 1, j + 1, e)
            }
            ExprNode::Sum(children) => {
                for (pos, child) in children.iter().enumerate() {
                    if pos == 0 {
                        write!(f, "{child}")?;
                    } else if let ExprNode::Scaled(c, inner) = child {
                        if c == &Coeff::minus_one() {
                            write!(f, " - {inner}")?;
                        } else if c.is_negative() {
                            write!(f, " - {}*{}", c.abs(), inner)?;
                        } else {
                            write!(f, " + {child}")?;
                        }
                    } else {
                        write!(f, " + {child}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// A named identity: an expression expected to expand to zero.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityExpr {
    pub name: String,
    pub arity: usize,
    pub body: ExprNode,
}

impl IdentityExpr {
    pub fn new(name: impl Into<String>, arity: usize, body: ExprNode) -> Self {
        let expr = IdentityExpr { name: name.into(), arity, body };
        debug_assert!(expr.body.max_index().map_or(true, |m| m < expr.arity));
        expr
    }

    /// Instantiates the identity on rotated arguments:
    /// generator `i` is replaced by generator `(i + shift) mod arity`.
    pub fn rotated(&self, shift: usize) -> ExprNode {
        let perm: Vec<usize> = (0..self.arity).map(|i| (i + shift) % self.arity).collect();
        self.body.permuted(&perm)
    }

    /// The sum of all cyclic rotations of the identity.
    pub fn cyclic_sum(&self) -> ExprNode {
        sum((0..self.arity).map(|shift| self.rotated(shift)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_shapes() {
        let e = sum(vec![
            comm(gen(0), word(&[1, 2])),
            neg(anti(gen(2), word(&[0, 1]))),
            phase(0, 2, comm(gen(1), gen(0))),
        ]);
        assert_eq!(
            e.to_string(),
            "[X1, X2*X3] - {X3, X1*X2} + (-1)^(e1e3)*[X2, X1]"
        );
    }

    #[test]
    fn eval_free_expands_brackets() {
        let parities = vec![Parity::Even; 3];
        let e = comm(gen(0), word(&[1, 2]));
        let v = e.eval_free(&parities).unwrap();
        assert_eq!(v.to_string(), "X1*X2*X3 - X2*X3*X1");
    }

    #[test]
    fn unbound_generator_is_an_error() {
        let e = comm(gen(0), gen(5));
        assert!(matches!(
            e.eval_free(&[Parity::Even; 3]),
            Err(Error::UnboundGenerator { index: 5, arity: 3 })
        ));
    }

    #[test]
    fn permutation_relabels_phases() {
        let e = phase(0, 2, gen(0));
        let p = e.permuted(&[1, 2, 0]);
        assert_eq!(p, phase(1, 0, gen(1)));
    }

    #[test]
    fn koszul_scaled_flips_sign_for_odd_pairs() {
        let e = phase(0, 1, gen(0));
        let even = e.eval_free(&[Parity::Even, Parity::Odd]).unwrap();
        assert_eq!(even.to_string(), "X1");
        let odd = e.eval_free(&[Parity::Odd, Parity::Odd]).unwrap();
        assert_eq!(odd.to_string(), "-X1");
    }
}
