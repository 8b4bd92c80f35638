//! The formal bracket algebra.
//!
//! Derivation claims like "summing this identity over cyclic permutations
//! gives that one" are statements about bracket *expressions*, not their
//! free-algebra expansions (both sides expand to zero, so expanded
//! equality is vacuous). This module represents linear combinations of
//! nested bracket symbols, canonicalized using only bilinearity and the
//! graded swap symmetries
//!
//! ```text
//! [A,B] = -(-1)^{eps(A) eps(B)} [B,A]      {A,B} = (-1)^{eps(A) eps(B)} {B,A}
//! ```
//!
//! Term-map equality in this algebra is exactly the bookkeeping used in
//! the derivation chains.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::Error;
use crate::expr::{BracketKind, ExprNode};
use crate::parity::{koszul_is_negative, koszul_sign, Parity};

/// An opaque bracket-algebra symbol. The variant order (generator, word,
/// bracket) fixes the canonical orientation of bracket children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FormalTerm {
    Gen(u32),
    Word(Vec<u32>),
    Bracket(BracketKind, Box<FormalTerm>, Box<FormalTerm>),
}

impl FormalTerm {
    fn parity(&self, parities: &[Parity]) -> Parity {
        match self {
            FormalTerm::Gen(i) => parities[*i as usize],
            FormalTerm::Word(w) => Parity::sum(w.iter().map(|i| parities[*i as usize])),
            FormalTerm::Bracket(_, l, r) => l.parity(parities) + r.parity(parities),
        }
    }
}

impl fmt::Display for FormalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalTerm::Gen(i) => write!(f, "X{}", i + 1),
            FormalTerm::Word(w) => {
                if w.is_empty() {
                    return write!(f, "1");
                }
                for (pos, i) in w.iter().enumerate() {
                    if pos > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "X{}", i + 1)?;
                }
                Ok(())
            }
            FormalTerm::Bracket(BracketKind::Commutator, l, r) => write!(f, "[{l}, {r}]"),
            FormalTerm::Bracket(BracketKind::Anticommutator, l, r) => write!(f, "{{{l}, {r}}}"),
        }
    }
}

fn wordlike(indices: Vec<u32>) -> FormalTerm {
    if indices.len() == 1 {
        FormalTerm::Gen(indices[0])
    } else {
        FormalTerm::Word(indices)
    }
}

/// Canonical bracket of two formal terms. Children are oriented by the
/// term order, applying the graded swap sign; a bracket whose symmetry
/// forces it to vanish (e.g. `[A,A]` with `A` even) returns `None`.
fn bracket(
    kind: BracketKind,
    l: FormalTerm,
    r: FormalTerm,
    parities: &[Parity],
) -> Option<(FormalTerm, Coeff)> {
    let koszul_neg = koszul_is_negative(l.parity(parities), r.parity(parities));
    let swap_negates = match kind {
        BracketKind::Commutator => !koszul_neg,
        BracketKind::Anticommutator => koszul_neg,
    };
    match l.cmp(&r) {
        std::cmp::Ordering::Equal if swap_negates => None,
        std::cmp::Ordering::Greater => {
            let sign = if swap_negates { Coeff::minus_one() } else { Coeff::one() };
            Some((FormalTerm::Bracket(kind, Box::new(r), Box::new(l)), sign))
        }
        _ => Some((FormalTerm::Bracket(kind, Box::new(l), Box::new(r)), Coeff::one())),
    }
}

/// A linear combination of formal terms in canonical form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalSum {
    terms: BTreeMap<FormalTerm, Coeff>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, term: FormalTerm, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(term) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> FormalSum {
        if c.is_zero() {
            return FormalSum::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(t, k)| (t.clone(), k * c)).collect(),
        }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (term, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = coeff.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

/// Interprets an expression as a formal bracket combination. Products may
/// only contain generators (they become words); products of brackets have
/// no formal-term representation and are rejected.
pub fn eval_formal(node: &ExprNode, parities: &[Parity]) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    eval_into(node, parities, &Coeff::one(), &mut out)?;
    Ok(out)
}

fn eval_into(
    node: &ExprNode,
    parities: &[Parity],
    scale: &Coeff,
    out: &mut FormalSum,
) -> Result<(), Error> {
    match node {
        ExprNode::Gen(i) => {
            check_bound(*i, parities)?;
            out.add_term(FormalTerm::Gen(*i as u32), scale.clone());
        }
        ExprNode::Product(children) => {
            // distribute sums of word-like terms into words
            let mut acc: Vec<(Vec<u32>, Coeff)> = vec![(Vec::new(), scale.clone())];
            for child in children {
                let part = eval_formal(child, parities)?;
                let mut next = Vec::new();
                for (prefix, c0) in &acc {
                    for (term, c1) in &part.terms {
                        let letters = match term {
                            FormalTerm::Gen(i) => vec![*i],
                            FormalTerm::Word(w) => w.clone(),
                            FormalTerm::Bracket(..) => {
                                return Err(Error::UnsupportedNode("product of brackets"));
                            }
                        };
                        let mut word = prefix.clone();
                        word.extend(letters);
                        next.push((word, c0 * c1));
                    }
                }
                acc = next;
            }
            for (word, c) in acc {
                out.add_term(wordlike(word), c);
            }
        }
        ExprNode::Bracket(kind, l, r) => {
            let ls = eval_formal(l, parities)?;
            let rs = eval_formal(r, parities)?;
            for (tl, cl) in &ls.terms {
                for (tr, cr) in &rs.terms {
                    if let Some((term, sign)) = bracket(*kind, tl.clone(), tr.clone(), parities) {
                        out.add_term(term, &(cl * cr) * &(&sign * scale));
                    }
                }
            }
        }
        ExprNode::Scaled(c, e) => eval_into(e, parities, &(scale * c), out)?,
        ExprNode::KoszulScaled(i, j, e) => {
            check_bound(*i, parities)?;
            check_bound(*j, parities)?;
            let s = koszul_sign(parities[*i], parities[*j]);
            eval_into(e, parities, &(scale * &s), out)?;
        }
        ExprNode::Sum(children) => {
            for child in children {
                eval_into(child, parities, scale, out)?;
            }
        }
    }
    Ok(())
}

/// Expands all bracket *arguments* in the free algebra and keeps one
/// outermost bracket level as formal symbols. Rewrites e.g.
/// `[[X,Y],Z]` into `[X*Y, Z] - [Y*X, Z]` (then canonicalizes each
/// single bracket). Non-bracket top-level terms become plain words.
pub fn half_expand(node: &ExprNode, parities: &[Parity]) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    half_expand_into(node, parities, &Coeff::one(), &mut out)?;
    Ok(out)
}

fn half_expand_into(
    node: &ExprNode,
    parities: &[Parity],
    scale: &Coeff,
    out: &mut FormalSum,
) -> Result<(), Error> {
    match node {
        ExprNode::Bracket(kind, l, r) => {
            let ls = l.eval_free(parities)?;
            let rs = r.eval_free(parities)?;
            for (wl, cl) in ls.terms() {
                for (wr, cr) in rs.terms() {
                    let tl = wordlike(wl.0.iter().map(|g| g.index).collect());
                    let tr = wordlike(wr.0.iter().map(|g| g.index).collect());
                    if let Some((term, sign)) = bracket(*kind, tl, tr, parities) {
                        out.add_term(term, &(cl * cr) * &(&sign * scale));
                    }
                }
            }
        }
        ExprNode::Scaled(c, e) => half_expand_into(e, parities, &(scale * c), out)?,
        ExprNode::KoszulScaled(i, j, e) => {
            check_bound(*i, parities)?;
            check_bound(*j, parities)?;
            let s = koszul_sign(parities[*i], parities[*j]);
            half_expand_into(e, parities, &(scale * &s), out)?;
        }
        ExprNode::Sum(children) => {
            for child in children {
                half_expand_into(child, parities, scale, out)?;
            }
        }
        other => {
            let expanded = other.eval_free(parities)?;
            for (w, c) in expanded.terms() {
                out.add_term(wordlike(w.0.iter().map(|g| g.index).collect()), c * scale);
            }
        }
    }
    Ok(())
}

fn check_bound(i: usize, parities: &[Parity]) -> Result<(), Error> {
    if i >= parities.len() {
        return Err(Error::UnboundGenerator { index: i, arity: parities.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{anti, comm, gen, neg, sum, word};

    const EVEN3: [Parity; 3] = [Parity::Even; 3];

    #[test]
    fn bracket_children_are_oriented() {
        // even case: [X2, X1] canonicalizes to -[X1, X2]
        let s = eval_formal(&comm(gen(1), gen(0)), &EVEN3).unwrap();
        assert_eq!(s.to_string(), "-[X1, X2]");
        // anticommutator swaps without a sign
        let s = eval_formal(&anti(gen(1), gen(0)), &EVEN3).unwrap();
        assert_eq!(s.to_string(), "{X1, X2}");
    }

    #[test]
    fn odd_orientation_signs() {
        let odd = [Parity::Odd, Parity::Odd, Parity::Even];
        // odd-odd commutator is symmetric, anticommutator antisymmetric
        let s = eval_formal(&comm(gen(1), gen(0)), &odd).unwrap();
        assert_eq!(s.to_string(), "[X1, X2]");
        let s = eval_formal(&anti(gen(1), gen(0)), &odd).unwrap();
        assert_eq!(s.to_string(), "-{X1, X2}");
    }

    #[test]
    fn self_bracket_vanishes_when_forced() {
        // [A,A] = 0 for even A; {A,A} = 0 for odd A
        let s = eval_formal(&comm(gen(0), gen(0)), &EVEN3).unwrap();
        assert!(s.is_zero());
        let odd = [Parity::Odd; 1];
        let s = eval_formal(&anti(gen(0), gen(0)), &odd).unwrap();
        assert!(s.is_zero());
        let s = eval_formal(&comm(gen(0), gen(0)), &odd).unwrap();
        assert_eq!(s.to_string(), "[X1, X1]");
    }

    #[test]
    fn verbatim_cancellation() {
        let e = sum(vec![comm(gen(0), word(&[1, 2])), neg(comm(gen(0), word(&[1, 2])))]);
        assert!(eval_formal(&e, &EVEN3).unwrap().is_zero());
    }

    #[test]
    fn products_of_brackets_are_rejected() {
        let e = ExprNode::Product(vec![comm(gen(0), gen(1)), gen(2)]);
        assert!(matches!(
            eval_formal(&e, &EVEN3),
            Err(Error::UnsupportedNode(_))
        ));
    }

    #[test]
    fn half_expand_flattens_inner_brackets() {
        // [[X1,X2],X3] -> [X1*X2, X3] - [X2*X1, X3], then oriented to
        // generator-first form: -[X3, X1*X2] + [X3, X2*X1]
        let e = comm(comm(gen(0), gen(1)), gen(2));
        let s = half_expand(&e, &EVEN3).unwrap();
        assert_eq!(s.to_string(), "-[X3, X1*X2] + [X3, X2*X1]");
    }
}
