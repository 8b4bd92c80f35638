//! The free associative superalgebra over abstract graded generators.
//!
//! Elements are finite rational linear combinations of generator words;
//! the product of two words is their concatenation. An identity holds in
//! every associative superalgebra exactly when its expansion here is the
//! zero element, which is what makes this module the oracle for the rest
//! of the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;
use crate::error::Error;
use crate::parity::{koszul_is_negative, Parity};

/// A free generator: a small index plus a fixed Grassmann parity.
///
/// Within one expression context an index must always carry the same
/// parity; the checked operations report a violation as a context
/// mismatch.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratorId {
    pub index: u32,
    pub parity: Parity,
}

impl GeneratorId {
    pub fn new(index: u32, parity: Parity) -> Self {
        GeneratorId { index, parity }
    }
}

/// An ordered sequence of generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<GeneratorId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: GeneratorId) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parity of the word: the mod-2 sum of its letter parities.
    pub fn parity(&self) -> Parity {
        Parity::sum(self.0.iter().map(|g| g.parity))
    }

    fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// Canonical term order: by word length first, then lexicographically on
/// the letters. This fixes the iteration order of term maps and hence the
/// rendering of residuals in reports.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (pos, g) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            write!(f, "X{}", g.index + 1)?;
        }
        Ok(())
    }
}

/// An element of the free superalgebra: a canonical map from words to
/// nonzero coefficients. The zero element has an empty term map.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Coeff>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement { terms: BTreeMap::new() }
    }

    /// The unit: the empty word with coefficient one.
    pub fn unit() -> Self {
        FreeElement::from_term(Word::empty(), Coeff::one())
    }

    pub fn generator(index: u32, parity: Parity) -> Self {
        FreeElement::from_term(Word::single(GeneratorId::new(index, parity)), Coeff::one())
    }

    pub fn from_term(word: Word, coeff: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        FreeElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    /// Parity of the element if its support is parity-homogeneous.
    /// The zero element is homogeneous by convention (reported even).
    pub fn parity(&self) -> Option<Parity> {
        let mut words = self.terms.keys();
        let first = match words.next() {
            None => return Some(Parity::Even),
            Some(w) => w.parity(),
        };
        words.all(|w| w.parity() == first).then_some(first)
    }

    /// Splits into (even, odd) homogeneous parts.
    pub fn parity_parts(&self) -> (FreeElement, FreeElement) {
        let mut even = FreeElement::zero();
        let mut odd = FreeElement::zero();
        for (w, c) in &self.terms {
            let target = if w.parity().is_odd() { &mut odd } else { &mut even };
            target.add_term(w.clone(), c.clone());
        }
        (even, odd)
    }

    fn add_term(&mut self, word: Word, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
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

    pub fn scale(&self, c: &Coeff) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Product, checking that shared generator indices agree on parity.
    pub fn try_mul(&self, other: &FreeElement) -> Result<FreeElement, Error> {
        check_contexts(self, other)?;
        Ok(self * other)
    }

    /// Graded commutator `[a,b] = ab - (-1)^{eps(a) eps(b)} ba`, taken
    /// per homogeneous term and extended bilinearly.
    pub fn commutator(&self, other: &FreeElement) -> FreeElement {
        self.bracket(other, true)
    }

    /// Graded anticommutator `{a,b} = ab + (-1)^{eps(a) eps(b)} ba`.
    pub fn anticommutator(&self, other: &FreeElement) -> FreeElement {
        self.bracket(other, false)
    }

    fn bracket(&self, other: &FreeElement, is_commutator: bool) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let c = c1 * c2;
                out.add_term(w1.concat(w2), c.clone());
                let mut swapped = c;
                if koszul_is_negative(w1.parity(), w2.parity()) {
                    swapped = -swapped;
                }
                if is_commutator {
                    swapped = -swapped;
                }
                out.add_term(w2.concat(w1), swapped);
            }
        }
        out
    }
}

/// Rejects elements that bind the same generator index to two parities.
fn check_contexts(a: &FreeElement, b: &FreeElement) -> Result<(), Error> {
    let mut seen: BTreeMap<u32, Parity> = BTreeMap::new();
    for element in [a, b] {
        for (word, _) in element.terms() {
            for g in &word.0 {
                match seen.insert(g.index, g.parity) {
                    Some(p) if p != g.parity => {
                        return Err(Error::ContextMismatch { index: g.index });
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.scale(&Coeff::minus_one())
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

/// Signed monomial list in canonical order, e.g. `X1*X2 - 2*X2*X1`.
impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (word, coeff)) in self.terms.iter().enumerate() {
            let neg = coeff.is_negative();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = coeff.abs();
            if !a.is_one() || word.is_empty() {
                write!(f, "{a}")?;
                if !word.is_empty() {
                    write!(f, "*")?;
                }
            }
            if !word.is_empty() {
                write!(f, "{word}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(i: u32) -> FreeElement {
        FreeElement::generator(i, Parity::Even)
    }

    fn odd_gen(i: u32) -> FreeElement {
        FreeElement::generator(i, Parity::Odd)
    }

    #[test]
    fn product_is_concatenation() {
        let x = gen(0);
        let y = gen(1);
        let xy = &x * &y;
        assert_eq!(xy.num_terms(), 1);
        assert_eq!(xy.to_string(), "X1*X2");
    }

    #[test]
    fn product_is_bilinear() {
        let x = gen(0);
        let y = gen(1);
        let z = gen(2);
        let lhs = &(&x + &y) * &z;
        let rhs = &(&x * &z) + &(&y * &z);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn empty_word_is_unit() {
        let x = gen(0);
        assert_eq!(&FreeElement::unit() * &x, x);
        assert_eq!(&x * &FreeElement::unit(), x);
    }

    #[test]
    fn even_commutator_is_xy_minus_yx() {
        let x = gen(0);
        let y = gen(1);
        let expected = &(&x * &y) - &(&y * &x);
        assert_eq!(x.commutator(&y), expected);
        assert_eq!(x.commutator(&x), FreeElement::zero());
    }

    #[test]
    fn odd_commutator_picks_up_koszul_sign() {
        let t1 = odd_gen(0);
        let t2 = odd_gen(1);
        // odd-odd: [t1,t2] = t1 t2 + t2 t1, {t1,t2} = t1 t2 - t2 t1
        assert_eq!(t1.commutator(&t2), &(&t1 * &t2) + &(&t2 * &t1));
        assert_eq!(t1.anticommutator(&t2), &(&t1 * &t2) - &(&t2 * &t1));
    }

    #[test]
    fn anticommutator_with_zero() {
        let x = gen(0);
        assert_eq!(x.anticommutator(&FreeElement::zero()), FreeElement::zero());
    }

    #[test]
    fn context_mismatch_detected() {
        let even = gen(0);
        let odd = odd_gen(0);
        assert!(matches!(
            even.try_mul(&odd),
            Err(Error::ContextMismatch { index: 0 })
        ));
        assert!(even.try_mul(&gen(1)).is_ok());
    }

    #[test]
    fn parity_of_mixed_element_is_none() {
        let mixed = &gen(0) + &odd_gen(1);
        assert_eq!(mixed.parity(), None);
        let (even, odd) = mixed.parity_parts();
        assert_eq!(even, gen(0));
        assert_eq!(odd, odd_gen(1));
        assert_eq!(FreeElement::zero().parity(), Some(Parity::Even));
    }

    #[test]
    fn term_order_is_length_then_lex() {
        let x = gen(0);
        let y = gen(1);
        let e = &(&(&y * &x) + &x) + &(&x * &y);
        let rendered = e.to_string();
        assert_eq!(rendered, "X1 + X1*X2 + X2*X1");
    }

    fn small_element() -> impl Strategy<Value = FreeElement> {
        // up to 4 terms, words of length <= 4 over 3 generators with
        // parities fixed by index (X1, X2 even, X3 odd)
        let word = proptest::collection::vec(0u32..3, 0..=4);
        let term = (word, -3i64..=3).prop_map(|(letters, c)| {
            let w = Word(
                letters
                    .into_iter()
                    .map(|i| GeneratorId::new(i, if i == 2 { Parity::Odd } else { Parity::Even }))
                    .collect(),
            );
            FreeElement::from_term(w, Coeff::from(c))
        });
        proptest::collection::vec(term, 1..=4)
            .prop_map(|ts| ts.iter().fold(FreeElement::zero(), |acc, t| &acc + t))
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(a in small_element(), b in small_element(), c in small_element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn canonical_form_is_confluent(a in small_element(), b in small_element(), c in small_element()) {
            // the same element assembled in different operation orders
            // has an identical term map
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn graded_antisymmetry(a in small_element(), b in small_element()) {
            let (ae, ao) = a.parity_parts();
            let (be, bo) = b.parity_parts();
            for x in [ae, ao] {
                for y in [&be, &bo] {
                    let sign = crate::parity::koszul_sign(
                        x.parity().unwrap(), y.parity().unwrap());
                    // [x,y] + sign [y,x] = 0 and {x,y} - sign {y,x} = 0
                    let comm = &x.commutator(y) + &y.commutator(&x).scale(&sign);
                    prop_assert!(comm.is_zero());
                    let anti = &x.anticommutator(y) - &y.anticommutator(&x).scale(&sign);
                    prop_assert!(anti.is_zero());
                }
            }
        }

        #[test]
        fn leibniz_rules(a in small_element(), b in small_element(), c in small_element()) {
            let (_, x) = a.parity_parts();
            let (y, _) = b.parity_parts();
            for x in [&x, &a.parity_parts().0] {
                let sign = crate::parity::koszul_sign(x.parity().unwrap(), y.parity().unwrap());
                // [x,yc] = [x,y]c + (-1)^{eps(x)eps(y)} y[x,c]
                let lhs = x.commutator(&(&y * &c));
                let rhs = &(&x.commutator(&y) * &c) + &(&y * &x.commutator(&c)).scale(&sign);
                prop_assert_eq!(lhs, rhs);
                // {x,yc} = {x,y}c - (-1)^{eps(x)eps(y)} y[x,c]
                let lhs = x.anticommutator(&(&y * &c));
                let rhs = &(&x.anticommutator(&y) * &c) - &(&y * &x.commutator(&c)).scale(&sign);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
