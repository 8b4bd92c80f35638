//! Supercommutative polynomials in even coordinates `z1..zp` and odd
//! coordinates `th1..thq`.
//!
//! Monomials store odd factors as an ascending bit set with the Koszul
//! sign absorbed into the coefficient, so `th2*th1` and `-th1*th2` are
//! the same term. Odd squares vanish.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;
use crate::error::Error;
use crate::parity::Parity;

/// The coordinate context: `even` coordinates `z1..`, `odd` coordinates
/// `th1..` (at most 64 odd coordinates).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Coordinates {
    pub even: usize,
    pub odd: usize,
}

impl Coordinates {
    pub fn new(even: usize, odd: usize) -> Self {
        assert!(odd <= 64, "at most 64 odd coordinates supported");
        Coordinates { even, odd }
    }
}

/// One coordinate of the context.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coord {
    Even(usize),
    Odd(usize),
}

/// A monomial: exponents over the even coordinates plus an odd subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    exponents: Vec<u32>,
    odd_mask: u64,
}

impl Monomial {
    fn unit(coords: Coordinates) -> Self {
        Monomial { exponents: vec![0; coords.even], odd_mask: 0 }
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum::<usize>()
            + self.odd_mask.count_ones() as usize
    }

    pub fn parity(&self) -> Parity {
        if self.odd_mask.count_ones() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    fn is_unit(&self) -> bool {
        self.odd_mask == 0 && self.exponents.iter().all(|&e| e == 0)
    }

    /// Sign of interleaving two disjoint ascending odd sets: counts the
    /// transpositions needed to sort the concatenation.
    fn interleave_sign(left: u64, right: u64) -> bool {
        // negative iff the number of pairs (a in left, b in right, a > b)
        // is odd
        let mut negative = false;
        let mut l = left;
        while l != 0 {
            let a = l.trailing_zeros() as u64;
            l &= l - 1;
            let below = right & ((1u64 << a) - 1);
            if below.count_ones() % 2 == 1 {
                negative = !negative;
            }
        }
        negative
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
            .then_with(|| self.odd_mask.cmp(&other.odd_mask))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "z{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        let mut mask = self.odd_mask;
        while mask != 0 {
            let a = mask.trailing_zeros();
            mask &= mask - 1;
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "th{}", a + 1)?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A supercommutative polynomial: a canonical map from monomials to
/// nonzero coefficients over a fixed coordinate context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperPolynomial {
    coords: Coordinates,
    terms: BTreeMap<Monomial, Coeff>,
}

impl SuperPolynomial {
    pub fn zero(coords: Coordinates) -> Self {
        SuperPolynomial { coords, terms: BTreeMap::new() }
    }

    pub fn constant(coords: Coordinates, c: Coeff) -> Self {
        let mut p = Self::zero(coords);
        p.add_term(Monomial::unit(coords), c);
        p
    }

    pub fn one(coords: Coordinates) -> Self {
        Self::constant(coords, Coeff::one())
    }

    /// The even coordinate `z{i+1}`.
    pub fn even_coord(coords: Coordinates, i: usize) -> Self {
        assert!(i < coords.even, "even coordinate out of range");
        let mut m = Monomial::unit(coords);
        m.exponents[i] = 1;
        let mut p = Self::zero(coords);
        p.add_term(m, Coeff::one());
        p
    }

    /// The odd coordinate `th{a+1}`.
    pub fn odd_coord(coords: Coordinates, a: usize) -> Self {
        assert!(a < coords.odd, "odd coordinate out of range");
        let mut m = Monomial::unit(coords);
        m.odd_mask = 1 << a;
        let mut p = Self::zero(coords);
        p.add_term(m, Coeff::one());
        p
    }

    pub fn monomial(coords: Coordinates, exponents: Vec<u32>, odd: &[usize]) -> Self {
        assert_eq!(exponents.len(), coords.even);
        let mut mask = 0u64;
        for &a in odd {
            assert!(a < coords.odd);
            assert!(mask & (1 << a) == 0, "repeated odd coordinate");
            mask |= 1 << a;
        }
        let mut p = Self::zero(coords);
        p.add_term(Monomial { exponents, odd_mask: mask }, Coeff::one());
        p
    }

    pub fn coords(&self) -> Coordinates {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Parity when homogeneous; the zero polynomial counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(Monomial::parity);
        let first = match parities.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        parities.all(|p| p == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.coords);
        }
        SuperPolynomial {
            coords: self.coords,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn check_context(&self, other: &Self) -> Result<(), Error> {
        if self.coords != other.coords {
            return Err(Error::CoordinateMismatch(format!(
                "({},{}) vs ({},{})",
                self.coords.even, self.coords.odd, other.coords.even, other.coords.odd
            )));
        }
        Ok(())
    }

    /// Left derivative with respect to a coordinate. For an odd
    /// coordinate the factor is commuted to the front before removal.
    pub fn derivative_left(&self, coord: Coord) -> Self {
        self.derivative(coord, true)
    }

    /// Right derivative: the odd factor is commuted to the rear.
    pub fn derivative_right(&self, coord: Coord) -> Self {
        self.derivative(coord, false)
    }

    fn derivative(&self, coord: Coord, from_left: bool) -> Self {
        let mut out = Self::zero(self.coords);
        for (m, c) in &self.terms {
            match coord {
                Coord::Even(i) => {
                    let e = m.exponents[i];
                    if e == 0 {
                        continue;
                    }
                    let mut lowered = m.clone();
                    lowered.exponents[i] = e - 1;
                    out.add_term(lowered, c * &Coeff::from(e as i64));
                }
                Coord::Odd(a) => {
                    let bit = 1u64 << a;
                    if m.odd_mask & bit == 0 {
                        continue;
                    }
                    let passed = if from_left {
                        (m.odd_mask & (bit - 1)).count_ones()
                    } else {
                        (m.odd_mask & !(bit | (bit - 1))).count_ones()
                    };
                    let mut reduced = m.clone();
                    reduced.odd_mask &= !bit;
                    let coeff = if passed % 2 == 1 { -c } else { c.clone() };
                    out.add_term(reduced, coeff);
                }
            }
        }
        out
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.check_context(rhs).expect("coordinate contexts must match");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.check_context(rhs).expect("coordinate contexts must match");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&Coeff::minus_one())
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        self.check_context(rhs).expect("coordinate contexts must match");
        let mut out = SuperPolynomial::zero(self.coords);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if m1.odd_mask & m2.odd_mask != 0 {
                    continue; // an odd square vanishes
                }
                let mut m = Monomial {
                    exponents: m1
                        .exponents
                        .iter()
                        .zip(&m2.exponents)
                        .map(|(a, b)| a + b)
                        .collect(),
                    odd_mask: m1.odd_mask | m2.odd_mask,
                };
                let mut c = c1 * c2;
                if Monomial::interleave_sign(m1.odd_mask, m2.odd_mask) {
                    c = -c;
                }
                m.exponents.shrink_to_fit();
                out.add_term(m, c);
            }
        }
        out
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if !a.is_one() || m.is_unit() {
                write!(f, "{a}")?;
                if !m.is_unit() {
                    write!(f, "*")?;
                }
            }
            if !m.is_unit() {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Enumerates all monomials of total degree at most `max_degree`.
pub fn monomials_up_to(coords: Coordinates, max_degree: usize) -> Vec<SuperPolynomial> {
    fn even_parts(remaining: usize, vars: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=remaining {
            prefix.push(e as u32);
            even_parts(remaining - e, vars - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut result = Vec::new();
    for degree in 0..=max_degree {
        for odd_count in 0..=degree.min(coords.odd) {
            let even_degree = degree - odd_count;
            let mut exponent_sets = Vec::new();
            even_parts(even_degree, coords.even, &mut Vec::new(), &mut exponent_sets);
            // keep only exact-degree exponent vectors
            exponent_sets.retain(|e| e.iter().map(|&x| x as usize).sum::<usize>() == even_degree);
            let odd_masks: Vec<u64> = (0u64..1 << coords.odd)
                .filter(|m| m.count_ones() as usize == odd_count)
                .collect();
            for exps in &exponent_sets {
                for &mask in &odd_masks {
                    let mut p = SuperPolynomial::zero(coords);
                    p.add_term(Monomial { exponents: exps.clone(), odd_mask: mask }, Coeff::one());
                    result.push(p);
                }
            }
        }
    }
    result
}

/// Parses a signed monomial sum like `z1 - 2*z2^3 + 1/2*th1*th2`.
/// Variables are `z<k>` (even) and `th<k>` (odd), 1-based.
pub fn parse_poly(input: &str, coords: Coordinates) -> Result<SuperPolynomial, Error> {
    let mut out = SuperPolynomial::zero(coords);
    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut leading_sign = Coeff::one();
    if let Some(r) = rest.strip_prefix('-') {
        leading_sign = Coeff::minus_one();
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let (term_src, remainder) = split_term(rest);
        let term = parse_term(term_src.trim(), coords)?;
        out = &out + &term.scale(&leading_sign);
        match remainder {
            None => break,
            Some((sign, r)) => {
                leading_sign = sign;
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::Parse("dangling sign in polynomial".into()));
                }
            }
        }
    }
    Ok(out)
}

/// Splits off the leading term at the first top-level `+`/`-`.
fn split_term(src: &str) -> (&str, Option<(Coeff, &str)>) {
    for (pos, ch) in src.char_indices() {
        if pos == 0 {
            continue;
        }
        if ch == '+' {
            return (&src[..pos], Some((Coeff::one(), &src[pos + 1..])));
        }
        if ch == '-' {
            // not a sign inside "p/q" exponents; '-' only separates terms
            return (&src[..pos], Some((Coeff::minus_one(), &src[pos + 1..])));
        }
    }
    (src, None)
}

fn parse_term(src: &str, coords: Coordinates) -> Result<SuperPolynomial, Error> {
    if src.is_empty() {
        return Err(Error::Parse("empty term in polynomial".into()));
    }
    let mut acc = SuperPolynomial::one(coords);
    for factor in src.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term {src:?}")));
        }
        if let Some(rest) = factor.strip_prefix('z') {
            let (idx, exp) = parse_var(rest, factor)?;
            if idx == 0 || idx > coords.even {
                return Err(Error::Parse(format!("even coordinate z{idx} out of range")));
            }
            let z = SuperPolynomial::even_coord(coords, idx - 1);
            for _ in 0..exp {
                acc = &acc * &z;
            }
        } else if let Some(rest) = factor.strip_prefix("th") {
            let (idx, exp) = parse_var(rest, factor)?;
            if idx == 0 || idx > coords.odd {
                return Err(Error::Parse(format!("odd coordinate th{idx} out of range")));
            }
            let th = SuperPolynomial::odd_coord(coords, idx - 1);
            for _ in 0..exp {
                acc = &acc * &th;
            }
        } else {
            let c: Coeff = factor.parse()?;
            acc = acc.scale(&c);
        }
    }
    Ok(acc)
}

fn parse_var(rest: &str, whole: &str) -> Result<(usize, u32), Error> {
    let (index_src, exp) = match rest.split_once('^') {
        None => (rest, 1u32),
        Some((i, e)) => {
            let exp = e
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {whole:?}")))?;
            (i, exp)
        }
    };
    let idx = index_src
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad coordinate name {whole:?}")))?;
    Ok((idx, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const C21: Coordinates = Coordinates { even: 2, odd: 1 };
    const C22: Coordinates = Coordinates { even: 2, odd: 2 };

    #[test]
    fn odd_squares_vanish() {
        let th = SuperPolynomial::odd_coord(C21, 0);
        assert!((&th * &th).is_zero());
    }

    #[test]
    fn odd_factors_anticommute() {
        let t1 = SuperPolynomial::odd_coord(C22, 0);
        let t2 = SuperPolynomial::odd_coord(C22, 1);
        assert_eq!(&t1 * &t2, -&(&t2 * &t1));
        assert_eq!((&t1 * &t2).to_string(), "th1*th2");
        assert_eq!((&t2 * &t1).to_string(), "-th1*th2");
    }

    #[test]
    fn derivatives() {
        // d/dz1 of z1^2 z2 = 2 z1 z2
        let z1 = SuperPolynomial::even_coord(C21, 0);
        let z2 = SuperPolynomial::even_coord(C21, 1);
        let p = &(&z1 * &z1) * &z2;
        assert_eq!(p.derivative_left(Coord::Even(0)).to_string(), "2*z1*z2");
        // left and right odd derivatives of th1*th2 differ by a sign
        let t1 = SuperPolynomial::odd_coord(C22, 0);
        let t2 = SuperPolynomial::odd_coord(C22, 1);
        let w = &t1 * &t2;
        assert_eq!(w.derivative_left(Coord::Odd(1)).to_string(), "-th1");
        assert_eq!(w.derivative_right(Coord::Odd(1)).to_string(), "th1");
        assert_eq!(w.derivative_left(Coord::Odd(0)).to_string(), "th2");
        // second odd derivative vanishes
        assert!(w.derivative_left(Coord::Odd(0)).derivative_left(Coord::Odd(0)).is_zero());
    }

    #[test]
    fn parser_round_trips() {
        let p = parse_poly("z1 - 2*z2^3", C21).unwrap();
        assert_eq!(p.to_string(), "z1 - 2*z2^3");
        let p = parse_poly("-1/2*z1*th1 + 3", C21).unwrap();
        assert_eq!(p.to_string(), "3 - 1/2*z1*th1");
        assert!(parse_poly("z9", C21).is_err());
        assert!(parse_poly("w1", C21).is_err());
        assert!(parse_poly("z1 +", C21).is_err());
        assert!(parse_poly("", C21).is_err());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // p=1, q=1, degree <= 2: 1, z, th, z^2, z th -> 5
        let c = Coordinates::new(1, 1);
        assert_eq!(monomials_up_to(c, 2).len(), 5);
        // every listed monomial is homogeneous
        for m in monomials_up_to(C22, 3) {
            assert!(m.parity().is_some());
            assert!(m.total_degree() <= 3);
        }
    }

    fn arbitrary_poly(coords: Coordinates) -> impl Strategy<Value = SuperPolynomial> {
        let term = (
            proptest::collection::vec(0u32..3, coords.even),
            0u64..(1 << coords.odd),
            -3i64..=3,
        );
        proptest::collection::vec(term, 1..=3).prop_map(move |terms| {
            let mut p = SuperPolynomial::zero(coords);
            for (exps, mask, c) in terms {
                p.add_term(Monomial { exponents: exps, odd_mask: mask }, Coeff::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn supercommutativity(a in arbitrary_poly(C22), b in arbitrary_poly(C22)) {
            // split into homogeneous parts and check the sign rule
            let split = |p: &SuperPolynomial| {
                let mut even = SuperPolynomial::zero(C22);
                let mut odd = SuperPolynomial::zero(C22);
                for (m, c) in p.terms() {
                    if m.parity().is_odd() {
                        odd.add_term(m.clone(), c.clone());
                    } else {
                        even.add_term(m.clone(), c.clone());
                    }
                }
                (even, odd)
            };
            let (ae, ao) = split(&a);
            let (be, bo) = split(&b);
            for x in [ae, ao] {
                for y in [&be, &bo] {
                    let sign = crate::parity::koszul_sign(x.parity().unwrap(), y.parity().unwrap());
                    prop_assert_eq!(&x * y, (y * &x).scale(&sign));
                }
            }
        }

        #[test]
        fn multiplication_is_associative(
            a in arbitrary_poly(C22), b in arbitrary_poly(C22), c in arbitrary_poly(C22)
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn graded_leibniz_for_left_odd_derivative(
            a in arbitrary_poly(C22), b in arbitrary_poly(C22)
        ) {
            // d_L(FG) = (d_L F) G + (-1)^{eps(F)} F (d_L G), F homogeneous
            let split_even: SuperPolynomial = {
                let mut even = SuperPolynomial::zero(C22);
                for (m, c) in a.terms() {
                    if !m.parity().is_odd() {
                        even.add_term(m.clone(), c.clone());
                    }
                }
                even
            };
            for f in [&split_even] {
                let lhs = (&(f * &b)).derivative_left(Coord::Odd(0));
                let rhs = &(&f.derivative_left(Coord::Odd(0)) * &b)
                    + &(f * &b.derivative_left(Coord::Odd(0)));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
