//! Z2 grading and the Koszul sign rule.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::Coeff;

/// Grassmann parity of a homogeneous element: even (0) or odd (1).
///
/// Addition is mod 2; the parity of a product of homogeneous elements is
/// the sum of the factor parities.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_u8(v: u8) -> Option<Parity> {
        match v {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    /// Sums the parities of an iterator of homogeneous factors.
    pub fn sum(iter: impl IntoIterator<Item = Parity>) -> Parity {
        iter.into_iter().fold(Parity::Even, |a, b| a + b)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(deserializer)?;
        Parity::from_u8(v).ok_or_else(|| serde::de::Error::custom(format!("parity must be 0 or 1, got {v}")))
    }
}

/// The factor picked up when two graded elements are transposed:
/// `-1` when both are odd, `+1` otherwise.
pub fn koszul_sign(p: Parity, q: Parity) -> Coeff {
    if koszul_is_negative(p, q) {
        Coeff::minus_one()
    } else {
        Coeff::one()
    }
}

pub(crate) fn koszul_is_negative(p: Parity, q: Parity) -> bool {
    p.is_odd() && q.is_odd()
}

/// All `2^n` parity assignments for `n` generators, in binary counting
/// order with the first generator as the least significant bit.
pub fn parity_assignments(n: usize) -> Vec<Vec<Parity>> {
    (0..1usize << n)
        .map(|bits| {
            (0..n)
                .map(|i| if bits >> i & 1 == 1 { Parity::Odd } else { Parity::Even })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_table() {
        assert_eq!(koszul_sign(Parity::Even, Parity::Even), Coeff::one());
        assert_eq!(koszul_sign(Parity::Odd, Parity::Even), Coeff::one());
        assert_eq!(koszul_sign(Parity::Even, Parity::Odd), Coeff::one());
        assert_eq!(koszul_sign(Parity::Odd, Parity::Odd), Coeff::minus_one());
    }

    #[test]
    fn koszul_is_symmetric() {
        for p in [Parity::Even, Parity::Odd] {
            for q in [Parity::Even, Parity::Odd] {
                assert_eq!(koszul_sign(p, q), koszul_sign(q, p));
            }
        }
    }

    #[test]
    fn addition_is_mod_two() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert_eq!(Parity::sum([Parity::Odd, Parity::Odd, Parity::Odd]), Parity::Odd);
    }

    #[test]
    fn assignment_enumeration() {
        let all = parity_assignments(3);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![Parity::Even; 3]);
        assert_eq!(all[7], vec![Parity::Odd; 3]);
        assert_eq!(all[1], vec![Parity::Odd, Parity::Even, Parity::Even]);
    }
}
