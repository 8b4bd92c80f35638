//! Built-in algebras used as test subjects and fuzzing seeds.
//!
//! The multiplication tables here are the oracles: each constructor
//! hardcodes the table of a well-known algebra. The JSON files shipped
//! under `fixtures/` mirror these; an integration test keeps the two in
//! sync.

use crate::coeff::Coeff;
use crate::parity::Parity;
use crate::tensor::{BracketTables, StructureTensor};

type Entry = ((usize, usize, usize), Coeff);

fn e(i: usize, j: usize, k: usize, v: i64) -> Entry {
    ((i, j, k), Coeff::from(v))
}

/// Full 2x2 matrix algebra over the rationals; basis
/// `(e11, e12, e21, e22)`, products `e_ab e_cd = delta_bc e_ad`.
pub fn gl2() -> StructureTensor {
    StructureTensor::new("gl(2,Q)", 4, vec![Parity::Even; 4], matrix_unit_entries())
        .expect("fixture table is valid")
}

/// The same matrix-unit table graded as 1|1 supermatrices: `e11`, `e22`
/// even and `e12`, `e21` odd.
pub fn gl11() -> StructureTensor {
    let parity = vec![Parity::Even, Parity::Odd, Parity::Odd, Parity::Even];
    StructureTensor::new("gl(1|1)", 4, parity, matrix_unit_entries()).expect("fixture table is valid")
}

fn matrix_unit_entries() -> Vec<Entry> {
    // basis index of e_ab (a, b in {1,2}) is 2(a-1) + (b-1)
    let mut entries = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b == c {
                        entries.push(e(2 * a + b, 2 * c + d, 2 * a + d, 1));
                    }
                }
            }
        }
    }
    entries
}

/// Quaternions; basis `(1, i, j, k)`.
pub fn quaternions() -> StructureTensor {
    let mut entries = vec![e(0, 0, 0, 1)];
    for m in 1..4 {
        entries.push(e(0, m, m, 1));
        entries.push(e(m, 0, m, 1));
        entries.push(e(m, m, 0, -1));
    }
    // i j = k and cyclic
    for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        entries.push(e(a, b, c, 1));
        entries.push(e(b, a, c, -1));
    }
    StructureTensor::new("quaternions", 4, vec![Parity::Even; 4], entries)
        .expect("fixture table is valid")
}

/// The Fano-plane lines fixing the octonion table: `e_a e_b = e_c`
/// cyclically for each listed `(a, b, c)`.
pub const OCTONION_LINES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7), (2, 5, 7), (6, 1, 7), (3, 6, 5)];

/// Octonions; basis `(1, e1, ..., e7)`. Not associative: the designated
/// control algebra for the failure paths.
pub fn octonions() -> StructureTensor {
    let mut entries = vec![e(0, 0, 0, 1)];
    for m in 1..8 {
        entries.push(e(0, m, m, 1));
        entries.push(e(m, 0, m, 1));
        entries.push(e(m, m, 0, -1));
    }
    for (a, b, c) in OCTONION_LINES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            entries.push(e(x, y, z, 1));
            entries.push(e(y, x, z, -1));
        }
    }
    StructureTensor::new("octonions", 8, vec![Parity::Even; 8], entries)
        .expect("fixture table is valid")
}

/// Grassmann algebra on two odd generators; basis
/// `(1, th1, th2, th1 th2)` with parities `(0, 1, 1, 0)`.
pub fn grassmann2() -> StructureTensor {
    let parity = vec![Parity::Even, Parity::Odd, Parity::Odd, Parity::Even];
    let mut entries = vec![e(0, 0, 0, 1)];
    for m in 1..4 {
        entries.push(e(0, m, m, 1));
        entries.push(e(m, 0, m, 1));
    }
    entries.push(e(1, 2, 3, 1));
    entries.push(e(2, 1, 3, -1));
    StructureTensor::new("grassmann(2)", 4, parity, entries).expect("fixture table is valid")
}

/// Grassmann algebra on one odd generator; basis `(1, th)`.
pub fn grassmann1() -> StructureTensor {
    let parity = vec![Parity::Even, Parity::Odd];
    let entries = vec![e(0, 0, 0, 1), e(0, 1, 1, 1), e(1, 0, 1, 1)];
    StructureTensor::new("grassmann(1)", 2, parity, entries).expect("fixture table is valid")
}

/// The zero algebra: every product vanishes.
pub fn zero_algebra(dim: usize) -> StructureTensor {
    StructureTensor::new("zero", dim, vec![Parity::Even; dim], []).expect("fixture table is valid")
}

/// Bracket tables with `f` the su(2) epsilon table and `c = 0`: a Lie
/// algebra that is not the commutator algebra of any associative product
/// reconstructible from these tables.
pub fn su2_f_only() -> BracketTables {
    let mut f = Vec::new();
    for (i, j, k, v) in [
        (0, 1, 2, 1),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (1, 0, 2, -1),
        (2, 1, 0, -1),
        (0, 2, 1, -1),
    ] {
        f.push(e(i, j, k, v));
    }
    BracketTables::new("su2-f-only", 3, vec![Parity::Even; 3], f, []).expect("fixture table is valid")
}

/// `Q x Q` with componentwise product; basis of orthogonal idempotents.
pub fn pair_algebra() -> StructureTensor {
    StructureTensor::new("QxQ", 2, vec![Parity::Even; 2], [e(0, 0, 0, 1), e(1, 1, 1, 1)])
        .expect("fixture table is valid")
}

/// Dual numbers `Q[x]/(x^2)`; basis `(1, x)`.
pub fn dual_numbers() -> StructureTensor {
    StructureTensor::new(
        "dual-numbers",
        2,
        vec![Parity::Even; 2],
        [e(0, 0, 0, 1), e(0, 1, 1, 1), e(1, 0, 1, 1)],
    )
    .expect("fixture table is valid")
}

/// Group algebra of the cyclic group of order `n`; basis `g^0..g^{n-1}`.
pub fn cyclic_group_algebra(n: usize) -> StructureTensor {
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| e(i, j, (i + j) % n, 1)))
        .collect::<Vec<_>>();
    StructureTensor::new(format!("Q[Z{n}]"), n, vec![Parity::Even; n], entries)
        .expect("fixture table is valid")
}

/// The non-unital algebra `x Q[x] / (x^{n+1})`; basis `x^1..x^n`.
pub fn truncated_polynomial(n: usize) -> StructureTensor {
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i + j <= n {
                entries.push(e(i - 1, j - 1, i + j - 1, 1));
            }
        }
    }
    StructureTensor::new(format!("xQ[x]/x^{}", n + 1), n, vec![Parity::Even; n], entries)
        .expect("fixture table is valid")
}

/// Upper-triangular 2x2 matrices; basis `(e11, e12, e22)`.
pub fn upper_triangular2() -> StructureTensor {
    let entries = vec![e(0, 0, 0, 1), e(0, 1, 1, 1), e(1, 2, 1, 1), e(2, 2, 2, 1)];
    StructureTensor::new("ut(2,Q)", 3, vec![Parity::Even; 3], entries)
        .expect("fixture table is valid")
}

/// The associative seed algebras used by the reconstruction fuzzer,
/// grouped by dimension (2 to 4).
pub fn associative_seeds(dim: usize) -> Vec<StructureTensor> {
    match dim {
        2 => vec![pair_algebra(), dual_numbers(), grassmann1(), cyclic_group_algebra(2)],
        3 => vec![upper_triangular2(), truncated_polynomial(3), cyclic_group_algebra(3)],
        4 => vec![gl2(), quaternions(), grassmann2(), gl11(), cyclic_group_algebra(4), truncated_polynomial(4)],
        _ => vec![cyclic_group_algebra(dim)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Strategy;

    #[test]
    fn seed_algebras_are_associative() {
        for dim in 2..=4 {
            for algebra in associative_seeds(dim) {
                assert!(
                    algebra.check_associativity_with(Strategy::Sequential).holds(),
                    "{} is not associative",
                    algebra.name
                );
            }
        }
    }

    #[test]
    fn octonion_line_orientation() {
        let o = octonions();
        // e6 e1 = e7 and e1 e6 = -e7 per the (6,1,7) line
        assert_eq!(o.entry(6, 1, 7), Coeff::one());
        assert_eq!(o.entry(1, 6, 7), Coeff::minus_one());
        // e3 e6 = e5 per the (3,6,5) line
        assert_eq!(o.entry(3, 6, 5), Coeff::one());
    }

    #[test]
    fn grassmann_products_vanish_on_squares() {
        let g = grassmann2();
        let th1 = g.basis_element(1);
        assert!(g.multiply(&th1, &th1).unwrap().is_zero());
        // th1 th2 = basis element 4
        assert_eq!(g.multiply(&th1, &g.basis_element(2)).unwrap(), g.basis_element(3));
    }
}
