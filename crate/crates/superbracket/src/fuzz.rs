//! Randomized exploration of the identity implication lattice.
//!
//! Random sparse structure tensors are sampled and every identity in the
//! catalog (plus contracted associativity) is evaluated on all basis
//! triples. The aggregated table records, for each ordered identity pair
//! (A, B), how many sampled algebras satisfy A but violate B. The
//! associativity <-> fundamental equivalence must never be violated; the
//! other entries map out which identities are strictly weaker.
//!
//! Trials are independent: trial `t` draws from a ChaCha stream derived
//! from `(seed, t)`, so reports are byte-identical for a fixed seed
//! regardless of execution strategy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::CATALOG;
#[cfg(test)]
use crate::catalog::CatalogIdentity;
use crate::coeff::Coeff;
use crate::error::Error;
use crate::exec::{self, Strategy};
use crate::fixtures;
use crate::parity::{koszul_is_negative, Parity};
use crate::tensor::{BracketTables, StructureTensor};

/// The identity battery evaluated per sampled tensor: contracted
/// associativity followed by the six catalog identities.
pub const BATTERY_SIZE: usize = 7;

pub fn battery_names() -> Vec<&'static str> {
    let mut names = vec!["associativity"];
    names.extend(CATALOG.iter().map(|id| id.name()));
    names
}

const ASSOCIATIVITY: usize = 0;
const FUNDAMENTAL: usize = 2; // index of `fundamental` in the battery

fn battery(t: &StructureTensor) -> [bool; BATTERY_SIZE] {
    let mut out = [false; BATTERY_SIZE];
    out[ASSOCIATIVITY] = t.check_associativity_with(Strategy::Sequential).holds();
    for (pos, id) in CATALOG.iter().enumerate() {
        out[pos + 1] = t.check_catalog_identity_with(*id, Strategy::Sequential).holds();
    }
    out
}

fn per_trial_seed(seed: u64, trial: u64) -> u64 {
    // splitmix64 of the pair; keeps trial streams independent of the
    // execution order
    let mut z = seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws a coefficient in `{-2,...,2} \ {0}`.
fn small_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    let v = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
    Coeff::from(v)
}

/// Samples a random sparse parity-consistent structure tensor.
///
/// Three shapes are mixed: unconstrained sparse tables, graded
/// antisymmetric tables (anticommutative products; at dimension 2 these
/// always satisfy the Jacobi-shaped identities) and graded symmetric
/// tables (commutative products). The mix makes the strict implications
/// observable with modest trial counts.
pub fn random_tensor(rng: &mut ChaCha8Rng, dim: usize) -> StructureTensor {
    let parity: Vec<Parity> = if rng.gen_bool(0.5) {
        vec![Parity::Even; dim]
    } else {
        (0..dim).map(|_| if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even }).collect()
    };
    let mode = rng.gen_range(0..4u8);
    let nonzero_target = rng.gen_range(1..=dim.max(2));
    let mut entries: Vec<((usize, usize, usize), Coeff)> = Vec::new();
    for _ in 0..nonzero_target {
        let i = rng.gen_range(0..dim);
        let j = rng.gen_range(0..dim);
        let want = parity[i] + parity[j];
        let candidates: Vec<usize> = (0..dim).filter(|&k| parity[k] == want).collect();
        if candidates.is_empty() {
            continue;
        }
        let k = candidates[rng.gen_range(0..candidates.len())];
        let v = small_coeff(rng);
        match mode {
            2 => {
                // graded antisymmetric: F[j,i,k] = -(-1)^{eps_i eps_j} F[i,j,k]
                if i == j {
                    if !koszul_is_negative(parity[i], parity[j]) {
                        continue; // forced zero on the even diagonal
                    }
                    entries.push(((i, j, k), v));
                } else {
                    let mirrored = if koszul_is_negative(parity[i], parity[j]) { v.clone() } else { -&v };
                    entries.push(((i, j, k), v));
                    entries.push(((j, i, k), mirrored));
                }
            }
            3 => {
                // graded symmetric
                if i == j {
                    if koszul_is_negative(parity[i], parity[j]) {
                        continue; // forced zero on the odd diagonal
                    }
                    entries.push(((i, j, k), v));
                } else {
                    let mirrored = if koszul_is_negative(parity[i], parity[j]) { -&v } else { v.clone() };
                    entries.push(((i, j, k), v));
                    entries.push(((j, i, k), mirrored));
                }
            }
            _ => entries.push(((i, j, k), v)),
        }
    }
    StructureTensor::new("sample", dim, parity, entries).expect("sampled entries are parity-consistent")
}

/// Inverts a square rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert_matrix(m: &[Vec<Coeff>]) -> Option<Vec<Vec<Coeff>>> {
    let n = m.len();
    let mut a: Vec<Vec<Coeff>> = m.to_vec();
    let mut inv: Vec<Vec<Coeff>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Coeff::one() } else { Coeff::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        let inv_pivot = pivot.inverse()?;
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x *= &inv_pivot;
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for c in 0..n {
                let delta = &a[col][c] * &factor;
                a[row][c] -= &delta;
                let delta = &inv[col][c] * &factor;
                inv[row][c] -= &delta;
            }
        }
    }
    Some(inv)
}

/// Samples a random associative tensor: a known associative seed algebra
/// conjugated by a random parity-preserving invertible basis change.
/// Associativity is exactly preserved; the resulting table is generic.
pub fn random_associative_tensor(rng: &mut ChaCha8Rng, dim: usize) -> StructureTensor {
    let seeds = fixtures::associative_seeds(dim);
    let seed_algebra = &seeds[rng.gen_range(0..seeds.len())];
    let parity = seed_algebra.parity().to_vec();
    let s = loop {
        let candidate: Vec<Vec<Coeff>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|a| {
                        if parity[i] != parity[a] {
                            Coeff::zero()
                        } else if rng.gen_bool(0.3) {
                            Coeff::zero()
                        } else {
                            small_coeff(rng)
                        }
                    })
                    .collect()
            })
            .collect();
        if invert_matrix(&candidate).is_some() {
            break candidate;
        }
    };
    let s_inv = invert_matrix(&s).expect("loop guaranteed invertibility");
    let mut entries: Vec<((usize, usize, usize), Coeff)> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            // product of the transformed basis vectors, re-expressed
            let mut product = vec![Coeff::zero(); dim];
            for (&(a, b, c), coeff) in seed_algebra.entries().map(|(k, v)| (k, v)) {
                let w = &(&s[i][a] * &s[j][b]) * coeff;
                if !w.is_zero() {
                    product[c] += &w;
                }
            }
            for m in 0..dim {
                let mut total = Coeff::zero();
                for (c, pc) in product.iter().enumerate() {
                    if !pc.is_zero() {
                        total += &(pc * &s_inv[c][m]);
                    }
                }
                if !total.is_zero() {
                    entries.push(((i, j, m), total));
                }
            }
        }
    }
    StructureTensor::new(format!("{}~", seed_algebra.name), dim, parity, entries)
        .expect("basis change preserves parity consistency")
}

/// Samples bracket tables with the graded symmetries built in
/// (`f` antisymmetric, `c` symmetric), but otherwise unconstrained.
pub fn random_bracket_tables(rng: &mut ChaCha8Rng, dim: usize) -> BracketTables {
    let parity: Vec<Parity> = if rng.gen_bool(0.5) {
        vec![Parity::Even; dim]
    } else {
        (0..dim).map(|_| if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even }).collect()
    };
    let mut f: Vec<((usize, usize, usize), Coeff)> = Vec::new();
    let mut c: Vec<((usize, usize, usize), Coeff)> = Vec::new();
    for _ in 0..rng.gen_range(1..=dim.max(2)) {
        let i = rng.gen_range(0..dim);
        let j = rng.gen_range(0..dim);
        let want = parity[i] + parity[j];
        let candidates: Vec<usize> = (0..dim).filter(|&k| parity[k] == want).collect();
        if candidates.is_empty() {
            continue;
        }
        let k = candidates[rng.gen_range(0..candidates.len())];
        let v = small_coeff(rng);
        let koszul_neg = koszul_is_negative(parity[i], parity[j]);
        if rng.gen_bool(0.5) {
            if i == j && !koszul_neg {
                continue;
            }
            if i != j {
                f.push(((j, i, k), if koszul_neg { v.clone() } else { -&v }));
            }
            f.push(((i, j, k), v));
        } else {
            if i == j && koszul_neg {
                continue;
            }
            if i != j {
                c.push(((j, i, k), if koszul_neg { -&v } else { v.clone() }));
            }
            c.push(((i, j, k), v));
        }
    }
    BracketTables::new("sample", dim, parity, f, c).expect("sampled tables satisfy the symmetries")
}

/// Aggregated implication table over a fuzzing run.
#[derive(Clone, Debug, Serialize)]
pub struct ImplicationReport {
    pub schema: u32,
    pub dims: (usize, usize),
    pub trials: usize,
    pub seed: u64,
    pub identities: Vec<&'static str>,
    /// How many sampled tensors satisfied each identity.
    pub satisfied: Vec<usize>,
    /// `violations[a][b]`: samples satisfying identity `a` but not `b`.
    pub violations: Vec<Vec<usize>>,
    /// First trial index witnessing each violation, if any.
    pub first_violation_trial: Vec<Vec<Option<usize>>>,
    /// Violations of the associativity <-> fundamental equivalence,
    /// in either direction. Must be zero.
    pub equivalence_breaks: usize,
}

impl ImplicationReport {
    /// Samples where identity `a` held but `b` failed.
    pub fn violation_count(&self, a: &str, b: &str) -> usize {
        let ia = self.identities.iter().position(|n| *n == a).expect("known identity");
        let ib = self.identities.iter().position(|n| *n == b).expect("known identity");
        self.violations[ia][ib]
    }
}

#[derive(Clone)]
struct Accumulator {
    satisfied: [usize; BATTERY_SIZE],
    violations: [[usize; BATTERY_SIZE]; BATTERY_SIZE],
    first_trial: [[Option<usize>; BATTERY_SIZE]; BATTERY_SIZE],
}

impl Accumulator {
    fn empty() -> Self {
        Accumulator {
            satisfied: [0; BATTERY_SIZE],
            violations: [[0; BATTERY_SIZE]; BATTERY_SIZE],
            first_trial: [[None; BATTERY_SIZE]; BATTERY_SIZE],
        }
    }

    fn from_trial(trial: usize, outcome: [bool; BATTERY_SIZE]) -> Self {
        let mut acc = Accumulator::empty();
        for a in 0..BATTERY_SIZE {
            if outcome[a] {
                acc.satisfied[a] += 1;
                for b in 0..BATTERY_SIZE {
                    if !outcome[b] {
                        acc.violations[a][b] = 1;
                        acc.first_trial[a][b] = Some(trial);
                    }
                }
            }
        }
        acc
    }

    fn merge(mut self, other: Accumulator) -> Self {
        for a in 0..BATTERY_SIZE {
            self.satisfied[a] += other.satisfied[a];
            for b in 0..BATTERY_SIZE {
                self.violations[a][b] += other.violations[a][b];
                self.first_trial[a][b] = match (self.first_trial[a][b], other.first_trial[a][b]) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                };
            }
        }
        self
    }
}

/// Runs the implication fuzzer: `trials` random tensors with dimensions
/// cycling over `dims`, the full identity battery evaluated on each.
/// Deterministic for a fixed seed.
pub fn fuzz_implications(
    dims: std::ops::RangeInclusive<usize>,
    trials: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<ImplicationReport, Error> {
    let (lo, hi) = (*dims.start(), *dims.end());
    if lo == 0 || hi < lo {
        return Err(Error::Parse(format!("bad dimension range {lo}..{hi}")));
    }
    if trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let span = hi - lo + 1;
    let acc = exec::map_reduce(
        trials,
        strategy,
        |t| {
            let dim = lo + t % span;
            let mut rng = ChaCha8Rng::seed_from_u64(per_trial_seed(seed, t as u64));
            let tensor = random_tensor(&mut rng, dim);
            Accumulator::from_trial(t, battery(&tensor))
        },
        Accumulator::empty,
        Accumulator::merge,
    );
    let equivalence_breaks =
        acc.violations[ASSOCIATIVITY][FUNDAMENTAL] + acc.violations[FUNDAMENTAL][ASSOCIATIVITY];
    Ok(ImplicationReport {
        schema: 1,
        dims: (lo, hi),
        trials,
        seed,
        identities: battery_names(),
        satisfied: acc.satisfied.to_vec(),
        violations: acc.violations.iter().map(|r| r.to_vec()).collect(),
        first_violation_trial: acc.first_trial.iter().map(|r| r.to_vec()).collect(),
        equivalence_breaks,
    })
}

/// Replays the tensor sampled in a given trial of a fuzz run.
pub fn replay_trial(dims: std::ops::RangeInclusive<usize>, seed: u64, trial: usize) -> StructureTensor {
    let (lo, hi) = (*dims.start(), *dims.end());
    let dim = lo + trial % (hi - lo + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(per_trial_seed(seed, trial as u64));
    random_tensor(&mut rng, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_inverse_round_trip() {
        let m = vec![
            vec![Coeff::from(2), Coeff::from(1)],
            vec![Coeff::from(1), Coeff::from(1)],
        ];
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(inv[0][0], Coeff::one());
        assert_eq!(inv[0][1], Coeff::minus_one());
        let singular = vec![
            vec![Coeff::from(1), Coeff::from(2)],
            vec![Coeff::from(2), Coeff::from(4)],
        ];
        assert!(invert_matrix(&singular).is_none());
    }

    #[test]
    fn random_associative_tensors_are_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let dim = rng.gen_range(2..=4);
            let t = random_associative_tensor(&mut rng, dim);
            assert!(t.check_associativity_with(Strategy::Sequential).holds(), "{}", t.name);
        }
    }

    #[test]
    fn implication_fuzz_is_deterministic_and_sound() {
        let a = fuzz_implications(2..=3, 120, 7, Strategy::Sequential).unwrap();
        let b = fuzz_implications(2..=3, 120, 7, Strategy::Parallel).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.equivalence_breaks, 0);
        // fundamental implies the whole battery
        for name in battery_names() {
            assert_eq!(a.violation_count("fundamental", name), 0, "fundamental => {name}");
        }
    }

    #[test]
    fn jacobi_does_not_imply_fundamental() {
        let report = fuzz_implications(2..=3, 400, 7, Strategy::Sequential).unwrap();
        assert!(
            report.violation_count("jacobi", "fundamental") > 0,
            "sampler should exhibit a Jacobi-satisfying non-associative table"
        );
        // replay the recorded witness and confirm it
        let ja = report.identities.iter().position(|n| *n == "jacobi").unwrap();
        let fu = report.identities.iter().position(|n| *n == "fundamental").unwrap();
        let trial = report.first_violation_trial[ja][fu].unwrap();
        let tensor = replay_trial(2..=3, 7, trial);
        assert!(tensor.check_catalog_identity_with(CatalogIdentity::Jacobi, Strategy::Sequential).holds());
        assert!(!tensor.check_catalog_identity_with(CatalogIdentity::Fundamental, Strategy::Sequential).holds());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(fuzz_implications(2..=3, 0, 1, Strategy::Sequential).is_err());
    }
}
