//! Bracket-to-product reconstruction.
//!
//! Given a commutator/anticommutator table pair with the graded
//! symmetries, the candidate product is `XY = ([X,Y] + {X,Y})/2`. If the
//! two double-bracket exchange identities hold for the pair, the
//! reconstructed product is associative; [`theorem2_check`] tests the
//! hypothesis and the conclusion independently and reports whether the
//! implication was ever violated (it must not be).
//!
//! [`proof_chain_check`] replays the algebraic proof of that fact
//! step by step in the free superalgebra and the formal bracket algebra.

use serde::Serialize;

use crate::catalog::CatalogIdentity;
use crate::coeff::Coeff;
use crate::error::Error;
use crate::exec::{self, Strategy};
use crate::expr::{anti, comm, gen, neg, phase, scaled, sum, ExprNode};
use crate::formal::eval_formal;
use crate::free::FreeElement;
use crate::fuzz::{random_associative_tensor, random_bracket_tables};
use crate::parity::{parity_assignments, Parity};
use crate::report::{DerivationReport, TupleWitness, Verification};
use crate::tensor::{BracketTables, StructureTensor};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Builds the product table `F = (c + f)/2` from a bracket-table pair.
/// The symmetry invariants are enforced by [`BracketTables`] itself, so
/// reconstruction cannot fail.
pub fn reconstruct_product(tables: &BracketTables) -> StructureTensor {
    let half = Coeff::fraction(1, 2).expect("nonzero denominator");
    let mut keys: Vec<(usize, usize, usize)> = tables.f_entries().map(|(k, _)| *k).collect();
    keys.extend(tables.c_entries().map(|(k, _)| *k));
    keys.sort_unstable();
    keys.dedup();
    let entries = keys.into_iter().map(|(i, j, k)| {
        let v = &(&tables.f_entry(i, j, k) + &tables.c_entry(i, j, k)) * &half;
        ((i, j, k), v)
    });
    StructureTensor::new(
        tables.name.clone(),
        tables.dim(),
        tables.parity().to_vec(),
        entries,
    )
    .expect("valid tables reconstruct to a valid tensor")
}

/// Report of one hypothesis-conclusion test of the reconstruction
/// theorem.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    /// The two double-bracket identities of the hypothesis, each checked
    /// on every basis triple through the table brackets.
    pub hypothesis: Vec<(String, Verification<TupleWitness>)>,
    pub hypothesis_holds: bool,
    /// Whether the reconstructed product is associative, with the first
    /// witness if not.
    pub product_associative: bool,
    pub associativity_witness: Option<TupleWitness>,
    /// True only if the hypothesis held and the product still failed;
    /// this must never happen.
    pub implication_violated: bool,
}

/// The hypothesis identities of the reconstruction theorem.
pub const HYPOTHESIS_IDENTITIES: [CatalogIdentity; 2] =
    [CatalogIdentity::ExchangeI, CatalogIdentity::ExchangeII];

/// Tests the reconstruction theorem on one table pair: checks the two
/// exchange identities, rebuilds the product, and checks associativity.
pub fn theorem2_check(tables: &BracketTables, strategy: Strategy) -> TheoremReport {
    let hypothesis: Vec<(String, Verification<TupleWitness>)> = HYPOTHESIS_IDENTITIES
        .iter()
        .map(|id| (id.name().to_string(), tables.check_identity_with(*id, strategy)))
        .collect();
    let hypothesis_holds = hypothesis.iter().all(|(_, v)| v.holds());
    let product = reconstruct_product(tables);
    let conclusion = product.check_associativity_with(strategy);
    let product_associative = conclusion.holds();
    TheoremReport {
        schema: 1,
        hypothesis,
        hypothesis_holds,
        product_associative,
        associativity_witness: conclusion.witness().cloned(),
        implication_violated: hypothesis_holds && !product_associative,
    }
}

/// Expression pieces of the associativity proof. Generators are
/// (X, Y, Z) = (0, 1, 2); `ph` abbreviates the Koszul phase
/// `(-1)^{eps(X) eps(Z)}` and `phi` the phase
/// `(-1)^{(eps(X)+eps(Y)) eps(Z)}` produced by moving `XY` past `Z`.
fn phi(e: ExprNode) -> ExprNode {
    phase(0, 2, phase(1, 2, e))
}

/// `4 (XY)Z` in bracket form:
/// `[[X,Y],Z] + [{X,Y},Z] + {[X,Y],Z} + {{X,Y},Z}`.
fn left_assoc_brackets() -> ExprNode {
    let xy_c = || comm(gen(0), gen(1));
    let xy_a = || anti(gen(0), gen(1));
    sum(vec![
        comm(xy_c(), gen(2)),
        comm(xy_a(), gen(2)),
        anti(xy_c(), gen(2)),
        anti(xy_a(), gen(2)),
    ])
}

/// `4 X(YZ)` in bracket form:
/// `[X,[Y,Z]] + [X,{Y,Z}] + {X,[Y,Z]} + {X,{Y,Z}}`.
fn right_assoc_brackets() -> ExprNode {
    let yz_c = || comm(gen(1), gen(2));
    let yz_a = || anti(gen(1), gen(2));
    sum(vec![
        comm(gen(0), yz_c()),
        comm(gen(0), yz_a()),
        anti(gen(0), yz_c()),
        anti(gen(0), yz_a()),
    ])
}

/// The difference `4((XY)Z - X(YZ))` rewritten with the outer elements
/// first (eight terms, Z-outer terms carrying `phi`).
fn difference_form() -> ExprNode {
    sum(vec![
        neg(phi(comm(gen(2), comm(gen(0), gen(1))))),
        neg(comm(gen(0), comm(gen(1), gen(2)))),
        neg(phi(comm(gen(2), anti(gen(0), gen(1))))),
        neg(comm(gen(0), anti(gen(1), gen(2)))),
        phi(anti(gen(2), comm(gen(0), gen(1)))),
        neg(anti(gen(0), comm(gen(1), gen(2)))),
        phi(anti(gen(2), anti(gen(0), gen(1)))),
        neg(anti(gen(0), anti(gen(1), gen(2)))),
    ])
}

/// What remains of the difference after the nested-commutator and
/// nested-anticommutator terms are removed with the exchange identities.
fn reduced_form() -> ExprNode {
    sum(vec![
        neg(phi(comm(gen(2), anti(gen(0), gen(1))))),
        neg(comm(gen(0), anti(gen(1), gen(2)))),
        phi(anti(gen(2), comm(gen(0), gen(1)))),
        neg(anti(gen(0), comm(gen(1), gen(2)))),
    ])
}

/// Replays the proof that the fundamental identity (equivalently, the
/// two exchange identities) forces associativity of the reconstructed
/// product. Each step is checked for all eight parity assignments of
/// (X, Y, Z); equalities between bracket forms are term-map equalities
/// in the formal bracket algebra.
pub fn proof_chain_check() -> DerivationReport {
    let mut report = DerivationReport::new("associativity proof replay");
    let assignments = parity_assignments(3);

    let four = Coeff::from(4);
    let gens = |p: &[Parity]| {
        (
            FreeElement::generator(0, p[0]),
            FreeElement::generator(1, p[1]),
            FreeElement::generator(2, p[2]),
        )
    };

    // step 1: the bracket form of 4 (XY)Z expands correctly
    let left = left_assoc_brackets();
    let ok = assignments.iter().all(|p| {
        let (x, y, z) = gens(p);
        let expected = (&(&x * &y) * &z).scale(&four);
        left.eval_free(p).map(|v| v == expected).unwrap_or(false)
    });
    report.push(
        "left-product-expansion",
        ok,
        "[[X,Y],Z] + [{X,Y},Z] + {[X,Y],Z} + {{X,Y},Z} = 4(XY)Z, all parities",
    );

    // step 2: same for 4 X(YZ)
    let right = right_assoc_brackets();
    let ok = assignments.iter().all(|p| {
        let (x, y, z) = gens(p);
        let expected = (&x * &(&y * &z)).scale(&four);
        right.eval_free(p).map(|v| v == expected).unwrap_or(false)
    });
    report.push(
        "right-product-expansion",
        ok,
        "[X,[Y,Z]] + [X,{Y,Z}] + {X,[Y,Z]} + {X,{Y,Z}} = 4X(YZ), all parities",
    );

    // step 3: reorienting the difference into outer-element-first form
    let difference = difference_form();
    let formal_ok = assignments.iter().all(|p| {
        let direct = eval_formal(&sum(vec![left.clone(), neg(right.clone())]), p);
        let written = eval_formal(&difference, p);
        matches!((direct, written), (Ok(a), Ok(b)) if a == b)
    });
    let expansion_ok = assignments.iter().all(|p| {
        let (x, y, z) = gens(p);
        let expected = (&(&(&x * &y) * &z) - &(&x * &(&y * &z))).scale(&four);
        difference.eval_free(p).map(|v| v == expected).unwrap_or(false)
    });
    report.push(
        "difference-form",
        formal_ok && expansion_ok,
        "eight-term bracket sum equals 4((XY)Z - X(YZ)), formal and expanded",
    );

    // step 4: remove the nested [.,[..]] and {.,{..}} terms using the
    // jacobi identity and one exchange-ii instance, both scaled by the
    // phase (-1)^{eps(X) eps(Z)}
    let jacobi = CatalogIdentity::Jacobi.expr().body;
    let exchange_ii_yzx = CatalogIdentity::ExchangeII.expr().body.permuted(&[1, 2, 0]);
    let after_removal = sum(vec![
        difference.clone(),
        phase(0, 2, jacobi),
        phase(0, 2, scaled(Coeff::minus_one(), exchange_ii_yzx)),
    ]);
    let reduced = reduced_form();
    let ok = assignments.iter().all(|p| {
        let lhs = eval_formal(&after_removal, p);
        let rhs = eval_formal(&reduced, p);
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
    });
    report.push(
        "double-bracket-removal",
        ok,
        "difference + jacobi - exchange-ii(Y,Z,X) leaves the four-term form",
    );

    // step 5: the remaining four terms are two exchange-i instances
    let exchange_i = CatalogIdentity::ExchangeI.expr().body;
    let exchange_i_zxy = exchange_i.permuted(&[2, 0, 1]);
    let remainder = sum(vec![
        reduced.clone(),
        phase(0, 2, exchange_i_zxy),
        phase(0, 2, exchange_i),
    ]);
    let ok = assignments.iter().all(|p| {
        eval_formal(&remainder, p).map(|s| s.is_zero()).unwrap_or(false)
    });
    report.push(
        "exchange-i-elimination",
        ok,
        "four-term form + exchange-i(Z,X,Y) + exchange-i(X,Y,Z) = 0 formally",
    );

    // final: the subtracted identity instances all expand to zero, so
    // the chain proves 4((XY)Z - X(YZ)) = 0 under the hypothesis
    let ok = assignments.iter().all(|p| {
        reduced.eval_free(p).map(|v| {
            let (x, y, z) = gens(p);
            v == (&(&(&x * &y) * &z) - &(&x * &(&y * &z))).scale(&four)
        }).unwrap_or(false)
    });
    report.push(
        "remainder-zero",
        ok,
        "reduced form still expands to 4((XY)Z - X(YZ)); with the removed identities zero, associativity follows",
    );

    report
}

/// Aggregate of a reconstruction fuzzing run.
#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionFuzzReport {
    pub schema: u32,
    pub dims: (usize, usize),
    pub seed: u64,
    /// Tensors sampled as associative algebras, decomposed and rebuilt.
    pub derived_trials: usize,
    pub derived_hypothesis_passes: usize,
    pub derived_exact_reconstructions: usize,
    pub derived_associative: usize,
    /// Unconstrained random table pairs (hypothesis usually fails).
    pub raw_trials: usize,
    pub raw_hypothesis_passes: usize,
    /// Trials where the hypothesis held but the product failed. Must be
    /// zero.
    pub implication_violations: usize,
}

/// Fuzzes the reconstruction theorem two ways: table pairs decomposed
/// from random associative tensors (the hypothesis must hold, the
/// round-trip must be exact, the product must be associative) and raw
/// random table pairs (no expectations beyond the implication).
pub fn fuzz_reconstruction(
    dims: std::ops::RangeInclusive<usize>,
    derived_trials: usize,
    raw_trials: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<ReconstructionFuzzReport, Error> {
    let (lo, hi) = (*dims.start(), *dims.end());
    if lo == 0 || hi < lo {
        return Err(Error::Parse(format!("bad dimension range {lo}..{hi}")));
    }
    let span = hi - lo + 1;

    #[derive(Clone, Copy, Default)]
    struct Acc {
        hyp: usize,
        exact: usize,
        assoc: usize,
        violations: usize,
        raw_hyp: usize,
    }
    let merge = |a: Acc, b: Acc| Acc {
        hyp: a.hyp + b.hyp,
        exact: a.exact + b.exact,
        assoc: a.assoc + b.assoc,
        violations: a.violations + b.violations,
        raw_hyp: a.raw_hyp + b.raw_hyp,
    };

    let derived = exec::map_reduce(
        derived_trials,
        strategy,
        |t| {
            let dim = lo + t % span;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD0_15 ^ (t as u64) << 8);
            let tensor = random_associative_tensor(&mut rng, dim);
            let tables = tensor.decompose();
            let report = theorem2_check(&tables, Strategy::Sequential);
            Acc {
                hyp: report.hypothesis_holds as usize,
                exact: (reconstruct_product(&tables) == tensor) as usize,
                assoc: report.product_associative as usize,
                violations: report.implication_violated as usize,
                raw_hyp: 0,
            }
        },
        Acc::default,
        merge,
    );
    let raw = exec::map_reduce(
        raw_trials,
        strategy,
        |t| {
            let dim = lo + t % span;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xAA_77 ^ (t as u64) << 8);
            let tables = random_bracket_tables(&mut rng, dim);
            let report = theorem2_check(&tables, Strategy::Sequential);
            Acc {
                hyp: 0,
                exact: 0,
                assoc: 0,
                violations: report.implication_violated as usize,
                raw_hyp: report.hypothesis_holds as usize,
            }
        },
        Acc::default,
        merge,
    );

    Ok(ReconstructionFuzzReport {
        schema: 1,
        dims: (lo, hi),
        seed,
        derived_trials,
        derived_hypothesis_passes: derived.hyp,
        derived_exact_reconstructions: derived.exact,
        derived_associative: derived.assoc,
        raw_trials,
        raw_hypothesis_passes: raw.raw_hyp,
        implication_violations: derived.violations + raw.violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn reconstruction_inverts_decomposition() {
        for algebra in [fixtures::gl2(), fixtures::quaternions(), fixtures::octonions(), fixtures::gl11()] {
            let tables = algebra.decompose();
            assert_eq!(reconstruct_product(&tables), algebra, "{}", algebra.name);
            // and the other way around
            assert_eq!(reconstruct_product(&tables).decompose(), tables);
        }
    }

    #[test]
    fn su2_reconstruction_is_half_epsilon() {
        let tables = fixtures::su2_f_only();
        let product = reconstruct_product(&tables);
        assert_eq!(product.entry(0, 1, 2), Coeff::fraction(1, 2).unwrap());
        assert_eq!(product.entry(1, 0, 2), Coeff::fraction(-1, 2).unwrap());
        assert!(product.entry(0, 0, 0).is_zero());
    }

    #[test]
    fn zero_tables_reconstruct_to_zero_algebra() {
        let tables = BracketTables::new("z", 2, vec![Parity::Even; 2], [], []).unwrap();
        let report = theorem2_check(&tables, Strategy::Sequential);
        assert!(report.hypothesis_holds);
        assert!(report.product_associative);
        assert!(!report.implication_violated);
    }

    #[test]
    fn theorem_on_matrix_algebra_tables() {
        let report = theorem2_check(&fixtures::gl2().decompose(), Strategy::Sequential);
        assert!(report.hypothesis_holds);
        assert!(report.product_associative);
    }

    #[test]
    fn theorem_on_su2_tables() {
        let report = theorem2_check(&fixtures::su2_f_only(), Strategy::Sequential);
        // exchange-i holds vacuously (c = 0), exchange-ii fails
        let by_name: std::collections::BTreeMap<_, _> =
            report.hypothesis.iter().map(|(n, v)| (n.as_str(), v.holds())).collect();
        assert_eq!(by_name["exchange-i"], true);
        assert_eq!(by_name["exchange-ii"], false);
        assert!(!report.hypothesis_holds);
        assert!(!report.product_associative, "the half-epsilon product is not associative");
        assert!(!report.implication_violated);
    }

    #[test]
    fn proof_chain_replays() {
        let report = proof_chain_check();
        assert_eq!(report.steps.len(), 6);
        for step in &report.steps {
            assert!(step.passed, "step {} failed", step.name);
        }
    }

    #[test]
    fn reconstruction_fuzz_clean() {
        let report = fuzz_reconstruction(2..=4, 60, 40, 3, Strategy::Sequential).unwrap();
        assert_eq!(report.derived_hypothesis_passes, 60);
        assert_eq!(report.derived_exact_reconstructions, 60);
        assert_eq!(report.derived_associative, 60);
        assert_eq!(report.implication_violations, 0);
    }
}
