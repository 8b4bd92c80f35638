//! n-ary identity families.
//!
//! The ternary catalog generalizes to any number of elements: the cyclic
//! single-commutator identity `[X1, X2..Xn] + cycle = 0` holds in every
//! associative algebra for n >= 3, and a mixed family with two
//! anticommutator terms takes over the role of the fundamental identity
//! for n >= 4. A four-term helper identity links the two families; the
//! classical four-element nested-commutator identity is reproduced and
//! compared against its single-bracket form.
//!
//! These families are stated for ordinary algebras, so generation and
//! verification default to all-even generators.

use std::collections::BTreeMap;

use crate::coeff::Coeff;
use crate::error::Error;
use crate::expr::{comm, anti, gen, neg, sum, word, ExprNode, IdentityExpr};
use crate::formal::eval_formal;
use crate::free::Word;
use crate::parity::Parity;
use crate::report::DerivationReport;

/// The cyclic word of all generators except `outer`, starting right
/// after it: `X_{outer+1} ... X_{outer-1}` (indices mod n).
fn cyclic_word_after(outer: usize, n: usize) -> Vec<usize> {
    (1..n).map(|d| (outer + d) % n).collect()
}

/// `[X1, X2..Xn] + cycle(X1..Xn)`: the n-term cyclic sum of single
/// commutators against length-(n-1) words. Requires n >= 3.
pub fn fundamental_family(n: usize) -> Result<IdentityExpr, Error> {
    if n < 3 {
        return Err(Error::ArityTooSmall { min: 3, got: n });
    }
    let terms = (0..n)
        .map(|outer| comm(gen(outer), word(&cyclic_word_after(outer, n))))
        .collect();
    Ok(IdentityExpr::new(format!("fundamental-{n}"), n, sum(terms)))
}

/// The mixed family: the cyclic commutator sum with the `X_n` term
/// replaced by `-{Xn, X1..X_{n-1}}` and the `X_{n-1}` term by
/// `+{X_{n-1}, Xn X1..X_{n-2}}`. Requires n >= 4.
pub fn mixed_family(n: usize) -> Result<IdentityExpr, Error> {
    if n < 4 {
        return Err(Error::ArityTooSmall { min: 4, got: n });
    }
    let mut terms = vec![comm(gen(0), word(&cyclic_word_after(0, n)))];
    terms.push(neg(anti(gen(n - 1), word(&cyclic_word_after(n - 1, n)))));
    terms.push(anti(gen(n - 2), word(&cyclic_word_after(n - 2, n))));
    for outer in (1..n - 2).rev() {
        terms.push(comm(gen(outer), word(&cyclic_word_after(outer, n))));
    }
    Ok(IdentityExpr::new(format!("mixed-{n}"), n, sum(terms)))
}

/// The four-term helper identity
/// `[Xn, W] + [X_{n-1}, W'] + {Xn, W} - {X_{n-1}, W'}` with `W`, `W'`
/// the cyclic words after `Xn` and `X_{n-1}`. Requires n >= 2.
pub fn helper_family(n: usize) -> Result<IdentityExpr, Error> {
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    let last = n - 1;
    let prev = n - 2;
    let w_last = cyclic_word_after(last, n);
    let w_prev = cyclic_word_after(prev, n);
    let body = sum(vec![
        comm(gen(last), word(&w_last)),
        comm(gen(prev), word(&w_prev)),
        anti(gen(last), word(&w_last)),
        neg(anti(gen(prev), word(&w_prev))),
    ]);
    Ok(IdentityExpr::new(format!("helper-{n}"), n, body))
}

/// The six-term single-bracket form of the three-element nested
/// Jacobi identity: `[X1,X2X3] - [X2,X1X3] + cycle`.
pub fn jacobi_words() -> IdentityExpr {
    let mut terms = Vec::new();
    for r in 0..3 {
        let (a, b, c) = (r % 3, (r + 1) % 3, (r + 2) % 3);
        terms.push(comm(gen(a), word(&[b, c])));
        terms.push(neg(comm(gen(b), word(&[a, c]))));
    }
    IdentityExpr::new("jacobi-words", 3, sum(terms))
}

/// The classical nested form of the three-element Jacobi identity,
/// `[[X1,X2],X3] + [[X3,X1],X2] + [[X2,X3],X1]`.
pub fn jacobi_nested() -> IdentityExpr {
    let body = sum(vec![
        comm(comm(gen(0), gen(1)), gen(2)),
        comm(comm(gen(2), gen(0)), gen(1)),
        comm(comm(gen(1), gen(2)), gen(0)),
    ]);
    IdentityExpr::new("jacobi-nested", 3, body)
}

/// The four-element nested-commutator identity
/// `[[[X1,X2],X3],X4] + [[[X2,X1],X4],X3] + [[[X3,X4],X1],X2] + [[[X4,X3],X2],X1]`.
pub fn nested_four() -> IdentityExpr {
    let triple = |a: usize, b: usize, c: usize, d: usize| {
        comm(comm(comm(gen(a), gen(b)), gen(c)), gen(d))
    };
    let body = sum(vec![
        triple(0, 1, 2, 3),
        triple(1, 0, 3, 2),
        triple(2, 3, 0, 1),
        triple(3, 2, 1, 0),
    ]);
    IdentityExpr::new("nested-four", 4, body)
}

/// The single-bracket form of [`nested_four`]:
/// `[X1,X2X3X4] - [X2,X1X3X4] + [X4,X3X2X1] - [X4,X3X1X2] + cycle`,
/// where the cycle rotates the slot roles of each displayed block. The
/// four blocks complete to instances of the cyclic single-commutator
/// identity on the argument sequences (1,2,3,4), -(2,1,3,4), (4,3,2,1)
/// and -(4,3,1,2).
pub fn nested_four_words() -> IdentityExpr {
    let blocks: [([usize; 4], bool); 4] = [
        ([0, 1, 2, 3], false),
        ([1, 0, 2, 3], true),
        ([3, 2, 1, 0], false),
        ([3, 2, 0, 1], true),
    ];
    let mut terms = Vec::new();
    for r in 0..4 {
        for (sigma, negated) in blocks {
            let outer = sigma[r];
            let w = [sigma[(r + 1) % 4], sigma[(r + 2) % 4], sigma[(r + 3) % 4]];
            let t = comm(gen(outer), word(&w));
            terms.push(if negated { neg(t) } else { t });
        }
    }
    IdentityExpr::new("nested-four-words", 4, sum(terms))
}

/// Signed-word profile of an expression: the multiset of `(word, coeff)`
/// contributions of its top-level summands, before any cross-summand
/// cancellation. Two expressions "coincide term by term" when their
/// profiles are equal.
pub fn expansion_profile(
    node: &ExprNode,
    parities: &[Parity],
) -> Result<BTreeMap<(Word, Coeff), usize>, Error> {
    let mut profile = BTreeMap::new();
    for summand in node.summands() {
        let expanded = summand.eval_free(parities)?;
        for (w, c) in expanded.terms() {
            *profile.entry((w.clone(), c.clone())).or_insert(0) += 1;
        }
    }
    Ok(profile)
}

fn expands_to_zero(identity: &IdentityExpr) -> bool {
    let parities = vec![Parity::Even; identity.arity];
    identity.body.eval_free(&parities).map(|v| v.is_zero()).unwrap_or(false)
}

/// Verifies the four-element nested-commutator identity and its
/// single-bracket form: each expands to zero, and their signed-word
/// profiles coincide.
pub fn nested_four_report() -> DerivationReport {
    let mut report = DerivationReport::new("four-element nested-commutator identity");
    let nested = nested_four();
    let words_form = nested_four_words();
    report.push(
        "nested-form-zero",
        expands_to_zero(&nested),
        "the four nested commutators cancel on expansion",
    );
    report.push(
        "word-form-zero",
        expands_to_zero(&words_form),
        "the sixteen single brackets cancel on expansion",
    );
    let even = vec![Parity::Even; 4];
    // the word form is exactly the nested form rewritten into single
    // brackets (up to overall orientation): formal term-map equality
    let formal_match = match (
        crate::formal::half_expand(&nested.body, &even),
        eval_formal(&words_form.body, &even),
    ) {
        (Ok(nested_half), Ok(words)) => words.add(&nested_half).is_zero(),
        _ => false,
    };
    report.push(
        "single-bracket-rewrite",
        formal_match,
        "the word form equals the half-expanded nested form term by term",
    );
    let profiles_equal = match (
        expansion_profile(&nested.body, &even),
        expansion_profile(&words_form.body, &even),
    ) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    report.push(
        "profiles-coincide",
        profiles_equal,
        "both forms produce the same 32 signed words before cancellation",
    );
    report
}

/// Mechanically verifies that the helper identity converts the mixed
/// family into the fundamental family: as formal bracket term maps,
/// `mixed(n) + helper(n) = fundamental(n)`.
pub fn mixed_from_fundamental_report(ns: impl IntoIterator<Item = usize>) -> DerivationReport {
    let mut report = DerivationReport::new("mixed family derivation");
    for n in ns {
        let ok = (|| -> Result<bool, Error> {
            let even = vec![Parity::Even; n];
            let mixed = eval_formal(&mixed_family(n)?.body, &even)?;
            let helper = eval_formal(&helper_family(n)?.body, &even)?;
            let fundamental = eval_formal(&fundamental_family(n)?.body, &even)?;
            Ok(mixed.add(&helper) == fundamental)
        })()
        .unwrap_or(false);
        report.push(
            format!("mixed({n}) + helper({n}) = fundamental({n})"),
            ok,
            "formal bracket term-map equality",
        );
    }
    // and back: the cyclic sum of the mixed family collapses to
    // (n-2) copies of the fundamental family
    for n in [4usize, 5, 6] {
        let ok = (|| -> Result<bool, Error> {
            let even = vec![Parity::Even; n];
            let mixed = mixed_family(n)?;
            let cyclic = eval_formal(&mixed.cyclic_sum(), &even)?;
            let fundamental = eval_formal(&fundamental_family(n)?.body, &even)?;
            Ok(cyclic == fundamental.scale(&Coeff::from((n as i64) - 2)))
        })()
        .unwrap_or(false);
        report.push(
            format!("cyclic-sum(mixed({n})) = {}*fundamental({n})", n - 2),
            ok,
            "anticommutator terms cancel over the cycle",
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogIdentity;

    #[test]
    fn arity_bounds() {
        assert!(matches!(fundamental_family(2), Err(Error::ArityTooSmall { min: 3, got: 2 })));
        assert!(matches!(mixed_family(3), Err(Error::ArityTooSmall { min: 4, got: 3 })));
        assert!(matches!(helper_family(1), Err(Error::ArityTooSmall { min: 2, got: 1 })));
    }

    #[test]
    fn fundamental_three_is_the_catalog_entry() {
        let family = fundamental_family(3).unwrap();
        let catalog = CatalogIdentity::CommCycle.expr();
        let even = vec![Parity::Even; 3];
        assert_eq!(
            eval_formal(&family.body, &even).unwrap(),
            eval_formal(&catalog.body, &even).unwrap()
        );
    }

    #[test]
    fn families_expand_to_zero() {
        for n in 3..=7 {
            assert!(expands_to_zero(&fundamental_family(n).unwrap()), "fundamental({n})");
        }
        for n in 4..=7 {
            assert!(expands_to_zero(&mixed_family(n).unwrap()), "mixed({n})");
        }
        for n in 2..=7 {
            assert!(expands_to_zero(&helper_family(n).unwrap()), "helper({n})");
        }
    }

    #[test]
    fn helper_two_cancels_pairwise() {
        let id = helper_family(2).unwrap();
        assert_eq!(id.body.to_string(), "[X2, X1] + [X1, X2] + {X2, X1} - {X1, X2}");
        assert!(expands_to_zero(&id));
    }

    #[test]
    fn mixed_four_matches_published_form() {
        let id = mixed_family(4).unwrap();
        assert_eq!(
            id.body.to_string(),
            "[X1, X2*X3*X4] - {X4, X1*X2*X3} + {X3, X4*X1*X2} + [X2, X3*X4*X1]"
        );
    }

    #[test]
    fn fundamental_profile_has_2n_words() {
        for n in 3..=7 {
            let id = fundamental_family(n).unwrap();
            let even = vec![Parity::Even; n];
            assert_eq!(id.body.summands().len(), n);
            let profile = expansion_profile(&id.body, &even).unwrap();
            let total: usize = profile.values().sum();
            assert_eq!(total, 2 * n, "pre-cancellation count for n={n}");
            for ((w, _), _) in &profile {
                assert_eq!(w.len(), n);
            }
        }
    }

    #[test]
    fn jacobi_words_form() {
        let id = jacobi_words();
        assert!(expands_to_zero(&id));
        // the nested form half-expands to the negated word form
        let even = vec![Parity::Even; 3];
        let nested = crate::formal::half_expand(&jacobi_nested().body, &even).unwrap();
        let words = eval_formal(&id.body, &even).unwrap();
        assert!(words.add(&nested).is_zero(), "word form is minus the half-expanded nested form");
        // and the catalog jacobi is the negated nested arrangement
        let catalog = crate::formal::half_expand(&CatalogIdentity::Jacobi.expr().body, &even).unwrap();
        assert!(catalog.sub(&nested).is_zero() || catalog.add(&nested).is_zero());
    }

    #[test]
    fn nested_four_checks() {
        let report = nested_four_report();
        for step in &report.steps {
            assert!(step.passed, "step {} failed", step.name);
        }
    }

    #[test]
    fn derivation_report_passes() {
        let report = mixed_from_fundamental_report(4..=6);
        assert!(report.all_passed(), "{report:?}");
    }
}
