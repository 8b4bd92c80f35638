//! Poisson superbrackets on a flat even symplectic (super)space.
//!
//! The bracket of two polynomials is
//!
//! ```text
//! {F,G} = sum_ab (dF/du^a)_R pi^{ab} (dG/du^b)_L
//! ```
//!
//! with right derivatives on the first argument and left derivatives on
//! the second, an antisymmetric polynomial block `pi^{ij}(z)` over the
//! even coordinates and a constant symmetric block over the odd
//! coordinates. This convention reproduces the graded antisymmetry and
//! Leibniz laws for an even bracket and is locked by the tests.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::Error;
use crate::exec::{self, Strategy};
use crate::fuzz::invert_matrix;
use crate::parity::{koszul_sign, Parity};
use crate::report::Verification;
use crate::superpoly::{monomials_up_to, parse_poly, Coord, Coordinates, SuperPolynomial};

/// How the bivector depends on the coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum StructureKind {
    /// Built by [`PoissonStructure::canonical`]: constant, nondegenerate.
    Canonical,
    /// All entries constant but not built as canonical.
    Constant,
    /// Some even-block entry genuinely depends on the coordinates.
    CoordinateDependent,
}

/// An even Poisson structure on polynomials: antisymmetric even block
/// `pi^{ij}(z)`, constant symmetric odd block `omega^{ab}`.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    coords: Coordinates,
    /// entries for i != j; the mirror of a stored entry is implied
    even_block: BTreeMap<(usize, usize), SuperPolynomial>,
    odd_block: BTreeMap<(usize, usize), Coeff>,
    kind: StructureKind,
}

impl PoissonStructure {
    /// Builds a structure from the even block entries (polynomials in
    /// the even coordinates) and the odd block entries. For each
    /// unordered pair only one orientation may be given; the other is
    /// implied by (anti)symmetry. Explicit mirrors must be consistent.
    pub fn new(
        coords: Coordinates,
        even_entries: impl IntoIterator<Item = ((usize, usize), SuperPolynomial)>,
        odd_entries: impl IntoIterator<Item = ((usize, usize), Coeff)>,
    ) -> Result<Self, Error> {
        let mut even_block: BTreeMap<(usize, usize), SuperPolynomial> = BTreeMap::new();
        for ((i, j), poly) in even_entries {
            if i >= coords.even || j >= coords.even {
                return Err(Error::IndexOutOfRange { index: i.max(j), dim: coords.even });
            }
            if poly.coords() != coords {
                return Err(Error::CoordinateMismatch("bivector entry context".into()));
            }
            if poly.parity() != Some(Parity::Even) {
                return Err(Error::Parse(format!("bivector entry ({i},{j}) must be even")));
            }
            if i == j {
                if !poly.is_zero() {
                    return Err(Error::SymmetryViolation { table: "pi_even", i, j, k: 0 });
                }
                continue;
            }
            let (key, value) = if i < j { ((i, j), poly) } else { ((j, i), -&poly) };
            if let Some(existing) = even_block.get(&key) {
                if *existing != value {
                    return Err(Error::SymmetryViolation { table: "pi_even", i, j, k: 0 });
                }
            } else if !value.is_zero() {
                even_block.insert(key, value);
            }
        }
        let mut odd_block: BTreeMap<(usize, usize), Coeff> = BTreeMap::new();
        for ((a, b), c) in odd_entries {
            if a >= coords.odd || b >= coords.odd {
                return Err(Error::IndexOutOfRange { index: a.max(b), dim: coords.odd });
            }
            let key = (a.min(b), a.max(b));
            if let Some(existing) = odd_block.get(&key) {
                if *existing != c {
                    return Err(Error::SymmetryViolation { table: "pi_odd", i: a, j: b, k: 0 });
                }
            } else if !c.is_zero() {
                odd_block.insert(key, c);
            }
        }
        let coordinate_dependent = even_block.values().any(|p| p.total_degree() > 0);
        let kind = if coordinate_dependent {
            StructureKind::CoordinateDependent
        } else {
            StructureKind::Constant
        };
        Ok(PoissonStructure { coords, even_block, odd_block, kind })
    }

    /// The canonical structure on `pairs` conjugate coordinate pairs and
    /// `odd` odd coordinates: `{z_{2i+1}, z_{2i+2}} = 1` and
    /// `{th_a, th_a} = 1`.
    pub fn canonical(pairs: usize, odd: usize) -> Self {
        let coords = Coordinates::new(2 * pairs, odd);
        let even = (0..pairs).map(|i| ((2 * i, 2 * i + 1), SuperPolynomial::one(coords)));
        let odd_entries = (0..odd).map(|a| ((a, a), Coeff::one()));
        let mut s = Self::new(coords, even, odd_entries).expect("canonical blocks are valid");
        s.kind = StructureKind::Canonical;
        s
    }

    pub fn coords(&self) -> Coordinates {
        self.coords
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    /// `pi^{ij}` with the antisymmetry applied.
    pub fn even_entry(&self, i: usize, j: usize) -> SuperPolynomial {
        if i == j {
            return SuperPolynomial::zero(self.coords);
        }
        let stored = self.even_block.get(&(i.min(j), i.max(j)));
        match stored {
            None => SuperPolynomial::zero(self.coords),
            Some(p) if i < j => p.clone(),
            Some(p) => -p,
        }
    }

    /// `omega^{ab}` (symmetric).
    pub fn odd_entry(&self, a: usize, b: usize) -> Coeff {
        self.odd_block.get(&(a.min(b), a.max(b))).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Whether a constant structure is nondegenerate (invertible blocks).
    /// `None` for coordinate-dependent structures.
    pub fn is_nondegenerate(&self) -> Option<bool> {
        if self.kind == StructureKind::CoordinateDependent {
            return None;
        }
        let p = self.coords.even;
        let even: Vec<Vec<Coeff>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        let e = self.even_entry(i, j);
                        let c = e.terms().next().map(|(_, c)| c.clone());
                        c.unwrap_or_else(Coeff::zero)
                    })
                    .collect()
            })
            .collect();
        let q = self.coords.odd;
        let odd: Vec<Vec<Coeff>> =
            (0..q).map(|a| (0..q).map(|b| self.odd_entry(a, b)).collect()).collect();
        let even_ok = p == 0 || invert_matrix(&even).is_some();
        let odd_ok = q == 0 || invert_matrix(&odd).is_some();
        Some(even_ok && odd_ok)
    }

    fn check_context(&self, f: &SuperPolynomial) -> Result<(), Error> {
        if f.coords() != self.coords {
            return Err(Error::CoordinateMismatch("operand drawn from another coordinate context".into()));
        }
        Ok(())
    }

    /// The Poisson superbracket `{F,G}`.
    pub fn bracket(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
    ) -> Result<SuperPolynomial, Error> {
        self.check_context(f)?;
        self.check_context(g)?;
        let mut out = SuperPolynomial::zero(self.coords);
        for (&(i, j), entry) in &self.even_block {
            // pi[i][j] = entry, pi[j][i] = -entry
            let df_i = f.derivative_right(Coord::Even(i));
            let dg_j = g.derivative_left(Coord::Even(j));
            if !df_i.is_zero() && !dg_j.is_zero() {
                out = &out + &(&(&df_i * entry) * &dg_j);
            }
            let df_j = f.derivative_right(Coord::Even(j));
            let dg_i = g.derivative_left(Coord::Even(i));
            if !df_j.is_zero() && !dg_i.is_zero() {
                out = &out - &(&(&df_j * entry) * &dg_i);
            }
        }
        for (&(a, b), omega) in &self.odd_block {
            let df_a = f.derivative_right(Coord::Odd(a));
            let dg_b = g.derivative_left(Coord::Odd(b));
            if !df_a.is_zero() && !dg_b.is_zero() {
                out = &out + &(&df_a * &dg_b).scale(omega);
            }
            if a != b {
                let df_b = f.derivative_right(Coord::Odd(b));
                let dg_a = g.derivative_left(Coord::Odd(a));
                if !df_b.is_zero() && !dg_a.is_zero() {
                    out = &out + &(&df_b * &dg_a).scale(omega);
                }
            }
        }
        Ok(out)
    }

    /// The phase-weighted cyclic double-bracket sum
    /// `{F,{G,H}} s(F,H) + {H,{F,G}} s(H,G) + {G,{H,F}} s(G,F)`;
    /// it vanishes exactly when the Jacobi identity holds on the triple.
    /// Operands must be parity-homogeneous.
    pub fn jacobiator(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
        h: &SuperPolynomial,
    ) -> Result<SuperPolynomial, Error> {
        let pf = f.parity().ok_or(Error::Inhomogeneous)?;
        let pg = g.parity().ok_or(Error::Inhomogeneous)?;
        let ph = h.parity().ok_or(Error::Inhomogeneous)?;
        let term1 = self.bracket(f, &self.bracket(g, h)?)?.scale(&koszul_sign(pf, ph));
        let term2 = self.bracket(h, &self.bracket(f, g)?)?.scale(&koszul_sign(ph, pg));
        let term3 = self.bracket(g, &self.bracket(h, f)?)?.scale(&koszul_sign(pg, pf));
        Ok(&(&term1 + &term2) + &term3)
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let file: StructureFile = serde_json::from_str(s)?;
        file.into_structure()
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, Error> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// On-disk form:
/// `{"even": p, "odd": q, "pi_even": [[i,j,"poly"],...], "pi_odd": [[a,b,"p/q"],...]}`
/// with 0-based indices and 1-based coordinate names inside the
/// polynomial strings.
#[derive(Serialize, Deserialize)]
struct StructureFile {
    even: usize,
    odd: usize,
    #[serde(default)]
    pi_even: Vec<(usize, usize, String)>,
    #[serde(default)]
    pi_odd: Vec<(usize, usize, Coeff)>,
}

impl StructureFile {
    fn into_structure(self) -> Result<PoissonStructure, Error> {
        let coords = Coordinates::new(self.even, self.odd);
        let even = self
            .pi_even
            .into_iter()
            .map(|(i, j, src)| Ok(((i, j), parse_poly(&src, coords)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        PoissonStructure::new(coords, even, self.pi_odd.into_iter().map(|(a, b, c)| ((a, b), c)))
    }
}

/// The five bracket laws checked by the property suite.
pub const PB_PROPERTIES: [&str; 5] =
    ["antisymmetry", "linearity", "leibniz", "jacobi", "cyclic-product"];

/// A failed property instance: which sample triple broke which law.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PoissonWitness {
    pub property: String,
    pub sample_index: usize,
    pub triple: (String, String, String),
    pub residual: String,
}

/// Per-property verdicts over a sample set.
#[derive(Clone, Debug, Serialize)]
pub struct PoissonReport {
    pub schema: u32,
    pub samples: usize,
    pub checks: Vec<(String, Verification<PoissonWitness>)>,
}

impl PoissonReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.holds())
    }

    pub fn verdict(&self, property: &str) -> &Verification<PoissonWitness> {
        &self
            .checks
            .iter()
            .find(|(name, _)| name == property)
            .expect("known property name")
            .1
    }
}

/// The exhaustive sample set: ordered triples of monomials with total
/// degree at most `max_degree`.
pub fn monomial_triples(
    coords: Coordinates,
    max_degree: usize,
) -> Vec<(SuperPolynomial, SuperPolynomial, SuperPolynomial)> {
    let monomials = monomials_up_to(coords, max_degree);
    let mut out = Vec::new();
    for f in &monomials {
        for g in &monomials {
            for h in &monomials {
                if f.total_degree() + g.total_degree() + h.total_degree() <= max_degree {
                    out.push((f.clone(), g.clone(), h.clone()));
                }
            }
        }
    }
    out
}

/// Seeded random parity-homogeneous polynomial triples of bounded degree.
pub fn random_triples(
    coords: Coordinates,
    count: usize,
    seed: u64,
) -> Vec<(SuperPolynomial, SuperPolynomial, SuperPolynomial)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomials = monomials_up_to(coords, 2);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let want = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let pool: Vec<&SuperPolynomial> =
            monomials.iter().filter(|m| m.parity() == Some(want)).collect();
        let mut p = SuperPolynomial::zero(coords);
        if pool.is_empty() {
            return p;
        }
        for _ in 0..rng.gen_range(1..=3) {
            let pick = pool[rng.gen_range(0..pool.len())];
            let c = Coeff::from(rng.gen_range(-2i64..=2));
            p = &p + &pick.scale(&c);
        }
        p
    };
    (0..count)
        .map(|_| (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng)))
        .collect()
}

/// Evaluates the five bracket laws exactly on every sample triple.
/// Witnesses point at the first failing triple in sample order.
pub fn check_pb_properties(
    structure: &PoissonStructure,
    samples: &[(SuperPolynomial, SuperPolynomial, SuperPolynomial)],
    strategy: Strategy,
) -> Result<PoissonReport, Error> {
    for (f, g, h) in samples {
        structure.check_context(f)?;
        structure.check_context(g)?;
        structure.check_context(h)?;
        for p in [f, g, h] {
            if p.parity().is_none() {
                return Err(Error::Inhomogeneous);
            }
        }
    }
    let checks = PB_PROPERTIES
        .iter()
        .map(|property| {
            let hit = exec::scan_first(samples.len(), strategy, |idx| {
                let (f, g, h) = &samples[idx];
                let residual = property_residual(structure, property, f, g, h)
                    .expect("contexts validated above");
                if residual.is_zero() {
                    None
                } else {
                    Some(PoissonWitness {
                        property: property.to_string(),
                        sample_index: idx,
                        triple: (f.to_string(), g.to_string(), h.to_string()),
                        residual: residual.to_string(),
                    })
                }
            });
            let verdict = match hit {
                None => Verification::Holds,
                Some(w) => Verification::Fails(w),
            };
            (property.to_string(), verdict)
        })
        .collect();
    Ok(PoissonReport { schema: 1, samples: samples.len(), checks })
}

fn property_residual(
    s: &PoissonStructure,
    property: &str,
    f: &SuperPolynomial,
    g: &SuperPolynomial,
    h: &SuperPolynomial,
) -> Result<SuperPolynomial, Error> {
    let pf = f.parity().ok_or(Error::Inhomogeneous)?;
    let pg = g.parity().ok_or(Error::Inhomogeneous)?;
    let ph = h.parity().ok_or(Error::Inhomogeneous)?;
    match property {
        // {F,G} + (-1)^{eps F eps G} {G,F}
        "antisymmetry" => {
            let fg = s.bracket(f, g)?;
            let gf = s.bracket(g, f)?;
            Ok(&fg + &gf.scale(&koszul_sign(pf, pg)))
        }
        // {F+G,H} - {F,H} - {G,H}
        "linearity" => {
            let lhs = s.bracket(&(f + g), h)?;
            Ok(&(&lhs - &s.bracket(f, h)?) - &s.bracket(g, h)?)
        }
        // {F,GH} - {F,G}H - (-1)^{eps H eps G} {F,H}G
        "leibniz" => {
            let lhs = s.bracket(f, &(g * h))?;
            let first = &s.bracket(f, g)? * h;
            let second = (&s.bracket(f, h)? * g).scale(&koszul_sign(ph, pg));
            Ok(&(&lhs - &first) - &second)
        }
        "jacobi" => s.jacobiator(f, g, h),
        // {F,GH} s(F,H) + {H,FG} s(H,G) + {G,HF} s(G,F)
        "cyclic-product" => {
            let t1 = s.bracket(f, &(g * h))?.scale(&koszul_sign(pf, ph));
            let t2 = s.bracket(h, &(f * g))?.scale(&koszul_sign(ph, pg));
            let t3 = s.bracket(g, &(h * f))?.scale(&koszul_sign(pg, pf));
            Ok(&(&t1 + &t2) + &t3)
        }
        _ => Err(Error::Parse(format!("unknown property {property:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &PoissonStructure, i: usize) -> SuperPolynomial {
        SuperPolynomial::even_coord(s.coords(), i)
    }

    #[test]
    fn canonical_pair_brackets() {
        let s = PoissonStructure::canonical(1, 0);
        let q = z(&s, 0);
        let p = z(&s, 1);
        assert_eq!(s.bracket(&q, &p).unwrap().to_string(), "1");
        assert_eq!(s.bracket(&p, &q).unwrap().to_string(), "-1");
        // {q^2, p} = 2q
        let q2 = &q * &q;
        assert_eq!(s.bracket(&q2, &p).unwrap().to_string(), "2*z1");
    }

    #[test]
    fn odd_self_bracket_is_one() {
        let s = PoissonStructure::canonical(0, 1);
        let th = SuperPolynomial::odd_coord(s.coords(), 0);
        assert_eq!(s.bracket(&th, &th).unwrap().to_string(), "1");
    }

    #[test]
    fn bracket_parity_is_additive() {
        let s = PoissonStructure::canonical(1, 1);
        let q = z(&s, 0);
        let th = SuperPolynomial::odd_coord(s.coords(), 0);
        let qth = &q * &th;
        let b = s.bracket(&qth, &th).unwrap();
        assert_eq!(b.parity(), Some(Parity::Even));
        let b = s.bracket(&qth, &q).unwrap();
        assert!(b.parity() == Some(Parity::Odd) || b.is_zero());
    }

    #[test]
    fn bracket_with_constant_vanishes() {
        let s = PoissonStructure::canonical(2, 1);
        let one = SuperPolynomial::one(s.coords());
        let q = z(&s, 0);
        assert!(s.bracket(&one, &q).unwrap().is_zero());
        assert!(s.bracket(&q, &one).unwrap().is_zero());
    }

    #[test]
    fn canonical_structures_pass_the_suite() {
        for (pairs, odd) in [(1usize, 0usize), (1, 1), (2, 0), (2, 1)] {
            let s = PoissonStructure::canonical(pairs, odd);
            let samples = monomial_triples(s.coords(), 3);
            let report = check_pb_properties(&s, &samples, Strategy::Sequential).unwrap();
            assert!(report.all_hold(), "canonical({pairs},{odd}) failed: {report:?}");
        }
    }

    #[test]
    fn counterexample_fails_jacobi_only() {
        // pi[1][2] = z1, pi[1][3] = 1 over three even coordinates
        let coords = Coordinates::new(3, 0);
        let s = PoissonStructure::new(
            coords,
            [
                ((0, 1), parse_poly("z1", coords).unwrap()),
                ((0, 2), SuperPolynomial::one(coords)),
            ],
            [],
        )
        .unwrap();
        assert_eq!(s.kind(), StructureKind::CoordinateDependent);
        let samples = monomial_triples(coords, 3);
        let report = check_pb_properties(&s, &samples, Strategy::Sequential).unwrap();
        assert!(report.verdict("antisymmetry").holds());
        assert!(report.verdict("linearity").holds());
        assert!(report.verdict("leibniz").holds());
        assert!(report.verdict("cyclic-product").holds());
        assert!(!report.verdict("jacobi").holds());
        // the jacobiator of (z1, z2, z3) is exactly -1
        let j = s.jacobiator(&z(&s, 0), &z(&s, 1), &z(&s, 2)).unwrap();
        assert_eq!(j.to_string(), "-1");
    }

    #[test]
    fn jacobiator_on_triple_with_repeats_vanishes() {
        let s = PoissonStructure::canonical(1, 0);
        let f = z(&s, 0);
        assert!(s.jacobiator(&f, &f, &f).unwrap().is_zero());
        let fp = &z(&s, 0) * &z(&s, 1);
        assert!(s.jacobiator(&z(&s, 0), &z(&s, 1), &fp).unwrap().is_zero());
    }

    #[test]
    fn constant_structures_satisfy_jacobi() {
        // random constant antisymmetric blocks are automatically closed
        let coords = Coordinates::new(3, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let entries: Vec<((usize, usize), SuperPolynomial)> = [(0usize, 1usize), (0, 2), (1, 2)]
                .into_iter()
                .map(|(i, j)| {
                    let c = Coeff::from(rng.gen_range(-2i64..=2));
                    ((i, j), SuperPolynomial::constant(coords, c))
                })
                .collect();
            let s = PoissonStructure::new(coords, entries, []).unwrap();
            let samples = monomial_triples(coords, 3);
            let report = check_pb_properties(&s, &samples, Strategy::Sequential).unwrap();
            assert!(report.verdict("jacobi").holds());
        }
    }

    #[test]
    fn cyclic_product_holds_even_without_jacobi() {
        // random degree-<=1 bivectors satisfy antisymmetry + leibniz and
        // hence the cyclic-product law, closed or not
        let coords = Coordinates::new(3, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..8 {
            let entries: Vec<((usize, usize), SuperPolynomial)> = [(0usize, 1usize), (0, 2), (1, 2)]
                .into_iter()
                .map(|(i, j)| {
                    let c = Coeff::from(rng.gen_range(-1i64..=1));
                    let lin = rng.gen_range(0..coords.even);
                    let poly = &SuperPolynomial::constant(coords, c)
                        + &SuperPolynomial::even_coord(coords, lin)
                            .scale(&Coeff::from(rng.gen_range(-1i64..=1)));
                    ((i, j), poly)
                })
                .collect();
            let s = PoissonStructure::new(coords, entries, []).unwrap();
            let samples = monomial_triples(coords, 3);
            let report = check_pb_properties(&s, &samples, Strategy::Sequential).unwrap();
            assert!(report.verdict("antisymmetry").holds());
            assert!(report.verdict("leibniz").holds());
            assert!(report.verdict("cyclic-product").holds(), "cyclic-product must follow");
        }
    }

    #[test]
    fn structure_file_round_trip() {
        let src = r#"{
            "even": 3, "odd": 1,
            "pi_even": [[0, 1, "z1"], [0, 2, "1"]],
            "pi_odd": [[0, 0, "1"]]
        }"#;
        let s = PoissonStructure::from_json_str(src).unwrap();
        assert_eq!(s.coords(), Coordinates::new(3, 1));
        assert_eq!(s.even_entry(1, 0).to_string(), "-z1");
        assert_eq!(s.odd_entry(0, 0), Coeff::one());
    }

    #[test]
    fn invalid_structures_rejected() {
        let coords = Coordinates::new(2, 0);
        // nonzero diagonal
        let err = PoissonStructure::new(
            coords,
            [((0, 0), SuperPolynomial::one(coords))],
            [],
        );
        assert!(matches!(err, Err(Error::SymmetryViolation { .. })));
        // inconsistent mirror
        let err = PoissonStructure::new(
            coords,
            [
                ((0, 1), SuperPolynomial::one(coords)),
                ((1, 0), SuperPolynomial::one(coords)),
            ],
            [],
        );
        assert!(matches!(err, Err(Error::SymmetryViolation { .. })));
        // odd-parity entry
        let c21 = Coordinates::new(2, 1);
        let err = PoissonStructure::new(
            c21,
            [((0, 1), SuperPolynomial::odd_coord(c21, 0))],
            [],
        );
        assert!(matches!(err, Err(Error::Parse(_))));
    }

    #[test]
    fn nondegeneracy_detection() {
        let s = PoissonStructure::canonical(2, 1);
        assert_eq!(s.is_nondegenerate(), Some(true));
        let coords = Coordinates::new(2, 0);
        let degenerate = PoissonStructure::new(coords, [], []).unwrap();
        assert_eq!(degenerate.is_nondegenerate(), Some(false));
    }
}
