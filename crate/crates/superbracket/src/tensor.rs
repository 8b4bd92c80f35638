//! Finite-dimensional (super)algebras presented by structure constants.
//!
//! A [`StructureTensor`] holds the sparse table `F` of basis products
//! `Ti * Tj = sum_k F[i,j,k] Tk` together with the basis parities; a
//! [`BracketTables`] holds the analogous tables `f` (commutator) and `c`
//! (anticommutator). The identity suites evaluate each identity on every
//! basis tuple and report the lexicographically first violation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogIdentity;
use crate::coeff::Coeff;
use crate::error::Error;
use crate::exec::{self, Strategy};
use crate::expr::{BracketKind, ExprNode};
use crate::parity::{koszul_is_negative, koszul_sign, Parity};
use crate::report::{TupleWitness, Verification};

type EntryMap = BTreeMap<(usize, usize, usize), Coeff>;
type PairIndex = BTreeMap<(usize, usize), Vec<(usize, Coeff)>>;

fn build_pair_index(entries: &EntryMap) -> PairIndex {
    let mut by_pair: PairIndex = BTreeMap::new();
    for (&(i, j, k), coeff) in entries {
        by_pair.entry((i, j)).or_default().push((k, coeff.clone()));
    }
    by_pair
}

fn validate_entries(
    entries: &EntryMap,
    dim: usize,
    parity: &[Parity],
) -> Result<(), Error> {
    for &(i, j, k) in entries.keys() {
        for index in [i, j, k] {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        // homogeneous table: a nonzero entry needs eps_i + eps_j + eps_k = 0
        if parity[i] + parity[j] + parity[k] == Parity::Odd {
            return Err(Error::ParityInconsistency { i, j, k });
        }
    }
    Ok(())
}

fn prune_zeros(entries: EntryMap) -> EntryMap {
    entries.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// An element of a finite-dimensional algebra: its dense coordinate
/// vector over the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FDElement {
    pub coeffs: Vec<Coeff>,
}

impl FDElement {
    pub fn zero(dim: usize) -> Self {
        FDElement { coeffs: vec![Coeff::zero(); dim] }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = FDElement::zero(dim);
        e.coeffs[index] = Coeff::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    pub fn scale(&self, c: &Coeff) -> FDElement {
        FDElement { coeffs: self.coeffs.iter().map(|k| k * c).collect() }
    }

    /// Element parity when the support is parity-homogeneous; the zero
    /// element counts as even.
    pub fn parity(&self, basis_parity: &[Parity]) -> Option<Parity> {
        let mut support = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| basis_parity[i]);
        let first = match support.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        support.all(|p| p == first).then_some(first)
    }

    /// Splits into (even, odd) parts along the basis grading.
    pub fn parity_parts(&self, basis_parity: &[Parity]) -> (FDElement, FDElement) {
        let mut even = FDElement::zero(self.dim());
        let mut odd = FDElement::zero(self.dim());
        for (i, c) in self.coeffs.iter().enumerate() {
            if basis_parity[i].is_odd() {
                odd.coeffs[i] = c.clone();
            } else {
                even.coeffs[i] = c.clone();
            }
        }
        (even, odd)
    }

    /// Nonzero coordinates as `(basis index, coefficient)`.
    pub fn support(&self) -> Vec<(usize, Coeff)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

impl Add for &FDElement {
    type Output = FDElement;
    fn add(self, rhs: &FDElement) -> FDElement {
        assert_eq!(self.dim(), rhs.dim());
        FDElement {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FDElement {
    type Output = FDElement;
    fn sub(self, rhs: &FDElement) -> FDElement {
        assert_eq!(self.dim(), rhs.dim());
        FDElement {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FDElement {
    type Output = FDElement;
    fn neg(self) -> FDElement {
        self.scale(&Coeff::minus_one())
    }
}

impl fmt::Display for FDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        if support.is_empty() {
            return write!(f, "0");
        }
        for (pos, (i, c)) in support.iter().enumerate() {
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
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "T{}", i + 1)?;
        }
        Ok(())
    }
}

/// A finite-dimensional (super)algebra given by its structure constants.
///
/// Semantic equality ignores the name: two tensors are equal when they
/// have the same dimension, parities and entries.
#[derive(Clone, Debug)]
pub struct StructureTensor {
    pub name: String,
    dim: usize,
    parity: Vec<Parity>,
    entries: EntryMap,
    by_pair: PairIndex,
}

impl PartialEq for StructureTensor {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.parity == other.parity && self.entries == other.entries
    }
}

impl Eq for StructureTensor {}

impl StructureTensor {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        parity: Vec<Parity>,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Coeff)>,
    ) -> Result<Self, Error> {
        let name = name.into();
        if parity.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: parity.len() });
        }
        let mut merged: EntryMap = BTreeMap::new();
        for ((i, j, k), coeff) in entries {
            *merged.entry((i, j, k)).or_insert_with(Coeff::zero) += &coeff;
        }
        let entries = prune_zeros(merged);
        validate_entries(&entries, dim, &parity)?;
        let by_pair = build_pair_index(&entries);
        Ok(StructureTensor { name, dim, parity, entries, by_pair })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Coeff)> {
        self.entries.iter()
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> Coeff {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn basis_element(&self, index: usize) -> FDElement {
        FDElement::basis(self.dim, index)
    }

    /// Bilinear product: `(xy)^k = sum_{ij} x^i y^j F[i,j,k]`.
    pub fn multiply(&self, x: &FDElement, y: &FDElement) -> Result<FDElement, Error> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        if y.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: y.dim() });
        }
        let mut out = FDElement::zero(self.dim);
        for ((i, j), column) in &self.by_pair {
            let xi = &x.coeffs[*i];
            if xi.is_zero() {
                continue;
            }
            let yj = &y.coeffs[*j];
            if yj.is_zero() {
                continue;
            }
            let scale = xi * yj;
            for (k, coeff) in column {
                out.coeffs[*k] += &(coeff * &scale);
            }
        }
        Ok(out)
    }

    /// Graded bracket derived from the product. Operands are split into
    /// homogeneous parts and the Koszul sign is applied per part.
    pub fn bracket(
        &self,
        kind: BracketKind,
        x: &FDElement,
        y: &FDElement,
    ) -> Result<FDElement, Error> {
        let mut out = FDElement::zero(self.dim);
        let (xe, xo) = x.parity_parts(&self.parity);
        let (ye, yo) = y.parity_parts(&self.parity);
        for (px, xh) in [(Parity::Even, xe), (Parity::Odd, xo)] {
            if xh.is_zero() {
                continue;
            }
            for (py, yh) in [(Parity::Even, &ye), (Parity::Odd, &yo)] {
                if yh.is_zero() {
                    continue;
                }
                let xy = self.multiply(&xh, yh)?;
                let yx = self.multiply(yh, &xh)?;
                let mut swapped = if koszul_is_negative(px, py) { -&yx } else { yx };
                if kind == BracketKind::Commutator {
                    swapped = -&swapped;
                }
                out = &(&out + &xy) + &swapped;
            }
        }
        Ok(out)
    }

    /// Splits the table into anticommutator and commutator parts:
    /// `c[i,j,k] = F[i,j,k] + (-1)^{eps_i eps_j} F[j,i,k]` and
    /// `f[i,j,k] = F[i,j,k] - (-1)^{eps_i eps_j} F[j,i,k]`, so that
    /// `F = (c + f)/2` exactly.
    pub fn decompose(&self) -> BracketTables {
        let mut f: EntryMap = BTreeMap::new();
        let mut c: EntryMap = BTreeMap::new();
        let mut keys: Vec<(usize, usize, usize)> = self.entries.keys().copied().collect();
        keys.extend(self.entries.keys().map(|&(i, j, k)| (j, i, k)));
        keys.sort_unstable();
        keys.dedup();
        for (i, j, k) in keys {
            let direct = self.entry(i, j, k);
            let mut mirrored = self.entry(j, i, k);
            if koszul_is_negative(self.parity[i], self.parity[j]) {
                mirrored = -mirrored;
            }
            let csum = &direct + &mirrored;
            let fdiff = &direct - &mirrored;
            if !csum.is_zero() {
                c.insert((i, j, k), csum);
            }
            if !fdiff.is_zero() {
                f.insert((i, j, k), fdiff);
            }
        }
        BracketTables::new(self.name.clone(), self.dim, self.parity.clone(), f, c)
            .expect("decomposition of a valid tensor yields valid tables")
    }

    /// Associativity in structure-constant form: for every `(i,j,k,m)`,
    /// `sum_n F[i,j,n] F[n,k,m]` must equal
    /// `sum_n (-1)^{eps_i (eps_j + eps_k + eps_n)} F[j,k,n] F[i,n,m]`.
    /// (On a homogeneous table the phase is always `+1`; it is kept for
    /// fidelity to the graded formulation.)
    pub fn check_associativity_with(&self, strategy: Strategy) -> Verification<TupleWitness> {
        self.scan_triples(strategy, |i, j, k| {
            let mut residual = FDElement::zero(self.dim);
            if let Some(col) = self.by_pair.get(&(i, j)) {
                for (n, a) in col {
                    if let Some(col2) = self.by_pair.get(&(*n, k)) {
                        for (m, b) in col2 {
                            residual.coeffs[*m] += &(a * b);
                        }
                    }
                }
            }
            if let Some(col) = self.by_pair.get(&(j, k)) {
                for (n, a) in col {
                    let inner = self.parity[j] + self.parity[k] + self.parity[*n];
                    let negate = self.parity[i].is_odd() && inner.is_odd();
                    if let Some(col2) = self.by_pair.get(&(i, *n)) {
                        for (m, b) in col2 {
                            let term = a * b;
                            residual.coeffs[*m] -= &(if negate { -term } else { term });
                        }
                    }
                }
            }
            residual
        })
    }

    pub fn check_associativity(&self) -> Verification<TupleWitness> {
        self.check_associativity_with(Strategy::default())
    }

    /// Associativity checked on the second code path: products of basis
    /// elements, `(Ti Tj) Tk - Ti (Tj Tk)` for every triple.
    pub fn check_associativity_elements_with(&self, strategy: Strategy) -> Verification<TupleWitness> {
        self.scan_triples(strategy, |i, j, k| {
            let ti = self.basis_element(i);
            let tj = self.basis_element(j);
            let tk = self.basis_element(k);
            let left = self.multiply(&self.multiply(&ti, &tj).unwrap(), &tk).unwrap();
            let right = self.multiply(&ti, &self.multiply(&tj, &tk).unwrap()).unwrap();
            &left - &right
        })
    }

    /// Evaluates a catalog identity on every basis triple, using the
    /// algebra product for words and the derived graded brackets.
    pub fn check_catalog_identity_with(
        &self,
        identity: CatalogIdentity,
        strategy: Strategy,
    ) -> Verification<TupleWitness> {
        let expr = identity.expr();
        self.scan_triples(strategy, |i, j, k| {
            eval_tensor(&expr.body, self, &[i, j, k]).expect("catalog expressions are tensor-evaluable")
        })
    }

    /// The fundamental single-bracket identity evaluated on every basis
    /// triple; by the reconstruction theorem it holds exactly when the
    /// product is associative.
    pub fn check_fundamental_identity_with(&self, strategy: Strategy) -> Verification<TupleWitness> {
        self.check_catalog_identity_with(CatalogIdentity::Fundamental, strategy)
    }

    pub fn check_fundamental_identity(&self) -> Verification<TupleWitness> {
        self.check_fundamental_identity_with(Strategy::default())
    }

    fn scan_triples(
        &self,
        strategy: Strategy,
        residual_at: impl Fn(usize, usize, usize) -> FDElement + Sync + Send,
    ) -> Verification<TupleWitness> {
        let n = self.dim;
        let hit = exec::scan_first(n * n * n, strategy, |flat| {
            let (i, j, k) = (flat / (n * n), flat / n % n, flat % n);
            let residual = residual_at(i, j, k);
            if residual.is_zero() {
                None
            } else {
                Some(TupleWitness { tuple: vec![i, j, k], residual: residual.support() })
            }
        });
        match hit {
            None => Verification::Holds,
            Some(w) => Verification::Fails(w),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let file: AlgebraFile = serde_json::from_str(s)?;
        file.into_tensor()
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, Error> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(&self.name).unwrap()));
        out.push_str(&format!("  \"dim\": {},\n", self.dim));
        out.push_str(&format!("  \"parity\": {},\n", render_parity_row(&self.parity)));
        out.push_str(&render_entry_rows("F", &self.entries, true));
        out.push_str("}");
        out
    }
}

fn render_parity_row(parity: &[Parity]) -> String {
    let cells: Vec<String> = parity.iter().map(|p| p.as_u8().to_string()).collect();
    format!("[{}]", cells.join(", "))
}

fn render_entry_rows(key: &str, entries: &EntryMap, last: bool) -> String {
    let mut out = format!("  \"{key}\": [\n");
    let rows: Vec<String> = entries
        .iter()
        .map(|(&(i, j, k), c)| {
            format!("    [{i}, {j}, {k}, {}]", serde_json::to_string(c).unwrap())
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str(if rows.is_empty() { "]" } else { "\n  ]" });
    out.push_str(if last { "\n" } else { ",\n" });
    out
}

/// On-disk form of an algebra:
/// `{"name", "dim", "parity": [0|1,...], "F": [[i,j,k,"p/q"],...]}`
/// with 0-based indices; omitted entries are zero.
#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    parity: Vec<Parity>,
    #[serde(rename = "F")]
    entries: Vec<(usize, usize, usize, Coeff)>,
}

impl AlgebraFile {
    fn into_tensor(self) -> Result<StructureTensor, Error> {
        StructureTensor::new(
            self.name,
            self.dim,
            self.parity,
            self.entries.into_iter().map(|(i, j, k, c)| ((i, j, k), c)),
        )
    }
}

/// Paired bracket/antibracket tables `f[i,j,k]`, `c[i,j,k]` over a graded
/// basis, with the graded symmetries
/// `f[i,j,k] = -(-1)^{eps_i eps_j} f[j,i,k]` and
/// `c[i,j,k] = +(-1)^{eps_i eps_j} c[j,i,k]` enforced on construction.
#[derive(Clone, Debug)]
pub struct BracketTables {
    pub name: String,
    dim: usize,
    parity: Vec<Parity>,
    f: EntryMap,
    c: EntryMap,
    f_by_pair: PairIndex,
    c_by_pair: PairIndex,
}

impl PartialEq for BracketTables {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.parity == other.parity
            && self.f == other.f
            && self.c == other.c
    }
}

impl Eq for BracketTables {}

impl BracketTables {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        parity: Vec<Parity>,
        f: impl IntoIterator<Item = ((usize, usize, usize), Coeff)>,
        c: impl IntoIterator<Item = ((usize, usize, usize), Coeff)>,
    ) -> Result<Self, Error> {
        if parity.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: parity.len() });
        }
        let f = prune_zeros(f.into_iter().collect());
        let c = prune_zeros(c.into_iter().collect());
        validate_entries(&f, dim, &parity)?;
        validate_entries(&c, dim, &parity)?;
        let check_symmetry = |table: &EntryMap, antisymmetric: bool, label: &'static str| {
            let mut keys: Vec<_> = table.keys().copied().collect();
            keys.extend(table.keys().map(|&(i, j, k)| (j, i, k)));
            keys.sort_unstable();
            keys.dedup();
            for (i, j, k) in keys {
                let direct = table.get(&(i, j, k)).cloned().unwrap_or_else(Coeff::zero);
                let mut expected = table.get(&(j, i, k)).cloned().unwrap_or_else(Coeff::zero);
                if koszul_is_negative(parity[i], parity[j]) {
                    expected = -expected;
                }
                if antisymmetric {
                    expected = -expected;
                }
                if direct != expected {
                    return Err(Error::SymmetryViolation { table: label, i, j, k });
                }
            }
            Ok(())
        };
        check_symmetry(&f, true, "f")?;
        check_symmetry(&c, false, "c")?;
        let f_by_pair = build_pair_index(&f);
        let c_by_pair = build_pair_index(&c);
        Ok(BracketTables { name: name.into(), dim, parity, f, c, f_by_pair, c_by_pair })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn f_entry(&self, i: usize, j: usize, k: usize) -> Coeff {
        self.f.get(&(i, j, k)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn c_entry(&self, i: usize, j: usize, k: usize) -> Coeff {
        self.c.get(&(i, j, k)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn f_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Coeff)> {
        self.f.iter()
    }

    pub fn c_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Coeff)> {
        self.c.iter()
    }

    /// Table-defined bracket, bilinear:
    /// `[x,y]^k = sum_{ij} x^i y^j f[i,j,k]` (and `c` for the
    /// anticommutator).
    pub fn bracket(
        &self,
        kind: BracketKind,
        x: &FDElement,
        y: &FDElement,
    ) -> Result<FDElement, Error> {
        if x.dim() != self.dim || y.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim().max(y.dim()) });
        }
        let table = match kind {
            BracketKind::Commutator => &self.f_by_pair,
            BracketKind::Anticommutator => &self.c_by_pair,
        };
        let mut out = FDElement::zero(self.dim);
        for ((i, j), column) in table {
            let xi = &x.coeffs[*i];
            if xi.is_zero() {
                continue;
            }
            let yj = &y.coeffs[*j];
            if yj.is_zero() {
                continue;
            }
            let scale = xi * yj;
            for (k, coeff) in column {
                out.coeffs[*k] += &(coeff * &scale);
            }
        }
        Ok(out)
    }

    /// Evaluates a (product-free) catalog identity on every basis triple
    /// using the table brackets.
    pub fn check_identity_with(
        &self,
        identity: CatalogIdentity,
        strategy: Strategy,
    ) -> Verification<TupleWitness> {
        let expr = identity.expr();
        let n = self.dim;
        let hit = exec::scan_first(n * n * n, strategy, |flat| {
            let (i, j, k) = (flat / (n * n), flat / n % n, flat % n);
            let residual = eval_tables(&expr.body, self, &[i, j, k])
                .expect("double-bracket identities are table-evaluable");
            if residual.is_zero() {
                None
            } else {
                Some(TupleWitness { tuple: vec![i, j, k], residual: residual.support() })
            }
        });
        match hit {
            None => Verification::Holds,
            Some(w) => Verification::Fails(w),
        }
    }

    /// The four structure-constant identities in contracted form, checked
    /// for every `(i,j,k,m)`. Term patterns (with `s(a,b)` the Koszul
    /// sign of `eps_a eps_b`):
    ///
    /// ```text
    /// jacobi       s(i,k) f[i,j,n] f[n,k,m] + s(j,k) f[k,i,n] f[n,j,m] + s(i,j) f[j,k,n] f[n,i,m]
    /// anti-jacobi  s(i,k) c[i,j,n] f[n,k,m] + s(j,k) c[k,i,n] f[n,j,m] + s(i,j) c[j,k,n] f[n,i,m]
    /// exchange-i   s(i,k) f[i,j,n] c[n,k,m] - s(j,k) f[k,i,n] c[n,j,m] + s(i,j) c[j,k,n] f[n,i,m]
    /// exchange-ii  s(i,k) c[i,j,n] c[n,k,m] - s(j,k) c[k,i,n] c[n,j,m] + s(i,j) f[j,k,n] f[n,i,m]
    /// ```
    pub fn check_sc_identities_with(
        &self,
        strategy: Strategy,
    ) -> Vec<(CatalogIdentity, Verification<TupleWitness>)> {
        SC_IDENTITIES
            .iter()
            .map(|(identity, terms)| (*identity, self.check_sc_identity(terms, strategy)))
            .collect()
    }

    pub fn check_sc_identities(&self) -> Vec<(CatalogIdentity, Verification<TupleWitness>)> {
        self.check_sc_identities_with(Strategy::default())
    }

    fn table(&self, kind: TableKind) -> &PairIndex {
        match kind {
            TableKind::F => &self.f_by_pair,
            TableKind::C => &self.c_by_pair,
        }
    }

    fn check_sc_identity(
        &self,
        terms: &[ScTerm; 3],
        strategy: Strategy,
    ) -> Verification<TupleWitness> {
        let n = self.dim;
        let hit = exec::scan_first(n * n * n, strategy, |flat| {
            let (i, j, k) = (flat / (n * n), flat / n % n, flat % n);
            // per-term first index pairs and phase pairs
            let pairs = [(i, j), (k, i), (j, k)];
            let phases = [(i, k), (j, k), (i, j)];
            let outer = [k, j, i];
            let mut residual = FDElement::zero(n);
            for (term, ((pair, phase_pair), outer_idx)) in
                terms.iter().zip(pairs.iter().zip(&phases).zip(&outer))
            {
                let mut sign = Coeff::from(term.sign as i64);
                if koszul_is_negative(self.parity[phase_pair.0], self.parity[phase_pair.1]) {
                    sign = -sign;
                }
                if let Some(col) = self.table(term.first).get(pair) {
                    for (nn, a) in col {
                        if let Some(col2) = self.table(term.second).get(&(*nn, *outer_idx)) {
                            for (m, b) in col2 {
                                residual.coeffs[*m] += &(&(a * b) * &sign);
                            }
                        }
                    }
                }
            }
            if residual.is_zero() {
                None
            } else {
                Some(TupleWitness { tuple: vec![i, j, k], residual: residual.support() })
            }
        });
        match hit {
            None => Verification::Holds,
            Some(w) => Verification::Fails(w),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let file: BracketsFile = serde_json::from_str(s)?;
        file.into_tables()
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, Error> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(&self.name).unwrap()));
        out.push_str(&format!("  \"dim\": {},\n", self.dim));
        out.push_str(&format!("  \"parity\": {},\n", render_parity_row(&self.parity)));
        out.push_str(&render_entry_rows("f", &self.f, false));
        out.push_str(&render_entry_rows("c", &self.c, true));
        out.push_str("}");
        out
    }
}

#[derive(Clone, Copy)]
enum TableKind {
    F,
    C,
}

struct ScTerm {
    first: TableKind,
    second: TableKind,
    sign: i8,
}

const fn sc(first: TableKind, second: TableKind, sign: i8) -> ScTerm {
    ScTerm { first, second, sign }
}

static SC_IDENTITIES: [(CatalogIdentity, [ScTerm; 3]); 4] = [
    (
        CatalogIdentity::Jacobi,
        [sc(TableKind::F, TableKind::F, 1), sc(TableKind::F, TableKind::F, 1), sc(TableKind::F, TableKind::F, 1)],
    ),
    (
        CatalogIdentity::AntiJacobi,
        [sc(TableKind::C, TableKind::F, 1), sc(TableKind::C, TableKind::F, 1), sc(TableKind::C, TableKind::F, 1)],
    ),
    (
        CatalogIdentity::ExchangeI,
        [sc(TableKind::F, TableKind::C, 1), sc(TableKind::F, TableKind::C, -1), sc(TableKind::C, TableKind::F, 1)],
    ),
    (
        CatalogIdentity::ExchangeII,
        [sc(TableKind::C, TableKind::C, 1), sc(TableKind::C, TableKind::C, -1), sc(TableKind::F, TableKind::F, 1)],
    ),
];

/// On-disk form of a bracket-table pair: like the algebra format with
/// keys `"f"` and `"c"` instead of `"F"`.
#[derive(Serialize, Deserialize)]
struct BracketsFile {
    name: String,
    dim: usize,
    parity: Vec<Parity>,
    #[serde(default)]
    f: Vec<(usize, usize, usize, Coeff)>,
    #[serde(default)]
    c: Vec<(usize, usize, usize, Coeff)>,
}

impl BracketsFile {
    fn into_tables(self) -> Result<BracketTables, Error> {
        BracketTables::new(
            self.name,
            self.dim,
            self.parity,
            self.f.into_iter().map(|(i, j, k, c)| ((i, j, k), c)),
            self.c.into_iter().map(|(i, j, k, c)| ((i, j, k), c)),
        )
    }
}

/// Evaluates an expression with generator leaves bound to basis elements
/// of `algebra`: products use the algebra multiplication, brackets the
/// derived graded brackets, phases the parities of the bound basis
/// elements.
pub fn eval_tensor(
    node: &ExprNode,
    algebra: &StructureTensor,
    binding: &[usize],
) -> Result<FDElement, Error> {
    match node {
        ExprNode::Gen(i) => {
            let b = bound(binding, *i)?;
            Ok(algebra.basis_element(b))
        }
        ExprNode::Product(children) => {
            let mut iter = children.iter();
            let first = iter.next().ok_or(Error::UnsupportedNode("empty product"))?;
            let mut acc = eval_tensor(first, algebra, binding)?;
            for child in iter {
                acc = algebra.multiply(&acc, &eval_tensor(child, algebra, binding)?)?;
            }
            Ok(acc)
        }
        ExprNode::Bracket(kind, l, r) => {
            let l = eval_tensor(l, algebra, binding)?;
            let r = eval_tensor(r, algebra, binding)?;
            algebra.bracket(*kind, &l, &r)
        }
        ExprNode::Scaled(c, e) => Ok(eval_tensor(e, algebra, binding)?.scale(c)),
        ExprNode::KoszulScaled(i, j, e) => {
            let (bi, bj) = (bound(binding, *i)?, bound(binding, *j)?);
            let s = koszul_sign(algebra.parity[bi], algebra.parity[bj]);
            Ok(eval_tensor(e, algebra, binding)?.scale(&s))
        }
        ExprNode::Sum(children) => {
            let mut acc = FDElement::zero(algebra.dim);
            for child in children {
                acc = &acc + &eval_tensor(child, algebra, binding)?;
            }
            Ok(acc)
        }
    }
}

/// Evaluates a bracket expression with leaves bound to basis elements,
/// interpreting brackets through the `f`/`c` tables. There is no product
/// on a bracket-table pair, so product nodes are rejected.
pub fn eval_tables(
    node: &ExprNode,
    tables: &BracketTables,
    binding: &[usize],
) -> Result<FDElement, Error> {
    match node {
        ExprNode::Gen(i) => {
            let b = bound(binding, *i)?;
            Ok(FDElement::basis(tables.dim, b))
        }
        ExprNode::Product(_) => Err(Error::UnsupportedNode("product over bracket tables")),
        ExprNode::Bracket(kind, l, r) => {
            let l = eval_tables(l, tables, binding)?;
            let r = eval_tables(r, tables, binding)?;
            tables.bracket(*kind, &l, &r)
        }
        ExprNode::Scaled(c, e) => Ok(eval_tables(e, tables, binding)?.scale(c)),
        ExprNode::KoszulScaled(i, j, e) => {
            let (bi, bj) = (bound(binding, *i)?, bound(binding, *j)?);
            let s = koszul_sign(tables.parity[bi], tables.parity[bj]);
            Ok(eval_tables(e, tables, binding)?.scale(&s))
        }
        ExprNode::Sum(children) => {
            let mut acc = FDElement::zero(tables.dim);
            for child in children {
                acc = &acc + &eval_tables(child, tables, binding)?;
            }
            Ok(acc)
        }
    }
}

fn bound(binding: &[usize], leaf: usize) -> Result<usize, Error> {
    binding
        .get(leaf)
        .copied()
        .ok_or(Error::UnboundGenerator { index: leaf, arity: binding.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn matrix_units_multiply() {
        let gl2 = fixtures::gl2();
        // e11 * e12 = e12 (basis order e11, e12, e21, e22)
        let p = gl2.multiply(&gl2.basis_element(0), &gl2.basis_element(1)).unwrap();
        assert_eq!(p, gl2.basis_element(1));
        // e12 * e11 = 0
        let p = gl2.multiply(&gl2.basis_element(1), &gl2.basis_element(0)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn quaternion_table() {
        let q = fixtures::quaternions();
        // i * j = k (basis order 1, i, j, k)
        let p = q.multiply(&q.basis_element(1), &q.basis_element(2)).unwrap();
        assert_eq!(p, q.basis_element(3));
        // i * i = -1
        let p = q.multiply(&q.basis_element(1), &q.basis_element(1)).unwrap();
        assert_eq!(p, -&q.basis_element(0));
    }

    #[test]
    fn supermatrix_units_multiply() {
        let g = fixtures::gl11();
        // E12 * E21 = E11 (basis order E11, E12, E21, E22)
        let p = g.multiply(&g.basis_element(1), &g.basis_element(2)).unwrap();
        assert_eq!(p, g.basis_element(0));
    }

    #[test]
    fn dimension_mismatch_reported() {
        let q = fixtures::quaternions();
        let bad = FDElement::zero(3);
        assert!(matches!(
            q.multiply(&bad, &q.basis_element(0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn parity_inconsistent_entry_rejected() {
        let err = StructureTensor::new(
            "bad",
            2,
            vec![Parity::Even, Parity::Odd],
            [((0, 1, 0), Coeff::one())],
        );
        assert!(matches!(err, Err(Error::ParityInconsistency { i: 0, j: 1, k: 0 })));
    }

    #[test]
    fn decompose_of_commutative_table_has_zero_f() {
        let t = StructureTensor::new(
            "sym",
            2,
            vec![Parity::Even; 2],
            [((0, 1, 0), Coeff::one()), ((1, 0, 0), Coeff::one())],
        )
        .unwrap();
        let tables = t.decompose();
        assert_eq!(tables.f_entries().count(), 0);
        assert_eq!(tables.c_entry(0, 1, 0), Coeff::from(2));
    }

    #[test]
    fn quaternion_commutator_doubles() {
        // [i, j] = 2k
        let tables = fixtures::quaternions().decompose();
        assert_eq!(tables.f_entry(1, 2, 3), Coeff::from(2));
        assert_eq!(tables.f_entry(2, 1, 3), Coeff::from(-2));
    }

    #[test]
    fn associative_fixtures_pass_both_paths() {
        for algebra in [fixtures::gl2(), fixtures::quaternions(), fixtures::grassmann2(), fixtures::gl11()] {
            let a = algebra.check_associativity_with(Strategy::Sequential);
            let b = algebra.check_associativity_elements_with(Strategy::Sequential);
            assert!(a.holds(), "{} contracted check failed", algebra.name);
            assert!(b.holds(), "{} element check failed", algebra.name);
            assert!(algebra.check_fundamental_identity_with(Strategy::Sequential).holds());
        }
    }

    #[test]
    fn octonions_fail_with_first_witness() {
        let o = fixtures::octonions();
        let assoc = o.check_associativity_with(Strategy::Sequential);
        let fund = o.check_fundamental_identity_with(Strategy::Sequential);
        let w = assoc.witness().expect("octonions are not associative");
        // lexicographically first violating triple
        assert_eq!(w.tuple, vec![1, 2, 4]);
        assert!(!fund.holds());
        // dual paths agree on the verdict
        let via_elements = o.check_associativity_elements_with(Strategy::Sequential);
        assert!(!via_elements.holds());
        assert_eq!(via_elements.witness().unwrap().tuple, w.tuple);
    }

    #[test]
    fn dim_one_algebra_satisfies_fundamental() {
        let t = StructureTensor::new("line", 1, vec![Parity::Even], [((0, 0, 0), Coeff::one())]).unwrap();
        assert!(t.check_fundamental_identity_with(Strategy::Sequential).holds());
    }

    #[test]
    fn sc_identities_on_quaternion_tables() {
        let tables = fixtures::quaternions().decompose();
        for (id, verdict) in tables.check_sc_identities_with(Strategy::Sequential) {
            assert!(verdict.holds(), "{} failed on quaternion tables", id.name());
        }
    }

    #[test]
    fn su2_tables_pass_jacobi_but_fail_exchange_ii() {
        let tables = fixtures::su2_f_only();
        let results = tables.check_sc_identities_with(Strategy::Sequential);
        for (id, verdict) in &results {
            match id {
                CatalogIdentity::Jacobi => assert!(verdict.holds(), "su(2) satisfies the Lie Jacobi identity"),
                CatalogIdentity::AntiJacobi | CatalogIdentity::ExchangeI => {
                    // every term contains a c factor, and c = 0
                    assert!(verdict.holds(), "{} has only mixed terms", id.name());
                }
                CatalogIdentity::ExchangeII => {
                    assert!(!verdict.holds(), "exchange-ii forces f f = 0 when c = 0");
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn all_zero_tables_pass_everything() {
        let tables = BracketTables::new("zero", 3, vec![Parity::Even; 3], [], []).unwrap();
        for (_, verdict) in tables.check_sc_identities_with(Strategy::Sequential) {
            assert!(verdict.holds());
        }
    }

    #[test]
    fn symmetry_violation_rejected() {
        let err = BracketTables::new(
            "bad",
            2,
            vec![Parity::Even; 2],
            [((0, 1, 0), Coeff::one())], // missing the mirrored -1 entry
            [],
        );
        assert!(matches!(err, Err(Error::SymmetryViolation { table: "f", .. })));
    }

    #[test]
    fn sc_identities_agree_with_bracket_evaluation() {
        // dual-path cross-check: contracted formulas vs table-bracket
        // evaluation of the same identities
        for algebra in [
            fixtures::gl2(),
            fixtures::quaternions(),
            fixtures::octonions(),
            fixtures::grassmann2(),
            fixtures::gl11(),
        ] {
            let tables = algebra.decompose();
            for (id, contracted) in tables.check_sc_identities_with(Strategy::Sequential) {
                let via_brackets = tables.check_identity_with(id, Strategy::Sequential);
                assert_eq!(
                    contracted.holds(),
                    via_brackets.holds(),
                    "{} disagrees between code paths on {}",
                    id.name(),
                    algebra.name
                );
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let q = fixtures::quaternions();
        let s = q.to_json_string();
        let back = StructureTensor::from_json_str(&s).unwrap();
        assert_eq!(q, back);
        let tables = q.decompose();
        let back = BracketTables::from_json_str(&tables.to_json_string()).unwrap();
        assert_eq!(tables, back);
    }
}
