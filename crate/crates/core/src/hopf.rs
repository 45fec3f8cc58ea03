//! The graded Hopf algebra of superclass functions, with the supercharacter
//! basis `χ^w` and the permutation-character basis `χ̄^w`.
//!
//! Elements are finite maps from permutations to exact rationals, tagged
//! with their basis. Arithmetic between different bases is rejected; use
//! [`ScfElement::to_sch`] and [`ScfElement::to_pch`] to convert.
//!
//! ```
//! use fqsym_scf::{Basis, Permutation, ScfElement};
//!
//! let x = ScfElement::basis_element(Basis::Sch, Permutation::from_digits("12").unwrap());
//! let y = ScfElement::basis_element(Basis::Sch, Permutation::from_digits("1").unwrap());
//! let xy = x.product(&y).unwrap();
//! assert_eq!(xy.to_string(), "chi[1,2,3] + chi[1,3,2] + chi[3,1,2]");
//! ```

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::upper_set;
use crate::pcbasis;
use crate::perm::{all_permutations, DualInvTable, InvTable, Permutation};
use crate::shuffle::{a_shuffle, bowtie, deconcatenate, shuffle_set, PositionSet};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Supercharacters `χ^w`.
    Sch,
    /// Permutation characters `χ̄^w = Σ_{x ≥ w} χ^x`.
    Pch,
}

impl Basis {
    fn symbol(self) -> &'static str {
        match self {
            Basis::Sch => "chi",
            Basis::Pch => "chibar",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Sch => "sch",
            Basis::Pch => "pch",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sch" => Ok(Basis::Sch),
            "pch" => Ok(Basis::Pch),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

fn same_basis(a: Basis, b: Basis) -> Result<()> {
    if a != b {
        return Err(Error::BasisMismatch {
            expected: a,
            actual: b,
        });
    }
    Ok(())
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational) -> fmt::Result {
    let abs = c.abs();
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if !abs.is_one() {
        write!(f, "{abs} ")?;
    }
    Ok(())
}

fn bracket(w: &Permutation) -> String {
    if w.degree() == 0 {
        "[]".to_string()
    } else {
        format!("[{w}]")
    }
}

/// A finite linear combination of basis elements indexed by permutations.
/// Terms are ordered by degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ElementJson", try_from = "ElementJson")]
pub struct ScfElement {
    basis: Basis,
    terms: BTreeMap<Permutation, Rational>,
}

impl ScfElement {
    pub fn zero(basis: Basis) -> Self {
        ScfElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, w: Permutation) -> Self {
        Self::monomial(basis, w, Rational::one())
    }

    pub fn monomial(basis: Basis, w: Permutation, c: Rational) -> Self {
        let mut x = Self::zero(basis);
        accumulate(&mut x.terms, w, c);
        x
    }

    /// `c · χ^∅` (the same element in either basis).
    pub fn unit(basis: Basis, c: Rational) -> Self {
        Self::monomial(basis, Permutation::empty(), c)
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Permutation, Rational)>,
    {
        let mut x = Self::zero(basis);
        for (w, c) in terms {
            accumulate(&mut x.terms, w, c);
        }
        x
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Permutation) -> Rational {
        self.terms.get(w).copied().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ScfElement) -> Result<ScfElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            accumulate(&mut out.terms, w.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ScfElement) -> Result<ScfElement> {
        self.add(&other.scale(-Rational::one()))
    }

    pub fn scale(&self, c: Rational) -> ScfElement {
        ScfElement::from_terms(self.basis, self.terms.iter().map(|(w, d)| (w.clone(), *d * c)))
    }

    fn map_linear<F>(&self, basis: Basis, mut image: F) -> ScfElement
    where
        F: FnMut(&Permutation) -> Vec<(Permutation, Rational)>,
    {
        let mut out = ScfElement::zero(basis);
        for (w, c) in &self.terms {
            for (x, d) in image(w) {
                accumulate(&mut out.terms, x, *c * d);
            }
        }
        out
    }

    /// Rewrites in the supercharacter basis: `χ̄^w ↦ Σ_{x ≥ w} χ^x`.
    pub fn to_sch(&self) -> ScfElement {
        match self.basis {
            Basis::Sch => self.clone(),
            Basis::Pch => self.map_linear(Basis::Sch, |w| {
                upper_set(w).into_iter().map(|x| (x, Rational::one())).collect()
            }),
        }
    }

    /// Rewrites in the permutation-character basis by Möbius inversion:
    /// `χ^w = Σ_S (−1)^{|S|} χ̄^{ι(w) + e_S}` over sets `S` of coordinates
    /// that can still be raised.
    pub fn to_pch(&self) -> ScfElement {
        match self.basis {
            Basis::Pch => self.clone(),
            Basis::Sch => self.map_linear(Basis::Pch, mobius_upper_terms),
        }
    }

    pub fn to_basis(&self, basis: Basis) -> ScfElement {
        match basis {
            Basis::Sch => self.to_sch(),
            Basis::Pch => self.to_pch(),
        }
    }

    /// Product in the element's basis. Supercharacters multiply by shifted
    /// shuffles; permutation characters use the covering-inversion sum.
    pub fn product(&self, other: &ScfElement) -> Result<ScfElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = ScfElement::zero(self.basis);
        for (v, c) in &self.terms {
            for (w, d) in &other.terms {
                let cd = *c * *d;
                match self.basis {
                    Basis::Sch => {
                        for y in shuffle_set(v, w) {
                            accumulate(&mut out.terms, y, cd);
                        }
                    }
                    Basis::Pch => {
                        for (z, k) in pcbasis::product_coefficients(v, w) {
                            accumulate(&mut out.terms, z, cd * Rational::from(k));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The supercharacter product assembled from the column shuffle:
    /// `χ^w χ^v = Σ_A χ^{(w⁻¹ ⋈_A v⁻¹)⁻¹}`.
    pub fn product_via_bowtie(&self, other: &ScfElement) -> Result<ScfElement> {
        same_basis(Basis::Sch, self.basis)?;
        same_basis(Basis::Sch, other.basis)?;
        let mut out = ScfElement::zero(Basis::Sch);
        for (w, c) in &self.terms {
            for (v, d) in &other.terms {
                let total = w.degree() + v.degree();
                for a in PositionSet::all_of_size(total, v.degree()) {
                    let y = bowtie(&w.inverse(), &v.inverse(), &a)?.inverse();
                    accumulate(&mut out.terms, y, *c * *d);
                }
            }
        }
        Ok(out)
    }

    pub fn coproduct(&self) -> TensorScfElement {
        let mut out = TensorScfElement::zero(self.basis);
        for (w, c) in &self.terms {
            let pieces = match self.basis {
                Basis::Sch => coproduct_sch_terms(w),
                Basis::Pch => coproduct_pch(w).terms.into_iter().collect(),
            };
            for (pair, d) in pieces {
                accumulate(&mut out.terms, pair, *c * d);
            }
        }
        out
    }

    /// The involution `χ^w ↦ χ^{w⁻¹}`. In the permutation-character basis
    /// the closed form of [`star_pch`] is used.
    pub fn star(&self) -> ScfElement {
        match self.basis {
            Basis::Sch => self.map_linear(Basis::Sch, |w| vec![(w.inverse(), Rational::one())]),
            Basis::Pch => self.map_linear(Basis::Pch, |w| {
                star_pch(w).terms.into_iter().collect()
            }),
        }
    }

    /// The degree-zero coefficient.
    pub fn counit(&self) -> Rational {
        self.coefficient(&Permutation::empty())
    }

    /// The antipode, from `S(x) = −x − Σ S(x′) x″` over the reduced
    /// coproduct. Supercharacter basis only.
    pub fn antipode(&self) -> Result<ScfElement> {
        same_basis(Basis::Sch, self.basis)?;
        let mut memo = HashMap::new();
        let mut out = ScfElement::zero(Basis::Sch);
        for (w, c) in &self.terms {
            let s = antipode_basis(w, &mut memo);
            for (x, d) in &s.terms {
                accumulate(&mut out.terms, x.clone(), *c * *d);
            }
        }
        Ok(out)
    }

    /// The largest degree among the terms, if any.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Permutation::degree).max()
    }
}

fn mobius_upper_terms(w: &Permutation) -> Vec<(Permutation, Rational)> {
    let n = w.degree();
    let iota = w.inversion_table();
    let raisable: Vec<usize> = (0..n).filter(|&k| iota.entries()[k] < n - 1 - k).collect();
    (0..1usize << raisable.len())
        .map(|mask| {
            let mut t = iota.entries().to_vec();
            for (bit, &k) in raisable.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    t[k] += 1;
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            let x = Permutation::from_inversion_table(&InvTable::from_entries_unchecked(t));
            (x, Rational::from(sign))
        })
        .collect()
}

fn coproduct_sch_terms(w: &Permutation) -> Vec<((Permutation, Permutation), Rational)> {
    (0..=w.degree())
        .map(|m| (deconcatenate(w, m).expect("m ≤ n"), Rational::one()))
        .collect()
}

fn antipode_basis(w: &Permutation, memo: &mut HashMap<Permutation, ScfElement>) -> ScfElement {
    if let Some(s) = memo.get(w) {
        return s.clone();
    }
    let n = w.degree();
    let mut out = ScfElement::zero(Basis::Sch);
    if n == 0 {
        out = ScfElement::unit(Basis::Sch, Rational::one());
    } else {
        accumulate(&mut out.terms, w.clone(), -Rational::one());
        for m in 1..n {
            let (head, tail) = deconcatenate(w, m).expect("m ≤ n");
            let s_head = antipode_basis(&head, memo);
            let tail = ScfElement::basis_element(Basis::Sch, tail);
            let prod = s_head.product(&tail).expect("both supercharacter");
            for (x, c) in prod.terms {
                accumulate(&mut out.terms, x, -c);
            }
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

/// `(χ̄^w)^⋆` in the permutation-character basis: for each `z`, look at the
/// `x` in the Boolean interval below `z` with `κ(x) ≥ κ(w⁻¹)`; when there is
/// exactly one such `y`, `χ̄^z` appears with sign `(−1)^{|ι(z)| − |ι(y)|}`.
pub fn star_pch(w: &Permutation) -> ScfElement {
    let n = w.degree();
    let target = w.inversion_table();
    let mut out = ScfElement::zero(Basis::Pch);
    for z in all_permutations(n) {
        let cinv = z.covering_inversions();
        let mut found: Option<usize> = None;
        let mut count = 0;
        for mask in 0..1usize << cinv.len() {
            let chosen: Vec<_> = (0..cinv.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cinv[i])
                .collect();
            let x = z.remove_sorted_unchecked(&chosen);
            // κ(x) = ι(x⁻¹) and κ(w⁻¹) = ι(w).
            if target.dominated_by(&x.inverse().inversion_table()) {
                count += 1;
                found = Some(chosen.len());
                if count > 1 {
                    break;
                }
            }
        }
        if count == 1 {
            let removed = found.expect("count is one");
            let sign = if removed % 2 == 0 { 1 } else { -1 };
            accumulate(&mut out.terms, z, Rational::from(sign));
        }
    }
    out
}

/// The term of the splitting formula for `Δ(χ̄^w)` at the value set `a`
/// (with `B` its complement): `χ̄^{ι(w)_B} ⊗ χ̄^{d}` where `d` is the dual
/// table `ι^∨(w)_A ∧ ι^∨(id)`, or `None` when `ι(w)_B` is not an inversion
/// table.
pub fn coproduct_pch_split(w: &Permutation, a: &PositionSet) -> Result<Option<(Permutation, Permutation)>> {
    let n = w.degree();
    if a.ambient() != n {
        return Err(Error::DegreeMismatch {
            left: a.ambient(),
            right: n,
        });
    }
    let iota = w.inversion_table();
    let dual = w.dual_inversion_table();
    let left_entries: Vec<usize> = (1..=n)
        .filter(|&k| !a.contains(k))
        .map(|k| iota.entries()[k - 1])
        .collect();
    let Ok(left_table) = InvTable::new(left_entries) else {
        return Ok(None);
    };
    let len = a.len();
    let right_entries: Vec<usize> = a
        .positions()
        .iter()
        .enumerate()
        .map(|(k, &pos)| dual.entries()[pos - 1].min(len - 1 - k))
        .collect();
    let right_table = DualInvTable::new(right_entries).expect("clamped to bounds");
    Ok(Some((
        Permutation::from_inversion_table(&left_table),
        Permutation::from_dual_inversion_table(&right_table),
    )))
}

/// `Δ(χ̄^w)` as the sum of [`coproduct_pch_split`] over all value sets.
/// Distinct splittings may give the same term, so collected coefficients
/// can exceed one.
pub fn coproduct_pch(w: &Permutation) -> TensorScfElement {
    let mut out = TensorScfElement::zero(Basis::Pch);
    for a in PositionSet::all(w.degree()) {
        if let Some(pair) = coproduct_pch_split(w, &a).expect("same degree") {
            accumulate(&mut out.terms, pair, Rational::one());
        }
    }
    out
}

/// `χ̄^v · χ̄^w` assembled from the covering-inversion sums.
pub fn product_pch(v: &Permutation, w: &Permutation) -> ScfElement {
    ScfElement::from_terms(
        Basis::Pch,
        pcbasis::product_coefficients(v, w)
            .into_iter()
            .map(|(z, k)| (z, Rational::from(k))),
    )
}

/// `χ^w χ^v` from the `A`-shuffles directly, one term per position set.
pub fn product_via_a_shuffles(w: &Permutation, v: &Permutation) -> ScfElement {
    let total = w.degree() + v.degree();
    ScfElement::from_terms(
        Basis::Sch,
        PositionSet::all_of_size(total, v.degree())
            .into_iter()
            .map(|a| (a_shuffle(w, v, &a).expect("sizes agree"), Rational::one())),
    )
}

impl fmt::Display for ScfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, k == 0, c)?;
            write!(f, "{}{}", self.basis.symbol(), bracket(w))?;
        }
        Ok(())
    }
}

/// A finite linear combination of pairs of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TensorJson", try_from = "TensorJson")]
pub struct TensorScfElement {
    basis: Basis,
    terms: BTreeMap<(Permutation, Permutation), Rational>,
}

impl TensorScfElement {
    pub fn zero(basis: Basis) -> Self {
        TensorScfElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = ((Permutation, Permutation), Rational)>,
    {
        let mut x = Self::zero(basis);
        for (pair, c) in terms {
            accumulate(&mut x.terms, pair, c);
        }
        x
    }

    /// `x ⊗ y`.
    pub fn tensor(x: &ScfElement, y: &ScfElement) -> Result<Self> {
        same_basis(x.basis, y.basis)?;
        let mut out = Self::zero(x.basis);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                accumulate(&mut out.terms, (a.clone(), b.clone()), *c * *d);
            }
        }
        Ok(out)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Permutation, Permutation), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &Permutation, right: &Permutation) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorScfElement) -> Result<TensorScfElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = self.clone();
        for (pair, c) in &other.terms {
            accumulate(&mut out.terms, pair.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Rational) -> TensorScfElement {
        TensorScfElement::from_terms(self.basis, self.terms.iter().map(|(p, d)| (p.clone(), *d * c)))
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn product(&self, other: &TensorScfElement) -> Result<TensorScfElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = TensorScfElement::zero(self.basis);
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                let left = ScfElement::basis_element(self.basis, a.clone())
                    .product(&ScfElement::basis_element(self.basis, x.clone()))?;
                let right = ScfElement::basis_element(self.basis, b.clone())
                    .product(&ScfElement::basis_element(self.basis, y.clone()))?;
                for (l, e) in &left.terms {
                    for (r, f) in &right.terms {
                        accumulate(&mut out.terms, (l.clone(), r.clone()), *c * *d * *e * *f);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies a basis change to both factors.
    pub fn to_basis(&self, basis: Basis) -> TensorScfElement {
        let mut out = TensorScfElement::zero(basis);
        for ((a, b), c) in &self.terms {
            let left = ScfElement::basis_element(self.basis, a.clone()).to_basis(basis);
            let right = ScfElement::basis_element(self.basis, b.clone()).to_basis(basis);
            for (l, e) in &left.terms {
                for (r, f) in &right.terms {
                    accumulate(&mut out.terms, (l.clone(), r.clone()), *c * *e * *f);
                }
            }
        }
        out
    }

    /// `m ∘ (S ⊗ id)`.
    pub fn antipode_left_then_multiply(&self) -> Result<ScfElement> {
        same_basis(Basis::Sch, self.basis)?;
        let mut memo = HashMap::new();
        let mut out = ScfElement::zero(Basis::Sch);
        for ((a, b), c) in &self.terms {
            let s = antipode_basis(a, &mut memo);
            let prod = s.product(&ScfElement::basis_element(Basis::Sch, b.clone()))?;
            for (x, d) in prod.terms {
                accumulate(&mut out.terms, x, *c * d);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorScfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let s = self.basis.symbol();
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            write_coefficient(f, k == 0, c)?;
            write!(f, "{s}{} (x) {s}{}", bracket(a), bracket(b))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    perm: Vec<usize>,
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    basis: Basis,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    left: Vec<usize>,
    right: Vec<usize>,
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    basis: Basis,
    terms: Vec<TensorTermJson>,
}

fn rational_from_json(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::Parse(format!("{num}/{den}")));
    }
    Ok(Rational::new(num, den))
}

impl From<ScfElement> for ElementJson {
    fn from(x: ScfElement) -> Self {
        ElementJson {
            basis: x.basis,
            terms: x
                .terms
                .into_iter()
                .map(|(w, c)| TermJson {
                    perm: w.into_word(),
                    num: *c.numer(),
                    den: *c.denom(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementJson> for ScfElement {
    type Error = Error;

    fn try_from(j: ElementJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            terms.push((Permutation::new(t.perm)?, rational_from_json(t.num, t.den)?));
        }
        Ok(ScfElement::from_terms(j.basis, terms))
    }
}

impl From<TensorScfElement> for TensorJson {
    fn from(x: TensorScfElement) -> Self {
        TensorJson {
            basis: x.basis,
            terms: x
                .terms
                .into_iter()
                .map(|((a, b), c)| TensorTermJson {
                    left: a.into_word(),
                    right: b.into_word(),
                    num: *c.numer(),
                    den: *c.denom(),
                })
                .collect(),
        }
    }
}

impl TryFrom<TensorJson> for TensorScfElement {
    type Error = Error;

    fn try_from(j: TensorJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let pair = (Permutation::new(t.left)?, Permutation::new(t.right)?);
            terms.push((pair, rational_from_json(t.num, t.den)?));
        }
        Ok(TensorScfElement::from_terms(j.basis, terms))
    }
}
