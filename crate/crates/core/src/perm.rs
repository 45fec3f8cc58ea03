//! Permutations and their encodings.
//!
//! A [`Permutation`] is stored in one-line notation. Every other encoding
//! (inversion table, code, dual inversion table, Rothe diagram, covering
//! inversions) is computed on demand.
//!
//! Conventions, for `w` in `S_n` with 1-based values:
//!
//! * `ι_k(w)` counts the entries to the left of `k` that exceed `k`.
//! * `κ_k(w)` counts the entries to the right of `w(k)` that are smaller
//!   than `w(k)`; it equals `ι_k(w⁻¹)`.
//! * `ι∨_k(w) = n − k − ι_k(w)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in one-line notation. `n = 0` is allowed.
///
/// Ordering is by degree first, then lexicographic on the one-line word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Validates `word` as a bijection of `{1, …, word.len()}`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotAPermutation { word, n });
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok(), "{word:?}");
        Permutation { word }
    }

    /// Parses the compact digit form used throughout the literature, e.g.
    /// `"314625"`. Only meaningful for degree at most 9.
    pub fn from_digits(s: &str) -> Result<Self> {
        let word = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        Permutation::new(word)
    }

    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The maximal element `n (n−1) … 1` of the inversion-table order.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// `w(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.word.len()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// 1-based positions of each value: `positions()[v - 1] = w⁻¹(v)`.
    pub fn positions(&self) -> Vec<usize> {
        self.inverse().word
    }

    /// `ι(w)`.
    pub fn inversion_table(&self) -> InvTable {
        let n = self.degree();
        let mut entries = vec![0; n];
        // Scan left to right, counting larger values already seen.
        for (i, &k) in self.word.iter().enumerate() {
            entries[k - 1] = self.word[..i].iter().filter(|&&x| x > k).count();
        }
        InvTable { entries }
    }

    /// `κ(w)`, the Lehmer code.
    pub fn code(&self) -> InvTable {
        let entries = self
            .word
            .iter()
            .enumerate()
            .map(|(k, &x)| self.word[k + 1..].iter().filter(|&&y| y < x).count())
            .collect();
        InvTable { entries }
    }

    pub fn dual_inversion_table(&self) -> DualInvTable {
        self.inversion_table().dual()
    }

    /// Decodes an inversion table: `w⁻¹(j)` is the `(1 + ι_j)`-th smallest
    /// position not yet used by `w⁻¹(1), …, w⁻¹(j−1)`.
    pub fn from_inversion_table(table: &InvTable) -> Permutation {
        let n = table.len();
        let mut free: Vec<usize> = (1..=n).collect();
        let mut word = vec![0; n];
        for (j, &t) in table.entries.iter().enumerate() {
            let pos = free.remove(t);
            word[pos - 1] = j + 1;
        }
        Permutation { word }
    }

    pub fn from_code(code: &InvTable) -> Permutation {
        Permutation::from_inversion_table(code).inverse()
    }

    pub fn from_dual_inversion_table(table: &DualInvTable) -> Permutation {
        Permutation::from_inversion_table(&table.to_inversion_table())
    }

    /// `R_w = {(i, j) | w(i) > j, w⁻¹(j) > i}`.
    pub fn rothe_diagram(&self) -> RotheDiagram {
        let n = self.degree();
        let inv = self.positions();
        let cells = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.at(i) > j && inv[j - 1] > i)
            .collect();
        RotheDiagram { n, cells }
    }

    /// `CInv(w)`: for each position `j` having a larger entry to its left,
    /// the pair `(w(i), w(j))` with `i < j` maximal such that `w(i) > w(j)`.
    ///
    /// Sorted by the smaller value, which is also the removal order.
    pub fn covering_inversions(&self) -> Vec<CoveringInversion> {
        let mut out: Vec<CoveringInversion> = self
            .word
            .iter()
            .enumerate()
            .filter_map(|(j, &b)| {
                self.word[..j]
                    .iter()
                    .rev()
                    .find(|&&a| a > b)
                    .map(|&a| CoveringInversion::new(a, b))
            })
            .collect();
        out.sort();
        out
    }

    /// `w^{rm(C)}`. The inversions are removed in increasing order of their
    /// smaller value; each removal swaps the two values in place.
    pub fn remove_covering_inversions(&self, set: &[CoveringInversion]) -> Result<Permutation> {
        let cinv = self.covering_inversions();
        let mut sorted: Vec<CoveringInversion> = set.to_vec();
        sorted.sort();
        sorted.dedup();
        if let Some(bad) = sorted.iter().find(|c| !cinv.contains(c)) {
            return Err(Error::NotCoveringInversion {
                larger: bad.larger,
                smaller: bad.smaller,
                perm: self.to_string(),
            });
        }
        Ok(self.remove_sorted_unchecked(&sorted))
    }

    pub(crate) fn remove_sorted_unchecked(&self, sorted: &[CoveringInversion]) -> Permutation {
        let mut word = self.word.clone();
        let mut pos = self.positions();
        for c in sorted {
            let (pa, pb) = (pos[c.larger - 1], pos[c.smaller - 1]);
            word.swap(pa - 1, pb - 1);
            pos[c.larger - 1] = pb;
            pos[c.smaller - 1] = pa;
        }
        Permutation { word }
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated one-line form, `()` for the empty permutation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("()");
        }
        for (i, x) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Accepts `"3,1,4,6,2,5"`; `""` and `"()"` denote the empty permutation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Permutation::empty());
        }
        let word = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(s.to_string()))?;
        Permutation::new(word)
    }
}

/// An inversion table (or code) `(t_1, …, t_n)` with `t_k ≤ n − k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvTable {
    entries: Vec<usize>,
}

impl InvTable {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        check_bounds(&entries)?;
        Ok(InvTable { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(check_bounds(&entries).is_ok());
        InvTable { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|ι|`, the number of inversions.
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Componentwise `≤`.
    pub fn dominated_by(&self, other: &InvTable) -> bool {
        self.len() == other.len() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn dual(&self) -> DualInvTable {
        let n = self.len();
        DualInvTable {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, &t)| n - (i + 1) - t)
                .collect(),
        }
    }
}

/// `ι∨(w) = (n − 1 − ι_1, n − 2 − ι_2, …, 0 − ι_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualInvTable {
    entries: Vec<usize>,
}

impl DualInvTable {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        check_bounds(&entries)?;
        Ok(DualInvTable { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_inversion_table(&self) -> InvTable {
        let n = self.len();
        InvTable {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, &t)| n - (i + 1) - t)
                .collect(),
        }
    }
}

fn check_bounds(entries: &[usize]) -> Result<()> {
    let n = entries.len();
    for (i, &t) in entries.iter().enumerate() {
        let bound = n - (i + 1);
        if t > bound {
            return Err(Error::TableOutOfRange {
                index: i + 1,
                value: t,
                bound,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotheDiagram {
    n: usize,
    cells: BTreeSet<(usize, usize)>,
}

impl RotheDiagram {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }

    /// `#{(i, k) ∈ R}` for each column `k`; reproduces `ι`.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for &(_, j) in &self.cells {
            counts[j - 1] += 1;
        }
        counts
    }

    /// `#{(k, j) ∈ R}` for each row `k`; reproduces `κ`.
    pub fn row_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for &(i, _) in &self.cells {
            counts[i - 1] += 1;
        }
        counts
    }
}

/// A covering inversion `(w(i), w(j))`, stored by value.
///
/// Ordered by the smaller value first: within one permutation the smaller
/// values of distinct covering inversions are distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoveringInversion {
    pub larger: usize,
    pub smaller: usize,
}

impl CoveringInversion {
    pub fn new(larger: usize, smaller: usize) -> Self {
        CoveringInversion { larger, smaller }
    }
}

impl Ord for CoveringInversion {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.smaller, self.larger).cmp(&(other.smaller, other.larger))
    }
}

impl PartialOrd for CoveringInversion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CoveringInversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.larger, self.smaller)
    }
}

/// All inversion tables of degree `n` in lexicographic order.
pub fn inversion_tables(n: usize) -> impl Iterator<Item = InvTable> {
    let lo = vec![0; n];
    let hi: Vec<usize> = (1..=n).map(|k| n - k).collect();
    BoxIter::new(lo, hi).map(InvTable::from_entries_unchecked)
}

/// All of `S_n`, ordered lexicographically by inversion table.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    inversion_tables(n)
        .map(|t| Permutation::from_inversion_table(&t))
        .collect()
}

/// Iterates integer vectors `t` with `lo ≤ t ≤ hi` componentwise, in
/// lexicographic order.
pub(crate) struct BoxIter {
    lo: Vec<usize>,
    hi: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl BoxIter {
    pub(crate) fn new(lo: Vec<usize>, hi: Vec<usize>) -> Self {
        let next = if lo.iter().zip(&hi).all(|(a, b)| a <= b) {
            Some(lo.clone())
        } else {
            None
        };
        BoxIter { lo, hi, next }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if succ[k] < self.hi[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = self.lo[k];
        }
        Some(current)
    }
}

/// Factorial, for sizing.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
