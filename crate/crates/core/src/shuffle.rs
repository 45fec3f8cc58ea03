//! Shifted shuffles, standardized deconcatenation, value restriction and
//! the column shuffle `⋈_A`.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::{InvTable, Permutation};

/// A subset `A ⊆ {1, …, n}` kept in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionSet {
    n: usize,
    positions: Vec<usize>,
}

impl PositionSet {
    pub fn new(n: usize, positions: Vec<usize>) -> Result<Self> {
        let ok = positions.iter().all(|&p| (1..=n).contains(&p))
            && positions.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidPositionSet { n, positions });
        }
        Ok(PositionSet { n, positions })
    }

    pub fn empty(n: usize) -> Self {
        PositionSet { n, positions: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        PositionSet {
            n,
            positions: (1..=n).collect(),
        }
    }

    /// Every `k`-subset of `{1, …, n}` in lexicographic order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<PositionSet> {
        (1..=n)
            .combinations(k)
            .map(|positions| PositionSet { n, positions })
            .collect()
    }

    /// Every subset of `{1, …, n}`, by size then lexicographically.
    pub fn all(n: usize) -> Vec<PositionSet> {
        (0..=n).flat_map(|k| PositionSet::all_of_size(n, k)).collect()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    pub fn complement(&self) -> PositionSet {
        PositionSet {
            n: self.n,
            positions: (1..=self.n).filter(|&p| !self.contains(p)).collect(),
        }
    }

    /// `#{a ∈ A | a < i}`.
    pub fn count_below(&self, i: usize) -> usize {
        self.positions.partition_point(|&a| a < i)
    }

    /// `#{a ∈ A | a > i}`.
    pub fn count_above(&self, i: usize) -> usize {
        self.len() - self.positions.partition_point(|&a| a <= i)
    }
}

/// Relabels a sequence of distinct integers by rank.
pub fn standardize(word: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    let mut out = vec![0; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank + 1;
    }
    Permutation::from_word_unchecked(out)
}

/// `v ⧢_A w`: the entries of `w`, shifted up by `deg v`, occupy the
/// positions in `A`; the entries of `v` fill the rest in order.
pub fn a_shuffle(v: &Permutation, w: &Permutation, a: &PositionSet) -> Result<Permutation> {
    let (m, n) = (v.degree(), w.degree());
    if a.ambient() != m + n {
        return Err(Error::SizeMismatch {
            expected: m + n,
            actual: a.ambient(),
        });
    }
    if a.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: a.len(),
        });
    }
    let word = (1..=m + n)
        .map(|i| {
            if a.contains(i) {
                w.at(a.count_below(i) + 1) + m
            } else {
                v.at(i - a.count_below(i))
            }
        })
        .collect();
    Ok(Permutation::from_word_unchecked(word))
}

/// `v ⧢ w`, sorted. Distinct position sets give distinct permutations.
pub fn shuffle_set(v: &Permutation, w: &Permutation) -> Vec<Permutation> {
    let total = v.degree() + w.degree();
    PositionSet::all_of_size(total, w.degree())
        .iter()
        .map(|a| a_shuffle(v, w, a).expect("sizes agree by construction"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// The `m`-standardized deconcatenation `(w_{≤m}, w_{>m})`.
pub fn deconcatenate(w: &Permutation, m: usize) -> Result<(Permutation, Permutation)> {
    let n = w.degree();
    if m > n {
        return Err(Error::SplitOutOfRange { m, n });
    }
    let (head, tail) = w.word().split_at(m);
    Ok((standardize(head), standardize(tail)))
}

/// Restriction to a set of values: the subword of `w` made of the values in
/// `values`, read left to right, then standardized. This is `w_B` in the
/// coproduct and product formulas.
pub fn restrict(w: &Permutation, values: &[usize]) -> Result<Permutation> {
    let n = w.degree();
    let mut keep = vec![false; n + 1];
    for &b in values {
        if b == 0 || b > n || keep[b] {
            return Err(Error::InvalidPositionSet {
                n,
                positions: values.to_vec(),
            });
        }
        keep[b] = true;
    }
    let sub: Vec<usize> = w.word().iter().copied().filter(|&x| keep[x]).collect();
    Ok(standardize(&sub))
}

/// Restriction to the contiguous value range `lo..=hi`.
pub(crate) fn restrict_range(w: &Permutation, lo: usize, hi: usize) -> Permutation {
    let sub: Vec<usize> = w
        .word()
        .iter()
        .filter(|&&x| x >= lo && x <= hi)
        .map(|&x| x + 1 - lo)
        .collect();
    Permutation::from_word_unchecked(sub)
}

/// `w ⋈_A v` for `w ∈ S_m`, `v ∈ S_n`, `|A| = n`, built from inversion
/// tables: off `A` the table of `w` is copied in order, on `A` the dual
/// table of `v` is copied in order.
pub fn bowtie(w: &Permutation, v: &Permutation, a: &PositionSet) -> Result<Permutation> {
    let (m, n) = (w.degree(), v.degree());
    let total = m + n;
    if a.ambient() != total || a.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: a.len(),
        });
    }
    let iota_w = w.inversion_table();
    let dual_v = v.dual_inversion_table();
    let entries = (1..=total)
        .map(|j| {
            if a.contains(j) {
                let k = j - (j - 1 - a.count_below(j));
                total - j - dual_v.entries()[k - 1]
            } else {
                iota_w.entries()[j - a.count_below(j) - 1]
            }
        })
        .collect();
    let table = InvTable::new(entries)?;
    Ok(Permutation::from_inversion_table(&table))
}
