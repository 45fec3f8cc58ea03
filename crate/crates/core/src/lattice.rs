//! The distributive lattice on `S_n` given by componentwise order on
//! inversion tables.
//!
//! The admissible tables form the box `∏_k [0, n − k]`, so the lattice is a
//! product of chains: meet and join are componentwise min and max, and the
//! Möbius function is a product of chain Möbius functions.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, BoxIter, InvTable, Permutation};

fn same_degree(u: &Permutation, v: &Permutation) -> Result<()> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    Ok(())
}

/// `u ≤ v` iff `ι(u) ≤ ι(v)` componentwise.
pub fn leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    same_degree(u, v)?;
    Ok(u.inversion_table().dominated_by(&v.inversion_table()))
}

fn combine(u: &Permutation, v: &Permutation, f: fn(usize, usize) -> usize) -> Result<Permutation> {
    same_degree(u, v)?;
    let (a, b) = (u.inversion_table(), v.inversion_table());
    let entries = a.entries().iter().zip(b.entries()).map(|(&x, &y)| f(x, y)).collect();
    Ok(Permutation::from_inversion_table(&InvTable::from_entries_unchecked(entries)))
}

pub fn meet(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    combine(u, v, std::cmp::min)
}

pub fn join(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    combine(u, v, std::cmp::max)
}

/// The elements covered by `z`: one per covering inversion.
pub fn covers(z: &Permutation) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = z
        .covering_inversions()
        .iter()
        .map(|c| z.remove_sorted_unchecked(&[*c]))
        .collect();
    out.sort();
    out
}

/// `μ(y, z)`: `(−1)^{|ι(z)| − |ι(y)|}` when `ι(z) − ι(y) ∈ {0,1}^n`, else 0.
pub fn mobius(y: &Permutation, z: &Permutation) -> Result<i64> {
    same_degree(y, z)?;
    let (a, b) = (y.inversion_table(), z.inversion_table());
    let mut steps = 0;
    for (&lo, &hi) in a.entries().iter().zip(b.entries()) {
        match hi.checked_sub(lo) {
            Some(0) => {}
            Some(1) => steps += 1,
            _ => return Ok(0),
        }
    }
    Ok(if steps % 2 == 0 { 1 } else { -1 })
}

/// `C_z^∨ = {z^{rm(C)} | C ⊆ CInv(z)}`, indexed by subset bitmask of the
/// sorted covering inversions.
pub fn boolean_sublattice(z: &Permutation) -> Vec<Permutation> {
    let cinv = z.covering_inversions();
    (0..1usize << cinv.len())
        .map(|mask| {
            let chosen: Vec<_> = cinv
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| *c)
                .collect();
            z.remove_sorted_unchecked(&chosen)
        })
        .collect()
}

/// All `x ≥ w`, in inversion-table lexicographic order.
pub fn upper_set(w: &Permutation) -> Vec<Permutation> {
    let n = w.degree();
    let lo = w.inversion_table().entries().to_vec();
    let hi = (1..=n).map(|k| n - k).collect();
    BoxIter::new(lo, hi)
        .map(|t| Permutation::from_inversion_table(&InvTable::from_entries_unchecked(t)))
        .collect()
}

/// All `x ≤ w`, in inversion-table lexicographic order.
pub fn lower_set(w: &Permutation) -> Vec<Permutation> {
    let hi = w.inversion_table().entries().to_vec();
    BoxIter::new(vec![0; w.degree()], hi)
        .map(|t| Permutation::from_inversion_table(&InvTable::from_entries_unchecked(t)))
        .collect()
}

/// The inversion-table order on `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeOrder {
    degree: usize,
}

impl LatticeOrder {
    pub fn new(degree: usize) -> Self {
        LatticeOrder { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bottom(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn top(&self) -> Permutation {
        Permutation::longest(self.degree)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        all_permutations(self.degree)
    }

    /// `None` when incomparable.
    pub fn compare(&self, u: &Permutation, v: &Permutation) -> Result<Option<Ordering>> {
        let (le, ge) = (leq(u, v)?, leq(v, u)?);
        Ok(match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }
}
