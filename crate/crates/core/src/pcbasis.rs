//! Structure constants of the permutation-character product.
//!
//! The coefficient of `χ̄^z` in `χ̄^v χ̄^w` is the alternating sum
//! `Σ (−1)^{|C|}` over the sets `C` of covering inversions of `z` whose
//! removal lands in `dSh_{v,w}`, the permutations whose two value
//! restrictions dominate `v` and `w`. [`coefficient_bruteforce`] evaluates
//! that sum; [`core`] evaluates the nesting/core criterion, which is checked
//! against it.
//!
//! Subsets of `CInv(z)` are bitmasks over the sorted covering inversions.
//!
//! ```
//! use fqsym_scf::pcbasis::{coefficient_bruteforce, core, CoreResult};
//! use fqsym_scf::Permutation;
//!
//! let one = Permutation::from_digits("1").unwrap();
//! let z = Permutation::from_digits("21").unwrap();
//! assert_eq!(coefficient_bruteforce(&one, &one, &z).unwrap(), 0);
//! assert_eq!(core(&one, &one, &z).unwrap(), CoreResult::Zero);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::leq;
use crate::perm::{all_permutations, CoveringInversion, Permutation};
use crate::shuffle::restrict_range;

pub type Mask = u32;

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..Mask::BITS as usize).filter(move |&k| mask >> k & 1 == 1)
}

/// `CInvS^z_{v,w}`: the subsets of `CInv(z)` whose removal lands in
/// `dSh_{v,w}`.
#[derive(Clone, Debug)]
pub struct CInvSubsetFamily {
    z: Permutation,
    v: Permutation,
    w: Permutation,
    cinv: Vec<CoveringInversion>,
    // Positions (i, l) in z of each arc's endpoints.
    spans: Vec<(usize, usize)>,
    member: Vec<bool>,
}

/// Whether `y` lies in `dSh_{v,w}`.
pub fn in_dsh(y: &Permutation, v: &Permutation, w: &Permutation) -> bool {
    let m = v.degree();
    let n = y.degree();
    leq(v, &restrict_range(y, 1, m)).unwrap_or(false)
        && leq(w, &restrict_range(y, m + 1, n)).unwrap_or(false)
}

/// Enumerates `CInvS^z_{v,w}` over all `2^{|CInv(z)|}` subsets.
pub fn cinvs(v: &Permutation, w: &Permutation, z: &Permutation) -> Result<CInvSubsetFamily> {
    if v.degree() + w.degree() != z.degree() {
        return Err(Error::DegreeMismatch {
            left: v.degree() + w.degree(),
            right: z.degree(),
        });
    }
    let cinv = z.covering_inversions();
    let pos = z.positions();
    let spans = cinv
        .iter()
        .map(|c| (pos[c.larger - 1], pos[c.smaller - 1]))
        .collect();
    let member = (0..(1 as Mask) << cinv.len())
        .map(|mask| {
            let chosen: Vec<_> = bits(mask).map(|k| cinv[k]).collect();
            in_dsh(&z.remove_sorted_unchecked(&chosen), v, w)
        })
        .collect();
    Ok(CInvSubsetFamily {
        z: z.clone(),
        v: v.clone(),
        w: w.clone(),
        cinv,
        spans,
        member,
    })
}

/// `Σ_{C ∈ CInvS^z_{v,w}} (−1)^{|C|}`, the coefficient of `χ̄^z` in
/// `χ̄^v χ̄^w`.
pub fn coefficient_bruteforce(v: &Permutation, w: &Permutation, z: &Permutation) -> Result<i64> {
    Ok(cinvs(v, w, z)?.alternating_sum())
}

/// All nonzero coefficients of `χ̄^v χ̄^w`, sorted by `z`.
pub fn product_coefficients(v: &Permutation, w: &Permutation) -> Vec<(Permutation, i64)> {
    all_permutations(v.degree() + w.degree())
        .into_iter()
        .filter_map(|z| {
            let c = coefficient_bruteforce(v, w, &z).expect("degrees agree");
            (c != 0).then_some((z, c))
        })
        .collect::<BTreeMap<_, _>>()
        .into_iter()
        .collect()
}

impl CInvSubsetFamily {
    pub fn z(&self) -> &Permutation {
        &self.z
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    /// `CInv(z)`, sorted; bit `k` of a mask refers to entry `k`.
    pub fn covering_inversions(&self) -> &[CoveringInversion] {
        &self.cinv
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.member.get(mask as usize).copied().unwrap_or(false)
    }

    /// Members in increasing mask order.
    pub fn members(&self) -> Vec<Mask> {
        (0..self.member.len() as Mask).filter(|&m| self.member[m as usize]).collect()
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn subset(&self, mask: Mask) -> Vec<CoveringInversion> {
        bits(mask).map(|k| self.cinv[k]).collect()
    }

    pub fn mask_of(&self, set: &[CoveringInversion]) -> Result<Mask> {
        let mut mask = 0;
        for c in set {
            let k = self.index_of(c)?;
            mask |= 1 << k;
        }
        Ok(mask)
    }

    pub fn index_of(&self, c: &CoveringInversion) -> Result<usize> {
        self.cinv.iter().position(|d| d == c).ok_or_else(|| Error::NotCoveringInversion {
            larger: c.larger,
            smaller: c.smaller,
            perm: self.z.to_string(),
        })
    }

    pub fn alternating_sum(&self) -> i64 {
        self.members()
            .into_iter()
            .map(|m| if m.count_ones() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Arc `k` is free if toggling it never changes membership.
    pub fn is_free(&self, k: usize) -> bool {
        let bit: Mask = 1 << k;
        (0..self.member.len() as Mask)
            .filter(|m| m & bit == 0)
            .all(|m| self.contains(m) == self.contains(m | bit))
    }

    pub fn free_inversions(&self) -> Vec<usize> {
        (0..self.cinv.len()).filter(|&k| self.is_free(k)).collect()
    }

    /// Arc `k = (z(j), z(k'))` nests in `C` if some `(z(i), z(l)) ∈ C` has
    /// `i ≤ j < k' < l`.
    pub fn nests(&self, k: usize, mask: Mask) -> bool {
        let (j, kk) = self.spans[k];
        bits(mask).any(|c| {
            let (i, l) = self.spans[c];
            i <= j && kk < l
        })
    }

    pub fn is_addable(&self, k: usize, mask: Mask) -> bool {
        let bit: Mask = 1 << k;
        mask & bit == 0 && self.nests(k, mask) && self.contains(mask | bit)
    }

    pub fn is_removable(&self, k: usize, mask: Mask) -> bool {
        let bit: Mask = 1 << k;
        mask & bit != 0 && self.nests(k, mask) && self.contains(mask & !bit)
    }

    fn touched(&self, k: usize, mask: Mask) -> bool {
        self.is_addable(k, mask) || self.is_removable(k, mask)
    }

    /// `R(𝓑)`: members in which no arc of `𝓑` is addable or removable.
    pub fn remaining(&self, arcs: &[usize]) -> Vec<Mask> {
        self.members()
            .into_iter()
            .filter(|&m| arcs.iter().all(|&k| !self.touched(k, m)))
            .collect()
    }

    /// `crSt`: members with no addable and no removable arc at all.
    pub fn core_set(&self) -> Vec<Mask> {
        let all: Vec<usize> = (0..self.cinv.len()).collect();
        self.remaining(&all)
    }

    /// Checks that `eta` is a removal sequence and returns the blocks
    /// `K_1, …, K_r` followed by the remainder `R(𝓑)`.
    pub fn removal_sequence_partition(&self, eta: &[usize]) -> Result<RemovalPartition> {
        let mut seen = vec![false; self.cinv.len()];
        for &k in eta {
            if k >= self.cinv.len() || seen[k] {
                return Err(Error::InvalidRemovalSequence(format!(
                    "arc index {k} repeated or out of range"
                )));
            }
            seen[k] = true;
        }
        let mut blocks = Vec::with_capacity(eta.len());
        let mut current = self.members();
        for (j, &k) in eta.iter().enumerate() {
            if !current.iter().any(|&m| self.is_removable(k, m)) {
                return Err(Error::InvalidRemovalSequence(format!(
                    "{} is not removable at step {}",
                    self.cinv[k],
                    j + 1
                )));
            }
            let (block, rest): (Vec<Mask>, Vec<Mask>) =
                current.into_iter().partition(|&m| self.touched(k, m));
            blocks.push(block);
            current = rest;
        }
        Ok(RemovalPartition {
            blocks,
            remaining: current,
        })
    }

    /// Extends the empty sequence greedily, smallest arc first, until no
    /// arc is removable in what remains.
    pub fn maximal_removal_sequence(&self) -> Vec<usize> {
        let mut eta = Vec::new();
        let mut current = self.members();
        loop {
            let next = (0..self.cinv.len())
                .filter(|k| !eta.contains(k))
                .find(|&k| current.iter().any(|&m| self.is_removable(k, m)));
            let Some(k) = next else { break };
            eta.push(k);
            current.retain(|&m| !self.touched(k, m));
        }
        eta
    }

    /// `I = {i | z(i) > m, z(i+1) ≤ m}`.
    pub fn component_starts(&self) -> Vec<usize> {
        let m = self.v.degree();
        let word = self.z.word();
        (1..word.len())
            .filter(|&i| word[i - 1] > m && word[i] <= m)
            .collect()
    }

    /// Connected components of `C`, viewed as arcs between positions, each
    /// keyed by its smallest position.
    pub fn components(&self, mask: Mask) -> BTreeMap<usize, Mask> {
        let n = self.z.degree();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for k in bits(mask) {
            let (i, l) = self.spans[k];
            let (ri, rl) = (find(&mut parent, i), find(&mut parent, l));
            parent[ri.max(rl)] = ri.min(rl);
        }
        let mut out = BTreeMap::new();
        for k in bits(mask) {
            let root = find(&mut parent, self.spans[k].0);
            *out.entry(root).or_insert(0) |= 1 << k;
        }
        out
    }

    /// `ccs(i)` for each `i ∈ I`: the components starting at `i` across all
    /// of `crSt`, with `0` standing for "no component there".
    pub fn component_chains(&self) -> BTreeMap<usize, Vec<Mask>> {
        let starts = self.component_starts();
        let mut out: BTreeMap<usize, Vec<Mask>> = starts.iter().map(|&i| (i, Vec::new())).collect();
        for d in self.core_set() {
            let comps = self.components(d);
            for &i in &starts {
                let c = comps.get(&i).copied().unwrap_or(0);
                let list = out.get_mut(&i).expect("key inserted");
                if !list.contains(&c) {
                    list.push(c);
                }
            }
        }
        for list in out.values_mut() {
            list.sort_by_key(|m| (m.count_ones(), *m));
        }
        out
    }

    pub fn core(&self) -> CoreResult {
        if !self.free_inversions().is_empty() {
            return CoreResult::Zero;
        }
        let crst = self.core_set();
        if crst.len() % 2 == 0 {
            return CoreResult::Zero;
        }
        let core = crst.iter().map(|m| m.count_ones() as usize).min().expect("odd, so nonempty");
        CoreResult::Signed { core }
    }

    /// `z` with the arcs of `mask`, e.g. `9,1,7,4,2,6,3,5,8 {(9,7),(7,4)}`.
    pub fn render(&self, mask: Mask) -> String {
        render_arcs(&self.z, &self.subset(mask))
    }
}

/// One-line rendering of a permutation with a set of arcs.
pub fn render_arcs(z: &Permutation, arcs: &[CoveringInversion]) -> String {
    let list: Vec<String> = arcs.iter().map(|c| c.to_string()).collect();
    format!("{z} {{{}}}", list.join(","))
}

/// The blocks `K_j(𝓑; η)` and the remainder `R(𝓑)` of a removal sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalPartition {
    pub blocks: Vec<Vec<Mask>>,
    pub remaining: Vec<Mask>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreResult {
    /// No contribution: a free inversion exists or `|crSt|` is even.
    Zero,
    /// Contributes `(−1)^core`.
    Signed { core: usize },
}

impl CoreResult {
    /// The coefficient this result predicts.
    pub fn coefficient(self) -> i64 {
        match self {
            CoreResult::Zero => 0,
            CoreResult::Signed { core } if core % 2 == 0 => 1,
            CoreResult::Signed { .. } => -1,
        }
    }
}

impl fmt::Display for CoreResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreResult::Zero => f.write_str("zero"),
            CoreResult::Signed { core } => write!(f, "signed(core={core})"),
        }
    }
}

pub fn core(v: &Permutation, w: &Permutation, z: &Permutation) -> Result<CoreResult> {
    Ok(cinvs(v, w, z)?.core())
}

pub fn is_free(
    c: &CoveringInversion,
    v: &Permutation,
    w: &Permutation,
    z: &Permutation,
) -> Result<bool> {
    let family = cinvs(v, w, z)?;
    Ok(family.is_free(family.index_of(c)?))
}
