//! Literal superclass functions on the additive group `ut_n(F_q)` of
//! strictly upper-triangular matrices, for small `n` and prime `q`.
//!
//! Elements are indexed by their base-`q` digit vector over the coordinates
//! `(i, j)`, `i < j`, in row-major order. Class functions are value tables
//! over that index.
//!
//! ```
//! use fqsym_scf::oracle::{basis_function, FunctionKind, UtGroup};
//! use fqsym_scf::Permutation;
//!
//! let g = UtGroup::new(2, 2).unwrap();
//! let chi = basis_function(&g, FunctionKind::Chi, &Permutation::identity(2)).unwrap();
//! assert_eq!(chi.values(), &[1.into(), (-1).into()]);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::{Basis, Rational, ScfElement};
use crate::lattice::{leq, mobius};
use crate::perm::{all_permutations, InvTable, Permutation};
use crate::shuffle::{a_shuffle, bowtie, deconcatenate, PositionSet};

/// Largest group order the oracle will materialise.
pub const MAX_ORDER: u64 = 1 << 20;
pub const MAX_DEGREE: usize = 5;
pub const PRIMES: [u32; 3] = [2, 3, 5];

/// `ut_n(F_q)` as an indexed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtGroup {
    n: usize,
    q: u32,
    coords: Vec<(usize, usize)>,
    order: usize,
}

impl UtGroup {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let out_of_range = |reason: String| Error::GroupOutOfRange { n, q, reason };
        if n > MAX_DEGREE {
            return Err(out_of_range(format!("n must be at most {MAX_DEGREE}")));
        }
        if !PRIMES.contains(&q) {
            return Err(out_of_range(format!("q must be one of {PRIMES:?}")));
        }
        let coords: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let order = u64::from(q).checked_pow(coords.len() as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(out_of_range(format!("order {order} exceeds {MAX_ORDER}")));
        }
        Ok(UtGroup {
            n,
            q,
            coords,
            order: order as usize,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coordinates `(i, j)` in digit order.
    pub fn coordinates(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn coordinate_index(&self, i: usize, j: usize) -> Option<usize> {
        self.coords.iter().position(|&c| c == (i, j))
    }

    pub fn digits(&self, index: usize) -> Vec<u32> {
        let q = self.q as usize;
        let mut rest = index;
        self.coords
            .iter()
            .map(|_| {
                let d = rest % q;
                rest /= q;
                d as u32
            })
            .collect()
    }

    pub fn index_of_digits(&self, digits: &[u32]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.q as usize + d as usize)
    }

    pub fn element(&self, index: usize) -> UtMatrix {
        let entries = self
            .coords
            .iter()
            .zip(self.digits(index))
            .filter(|(_, d)| *d != 0)
            .map(|(&c, d)| (c, d))
            .collect();
        UtMatrix {
            n: self.n,
            q: self.q,
            entries,
        }
    }

    pub fn index_of(&self, x: &UtMatrix) -> Result<usize> {
        if x.n != self.n || x.q != self.q {
            return Err(Error::ShapeMismatch(format!(
                "matrix in ut_{}(F_{}) used with ut_{}(F_{})",
                x.n, x.q, self.n, self.q
            )));
        }
        let digits: Vec<u32> = self.coords.iter().map(|&(i, j)| x.get(i, j)).collect();
        Ok(self.index_of_digits(&digits))
    }

    /// Every element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = UtMatrix> + '_ {
        (0..self.order).map(|k| self.element(k))
    }

    /// `|ut_w| = q^{|ι(w)|}`.
    pub fn pattern_order(&self, w: &Permutation) -> u64 {
        u64::from(self.q).pow(w.inversion_table().total() as u32)
    }

    fn label_of_digits(&self, digits: &[u32]) -> Permutation {
        let mut t = vec![0; self.n];
        for (&(i, j), &d) in self.coords.iter().zip(digits) {
            if d != 0 {
                t[i - 1] = t[i - 1].max(j - i);
            }
        }
        Permutation::from_inversion_table(&InvTable::from_entries_unchecked(t))
    }

    /// Superclass labels for every element, in index order.
    pub fn labels(&self) -> Vec<Permutation> {
        (0..self.order).map(|k| self.label_of_digits(&self.digits(k))).collect()
    }

    /// `|Cl_w|` for each `w`, by counting labels.
    pub fn superclass_sizes(&self) -> BTreeMap<Permutation, u64> {
        let mut out: BTreeMap<Permutation, u64> =
            all_permutations(self.n).into_iter().map(|w| (w, 0)).collect();
        for w in self.labels() {
            *out.get_mut(&w).expect("labels are permutations") += 1;
        }
        out
    }

    /// `|Cl_w| = Σ_{v ≤ w} μ(v, w) |ut_v|`, i.e. `ut_w` minus the union of
    /// the smaller pattern groups.
    pub fn superclass_size_by_inclusion_exclusion(&self, w: &Permutation) -> i64 {
        crate::lattice::lower_set(w)
            .iter()
            .map(|v| mobius(v, w).expect("same degree") * self.pattern_order(v) as i64)
            .sum()
    }

    /// A canonical element of `Cl_w`: ones at `(i, i + ι_i(w))`.
    pub fn superclass_representative(&self, w: &Permutation) -> UtMatrix {
        let entries = w
            .inversion_table()
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &t)| t > 0)
            .map(|(k, &t)| ((k + 1, k + 1 + t), 1))
            .collect();
        UtMatrix {
            n: self.n,
            q: self.q,
            entries,
        }
    }
}

/// A strictly upper-triangular matrix over `F_q`, stored by its nonzero
/// entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UtMatrix {
    n: usize,
    q: u32,
    entries: BTreeMap<(usize, usize), u32>,
}

impl UtMatrix {
    pub fn zero(n: usize, q: u32) -> Self {
        UtMatrix {
            n,
            q,
            entries: BTreeMap::new(),
        }
    }

    /// Entries are reduced mod `q`; positions must satisfy `i < j ≤ n`.
    pub fn new(n: usize, q: u32, entries: &[((usize, usize), u32)]) -> Result<Self> {
        let mut x = UtMatrix::zero(n, q);
        for &((i, j), t) in entries {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::ShapeMismatch(format!("({i},{j}) is not above the diagonal of a {n}x{n} matrix")));
            }
            x.set(i, j, t);
        }
        Ok(x)
    }

    fn set(&mut self, i: usize, j: usize, t: u32) {
        let t = t % self.q;
        if t == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), t);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.entries
    }

    pub fn add(&self, other: &UtMatrix) -> UtMatrix {
        let mut out = self.clone();
        for (&(i, j), &t) in &other.entries {
            out.set(i, j, out.get(i, j) + t);
        }
        out
    }
}

/// The superclass containing `x`: the `w` with
/// `ι_i(w) = max{j − i | x_ij ≠ 0}`.
pub fn superclass_label(x: &UtMatrix) -> Permutation {
    let mut t = vec![0; x.n];
    for &(i, j) in x.entries.keys() {
        t[i - 1] = t[i - 1].max(j - i);
    }
    Permutation::from_inversion_table(&InvTable::from_entries_unchecked(t))
}

fn supercharacter_factor(offset: usize, reach: usize, entry: u32, q: u32) -> i64 {
    let q = i64::from(q);
    match offset.cmp(&(reach + 1)) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal if entry == 0 => q - 1,
        std::cmp::Ordering::Equal => -1,
        std::cmp::Ordering::Greater if entry == 0 => q,
        std::cmp::Ordering::Greater => 0,
    }
}

/// `χ^v(x)` as a product over coordinates: trivial inside `ut_v`,
/// `reg − 1` on the boundary just outside it, `reg` further out.
pub fn supercharacter_value(v: &Permutation, x: &UtMatrix) -> Result<i64> {
    if v.degree() != x.n {
        return Err(Error::DegreeMismatch {
            left: v.degree(),
            right: x.n,
        });
    }
    let iota = v.inversion_table();
    let mut value = 1;
    for i in 1..=x.n {
        for j in i + 1..=x.n {
            value *= supercharacter_factor(j - i, iota.entries()[i - 1], x.get(i, j), x.q);
            if value == 0 {
                return Ok(0);
            }
        }
    }
    Ok(value)
}

/// A rational-valued function on `ut_n(F_q)`, stored as a table over the
/// element index of [`UtGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    q: u32,
    values: Vec<Rational>,
}

impl ClassFunction {
    pub fn from_values(group: &UtGroup, values: Vec<Rational>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::SizeMismatch {
                expected: group.order(),
                actual: values.len(),
            });
        }
        Ok(ClassFunction {
            n: group.n,
            q: group.q,
            values,
        })
    }

    pub fn zero(group: &UtGroup) -> Self {
        ClassFunction {
            n: group.n,
            q: group.q,
            values: vec![Rational::zero(); group.order()],
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: &UtMatrix) -> Result<Rational> {
        let group = self.group();
        Ok(self.values[group.index_of(x)?])
    }

    /// The value at the identity (the zero matrix).
    pub fn degree_value(&self) -> Rational {
        self.values[0]
    }

    pub fn group(&self) -> UtGroup {
        UtGroup::new(self.n, self.q).expect("built from a valid group")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if (self.n, self.q) != (other.n, other.q) {
            return Err(Error::ShapeMismatch(format!(
                "ut_{}(F_{}) vs ut_{}(F_{})",
                self.n, self.q, other.n, other.q
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        Ok(ClassFunction {
            n: self.n,
            q: self.q,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: Rational) -> ClassFunction {
        ClassFunction {
            n: self.n,
            q: self.q,
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    /// Whether the function is constant on every superclass.
    pub fn is_superclass_function(&self) -> bool {
        let labels = self.group().labels();
        let mut seen: BTreeMap<&Permutation, Rational> = BTreeMap::new();
        labels.iter().zip(&self.values).all(|(w, v)| *seen.entry(w).or_insert(*v) == *v)
    }
}

/// `⟨f, g⟩ = |G|⁻¹ Σ_u f(u) g(u)`. Every function here is rational, so
/// conjugation is trivial.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational> {
    f.check_same(g)?;
    let sum: Rational = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum();
    Ok(sum / Rational::from(f.values.len() as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionKind {
    /// Superclass indicator `δ_w`.
    Delta,
    /// Indicator of the pattern group `ut_w`.
    DeltaBar,
    /// Supercharacter `χ^w`.
    Chi,
    /// Permutation character `χ̄^w = Ind_{ut_w}(1)`.
    ChiBar,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 4] = [
        FunctionKind::Delta,
        FunctionKind::DeltaBar,
        FunctionKind::Chi,
        FunctionKind::ChiBar,
    ];
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionKind::Delta => "delta",
            FunctionKind::DeltaBar => "deltabar",
            FunctionKind::Chi => "chi",
            FunctionKind::ChiBar => "chibar",
        })
    }
}

fn in_pattern(w_table: &[usize], group: &UtGroup, digits: &[u32]) -> bool {
    group
        .coords
        .iter()
        .zip(digits)
        .all(|(&(i, j), &d)| d == 0 || j - i <= w_table[i - 1])
}

/// The literal table of one of the four basis functions indexed by `w`.
pub fn basis_function(group: &UtGroup, kind: FunctionKind, w: &Permutation) -> Result<ClassFunction> {
    if w.degree() != group.n {
        return Err(Error::DegreeMismatch {
            left: w.degree(),
            right: group.n,
        });
    }
    let table = w.inversion_table();
    let t = table.entries();
    let index = group.order() as i64 / group.pattern_order(w) as i64;
    let values = (0..group.order())
        .map(|k| {
            let digits = group.digits(k);
            let v: i64 = match kind {
                FunctionKind::Delta => i64::from(group.label_of_digits(&digits) == *w),
                FunctionKind::DeltaBar => i64::from(in_pattern(t, group, &digits)),
                FunctionKind::ChiBar => {
                    if in_pattern(t, group, &digits) {
                        index
                    } else {
                        0
                    }
                }
                FunctionKind::Chi => group
                    .coords
                    .iter()
                    .zip(&digits)
                    .map(|(&(i, j), &d)| supercharacter_factor(j - i, t[i - 1], d, group.q))
                    .product(),
            };
            Rational::from(v)
        })
        .collect();
    Ok(ClassFunction {
        n: group.n,
        q: group.q,
        values,
    })
}

/// The literal function of an algebra element of degree `group.degree()`.
pub fn realize(group: &UtGroup, x: &ScfElement) -> Result<ClassFunction> {
    let kind = match x.basis() {
        Basis::Sch => FunctionKind::Chi,
        Basis::Pch => FunctionKind::ChiBar,
    };
    let mut out = ClassFunction::zero(group);
    for (w, c) in x.terms() {
        out = out.add(&basis_function(group, kind, w)?.scale(*c))?;
    }
    Ok(out)
}

/// Expands `f` in supercharacters, `c_y = ⟨f, χ^y⟩ / χ^y(1)`, and checks
/// that the expansion reproduces `f`.
pub fn decompose(f: &ClassFunction) -> Result<ScfElement> {
    let group = f.group();
    let mut terms = Vec::new();
    let mut rebuilt = ClassFunction::zero(&group);
    for y in all_permutations(group.n) {
        let chi = basis_function(&group, FunctionKind::Chi, &y)?;
        let c = inner_product(f, &chi)? / chi.degree_value();
        if !c.is_zero() {
            rebuilt = rebuilt.add(&chi.scale(c))?;
            terms.push((y, c));
        }
    }
    if rebuilt != *f {
        return Err(Error::ShapeMismatch(
            "function is not a superclass function".to_string(),
        ));
    }
    Ok(ScfElement::from_terms(Basis::Sch, terms))
}

/// The `⋆` involution on literal superclass functions.
pub fn star(f: &ClassFunction) -> Result<ClassFunction> {
    realize(&f.group(), &decompose(f)?.star())
}

/// Which of the four coordinate blocks a position belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    /// `U_A`: rows in `A`, right of the threshold.
    Upper,
    /// `L_A`: rows in `A`, left of the threshold.
    Left,
    /// `U_A^∨`: rows outside `A`, left of the threshold.
    UpperDual,
    /// `R_A`: rows outside `A`, right of the threshold.
    Right,
}

/// The partition of the coordinates of `ut_n` attached to `A ⊆ {1..n}`,
/// with the reindexing maps onto `ut_{n−|A|}` and `ut_{|A|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupShape {
    a: PositionSet,
    upper: Vec<(usize, usize)>,
    left: Vec<(usize, usize)>,
    upper_dual: Vec<(usize, usize)>,
    right: Vec<(usize, usize)>,
}

impl SubgroupShape {
    pub fn new(a: PositionSet) -> Self {
        let n = a.ambient();
        let mut shape = SubgroupShape {
            a,
            upper: Vec::new(),
            left: Vec::new(),
            upper_dual: Vec::new(),
            right: Vec::new(),
        };
        for i in 1..=n {
            for j in i + 1..=n {
                match shape.block(i, j) {
                    Block::Upper => shape.upper.push((i, j)),
                    Block::Left => shape.left.push((i, j)),
                    Block::UpperDual => shape.upper_dual.push((i, j)),
                    Block::Right => shape.right.push((i, j)),
                }
            }
        }
        shape
    }

    pub fn degree(&self) -> usize {
        self.a.ambient()
    }

    pub fn positions(&self) -> &PositionSet {
        &self.a
    }

    /// Degree of the `ut_A^∨` factor.
    pub fn left_degree(&self) -> usize {
        self.degree() - self.a.len()
    }

    /// Degree of the `ut_A` factor.
    pub fn right_degree(&self) -> usize {
        self.a.len()
    }

    pub fn block(&self, i: usize, j: usize) -> Block {
        let beyond = j > self.degree() - self.a.count_above(i);
        match (self.a.contains(i), beyond) {
            (true, true) => Block::Upper,
            (true, false) => Block::Left,
            (false, false) => Block::UpperDual,
            (false, true) => Block::Right,
        }
    }

    pub fn upper(&self) -> &[(usize, usize)] {
        &self.upper
    }

    pub fn left(&self) -> &[(usize, usize)] {
        &self.left
    }

    pub fn upper_dual(&self) -> &[(usize, usize)] {
        &self.upper_dual
    }

    pub fn right(&self) -> &[(usize, usize)] {
        &self.right
    }

    /// `τ_A`: `(i, j) ↦ (i − #{b < i | b ∉ A}, j − m)` on `U_A`.
    pub fn tau(&self, (i, j): (usize, usize)) -> (usize, usize) {
        let skipped = (i - 1) - self.a.count_below(i);
        (i - skipped, j - self.left_degree())
    }

    /// `τ′_A`: `(i, j) ↦ (i − #{a < i}, j − #{a < i})` on `U_A^∨`.
    pub fn tau_prime(&self, (i, j): (usize, usize)) -> (usize, usize) {
        let below = self.a.count_below(i);
        (i - below, j - below)
    }
}

// Per coordinate of the big group: its block and, for U and U^∨, the digit
// place in the corresponding small group.
struct Layout {
    blocks: Vec<Block>,
    place: Vec<usize>,
    left: UtGroup,
    right: UtGroup,
}

fn layout(shape: &SubgroupShape, q: u32) -> Result<(UtGroup, Layout)> {
    let big = UtGroup::new(shape.degree(), q)?;
    let left = UtGroup::new(shape.left_degree(), q)?;
    let right = UtGroup::new(shape.right_degree(), q)?;
    let mut blocks = Vec::new();
    let mut place = Vec::new();
    for &(i, j) in big.coordinates() {
        let b = shape.block(i, j);
        let p = match b {
            Block::UpperDual => {
                let (a, c) = shape.tau_prime((i, j));
                left.coordinate_index(a, c).expect("τ′ lands in ut_m")
            }
            Block::Upper => {
                let (a, c) = shape.tau((i, j));
                right.coordinate_index(a, c).expect("τ lands in ut_|A|")
            }
            _ => 0,
        };
        blocks.push(b);
        place.push((q as usize).pow(p as u32));
    }
    Ok((
        big,
        Layout {
            blocks,
            place,
            left,
            right,
        },
    ))
}

/// A rational function on `ut_m(F_q) × ut_k(F_q)`, indexed by pairs of
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClassFunction {
    left: (usize, u32),
    right: (usize, u32),
    right_order: usize,
    values: Vec<Rational>,
}

impl TensorClassFunction {
    pub fn zero(left: &UtGroup, right: &UtGroup) -> Self {
        TensorClassFunction {
            left: (left.n, left.q),
            right: (right.n, right.q),
            right_order: right.order(),
            values: vec![Rational::zero(); left.order() * right.order()],
        }
    }

    /// `f ⊗ g`.
    pub fn tensor(f: &ClassFunction, g: &ClassFunction) -> Self {
        let values = f
            .values
            .iter()
            .flat_map(|a| g.values.iter().map(move |b| a * b))
            .collect();
        TensorClassFunction {
            left: (f.n, f.q),
            right: (g.n, g.q),
            right_order: g.values.len(),
            values,
        }
    }

    pub fn value(&self, left_index: usize, right_index: usize) -> Rational {
        self.values[left_index * self.right_order + right_index]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn inner_product(&self, other: &TensorClassFunction) -> Result<Rational> {
        if (self.left, self.right) != (other.left, other.right) {
            return Err(Error::ShapeMismatch("tensor factors differ".to_string()));
        }
        let sum: Rational = self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum();
        Ok(sum / Rational::from(self.values.len() as i64))
    }
}

/// `Exfl(f ⊗ g)(l + u′ + u + r) = f(τ′(u′)) g(τ(u)) reg_{r_A}(r)`.
pub fn exflation(shape: &SubgroupShape, f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
    if f.degree() != shape.left_degree() || g.degree() != shape.right_degree() || f.q != g.q {
        return Err(Error::ShapeMismatch(format!(
            "exflation to degree {} needs factors of degrees {} and {}",
            shape.degree(),
            shape.left_degree(),
            shape.right_degree()
        )));
    }
    let (big, lay) = layout(shape, f.q)?;
    let r_order = Rational::from((f.q as i64).pow(shape.right.len() as u32));
    let values = (0..big.order())
        .map(|k| {
            let digits = big.digits(k);
            let (mut li, mut ri) = (0, 0);
            for (c, &d) in digits.iter().enumerate() {
                let d = d as usize;
                match lay.blocks[c] {
                    Block::Right if d != 0 => return Rational::zero(),
                    Block::UpperDual => li += d * lay.place[c],
                    Block::Upper => ri += d * lay.place[c],
                    _ => {}
                }
            }
            f.values[li] * g.values[ri] * r_order
        })
        .collect();
    Ok(ClassFunction {
        n: big.n,
        q: big.q,
        values,
    })
}

/// `Dela(f)(u′, u) = Σ_{l, r} w(l) w(r) f(l + u′ + u + r)`, averaging each
/// `L_A` coordinate uniformly and weighting each `R_A` coordinate by
/// `(reg − 1)(t) / (q · (reg − 1)(0))`.
pub fn delapsing(shape: &SubgroupShape, f: &ClassFunction) -> Result<TensorClassFunction> {
    if f.degree() != shape.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: shape.degree(),
        });
    }
    let q = f.q;
    let (big, lay) = layout(shape, q)?;
    let qr = Rational::from(i64::from(q));
    let l_weight = qr.recip();
    let r_zero = qr.recip();
    let r_nonzero = -(qr * (qr - Rational::one())).recip();
    let mut out = TensorClassFunction::zero(&lay.left, &lay.right);
    for k in 0..big.order() {
        let value = f.values[k];
        if value.is_zero() {
            continue;
        }
        let mut weight = Rational::one();
        let (mut li, mut ri) = (0, 0);
        for (c, &d) in big.digits(k).iter().enumerate() {
            match lay.blocks[c] {
                Block::Left => weight *= l_weight,
                Block::Right => weight *= if d == 0 { r_zero } else { r_nonzero },
                Block::UpperDual => li += d as usize * lay.place[c],
                Block::Upper => ri += d as usize * lay.place[c],
            }
        }
        out.values[li * out.right_order + ri] += weight * value;
    }
    Ok(out)
}

/// `|r_A| = q^{|R_A|}`.
pub fn right_block_order(shape: &SubgroupShape, q: u32) -> i64 {
    i64::from(q).pow(shape.right.len() as u32)
}

/// Outcome of an exhaustive functor check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn chi_table(group: &UtGroup) -> Result<BTreeMap<Permutation, ClassFunction>> {
    all_permutations(group.n)
        .into_iter()
        .map(|w| Ok((w.clone(), basis_function(group, FunctionKind::Chi, &w)?)))
        .collect()
}

/// Whether every row `i ∉ A` that meets `R_A` corresponds to a row of `w`
/// with room to spare, `ι_{i′}(w) < m − i′`. Exactly then the regular
/// factor on `R_A` agrees with the supercharacter factorization of
/// `w ⋈_A v`.
pub fn right_block_is_regular(shape: &SubgroupShape, w: &Permutation) -> bool {
    let a = shape.positions();
    let m = shape.left_degree();
    let t = w.inversion_table();
    (1..=shape.degree())
        .filter(|&i| !a.contains(i) && a.count_above(i) > 0)
        .all(|i| {
            let row = i - a.count_below(i);
            t.entries()[row - 1] < m - row
        })
}

/// For every `w`, `v`: `Exfl(χ^w ⊗ χ^v) = χ^{w ⋈_A v}` and
/// `Exfl(χ^{w⋆} ⊗ χ^{v⋆})^⋆ = χ^{w ⧢_A v}`.
pub fn check_going_up(shape: &SubgroupShape, q: u32) -> Result<CheckReport> {
    let big = UtGroup::new(shape.degree(), q)?;
    let left = chi_table(&UtGroup::new(shape.left_degree(), q)?)?;
    let right = chi_table(&UtGroup::new(shape.right_degree(), q)?)?;
    let target = chi_table(&big)?;
    let a = shape.positions();
    let mut report = CheckReport::default();
    for (w, fw) in &left {
        for (v, gv) in &right {
            let up = exflation(shape, fw, gv)?;
            let tied = bowtie(w, v, a)?;
            report.record(up == target[&tied], || format!("Exfl(chi^{w} (x) chi^{v}) != chi^{tied} for A={:?}", a.positions()));
            let starred = star(&exflation(shape, &star(fw)?, &star(gv)?)?)?;
            let shuffled = a_shuffle(w, v, a)?;
            report.record(starred == target[&shuffled], || {
                format!("starred exflation of ({w},{v}) != chi^{shuffled} for A={:?}", a.positions())
            });
        }
    }
    Ok(report)
}

/// For every `w`: `Dela(χ^w) = χ^{w≤m} ⊗ χ^{w>m}` when the values in `A`
/// sit at the last `|A|` positions of `w`, and `0` otherwise.
pub fn check_going_down(shape: &SubgroupShape, q: u32) -> Result<CheckReport> {
    let big = UtGroup::new(shape.degree(), q)?;
    let left = chi_table(&UtGroup::new(shape.left_degree(), q)?)?;
    let right = chi_table(&UtGroup::new(shape.right_degree(), q)?)?;
    let m = shape.left_degree();
    let mut report = CheckReport::default();
    for (w, chi) in chi_table(&big)? {
        let down = delapsing(shape, &chi)?;
        let mut at: Vec<usize> = shape.positions().positions().iter().map(|&a| w.inverse().at(a)).collect();
        at.sort();
        let terminal = at.iter().copied().eq(m + 1..=shape.degree());
        let expected = if terminal {
            let (head, tail) = deconcatenate(&w, m)?;
            TensorClassFunction::tensor(&left[&head], &right[&tail])
        } else {
            TensorClassFunction::zero(&UtGroup::new(m, q)?, &UtGroup::new(shape.right_degree(), q)?)
        };
        report.record(down == expected, || {
            format!("Dela(chi^{w}) wrong for A={:?}", shape.positions().positions())
        });
    }
    Ok(report)
}

/// `|r_A| ⟨Dela(χ^w), χ^y ⊗ χ^z⟩ = ⟨χ^w, Exfl(χ^y ⊗ χ^z)⟩` for all triples.
pub fn adjointness_check(shape: &SubgroupShape, q: u32) -> Result<CheckReport> {
    let big = UtGroup::new(shape.degree(), q)?;
    let left = chi_table(&UtGroup::new(shape.left_degree(), q)?)?;
    let right = chi_table(&UtGroup::new(shape.right_degree(), q)?)?;
    let r = Rational::from(right_block_order(shape, q));
    let mut ups = Vec::new();
    for (y, fy) in &left {
        for (z, gz) in &right {
            ups.push((y, z, TensorClassFunction::tensor(fy, gz), exflation(shape, fy, gz)?));
        }
    }
    let mut report = CheckReport::default();
    for (w, chi) in chi_table(&big)? {
        let down = delapsing(shape, &chi)?;
        for (y, z, pair, up) in &ups {
            let lhs = r * down.inner_product(pair)?;
            let rhs = inner_product(&chi, up)?;
            report.record(lhs == rhs, || {
                format!(
                    "adjointness fails for w={w}, y={y}, z={z}, A={:?}: {lhs} vs {rhs}",
                    shape.positions().positions()
                )
            });
        }
    }
    Ok(report)
}

/// Rank of the value table of a basis family, restricted to superclass
/// representatives.
pub fn family_rank(group: &UtGroup, kind: FunctionKind) -> Result<usize> {
    let perms = all_permutations(group.n);
    let reps: Vec<usize> = perms
        .iter()
        .map(|w| group.index_of(&group.superclass_representative(w)))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Rational>> = perms
        .iter()
        .map(|w| {
            let f = basis_function(group, kind, w)?;
            Ok(reps.iter().map(|&k| f.values[k]).collect())
        })
        .collect::<Result<_>>()?;
    Ok(rank(rows))
}

/// Rank by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let lead = rows[r][c];
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c] / lead;
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= factor * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Supercharacter table: rows `χ^w`, columns superclasses, both in
/// inversion-table lexicographic order.
pub fn supercharacter_table(group: &UtGroup) -> Result<Vec<(Permutation, Vec<i64>)>> {
    let perms = all_permutations(group.n);
    perms
        .iter()
        .map(|w| {
            let row = perms
                .iter()
                .map(|c| supercharacter_value(w, &group.superclass_representative(c)))
                .collect::<Result<Vec<_>>>()?;
            Ok((w.clone(), row))
        })
        .collect()
}

/// Coordinates of `ut_w`: `{(i, j) | j − i ≤ ι_i(w)}`.
pub fn pattern_coordinates(w: &Permutation) -> Vec<(usize, usize)> {
    let t = w.inversion_table();
    let n = w.degree();
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| j - i <= t.entries()[i - 1])
        .collect()
}

/// Whether `ut_u ⊆ ut_v` as coordinate sets agrees with `u ≤ v`.
pub fn containment_matches_order(u: &Permutation, v: &Permutation) -> bool {
    let cu = pattern_coordinates(u);
    let cv = pattern_coordinates(v);
    cu.iter().all(|c| cv.contains(c)) == leq(u, v).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::lattice::{join, lower_set, meet, upper_set};

    fn p(s: &str) -> Permutation {
        Permutation::from_digits(s).unwrap()
    }

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn group_sizes_and_guards() {
        assert_eq!(UtGroup::new(2, 2).unwrap().order(), 2);
        assert_eq!(UtGroup::new(3, 2).unwrap().order(), 8);
        assert_eq!(UtGroup::new(4, 3).unwrap().order(), 729);
        assert_eq!(UtGroup::new(0, 2).unwrap().order(), 1);
        assert!(UtGroup::new(6, 2).is_err());
        assert!(UtGroup::new(3, 4).is_err());
        assert!(UtGroup::new(5, 5).is_err());
        assert_eq!(UtGroup::new(5, 3).unwrap().order(), 59049);
    }

    #[test]
    fn element_indexing_round_trips() {
        let g = UtGroup::new(3, 3).unwrap();
        for k in 0..g.order() {
            assert_eq!(g.index_of(&g.element(k)).unwrap(), k);
        }
        let x = UtMatrix::new(3, 3, &[((1, 3), 4)]).unwrap();
        assert_eq!(x.get(1, 3), 1);
        assert!(UtMatrix::new(3, 3, &[((2, 2), 1)]).is_err());
        assert_eq!(x.add(&x).add(&x), UtMatrix::zero(3, 3));
    }

    #[test]
    fn superclass_label_examples() {
        assert_eq!(superclass_label(&UtMatrix::zero(4, 2)), Permutation::identity(4));
        let x = UtMatrix::new(3, 2, &[((1, 3), 1)]).unwrap();
        assert_eq!(superclass_label(&x), p("231"));
    }

    #[test]
    fn superclass_sizes_in_degree_three() {
        for q in [2, 3, 5] {
            let g = UtGroup::new(3, q).unwrap();
            let sizes = g.superclass_sizes();
            let q = u64::from(q);
            assert_eq!(sizes[&p("312")], (q - 1) * (q - 1));
            assert_eq!(sizes[&p("231")], q * (q - 1));
        }
    }

    #[test]
    fn superclass_sizes_two_ways() {
        for (n, q) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
            let g = UtGroup::new(n, q).unwrap();
            let sizes = g.superclass_sizes();
            assert_eq!(sizes.values().sum::<u64>(), g.order() as u64);
            for (w, &s) in &sizes {
                assert_eq!(g.superclass_size_by_inclusion_exclusion(w), s as i64, "{w}");
            }
        }
    }

    #[test]
    fn supercharacter_value_examples() {
        let top = p("4321");
        let g = UtGroup::new(4, 3).unwrap();
        assert!(g.elements().all(|x| supercharacter_value(&top, &x).unwrap() == 1));
        for q in [2, 3, 5] {
            assert_eq!(supercharacter_value(&p("12"), &UtMatrix::zero(2, q)).unwrap(), i64::from(q) - 1);
        }
        let e = UtMatrix::new(2, 2, &[((1, 2), 1)]).unwrap();
        assert_eq!(supercharacter_value(&p("12"), &e).unwrap(), -1);
        assert!(supercharacter_value(&p("1"), &e).is_err());
    }

    #[test]
    fn basis_function_examples() {
        let g = UtGroup::new(2, 3).unwrap();
        let chibar = basis_function(&g, FunctionKind::ChiBar, &p("12")).unwrap();
        assert_eq!(chibar.values(), &[r(3), r(0), r(0)]);
        let g = UtGroup::new(3, 2).unwrap();
        let delta = basis_function(&g, FunctionKind::Delta, &p("123")).unwrap();
        assert_eq!(delta.values()[0], r(1));
        assert!(delta.values()[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn basis_relations() {
        for (n, q) in [(3, 2), (3, 3), (4, 2)] {
            let g = UtGroup::new(n, q).unwrap();
            for w in all_permutations(n) {
                let db = basis_function(&g, FunctionKind::DeltaBar, &w).unwrap();
                let cb = basis_function(&g, FunctionKind::ChiBar, &w).unwrap();
                let ratio = Rational::new(g.pattern_order(&w) as i64, g.order() as i64);
                assert_eq!(db, cb.scale(ratio));
                let mut sum = ClassFunction::zero(&g);
                for v in lower_set(&w) {
                    sum = sum.add(&basis_function(&g, FunctionKind::Delta, &v).unwrap()).unwrap();
                }
                assert_eq!(db, sum);
                let mut sum = ClassFunction::zero(&g);
                for v in upper_set(&w) {
                    sum = sum.add(&basis_function(&g, FunctionKind::Chi, &v).unwrap()).unwrap();
                }
                assert_eq!(cb, sum);
                for kind in FunctionKind::ALL {
                    assert!(basis_function(&g, kind, &w).unwrap().is_superclass_function());
                }
            }
        }
    }

    #[test]
    fn families_are_bases() {
        for (n, q) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
            let g = UtGroup::new(n, q).unwrap();
            for kind in FunctionKind::ALL {
                assert_eq!(family_rank(&g, kind).unwrap(), crate::perm::factorial(n), "{kind}");
            }
        }
    }

    #[test]
    fn orthogonality() {
        for (n, q) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let g = UtGroup::new(n, q).unwrap();
            let chis = chi_table(&g).unwrap();
            let sizes = g.superclass_sizes();
            for (w, f) in &chis {
                for (v, h) in &chis {
                    let expected = if w == v { f.degree_value() } else { r(0) };
                    assert_eq!(inner_product(f, h).unwrap(), expected);
                }
                let d = basis_function(&g, FunctionKind::Delta, w).unwrap();
                assert_eq!(
                    inner_product(&d, &d).unwrap(),
                    Rational::new(sizes[w] as i64, g.order() as i64)
                );
                // Dual bases.
                let dual = f.scale(f.degree_value().recip());
                assert_eq!(inner_product(&dual, f).unwrap(), r(1));
                let ddual = d.scale(Rational::new(g.order() as i64, sizes[w] as i64));
                assert_eq!(inner_product(&ddual, &d).unwrap(), r(1));
            }
        }
        let g = UtGroup::new(2, 2).unwrap();
        let chi = basis_function(&g, FunctionKind::Chi, &p("12")).unwrap();
        assert_eq!(inner_product(&chi, &chi).unwrap(), r(1));
    }

    #[test]
    fn star_preserves_degrees() {
        for (n, q) in [(4, 2), (4, 3), (5, 2)] {
            let g = UtGroup::new(n, q).unwrap();
            let zero = UtMatrix::zero(n, q);
            for w in all_permutations(n) {
                assert_eq!(
                    supercharacter_value(&w, &zero).unwrap(),
                    supercharacter_value(&w.inverse(), &zero).unwrap()
                );
            }
            let _ = g;
        }
    }

    #[test]
    fn decompose_and_star() {
        let g = UtGroup::new(3, 2).unwrap();
        let f = basis_function(&g, FunctionKind::ChiBar, &p("213")).unwrap();
        let x = decompose(&f).unwrap();
        assert_eq!(x, ScfElement::basis_element(Basis::Pch, p("213")).to_sch());
        let starred = star(&f).unwrap();
        assert_eq!(starred, realize(&g, &x.star()).unwrap());
        let not_class = ClassFunction::from_values(&g, (0..8).map(r).collect()).unwrap();
        assert!(!not_class.is_superclass_function());
        assert!(decompose(&not_class).is_err());
    }

    #[test]
    fn shape_examples() {
        let a = PositionSet::new(9, vec![1, 4, 5, 7]).unwrap();
        let s = SubgroupShape::new(a);
        // Row 1: threshold 9 − 3 = 6.
        assert_eq!(s.block(1, 6), Block::Left);
        assert_eq!(s.block(1, 7), Block::Upper);
        // Row 2 is outside A with threshold 9 − 3 = 6.
        assert_eq!(s.block(2, 6), Block::UpperDual);
        assert_eq!(s.block(2, 7), Block::Right);
        // Row 8: no a > 8, threshold 9.
        assert_eq!(s.block(8, 9), Block::UpperDual);
        let total = s.upper().len() + s.left().len() + s.upper_dual().len() + s.right().len();
        assert_eq!(total, 36);
        assert_eq!(s.upper().len(), 6);
        assert_eq!(s.upper_dual().len(), 10);

        let empty = SubgroupShape::new(PositionSet::empty(4));
        assert_eq!(empty.upper_dual().len(), 6);
        assert!(empty.upper().is_empty() && empty.left().is_empty() && empty.right().is_empty());

        let full = SubgroupShape::new(PositionSet::full(4));
        assert_eq!(full.upper().len(), 6);
        assert!(full.upper_dual().is_empty() && full.left().is_empty() && full.right().is_empty());
    }

    #[test]
    fn tau_maps_are_bijections() {
        for n in 0..=5 {
            for a in PositionSet::all(n) {
                let s = SubgroupShape::new(a);
                let (m, k) = (s.left_degree(), s.right_degree());
                let up: BTreeSet<_> = s.upper().iter().map(|&c| s.tau(c)).collect();
                let expected: BTreeSet<_> = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).collect();
                assert_eq!(up, expected);
                let down: BTreeSet<_> = s.upper_dual().iter().map(|&c| s.tau_prime(c)).collect();
                let expected: BTreeSet<_> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
                assert_eq!(down, expected);
            }
        }
    }

    #[test]
    fn trivial_shape_is_the_identity() {
        let g = UtGroup::new(3, 2).unwrap();
        let unit = ClassFunction::from_values(&UtGroup::new(0, 2).unwrap(), vec![r(1)]).unwrap();
        let s = SubgroupShape::new(PositionSet::empty(3));
        for w in all_permutations(3) {
            let f = basis_function(&g, FunctionKind::Chi, &w).unwrap();
            assert_eq!(exflation(&s, &f, &unit).unwrap(), f);
            let down = delapsing(&s, &f).unwrap();
            assert_eq!(down, TensorClassFunction::tensor(&f, &unit));
        }
    }

    #[test]
    fn degree_two_functor_examples() {
        let g1 = UtGroup::new(1, 2).unwrap();
        let g2 = UtGroup::new(2, 2).unwrap();
        let a = SubgroupShape::new(PositionSet::new(2, vec![2]).unwrap());
        let chi1 = basis_function(&g1, FunctionKind::Chi, &p("1")).unwrap();
        let chi12 = basis_function(&g2, FunctionKind::Chi, &p("12")).unwrap();
        let chi21 = basis_function(&g2, FunctionKind::Chi, &p("21")).unwrap();

        // R_A = {(1,2)} and the single row of χ^1 is full, so the regular
        // factor gives χ^12 + χ^21 rather than χ^{1 ⋈_A 1} = χ^12.
        let up = exflation(&a, &chi1, &chi1).unwrap();
        assert_eq!(up.values(), &[r(2), r(0)]);
        assert_eq!(up, chi12.add(&chi21).unwrap());
        assert_eq!(bowtie(&p("1"), &p("1"), a.positions()).unwrap(), p("12"));
        assert!(!right_block_is_regular(&a, &p("1")));

        let b = SubgroupShape::new(PositionSet::new(2, vec![1]).unwrap());
        assert_eq!(exflation(&b, &chi1, &chi1).unwrap(), chi21);
        assert!(right_block_is_regular(&b, &p("1")));

        assert!(delapsing(&a, &chi21).unwrap().is_zero());
        assert_eq!(delapsing(&a, &chi12).unwrap(), TensorClassFunction::tensor(&chi1, &chi1));
    }

    #[test]
    fn going_down_holds_exhaustively() {
        for (n, q) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            for a in PositionSet::all(n) {
                let down = check_going_down(&SubgroupShape::new(a), q).unwrap();
                assert!(down.passed(), "{:?}", down.failures);
            }
        }
    }

    #[test]
    fn exflation_matches_the_column_shuffle_exactly_when_the_right_block_is_regular() {
        for (n, q) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let big = UtGroup::new(n, q).unwrap();
            for a in PositionSet::all(n) {
                let s = SubgroupShape::new(a.clone());
                let left = chi_table(&UtGroup::new(s.left_degree(), q).unwrap()).unwrap();
                let right = chi_table(&UtGroup::new(s.right_degree(), q).unwrap()).unwrap();
                for (w, f) in &left {
                    for (v, g) in &right {
                        let up = exflation(&s, f, g).unwrap();
                        let target =
                            basis_function(&big, FunctionKind::Chi, &bowtie(w, v, &a).unwrap()).unwrap();
                        assert_eq!(up == target, right_block_is_regular(&s, w), "{w} {v} {:?}", a.positions());
                        // Either way the result is a genuine character.
                        let x = decompose(&up).unwrap();
                        assert!(x.terms().all(|(_, c)| c.is_integer() && *c > r(0)));
                    }
                }
            }
        }
    }

    #[test]
    fn going_up_agrees_with_the_regularity_condition() {
        for q in [2, 3] {
            for a in PositionSet::all(3) {
                let s = SubgroupShape::new(a.clone());
                let report = check_going_up(&s, q).unwrap();
                let expected: usize = all_permutations(s.left_degree())
                    .iter()
                    .map(|w| {
                        let k = crate::perm::factorial(s.right_degree());
                        k * usize::from(!right_block_is_regular(&s, w))
                            + k * usize::from(!right_block_is_regular(&s, &w.inverse()))
                    })
                    .sum();
                assert_eq!(report.failures.len(), expected, "{:?}", a.positions());
            }
        }
    }

    #[test]
    fn adjointness_holds_exactly_for_regular_factors() {
        for (n, q) in [(2, 2), (3, 2), (3, 3)] {
            let big = UtGroup::new(n, q).unwrap();
            for a in PositionSet::all(n) {
                let s = SubgroupShape::new(a);
                let scale = Rational::from(right_block_order(&s, q));
                let left = chi_table(&UtGroup::new(s.left_degree(), q).unwrap()).unwrap();
                let right = chi_table(&UtGroup::new(s.right_degree(), q).unwrap()).unwrap();
                let gammas = chi_table(&big).unwrap();
                for (y, fy) in &left {
                    for gz in right.values() {
                        let up = exflation(&s, fy, gz).unwrap();
                        let pair = TensorClassFunction::tensor(fy, gz);
                        let holds = gammas.values().all(|gamma| {
                            scale * delapsing(&s, gamma).unwrap().inner_product(&pair).unwrap()
                                == inner_product(gamma, &up).unwrap()
                        });
                        assert_eq!(holds, right_block_is_regular(&s, y), "{y}");
                    }
                }
            }
        }
    }

    #[test]
    fn adjointness_on_the_trivial_shape() {
        let g = UtGroup::new(3, 2).unwrap();
        let unit = ClassFunction::from_values(&UtGroup::new(0, 2).unwrap(), vec![r(1)]).unwrap();
        let s = SubgroupShape::new(PositionSet::empty(3));
        let chis = chi_table(&g).unwrap();
        for gamma in chis.values() {
            for phi in chis.values() {
                let lhs = delapsing(&s, gamma)
                    .unwrap()
                    .inner_product(&TensorClassFunction::tensor(phi, &unit))
                    .unwrap();
                assert_eq!(lhs, inner_product(gamma, phi).unwrap());
            }
        }
    }

    #[test]
    fn degrees_multiply_along_shuffles_when_the_right_block_is_regular() {
        let q = 2;
        for n in 0..=4 {
            let zero = UtMatrix::zero(n, q);
            for a in PositionSet::all(n) {
                let s = SubgroupShape::new(a.clone());
                let r_order = right_block_order(&s, q);
                for v in all_permutations(s.left_degree()) {
                    for x in all_permutations(s.right_degree()) {
                        let w = a_shuffle(&v.inverse(), &x.inverse(), &a).unwrap().inverse();
                        let lhs = supercharacter_value(&w, &zero).unwrap();
                        let rhs = r_order
                            * supercharacter_value(&v, &UtMatrix::zero(v.degree(), q)).unwrap()
                            * supercharacter_value(&x, &UtMatrix::zero(x.degree(), q)).unwrap();
                        assert_eq!(lhs == rhs, right_block_is_regular(&s, &v), "{w} {v} {x} {:?}", a.positions());
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_operations_match_subgroups() {
        for n in 0..=5 {
            let all = all_permutations(n);
            for u in &all {
                for v in &all {
                    let cu: BTreeSet<_> = pattern_coordinates(u).into_iter().collect();
                    let cv: BTreeSet<_> = pattern_coordinates(v).into_iter().collect();
                    let cm: BTreeSet<_> = pattern_coordinates(&meet(u, v).unwrap()).into_iter().collect();
                    let cj: BTreeSet<_> = pattern_coordinates(&join(u, v).unwrap()).into_iter().collect();
                    assert_eq!(cm, &cu & &cv);
                    assert_eq!(cj, &cu | &cv);
                    assert!(containment_matches_order(u, v));
                }
            }
        }
    }

    #[test]
    fn table_rows_follow_the_order() {
        let g = UtGroup::new(2, 2).unwrap();
        let table = supercharacter_table(&g).unwrap();
        assert_eq!(table, vec![(p("12"), vec![1, -1]), (p("21"), vec![1, 1])]);
    }
}
