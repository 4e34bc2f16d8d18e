//! Discrete polymatroids given by their rank function.
//!
//! A rank table stores `rho(A)` for every subset `A` of the ground set as a
//! dense array indexed by bitmask (bit `i` set iff element `i` is in `A`;
//! elements are 0-based here and 1-based in every user-facing format).
//!
//! The polymatroid itself is the set of integer vectors `u >= 0` with
//! `|u(A)| <= rho(A)` for all `A`. Members are enumerated lazily and all
//! returned sets are sorted lexicographically.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::{mask_elements, Verdict};

/// Hard cap on the ground-set size of a rank table.
pub const MAX_GROUND: usize = 20;

/// Above this ground-set size, set enumerations must be explicitly enabled.
pub const MAX_ENUMERATION_GROUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolymatroidError {
    #[error("rank table has {0} entries, which is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("ground set of size {n} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge { n: usize },
    #[error("vector has length {found}, ground set has size {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a polymatroid rank function: {0}")]
    InvalidRank(AxiomViolation),
    #[error(
        "set enumeration on a ground set of size {n} needs explicit opt-in \
         (limit {MAX_ENUMERATION_GROUND})"
    )]
    EnumerationTooLarge { n: usize },
    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("scale factor must be positive")]
    ZeroScale,
}

/// A vector in `Z_{>=0}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundVector(Vec<u32>);

impl GroundVector {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// `value` on every element of `mask`, zero elsewhere.
    pub fn from_support(n: usize, mask: u32, value: u32) -> Self {
        Self((0..n).map(|i| if mask >> i & 1 == 1 { value } else { 0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|u|`, the component sum.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// `|u(A)|` for the subset `A` given as a bitmask.
    pub fn restricted_norm(&self, mask: u32) -> u64 {
        mask_elements(mask).map(|i| self.0[i] as u64).sum()
    }

    /// `(u)_{>0}` as a bitmask.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `<=` and not equal.
    pub fn lt(&self, other: &Self) -> bool {
        self.le(other) && self != other
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        Self(v)
    }

    /// `u - e_i`; `None` when the component is already zero.
    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(Self(v))
    }
}

impl From<Vec<u32>> for GroundVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for GroundVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// Monotonicity.
    D1,
    /// Submodularity.
    D2,
    /// Empty set has rank zero.
    D3,
}

/// The first violated axiom with witness subsets (bitmasks).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} fails for A={} B={}",
            self.axiom,
            format_subset(self.a),
            format_subset(self.b)
        )
    }
}

/// Renders a bitmask as a 1-based set, e.g. `{1,3}`.
pub fn format_subset(mask: u32) -> String {
    let items: Vec<String> = mask_elements(mask).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// A set function on `2^[n]`, stored densely by bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankTable {
    n: usize,
    values: Vec<u32>,
}

impl RankTable {
    pub fn new(values: Vec<u32>) -> Result<Self, PolymatroidError> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(PolymatroidError::NotPowerOfTwo(len));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_GROUND {
            return Err(PolymatroidError::GroundTooLarge { n });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self, PolymatroidError> {
        if n > MAX_GROUND {
            return Err(PolymatroidError::GroundTooLarge { n });
        }
        Ok(Self { n, values: (0..1u32 << n).map(f).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    #[inline]
    pub fn rank(&self, mask: u32) -> u32 {
        self.values[mask as usize]
    }

    #[inline]
    pub fn singleton(&self, i: usize) -> u32 {
        self.values[1 << i]
    }

    /// Largest singleton rank.
    pub fn rho_max(&self) -> u32 {
        (0..self.n).map(|i| self.singleton(i)).max().unwrap_or(0)
    }

    /// Checks monotonicity, submodularity and `rho(empty) = 0`, in that order.
    ///
    /// Both D1 and D2 are checked on covering pairs (`A` vs `A+i`, and
    /// `A+i`, `A+j` over `A`), which is equivalent to the global statements.
    pub fn check_rank_axioms(&self) -> Verdict<AxiomViolation> {
        let full = self.full_mask();
        for a in 0..=full {
            for i in mask_elements(full & !a) {
                let b = a | 1 << i;
                if self.rank(a) > self.rank(b) {
                    return Verdict::Violation(AxiomViolation { axiom: Axiom::D1, a, b });
                }
            }
        }
        for base in 0..=full {
            let free: Vec<usize> = mask_elements(full & !base).collect();
            for (x, &i) in free.iter().enumerate() {
                for &j in &free[x + 1..] {
                    let a = base | 1 << i;
                    let b = base | 1 << j;
                    if self.rank(a | b) + self.rank(base) > self.rank(a) + self.rank(b) {
                        return Verdict::Violation(AxiomViolation { axiom: Axiom::D2, a, b });
                    }
                }
            }
        }
        if self.values[0] != 0 {
            return Verdict::Violation(AxiomViolation { axiom: Axiom::D3, a: 0, b: 0 });
        }
        Verdict::Ok
    }

    /// Whether every `r(X) <= |X|`.
    pub fn is_unit_bounded(&self) -> bool {
        (0..=self.full_mask()).all(|m| self.rank(m) <= m.count_ones())
    }

    /// Every entry multiplied by `k` (the rank function of `k` copies of a
    /// matroid's representation).
    pub fn scale(&self, k: u32) -> Result<Self, PolymatroidError> {
        if k == 0 {
            return Err(PolymatroidError::ZeroScale);
        }
        Ok(Self { n: self.n, values: self.values.iter().map(|&v| v * k).collect() })
    }

    /// Whether `u` satisfies `|u(A)| <= rho(A)` for every `A`. Only subsets of
    /// the support need checking since `rho` is monotone.
    pub fn admits(&self, u: &[u32]) -> bool {
        debug_assert_eq!(u.len(), self.n);
        let mut support = Vec::with_capacity(self.n);
        for (i, &x) in u.iter().enumerate() {
            if x > 0 {
                if x > self.singleton(i) {
                    return false;
                }
                support.push(i);
            }
        }
        let s = support.len();
        let mut sums = vec![0u32; 1 << s];
        let mut masks = vec![0u32; 1 << s];
        for m in 1usize..1 << s {
            let low = m.trailing_zeros() as usize;
            let prev = m & (m - 1);
            let elem = support[low];
            sums[m] = sums[prev] + u[elem];
            masks[m] = masks[prev] | 1 << elem;
            if sums[m] > self.rank(masks[m]) {
                return false;
            }
        }
        true
    }
}

/// A discrete polymatroid, held through its (validated) rank function.
#[derive(Debug, Clone)]
pub struct DiscretePolymatroid {
    rank: RankTable,
    allow_large: bool,
    members: OnceLock<Vec<GroundVector>>,
}

impl PartialEq for DiscretePolymatroid {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
    }
}

impl DiscretePolymatroid {
    /// Fails if the table breaks one of the rank axioms.
    pub fn new(rank: RankTable) -> Result<Self, PolymatroidError> {
        if let Verdict::Violation(v) = rank.check_rank_axioms() {
            return Err(PolymatroidError::InvalidRank(v));
        }
        Ok(Self { rank, allow_large: false, members: OnceLock::new() })
    }

    /// Lifts the ground-set limit on set enumerations.
    pub fn allow_large_enumeration(mut self) -> Self {
        self.allow_large = true;
        self
    }

    pub fn rank_table(&self) -> &RankTable {
        &self.rank
    }

    pub fn n(&self) -> usize {
        self.rank.n()
    }

    /// Singleton ranks, the box every member lives in.
    pub fn caps(&self) -> Vec<u32> {
        (0..self.n()).map(|i| self.rank.singleton(i)).collect()
    }

    fn guard(&self) -> Result<(), PolymatroidError> {
        if self.n() > MAX_ENUMERATION_GROUND && !self.allow_large {
            Err(PolymatroidError::EnumerationTooLarge { n: self.n() })
        } else {
            Ok(())
        }
    }

    fn check_element(&self, i: usize) -> Result<(), PolymatroidError> {
        if i >= self.n() {
            Err(PolymatroidError::ElementOutOfRange { element: i, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn is_member(&self, u: &GroundVector) -> Result<bool, PolymatroidError> {
        if u.len() != self.n() {
            return Err(PolymatroidError::LengthMismatch { expected: self.n(), found: u.len() });
        }
        Ok(self.rank.admits(u.components()))
    }

    /// `rank(D)`: the common norm of all basis vectors, which is `rho([n])`.
    pub fn rank(&self) -> u32 {
        self.rank.rank(self.rank.full_mask())
    }

    pub fn rho_max(&self) -> u32 {
        self.rank.rho_max()
    }

    /// All members in lexicographic order.
    pub fn enumerate_members(&self) -> Result<&[GroundVector], PolymatroidError> {
        self.guard()?;
        Ok(self.members.get_or_init(|| enumerate_members(&self.rank)))
    }

    /// Members with no member strictly above them.
    pub fn basis_vectors(&self) -> Result<Vec<GroundVector>, PolymatroidError> {
        let caps = self.caps();
        Ok(self
            .enumerate_members()?
            .iter()
            .filter(|u| {
                (0..self.n()).all(|j| {
                    u.get(j) >= caps[j] || !self.rank.admits(u.plus_unit(j).components())
                })
            })
            .cloned()
            .collect())
    }

    /// Vectors in the singleton-rank box that are not members.
    pub fn excluded_vectors(&self) -> Result<Vec<GroundVector>, PolymatroidError> {
        self.guard()?;
        let mut out = Vec::new();
        for_each_in_box(&self.caps(), |v| {
            if !self.rank.admits(v) {
                out.push(GroundVector::new(v.to_vec()));
            }
        });
        Ok(out)
    }

    /// Excluded vectors whose `i`-th component is exactly one.
    pub fn excluded_vectors_through(&self, i: usize) -> Result<Vec<GroundVector>, PolymatroidError> {
        self.guard()?;
        self.check_element(i)?;
        let mut caps = self.caps();
        if caps[i] < 1 {
            return Ok(Vec::new());
        }
        caps[i] = 1;
        let mut out = Vec::new();
        for_each_in_box(&caps, |v| {
            if v[i] == 1 && !self.rank.admits(v) {
                out.push(GroundVector::new(v.to_vec()));
            }
        });
        Ok(out)
    }

    /// The circuit-like vectors through `i`: excluded vectors `u` with
    /// `u_i = 1` such that
    ///
    /// 1. `u - e_i` is a member,
    /// 2. no other excluded vector through `i` lies strictly below `u`,
    /// 3. no other excluded vector through `i` has support strictly inside
    ///    the support of `u`.
    ///
    /// Exclusion is upward closed inside the box, so condition 2 reduces to
    /// `u - e_j` being a member for every `j` in the support, and condition 3
    /// to the support being minimal among supports of excluded vectors through
    /// `i`. Such a support `S` is witnessed by its top vector (caps on `S`,
    /// one at `i`), so only `2^(n-1)` membership tests are needed to find the
    /// minimal supports.
    pub fn circuit_vectors(&self, i: usize) -> Result<Vec<GroundVector>, PolymatroidError> {
        self.guard()?;
        self.check_element(i)?;
        let n = self.n();
        let caps = self.caps();
        if caps[i] < 1 {
            return Ok(Vec::new());
        }
        let full = self.rank.full_mask();
        let usable: u32 = (0..n).filter(|&j| caps[j] > 0).fold(0, |m, j| m | 1 << j);
        let bit_i = 1u32 << i;

        // excluded[S]: some excluded vector through i has support exactly S.
        let mut excluded = vec![false; 1usize << n];
        for s in 0..=full {
            if s & bit_i == 0 || s & !usable != 0 {
                continue;
            }
            let mut top = vec![0u32; n];
            for j in mask_elements(s) {
                top[j] = if j == i { 1 } else { caps[j] };
            }
            excluded[s as usize] = !self.rank.admits(&top);
        }
        // below[S]: some subset of S (possibly S itself) is an excluded support.
        let mut below = excluded.clone();
        for j in 0..n {
            for s in 0..=full {
                if s >> j & 1 == 1 && below[(s & !(1 << j)) as usize] {
                    below[s as usize] = true;
                }
            }
        }

        let mut out = Vec::new();
        for s in 0..=full {
            if !excluded[s as usize] {
                continue;
            }
            if mask_elements(s).any(|j| below[(s & !(1 << j)) as usize]) {
                continue;
            }
            // Vectors with support exactly s, u_i = 1.
            let mut lo = vec![0u32; n];
            let mut hi = vec![0u32; n];
            for j in mask_elements(s) {
                lo[j] = 1;
                hi[j] = if j == i { 1 } else { caps[j] };
            }
            for_each_in_range(&lo, &hi, |u| {
                if self.rank.admits(u) {
                    return;
                }
                let mut w = u.to_vec();
                let minimal = mask_elements(s).all(|j| {
                    w[j] -= 1;
                    let ok = self.rank.admits(&w);
                    w[j] += 1;
                    ok
                });
                if minimal {
                    out.push(GroundVector::new(u.to_vec()));
                }
            });
        }
        out.sort();
        Ok(out)
    }

    /// Members whose nonzero components all equal `rho_max`, keeping only
    /// those whose support is not strictly contained in the support of another
    /// such member.
    pub fn saturated_vectors(&self) -> Result<Vec<GroundVector>, PolymatroidError> {
        self.guard()?;
        let n = self.n();
        let top = self.rho_max();
        let full = self.rank.full_mask();
        let mut feasible = vec![false; 1usize << n];
        for s in 0..=full {
            let v = GroundVector::from_support(n, s, top);
            feasible[s as usize] = self.rank.admits(v.components());
        }
        // above[S]: some strict superset of S is feasible.
        let mut above = vec![false; 1usize << n];
        for s in (0..=full).rev() {
            above[s as usize] = mask_elements(full & !s)
                .any(|j| {
                    let t = (s | 1 << j) as usize;
                    feasible[t] || above[t]
                });
        }
        let mut out: Vec<GroundVector> = (0..=full)
            .filter(|&s| feasible[s as usize] && !above[s as usize])
            .map(|s| GroundVector::from_support(n, s, top))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Depth-first enumeration over the singleton box with pruning: when fixing
/// coordinate `d` to `x`, every subset `A` of the earlier coordinates must
/// keep `|u(A)| + x <= rho(A + d)`. Feasibility is monotone in `x`, so the
/// first failure ends the branch.
fn enumerate_members(rank: &RankTable) -> Vec<GroundVector> {
    let n = rank.n();
    let caps: Vec<u32> = (0..n).map(|i| rank.singleton(i)).collect();
    let mut out = Vec::new();
    let mut sums: Vec<Vec<u32>> = (0..=n).map(|d| vec![0; 1 << d]).collect();
    let mut current = vec![0u32; n];

    fn go(
        depth: usize,
        rank: &RankTable,
        caps: &[u32],
        sums: &mut [Vec<u32>],
        current: &mut [u32],
        out: &mut Vec<GroundVector>,
    ) {
        let n = caps.len();
        if depth == n {
            out.push(GroundVector::new(current.to_vec()));
            return;
        }
        let half = 1usize << depth;
        for x in 0..=caps[depth] {
            let (lower, upper) = sums.split_at_mut(depth + 1);
            let prev = &lower[depth];
            let next = &mut upper[0];
            let bit = 1u32 << depth;
            let fits = (0..half).all(|a| prev[a] + x <= rank.rank(a as u32 | bit));
            if !fits {
                break;
            }
            next[..half].copy_from_slice(prev);
            for a in 0..half {
                next[half + a] = prev[a] + x;
            }
            current[depth] = x;
            go(depth + 1, rank, caps, sums, current, out);
        }
        current[depth] = 0;
    }

    go(0, rank, &caps, &mut sums, &mut current, &mut out);
    out
}

/// Visits every vector `v` with `0 <= v <= caps` in lexicographic order.
pub(crate) fn for_each_in_box(caps: &[u32], f: impl FnMut(&[u32])) {
    let lo = vec![0; caps.len()];
    for_each_in_range(&lo, caps, f);
}

fn for_each_in_range(lo: &[u32], hi: &[u32], mut f: impl FnMut(&[u32])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut v = lo.to_vec();
    loop {
        f(&v);
        let mut d = v.len();
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            if v[d] < hi[d] {
                v[d] += 1;
                break;
            }
            v[d] = lo[d];
        }
    }
}
