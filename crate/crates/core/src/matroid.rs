//! Matroids as discrete polymatroids with singleton ranks at most one.
//!
//! A matroid is held either by its rank table or by its list of independent
//! sets; both presentations convert into each other.

use std::fmt;

use thiserror::Error;

use crate::ff_linalg::{subspace_sum_dim, FieldSpec, FqMatrix, LinalgError};
use crate::polymatroid::{
    format_subset, AxiomViolation, DiscretePolymatroid, PolymatroidError, RankTable, MAX_ENUMERATION_GROUND,
};
use crate::{mask_elements, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("uniform matroid needs k <= n, got k={k} n={n}")]
    UniformRank { k: usize, n: usize },
    #[error("ground set of size {n} exceeds the supported maximum of {MAX_ENUMERATION_GROUND}")]
    GroundTooLarge { n: usize },
    #[error("expected {expected} matrices, got {found}")]
    MatrixCount { expected: usize, found: usize },
    #[error("subset {mask:#b} is outside the ground set of size {n}")]
    SubsetOutOfRange { mask: u32, n: usize },
    #[error("not a matroid: {0}")]
    Invalid(MatroidViolation),
    #[error(transparent)]
    Polymatroid(#[from] PolymatroidError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidViolation {
    /// The rank table breaks a polymatroid axiom.
    RankAxiom(AxiomViolation),
    /// `r(X) > |X|`.
    RankExceedsSize { set: u32 },
    EmptyNotIndependent,
    /// `set` is independent but its subset `subset` is not.
    NotDownwardClosed { set: u32, subset: u32 },
    /// `|larger| = |smaller| + 1` and no element of `larger` extends `smaller`.
    Augmentation { larger: u32, smaller: u32 },
}

impl fmt::Display for MatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidViolation::RankAxiom(v) => write!(f, "{v}"),
            MatroidViolation::RankExceedsSize { set } => {
                write!(f, "rank of {} exceeds its size", format_subset(*set))
            }
            MatroidViolation::EmptyNotIndependent => write!(f, "empty set is not independent"),
            MatroidViolation::NotDownwardClosed { set, subset } => write!(
                f,
                "{} is independent but {} is not",
                format_subset(*set),
                format_subset(*subset)
            ),
            MatroidViolation::Augmentation { larger, smaller } => write!(
                f,
                "{} cannot be augmented from {}",
                format_subset(*smaller),
                format_subset(*larger)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Rank(RankTable),
    /// Indexed by subset bitmask.
    Independent(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    presentation: Presentation,
}

impl Matroid {
    pub fn from_rank(rank: RankTable) -> Result<Self, MatroidError> {
        let n = rank.n();
        if n > MAX_ENUMERATION_GROUND {
            return Err(MatroidError::GroundTooLarge { n });
        }
        Ok(Self { n, presentation: Presentation::Rank(rank) })
    }

    /// Independent sets given as bitmasks; duplicates are ignored.
    pub fn from_independent_sets(n: usize, sets: &[u32]) -> Result<Self, MatroidError> {
        if n > MAX_ENUMERATION_GROUND {
            return Err(MatroidError::GroundTooLarge { n });
        }
        let mut flags = vec![false; 1 << n];
        for &s in sets {
            if (s as usize) >= flags.len() {
                return Err(MatroidError::SubsetOutOfRange { mask: s, n });
            }
            flags[s as usize] = true;
        }
        Ok(Self { n, presentation: Presentation::Independent(flags) })
    }

    /// `U_{k,n}`: rank `min(|X|, k)`.
    pub fn uniform(k: usize, n: usize) -> Result<Self, MatroidError> {
        if k > n {
            return Err(MatroidError::UniformRank { k, n });
        }
        Self::from_rank(RankTable::from_fn(n, |m| m.count_ones().min(k as u32))?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Checks the axioms of whichever presentation was given.
    pub fn check(&self) -> Verdict<MatroidViolation> {
        match &self.presentation {
            Presentation::Rank(t) => {
                if let Verdict::Violation(v) = t.check_rank_axioms() {
                    return Verdict::Violation(MatroidViolation::RankAxiom(v));
                }
                match (0..=t.full_mask()).find(|&m| t.rank(m) > m.count_ones()) {
                    Some(set) => Verdict::Violation(MatroidViolation::RankExceedsSize { set }),
                    None => Verdict::Ok,
                }
            }
            Presentation::Independent(flags) => check_independent(self.n, flags),
        }
    }

    fn independent_flags(&self) -> Vec<bool> {
        match &self.presentation {
            Presentation::Independent(flags) => flags.clone(),
            Presentation::Rank(t) => (0..=t.full_mask()).map(|m| t.rank(m) == m.count_ones()).collect(),
        }
    }

    /// Independent sets as bitmasks, in increasing bitmask order.
    pub fn independent_sets(&self) -> Vec<u32> {
        self.independent_flags()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(m, _)| m as u32)
            .collect()
    }

    /// `r(X)` as the size of the largest independent subset of `X`.
    pub fn rank_table(&self) -> RankTable {
        match &self.presentation {
            Presentation::Rank(t) => t.clone(),
            Presentation::Independent(flags) => {
                let mut values = vec![0u32; flags.len()];
                for m in 0..flags.len() {
                    values[m] = if flags[m] {
                        (m as u32).count_ones()
                    } else {
                        mask_elements(m as u32).map(|j| values[m & !(1 << j)]).max().unwrap_or(0)
                    };
                }
                RankTable::new(values).expect("power-of-two table")
            }
        }
    }

    /// The same matroid held by the other presentation.
    pub fn with_independent_sets(&self) -> Self {
        Self { n: self.n, presentation: Presentation::Independent(self.independent_flags()) }
    }

    pub fn with_rank_table(&self) -> Self {
        Self { n: self.n, presentation: Presentation::Rank(self.rank_table()) }
    }

    /// Minimal dependent sets, in increasing bitmask order.
    pub fn circuits(&self) -> Vec<u32> {
        let flags = self.independent_flags();
        (0..flags.len() as u32)
            .filter(|&m| !flags[m as usize])
            .filter(|&m| mask_elements(m).all(|j| flags[(m & !(1 << j)) as usize]))
            .collect()
    }

    /// `D(M)`, the polymatroid of incidence vectors of independent sets.
    pub fn to_polymatroid(&self) -> Result<DiscretePolymatroid, MatroidError> {
        if let Verdict::Violation(v) = self.check() {
            return Err(MatroidError::Invalid(v));
        }
        Ok(DiscretePolymatroid::new(self.rank_table())?)
    }

    /// Whether the column spans of `mats` have `dim(sum V_i) = k r(X)` for
    /// every subset `X`.
    pub fn verify_multilinear_representation(
        &self,
        mats: &[FqMatrix],
        k: u32,
        field: FieldSpec,
    ) -> Result<bool, MatroidError> {
        if mats.len() != self.n {
            return Err(MatroidError::MatrixCount { expected: self.n, found: mats.len() });
        }
        let table = self.rank_table();
        for x in 0..=table.full_mask() {
            let chosen: Vec<&FqMatrix> = mask_elements(x).map(|i| &mats[i]).collect();
            let dim = if chosen.is_empty() { 0 } else { subspace_sum_dim(&chosen, field)? };
            if dim as u32 != k * table.rank(x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_independent(n: usize, flags: &[bool]) -> Verdict<MatroidViolation> {
    if !flags[0] {
        return Verdict::Violation(MatroidViolation::EmptyNotIndependent);
    }
    for (m, &ind) in flags.iter().enumerate() {
        if !ind {
            continue;
        }
        for j in mask_elements(m as u32) {
            let sub = m & !(1 << j);
            if !flags[sub] {
                return Verdict::Violation(MatroidViolation::NotDownwardClosed {
                    set: m as u32,
                    subset: sub as u32,
                });
            }
        }
    }
    let _ = n;
    for (u, &ui) in flags.iter().enumerate() {
        if !ui {
            continue;
        }
        for (v, &vi) in flags.iter().enumerate() {
            if !vi || u.count_ones() != v.count_ones() + 1 {
                continue;
            }
            let ok = mask_elements((u & !v) as u32).any(|x| flags[v | 1 << x]);
            if !ok {
                return Verdict::Violation(MatroidViolation::Augmentation {
                    larger: u as u32,
                    smaller: v as u32,
                });
            }
        }
    }
    Verdict::Ok
}
