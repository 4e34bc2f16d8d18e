//! Subspace arrangements over a prime field and the polymatroids they induce.
//!
//! Element `i` of the ground set is the column span of `matrices[i]`.
//! A zero-dimensional subspace is a matrix with no columns.

use thiserror::Error;

use crate::ff_linalg::{invert, EchelonBasis, FieldSpec, FqMatrix, LinalgError};
use crate::polymatroid::{PolymatroidError, RankTable, MAX_GROUND};

/// Ground-set size limit for [`search_representation`].
pub const SEARCH_MAX_GROUND: usize = 6;
/// Ambient dimension limit for [`search_representation`].
pub const SEARCH_MAX_ROWS: usize = 6;
/// Field size limit for [`search_representation`].
pub const SEARCH_MAX_FIELD: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("matrix {index} has {found} rows, expected {expected}")]
    RowMismatch { index: usize, expected: usize, found: usize },
    #[error("expected {expected} matrices, got {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("need at least {needed} matrices, got {found}")]
    TooFewMatrices { needed: usize, found: usize },
    #[error("input block is {rows}x{cols}, expected a square {expected}x{expected} matrix")]
    NotSquare { rows: usize, cols: usize, expected: usize },
    #[error("input block is singular")]
    Singular,
    #[error("ground set of size {n} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge { n: usize },
    #[error(
        "search limits exceeded (n={n}, rows={rows}, q={q}; limits n<={SEARCH_MAX_GROUND}, \
         rows<={SEARCH_MAX_ROWS}, q<={SEARCH_MAX_FIELD})"
    )]
    SearchLimits { n: usize, rows: usize, q: u32 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Polymatroid(#[from] PolymatroidError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    field: FieldSpec,
    rows: usize,
    matrices: Vec<FqMatrix>,
}

impl Representation {
    pub fn new(field: FieldSpec, rows: usize, matrices: Vec<FqMatrix>) -> Result<Self, RepresentationError> {
        for (index, m) in matrices.iter().enumerate() {
            if m.rows() != rows {
                return Err(RepresentationError::RowMismatch { index, expected: rows, found: m.rows() });
            }
            m.check_reduced(field)?;
        }
        Ok(Self { field, rows, matrices })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[FqMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &FqMatrix {
        &self.matrices[i]
    }

    /// `rho(X) = dim(sum_{i in X} V_i)` for every subset.
    pub fn rank_table(&self) -> Result<RankTable, RepresentationError> {
        let n = self.n();
        if n > MAX_GROUND {
            return Err(RepresentationError::GroundTooLarge { n });
        }
        let mut values = vec![0u32; 1 << n];
        let mut stack = vec![EchelonBasis::new(self.rows, self.field)];
        // Depth-first over subsets in "add a larger element" order.
        fn go(
            start: usize,
            mask: usize,
            mats: &[FqMatrix],
            stack: &mut Vec<EchelonBasis>,
            values: &mut [u32],
        ) {
            let top = stack.last().expect("non-empty").clone();
            values[mask] = top.rank() as u32;
            for j in start..mats.len() {
                let mut next = top.clone();
                next.insert_columns(&mats[j]);
                stack.push(next);
                go(j + 1, mask | 1 << j, mats, stack, values);
                stack.pop();
            }
        }
        go(0, 0, &self.matrices, &mut stack, &mut values);
        Ok(RankTable::new(values)?)
    }

    /// Whether the induced rank table equals `t`.
    pub fn verify(&self, t: &RankTable) -> Result<bool, RepresentationError> {
        if self.n() != t.n() {
            return Err(RepresentationError::CountMismatch { expected: t.n(), found: self.n() });
        }
        Ok(&self.rank_table()? == t)
    }

    /// Changes basis so that `[A_1 ... A_m]` becomes the `km x km` identity:
    /// every matrix is replaced by `B^{-1} A_i`.
    pub fn normalize_input_basis(&self, m: usize, k: usize) -> Result<Self, RepresentationError> {
        if self.n() < m {
            return Err(RepresentationError::TooFewMatrices { needed: m, found: self.n() });
        }
        let blocks: Vec<&FqMatrix> = self.matrices[..m].iter().collect();
        let b = FqMatrix::hcat(self.rows, &blocks)?;
        let expected = k * m;
        if b.rows() != expected || b.cols() != expected {
            return Err(RepresentationError::NotSquare { rows: b.rows(), cols: b.cols(), expected });
        }
        let inv = invert(&b, self.field)?.ok_or(RepresentationError::Singular)?;
        let matrices = self
            .matrices
            .iter()
            .map(|a| inv.mul(a, self.field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { field: self.field, rows: self.rows, matrices })
    }
}

/// `rank_table_from_matrices` as a free function.
pub fn rank_table_from_matrices(rep: &Representation) -> Result<RankTable, RepresentationError> {
    rep.rank_table()
}

/// All `dim`-dimensional subspaces of `F_q^rows`, each as a `rows x dim`
/// matrix whose transpose is in reduced row echelon form. Ordered by pivot
/// set, then by free entries.
pub fn subspaces(field: FieldSpec, rows: usize, dim: usize) -> Vec<FqMatrix> {
    let mut out = Vec::new();
    if dim > rows {
        return out;
    }
    let q = field.p();
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        // free positions: (basis vector a, coordinate c) with c > pivot[a], c not a pivot
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|a| {
                let pivots = &pivots;
                (pivots[a] + 1..rows).filter(move |c| !pivots.contains(c)).map(move |c| (a, c))
            })
            .collect();
        let mut values = vec![0u32; free.len()];
        loop {
            let mut m = FqMatrix::zeros(rows, dim);
            for (a, &p) in pivots.iter().enumerate() {
                m.set(p, a, 1);
            }
            for (&(a, c), &v) in free.iter().zip(&values) {
                m.set(c, a, v);
            }
            out.push(m);
            // odometer, last position fastest
            let mut d = values.len();
            let mut done = true;
            while d > 0 {
                d -= 1;
                if values[d] + 1 < q {
                    values[d] += 1;
                    done = false;
                    break;
                }
                values[d] = 0;
            }
            if done {
                break;
            }
        }
        // next pivot combination in lexicographic order
        let mut a = dim;
        let mut advanced = false;
        while a > 0 {
            a -= 1;
            if pivots[a] < rows - dim + a {
                pivots[a] += 1;
                for b in a + 1..dim {
                    pivots[b] = pivots[b - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// Exhaustive search for subspaces `V_i` of `F_q^rows` realising `t`.
///
/// Elements are assigned in order; after each assignment every subset of the
/// assigned prefix containing the new element is checked. The first
/// representation in canonical enumeration order is returned.
pub fn search_representation(
    t: &RankTable,
    field: FieldSpec,
    rows: usize,
) -> Result<Option<Representation>, RepresentationError> {
    let n = t.n();
    if n > SEARCH_MAX_GROUND || rows > SEARCH_MAX_ROWS || field.p() > SEARCH_MAX_FIELD {
        return Err(RepresentationError::SearchLimits { n, rows, q: field.p() });
    }
    if t.rank(t.full_mask()) as usize > rows || t.rank(0) != 0 {
        return Ok(None);
    }
    let mut by_dim: Vec<Vec<FqMatrix>> = Vec::new();
    for i in 0..n {
        let d = t.singleton(i) as usize;
        while by_dim.len() <= d {
            let dim = by_dim.len();
            by_dim.push(subspaces(field, rows, dim));
        }
    }
    let mut bases = vec![EchelonBasis::new(rows, field)];
    let mut chosen: Vec<FqMatrix> = Vec::new();

    fn go(
        j: usize,
        t: &RankTable,
        by_dim: &[Vec<FqMatrix>],
        bases: &mut Vec<EchelonBasis>,
        chosen: &mut Vec<FqMatrix>,
    ) -> bool {
        if j == t.n() {
            return true;
        }
        let half = 1usize << j;
        for cand in &by_dim[t.singleton(j) as usize] {
            let mut ok = true;
            let mut fresh = Vec::with_capacity(half);
            for mask in 0..half {
                let mut b = bases[mask].clone();
                b.insert_columns(cand);
                if b.rank() as u32 != t.rank((mask | half) as u32) {
                    ok = false;
                    break;
                }
                fresh.push(b);
            }
            if !ok {
                continue;
            }
            bases.extend(fresh);
            chosen.push(cand.clone());
            if go(j + 1, t, by_dim, bases, chosen) {
                return true;
            }
            chosen.pop();
            bases.truncate(half);
        }
        false
    }

    if go(0, t, &by_dim, &mut bases, &mut chosen) {
        Ok(Some(Representation::new(field, rows, chosen)?))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ff_linalg::mat_rank;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn f2_matrices_represent_doubled_u24() {
        let rep = fixtures::u24_doubled_f2_representation();
        assert!(rep.verify(&fixtures::u24_doubled_rank()).unwrap());
        assert_eq!(rep.rank_table().unwrap(), fixtures::u24_doubled_rank());
    }

    #[test]
    fn zeroed_column_breaks_representation() {
        let rep = fixtures::u24_doubled_f2_representation();
        let mut mats = rep.matrices().to_vec();
        for r in 0..4 {
            mats[3].set(r, 1, 0);
        }
        let broken = Representation::new(f(2), 4, mats).unwrap();
        assert_eq!(broken.rank_table().unwrap().singleton(3), 1);
        assert!(!broken.verify(&fixtures::u24_doubled_rank()).unwrap());
    }

    #[test]
    fn m_network_representations() {
        let rep = fixtures::m_network_solution1_representation();
        let t = rep.rank_table().unwrap();
        assert!(rep.verify(&t).unwrap());
        assert!(t.check_rank_axioms().is_ok());

        let rep2 = fixtures::m_network_solution2_representation();
        let t2 = rep2.rank_table().unwrap();
        assert_eq!(t2.n(), 20);
        for i in 0..20 {
            assert_eq!(t2.singleton(i), if i < 12 { 2 } else { 1 });
        }
    }

    #[test]
    fn single_matrix_table() {
        let m = FqMatrix::identity(2);
        let rep = Representation::new(f(5), 2, vec![m]).unwrap();
        assert_eq!(rep.rank_table().unwrap().values(), &[0, 2]);
    }

    #[test]
    fn count_and_row_mismatches() {
        let rep = fixtures::u24_doubled_f2_representation();
        assert!(matches!(
            rep.verify(&fixtures::two_element_rank()),
            Err(RepresentationError::CountMismatch { .. })
        ));
        assert!(matches!(
            Representation::new(f(2), 3, vec![FqMatrix::identity(2)]),
            Err(RepresentationError::RowMismatch { .. })
        ));
    }

    #[test]
    fn normalization_examples() {
        let rep = fixtures::u24_doubled_f2_representation();
        assert_eq!(rep.normalize_input_basis(2, 2).unwrap(), rep);

        // scramble with an invertible matrix, then normalize
        let p = FqMatrix::from_rows(f(2), &[
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(mat_rank(&p, f(2)), 4);
        let scrambled: Vec<FqMatrix> = rep.matrices().iter().map(|a| p.mul(a, f(2)).unwrap()).collect();
        let scrambled = Representation::new(f(2), 4, scrambled).unwrap();
        let norm = scrambled.normalize_input_basis(2, 2).unwrap();
        let block = FqMatrix::hcat(4, &[norm.matrix(0), norm.matrix(1)]).unwrap();
        assert_eq!(block, FqMatrix::identity(4));
        assert_eq!(norm.rank_table().unwrap(), scrambled.rank_table().unwrap());
        assert_eq!(norm.normalize_input_basis(2, 2).unwrap(), norm);

        let one = Representation::new(f(3), 1, vec![FqMatrix::identity(1)]).unwrap();
        assert_eq!(one.normalize_input_basis(1, 1).unwrap(), one);

        let singular = Representation::new(
            f(2),
            2,
            vec![FqMatrix::from_rows(f(2), &[vec![1], vec![1]]).unwrap(); 2],
        )
        .unwrap();
        assert_eq!(singular.normalize_input_basis(2, 1), Err(RepresentationError::Singular));
        assert!(matches!(
            rep.normalize_input_basis(1, 2),
            Err(RepresentationError::NotSquare { .. })
        ));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        // [4 choose 2]_2 = 35, [3 choose 1]_3 = 13, [2 choose 1]_3 = 4
        assert_eq!(subspaces(f(2), 4, 2).len(), 35);
        assert_eq!(subspaces(f(3), 3, 1).len(), 13);
        assert_eq!(subspaces(f(3), 2, 1).len(), 4);
        assert_eq!(subspaces(f(2), 3, 0).len(), 1);
        for m in subspaces(f(3), 4, 2) {
            assert_eq!(mat_rank(&m, f(3)), 2);
        }
    }

    #[test]
    fn search_examples() {
        let u24 = fixtures::u24_rank();
        assert!(search_representation(&u24, f(2), 2).unwrap().is_none());
        let found = search_representation(&u24, f(3), 2).unwrap().unwrap();
        assert!(found.verify(&u24).unwrap());
        let ex3 = fixtures::u24_doubled_rank();
        let found = search_representation(&ex3, f(2), 4).unwrap().unwrap();
        assert!(found.verify(&ex3).unwrap());
        assert!(matches!(
            search_representation(&u24, f(5), 2),
            Err(RepresentationError::SearchLimits { .. })
        ));
    }
}
