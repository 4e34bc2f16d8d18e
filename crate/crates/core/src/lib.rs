//! Discrete polymatroids, their finite-field representations, and vector linear
//! network codes.
//!
//! The crate is organised bottom-up:
//!
//! - [`ff_linalg`]: exact linear algebra over prime fields.
//! - [`polymatroid`]: rank tables, membership, bases, excluded and circuit vectors.
//! - [`matroid`]: matroids as the unit-rank special case, uniform matroids, circuits.
//! - [`representation`]: subspace arrangements realising a rank table.
//! - [`network`]: acyclic networks with input edges and demands.
//! - [`coding`]: vector linear codes, the polymatroidal network check, and the
//!   two conversions between codes and representable polymatroids.
//! - [`constructor`]: building networks from a polymatroid.
//! - [`io`]: the JSON document formats and DOT export.
//! - [`fixtures`]: every worked object used by the tests and the CLI.

pub mod coding;
pub mod constructor;
pub mod ff_linalg;
pub mod fixtures;
pub mod io;
pub mod matroid;
pub mod network;
pub mod polymatroid;
pub mod representation;

pub use coding::{PolymatroidMapping, VectorLinearCode};
pub use constructor::{ChoiceScript, ConstructionResult};
pub use ff_linalg::{FieldSpec, FqMatrix};
pub use matroid::Matroid;
pub use network::{EdgeId, Network, NodeId};
pub use polymatroid::{DiscretePolymatroid, GroundVector, RankTable};
pub use representation::Representation;

/// Outcome of a structural check: either everything holds or the first
/// violation found, with enough detail to locate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<V> {
    Ok,
    Violation(V),
}

impl<V> Verdict<V> {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn violation(&self) -> Option<&V> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(v) => Some(v),
        }
    }
}

impl<V> From<Result<(), V>> for Verdict<V> {
    fn from(r: Result<(), V>) -> Self {
        match r {
            Ok(()) => Verdict::Ok,
            Err(v) => Verdict::Violation(v),
        }
    }
}

/// Iterates the elements (0-based) of a subset bitmask in increasing order.
pub fn mask_elements(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Bitmask of a set of 0-based elements.
pub fn elements_mask<I: IntoIterator<Item = usize>>(elements: I) -> u32 {
    elements.into_iter().fold(0, |m, i| m | 1 << i)
}
