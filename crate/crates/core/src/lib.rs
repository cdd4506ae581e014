//! Exact-arithmetic classification of rank-three Weyl groupoid root systems.
//!
//! The library enumerates all connected simply connected rank-three Cartan
//! schemes whose real roots form a finite irreducible root system, verifies
//! each candidate by closing it under its simple reflections, and reduces it
//! to a canonical representative. There are exactly 55 such systems, with
//! between 6 and 37 positive roots; [`classify`] reproduces the full list
//! together with its invariants (orbit size, simply connected cover,
//! automorphism group of the quotient, plane histogram).
//!
//! All arithmetic is exact 64-bit integer arithmetic; coefficients in the
//! classification never exceed 13, so overflow signals a logic error.

pub mod classify;
pub mod fragment;
pub mod fseq;
pub mod golden;
pub mod groupoid;
pub mod lattice;
pub mod search;
pub mod words;

pub use classify::{ClassifyConfig, ClassifyOutcome, SystemRecord, classify};
pub use fragment::{Fragment, PlaneRecord};
pub use fseq::{FSeq, PlaneCoord};
pub use groupoid::{CartanMatrix, Orbit, OrbitRecord, OrderKey};
pub use lattice::{PlaneNormal, Root};
pub use search::{AppendVerdict, SearchConfig};

/// Errors from precondition violations and from inputs that fail the root
/// system axioms. Verification failures that are expected outcomes (a
/// reflection producing a mixed-sign root) are reported through
/// [`groupoid::Invalid`] instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero vector")]
    ZeroVector,
    #[error("linearly dependent roots {0} and {1}")]
    DependentRoots(Root, Root),
    #[error("zero plane coordinate")]
    ZeroPlaneCoord,
    #[error("not an F-sequence")]
    NotFSeq,
    #[error("bad root list: {0}")]
    BadRootList(String),
    #[error("root {root} is not base-compatible with its plane")]
    NotBaseCompatible { root: Root },
    #[error("plane {0} is finished")]
    PlaneFinished(usize),
    #[error("inserting {root} at position {pos} does not yield an F-sequence")]
    BadInsertPosition { root: Root, pos: usize },
    #[error("simple root a{0} missing from the positive system")]
    MissingSimple(usize),
    #[error("Cartan axiom (M2) violated: c{i}{j} = 0 but c{j}{i} = {val}")]
    CartanM2 { i: usize, j: usize, val: i64 },
    #[error("root string of a{j} through a{i} is not an interval")]
    RootStringGap { i: usize, j: usize },
    #[error("Cartan entry c{i}{j} = {val} is below -7")]
    CartanBound { i: usize, j: usize, val: i64 },
    #[error("Hom group exceeds order 48")]
    HomTooLarge,
    #[error("orbit exceeds {0} objects")]
    OrbitTooLarge(usize),
    #[error("inconsistent cover: {0}")]
    InconsistentCover(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
