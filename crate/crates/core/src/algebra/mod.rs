//! The symmetry algebra of the periodic chain: ladder operators `Σ±`, the
//! recursive tower of triples, Chevalley generators with their Cartan matrix,
//! and the central element `p`.

pub mod central;
pub mod ladder;
pub mod reference;
pub mod roots;
pub mod tower;

use thiserror::Error;

use crate::chain::ChainError;
use crate::linalg::LinalgError;

pub use central::{central_element, CentralDecomposition};
pub use ladder::{ladder_action, sigma_residue, sigma_sum, LadderConstants, LadderPair};
pub use roots::{
    canonical_cn, cartan_matrix, extract_roots, is_canonical_cn, verify_serre, ChevalleyBasis, Root, SerreCheck,
};
pub use tower::{build_tower, Triple, TripleTower};

/// Direction of a ladder operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn step(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("Σ{sign} applied to v({sz}) is not a multiple of v({target})")]
    NotProportional { sign: Sign, sz: i64, target: i64 },
    #[error("Σ{sign} maps v({sz}) to zero")]
    ZeroLadderConstant { sign: Sign, sz: i64 },
    #[error("Σ{sign} does not annihilate v({sz})")]
    EdgeNotAnnihilated { sign: Sign, sz: i64 },
    #[error("missing ground state for S^z = {0}")]
    MissingState(i64),
    #[error("tower z-operators {i} and {j} do not commute")]
    NotAbelian { i: usize, j: usize },
    #[error("tower z-operators span dimension {rank}, expected {expected}")]
    RankMismatch { rank: usize, expected: usize },
    #[error("level {level} z-operator is not in the span of the first {n}")]
    ExtraLevelOutsideSpan { level: usize, n: usize },
    #[error("ad of z-operator {k} does not preserve the span of the raising operators (image of level {j})")]
    ClosureFailure { k: usize, j: usize },
    #[error("ad of z-operator {k} is not diagonalizable over the rationals")]
    NotDiagonalizable { k: usize },
    #[error("joint eigenspace of dimension {dim} survives refinement")]
    DegenerateRoot { dim: usize },
    #[error("root {root} has zero leading coefficient")]
    ZeroLeadingCoefficient { root: usize },
    #[error("[e'{i}, f'{j}] is nonzero")]
    CrossCommutator { i: usize, j: usize },
    #[error("[h'{i}, e'{j}] is not a multiple of e'{j}")]
    NonScalarAction { i: usize, j: usize },
    #[error("root {root} has non-positive scale {lambda}")]
    NonPositiveScale { root: usize, lambda: String },
    #[error("Cartan entry ({i}, {j}) = {value} is not an integer")]
    NonIntegerCartan { i: usize, j: usize, value: String },
    #[error("Cartan matrix {cartan:?} has no ordering in canonical C_n form")]
    NotTypeC { cartan: Vec<Vec<i64>> },
    #[error("no tower combination makes S^z central")]
    NoCentralElement,
    #[error("central element is not unique")]
    CentralElementNotUnique,
    #[error("S^z - p is not in the span of the Cartan generators")]
    DecompositionFailed,
    #[error("S^z - p has a non-unique expansion in the Cartan generators")]
    DecompositionNotUnique,
    #[error("p does not commute with {0}")]
    NotCentral(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
