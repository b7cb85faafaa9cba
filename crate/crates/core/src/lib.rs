//! Computation of the unramified algebraic Brauer group of homogeneous
//! spaces `V = G\G'` (with `G'` semisimple simply connected) from finite
//! Galois-cohomological data.
//!
//! The input to the headline calculators is entirely finite: a finite group
//! `H` with an action of a finite Galois quotient, a character module with a
//! cyclotomic twist, and an evaluation pairing. Membership of a class
//! `[a] ∈ H^1(Γ, M)` in the unramified subgroup is decided by the norm-map
//! conditions `ev(a(σ), N(σ, b)) = 0`, either at a single Frobenius
//! (finite-field mode) or over every `σ` (characteristic-zero mode).
//!
//! All arithmetic is exact: big integers for lattice work, values in
//! `(1/h)Z/Z` for pairings. There is no floating point anywhere.

pub mod abmod;
pub mod brnral;
pub mod cohom;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod norms;
pub mod oracle;
pub mod torf;

pub use abmod::{EvalPairing, FGAbelianModule, GaloisContext, ModuleMap};
pub use brnral::{BrnralInstance, BrnralResult};
pub use cohom::{Cocycle1Ab, Cocycle1NonAb, Cocycle2, H1Abelian};
pub use groups::{FiniteGroup, GroupAction, GroupMorphism, GroupToModuleMap};
pub use norms::NormContext;
pub use torf::{TorfExtensionData, TorusLattice};

use thiserror::Error;

/// Errors surfaced by constructors and calculators. Every variant names the
/// violated invariant, with a witness where one exists.
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is not associative: ({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NotAssociative(usize, usize, usize),
    #[error("identity {0} does not act as identity on element {1}")]
    BadIdentity(usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("element index {0} out of range for group of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("map does not respect multiplication at pair ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("map for actor element {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism at actor pair ({0}, {1})")]
    ActionNotHomomorphism(usize, usize),
    #[error("matrix for actor element {0} does not define an endomorphism of the module")]
    BadEndomorphism(usize),
    #[error("matrix for actor element {0} is not invertible on the module")]
    NotInvertible(usize),
    #[error("dimension mismatch: expected {expected}, got {got} ({what})")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("2-cocycle identity fails at triple ({0}, {1}, {2})")]
    NotCocycle2(usize, usize, usize),
    #[error("1-cocycle identity fails at pair ({0}, {1})")]
    NotCocycle1(usize, usize),
    #[error("qchar is not a homomorphism into (Z/h)^* (offending pair ({0}, {1}))")]
    BadQchar(usize, usize),
    #[error("qchar value {0} is not a unit mod h = {1}")]
    QcharNotUnit(u64, u64),
    #[error("finite-field mode requires gamma cyclic generated by the frobenius")]
    NotCyclicFrobenius,
    #[error("module exponent {0} does not divide h = {1}")]
    ExponentDoesNotDivideH(u64, u64),
    #[error("pairing is not Galois-equivariant at (sigma={0}, left gen {1}, right gen {2})")]
    PairingNotEquivariant(usize, usize, usize),
    #[error("pairing value at generator pair ({0}, {1}) is inconsistent with torsion")]
    PairingInconsistent(usize, usize),
    #[error("qchar value {0} is not coprime to the element order {1}")]
    QcharNotCoprime(u64, u64),
    #[error("module is infinite where a finite one is required")]
    InfiniteModule,
    #[error("galois context mismatch between arguments")]
    ContextMismatch,
    #[error("the composite H_0 -> F is not surjective")]
    NotSurjectiveOntoF,
    #[error("subgroup H_0 is not closed under multiplication")]
    NotASubgroup,
    #[error("restriction of the extension cocycle to the Galois factor is not a coboundary")]
    GammaRestrictionNotTrivial,
    #[error(
        "coboundary solve failed at torsion level {level}; retry with a larger --max-level \
         (step: {step})"
    )]
    LevelTooSmall { level: u64, step: &'static str },
    #[error("dual map is incompatible with the evaluation pairing at generator pair ({0}, {1})")]
    DualMapIncompatible(usize, usize),
    #[error("real-place check requires a Galois group of order 2 (got order {0})")]
    NotOrderTwo(usize),
    #[error("real-place check requires qchar(sigma) = -1 mod h (got {0} mod {1})")]
    NotRealCyclotomic(u64, u64),
    #[error("the action on the abelianization does not match the stored module action (sigma={0}, element {1})")]
    AbmapActionMismatch(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
