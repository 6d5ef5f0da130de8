//! Nonlocal game toolkit.
//!
//! Finite two- and three-player games, quantum strategies built from a shared
//! pure state and local POVMs, and the classical side of the story: exhaustive
//! deterministic-strategy search, local-support feasibility, and the
//! east/west hemisphere procedure that turns any winning qubit-by-qubit
//! strategy into a classical winning one.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, threading and the
//! command-line front end live in the `nonlocal` crate.
//!
//! ## Modules
//!
//! - [`linalg`]: small dense complex matrices, Jacobi eigensolver, Schmidt form.
//! - [`games`]: games as dense winning tables, promise folding, the GHZ/Mermin game.
//! - [`povm`]: POVM validation, rank-1 refinement, Bloch angles and hemispheres.
//! - [`strategies`]: joint probabilities, normal-form reductions, win verification.
//! - [`extraction`]: vanishing-probability analysis and classical extraction.
//! - [`classical`]: classical value, support tables, Hardy fixtures.
//! - [`sampling`]: seeded generators for random states, POVMs and support games.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classical;
pub mod error;
pub mod extraction;
pub mod games;
pub mod index;
pub mod linalg;
pub mod povm;
pub mod sampling;
pub mod strategies;
pub mod tolerance;

pub use classical::{
    classical_value, classical_value_with_promise, hardy_support, has_classical_winning_strategy,
    local_support_feasible, ClassicalValueReport, DeterministicStrategy, Feasibility, SupportTable,
};
pub use error::{Error, PovmViolation, Result};
pub use extraction::{
    extract_classical, vanishing_characterization, Extraction, VanishingKind, VanishingWitness,
};
pub use games::{fold_promise, ghz_mermin_game, Game, PromiseGame};
pub use linalg::{eig_hermitian, kron, schmidt, ComplexMatrix, SchmidtForm, StateVector, C64};
pub use povm::{
    angles_to_bloch, check_vector_condition, hemisphere_of, pick_east, pick_west,
    projector_to_angles, refine_to_rank1, BlochPoint, Hemisphere, Povm, Rank1Element, Refinement,
};
pub use strategies::{
    closed_form_probability, joint_probability, reduce_dimension, schmidt_normalize,
    verify_winning, PlayerStrategy, QuantumStrategy, SchmidtStrategy2x2, TripartiteStrategy,
    WinReport,
};
pub use tolerance::Tolerances;
