//! Initial-and-final-state opacity verification for finite automata
//! under partial observation.
//!
//! An attacker sees only the observable events of a system modeled as a
//! nondeterministic finite automaton. The secret is whether a run led
//! from a given source state to a given target state. The system is
//! opaque when every observation of a secret run is also the observation
//! of some nonsecret run, so the attacker can never be sure.
//!
//! Three interchangeable decision procedures are provided:
//!
//! * [`verifier::Algo::Trellis`] enumerates the semigroup of relations
//!   induced by observation words and checks each relation against the
//!   pair sets;
//! * [`verifier::Algo::Observer`] reduces to language inclusion decided
//!   against the full determinization of the nonsecret side;
//! * [`verifier::Algo::Antichain`] decides the same inclusion while
//!   keeping only subset-minimal macrostates per search state.
//!
//! All types are immutable after construction and all operations are
//! pure functions, so distinct verifications can run in parallel freely.

pub mod alphabet;
pub mod bitset;
pub mod error;
pub mod families;
pub mod inclusion;
pub mod limits;
pub mod matrix;
pub mod nfa;
pub mod observer;
pub mod rng;
pub mod semigroup;
pub mod trellis;
pub mod verifier;

pub use alphabet::Alphabet;
pub use bitset::StateSet;
pub use error::CoreError;
pub use limits::Limits;
pub use nfa::{disjoint_union, MarkedNfa, Nfa};
pub use verifier::{
    verify, verify_bruteforce, verify_with, Algo, IfoInstance, StopReason, Verdict, VerdictKind,
    VerifyOptions, VerifyStats,
};
