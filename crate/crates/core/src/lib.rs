//! Stabilizer states as points of the binary principal-minor variety.
//!
//! A stabilizer group on `n` qubits determines a Lagrangian subspace of
//! `F₂^{2n}`, and its `n × n` minors give a point of `P(F₂^{2ⁿ})`. The local
//! Clifford group modulo Paulis, `SL(2, F₂)^{×n} ⋊ Sₙ`, acts on all three
//! descriptions compatibly; this crate computes the maps, the action and the
//! orbit decomposition.

pub mod error;
pub mod f2core;
pub mod graphstates;
pub mod groupaction;
pub mod lagrangian;
pub mod minorvariety;
pub mod orbits;
pub mod pauli;
pub mod statecheck;
pub mod subset;
pub mod tables;

pub use error::{Error, Result};
pub use f2core::{BitMatrix, BitVector, Rref};
pub use groupaction::{generators, GroupElement, Local2};
pub use lagrangian::{
    enumerate_lagrangians, enumerate_lagrangians_bounded, is_isotropic, lagrangian_count, Chart,
    Lagrangian, ENUMERATION_BOUND, MAX_QUBITS,
};
pub use minorvariety::{
    from_symmetric, index_convert, lagrangian_from_point, minor_point, reconstruct_symmetric,
    IndexOrder, MinorPoint, MAX_POINT_QUBITS,
};
pub use pauli::{PauliOp, StabilizerGroup};
pub use subset::{graded_lex, Subset};
pub use graphstates::{
    graph_generators, graph_lagrangian, graph_to_point, local_complementation, loopless, Convention,
    Graph,
};
pub use orbits::{
    orbit_of, partition, variety_size, Census, CensusFile, Classification, OrbitRecord, OrbitReport,
    PARTITION_BOUND,
};
pub use statecheck::{
    apply_pauli, census_stabilizer_states, stabilized_state, StabilizedState, StateVector,
};
