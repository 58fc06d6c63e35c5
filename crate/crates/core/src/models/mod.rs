//! Model builders: engineered XY chains, the chain swap gate, the two-stage
//! qubit schedule, rotation gates, the three-level loop system, and the
//! two-arm bosonic ring.

pub mod chain;
pub mod lambda;
pub mod qubit;
pub mod ring;

pub use chain::{
    build_chain_swap_gate, build_xy_chain, measure_transfer_signature, ChainSpec, TransferSignature,
};
pub use lambda::{
    build_lambda_schedule, dark_state, lambda_gate, lambda_hamiltonian, rabi_couplings,
    LambdaLoopSpec, LoopLeg,
};
pub use qubit::{build_qubit_schedule, build_rotation_gate, Axis, QubitScheduleSpec};
pub use ring::{build_ring_hamiltonian, RingHamiltonian, RingModel, RingSpec};
