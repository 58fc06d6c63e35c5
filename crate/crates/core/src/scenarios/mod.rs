//! Executable reproductions of the worked examples: chain cycles and
//! transfers, the two-stage qubit gate, the superposition phase surface,
//! the slow three-level loop, and the two-arm ring interference.

pub mod dark;
pub mod pst;
pub mod qubit;
pub mod ring;
pub mod surface;

pub use dark::{scenario_dark_state_loop, DarkStateReport};
pub use pst::{scenario_pst_cycle, scenario_pst_transfer};
pub use qubit::scenario_qubit_gate;
pub use ring::{scenario_boson_ring, IntensityReport};
pub use surface::{
    scenario_superposition_surface, scenario_superposition_surface_with, surface_csv,
    SurfaceResult, SurfaceRow,
};

/// Default step count per schedule segment (and per sweep leg) for scenario
/// quadratures and trajectories.
pub const DEFAULT_SAMPLES: usize = 2000;
