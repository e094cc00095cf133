//! Entanglement transport through modified XX spin-1/2 chains.
//!
//! A Bell pair prepared on the sender's two qubits spreads through the
//! chain in the single-excitation sector, where the dynamics reduce to an
//! `S x S` real symmetric generator. The crate builds that generator for
//! the pendant-qubit ("proposed") chain and the linear ("standard") chain,
//! samples static, dynamic, and fluctuating disorder in the couplings,
//! local fields, and ZZ interactions, propagates exactly through
//! piecewise-constant Hamiltonians, and scores the receiver pair by its
//! entanglement of formation.
//!
//! Units: `J = hbar = 1`; times are `J t / hbar`.
//!
//! ```
//! use xxchain::prelude::*;
//!
//! let chain = ChainSpec::proposed(100, 2.86);
//! let eof = run_realization(&chain, &DisorderSpec::clean(9.54), 0).unwrap();
//! assert!((eof - 0.816).abs() < 0.005);
//! ```

pub mod chain;
pub mod disorder;
pub mod ensemble;
pub mod entanglement;
pub mod error;
pub mod io;
pub mod oracle;
pub mod propagator;
pub mod scan;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::chain::{
        build_bonds, build_generator, initial_amplitudes, Bond, BondSet, ChainSpec,
        GeneratorMatrix, NoiseState, Topology,
    };
    pub use crate::disorder::{
        derive_seed, sample, sample_dynamic, sample_fluctuating, sample_static, Channels,
        DisorderKind, DisorderSpec, RealizationSchedule, SeedPolicy, Segment,
    };
    pub use crate::ensemble::{
        run_realization, run_sweep, run_sweep_with_workers, PointStats, SweepConfig, SweepResult,
    };
    pub use crate::entanglement::{concurrence, eof, pair_eof, reduced_pair_density, PairState};
    pub use crate::error::{Error, Result};
    pub use crate::propagator::{evolve, evolve_trace, expm_step, AmplitudeVector, SpectralCache};
    pub use crate::scan::{clean_trace, scan_jm, scan_time, JmScan, ScanPoint};
}
