//! Three-qubit entanglement through twistor geometry: the A-slices of a
//! pure state become a pair of 4-vectors `(Z, W)`, their Plücker bivector
//! lives on the Klein quadric, and the usual tangles, Kempe's invariant
//! and the SLOCC class are read off from it.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix `f64`, which is what the sweeps and the CLI use.

pub mod anchors;
pub mod canonical;
pub mod classify;
pub mod ensemble;
pub mod error;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod plucker;
pub mod scalar;
pub mod state;
pub mod sweep;
pub mod twistor;

pub use canonical::{acin_canonical, CanonicalForm};
pub use classify::{classify, SloccClass, SloccLabel};
pub use ensemble::{random_local, sample_state, EnsembleKind, EnsembleSpec};
pub use error::{Error, Result};
pub use invariants::{full_report, InvariantReport};
pub use plucker::Bivector;
pub use scalar::{Cx, Real};
pub use state::{DensityMatrix, LocalOperator, OperatorKind, PureState, Subsystem};
pub use sweep::{run_sweep, Check, SweepOptions, SweepResult};
pub use twistor::TwistorPair;

pub type Complex64 = Cx<f64>;
pub type PureState64 = PureState<f64>;
pub type PureState32 = PureState<f32>;
pub type TwistorPair64 = TwistorPair<f64>;
pub type Bivector64 = Bivector<f64>;
pub type InvariantReport64 = InvariantReport<f64>;
pub type CanonicalForm64 = CanonicalForm<f64>;
pub type LocalOperator64 = LocalOperator<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
