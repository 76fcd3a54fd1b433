//! Two-qubit quantum correlations: entropic and geometric discord, the
//! correlation-matrix rank witness, local Kraus channels and the fidelity of
//! remote state preparation of equatorial qubit states.

pub mod batch;
pub mod bloch;
pub mod channels;
pub mod correlations;
pub mod discord;
pub mod eigen;
pub mod error;
pub mod family;
pub mod io;
pub mod linalg;
pub mod named;
pub mod random;
pub mod report;
pub mod reproduce;
pub mod rsp;
pub mod sphere;
pub mod state;

pub use bloch::{bloch_decompose, bloch_reconstruct, BlochForm};
pub use channels::{apply_local, builtin, Builtin, KrausChannel, LocalProductMap};
pub use correlations::{
    classify, correlation_matrix, correlation_rank, operator_schmidt, tensor_rank, CorrelationMatrix,
    QuantumnessVerdict, VerdictKind,
};
pub use discord::{discord, discord_oracle, geometric_discord, DiscordResult, MeasurementDirection};
pub use error::{Error, Result};
pub use family::SigmaFamilySpec;
pub use linalg::{ComplexMatrix, RealMatrix, C64};
pub use named::{named_state, reference_state, NamedState};
pub use report::{analyze, AnalysisOptions, AnalysisReport, ChannelDelta};
pub use rsp::{rsp_efficiency, rsp_fidelity, RspResult};
pub use sphere::OptimizerSettings;
pub use state::{partial_trace, validate_density, von_neumann_entropy, DensityMatrix, Subsystem, Tolerances};
