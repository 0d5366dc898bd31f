//! Linear codes from lattice polygons evaluated on the torus `(F_q^*)^r`.
//!
//! * [`gf`]: table-driven GF(p^m) arithmetic.
//! * [`lattice`]: lattice polygons, Minkowski sums and exponent sets.
//! * [`ffla`]: dense linear algebra over GF(q).
//! * [`code`]: toric codes, Schur products, duals and distances.
//! * [`decode`]: the kernel decoder built on a helper code.
//! * [`ecp`]: error-correcting pair verification.
//! * [`sim`]: seeded channel simulation and CSV reports.

pub mod code;
pub mod decode;
pub mod ecp;
pub mod ffla;
pub mod gf;
pub mod io;
pub mod lattice;
pub mod sim;

pub use code::{CodeDescriptor, CodeError, Codeword, Distance, LinearCode, Provenance, ToricCode};
pub use decode::{
    ConditionReport, DecodeError, DecodeOutcome, DecodeStatus, DecoderPair, ExponentSource, FailureReason,
    KernelElement, PairOptions,
};
pub use ecp::{EcpReport, ToricPair};
pub use ffla::FqMatrix;
pub use gf::{build_field, Fe, FieldDescriptor, FieldSpec};
pub use lattice::{BoxH, ExponentSet, LatticePolytope};
