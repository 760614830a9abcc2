pub mod channel;
pub mod decoder;
pub mod dense;
pub mod error;
pub mod field;
pub mod laurent;
pub mod matrix;
pub mod oracle;
pub mod pauli;
pub mod poly;
pub mod rational;
pub mod sim;
pub mod stabilizer;
pub mod system;
pub mod trellis;

pub use channel::ChannelParams;
pub use decoder::{DecodeOptions, DecodeResult, QuantumDecodeResult, QuantumDecoder, Representation, SyndromeDecoder};
pub use error::{AlgebraError, DecodeError, ParseError, SimError, StabilizerError, SystemError};
pub use field::{Field, Gf2, Gf4};
pub use laurent::LaurentPoly;
pub use matrix::{Limits, RatMatrix, Substitution};
pub use oracle::{CosetLeader, CosetOracle};
pub use pauli::{ErrorFrame, Pauli};
pub use poly::Poly;
pub use rational::RatFn;
pub use sim::{MetricMode, SimConfig, SweepResult, SweepRow};
pub use stabilizer::{QuaternaryForm, StabilizerSpec, SymplecticCheck};
pub use system::{CodeBundle, Realization, Role, StreamState, TransferSystem};
pub use trellis::{CostTable, Metric, PauliCosts, Section, Symbol, Termination, Trellis};

pub type Poly2 = Poly<Gf2>;
pub type Poly4 = Poly<Gf4>;
pub type Laurent2 = LaurentPoly<Gf2>;
pub type RatFn2 = RatFn<Gf2>;
pub type RatFn4 = RatFn<Gf4>;
pub type RatMatrix2 = RatMatrix<Gf2>;
pub type RatMatrix4 = RatMatrix<Gf4>;
