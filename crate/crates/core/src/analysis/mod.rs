//! Norm estimation and the constructions checked by the experiments.

pub mod character;
pub mod commutator;
pub mod kernel;
pub mod norm;
pub mod schedule;
pub mod separation;
pub mod sweep;
pub mod witness;

pub use character::{
    classify, power_pair_test, CharacterVerdict, Classification, Coordinate, PairPoint, PairWidths,
};
pub use commutator::{commutator, decay_point, semi_commutator, DefectKind, DecayPoint};
pub use kernel::{hs_kernel, HsKernel};
pub use norm::{operator_norm, singular_values, NormEstimate, NormMethod};
pub use schedule::{level_model, parse_schedule, schedule_models};
pub use separation::{separate_compacts, Interval};
pub use sweep::{symbol_norm_sweep, SweepRow};
pub use witness::{modulation_witness, reproduce_lower_bound, translation_witness, LowerBoundWitness, WitnessSetup};
