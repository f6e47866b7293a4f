//! Discretized Hardy spaces on the circle and the real line, with
//! finite-section Toeplitz operators, Fourier multipliers and the numerical
//! experiments built on them.

pub mod analysis;
pub mod dump;
pub mod error;
pub mod group;
pub mod operators;
pub mod scalar;
pub mod symbol;
mod text;

pub use error::{Error, Result};
pub use group::{forward_fourier, inverse_fourier, DualGridFunction, GridFunction, GroupModel};
pub use operators::{Basis, FiniteSectionOperator};
pub use scalar::Real;
pub use symbol::{Side, SymbolSpec};

pub type GroupModel64 = GroupModel<f64>;
pub type GridFunction64 = GridFunction<f64>;
pub type DualGridFunction64 = DualGridFunction<f64>;
pub type SymbolSpec64 = SymbolSpec<f64>;
pub type FiniteSectionOperator64 = FiniteSectionOperator<f64>;

pub type GroupModel32 = GroupModel<f32>;
pub type GridFunction32 = GridFunction<f32>;
pub type DualGridFunction32 = DualGridFunction<f32>;
pub type SymbolSpec32 = SymbolSpec<f32>;
pub type FiniteSectionOperator32 = FiniteSectionOperator<f32>;
