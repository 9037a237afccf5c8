//! Exact solver for finite normal-form games built around guarantee values:
//! each player's worst payoff when the others switch only to strategies that
//! strictly improve their own payoff. Provides optimin points, pure Nash
//! equilibria, maximin values, a super-Nash checker, 2-player mixed support,
//! generators for the standard example games, and a JSON game format.

pub mod cli;
pub mod deviation;
mod engine;
pub mod error;
pub mod game;
pub mod generators;
pub mod io;
pub mod mixed;
pub mod product;
pub mod rational;
pub mod solvers;

pub use deviation::{
    deviation_product, guarantee, guarantee_table, guarantee_vector, guarantee_with_witness,
    profitable_deviations, DeviationSet, GuaranteeVector,
};
pub use error::{Error, Result};
pub use game::{Game, MixedProfile, PureProfile};
pub use rational::Rational;
pub use solvers::{
    check_super_nash, check_super_nash_with, maximin_pure, optimin_pure, optimin_pure_with,
    pure_nash, Maximin, OptiminMode, SolveReport,
};
