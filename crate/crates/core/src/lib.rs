//! Weak values, complex weak conditional probabilities, and the logical
//! tension of quantum state triples.
//!
//! The crate computes the complex conditional statistics of pre/post-selected
//! systems: weak values and their spectral decomposition into quasi-probability
//! weights p(m|if), the response of transition probabilities to unitaries
//! generated by the measured observable, the diagonal unitary that maximizes
//! the initial→final overlap, the Pancharatnam phase of state triples with its
//! Bloch-sphere area reading, a free-particle continuous-variable scenario,
//! and a Monte Carlo simulator of the weak measurement protocol itself.

pub mod error;
pub mod free_particle;
pub mod hilbert;
pub mod montecarlo;
pub mod policy;
pub mod tension;
pub mod weak;

pub use error::{Error, Result};
pub use hilbert::{
    evolve, inner_product, principal_arg, transition_probability, validate_observable, wrap_phase,
    DensityOperator, Initial, Operator, SpectralObservable, StateVector, UnitaryParameter,
};
pub use policy::{NumericPolicy, POLICY};
