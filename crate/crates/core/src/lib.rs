//! Exact construction and verification of the rational parametrizations of
//! the irreducible components of the variety of semisimple n-dimensional
//! representations of the 3-string braid group.
//!
//! Components are labelled by dimension vectors σ = (a,b;x,y,z).  For each
//! supported σ the crate builds a symbolic base-change layout whose free
//! parameters rationally parametrize the component, instantiates it over an
//! exact backend (a prime field 𝔽_p with p ≡ 1 mod 6, or ℚ(ρ)), lifts the
//! point to a pair (σ₁, σ₂) of braid generator images, and certifies:
//!
//! * the braid and central relations, by exact matrix identities,
//! * irreducibility, by the Burnside algebra dimension n² (with the
//!   MeatAxe on the associated quiver representation as an independent
//!   oracle),
//! * dominance and minimality, by the exact rank of the trace-coordinate
//!   Jacobian computed with dual numbers, which must equal the component
//!   dimension n_σ = 1 + n² - (a²+b²+x²+y²+z²).
//!
//! All arithmetic is exact and every random draw is seeded, so reports are
//! byte-reproducible.

pub mod braidrep;
pub mod dimvectors;
pub mod gadgets;
pub mod linalg;
pub mod parametrize;
pub mod quiver;
pub mod report;
pub mod rng;
pub mod scalars;

pub use braidrep::{
    burnside_dimension, jacobian_rank, lift, trace_coordinates, verify_relations, BraidRep,
    WordList, WordMode,
};
pub use dimvectors::{enumerate_components, n_sigma, tau_for, validate_sigma, SigmaVector, TauVector};
pub use linalg::Matrix;
pub use parametrize::{assemble_deformed, instantiate, plan_component, ComponentPlan};
pub use report::{dominance_report, run_sweep, ExecMode, SweepConfig, SweepReport};
pub use scalars::{make_prime_field, EisensteinField, Field, FieldSpec, PrimeField, DEFAULT_PRIME};
