//! Exact computer algebra for free nilpotent Lie algebras.
//!
//! Hall bases and structure constants ([`hall`]), structure-constant Lie
//! algebras ([`liealg`]), ad-invariant metrics ([`metric`]), derivations
//! ([`derivs`]) and automorphisms of `n_{2,3}` ([`autgrp`]), all over exact
//! rationals ([`exact`]).

pub mod autgrp;
pub mod cli;
pub mod derivs;
pub mod error;
pub mod exact;
pub mod hall;
pub mod liealg;
pub mod metric;
pub mod report;

pub use error::{Error, Result};
pub use exact::{Matrix, Rational, Subspace};
pub use hall::{hall_basis, witt_dim, HallBasis, HallTree};
pub use liealg::{free_metabelian, free_nilpotent, heisenberg, n23, n32, LieAlgebra};
pub use metric::{admits_adinvariant, BilinearForm, MetricVerdict, Reason};
