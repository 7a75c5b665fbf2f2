//! Exact computations with graded quotient rings: Gröbner bases, Koszul and
//! Tate complexes, minimal resolutions, and the quasi-complete-intersection
//! property of ideals.

pub mod complexes;
pub mod degreewise;
pub mod error;
pub mod field;
pub mod groebner;
pub mod instances;
pub mod invariants;
pub mod linalg;
pub mod modules;
pub mod monomial;
pub mod poly;
pub mod presentation;
pub mod qci;
pub mod quotient;
pub mod resolution;
pub mod series;
pub mod tate;
pub mod verify;

pub use error::{AlgebraError, Result};
pub use field::{Field, FieldSpec, PrimeField, RationalField};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use presentation::{parse_ring_spec, GradedRingPresentation};
