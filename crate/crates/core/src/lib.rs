//! Exact s-multiplicity computations.
//!
//! The crate evaluates the normalizing function `H_s(d)`, closed-form
//! s-multiplicity profiles (powers of the maximal ideal of a regular ring,
//! the quadrics `R_2`, `R_3`, Veronese rings, and the profile `φ(s, d)`),
//! Watanabe–Yoshida-type lower bounds, and brute-force colength oracles
//! that converge to the same numbers. All comparisons are exact.

pub mod arith;
pub mod closed_forms;
pub mod error;
pub mod hs;
pub mod monomial;
pub mod oracle;
pub mod region;
pub mod verify;

pub use arith::rational::{parse_rational, rat, Rational};
pub use arith::{quad_sign, Combine, ExactField, ExactScalar, PiecewisePoly, QuadraticNumber, UniPoly};

pub use closed_forms::{BoundParams, BoundPlan, BoundSource, LowerBound, RMode, RingSpec};
pub use error::{Error, Result};
pub use hs::{Dimension, DifferenceProfile};
pub use monomial::MonomialIdeal;
pub use oracle::{ColengthQuery, ColengthResult, ConvergenceTable, EnlargementProbe};
pub use region::{McEstimate, Point3, RegionU, ZRange};
pub use verify::{PivotRecord, PointRecord, SGrid, VerificationReport};




