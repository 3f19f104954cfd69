//! Exact computational engine for monomial ideals in `k[x_1..x_d]`.
//!
//! Everything here is exponent combinatorics: a monomial `x^a` is its
//! exponent vector, an ideal is the antichain of its minimal generators,
//! and all lengths, closures and Hilbert data are computed with exact
//! integer (or exact rational) arithmetic. No field elements and no
//! floating point ever materialize.
//!
//! The graded polynomial ring stands in for its localization at the
//! irrelevant maximal ideal: for monomial ideals every colon, power,
//! closure and colength agrees with the local counterpart, so graded
//! computation is faithful. This transfer is a documented assumption,
//! not something checked in code.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exponent;
pub mod filtration;
pub mod hilbert;
pub mod ideal;
pub mod lp;
pub mod newton;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use exponent::ExponentVector;
pub use filtration::{ratliff_rush, saturation, Filtration, FiltrationKind, RatliffRushResult};
pub use hilbert::{
    analytic_spread, gap_function, hilbert_profile, DichotomyVerdict, GapAnalysis, HilbertProfile,
    WindowPolicy,
};
pub use ideal::{MonomialIdeal, PrimeSupport};
pub use newton::{integral_closure, integral_closure_power, NewtonPolyhedron};
pub use poly::{FitOutcome, PolynomialFit};
pub use verify::{TheoremReport, TheoremStatus};
