//! Exact decision procedures for left-orthogonality of effective divisors on
//! surfaces, driven entirely by combinatorial curve data.
//!
//! The input is a configuration of curve components (self-intersection
//! numbers, genera, transversal incidences) plus a multiplicity vector. From
//! that the crate decides whether the divisor `D` is left-orthogonal
//! (`H^i(X, O_X(-D)) = 0` for all `i`, so `(O_X, O_X(D))` is an exceptional
//! pair) or strongly left-orthogonal (in addition `H^1` and `H^2` of
//! `O_X(D)` vanish), returning concrete witnesses on failure and
//! constructive `H^1`-elimination certificates on success.
//!
//! Standing hypothesis: results apply to divisors on a surface with
//! `h^1(X, O_X) = h^2(X, O_X) = 0`, which holds for every rational surface.
//! That assumption is invisible to the combinatorial data and is never
//! checked at runtime. Likewise, [`hodge::hodge_admissible`] only filters
//! out configurations that cannot exist on any surface; passing the filter
//! does not certify realizability.
//!
//! No floating point is used; every derived value is an exact integer or
//! rational.

pub mod certificates;
pub mod criteria;
pub mod error;
pub mod hodge;
pub mod lattice;
pub mod models;

pub use error::Error;
pub use lattice::{Component, ComponentId, CurveConfiguration, Divisor};

pub use criteria::{
    is_left_orthogonal, is_strongly_left_orthogonal, LoVerdict, SloVerdict,
    DEFAULT_ENUMERATION_CAP,
};
