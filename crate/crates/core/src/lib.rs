//! Exact-arithmetic models of pointed braided fusion categories.
//!
//! Everything here is desk scale: groups are finite abelian with orders in the
//! hundreds, quadratic forms are tables of rational phases, and fusion rings
//! have single-digit ranks.  The only floating point in the crate is the Gauss
//! sum used to read off central charges; all structural data is exact.
//!
//! The layers build on each other:
//!
//! * [`group`] — finite abelian groups given by invariant factors, subgroups,
//!   homomorphisms, quotients via Smith normal form.
//! * [`metric`] — quadratic forms `q: E -> Q/Z`, polarization, radicals,
//!   condensation of isotropic subgroups, Gauss sums.
//! * [`pointed`] — pre-metric groups equipped with an embedded dual group
//!   (pointed braided categories containing a fixed symmetric one), canonical
//!   gradings, fiber products and their condensations, minimal modular
//!   extensions.
//! * [`fusion`] — graded fusion rings, de-equivariantization, fiber products
//!   at the ring level.
//! * [`zest`] — group cochains, the cocycle/obstruction solvers, zesting of
//!   graded fusion rings, and the comparison between zesting and the
//!   condensed fiber product.

pub mod error;
pub mod fusion;
pub mod group;
pub mod metric;
pub mod phase;
pub mod pointed;
pub mod snf;
pub mod zest;

pub use error::{Error, Result};
pub use group::{Element, FinAbGroup, Hom, Subgroup};
pub use metric::{Condensation, Grading, PreMetricGroup};
pub use phase::Phase;
pub use pointed::PointedCategory;
