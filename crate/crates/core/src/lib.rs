//! Exact symbolic engine for toric Calabi-Yau orbifold mirror symmetry.
//!
//! Starting from a stacky-fan description of a toric CY orbifold, this crate
//! computes, over exact rational arithmetic:
//!
//! - the charge data of the fan and divisor sequences ([`charges`]),
//! - hypergeometric mirror-map components and their formal inverses
//!   ([`mirror_map`]),
//! - generating functions of genus-0 open (orbifold) Gromov-Witten
//!   invariants and the SYZ mirror defining equation ([`open_gw`]),
//! - toric partial compactifications with semi-Fano certificates
//!   ([`compactify`]),
//! - GKZ-type annihilation certificates for mirror-map components ([`gkz`]),
//! - wall-crossing data and numeric crepant-resolution comparisons
//!   ([`wallcross`]).
//!
//! All formal series live in [`series::MultiSeries`], a truncated
//! multivariate power series with exact rational (or Gaussian-rational)
//! coefficients, graded by a rational covector so that mirror-map inversion
//! proceeds order by order.

pub mod charges;
pub mod compactify;
pub mod cone;
pub mod enumerate;
pub mod error;
pub mod fan;
pub mod gkz;
pub mod lattice;
pub mod lp;
pub mod mirror_map;
pub mod numeric;
pub mod open_gw;
pub mod series;
pub mod util;
pub mod wallcross;

pub use charges::{ChargeData, ExponentVector};
pub use error::{Error, Result};
pub use fan::{BoxElement, StackyFan, ValidationReport};
pub use lattice::{IntMatrix, RatMatrix};
pub use series::{GaussRational, MultiSeries, RatSeries, VarSystem};
