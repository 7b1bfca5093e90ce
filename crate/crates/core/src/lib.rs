//! Exact computer algebra for double Danielewski surfaces
//! `x^d y = P(x, z)`, `x^e t = Q(x, y, z)`: deciding and constructing
//! isomorphisms, checking automorphisms, and executable versions of the
//! divisibility and non-membership lemmas behind the classification.

pub mod cases;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod groebner;
pub mod io;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod roundtrip;
pub mod surface;

pub use error::AlgebraError;
pub use field::{FieldElement, FieldSpec};
pub use groebner::{GbConfig, GroebnerBasis, IdealBasis, MembershipCertificate, MonomialOrder, OrderKind};
pub use laurent::LaurentPoly;
pub use parse::{parse_poly, parse_poly_in};
pub use poly::{Monomial, MultiPoly, VarSet};
pub use surface::SurfacePresentation;
