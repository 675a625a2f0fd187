//! Exact computer algebra for planar polynomial systems: sparse multivariate
//! polynomials over the rationals and prime fields, term orders, Groebner
//! bases, elimination, resultants, and the modular lifting pipeline.

pub mod coeff;
pub mod groebner;
pub mod modular;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod univar;
pub mod vars;

pub use coeff::{big_int_rat, big_rat, Coeff, GaussRat, ModP};
pub use parse::{parse_poly, render_poly, ParseError};
pub use poly::{MPoly, PPoly, QPoly};
pub use vars::{Monomial, OrderKind, TermOrder, VarTable, IMAG_UNIT};
