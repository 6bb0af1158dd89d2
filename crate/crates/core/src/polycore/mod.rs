//! Exact arithmetic substrate: rationals, ternary and binary forms, linear algebra.

pub mod binary;
pub mod gcd;
pub mod linalg;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod univariate;

pub use binary::{distinct_root_count, BinaryForm};
pub use gcd::{is_reduced, square_factor_degree};
pub use linalg::{Echelon, RatMatrix};
pub use parse::{parse_line, parse_poly, ParseError};
pub use poly::{monomial_count, monomials, restrict_to_line, Exp, HomoPoly, LinearForm, Var};
pub use rat::Rat;
pub use univariate::UniPoly;
