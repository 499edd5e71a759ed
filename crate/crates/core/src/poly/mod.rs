//! Exact multivariate polynomials over the rationals.

mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use order::{compare_monomials, BlockOrder, MonomialOrder, OrderBlock};
pub use parse::{normalize_expression_text, parse_polynomial, print_polynomial};
pub use polynomial::{dot, Polynomial, Rational, Term};
pub use ring::{Ring, RingRef};

pub(crate) use ring::same_ring;
