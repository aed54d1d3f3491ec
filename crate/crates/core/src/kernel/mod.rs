//! Exact scalars, dense polynomials, factorial bases and number triangles.

mod basis;
mod poly;
mod rational;
mod triangle;

pub use basis::{
    binomial_poly, central_factorial, conversion_row, express_in_basis, falling_factorial,
    rising_factorial,
};
pub use poly::{Degree, Polynomial};
pub use rational::{
    binomial, binomial_i, binomial_rat, factorial, falling_value, format_rational, int, is_integer,
    is_negative, parse_rational, pow_i, ratio, sign, Rational,
};
pub use triangle::Triangle;
