//! Exact scalars: big rationals, rational functions in the framing variable,
//! Bernoulli numbers and the constant-map closed form.

mod bernoulli;
mod poly;
mod ratfunc;
mod rational;
mod scalar;

pub use bernoulli::{bernoulli, faber_pandharipande};
pub use poly::IntPoly;
pub use ratfunc::RatFunc;
pub use rational::{q, Rational};
pub use scalar::{field_arith, ArithOp, Field, FieldScalar, Framing};
