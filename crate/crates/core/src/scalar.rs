//! Scalar abstraction for the numeric core.
//!
//! The linear algebra, LP, and polytope machinery are generic over any ordered
//! field through [`Coeff`]. The exact deciders instantiate them at [`Rat`];
//! f64 satisfies the same bound and is used where a floating-point path is
//! acceptable (oracles, operator norms).

use num::BigRational;
use num_traits::{Num, Signed};
use std::fmt;

/// An ordered field coefficient. Blanket-implemented; do not implement by hand.
pub trait Coeff: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {}

impl<T> Coeff for T where T: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {}

/// Exact rational scalar used on the polyhedral path.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Exact conversion of an f64 to a rational. Panics on non-finite input.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

/// Lossy conversion of a rational to f64.
pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
