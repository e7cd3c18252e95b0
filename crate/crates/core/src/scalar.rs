//! Integer scalar abstraction shared by the exact linear algebra.
//!
//! Everything in this crate is exact: the matrix routines are generic over
//! any signed Euclidean integer type, so the same Smith normal form code runs
//! on machine integers (handy in tests) and on arbitrary-precision integers
//! (what the topology modules use).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed integer ring with Euclidean division.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("value does not fit the scalar type")
    }
}

impl Scalar for i32 {}
impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}
