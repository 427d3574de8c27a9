//! Integer images of rational weights for the hot search loops.
//!
//! Weights are multiplied by the lcm of their denominators. When the total
//! fits comfortably in `i128` the searches run on machine integers; otherwise
//! they fall back to `BigInt`. Either way the arithmetic is exact.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

pub(crate) trait Exact:
    Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Send + Sync + std::fmt::Debug
{
    fn from_usize(k: usize) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn into_big(self) -> BigInt;
}

impl Exact for i128 {
    fn from_usize(k: usize) -> Self {
        k as i128
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Exact for BigInt {
    fn from_usize(k: usize) -> Self {
        BigInt::from(k)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn into_big(self) -> BigInt {
        self
    }
}

pub(crate) enum IntWeights {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// Integer weights plus the common scale `L` (so `w = int / L`).
pub(crate) fn integer_weights(weights: &[Rational]) -> (IntWeights, BigInt) {
    let mut scale = BigInt::one();
    for w in weights {
        scale = scale.lcm(w.denom());
    }
    let ints: Vec<BigInt> = weights.iter().map(|w| w.numer() * (&scale / w.denom())).collect();
    let total: BigInt = ints.iter().map(|x| x.abs()).sum();
    // leave headroom for products with small counts in bounds
    let fits = total.bits() <= 80;
    if fits {
        let small = ints.iter().map(|x| x.to_i128().expect("fits")).collect();
        (IntWeights::Small(small), scale)
    } else {
        (IntWeights::Big(ints), scale)
    }
}

pub(crate) fn to_rational<N: Exact>(x: N, scale: &BigInt) -> Rational {
    Rational::new(x.into_big(), scale.clone())
}
