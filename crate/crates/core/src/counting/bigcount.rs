use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Exact nonnegative integer count.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::from(1u32))
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Natural logarithm, from the leading 64 bits and the bit length.
    ///
    /// Relative error is at the level of one `f64` rounding of the mantissa.
    /// Zero maps to negative infinity.
    pub fn ln(&self) -> f64 {
        let bits = self.0.bits();
        if bits <= 64 {
            return (self.0.to_u64().expect("fits in 64 bits") as f64).ln();
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_u64().expect("64 leading bits");
        (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigUint::from_str(s).map(BigCount)
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {$(
        impl From<$t> for BigCount {
            fn from(v: $t) -> Self {
                BigCount(BigUint::from(v))
            }
        }
    )*};
}

from_primitive!(u8, u16, u32, u64, u128, usize);
