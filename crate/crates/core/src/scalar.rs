//! Scalar abstraction for lengths, cut values and distances.
//!
//! Everything that compares path lengths against thresholds is generic over
//! [`Scalar`]. The exact instantiation ([`crate::Rational`]) is the one every
//! check in this crate is stated for; `f64` is supported for quick
//! exploratory runs where strict inequalities are allowed to be fuzzy.

use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};

/// Ordered field element usable as an edge length or cut value.
pub trait Scalar:
    Num + FromPrimitive + ToPrimitive + Clone + PartialOrd + Debug + Send + Sync + 'static
{
    /// Serialize as `num/den` (exact types) or a decimal literal (floats).
    fn to_ratio_string(&self) -> String;

    /// Parse `num/den` or a bare number.
    fn parse_ratio(text: &str) -> Option<Self>;

    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("every scalar type represents small integers")
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for BigRational {
    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_ratio(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().ok()?;
                let den: BigInt = den.trim().parse().ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
            None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn to_ratio_string(&self) -> String {
                format!("{}", self)
            }

            fn parse_ratio(text: &str) -> Option<Self> {
                let text = text.trim();
                let value = match text.split_once('/') {
                    Some((num, den)) => {
                        let den: $t = den.trim().parse().ok()?;
                        if den == 0.0 {
                            return None;
                        }
                        num.trim().parse::<$t>().ok()? / den
                    }
                    None => text.parse().ok()?,
                };
                value.is_finite().then_some(value)
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// A scalar extended with a single point at infinity.
///
/// Used for distances between disconnected vertices and for the sparsity of
/// a cut with zero demand-size. `Finite(_) < Infinite` always.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Extended<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `self <= bound`, with infinity never bounded.
    pub fn at_most(&self, bound: &S) -> bool {
        match self {
            Extended::Finite(v) => v <= bound,
            Extended::Infinite => false,
        }
    }

    /// `self > bound`, with infinity exceeding everything.
    pub fn exceeds(&self, bound: &S) -> bool {
        !self.at_most(bound)
    }

    pub fn to_ratio_string(&self) -> String {
        match self {
            Extended::Finite(v) => v.to_ratio_string(),
            Extended::Infinite => "inf".to_string(),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Extended::Finite(v) => v.approx(),
            Extended::Infinite => f64::INFINITY,
        }
    }
}

impl<S: Scalar> fmt::Display for Extended<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ratio_string())
    }
}

/// Build an exact rational from a small numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Serde adapter writing exact scalars as `"num/den"` strings.
pub mod as_ratio {
    use super::Scalar;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Scalar, Ser: Serializer>(value: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(&value.to_ratio_string())
    }

    pub fn deserialize<'de, S: Scalar, De: Deserializer<'de>>(de: De) -> Result<S, De::Error> {
        let text = String::deserialize(de)?;
        S::parse_ratio(&text).ok_or_else(|| De::Error::custom(format!("bad rational `{text}`")))
    }
}
