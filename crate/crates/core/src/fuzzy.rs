//! Triangular fuzzy numbers: membership evaluation, function-principle
//! arithmetic, and graded mean integration defuzzification.
//!
//! A triangular fuzzy number (TFN) is an ordered triple `(low, peak, high)`
//! with piecewise-linear membership that reaches 1 at `peak`. A degenerate
//! triple `(d, d, d)` represents the crisp value `d`, and every operation
//! here reduces to ordinary real arithmetic in that case.

use std::fmt;
use std::ops::{Add, Sub};

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated triangular fuzzy number `(low, peak, high)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tfn {
    low: f64,
    peak: f64,
    high: f64,
}

impl Tfn {
    /// Builds a TFN, rejecting triples that violate `low <= peak <= high`
    /// or contain non-finite components.
    pub fn new(low: f64, peak: f64, high: f64) -> Result<Self> {
        if !(low.is_finite() && peak.is_finite() && high.is_finite()) {
            return Err(Error::FuzzyOrdering {
                low,
                peak,
                high,
                violated: "components must be finite",
            });
        }
        if low > peak {
            return Err(Error::FuzzyOrdering {
                low,
                peak,
                high,
                violated: "low <= peak violated",
            });
        }
        if peak > high {
            return Err(Error::FuzzyOrdering {
                low,
                peak,
                high,
                violated: "peak <= high violated",
            });
        }
        Ok(Self { low, peak, high })
    }

    /// The degenerate triple `(d, d, d)` representing a crisp value.
    pub fn crisp(value: f64) -> Self {
        Self {
            low: value,
            peak: value,
            high: value,
        }
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    /// True when the triple collapses to a single crisp value.
    pub fn is_crisp(&self) -> bool {
        self.low == self.peak && self.peak == self.high
    }

    /// Membership grade at `x`: 0 outside the support, a linear ramp up on
    /// `[low, peak]` and down on `[peak, high]`, and 1 at the peak. Degenerate
    /// segments keep full membership at the shared point.
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.low || x > self.high {
            return 0.0;
        }
        if x == self.peak {
            return 1.0;
        }
        if x < self.peak {
            // low < peak here, otherwise x == peak was caught above.
            (x - self.low) / (self.peak - self.low)
        } else {
            (self.high - x) / (self.high - self.peak)
        }
    }

    /// Graded mean integration representation `(low + 4*peak + high) / 6`.
    pub fn gmir(&self) -> f64 {
        (self.low + 4.0 * self.peak + self.high) / 6.0
    }

    /// Function-principle scalar multiple. Negative factors reverse the
    /// endpoints so the result stays ordered.
    pub fn scale(&self, k: f64) -> Self {
        if k >= 0.0 {
            Self {
                low: k * self.low,
                peak: k * self.peak,
                high: k * self.high,
            }
        } else {
            Self {
                low: k * self.high,
                peak: k * self.peak,
                high: k * self.low,
            }
        }
    }

    /// Componentwise product of two strictly positive TFNs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_positive("multiplication")?;
        other.require_positive("multiplication")?;
        // Positive operands keep the componentwise product ordered.
        Ok(Self {
            low: self.low * other.low,
            peak: self.peak * other.peak,
            high: self.high * other.high,
        })
    }

    /// Componentwise quotient of two strictly positive TFNs.
    ///
    /// Unlike multiplication, the componentwise quotient can leave the
    /// triple unordered; the result is re-validated and an explicit error is
    /// raised instead of silently sorting.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.require_positive("division")?;
        other.require_positive("division")?;
        let (low, peak, high) = (
            self.low / other.low,
            self.peak / other.peak,
            self.high / other.high,
        );
        if low > peak || peak > high {
            return Err(Error::NonTfnResult { low, peak, high });
        }
        Ok(Self { low, peak, high })
    }

    fn require_positive(&self, op: &'static str) -> Result<()> {
        if self.low <= 0.0 {
            return Err(Error::FuzzyNonPositive { op, low: self.low });
        }
        Ok(())
    }
}

impl Add for Tfn {
    type Output = Tfn;

    fn add(self, rhs: Tfn) -> Tfn {
        Tfn {
            low: self.low + rhs.low,
            peak: self.peak + rhs.peak,
            high: self.high + rhs.high,
        }
    }
}

impl Sub for Tfn {
    type Output = Tfn;

    // Function-principle subtraction pairs opposite endpoints.
    fn sub(self, rhs: Tfn) -> Tfn {
        Tfn {
            low: self.low - rhs.high,
            peak: self.peak - rhs.peak,
            high: self.high - rhs.low,
        }
    }
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.low, self.peak, self.high)
    }
}

// TFNs travel as a 3-element numeric array [low, peak, high] in config and
// output files.
impl Serialize for Tfn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        tup.serialize_element(&self.low)?;
        tup.serialize_element(&self.peak)?;
        tup.serialize_element(&self.high)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for Tfn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TfnVisitor;

        impl<'de> Visitor<'de> for TfnVisitor {
            type Value = Tfn;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a 3-element array [low, peak, high]")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Tfn, A::Error> {
                let low: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let peak: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let high: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(2, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(4, &self));
                }
                Tfn::new(low, peak, high).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_tuple(3, TfnVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_ordered_triple() {
        let v = Tfn::new(5000.0, 34250.0, 68000.0).unwrap();
        assert_eq!(v.low(), 5000.0);
        assert_eq!(v.peak(), 34250.0);
        assert_eq!(v.high(), 68000.0);
    }

    #[test]
    fn accepts_degenerate_triple() {
        let v = Tfn::new(7.0, 7.0, 7.0).unwrap();
        assert!(v.is_crisp());
        assert_eq!(v.gmir(), 7.0);
    }

    #[test]
    fn rejects_misordered_triple() {
        let err = Tfn::new(3.0, 2.0, 5.0).unwrap_err();
        match err {
            Error::FuzzyOrdering { violated, .. } => {
                assert_eq!(violated, "low <= peak violated");
            }
            other => panic!("unexpected error: {other:?}"),
        }
        assert!(matches!(
            Tfn::new(1.0, 4.0, 3.0),
            Err(Error::FuzzyOrdering {
                violated: "peak <= high violated",
                ..
            })
        ));
    }

    #[test]
    fn rejects_non_finite_components() {
        assert!(Tfn::new(f64::NAN, 1.0, 2.0).is_err());
        assert!(Tfn::new(0.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn membership_matches_hand_values() {
        let v = Tfn::new(5000.0, 34250.0, 68000.0).unwrap();
        assert_eq!(v.membership(34250.0), 1.0);
        // (19625 - 5000) / (34250 - 5000) = 0.5
        assert_eq!(v.membership(19625.0), 0.5);
        assert_eq!(v.membership(70000.0), 0.0);
        assert_eq!(v.membership(4000.0), 0.0);
    }

    #[test]
    fn membership_of_degenerate_segments() {
        let left = Tfn::new(2.0, 2.0, 5.0).unwrap();
        assert_eq!(left.membership(2.0), 1.0);
        assert_eq!(left.membership(3.5), 0.5);

        let right = Tfn::new(1.0, 4.0, 4.0).unwrap();
        assert_eq!(right.membership(4.0), 1.0);

        let point = Tfn::crisp(7.0);
        assert_eq!(point.membership(7.0), 1.0);
        assert_eq!(point.membership(7.1), 0.0);
    }

    #[test]
    fn gmir_of_reference_triples() {
        let gmir = |a, b, c| Tfn::new(a, b, c).unwrap().gmir();
        assert_eq!(gmir(5000.0, 34250.0, 68000.0), 35000.0);
        assert_eq!(gmir(12000.0, 37500.0, 78000.0), 40000.0);
        // The published table prints 60,000 for this row; the defining
        // formula gives 63,333.33.
        let row5 = gmir(42000.0, 61000.0, 94000.0);
        assert!((row5 - 63333.333333333336).abs() < 1e-9);
    }

    #[test]
    fn scale_handles_signs() {
        let v = Tfn::new(1.0, 2.0, 3.0).unwrap();
        assert_eq!(v.scale(2.0), Tfn::new(2.0, 4.0, 6.0).unwrap());
        assert_eq!(v.scale(-1.0), Tfn::new(-3.0, -2.0, -1.0).unwrap());
        assert_eq!(v.scale(0.0), Tfn::crisp(0.0));
    }

    #[test]
    fn function_principle_binary_ops() {
        let a = Tfn::new(1.0, 2.0, 3.0).unwrap();
        let b = Tfn::new(2.0, 3.0, 4.0).unwrap();
        assert_eq!(a + b, Tfn::new(3.0, 5.0, 7.0).unwrap());
        assert_eq!(a - b, Tfn::new(-3.0, -1.0, 1.0).unwrap());
        assert_eq!(a.mul(&b).unwrap(), Tfn::new(2.0, 6.0, 12.0).unwrap());

        let c = Tfn::new(2.0, 6.0, 12.0).unwrap();
        assert_eq!(c.div(&b).unwrap(), Tfn::new(1.0, 2.0, 3.0).unwrap());
    }

    #[test]
    fn mul_div_reject_non_positive_operands() {
        let pos = Tfn::new(1.0, 2.0, 3.0).unwrap();
        let zero = Tfn::new(0.0, 1.0, 2.0).unwrap();
        assert!(matches!(
            pos.mul(&zero),
            Err(Error::FuzzyNonPositive {
                op: "multiplication",
                ..
            })
        ));
        assert!(matches!(
            zero.div(&pos),
            Err(Error::FuzzyNonPositive { .. })
        ));
        assert!(matches!(
            pos.div(&zero),
            Err(Error::FuzzyNonPositive { .. })
        ));
    }

    #[test]
    fn div_rejects_unordered_result() {
        // (1/1, 2/10, 3/100) = (1, 0.2, 0.03) is not a TFN.
        let a = Tfn::new(1.0, 2.0, 3.0).unwrap();
        let b = Tfn::new(1.0, 10.0, 100.0).unwrap();
        assert!(matches!(a.div(&b), Err(Error::NonTfnResult { .. })));
    }

    #[test]
    fn serializes_as_three_element_array() {
        let v = Tfn::new(1.0, 2.5, 4.0).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "[1.0,2.5,4.0]");
        let back: Tfn = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn deserialization_validates_ordering() {
        let err = serde_json::from_str::<Tfn>("[3.0,2.0,5.0]").unwrap_err();
        assert!(err.to_string().contains("low <= peak"));
    }
}
