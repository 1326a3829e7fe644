//! Exact rational similarity scores on the 0–10 scale.
//!
//! Flow values are integers and per-direction scores divide them by small
//! parameter counts, so scores are kept as exact rationals: golden values
//! like `35/4` compare by equality with no platform-dependent rounding.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Decimal places used when a score has no finite decimal expansion.
const APPROX_DECIMALS: u32 = 4;

/// An exact rational score; ordering and equality are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(Ratio<i64>);

impl Score {
    /// The complete-match score, 10.
    pub fn full() -> Score {
        Score(Ratio::from_integer(10))
    }

    pub fn zero() -> Score {
        Score(Ratio::from_integer(0))
    }

    /// Ratio of a flow value to the number of requested parameters.
    pub fn from_flow(flow_value: i64, requested_count: usize) -> Score {
        Score(Ratio::new(flow_value, requested_count as i64))
    }

    /// Exact mean of two scores.
    pub fn mean(a: Score, b: Score) -> Score {
        Score((a.0 + b.0) / 2)
    }

    pub fn is_full(self) -> bool {
        self == Score::full()
    }

    /// Reduced numerator; the denominator is always positive.
    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// Decimal rendering: the exact shortest expansion when the reduced
    /// denominator divides a power of ten, otherwise rounded (half up) to
    /// four decimal places. Pure integer arithmetic either way.
    pub fn decimal(self) -> String {
        let negative = self.numer() < 0;
        let numer = self.numer().unsigned_abs() as u128;
        let denom = self.denom() as u128;
        let sign = if negative { "-" } else { "" };
        let whole = numer / denom;
        let mut remainder = numer % denom;
        if remainder == 0 {
            return format!("{sign}{whole}");
        }
        let mut digits = String::new();
        // A denominator of 2^a * 5^b terminates within a + b digits; probe
        // a few extra before falling back to the rounded form.
        for _ in 0..(APPROX_DECIMALS + 2) {
            remainder *= 10;
            digits.push(char::from(b'0' + (remainder / denom) as u8));
            remainder %= denom;
            if remainder == 0 {
                return format!("{sign}{whole}.{digits}");
            }
        }
        let scale = 10u128.pow(APPROX_DECIMALS);
        let scaled = (numer * scale + denom / 2) / denom;
        format!(
            "{sign}{}.{:0width$}",
            scaled / scale,
            scaled % scale,
            width = APPROX_DECIMALS as usize
        )
    }
}

impl fmt::Display for Score {
    /// Decimal with the exact fraction alongside, e.g. `8.75 (35/4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}/{})", self.decimal(), self.numer(), self.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct ScoreRepr {
    num: i64,
    den: i64,
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScoreRepr {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Score, D::Error> {
        let repr = ScoreRepr::deserialize(deserializer)?;
        if repr.den == 0 {
            return Err(serde::de::Error::custom("score denominator is zero"));
        }
        Ok(Score(Ratio::new(repr.num, repr.den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_canonical_form() {
        let score = Score::from_flow(15, 2);
        assert_eq!((score.numer(), score.denom()), (15, 2));
        let reduced = Score::from_flow(20, 2);
        assert_eq!((reduced.numer(), reduced.denom()), (10, 1));
    }

    #[test]
    fn mean_is_exact() {
        let overall = Score::mean(Score::full(), Score::from_flow(15, 2));
        assert_eq!((overall.numer(), overall.denom()), (35, 4));
        assert_eq!(overall.to_string(), "8.75 (35/4)");
    }

    #[test]
    fn renders_integers_without_fraction_digits() {
        assert_eq!(Score::full().to_string(), "10 (10/1)");
        assert_eq!(Score::zero().to_string(), "0 (0/1)");
    }

    #[test]
    fn renders_terminating_decimals_exactly() {
        assert_eq!(Score::from_flow(15, 2).decimal(), "7.5");
        assert_eq!(Score::from_flow(1, 16).decimal(), "0.0625");
    }

    #[test]
    fn rounds_non_terminating_decimals_to_four_places() {
        assert_eq!(Score::from_flow(20, 3).decimal(), "6.6667");
        assert_eq!(Score::from_flow(10, 3).decimal(), "3.3333");
        assert_eq!(Score::from_flow(10, 7).to_string(), "1.4286 (10/7)");
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Score::from_flow(15, 2) < Score::from_flow(23, 3));
        assert!(Score::from_flow(10, 1) == Score::full());
    }

    #[test]
    fn serde_round_trips() {
        let score = Score::from_flow(35, 4);
        let json = serde_json::to_string(&score).unwrap();
        assert_eq!(json, r#"{"num":35,"den":4}"#);
        let back: Score = serde_json::from_str(&json).unwrap();
        assert_eq!(back, score);
    }
}
