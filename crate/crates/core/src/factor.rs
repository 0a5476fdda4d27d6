//! The diameter reduction factor `l`, held as an exact rational so that
//! `⌈diam / l⌉` never suffers from floating-point rounding.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReductionFactor(Ratio<u64>);

impl ReductionFactor {
    /// `numer / denom`; must be strictly greater than one.
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParameter("l has a zero denominator".into()));
        }
        let r = Ratio::new(numer, denom);
        if r <= Ratio::from_integer(1) {
            return Err(Error::InvalidParameter(format!("l must be > 1, got {r}")));
        }
        Ok(ReductionFactor(r))
    }

    pub fn three_halves() -> Self {
        ReductionFactor(Ratio::new(3, 2))
    }

    pub fn two() -> Self {
        ReductionFactor(Ratio::from_integer(2))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `⌈diameter / l⌉`, the target team diameter d1.
    pub fn target_diameter(&self, diameter: u32) -> u32 {
        let scaled = diameter as u64 * self.denom();
        scaled.div_ceil(self.numer()) as u32
    }
}

impl fmt::Display for ReductionFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for ReductionFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ReductionFactor {
    type Err = Error;

    /// Parses `p/q`, an integer, or a terminating decimal (`1.6` → `8/5`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse l = `{s}`"));
        let digits = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        if let Some((p, q)) = s.split_once('/') {
            return ReductionFactor::new(digits(p.trim())?, digits(q.trim())?);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let frac = frac.trim_end_matches('0');
            let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let whole = if int.is_empty() { 0 } else { digits(int)? };
            let part = if frac.is_empty() { 0 } else { digits(frac)? };
            let numer = whole
                .checked_mul(scale)
                .and_then(|w| w.checked_add(part))
                .ok_or_else(bad)?;
            return ReductionFactor::new(numer, scale);
        }
        ReductionFactor::new(digits(s)?, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_decimals_and_integers() {
        assert_eq!(
            "3/2".parse::<ReductionFactor>().unwrap(),
            ReductionFactor::three_halves()
        );
        assert_eq!(
            "1.5".parse::<ReductionFactor>().unwrap(),
            ReductionFactor::three_halves()
        );
        assert_eq!(
            "2".parse::<ReductionFactor>().unwrap(),
            ReductionFactor::two()
        );
        let l = "1.6".parse::<ReductionFactor>().unwrap();
        assert_eq!((l.numer(), l.denom()), (8, 5));
        assert_eq!(l.to_string(), "8/5");
        assert_eq!(
            "1.05".parse::<ReductionFactor>().unwrap().to_string(),
            "21/20"
        );
        assert_eq!("5/3".parse::<ReductionFactor>().unwrap().to_string(), "5/3");
    }

    #[test]
    fn rejects_l_at_most_one_and_garbage() {
        for s in [
            "1", "1/1", "0.9", "2/3", "abc", "", "3/0", "-2", "1.5.1", "1e3",
        ] {
            assert!(s.parse::<ReductionFactor>().is_err(), "{s}");
        }
    }

    #[test]
    fn target_diameter_is_an_exact_ceiling() {
        let l = ReductionFactor::three_halves();
        assert_eq!(l.target_diameter(3), 2);
        assert_eq!(l.target_diameter(6), 4);
        assert_eq!(l.target_diameter(500), 334);
        assert_eq!(l.target_diameter(100), 67);
        assert_eq!(ReductionFactor::two().target_diameter(3), 2);
        let l16: ReductionFactor = "1.6".parse().unwrap();
        assert_eq!(l16.target_diameter(50), 32);
        assert_eq!(l16.target_diameter(300), 188);
        assert_eq!(
            "1.05"
                .parse::<ReductionFactor>()
                .unwrap()
                .target_diameter(3),
            3
        );
        assert_eq!(
            "5/3".parse::<ReductionFactor>().unwrap().target_diameter(5),
            3
        );
    }
}
