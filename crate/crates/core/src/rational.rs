use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A parameter `q = num/den` with `0 < q < 1/2`, kept in lowest terms.
///
/// All comparisons against `q` go through integer cross-multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalQ {
    num: u64,
    den: u64,
}

impl RationalQ {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        let input = format!("{num}/{den}");
        if num == 0 || den == 0 {
            return Err(Error::InvalidRational {
                input,
                reason: "numerator and denominator must be positive".into(),
            });
        }
        if num.checked_mul(2).is_none_or(|twice| twice >= den) {
            return Err(Error::InvalidRational {
                input,
                reason: "q must satisfy 2*num < den".into(),
            });
        }
        let g = num.gcd(&den);
        Ok(RationalQ {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `value < q * n`, i.e. `value * den < num * n`.
    pub fn below(&self, value: u64, n: u64) -> bool {
        (value as u128) * (self.den as u128) < (self.num as u128) * (n as u128)
    }

    /// `count >= (1 - 2q) * n`.
    pub fn meets_loop_bound(&self, count: u64, n: u64) -> bool {
        (count as u128) * (self.den as u128) >= ((self.den - 2 * self.num) as u128) * (n as u128)
    }

    /// `len >= ((1 - 2q) / 2) * sqrt(n)`, squared out so no roots are taken.
    pub fn meets_border_bound(&self, len: u64, n: u64) -> bool {
        let lhs = 2 * (self.den as u128) * (len as u128);
        let slack = (self.den - 2 * self.num) as u128;
        lhs * lhs >= slack * slack * (n as u128)
    }

    /// `floor(3 / q) + 1`.
    pub fn pumping_factor(&self) -> u64 {
        3 * self.den / self.num + 1
    }
}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidRational {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let Some((num, den)) = s.trim().split_once('/') else {
            if s.contains('.') {
                return Err(bad("decimals are not accepted; write q as a fraction such as 1/3"));
            }
            return Err(bad("expected a fraction num/den"));
        };
        let num = num.trim().parse::<u64>().map_err(|_| bad("bad numerator"))?;
        let den = den.trim().parse::<u64>().map_err(|_| bad("bad denominator"))?;
        RationalQ::new(num, den)
    }
}

impl Serialize for RationalQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let q: RationalQ = "2/6".parse().unwrap();
        assert_eq!((q.num(), q.den()), (1, 3));
        assert_eq!(q.to_string(), "1/3");
    }

    #[test]
    fn rejects_half_and_above() {
        assert!("1/2".parse::<RationalQ>().is_err());
        assert!("2/3".parse::<RationalQ>().is_err());
        assert!("0/3".parse::<RationalQ>().is_err());
    }

    #[test]
    fn decimal_input_gets_hint() {
        let err = "0.3".parse::<RationalQ>().unwrap_err().to_string();
        assert!(err.contains("fraction"), "{err}");
    }

    #[test]
    fn membership_is_strict() {
        let q = RationalQ::new(1, 3).unwrap();
        // 2 < 6/3 fails, 1 < 2 holds
        assert!(!q.below(2, 6));
        assert!(q.below(1, 6));
        assert!(!q.below(1, 3));
    }

    #[test]
    fn border_bound_matches_float_form() {
        let q = RationalQ::new(1, 3).unwrap();
        for n in 1..500u64 {
            for len in 0..30u64 {
                let exact = (len as f64) >= (1.0 / 6.0) * (n as f64).sqrt();
                // skip values too close to the boundary for f64
                if ((len as f64) - (1.0 / 6.0) * (n as f64).sqrt()).abs() > 1e-9 {
                    assert_eq!(q.meets_border_bound(len, n), exact, "n={n} len={len}");
                }
            }
        }
    }

    #[test]
    fn pumping_factor_third() {
        assert_eq!(RationalQ::new(1, 3).unwrap().pumping_factor(), 10);
        assert_eq!(RationalQ::new(1, 4).unwrap().pumping_factor(), 13);
    }
}
