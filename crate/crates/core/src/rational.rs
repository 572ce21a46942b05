//! Rationals modulo 1 in lowest terms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational `num/den` in `[0, 1)` with `gcd(num, den) = 1`; zero is `0/1`.
///
/// Stands for the angle of the root of unity `e^(2 pi i num/den)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Reduced {
    num: u64,
    den: u64,
}

impl Reduced {
    pub const ZERO: Reduced = Reduced { num: 0, den: 1 };

    /// Strict constructor: `num/den` must already be in lowest terms and in `[0, 1)`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den || num.gcd(&den) != 1 {
            return Err(Error::InvalidFraction { num, den });
        }
        Ok(Reduced { num, den })
    }

    /// Reduces an arbitrary signed fraction modulo 1.
    pub fn from_ratio(num: i128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidFraction {
                num: num.unsigned_abs() as u64,
                den: 0,
            });
        }
        let d = den as i128;
        let r = num.rem_euclid(d) as u128;
        let g = r.gcd(&den);
        let (n, d) = (r / g, den / g);
        let den = u64::try_from(d).map_err(|_| Error::Overflow("reduced denominator"))?;
        Ok(Reduced { num: n as u64, den })
    }

    /// `k/n mod 1`.
    pub fn frac(k: i64, n: u64) -> Self {
        Self::from_ratio(k as i128, n as u128).expect("nonzero denominator")
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(&self, rhs: &Reduced) -> Result<Reduced> {
        let l = self.den.lcm(&rhs.den) as u128;
        let a = self.num as u128 * (l / self.den as u128);
        let b = rhs.num as u128 * (l / rhs.den as u128);
        Self::from_ratio((a + b) as i128, l)
    }

    pub fn checked_sub(&self, rhs: &Reduced) -> Result<Reduced> {
        self.checked_add(&rhs.neg())
    }

    /// `-self mod 1`.
    pub fn neg(&self) -> Reduced {
        if self.num == 0 {
            *self
        } else {
            Reduced {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    /// `self - rhs mod 1`. Panics on denominator overflow.
    pub fn sub_mod1(&self, rhs: &Reduced) -> Reduced {
        self.checked_sub(rhs).expect("denominator overflow")
    }

    /// `self + rhs mod 1`. Panics on denominator overflow.
    pub fn add_mod1(&self, rhs: &Reduced) -> Reduced {
        self.checked_add(rhs).expect("denominator overflow")
    }

    /// `self * k mod 1`.
    pub fn mul_int(&self, k: u64) -> Reduced {
        let n = (self.num as u128 * k as u128) % self.den as u128;
        Self::from_ratio(n as i128, self.den as u128).expect("nonzero denominator")
    }

    /// `self / k` as a rational in `[0, 1/k)`; not a map on `Q/Z` but on the representative.
    pub fn div_int(&self, k: u64) -> Reduced {
        assert!(k >= 1);
        Self::from_ratio(self.num as i128, self.den as u128 * k as u128)
            .expect("denominator overflow")
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Reduced {
    fn default() -> Self {
        Reduced::ZERO
    }
}

impl Ord for Reduced {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Reduced {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Reduced {
    type Err = Error;

    /// Accepts `k/n` (any integers, reduced mod 1) or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::FractionParse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: u128 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Reduced::from_ratio(n, d)
            }
            None => {
                let n: i128 = s.parse().map_err(|_| bad())?;
                Reduced::from_ratio(n, 1)
            }
        }
    }
}

impl TryFrom<String> for Reduced {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Reduced> for String {
    fn from(r: Reduced) -> Self {
        r.to_string()
    }
}
