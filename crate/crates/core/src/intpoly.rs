//! Dense integer polynomials and the finite sets whose mask polynomials they
//! represent.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, `coeffs[k]` being
/// the coefficient of `x^k`. The zero polynomial has no stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    /// `P_n(x) = 1 + x + ... + x^(n-1)`.
    pub fn all_ones(n: usize) -> Self {
        IntPoly {
            coeffs: vec![BigInt::one(); n],
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Long division by a monic polynomial: `self = den * q + r`, `deg r < deg den`.
    pub fn divrem(&self, den: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let d = den.degree().ok_or(Error::ZeroDivisor)?;
        if !den.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let lead = std::mem::take(&mut rem[k + d]);
            if lead.is_zero() {
                continue;
            }
            for (i, c) in den.coeffs[..d].iter().enumerate() {
                if !c.is_zero() {
                    rem[k + i] -= &lead * c;
                }
            }
            quot[k] = lead;
        }
        rem.truncate(d);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    pub fn is_divisible_by(&self, den: &IntPoly) -> Result<bool> {
        Ok(self.divrem(den)?.1.is_zero())
    }

    /// Representative modulo `x^m - 1` of degree `< m`.
    pub fn mod_cyclic(&self, m: usize) -> Result<IntPoly> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut out = vec![BigInt::zero(); m.min(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k % m] += c;
        }
        Ok(IntPoly::new(out))
    }

    /// `p(x^k)`.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        assert!(k >= 1, "compose_power: k must be positive");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        IntPoly::new(out)
    }
}

pub fn poly_mul(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p * q
}

pub fn poly_divrem(num: &IntPoly, den: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    num.divrem(den)
}

pub fn poly_mod_cyclic(p: &IntPoly, m: usize) -> Result<IntPoly> {
    p.mod_cyclic(m)
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A finite set `A` of non-negative integers with `0 ∈ A`, standing for both
/// the integer set and the domain `A + [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct TileSet {
    elements: Vec<u64>,
}

impl TileSet {
    /// Elements must be strictly increasing and start at 0.
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        match elements.first() {
            None => return Err(Error::EmptySet),
            Some(&first) if first != 0 => return Err(Error::MissingZero(first)),
            _ => {}
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(w[1]));
        }
        Ok(TileSet { elements })
    }

    /// Sorts arbitrary distinct integers and translates the minimum to 0.
    /// Returns the set together with the shift that was subtracted.
    pub fn normalized(values: &[i64]) -> Result<(Self, i64)> {
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        let min = *sorted.first().ok_or(Error::EmptySet)?;
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotStrictlyIncreasing(w[1].unsigned_abs()));
        }
        let elements = sorted
            .iter()
            .map(|&v| (v as i128 - min as i128) as u64)
            .collect();
        Ok((TileSet { elements }, min))
    }

    pub fn singleton() -> Self {
        TileSet { elements: vec![0] }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn interval(n: u64) -> Self {
        assert!(n >= 1);
        TileSet {
            elements: (0..n).collect(),
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// `N = #A`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_element(&self) -> u64 {
        *self.elements.last().expect("TileSet is non-empty")
    }

    /// `M = max A + 1`, so that `A + [0, 1) ⊂ [0, M)`.
    pub fn span(&self) -> u64 {
        self.max_element() + 1
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// `kA`.
    pub fn scaled(&self, k: u64) -> Self {
        assert!(k >= 1, "scale factor must be positive");
        TileSet {
            elements: self.elements.iter().map(|a| a * k).collect(),
        }
    }

    /// gcd of the elements (0 for the singleton).
    pub fn gcd(&self) -> u64 {
        use num_integer::Integer;
        self.elements.iter().fold(0u64, |g, a| g.gcd(a))
    }

    pub fn mask_poly(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.span() as usize];
        for &a in &self.elements {
            coeffs[a as usize] = BigInt::one();
        }
        IntPoly::new(coeffs)
    }
}

impl TryFrom<Vec<u64>> for TileSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        TileSet::new(v)
    }
}

impl From<TileSet> for Vec<u64> {
    fn from(s: TileSet) -> Self {
        s.elements
    }
}

impl fmt::Display for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// `A(x) = Σ_{a ∈ A} x^a`.
pub fn mask_poly(set: &TileSet) -> IntPoly {
    set.mask_poly()
}
