use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered bit string `b_0 b_1 ... b_{n-1}`.
///
/// Ordering is lexicographic, which for equal lengths coincides with basis
/// index order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidBitString(String::new()));
        }
        Ok(Self(bits))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "bit strings have at least one bit");
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        assert!(n >= 1, "bit strings have at least one bit");
        Self(vec![true; n])
    }

    /// The string whose basis index is `index` in an `n`-bit register.
    pub fn from_index(index: usize, n: usize) -> Self {
        assert!(n >= 1 && (n >= usize::BITS as usize || index < 1 << n));
        Self((0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect())
    }

    /// Basis index `sum b_i 2^(n-1-i)`.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Number of set bits.
    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn slice(&self, range: Range<usize>) -> Self {
        Self(self.0[range].to_vec())
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BitString>) -> Result<Self> {
        let bits: Vec<bool> = parts
            .into_iter()
            .flat_map(|p| p.0.iter().copied())
            .collect();
        Self::new(bits)
    }

    /// Bitwise inner product modulo two.
    pub fn dot(&self, other: &BitString) -> bool {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| **a && **b)
            .count()
            % 2
            == 1
    }
}

/// Number of set bits of `x`.
pub fn hamming_weight(x: &BitString) -> usize {
    x.hamming_weight()
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBitString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::InvalidBitString(s.to_string()));
        }
        Ok(Self(bits))
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}
