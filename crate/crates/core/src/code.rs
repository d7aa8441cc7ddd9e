//! Binary codes and their cluster statistics.
//!
//! The cluster number of a position is the length of the maximal constant run containing
//! it. Summing over positions, each run of length `r` contributes `r` copies of `r`, so
//! `sum clus = sum r^2` and `sum clus^2 = sum r^3`; the statistics are computed from the
//! run profile.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational with unbounded numerator and positive denominator, kept in lowest terms.
pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid character {found:?} at position {position} (codes use only '0' and '1')")]
    InvalidCharacter { position: usize, found: char },
    #[error("position {position} is out of range for a code of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("the empty code has no cluster statistics")]
    EmptyCode,
}

/// A finite bit string `x1 x2 ... xn`; `x1` is the first generator applied.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    bits: Vec<bool>,
}

impl Code {
    pub fn empty() -> Self {
        Code::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Code { bits }
    }

    /// The code of length `len` whose bits are the binary digits of `value`, `x1` being
    /// the most significant. Integer order on `value` is lexicographic order on codes.
    pub fn from_packed(value: u64, len: u32) -> Self {
        debug_assert!(len <= 64);
        let bits = (0..len).rev().map(|i| (value >> i) & 1 == 1).collect();
        Code { bits }
    }

    /// Inverse of [`Code::from_packed`]; `None` for codes longer than 64 bits.
    pub fn to_packed(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        self.bits.iter().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// `x` repeated: `x^count`.
    pub fn repeat(pattern: &str, count: usize) -> Self {
        pattern
            .repeat(count)
            .parse()
            .expect("repeat pattern must be a bit string")
    }

    pub fn concat(&self, other: &Code) -> Code {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Code { bits }
    }

    /// Lengths of the maximal constant runs, left to right.
    pub fn runs(&self) -> Vec<usize> {
        self.bits
            .chunk_by(|x, y| x == y)
            .map(<[bool]>::len)
            .collect()
    }
}

/// Parses a string over `'0'`/`'1'`; positions in errors are 1-based.
pub fn parse_code(s: &str) -> Result<Code, CodeError> {
    s.chars()
        .enumerate()
        .map(|(i, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            found => Err(CodeError::InvalidCharacter {
                position: i + 1,
                found,
            }),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Code::from_bits)
}

pub fn format_code(c: &Code) -> String {
    c.iter().map(|b| if b { '1' } else { '0' }).collect()
}

impl FromStr for Code {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_code(s)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_code(self))
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code({:?})", format_code(self))
    }
}

/// Bit order reversed.
pub fn refl(c: &Code) -> Code {
    Code::from_bits(c.iter().rev().collect())
}

pub fn is_palindrome(c: &Code) -> bool {
    c.iter().eq(c.iter().rev())
}

pub fn weight(c: &Code) -> usize {
    c.iter().filter(|&b| b).count()
}

/// Every bit flipped.
pub fn complement(c: &Code) -> Code {
    Code::from_bits(c.iter().map(|b| !b).collect())
}

/// Length of the run containing the 1-based position `i`.
pub fn cluster_number(c: &Code, i: usize) -> Result<usize, CodeError> {
    let bits = c.bits();
    if i == 0 || i > bits.len() {
        return Err(CodeError::PositionOutOfRange {
            position: i,
            len: bits.len(),
        });
    }
    let idx = i - 1;
    let bit = bits[idx];
    let left = bits[..idx].iter().rev().take_while(|&&b| b == bit).count();
    let right = bits[idx + 1..].iter().take_while(|&&b| b == bit).count();
    Ok(left + right + 1)
}

/// `sum_runs r^power`, the unnormalized cluster sum of order `power - 1`.
pub fn run_power_sum(c: &Code, power: u32) -> u128 {
    c.runs().into_iter().map(|r| (r as u128).pow(power)).sum()
}

fn normalized(c: &Code, power: u32) -> Result<Rational, CodeError> {
    if c.is_empty() {
        return Err(CodeError::EmptyCode);
    }
    Ok(Rational::new(
        BigInt::from(run_power_sum(c, power)),
        BigInt::from(c.len()),
    ))
}

/// `avg(c) = (sum_i clus(x_i, c)) / n`.
pub fn cluster_average(c: &Code) -> Result<Rational, CodeError> {
    normalized(c, 2)
}

/// `var(c) = (sum_i clus(x_i, c)^2) / n`.
pub fn cluster_variance(c: &Code) -> Result<Rational, CodeError> {
    normalized(c, 3)
}

/// Formats a rational as `num` or `num/den`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
