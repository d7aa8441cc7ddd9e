//! Codes packed into a `u64` (`x1` in the most significant of the `len` low bits) and the
//! machine-word fold used by the sweeps.
//!
//! For a code of length `n` the entries of `T[c]` are bounded by the all-ones code,
//! `b <= F(n+3)`, so every packed code (`n <= 64`) folds without overflow: `F(67) < 2^47`.

use num_bigint::BigUint;

use crate::code::Code;
use crate::tree::Pair;

/// Longest code a sweep will enumerate.
pub const MAX_SWEEP_LEN: u32 = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Packed {
    pub bits: u64,
    pub len: u32,
}

impl Packed {
    pub fn new(bits: u64, len: u32) -> Self {
        debug_assert!(len <= 64 && (len == 64 || bits >> len == 0));
        Packed { bits, len }
    }

    pub fn fold(self) -> (u64, u64) {
        let (mut a, mut b) = (1u64, 2u64);
        for i in (0..self.len).rev() {
            let sum = a + b;
            if (self.bits >> i) & 1 == 1 {
                a = b;
            }
            b = sum;
        }
        (a, b)
    }

    pub fn norm(self) -> u64 {
        let (a, b) = self.fold();
        a + b
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn reversed(self) -> Packed {
        if self.len == 0 {
            return self;
        }
        Packed::new(self.bits.reverse_bits() >> (64 - self.len), self.len)
    }

    /// `sum over runs of r^3`, i.e. `n * var(c)`.
    pub fn cube_run_sum(self) -> u64 {
        let mut total = 0u64;
        let mut run = 0u64;
        let mut prev = None;
        for i in (0..self.len).rev() {
            let bit = (self.bits >> i) & 1;
            if prev == Some(bit) {
                run += 1;
            } else {
                total += run * run * run;
                run = 1;
                prev = Some(bit);
            }
        }
        total + run * run * run
    }

    pub fn to_code(self) -> Code {
        Code::from_packed(self.bits, self.len)
    }
}

pub(crate) fn to_pair((a, b): (u64, u64)) -> Pair {
    Pair::new(BigUint::from(a), BigUint::from(b))
}
