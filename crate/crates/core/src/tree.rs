//! Pair arithmetic on `(Z^2, +)`, the two generators and their inverse.
//!
//! The tree `T` is rooted at `[1,2]`. A code `x1 x2 ... xn` names the vertex reached by
//! applying `tau_{x1}` first, then `tau_{x2}`, and so on.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::code::Code;

/// An element of `Z^2` with nonnegative, unbounded entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub a: BigUint,
    pub b: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("{0} is not in the tree (requires 0 < a < b and gcd(a,b) = 1)")]
    NotInTree(Pair),
    #[error("[1,2] is the root and has no parent")]
    RootReached,
}

impl Pair {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Self {
        Pair {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        Pair::new(0u32, 0u32)
    }

    /// The root `[1,2]` of the tree.
    pub fn root() -> Self {
        Pair::new(1u32, 2u32)
    }

    pub fn is_root(&self) -> bool {
        self.a.is_one() && self.b == BigUint::from(2u32)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl From<(u64, u64)> for Pair {
    fn from((a, b): (u64, u64)) -> Self {
        Pair::new(a, b)
    }
}

/// `[a,b] -> [a, a+b]`
pub fn tau0(p: &Pair) -> Pair {
    Pair {
        a: p.a.clone(),
        b: &p.a + &p.b,
    }
}

/// `[a,b] -> [b, a+b]`
pub fn tau1(p: &Pair) -> Pair {
    Pair {
        a: p.b.clone(),
        b: &p.a + &p.b,
    }
}

/// Applies `tau0` for `false` and `tau1` for `true`.
pub fn tau(bit: bool, p: &Pair) -> Pair {
    if bit {
        tau1(p)
    } else {
        tau0(p)
    }
}

pub fn add(p: &Pair, q: &Pair) -> Pair {
    Pair {
        a: &p.a + &q.a,
        b: &p.b + &q.b,
    }
}

pub fn scale(k: &BigUint, p: &Pair) -> Pair {
    Pair {
        a: k * &p.a,
        b: k * &p.b,
    }
}

pub fn norm1(p: &Pair) -> BigUint {
    &p.a + &p.b
}

/// True iff `0 < a < b` and `gcd(a,b) = 1`, i.e. `p` is a vertex of the tree.
pub fn is_tree_pair(p: &Pair) -> bool {
    !p.a.is_zero() && p.a < p.b && p.a.gcd(&p.b).is_one()
}

fn check_tree_pair(p: &Pair) -> Result<(), TreeError> {
    if is_tree_pair(p) {
        Ok(())
    } else {
        Err(TreeError::NotInTree(p.clone()))
    }
}

/// The parent of a tree pair: undoes `tau0` when `b > 2a`, otherwise undoes `tau1`.
pub fn reduce(p: &Pair) -> Result<Pair, TreeError> {
    check_tree_pair(p)?;
    if p.is_root() {
        return Err(TreeError::RootReached);
    }
    Ok(reduce_unchecked(p).0)
}

/// One reduction step on a tree pair other than the root. Returns the parent and the
/// generator bit that was undone.
fn reduce_unchecked(p: &Pair) -> (Pair, bool) {
    let diff = &p.b - &p.a;
    if p.b > (&p.a << 1u32) {
        (
            Pair {
                a: p.a.clone(),
                b: diff,
            },
            false,
        )
    } else {
        (
            Pair {
                a: diff,
                b: p.a.clone(),
            },
            true,
        )
    }
}

/// Left fold of the generators over `code`, starting from `start`.
pub fn apply_code_from(start: &Pair, code: &Code) -> Pair {
    let mut a = start.a.clone();
    let mut b = start.b.clone();
    for bit in code.iter() {
        let sum = &a + &b;
        if bit {
            a = std::mem::replace(&mut b, sum);
        } else {
            b = sum;
        }
    }
    Pair { a, b }
}

/// The vertex `T[code]`.
pub fn apply_code(code: &Code) -> Pair {
    apply_code_from(&Pair::root(), code)
}

/// Runs of the decoding, last-applied generator first. Each entry is `(bit, count)`.
///
/// Consecutive `tau0` undo steps are batched with a single division, so this is
/// logarithmic in `b` even when the code itself is long (e.g. `[1, b]` has length `b - 2`).
fn decode_runs(p: &Pair) -> Result<Vec<(bool, BigUint)>, TreeError> {
    check_tree_pair(p)?;
    let mut runs: Vec<(bool, BigUint)> = Vec::new();
    let mut a = p.a.clone();
    let mut b = p.b.clone();
    let two = BigUint::from(2u32);
    let one = BigUint::one();
    loop {
        if a.is_one() && b == two {
            break;
        }
        if b > (&a << 1u32) {
            // Undo tau0 while b > 2a: k = floor((b - a - 1) / a) steps.
            let k = (&b - &a - &one) / &a;
            b -= &a * &k;
            runs.push((false, k));
        } else {
            let next_a = &b - &a;
            b = std::mem::replace(&mut a, next_a);
            match runs.last_mut() {
                Some((true, n)) => *n += 1u32,
                _ => runs.push((true, BigUint::one())),
            }
        }
    }
    Ok(runs)
}

/// Length of `decode(p)` without materializing the code.
pub fn code_length(p: &Pair) -> Result<BigUint, TreeError> {
    Ok(decode_runs(p)?.into_iter().map(|(_, n)| n).sum())
}

/// The unique code `c` with `apply_code(c) == p`.
pub fn decode(p: &Pair) -> Result<Code, TreeError> {
    let runs = decode_runs(p)?;
    let mut bits = Vec::new();
    for (bit, count) in runs.iter().rev() {
        let count = usize::try_from(count).expect("code length exceeds addressable memory");
        bits.extend(std::iter::repeat_n(*bit, count));
    }
    Ok(Code::from_bits(bits))
}

/// Parent of `p` together with the bit of the generator that produced `p`.
pub fn parent(p: &Pair) -> Result<(Pair, bool), TreeError> {
    check_tree_pair(p)?;
    if p.is_root() {
        return Err(TreeError::RootReached);
    }
    Ok(reduce_unchecked(p))
}

/// One step of a trajectory: the generator applied and the pair it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub bit: bool,
    pub pair: Pair,
}

/// The sequence of pairs visited while applying a code from the root. The root itself is
/// implicit and not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trajectory {
    pub steps: Vec<Step>,
}

impl Trajectory {
    pub fn end(&self) -> Pair {
        self.steps
            .last()
            .map(|s| s.pair.clone())
            .unwrap_or_else(Pair::root)
    }
}

impl fmt::Display for Trajectory {
    /// Renders `[1,2] ↦ [..] ↦ ...`, one arrow per bit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Pair::root())?;
        for step in &self.steps {
            write!(f, " ↦ {}", step.pair)?;
        }
        Ok(())
    }
}

pub fn trajectory(code: &Code) -> Trajectory {
    let mut current = Pair::root();
    let steps = code
        .iter()
        .map(|bit| {
            current = tau(bit, &current);
            Step {
                bit,
                pair: current.clone(),
            }
        })
        .collect();
    Trajectory { steps }
}
