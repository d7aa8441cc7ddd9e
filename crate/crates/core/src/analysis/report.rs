//! Sweep reports and witnesses, with their JSON shape.
//!
//! Big integers and rationals serialize as decimal strings (`"25"`, `"31/7"`); pairs as
//! two-element string arrays; codes as raw bit strings.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::code::{cluster_variance, format_rational, Code, Rational};
use crate::tree::{apply_code, norm1, Pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Reflection,
    Conjecture,
    Completeness,
    BlockProposition,
    Homomorphism,
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepKind::Reflection => "reflection",
            SweepKind::Conjecture => "conjecture",
            SweepKind::Completeness => "completeness",
            SweepKind::BlockProposition => "block_proposition",
            SweepKind::Homomorphism => "homomorphism",
        })
    }
}

/// The swept domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SweepRange {
    /// Every code with `1 <= |c| <= max_len`.
    MaxLength { max_len: u32 },
    /// Every pair `1 <= a < b <= max_b`.
    MaxValue { max_b: u64 },
    /// Every code of length `len`, optionally restricted to one weight.
    Length { len: u32, weight: Option<u32> },
    /// Block sizes `j` in `min_j..=max_j`.
    BlockSizes { min_j: u32, max_j: u32 },
    /// Seeded random trials.
    Trials { trials: u64, seed: u64 },
}

impl fmt::Display for SweepRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepRange::MaxLength { max_len } => write!(f, "max_len={max_len}"),
            SweepRange::MaxValue { max_b } => write!(f, "max_b={max_b}"),
            SweepRange::Length { len, weight: None } => write!(f, "len={len}"),
            SweepRange::Length {
                len,
                weight: Some(w),
            } => write!(f, "len={len} weight={w}"),
            SweepRange::BlockSizes { min_j, max_j } => write!(f, "j={min_j}..={max_j}"),
            SweepRange::Trials { trials, seed } => write!(f, "trials={trials} seed={seed}"),
        }
    }
}

/// An exact compared quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Integer(BigUint),
    Ratio(Rational),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(n) => write!(f, "{n}"),
            Value::Ratio(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.a.to_string())?;
        seq.serialize_element(&self.b.to_string())?;
        seq.end()
    }
}

fn serialize_decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(r))
}

/// The evidence for one failed check.
///
/// Code-based witnesses store `pairs[i] = T[codes[i]]`; their `values` are the compared
/// quantities (norms, or variances followed by norms for the conjecture).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub codes: Vec<Code>,
    pub pairs: Vec<Pair>,
    pub values: Vec<Value>,
}

impl Witness {
    /// A witness comparing the norms of `codes`.
    pub fn norms_of(codes: Vec<Code>) -> Witness {
        let pairs: Vec<Pair> = codes.iter().map(apply_code).collect();
        let values = pairs.iter().map(|p| Value::Integer(norm1(p))).collect();
        Witness {
            codes,
            pairs,
            values,
        }
    }

    /// A conjecture witness: `var(c1) < var(c2)` but `norm(c1) <= norm(c2)`.
    pub fn conjecture(c1: Code, c2: Code) -> Witness {
        let p1 = apply_code(&c1);
        let p2 = apply_code(&c2);
        let var =
            |c: &Code| Value::Ratio(cluster_variance(c).expect("conjecture codes are nonempty"));
        let values = vec![
            var(&c1),
            var(&c2),
            Value::Integer(norm1(&p1)),
            Value::Integer(norm1(&p2)),
        ];
        Witness {
            codes: vec![c1, c2],
            pairs: vec![p1, p2],
            values,
        }
    }

    /// Re-evaluates the witness' codes and checks they reproduce the stored data.
    pub fn reproduces(&self, kind: SweepKind) -> bool {
        let pairs_match = self
            .codes
            .iter()
            .zip(&self.pairs)
            .all(|(c, p)| &apply_code(c) == p);
        if !pairs_match || self.pairs.len() < self.codes.len() {
            return false;
        }
        match kind {
            SweepKind::Reflection | SweepKind::BlockProposition => {
                Witness::norms_of(self.codes.clone()).values == self.values
            }
            SweepKind::Conjecture => {
                self.codes.len() == 2
                    && self.codes.iter().all(|c| !c.is_empty())
                    && Witness::conjecture(self.codes[0].clone(), self.codes[1].clone()) == *self
            }
            SweepKind::Completeness | SweepKind::Homomorphism => true,
        }
    }
}

/// Extremal norms of one `(weight, variance)` class of equal-length codes. Ties are
/// broken towards the lexicographically smallest code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassExtremes {
    pub weight: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub variance: Rational,
    pub count: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub min_norm: BigUint,
    pub min_code: Code,
    #[serde(serialize_with = "serialize_decimal")]
    pub max_norm: BigUint,
    pub max_code: Code,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremal {
    /// The largest norm seen, at the first code (shortlex) attaining it.
    MaxNorm {
        code: Code,
        pair: Pair,
        #[serde(serialize_with = "serialize_decimal")]
        norm: BigUint,
    },
    /// Per-class extremes in `(weight, variance)` order.
    Classes(Vec<ClassExtremes>),
}

/// Outcome of an exhaustive verification.
///
/// `violation_count` counts failing elements of the domain (for the conjecture: codes
/// `c1` admitting at least one violating partner); `violations` keeps at most the
/// configured number of witnesses, `truncated` is set when more existed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub range: SweepRange,
    pub checked_count: u64,
    pub violations: Vec<Witness>,
    pub violation_count: u64,
    pub truncated: bool,
    pub extremal: Option<Extremal>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}
