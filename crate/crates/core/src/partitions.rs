//! Integer partitions: enumeration, counting, and the lexicographic
//! "alphabet order" used to order Chern-ratio coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored, so `(2,1,0)` and `(2,1)` are the same value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has an interior zero"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts an arbitrary multiset of parts into normal form, dropping zeros.
    pub fn from_multiset(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(k)`; empty when `k == 0`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Multiset union of parts, i.e. the index of `c_a * c_b`.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Partition::from_multiset(parts)
    }

    /// `(j_1, ..., j_max)`: how many times each part value occurs.
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.part(0) as usize;
        let mut mult = vec![0; max];
        for &p in &self.0 {
            mult[p as usize - 1] += 1;
        }
        mult
    }

    /// Whether the Young diagram fits inside `rows x cols`.
    pub fn fits(&self, rows: u32, cols: u32) -> bool {
        self.len() <= rows as usize && self.part(0) <= cols
    }

    /// Conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        alphabet_compare(self, other)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Parses a comma-separated part list such as `"2,1"`. An empty string (or
/// `"()"`) is the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Lexicographic comparison after padding the shorter vector with zeros.
pub fn alphabet_compare(a: &Partition, b: &Partition) -> Ordering {
    let len = a.len().max(b.len());
    for i in 0..len {
        match a.part(i).cmp(&b.part(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Every partition of `n`, largest first in alphabet order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// Partitions of every weight `0..=n`, ascending by weight, each weight block
/// in descending alphabet order.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}

/// `p(n)` by Euler's pentagonal-number recurrence
/// `p(n) = sum_{k>=1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_count(n: u32) -> BigUint {
    partition_counts(n).pop().expect("table has n+1 entries")
}

/// `[p(0), p(1), ..., p(n)]`.
pub fn partition_counts(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::one());
    for i in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        table.push(acc);
    }
    table
        .into_iter()
        .map(|v| v.to_biguint().expect("partition counts are nonnegative"))
        .collect()
}

/// Hardy-Ramanujan leading term `exp(pi sqrt(2n/3)) / (4 n sqrt 3)`.
///
/// Evaluated in `f64` and returned as the exact rational value of that
/// double. Diagnostic only; nothing exact depends on it.
pub fn hardy_ramanujan_estimate(n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain(
            "hardy_ramanujan_estimate needs n >= 1".into(),
        ));
    }
    let value = hardy_ramanujan_f64(n);
    BigRational::from_float(value)
        .ok_or_else(|| Error::Domain(format!("estimate overflowed f64 at n = {n}")))
}

pub fn hardy_ramanujan_f64(n: u32) -> f64 {
    let n = n as f64;
    (std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3f64.sqrt())
}
