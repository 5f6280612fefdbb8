//! Integer partitions and the statistics used by the unipotent and
//! class-datum counting formulas.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap for [`enumerate_partitions`].
pub const PARTITION_CAP: u32 = 40;

/// A partition with weakly decreasing positive parts. The empty partition is
/// a valid value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(size^count, ...)` shorthand, e.g. `from_powers(&[(2, 2), (1, 2)])` is `(2,2,1,1)`.
    pub fn from_powers(powers: &[(u32, u32)]) -> Self {
        let mut parts = Vec::new();
        for &(size, count) in powers {
            parts.extend(std::iter::repeat(size).take(count as usize));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// Map part size -> multiplicity, only for sizes that occur.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The conjugate partition: its i-th part is `m_i + m_{i+1} + ...`.
    pub fn dual(&self) -> Partition {
        let largest = self.largest();
        let parts = (1..=largest)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn odd_parts(&self) -> u32 {
        self.parts.iter().filter(|&&p| p % 2 == 1).count() as u32
    }

    /// `n(mu) = sum_i C(mu'_i, 2)`.
    pub fn n_statistic(&self) -> u64 {
        self.dual()
            .parts
            .iter()
            .map(|&c| (c as u64) * (c as u64).saturating_sub(1) / 2)
            .sum()
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            odd_parts: self.odd_parts(),
            n: self.n_statistic(),
            multiplicities: self.multiplicities(),
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Malformed("partition parts must be positive".into()));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Malformed("partition parts must be descending".into()));
        }
        Ok(Partition { parts })
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u32,
    pub odd_parts: u32,
    pub n: u64,
    pub multiplicities: BTreeMap<u32, u32>,
}

/// All partitions of `n`, largest-first (reverse lexicographic).
pub fn enumerate_partitions(n: u32) -> Result<Vec<Partition>> {
    enumerate_partitions_capped(n, PARTITION_CAP)
}

pub fn enumerate_partitions_capped(n: u32, cap: u32) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "partition size",
            value: n as u128,
            cap: cap as u128,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which bilinear-form family a signed partition belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormFamily {
    Symplectic,
    Orthogonal,
}

impl FormFamily {
    /// Part sizes that carry a sign: even sizes for symplectic data, odd
    /// sizes for orthogonal data.
    pub fn is_signed_size(self, size: u32) -> bool {
        match self {
            FormFamily::Symplectic => size % 2 == 0,
            FormFamily::Orthogonal => size % 2 == 1,
        }
    }
}

/// A partition together with a sign for each part size that requires one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct SignedPartition {
    pub base: Partition,
    #[serde(default)]
    pub signs: BTreeMap<u32, Sign>,
}

impl SignedPartition {
    pub fn new(base: Partition, signs: BTreeMap<u32, Sign>) -> Self {
        SignedPartition { base, signs }
    }

    pub fn unsigned(base: Partition) -> Self {
        SignedPartition {
            base,
            signs: BTreeMap::new(),
        }
    }

    /// All sign decorations of `base` that the family requires.
    pub fn all_signings(base: &Partition, family: FormFamily) -> Vec<SignedPartition> {
        let sizes: Vec<u32> = base
            .multiplicities()
            .keys()
            .copied()
            .filter(|&s| family.is_signed_size(s))
            .collect();
        let mut out = Vec::with_capacity(1 << sizes.len());
        for mask in 0u32..(1 << sizes.len()) {
            let signs = sizes
                .iter()
                .enumerate()
                .map(|(bit, &s)| {
                    let sign = if mask & (1 << bit) == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                    (s, sign)
                })
                .collect();
            out.push(SignedPartition::new(base.clone(), signs));
        }
        out
    }
}

/// Multiplicity-parity and sign-coverage check for a signed partition.
///
/// Symplectic: odd parts have even multiplicity, signs on exactly the even
/// sizes present. Orthogonal: even parts have even multiplicity, signs on
/// exactly the odd sizes present.
pub fn validate_signed(family: FormFamily, sp: &SignedPartition) -> bool {
    let mult = sp.base.multiplicities();
    let parity_ok = mult
        .iter()
        .all(|(&size, &count)| family.is_signed_size(size) || count % 2 == 0);
    let required: Vec<u32> = mult
        .keys()
        .copied()
        .filter(|&s| family.is_signed_size(s))
        .collect();
    let given: Vec<u32> = sp.signs.keys().copied().collect();
    parity_ok && required == given
}
