//! Integer partitions, the index set of the PBW basis.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition stored as a non-increasing list of positive parts.
///
/// Read as the PBW word `L_{-p_1} L_{-p_2} ... L_{-p_k}` with the largest
/// part leftmost.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The partition `(1^n)`.
    pub fn ones(n: u32) -> Self {
        Partition { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Total `n = sum(parts)`, which is the grade of the PBW monomial.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Leftmost (largest) part and the remaining tail.
    pub fn split_first(&self) -> Option<(u32, Partition)> {
        self.parts.split_first().map(|(&first, rest)| {
            (
                first,
                Partition {
                    parts: rest.to_vec(),
                },
            )
        })
    }

    /// Prepends a part that is at least as large as every existing part.
    pub fn prepend(&self, part: u32) -> Partition {
        debug_assert!(self.parts.first().is_none_or(|&p| p <= part));
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.parts);
        Partition { parts }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        if parts.contains(&0) {
            return Err("partition parts must be positive".into());
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err("partition parts must be non-increasing".into());
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
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let words: Vec<String> = self.parts.iter().map(|p| format!("L(-{p})")).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// All partitions of `n` in reverse-lexicographic order: `[n]` first and
/// `(1^n)` last. `enumerate_partitions(0)` is the single empty partition.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}
