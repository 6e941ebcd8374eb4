//! Integer partitions, strict partitions and the dictionary between
//! spin-down coordinates `mu` and Young diagram shapes `lambda`.
//!
//! For a configuration of `N` down spins at sites `mu_1 > mu_2 > ... > mu_N`
//! the shape is `lambda = mu - delta_N` where `delta_N = (N-1, ..., 1, 0)`.
//! The dictionary is length sensitive, so partitions keep their trailing
//! zeros once padded to `N` rows.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative integers, optionally
/// constrained to fit inside a `rows x width` box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    bound: Option<BoxBound>,
}

/// The rectangle `{width^rows}` a boxed partition must fit into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxBound {
    pub rows: usize,
    pub width: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "partition parts must be weakly decreasing, found {} < {}",
                w[0], w[1]
            )));
        }
        Ok(Partition { parts, bound: None })
    }

    /// The empty partition padded to `rows` zeros.
    pub fn zero(rows: usize) -> Self {
        Partition {
            parts: vec![0; rows],
            bound: None,
        }
    }

    /// The rectangular partition `(width, ..., width)` with `rows` parts.
    pub fn rectangle(rows: usize, width: usize) -> Self {
        Partition {
            parts: vec![width; rows],
            bound: None,
        }
    }

    /// Attach a box bound; fails if the parts do not fit.
    pub fn with_bound(mut self, rows: usize, width: usize) -> Result<Self> {
        if self.parts.len() > rows {
            return Err(Error::invalid(format!(
                "partition has {} parts but the box allows {rows}",
                self.parts.len()
            )));
        }
        if self.parts.first().is_some_and(|&p| p > width) {
            return Err(Error::invalid(format!(
                "largest part {} exceeds box width {width}",
                self.parts[0]
            )));
        }
        self.parts.resize(rows, 0);
        self.bound = Some(BoxBound { rows, width });
        Ok(self)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn bound(&self) -> Option<BoxBound> {
        self.bound
    }

    /// Number of stored parts, including trailing zeros.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of non-zero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    /// `|lambda|`, the number of boxes.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The parts padded with zeros (or stripped of trailing zeros) to
    /// exactly `rows` entries. Fails if a non-zero part would be dropped.
    pub fn padded(&self, rows: usize) -> Result<Vec<usize>> {
        if self.length() > rows {
            return Err(Error::invalid(format!(
                "partition {self} has more than {rows} non-zero parts"
            )));
        }
        let mut parts = self.parts.clone();
        parts.resize(rows, 0);
        Ok(parts)
    }

    /// Add `shift` to each of `rows` parts (the shape `lambda + (shift^rows)`).
    pub fn shifted(&self, rows: usize, shift: usize) -> Result<Partition> {
        let parts = self.padded(rows)?.into_iter().map(|p| p + shift).collect();
        Ok(Partition { parts, bound: None })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A strictly decreasing sequence of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] <= w[1]) {
            return Err(Error::invalid(format!(
                "strict partition parts must be strictly decreasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(StrictPartition { parts })
    }

    /// Sort distinct sites into descending order; repeated sites are an error.
    pub fn from_sites(mut sites: Vec<usize>) -> Result<Self> {
        sites.sort_unstable_by(|a, b| b.cmp(a));
        StrictPartition::new(sites)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.parts.contains(&site)
    }

    pub fn largest(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.parts.last().copied()
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        StrictPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

/// The staircase `delta_N = (N-1, N-2, ..., 1, 0)`.
pub fn staircase(n: usize) -> Result<StrictPartition> {
    if n == 0 {
        return Err(Error::invalid("staircase needs N >= 1"));
    }
    Ok(StrictPartition {
        parts: (0..n).rev().collect(),
    })
}

/// `lambda_j = mu_j - N + j`, with `N` the length of `mu`.
pub fn mu_to_lambda(mu: &StrictPartition) -> Result<Partition> {
    let n = mu.len();
    if n == 0 {
        return Err(Error::invalid("mu must have at least one part"));
    }
    // Strictness gives mu_i >= n - 1 - i, so no part goes negative.
    let parts = mu
        .parts
        .iter()
        .enumerate()
        .map(|(i, &m)| m - (n - 1 - i))
        .collect();
    Ok(Partition { parts, bound: None })
}

/// Inverse of [`mu_to_lambda`]: pad `lambda` to `n` rows and add `delta_N`.
pub fn lambda_to_mu(lambda: &Partition, n: usize) -> Result<StrictPartition> {
    if n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    let parts = lambda
        .padded(n)?
        .into_iter()
        .enumerate()
        .map(|(i, l)| l + (n - 1 - i))
        .collect();
    Ok(StrictPartition { parts })
}

/// All partitions with at most `rows` parts, each at most `width`, in
/// descending lexicographic order. Every item is padded to `rows` parts and
/// carries the box bound.
#[derive(Clone, Debug)]
pub struct BoxedPartitions {
    rows: usize,
    width: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for BoxedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor in descending lex order: lower the last non-zero part and
        // raise everything after it as high as it can go.
        if let Some(i) = current.iter().rposition(|&p| p > 0) {
            let mut succ = current.clone();
            succ[i] -= 1;
            let v = succ[i];
            for p in &mut succ[i + 1..] {
                *p = v;
            }
            self.next = Some(succ);
        }
        Some(Partition {
            parts: current,
            bound: Some(BoxBound {
                rows: self.rows,
                width: self.width,
            }),
        })
    }
}

/// Enumerate `{lambda : lambda ⊆ (width^rows)}`; there are `C(rows + width, rows)`.
pub fn enumerate_boxed_partitions(rows: usize, width: usize) -> Result<BoxedPartitions> {
    if rows == 0 {
        return Err(Error::invalid("a box needs at least one row"));
    }
    Ok(BoxedPartitions {
        rows,
        width,
        next: Some(vec![width; rows]),
    })
}

/// `C(rows + width, rows)` without overflow for desk-scale inputs.
pub fn boxed_partition_count(rows: usize, width: usize) -> u128 {
    binomial_u128(rows + width, rows)
}

pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Partitions with at most `rows` parts and weight at most `max_weight`.
pub fn partitions_up_to_weight(rows: usize, max_weight: usize) -> Result<Vec<Partition>> {
    Ok(enumerate_boxed_partitions(rows, max_weight)?
        .filter(|p| p.weight() <= max_weight)
        .map(|p| Partition {
            parts: p.parts,
            bound: None,
        })
        .collect())
}
