//! Nests of self-avoiding lattice paths and vicious walkers.
//!
//! A semi-standard tableau of shape `lambda` with entries `<= N` is drawn as
//! a nest `C` of `N` paths: path `i` starts at `(i, N - i)`, ends at
//! `(N, lambda_i + N - i)` and takes one north step on the vertical line
//! `x = j` for every entry `j` in row `i`. The conjugate nest `B` records the
//! complementary step counts `M - l_j`. Gluing a `C` nest and a `B` nest of
//! the same shape gives a watermelon.
//!
//! [`count_random_turns_paths`] counts trajectories of vicious walkers on a
//! ring where one walker moves one site per tick.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{binomial_u128, Partition, StrictPartition};
use crate::qpoly::QPolynomial;
use crate::symmetric::{for_each_tableau, schur_count_at_one, shifted_box, tableau_content};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NestKind {
    C,
    B,
}

/// A nest of `N` mutually avoiding lattice paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PathNest {
    pub kind: NestKind,
    pub shape: Partition,
    /// `l_j` for kind `C`, `M - l_j` for kind `B`.
    pub step_counts: Vec<u32>,
    #[serde(with = "crate::json::biguint_string")]
    pub volume: BigUint,
    #[serde(skip)]
    rows: Vec<Vec<u8>>,
}

impl PathNest {
    fn from_tableau(shape: &Partition, rows: &[Vec<u8>], n: usize) -> Self {
        let content = tableau_content(rows, n);
        let volume: u64 = content.iter().enumerate().map(|(j, &l)| (n - 1 - j) as u64 * l as u64).sum();
        PathNest {
            kind: NestKind::C,
            shape: shape.clone(),
            step_counts: content,
            volume: BigUint::from(volume),
            rows: rows.to_vec(),
        }
    }

    /// The conjugate nest of the same tableau inside a strip of height `m`.
    fn conjugate(&self, m: usize) -> Self {
        let counts: Vec<u32> = self.step_counts.iter().map(|&l| m as u32 - l).collect();
        let volume: u64 = counts.iter().enumerate().map(|(j, &b)| j as u64 * b as u64).sum();
        PathNest {
            kind: NestKind::B,
            shape: self.shape.clone(),
            step_counts: counts,
            volume: BigUint::from(volume),
            rows: self.rows.clone(),
        }
    }

    pub fn n_paths(&self) -> usize {
        self.step_counts.len()
    }

    /// Rows of the encoded tableau.
    pub fn tableau(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Vertex sequences of the `C` paths, top row first. Path `i` (1-based)
    /// runs from `(i, N - i)` to `(N, lambda_i + N - i)`.
    pub fn paths(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.n_paths();
        (1..=n)
            .map(|i| {
                let row: &[u8] = self.rows.get(i - 1).map_or(&[], |r| r.as_slice());
                let mut pts = vec![(i, n - i)];
                let (mut x, mut y) = (i, n - i);
                loop {
                    for _ in row.iter().filter(|&&v| v as usize == x) {
                        y += 1;
                        pts.push((x, y));
                    }
                    if x == n {
                        break;
                    }
                    x += 1;
                    pts.push((x, y));
                }
                pts
            })
            .collect()
    }

    /// Volume recomputed from the path geometry: for every unit column
    /// `[x, x+1]` inside path `i`'s rectangle, the number of cells between
    /// the rectangle's floor and the path.
    pub fn volume_from_cells(&self) -> u64 {
        let n = self.n_paths();
        self.paths()
            .iter()
            .enumerate()
            .map(|(idx, path)| {
                let floor = n - (idx + 1);
                path.windows(2)
                    .filter(|w| w[1].0 == w[0].0 + 1)
                    .map(|w| (w[0].1 - floor) as u64)
                    .sum::<u64>()
            })
            .sum()
    }

    /// Whether no two paths share a vertex.
    pub fn is_non_intersecting(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.paths().into_iter().flatten().all(|pt| seen.insert(pt))
    }

    /// ASCII drawing with path `i` marked by the digit `i` (mod 10), north up.
    pub fn render_ascii(&self) -> String {
        let paths = self.paths();
        let n = self.n_paths();
        let height = paths.iter().flatten().map(|p| p.1).max().unwrap_or(0);
        let mut grid = vec![vec!['.'; n + 1]; height + 1];
        for (i, path) in paths.iter().enumerate() {
            let mark = char::from_digit(((i + 1) % 10) as u32, 10).unwrap_or('#');
            for &(x, y) in path {
                grid[y][x] = mark;
            }
        }
        let mut out = String::new();
        for row in grid.iter().rev() {
            let _ = writeln!(out, "{}", row.iter().collect::<String>());
        }
        out
    }
}

fn check_shape(lambda: &Partition, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("a nest needs at least one path"));
    }
    lambda.padded(n).map(|_| ())
}

/// One `C` nest per semi-standard tableau of shape `lambda` with entries `<= n`.
pub fn enumerate_nests(lambda: &Partition, n: usize, limits: &Limits) -> Result<Vec<PathNest>> {
    check_shape(lambda, n)?;
    let shape = Partition::new(lambda.padded(n)?)?;
    let mut out = Vec::new();
    for_each_tableau(lambda, n, limits, |rows| out.push(PathNest::from_tableau(&shape, rows, n)))?;
    Ok(out)
}

/// `sum_C q^(|lambda| + |zeta|_C)`, which equals `S_lambda(q, ..., q^N)`.
pub fn nest_partition_function(lambda: &Partition, n: usize, limits: &Limits) -> Result<QPolynomial> {
    let weight = lambda.weight() as u64;
    let mut p = QPolynomial::zero();
    for nest in enumerate_nests(lambda, n, limits)? {
        let exp = weight + u64::try_from(&nest.volume).unwrap_or(u64::MAX);
        p.add_term(exp as u32, BigInt::one());
    }
    Ok(p)
}

/// Conjugate nests `B` of shape `lambda` in a strip of height `m`.
pub fn enumerate_conjugate_nests(lambda: &Partition, n: usize, m: usize, limits: &Limits) -> Result<Vec<PathNest>> {
    check_shape(lambda, n)?;
    if n > m + 1 || lambda.largest() > m + 1 - n {
        return Err(Error::invalid(format!(
            "shape {lambda} does not fit the chain box {}^{n} for M={m}",
            (m + 1).saturating_sub(n)
        )));
    }
    Ok(enumerate_nests(lambda, n, limits)?.into_iter().map(|c| c.conjugate(m)).collect())
}

/// `sum_B q^(sum_j (j-1)(M - l_j))` divided by `q^((N-1)(MN/2 - |lambda|))`,
/// which equals `S_lambda(1, q, ..., q^(N-1))`.
pub fn conjugate_nest_partition_function(lambda: &Partition, n: usize, m: usize, limits: &Limits) -> Result<QPolynomial> {
    let mut p = QPolynomial::zero();
    for nest in enumerate_conjugate_nests(lambda, n, m, limits)? {
        let exp = u32::try_from(&nest.volume).map_err(|_| Error::invalid("volume overflow"))?;
        p.add_term(exp, BigInt::one());
    }
    let (n, m, w) = (n as i64, m as i64, lambda.weight() as i64);
    // N(N-1) is even, so the division is exact.
    let normalization = (n - 1) * n * m / 2 - (n - 1) * w;
    p.shift(-normalization)
}

/// A `C` nest and a `B` nest of the same shape, joined end to end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Watermelon {
    pub shape: Partition,
    pub left: PathNest,
    pub right: PathNest,
}

/// `sum_lambda S_lambda(1)^2` over `n <= lambda_N`, `lambda_1 <= K`.
pub fn watermelon_count(n_down: usize, m: usize, n: usize) -> Result<BigUint> {
    if n_down == 0 || n_down > m + 1 {
        return Err(Error::invalid(format!("need 1 <= N <= M+1, got N={n_down} M={m}")));
    }
    let k = m + 1 - n_down;
    if n > k {
        return Err(Error::invalid(format!("string length n={n} exceeds K={k}")));
    }
    let mut total = BigUint::zero();
    for lambda in shifted_box(n_down, k, n)? {
        let s = schur_count_at_one(&lambda, n_down)?;
        total += &s * &s;
    }
    Ok(total)
}

/// Every watermelon with `N` paths whose shapes fit the chain box.
pub fn enumerate_watermelons(n_down: usize, m: usize, limits: &Limits) -> Result<Vec<Watermelon>> {
    let total = watermelon_count(n_down, m, 0)?;
    limits.check_enumeration("watermelon enumeration", crate::symmetric::biguint_to_u128(&total))?;
    let k = m + 1 - n_down;
    let mut out = Vec::new();
    for lambda in shifted_box(n_down, k, 0)? {
        let lefts = enumerate_nests(&lambda, n_down, limits)?;
        let rights = enumerate_conjugate_nests(&lambda, n_down, m, limits)?;
        for l in &lefts {
            for r in &rights {
                out.push(Watermelon {
                    shape: lambda.clone(),
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Walker positions on a ring of `ring_size` sites, stored descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WalkerConfiguration {
    pub ring_size: usize,
    pub positions: StrictPartition,
}

impl WalkerConfiguration {
    pub fn new(ring_size: usize, positions: StrictPartition) -> Result<Self> {
        if ring_size < 2 {
            return Err(Error::invalid("a ring needs at least two sites"));
        }
        if positions.largest().is_some_and(|p| p >= ring_size) {
            return Err(Error::invalid(format!("position outside ring of {ring_size} sites: {positions}")));
        }
        Ok(WalkerConfiguration { ring_size, positions })
    }

    /// All configurations reachable in one tick: one walker steps to a
    /// neighbouring empty site. On a two-site ring both directions reach
    /// the same site and are counted separately.
    pub fn moves(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let sites = self.positions.parts();
        let r = self.ring_size;
        (0..sites.len()).flat_map(move |i| {
            [1, r - 1].into_iter().filter_map(move |d| {
                let to = (sites[i] + d) % r;
                if sites.contains(&to) {
                    return None;
                }
                let mut next = sites.to_vec();
                next[i] = to;
                next.sort_unstable_by(|a, b| b.cmp(a));
                Some(next)
            })
        })
    }
}

/// Distribution of walker configurations after `k` ticks from `start`.
pub fn random_turns_distribution(
    start: &StrictPartition,
    k: u32,
    m: usize,
    limits: &Limits,
) -> Result<BTreeMap<Vec<usize>, BigUint>> {
    let ring = m + 1;
    WalkerConfiguration::new(ring, start.clone())?;
    limits.check_enumeration("walker configurations", binomial_u128(ring, start.len()))?;
    let walkers = start.len();
    let mut layer = BTreeMap::new();
    layer.insert(start.parts().to_vec(), BigUint::one());
    for _ in 0..k {
        let mut next: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (cfg, count) in &layer {
            let cfg = WalkerConfiguration {
                ring_size: ring,
                positions: StrictPartition::new(cfg.clone())?,
            };
            for to in cfg.moves() {
                debug_assert_eq!(to.len(), walkers);
                debug_assert!(to.windows(2).all(|w| w[0] > w[1]));
                *next.entry(to).or_default() += count;
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// `|P_K(start -> end)|`, the number of `K`-tick random-turns trajectories.
pub fn count_random_turns_paths(
    start: &StrictPartition,
    end: &StrictPartition,
    k: u32,
    m: usize,
    limits: &Limits,
) -> Result<BigUint> {
    if start.len() != end.len() {
        return Err(Error::invalid(format!(
            "walker counts differ: {} vs {}",
            start.len(),
            end.len()
        )));
    }
    WalkerConfiguration::new(m + 1, end.clone())?;
    let layer = random_turns_distribution(start, k, m, limits)?;
    Ok(layer.get(end.parts()).cloned().unwrap_or_default())
}
