//! The XX0 chain on `M + 1` periodic sites in the sector with `N` down spins.
//!
//! Basis states are strict partitions `mu` listing the down-spin sites in
//! descending order; the basis is ordered lexicographically descending. The
//! Hamiltonian is `H = (1/2) Hhop + N` where `Hhop = -sum_k (s-_k s+_(k+1) +
//! s+_k s-_(k+1))` runs over the `M + 1` bonds `(k, k+1 mod M+1)`. On the
//! two-site ring both bonds join sites 0 and 1, so hopping is doubled; the
//! hopping matrix uses the same bond list and stays consistent with it.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, ComplexMatrix, IntMatrix, RealMatrix, C64};
use crate::partition::{binomial_u128, enumerate_boxed_partitions, mu_to_lambda, Partition, StrictPartition};
use crate::symmetric::alternant;
use crate::Limits;

/// Ring length `M + 1` and number of down spins `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChainGeometry {
    m: usize,
    n_down: usize,
}

impl ChainGeometry {
    pub fn new(m: usize, n_down: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("the chain needs at least two sites (M >= 1)"));
        }
        if n_down > m + 1 {
            return Err(Error::invalid(format!("need N <= M+1, got N={n_down} M={m}")));
        }
        Ok(ChainGeometry { m, n_down })
    }

    /// Largest site index.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sites(&self) -> usize {
        self.m + 1
    }

    pub fn n_down(&self) -> usize {
        self.n_down
    }

    /// `K = M - N + 1`, the width of the partition box.
    pub fn k_cap(&self) -> usize {
        self.m + 1 - self.n_down
    }

    /// `C(M+1, N)`.
    pub fn sector_dimension(&self) -> u128 {
        binomial_u128(self.m + 1, self.n_down)
    }

    pub fn with_n_down(&self, n_down: usize) -> Result<Self> {
        ChainGeometry::new(self.m, n_down)
    }

    /// Reject a ferromagnetic string longer than `K`.
    pub fn check_string(&self, n: usize) -> Result<()> {
        if n > self.k_cap() {
            return Err(Error::invalid(format!("string length n={n} exceeds K={}", self.k_cap())));
        }
        Ok(())
    }

    /// Check that `sites` has `N` entries, each on the ring.
    pub fn check_endpoints(&self, sites: &[usize]) -> Result<()> {
        if sites.len() != self.n_down {
            return Err(Error::invalid(format!(
                "expected {} endpoints, got {}",
                self.n_down,
                sites.len()
            )));
        }
        if let Some(&s) = sites.iter().find(|&&s| s > self.m) {
            return Err(Error::invalid(format!("endpoint {s} outside 0..={}", self.m)));
        }
        Ok(())
    }
}

impl Serialize for ChainGeometry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChainGeometry", 3)?;
        st.serialize_field("M", &self.m)?;
        st.serialize_field("N", &self.n_down)?;
        st.serialize_field("K", &self.k_cap())?;
        st.end()
    }
}

/// Adjacency matrix of the ring, optionally with a sign on the bond `(M, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HoppingMatrix {
    sites: usize,
    boundary_sign: i64,
}

impl HoppingMatrix {
    pub fn periodic(m: usize) -> Self {
        HoppingMatrix {
            sites: m + 1,
            boundary_sign: 1,
        }
    }

    /// Boundary bond weighted by `(-1)^(N-1)`. Its one-particle propagator
    /// is the entry of the determinant formula for `N` hard-core walkers.
    pub fn twisted(m: usize, n_down: usize) -> Self {
        HoppingMatrix {
            sites: m + 1,
            boundary_sign: if n_down % 2 == 1 || n_down == 0 { 1 } else { -1 },
        }
    }

    pub fn size(&self) -> usize {
        self.sites
    }

    pub fn boundary_sign(&self) -> i64 {
        self.boundary_sign
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        let d = r.abs_diff(c);
        let mut v = 0;
        if d == 1 {
            v += 1;
        }
        if d == self.sites - 1 {
            v += self.boundary_sign;
        }
        v
    }

    pub fn exact(&self) -> IntMatrix {
        IntMatrix::from_fn(self.sites, |r, c| BigInt::from(self.entry(r, c)))
    }

    pub fn real(&self) -> RealMatrix {
        RealMatrix::from_fn(self.sites, self.sites, |r, c| self.entry(r, c) as f64)
    }

    pub fn complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.sites, self.sites, |r, c| C64::new(self.entry(r, c) as f64, 0.0))
    }
}

/// `Delta^K` in exact arithmetic; `(Delta^K)_(jm)` counts `K`-step walks.
pub fn hopping_power(geometry: &ChainGeometry, k: u32) -> IntMatrix {
    HoppingMatrix::periodic(geometry.m).exact().pow(k)
}

/// All `n`-subsets of `0..sites`, each listed descending, in descending
/// lexicographic order.
pub fn descending_subsets(sites: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if n > sites {
        return Vec::new();
    }
    enumerate_boxed_partitions(n, sites - n)
        .expect("n >= 1")
        .map(|lambda| lambda.parts().iter().enumerate().map(|(i, &p)| p + n - 1 - i).collect())
        .collect()
}

/// The sector basis with a reverse index.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    geometry: ChainGeometry,
    states: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SectorBasis {
    pub fn new(geometry: &ChainGeometry, limits: &Limits) -> Result<Self> {
        limits.check_enumeration("sector basis", geometry.sector_dimension())?;
        let states = descending_subsets(geometry.sites(), geometry.n_down);
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(SectorBasis {
            geometry: *geometry,
            states,
            index,
        })
    }

    pub fn geometry(&self) -> &ChainGeometry {
        &self.geometry
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Down-spin sites of every basis state, descending.
    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    pub fn index_of(&self, mu: &[usize]) -> Option<usize> {
        self.index.get(mu).copied()
    }

    pub fn strict_partition(&self, i: usize) -> StrictPartition {
        StrictPartition::new(self.states[i].clone()).expect("basis states are strictly decreasing")
    }

    /// `lambda = mu - delta_N` of basis state `i`.
    pub fn shape(&self, i: usize) -> Partition {
        if self.geometry.n_down == 0 {
            return Partition::new(Vec::new()).expect("empty partition");
        }
        mu_to_lambda(&self.strict_partition(i)).expect("valid basis state")
    }
}

/// Dense matrix of `H` in the sector basis.
pub fn build_sector_hamiltonian(geometry: &ChainGeometry, limits: &Limits) -> Result<RealMatrix> {
    let basis = SectorBasis::new(geometry, limits)?;
    sector_hamiltonian(&basis, limits)
}

pub fn sector_hamiltonian(basis: &SectorBasis, limits: &Limits) -> Result<RealMatrix> {
    let dim = basis.len();
    if dim > limits.sector_dimension {
        return Err(Error::CapExceeded {
            what: "sector dimension",
            size: dim as u128,
            cap: limits.sector_dimension as u128,
        });
    }
    let sites = basis.geometry.sites();
    let n = basis.geometry.n_down as f64;
    let mut h = RealMatrix::zeros(dim, dim);
    for (col, state) in basis.states.iter().enumerate() {
        h[(col, col)] += n;
        for bond in 0..sites {
            let (a, b) = (bond, (bond + 1) % sites);
            let (from, to) = match (state.contains(&a), state.contains(&b)) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            let mut next: Vec<usize> = state.iter().map(|&s| if s == from { to } else { s }).collect();
            next.sort_unstable_by(|x, y| y.cmp(x));
            let row = basis
                .index_of(&next)
                .expect("hopping keeps the number of down spins, so the image stays in the sector");
            h[(row, col)] -= 0.5;
        }
    }
    Ok(h)
}

/// Quantum numbers `I_j` in `0..=M` and the momenta
/// `theta_j = 2 pi / (M+1) (I_j - (N-1)/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheMomenta {
    geometry: ChainGeometry,
    quantum_numbers: Vec<usize>,
}

impl BetheMomenta {
    pub fn new(geometry: &ChainGeometry, mut quantum_numbers: Vec<usize>) -> Result<Self> {
        geometry.check_endpoints(&quantum_numbers)?;
        quantum_numbers.sort_unstable_by(|a, b| b.cmp(a));
        if quantum_numbers.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated quantum number in {quantum_numbers:?}")));
        }
        Ok(BetheMomenta {
            geometry: *geometry,
            quantum_numbers,
        })
    }

    pub fn geometry(&self) -> &ChainGeometry {
        &self.geometry
    }

    pub fn quantum_numbers(&self) -> &[usize] {
        &self.quantum_numbers
    }

    /// `2 I_j - (N - 1)`: the shifted quantum numbers, doubled so that the
    /// half-integers of even `N` stay exact.
    pub fn doubled_shifted(&self) -> Vec<i64> {
        let n = self.geometry.n_down as i64;
        self.quantum_numbers.iter().map(|&s| 2 * s as i64 - (n - 1)).collect()
    }

    pub fn theta(&self) -> Vec<f64> {
        let step = PI / self.geometry.sites() as f64;
        self.doubled_shifted().iter().map(|&d| step * d as f64).collect()
    }

    /// The points `e^(i theta_j)`.
    pub fn points(&self) -> Vec<C64> {
        self.theta().iter().map(|&t| C64::from_polar(1.0, t)).collect()
    }

    pub fn cos_sum(&self) -> f64 {
        self.theta().iter().map(|t| t.cos()).sum()
    }

    /// `E = N - sum cos theta_j`.
    pub fn energy(&self) -> f64 {
        self.geometry.n_down as f64 - self.cos_sum()
    }

    /// `max_j |e^(i (M+1) theta_j) - (-1)^(N-1)|`.
    pub fn bethe_residual(&self) -> f64 {
        let target = if self.geometry.n_down % 2 == 1 { 1.0 } else { -1.0 };
        let sites = self.geometry.sites() as f64;
        self.theta()
            .iter()
            .map(|&t| (C64::from_polar(1.0, sites * t) - target).norm())
            .fold(0.0, f64::max)
    }

    /// `det(x_j^(N-k))` at the momentum points.
    pub fn staircase_alternant(&self) -> C64 {
        let delta: Vec<usize> = (0..self.geometry.n_down).rev().collect();
        alternant(&delta, &self.points())
    }
}

impl Serialize for BetheMomenta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BetheMomenta", 3)?;
        st.serialize_field("I", &self.quantum_numbers)?;
        st.serialize_field("theta", &self.theta())?;
        st.serialize_field("energy", &self.energy())?;
        st.end()
    }
}

/// `I_j = N - j`, the momenta packed symmetrically around zero.
pub fn bethe_ground_state(geometry: &ChainGeometry) -> BetheMomenta {
    BetheMomenta {
        geometry: *geometry,
        quantum_numbers: (0..geometry.n_down).rev().collect(),
    }
}

/// `N - sin(pi N / (M+1)) / sin(pi / (M+1))`.
pub fn ground_energy_closed_form(geometry: &ChainGeometry) -> f64 {
    let sites = geometry.sites() as f64;
    let n = geometry.n_down as f64;
    n - (PI * n / sites).sin() / (PI / sites).sin()
}

/// All `C(M+1, N)` momentum sets, in descending lexicographic order of the
/// quantum numbers.
pub fn enumerate_bethe_sets(geometry: &ChainGeometry, limits: &Limits) -> Result<Vec<BetheMomenta>> {
    limits.check_enumeration("Bethe sets", geometry.sector_dimension())?;
    Ok(descending_subsets(geometry.sites(), geometry.n_down)
        .into_iter()
        .map(|quantum_numbers| BetheMomenta {
            geometry: *geometry,
            quantum_numbers,
        })
        .collect())
}

/// Amplitudes on the sector basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorState {
    pub geometry: ChainGeometry,
    pub amplitudes: Vec<C64>,
}

impl SectorState {
    /// `<self|other>`.
    pub fn inner(&self, other: &SectorState) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `||H v - E v|| / ||v||`.
    pub fn eigen_residual(&self, h: &RealMatrix, energy: f64) -> f64 {
        let dim = self.amplitudes.len();
        let mut acc = 0.0;
        for r in 0..dim {
            let mut hv = C64::zero();
            for c in 0..dim {
                hv += self.amplitudes[c] * h[(r, c)];
            }
            acc += (hv - self.amplitudes[r] * energy).norm_sqr();
        }
        (acc / self.norm_squared()).sqrt()
    }
}

/// Amplitude `S_lambda(e^(i theta))` at every `mu = lambda + delta_N`.
pub fn bethe_vector(momenta: &BetheMomenta, limits: &Limits) -> Result<SectorState> {
    let basis = SectorBasis::new(&momenta.geometry, limits)?;
    Ok(bethe_vector_in(&basis, momenta))
}

pub fn bethe_vector_in(basis: &SectorBasis, momenta: &BetheMomenta) -> SectorState {
    let x = momenta.points();
    let denom = momenta.staircase_alternant();
    let amplitudes = if x.is_empty() {
        vec![C64::one()]
    } else {
        basis.states.iter().map(|mu| alternant(mu, &x) / denom).collect()
    };
    SectorState {
        geometry: momenta.geometry,
        amplitudes,
    }
}

/// `sum_lambda |S_lambda(e^(i theta))|^2` over the `N x K` box.
pub fn norm_squared(momenta: &BetheMomenta, limits: &Limits) -> Result<f64> {
    Ok(bethe_vector(momenta, limits)?.norm_squared())
}

/// `(M+1)^N / |V(e^(i theta))|^2`.
pub fn norm_squared_closed_form(momenta: &BetheMomenta) -> f64 {
    (momenta.geometry.sites() as f64).powi(momenta.geometry.n_down as i32) / momenta.staircase_alternant().norm_sqr()
}

/// Eigenvalues (ascending) and eigenvectors of the sector Hamiltonian.
#[derive(Clone, Debug)]
pub struct SectorSpectrum {
    pub basis: SectorBasis,
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
}

impl SectorSpectrum {
    pub fn new(geometry: &ChainGeometry, limits: &Limits) -> Result<Self> {
        let basis = SectorBasis::new(geometry, limits)?;
        let h = sector_hamiltonian(&basis, limits)?;
        let (values, vectors) = symmetric_eigen(&h);
        Ok(SectorSpectrum { basis, values, vectors })
    }

    pub fn ground_energy(&self) -> f64 {
        self.values[0]
    }

    /// `<bra| e^(-t (H - shift)) |ket>`.
    pub fn evolved_overlap(&self, bra: &[C64], ket: &[C64], t: C64, shift: f64) -> C64 {
        let dim = self.values.len();
        let mut total = C64::zero();
        for k in 0..dim {
            let mut p = C64::zero();
            let mut q = C64::zero();
            for i in 0..dim {
                let v = self.vectors[(i, k)];
                p += bra[i] * v;
                q += ket[i] * v;
            }
            total += (-t * (self.values[k] - shift)).exp() * p.conj() * q;
        }
        total
    }
}
