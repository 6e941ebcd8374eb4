//! Generating functions of walks on the ring and the correlation functions
//! of the chain built from them.
//!
//! Time runs as `e^(-(t/2) Hhop)` in the hopping generating functions, so the
//! one-particle propagator is `e^((t/2) Delta)` and a Bethe state contributes
//! `e^(t sum cos phi)`. For the persistence average the Euclidean weight is
//! `e^(-t H)` measured from the ground energy. Routes that can disagree are
//! computed separately and returned side by side.
//!
//! Spectral sums use alternants: with `x = e^(i phi)` on the unit circle,
//! `|V(x)|^2 S_lambda(x) S_nu(1/x) = a_mu(x) conj(a_rho(x))` where
//! `a_mu(x) = det(x_r^(mu_c))`.

use num_bigint::BigUint;
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{
    bethe_ground_state, bethe_vector_in, enumerate_bethe_sets, norm_squared_closed_form, BetheMomenta,
    ChainGeometry, HoppingMatrix, SectorBasis, SectorSpectrum,
};
use crate::error::{Error, Result};
use crate::json::complex_object;
use crate::linalg::{complex_det, complex_solve, ComplexMatrix, C64};
use crate::nests::random_turns_distribution;
use crate::partition::{lambda_to_mu, Partition, StrictPartition};
use crate::symmetric::{
    alternant, biguint_to_f64, cauchy_binet_closed_form, cauchy_binet_sum, schur_count_at_one, schur_eval,
    shifted_box,
};
use crate::Limits;

/// Tail bound below which the exponential series stops.
pub const SERIES_TOLERANCE: f64 = 1e-14;

/// Largest distance of a floating-point path count from an integer,
/// relative to `max(1, |count|)`.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// A value computed along two independent routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualRoute {
    #[serde(with = "complex_object")]
    pub value: C64,
    #[serde(with = "complex_object")]
    pub alternative: C64,
    pub residual: f64,
}

impl DualRoute {
    pub fn new(value: C64, alternative: C64) -> Self {
        DualRoute {
            value,
            alternative,
            residual: relative_residual(value, alternative),
        }
    }
}

/// `|a - b| / max(1, |a|)`.
pub fn relative_residual(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

/// `sum_K (t/2)^K / K! A^K`, stopped once `|t|^K 2^K / K!` falls below
/// [`SERIES_TOLERANCE`] times the size of the partial sum.
pub fn exponential_series(a: &ComplexMatrix, t: C64) -> Result<ComplexMatrix> {
    let n = a.nrows();
    let half = t / 2.0;
    let mut term = ComplexMatrix::identity(n, n);
    let mut acc = term.clone();
    let mut bound = 1.0_f64;
    let mut k = 0u32;
    loop {
        k += 1;
        term = (&term * a) * (half / k as f64);
        acc += &term;
        bound *= 2.0 * t.norm() / k as f64;
        if !bound.is_finite() {
            return Err(Error::NumericBreakdown {
                value: t.norm(),
                residual: f64::INFINITY,
            });
        }
        let scale = acc.iter().map(|v| v.norm()).fold(1.0, f64::max);
        if k as f64 > 2.0 * t.norm() && bound < SERIES_TOLERANCE * scale {
            return Ok(acc);
        }
    }
}

/// `e^((t/2) Delta)` for the periodic or twisted hopping matrix.
pub fn propagator(hopping: &HoppingMatrix, t: C64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::invalid(format!("time {t} is not finite")));
    }
    exponential_series(&hopping.complex(), t)
}

fn check_site(geometry: &ChainGeometry, site: usize) -> Result<()> {
    if site > geometry.m() {
        return Err(Error::invalid(format!("site {site} outside 0..={}", geometry.m())));
    }
    Ok(())
}

/// `G(j, m | t) = (e^((t/2) Delta))_(jm)`.
pub fn one_particle_g(geometry: &ChainGeometry, j: usize, m: usize, t: C64) -> Result<C64> {
    check_site(geometry, j)?;
    check_site(geometry, m)?;
    Ok(propagator(&HoppingMatrix::periodic(geometry.m()), t)?[(j, m)])
}

fn check_radius(z: C64) -> Result<()> {
    if !z.is_finite() || z.norm() >= 0.5 {
        return Err(Error::invalid(format!("need |z| < 1/2, got |z| = {}", z.norm())));
    }
    Ok(())
}

/// `F(j, m | z) = ((1 - z Delta)^(-1))_(jm)` by a linear solve.
pub fn laplace_generating_f(geometry: &ChainGeometry, j: usize, m: usize, z: C64) -> Result<C64> {
    check_site(geometry, j)?;
    check_site(geometry, m)?;
    check_radius(z)?;
    let n = geometry.sites();
    let a = ComplexMatrix::identity(n, n) - HoppingMatrix::periodic(geometry.m()).complex() * z;
    let mut rhs = nalgebra::DVector::<C64>::zeros(n);
    rhs[m] = C64::new(1.0, 0.0);
    let x = complex_solve(a, &rhs).ok_or_else(|| Error::invalid("1 - z Delta is singular"))?;
    Ok(x[j])
}

/// `sum_K z^K (Delta^K)_(jm)` summed term by term.
pub fn laplace_series(geometry: &ChainGeometry, j: usize, m: usize, z: C64) -> Result<C64> {
    check_site(geometry, j)?;
    check_site(geometry, m)?;
    check_radius(z)?;
    let delta = HoppingMatrix::periodic(geometry.m());
    let n = geometry.sites();
    let mut column = vec![0.0f64; n];
    column[m] = 1.0;
    let mut zk = C64::new(1.0, 0.0);
    let mut acc = C64::zero();
    let mut bound = 1.0;
    while bound > 1e-17 {
        acc += zk * column[j];
        column = (0..n)
            .map(|r| (0..n).map(|c| delta.entry(r, c) as f64 * column[c]).sum())
            .collect();
        zk *= z;
        bound *= 2.0 * z.norm();
    }
    Ok(acc)
}

/// Sort endpoints descending; `None` if two coincide.
fn normalise_endpoints(geometry: &ChainGeometry, sites: &[usize]) -> Result<Option<Vec<usize>>> {
    geometry.check_endpoints(sites)?;
    let mut sorted = sites.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    Ok(Some(sorted))
}

/// `det(P(j_r, l_s))` for a one-particle propagator `P`.
fn minor(p: &ComplexMatrix, j: &[usize], l: &[usize]) -> C64 {
    complex_det(j.len(), |r, s| p[(j[r], l[s])])
}

/// `G(j; l | t)` as a determinant of twisted one-particle propagators.
pub fn multi_particle_g_determinant(geometry: &ChainGeometry, j: &[usize], l: &[usize], t: C64) -> Result<C64> {
    let (Some(j), Some(l)) = (normalise_endpoints(geometry, j)?, normalise_endpoints(geometry, l)?) else {
        return Ok(C64::zero());
    };
    let p = propagator(&HoppingMatrix::twisted(geometry.m(), geometry.n_down()), t)?;
    Ok(minor(&p, &j, &l))
}

/// Parallel map over Bethe sets, summed in enumeration order.
fn spectral_sum<F>(sets: &[BetheMomenta], term: F) -> Result<C64>
where
    F: Fn(&BetheMomenta) -> Result<C64> + Sync + Send,
{
    let terms: Vec<C64> = sets.par_iter().map(term).collect::<Result<_>>()?;
    Ok(pairwise_sum(&terms))
}

/// Pairwise summation in a fixed tree, so the result does not depend on how
/// the terms were computed.
fn pairwise_sum(terms: &[C64]) -> C64 {
    if terms.len() <= 8 {
        return terms.iter().sum();
    }
    let (a, b) = terms.split_at(terms.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn sites_power(geometry: &ChainGeometry) -> f64 {
    (geometry.sites() as f64).powi(geometry.n_down() as i32)
}

/// `(1/(M+1)^N) sum_phi w(phi) a_j(e^(i phi)) conj(a_l(e^(i phi)))`.
fn weighted_alternant_sum(
    geometry: &ChainGeometry,
    j: &[usize],
    l: &[usize],
    limits: &Limits,
    weight: impl Fn(&BetheMomenta) -> C64 + Sync + Send,
) -> Result<C64> {
    let sets = enumerate_bethe_sets(geometry, limits)?;
    let total = spectral_sum(&sets, |b| {
        let x = b.points();
        Ok(weight(b) * alternant(j, &x) * alternant(l, &x).conj())
    })?;
    Ok(total / sites_power(geometry))
}

/// `G(j; l | t)` as a sum over Bethe sets weighted by `e^(t sum cos phi)`.
pub fn multi_particle_g_spectral(
    geometry: &ChainGeometry,
    j: &[usize],
    l: &[usize],
    t: C64,
    limits: &Limits,
) -> Result<C64> {
    let (Some(j), Some(l)) = (normalise_endpoints(geometry, j)?, normalise_endpoints(geometry, l)?) else {
        return Ok(C64::zero());
    };
    weighted_alternant_sum(geometry, &j, &l, limits, |b| (t * b.cos_sum()).exp())
}

/// Both routes for `G(j; l | t)`; `value` is the determinant.
pub fn multi_particle_g(geometry: &ChainGeometry, j: &[usize], l: &[usize], t: C64, limits: &Limits) -> Result<DualRoute> {
    Ok(DualRoute::new(
        multi_particle_g_determinant(geometry, j, l, t)?,
        multi_particle_g_spectral(geometry, j, l, t, limits)?,
    ))
}

/// The trigonometric sum `(1/(M+1)^N) sum (2 sum cos phi)^K a_j conj(a_l)`.
pub fn trig_path_sum(geometry: &ChainGeometry, j: &[usize], l: &[usize], k: u32, limits: &Limits) -> Result<C64> {
    let (Some(j), Some(l)) = (normalise_endpoints(geometry, j)?, normalise_endpoints(geometry, l)?) else {
        return Ok(C64::zero());
    };
    weighted_alternant_sum(geometry, &j, &l, limits, |b| C64::new((2.0 * b.cos_sum()).powi(k as i32), 0.0))
}

/// Round a sum that should be a non-negative integer.
pub fn round_count(value: C64) -> Result<BigUint> {
    let nearest = value.re.round();
    let residual = (value - C64::new(nearest, 0.0)).norm() / nearest.abs().max(1.0);
    if residual >= ROUNDING_TOLERANCE || nearest < 0.0 {
        return Err(Error::NumericBreakdown {
            value: value.re,
            residual,
        });
    }
    BigUint::from_f64(nearest).ok_or(Error::NumericBreakdown {
        value: value.re,
        residual,
    })
}

/// Number of `K`-tick random-turns paths between `l` and `j`, from the
/// trigonometric sum.
pub fn trig_path_count(geometry: &ChainGeometry, j: &[usize], l: &[usize], k: u32, limits: &Limits) -> Result<BigUint> {
    round_count(trig_path_sum(geometry, j, l, k, limits)?)
}

/// `P_(K-n)(y, x) = sum S_lambda(x) S_lambda(y)` over `n <= lambda_N`,
/// `lambda_1 <= K`: closed form when both lists are distinct, enumeration
/// otherwise.
pub fn boxed_kernel(y: &[C64], x: &[C64], upper: usize, lower: usize, limits: &Limits) -> Result<C64> {
    match cauchy_binet_closed_form(x, y, upper, lower) {
        Err(Error::CoincidentArguments { .. }) => cauchy_binet_sum(x, y, upper, lower, limits),
        other => other,
    }
}

/// Transition amplitude along its three routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransitionAmplitude {
    /// Double sum over shapes of Schur weights times `G(mu_L; mu_R | t)`.
    #[serde(with = "complex_object")]
    pub combinatorial: C64,
    /// Sum over Bethe sets of boxed Cauchy-Binet kernels.
    #[serde(with = "complex_object")]
    pub spectral: C64,
    /// Sector diagonalisation, when the sector fits under the cap.
    #[serde(with = "crate::json::optional_complex")]
    pub exact_diagonalization: Option<C64>,
    pub spectral_residual: f64,
    pub exact_residual: Option<f64>,
}

fn check_amplitude_args(geometry: &ChainGeometry, u2: &[C64], v2: &[C64], n: usize) -> Result<()> {
    if geometry.n_down() == 0 {
        return Err(Error::invalid("transition amplitude needs N >= 1"));
    }
    for (name, w) in [("u", u2), ("v", v2)] {
        if w.len() != geometry.n_down() {
            return Err(Error::invalid(format!(
                "{name} needs {} entries, got {}",
                geometry.n_down(),
                w.len()
            )));
        }
        if w.iter().any(|z| !z.is_finite() || z.norm() == 0.0) {
            return Err(Error::invalid(format!("{name} entries must be finite and non-zero")));
        }
    }
    geometry.check_string(n)
}

fn shapes_and_sites(geometry: &ChainGeometry, n: usize) -> Result<Vec<(Partition, Vec<usize>)>> {
    shifted_box(geometry.n_down(), geometry.k_cap(), n)?
        .map(|lambda| {
            let mu = lambda_to_mu(&lambda, geometry.n_down())?.parts().to_vec();
            Ok((lambda, mu))
        })
        .collect()
}

fn invert(w: &[C64]) -> Vec<C64> {
    w.iter().map(|z| z.inv()).collect()
}

/// `sum S_(lambda_L)(v^-2) S_(lambda_R)(u^2) G(mu_L; mu_R | t)` over the
/// `n`-shifted box. `u2`, `v2` hold the squares `u_j^2`, `v_j^2`.
pub fn transition_amplitude_combinatorial(
    geometry: &ChainGeometry,
    u2: &[C64],
    v2: &[C64],
    n: usize,
    t: C64,
    limits: &Limits,
) -> Result<C64> {
    check_amplitude_args(geometry, u2, v2, n)?;
    let shapes = shapes_and_sites(geometry, n)?;
    let v_inv = invert(v2);
    let left: Vec<C64> = shapes.iter().map(|(l, _)| schur_eval(l, &v_inv, limits)).collect::<Result<_>>()?;
    let right: Vec<C64> = shapes.iter().map(|(l, _)| schur_eval(l, u2, limits)).collect::<Result<_>>()?;
    let p = propagator(&HoppingMatrix::twisted(geometry.m(), geometry.n_down()), t)?;
    let rows: Vec<C64> = shapes
        .par_iter()
        .zip(&left)
        .map(|((_, mu_l), a)| {
            shapes
                .iter()
                .zip(&right)
                .map(|((_, mu_r), b)| a * b * minor(&p, mu_l, mu_r))
                .sum::<C64>()
        })
        .collect();
    Ok(pairwise_sum(&rows))
}

/// `(1/(M+1)^N) sum_phi e^(t sum cos phi) |V|^2 P(v^-2, e^(i phi)) P(e^(-i phi), u^2)`.
pub fn transition_amplitude_spectral(
    geometry: &ChainGeometry,
    u2: &[C64],
    v2: &[C64],
    n: usize,
    t: C64,
    limits: &Limits,
) -> Result<C64> {
    check_amplitude_args(geometry, u2, v2, n)?;
    let v_inv = invert(v2);
    let k = geometry.k_cap();
    let sets = enumerate_bethe_sets(geometry, limits)?;
    let total = spectral_sum(&sets, |b| {
        let x = b.points();
        let x_bar: Vec<C64> = x.iter().map(|z| z.conj()).collect();
        let left = boxed_kernel(&v_inv, &x, k, n, limits)?;
        let right = boxed_kernel(&x_bar, u2, k, n, limits)?;
        Ok((t * b.cos_sum()).exp() * b.staircase_alternant().norm_sqr() * left * right)
    })?;
    Ok(total / sites_power(geometry))
}

/// Same amplitude from the diagonalised sector Hamiltonian,
/// `<v| e^(-t (H - N)) |u>` restricted to the shifted box.
pub fn transition_amplitude_exact(
    geometry: &ChainGeometry,
    u2: &[C64],
    v2: &[C64],
    n: usize,
    t: C64,
    limits: &Limits,
) -> Result<C64> {
    check_amplitude_args(geometry, u2, v2, n)?;
    let spectrum = SectorSpectrum::new(geometry, limits)?;
    let dim = spectrum.basis.len();
    let v_inv = invert(v2);
    let mut bra = vec![C64::zero(); dim];
    let mut ket = vec![C64::zero(); dim];
    for (lambda, mu) in shapes_and_sites(geometry, n)? {
        let i = spectrum.basis.index_of(&mu).expect("box shapes lie in the sector");
        bra[i] = schur_eval(&lambda, &v_inv, limits)?.conj();
        ket[i] = schur_eval(&lambda, u2, limits)?;
    }
    Ok(spectrum.evolved_overlap(&bra, &ket, t, geometry.n_down() as f64))
}

pub fn transition_amplitude(
    geometry: &ChainGeometry,
    u2: &[C64],
    v2: &[C64],
    n: usize,
    t: C64,
    limits: &Limits,
) -> Result<TransitionAmplitude> {
    let combinatorial = transition_amplitude_combinatorial(geometry, u2, v2, n, t, limits)?;
    let spectral = transition_amplitude_spectral(geometry, u2, v2, n, t, limits)?;
    let exact = match transition_amplitude_exact(geometry, u2, v2, n, t, limits) {
        Ok(v) => Some(v),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e),
    };
    Ok(TransitionAmplitude {
        combinatorial,
        spectral,
        exact_diagonalization: exact,
        spectral_residual: relative_residual(combinatorial, spectral),
        exact_residual: exact.map(|e| relative_residual(combinatorial, e)),
    })
}

/// Outcome of comparing the trigonometric and path-counting sides at
/// `u^2 = v^-2 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualityOfSums {
    pub lhs: f64,
    #[serde(with = "crate::json::biguint_string")]
    pub rhs: BigUint,
    pub residual: f64,
    pub passed: bool,
}

/// `LHS = (1/(M+1)^N) sum_phi (2 sum cos phi)^K |V P(1, e^(i phi))|^2`
/// against `RHS = sum S_(lambda_L)(1) S_(lambda_R)(1) |P_K(mu_R -> mu_L)|`.
pub fn verify_equality_of_sums(geometry: &ChainGeometry, n: usize, k: u32, limits: &Limits) -> Result<EqualityOfSums> {
    if geometry.n_down() == 0 {
        return Err(Error::invalid("equality of sums needs N >= 1"));
    }
    geometry.check_string(n)?;
    let shapes = shapes_and_sites(geometry, n)?;
    let weights: Vec<BigUint> = shapes
        .iter()
        .map(|(lambda, _)| schur_count_at_one(lambda, geometry.n_down()))
        .collect::<Result<_>>()?;

    // V(x) P(1, x) = sum_lambda S_lambda(1) a_mu(x).
    let sets = enumerate_bethe_sets(geometry, limits)?;
    let lhs = spectral_sum(&sets, |b| {
        let x = b.points();
        let vp: C64 = shapes
            .iter()
            .zip(&weights)
            .map(|((_, mu), w)| alternant(mu, &x) * biguint_to_f64(w))
            .sum();
        Ok(C64::new((2.0 * b.cos_sum()).powi(k as i32) * vp.norm_sqr(), 0.0))
    })?
    .re / sites_power(geometry);

    let mut rhs = BigUint::zero();
    for ((_, mu_r), w_r) in shapes.iter().zip(&weights) {
        let start = StrictPartition::new(mu_r.clone())?;
        let layer = random_turns_distribution(&start, k, geometry.m(), limits)?;
        for ((_, mu_l), w_l) in shapes.iter().zip(&weights) {
            if let Some(c) = layer.get(mu_l) {
                rhs += c * w_l * w_r;
            }
        }
    }
    let rhs_f = biguint_to_f64(&rhs);
    let residual = (lhs - rhs_f).abs();
    Ok(EqualityOfSums {
        lhs,
        passed: residual < 1e-6 * rhs_f.max(1.0),
        rhs,
        residual,
    })
}

/// Persistence of a ferromagnetic string of length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Persistence {
    #[serde(with = "complex_object")]
    pub spectral: C64,
    #[serde(with = "crate::json::optional_complex")]
    pub exact_diagonalization: Option<C64>,
    pub residual: Option<f64>,
}

fn check_persistence(geometry: &ChainGeometry, n: usize, t: C64) -> Result<()> {
    if geometry.n_down() == 0 || geometry.n_down() > geometry.m() {
        return Err(Error::invalid(format!(
            "persistence needs 1 <= N <= M, got N={} M={}",
            geometry.n_down(),
            geometry.m()
        )));
    }
    if !t.is_finite() {
        return Err(Error::invalid(format!("time {t} is not finite")));
    }
    geometry.check_string(n)
}

/// `(1/(N_g^2 (M+1)^N)) sum_theta e^(-t (E - E_g)) |V(e^(i theta)) P_(K-n)(e^(-i theta), e^(i theta_g))|^2`.
pub fn persistence_spectral(geometry: &ChainGeometry, n: usize, t: C64, limits: &Limits) -> Result<C64> {
    check_persistence(geometry, n, t)?;
    let ground = bethe_ground_state(geometry);
    let y = ground.points();
    let e_g = ground.energy();
    let k = geometry.k_cap();
    let sets = enumerate_bethe_sets(geometry, limits)?;
    let total = spectral_sum(&sets, |b| {
        let x_bar: Vec<C64> = b.points().iter().map(|z| z.conj()).collect();
        let p = boxed_kernel(&x_bar, &y, k, n, limits)?;
        Ok((-t * (b.energy() - e_g)).exp() * b.staircase_alternant().norm_sqr() * p.norm_sqr())
    })?;
    Ok(total / (norm_squared_closed_form(&ground) * sites_power(geometry)))
}

/// `<g| Pi e^(-t H) Pi |g> / <g| e^(-t H) |g>` in the sector basis, where
/// `Pi` keeps basis states with every down spin on a site `>= n`.
pub fn persistence_exact(geometry: &ChainGeometry, n: usize, t: C64, limits: &Limits) -> Result<C64> {
    check_persistence(geometry, n, t)?;
    let spectrum = SectorSpectrum::new(geometry, limits)?;
    let ground = bethe_vector_in(&spectrum.basis, &bethe_ground_state(geometry));
    let projected: Vec<C64> = spectrum
        .basis
        .states()
        .iter()
        .zip(&ground.amplitudes)
        .map(|(mu, a)| if mu.iter().all(|&s| s >= n) { *a } else { C64::zero() })
        .collect();
    let shift = spectrum.ground_energy();
    let num = spectrum.evolved_overlap(&projected, &projected, t, shift);
    let den = spectrum.evolved_overlap(&ground.amplitudes, &ground.amplitudes, t, shift);
    Ok(num / den)
}

pub fn persistence_of_string(geometry: &ChainGeometry, n: usize, t: C64, limits: &Limits) -> Result<Persistence> {
    let spectral = persistence_spectral(geometry, n, t, limits)?;
    let exact = match persistence_exact(geometry, n, t, limits) {
        Ok(v) => Some(v),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e),
    };
    Ok(Persistence {
        spectral,
        exact_diagonalization: exact,
        residual: exact.map(|e| relative_residual(spectral, e)),
    })
}

/// The sector basis of `geometry`, reused by callers that evaluate many
/// correlators on one chain.
pub fn sector_basis(geometry: &ChainGeometry, limits: &Limits) -> Result<SectorBasis> {
    SectorBasis::new(geometry, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::hopping_power;
    use crate::nests::count_random_turns_paths;
    use num_bigint::BigInt;
    use num_traits::One;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn geo(m: usize, n: usize) -> ChainGeometry {
        ChainGeometry::new(m, n).unwrap()
    }

    fn re(t: f64) -> C64 {
        C64::new(t, 0.0)
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        let g = geo(4, 1);
        for j in 0..5 {
            for m in 0..5 {
                let v = one_particle_g(&g, j, m, C64::zero()).unwrap();
                assert_eq!(v, if j == m { C64::one() } else { C64::zero() });
            }
        }
    }

    #[test]
    fn series_coefficients_are_hopping_powers() {
        // Taylor coefficients recovered by contour sampling of G(t).
        let g = geo(3, 1);
        let samples = 64;
        let r = 1.0;
        for k in 0..6u32 {
            let coeff: C64 = (0..samples)
                .map(|s| {
                    let w = C64::from_polar(r, 2.0 * std::f64::consts::PI * s as f64 / samples as f64);
                    one_particle_g(&g, 1, 1, w * 2.0).unwrap() / w.powu(k)
                })
                .sum::<C64>()
                / samples as f64;
            let factorial: f64 = (1..=k).map(f64::from).product();
            let expected = hopping_power(&g, k).get(1, 1).clone();
            let expected: f64 = num_traits::ToPrimitive::to_f64(&expected).unwrap();
            assert!((coeff * factorial - expected).norm() < 1e-9, "K={k}");
        }
        assert_eq!(hopping_power(&g, 2).get(1, 1), &BigInt::from(2));
    }

    #[test]
    fn difference_differential_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let m = rng.gen_range(2..7);
            let g = geo(m, 1);
            let t = rng.gen_range(0.0..2.0);
            let j = rng.gen_range(0..=m);
            let l = rng.gen_range(0..=m);
            let h = 1e-5;
            let derivative = (one_particle_g(&g, j, l, re(t + h)).unwrap() - one_particle_g(&g, j, l, re(t - h)).unwrap())
                / (2.0 * h);
            let sites = m + 1;
            let rhs = (one_particle_g(&g, j, (l + m) % sites, re(t)).unwrap()
                + one_particle_g(&g, j, (l + 1) % sites, re(t)).unwrap())
                / 2.0;
            assert!((derivative - rhs).norm() < 1e-8);
        }
    }

    #[test]
    fn laplace_routes_agree() {
        let g = geo(3, 1);
        for z in [C64::zero(), re(0.1), C64::new(-0.2, 0.3), re(0.45)] {
            for j in 0..4 {
                let a = laplace_generating_f(&g, j, 0, z).unwrap();
                let b = laplace_series(&g, j, 0, z).unwrap();
                assert!((a - b).norm() < 1e-10, "z={z}");
            }
        }
        assert_eq!(laplace_generating_f(&g, 2, 2, C64::zero()).unwrap(), C64::one());
        assert!(laplace_generating_f(&g, 0, 0, re(0.5)).is_err());
        // Slope at the origin is Delta_jm.
        let eps = 1e-7;
        let slope = laplace_generating_f(&g, 0, 1, re(eps)).unwrap() / eps;
        assert!((slope - re(1.0)).norm() < 1e-6);
    }

    #[test]
    fn laplace_transform_of_the_exponential_generating_function() {
        // F(z) = int_0^inf e^(-s) G(2 z s) ds, by composite Simpson on [0, 80].
        let g = geo(4, 1);
        let z = 0.15;
        let steps = 8000;
        let h = 80.0 / steps as f64;
        let mut acc = C64::zero();
        for i in 0..=steps {
            let s = i as f64 * h;
            let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += one_particle_g(&g, 1, 3, re(2.0 * z * s)).unwrap() * ((-s).exp() * w);
        }
        acc *= h / 3.0;
        let f = laplace_generating_f(&g, 1, 3, re(z)).unwrap();
        assert!((acc - f).norm() < 1e-8, "{acc} vs {f}");
    }

    #[test]
    fn multi_particle_initial_condition() {
        let g = geo(4, 2);
        let limits = Limits::default();
        for j in [[4, 2], [3, 0], [1, 0]] {
            for l in [[4, 2], [3, 0], [1, 0]] {
                let v = multi_particle_g(&g, &j, &l, C64::zero(), &limits).unwrap();
                let expected = if j == l { 1.0 } else { 0.0 };
                assert!((v.value - re(expected)).norm() < 1e-12);
                assert!((v.alternative - re(expected)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn multi_particle_routes_agree() {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n) in [(1, 2), (2, 2), (3, 2), (4, 3), (5, 3), (5, 2), (6, 3)] {
            let g = geo(m, n);
            for _ in 0..5 {
                let t = re(rng.gen_range(0.0..1.0));
                let mut j = rand::seq::index::sample(&mut rng, m + 1, n).into_vec();
                let l = rand::seq::index::sample(&mut rng, m + 1, n).into_vec();
                j.reverse();
                let v = multi_particle_g(&g, &j, &l, t, &limits).unwrap();
                assert!(v.residual < 1e-9, "M={m} N={n} {j:?} {l:?}: {v:?}");
            }
        }
    }

    #[test]
    fn one_walker_reduces_to_propagator() {
        let g = geo(5, 1);
        let limits = Limits::default();
        let v = multi_particle_g(&g, &[4], &[1], re(0.7), &limits).unwrap();
        assert!((v.value - one_particle_g(&g, 4, 1, re(0.7)).unwrap()).norm() < 1e-14);
        assert!(v.residual < 1e-12);
    }

    #[test]
    fn coincident_endpoints_vanish() {
        let g = geo(4, 2);
        let limits = Limits::default();
        let v = multi_particle_g(&g, &[2, 2], &[3, 1], re(0.4), &limits).unwrap();
        assert_eq!((v.value, v.alternative), (C64::zero(), C64::zero()));
        assert_eq!(trig_path_count(&g, &[1, 3], &[0, 0], 4, &limits).unwrap(), BigUint::zero());
    }

    #[test]
    fn multi_particle_matches_sector_evolution() {
        let limits = Limits::default();
        let g = geo(5, 3);
        let spectrum = SectorSpectrum::new(&g, &limits).unwrap();
        let basis = &spectrum.basis;
        let t = re(0.8);
        for a in 0..basis.len() {
            for b in [0, 3, 7] {
                let mut bra = vec![C64::zero(); basis.len()];
                let mut ket = vec![C64::zero(); basis.len()];
                bra[a] = C64::one();
                ket[b] = C64::one();
                let ed = spectrum.evolved_overlap(&bra, &ket, t, g.n_down() as f64);
                let det = multi_particle_g_determinant(&g, &basis.states()[a], &basis.states()[b], t).unwrap();
                assert!((ed - det).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn trig_counts_match_walkers() {
        let limits = Limits::default();
        for (m, n) in [(1, 1), (1, 2), (2, 2), (4, 2), (5, 3), (6, 3)] {
            let g = geo(m, n);
            let basis = SectorBasis::new(&g, &limits).unwrap();
            for k in 0..=8u32 {
                for l in basis.states() {
                    let start = StrictPartition::new(l.clone()).unwrap();
                    let layer = random_turns_distribution(&start, k, m, &limits).unwrap();
                    for j in basis.states().iter().step_by(2) {
                        let trig = trig_path_count(&g, j, l, k, &limits).unwrap();
                        assert_eq!(trig, layer.get(j).cloned().unwrap_or_default(), "M={m} N={n} K={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn trig_examples() {
        let limits = Limits::default();
        let g = geo(4, 2);
        assert_eq!(trig_path_count(&g, &[1, 0], &[1, 0], 0, &limits).unwrap(), BigUint::one());
        let dp = count_random_turns_paths(
            &StrictPartition::new(vec![1, 0]).unwrap(),
            &StrictPartition::new(vec![1, 0]).unwrap(),
            4,
            4,
            &limits,
        )
        .unwrap();
        assert_eq!(trig_path_count(&g, &[1, 0], &[1, 0], 4, &limits).unwrap(), dp);
    }

    #[test]
    fn rounding_rejects_non_integers() {
        assert_eq!(round_count(re(41.9999999999)).unwrap(), BigUint::from(42u32));
        assert!(matches!(round_count(re(3.4)), Err(Error::NumericBreakdown { .. })));
        assert!(matches!(round_count(C64::new(3.0, 0.1)), Err(Error::NumericBreakdown { .. })));
        assert!(matches!(round_count(re(-2.0)), Err(Error::NumericBreakdown { .. })));
    }

    fn random_unit_free(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
        (0..n)
            .map(|_| C64::from_polar(rng.gen_range(0.6..1.4), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect()
    }

    #[test]
    fn transition_amplitude_routes_agree() {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (m, n_down) in [(2, 1), (3, 2), (4, 2), (5, 3), (6, 2)] {
            let g = geo(m, n_down);
            for n in 0..=g.k_cap() {
                let u2 = random_unit_free(&mut rng, n_down);
                let v2 = random_unit_free(&mut rng, n_down);
                let t = re(rng.gen_range(0.0..1.0));
                let a = transition_amplitude(&g, &u2, &v2, n, t, &limits).unwrap();
                assert!(a.spectral_residual < 1e-8, "M={m} N={n_down} n={n}: {a:?}");
                assert!(a.exact_residual.unwrap() < 1e-8, "M={m} N={n_down} n={n}: {a:?}");
            }
        }
    }

    #[test]
    fn transition_amplitude_single_walker_by_hand() {
        // N = 1, M = 2, n = 0: sum_(a,b) v^(-2a) u^(2b) G(a, b | t).
        let limits = Limits::default();
        let g = geo(2, 1);
        let (u, v, t) = (C64::new(0.7, 0.2), C64::new(-0.4, 1.1), re(0.3));
        let mut expected = C64::zero();
        for a in 0..3u32 {
            for b in 0..3u32 {
                expected += v.inv().powu(a) * u.powu(b) * one_particle_g(&g, a as usize, b as usize, t).unwrap();
            }
        }
        let got = transition_amplitude(&g, &[u], &[v], 0, t, &limits).unwrap();
        assert!((got.combinatorial - expected).norm() < 1e-12);
        assert!((got.spectral - expected).norm() < 1e-10);
    }

    #[test]
    fn transition_amplitude_on_ground_state_is_the_norm() {
        let limits = Limits::default();
        let g = geo(5, 2);
        let ground = bethe_ground_state(&g);
        let x = ground.points();
        let a = transition_amplitude(&g, &x, &x, 0, C64::zero(), &limits).unwrap();
        let norm = crate::chain::norm_squared(&ground, &limits).unwrap();
        assert!((a.combinatorial - re(norm)).norm() < 1e-10 * norm);
        assert!(a.spectral_residual < 1e-9);
    }

    #[test]
    fn transition_amplitude_taylor_coefficients_count_paths() {
        // At u^2 = v^-2 = 1 the K-th coefficient in t/2 of the amplitude,
        // times K!, is the weighted path count.
        let limits = Limits::default();
        let g = geo(4, 2);
        let ones = vec![C64::one(); 2];
        for n in 0..=2 {
            let samples = 48;
            for k in 0..5u32 {
                let coeff: C64 = (0..samples)
                    .map(|s| {
                        let w = C64::from_polar(1.0, std::f64::consts::TAU * s as f64 / samples as f64);
                        transition_amplitude_spectral(&g, &ones, &ones, n, w * 2.0, &limits).unwrap() / w.powu(k)
                    })
                    .sum::<C64>()
                    / samples as f64;
                let factorial: f64 = (1..=k).map(f64::from).product();
                let report = verify_equality_of_sums(&g, n, k, &limits).unwrap();
                assert!((coeff * factorial - re(biguint_to_f64(&report.rhs))).norm() < 1e-6, "n={n} K={k}");
            }
        }
    }

    #[test]
    fn equality_of_sums_examples() {
        let limits = Limits::default();
        let r = verify_equality_of_sums(&geo(2, 1), 0, 2, &limits).unwrap();
        assert!(r.passed);
        // N=1, M=2: every site starts four 2-step walks.
        assert_eq!(r.rhs, BigUint::from(6u32 + 6));
        let r = verify_equality_of_sums(&geo(4, 2), 1, 4, &limits).unwrap();
        assert!(r.passed, "{r:?}");
        let g = geo(5, 2);
        for n in 0..=g.k_cap() {
            let r = verify_equality_of_sums(&g, n, 0, &limits).unwrap();
            let squares: BigUint = shifted_box(2, g.k_cap(), n)
                .unwrap()
                .map(|l| {
                    let c = schur_count_at_one(&l, 2).unwrap();
                    &c * &c
                })
                .sum();
            assert_eq!(r.rhs, squares);
            assert!(r.passed);
        }
    }

    #[test]
    fn persistence_without_string_is_one() {
        let limits = Limits::default();
        for (m, n_down) in [(3, 1), (4, 2), (6, 2), (6, 3)] {
            let g = geo(m, n_down);
            for t in [0.0, 0.5, 1.0, 3.0] {
                let p = persistence_of_string(&g, 0, re(t), &limits).unwrap();
                assert!((p.spectral - C64::one()).norm() < 1e-10);
                assert!((p.exact_diagonalization.unwrap() - C64::one()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn persistence_routes_agree() {
        let limits = Limits::default();
        for m in 2..=6 {
            for n_down in 1..=2.min(m) {
                let g = geo(m, n_down);
                for n in 0..=2.min(g.k_cap()) {
                    for t in [0.0, 0.5, 1.0] {
                        let p = persistence_of_string(&g, n, re(t), &limits).unwrap();
                        assert!(p.residual.unwrap() < 1e-8, "M={m} N={n_down} n={n} t={t}: {p:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn persistence_at_time_zero_decreases_with_string_length() {
        let limits = Limits::default();
        let g = geo(6, 3);
        let mut previous = 1.0 + 1e-12;
        for n in 0..=g.k_cap() {
            let p = persistence_spectral(&g, n, C64::zero(), &limits).unwrap();
            assert!(p.im.abs() < 1e-12);
            assert!(p.re > 0.0 && p.re <= previous, "n={n}: {p}");
            previous = p.re + 1e-12;
        }
    }

    #[test]
    fn persistence_near_full_sector() {
        // N = M: one down-spin configuration survives n = K = 1, the one
        // with site 0 up, so T = |S_(1^N)(g)|^2 / N_g^2 at t = 0.
        let limits = Limits::default();
        let g = geo(4, 4);
        let ground = bethe_ground_state(&g);
        let v = crate::chain::bethe_vector(&ground, &limits).unwrap();
        let basis = SectorBasis::new(&g, &limits).unwrap();
        let i = basis.index_of(&[4, 3, 2, 1]).unwrap();
        let expected = v.amplitudes[i].norm_sqr() / v.norm_squared();
        let p = persistence_of_string(&g, 1, C64::zero(), &limits).unwrap();
        assert!((p.spectral - re(expected)).norm() < 1e-12);
    }

    #[test]
    fn invalid_inputs() {
        let limits = Limits::default();
        let g = geo(4, 2);
        assert!(multi_particle_g(&g, &[5, 1], &[1, 0], re(0.1), &limits).is_err());
        assert!(multi_particle_g(&g, &[1], &[1, 0], re(0.1), &limits).is_err());
        assert!(persistence_of_string(&g, 4, re(0.1), &limits).is_err());
        assert!(persistence_of_string(&geo(2, 3), 0, re(0.1), &limits).is_err());
        assert!(one_particle_g(&g, 0, 0, C64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn spectral_sums_do_not_depend_on_thread_count() {
        let limits = Limits::default();
        let g = geo(6, 3);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| multi_particle_g_spectral(&g, &[5, 3, 0], &[6, 2, 1], re(0.6), &limits).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn complex_time_routes_agree(m in 2usize..6, re_t in -1.0f64..1.0, im_t in -3.0f64..3.0, seed in 0u64..1000) {
            let g = geo(m, 2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let j = rand::seq::index::sample(&mut rng, m + 1, 2).into_vec();
            let l = rand::seq::index::sample(&mut rng, m + 1, 2).into_vec();
            let v = multi_particle_g(&g, &j, &l, C64::new(re_t, im_t), &Limits::default()).unwrap();
            prop_assert!(v.residual < 1e-9);
        }
    }
}
