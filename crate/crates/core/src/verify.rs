//! Identity checks with pass/fail reports. Each function evaluates both sides
//! of an identity along independent code paths and records the residual.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::{
    bethe_ground_state, build_sector_hamiltonian, enumerate_bethe_sets, ground_energy_closed_form, hopping_power,
    ChainGeometry, SectorBasis,
};
use crate::correlators::{
    multi_particle_g, persistence_of_string, trig_path_sum, verify_equality_of_sums, ROUNDING_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::json::{big, complex};
use crate::linalg::{symmetric_eigen, C64};
use crate::nests::random_turns_distribution;
use crate::partition::{partitions_up_to_weight, Partition, StrictPartition};
use crate::symmetric::{
    biguint_to_u128, cauchy_binet_closed_form, cauchy_binet_sum, kernel_determinant_q, mac_mahon_count,
    mac_mahon_z, projection_average_closed, projection_average_q, q_binomial_determinant, schur_determinant,
    SchurTableaux,
};
use crate::Limits;

/// One identity evaluated at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub parameters: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityCheck {
    fn new(identity: &str, parameters: Value, lhs: Value, rhs: Value, residual: f64, tolerance: f64) -> Self {
        IdentityCheck {
            identity: identity.to_string(),
            parameters,
            lhs,
            rhs,
            residual,
            tolerance,
            passed: residual.is_finite() && residual < tolerance,
        }
    }

    fn exact(identity: &str, parameters: Value, lhs: Value, rhs: Value) -> Self {
        let residual = if lhs == rhs { 0.0 } else { 1.0 };
        IdentityCheck::new(identity, parameters, lhs, rhs, residual, 0.5)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(checks: Vec<IdentityCheck>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport { checks, passed }
    }

    pub fn merge(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        VerificationReport::new(reports.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

fn relative(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Trigonometric sum against the walker count.
pub fn equality_of_sums(geometry: &ChainGeometry, n: usize, k: u32, limits: &Limits) -> Result<VerificationReport> {
    let r = verify_equality_of_sums(geometry, n, k, limits)?;
    let rhs = r.rhs.to_f64().unwrap_or(f64::INFINITY);
    Ok(VerificationReport::new(vec![IdentityCheck::new(
        "equality-of-sums",
        json!({"M": geometry.m(), "N": geometry.n_down(), "n": n, "K": k}),
        json!(r.lhs),
        big(&r.rhs),
        r.residual / rhs.max(1.0),
        1e-6,
    )]))
}

fn random_point<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Boxed Cauchy-Binet sum by enumeration against its determinant form at
/// random points. The first trial puts `x_1 y_1 = 1` on the removable
/// singularity of the kernel.
pub fn cauchy_binet<R: Rng>(
    n_vars: usize,
    upper: usize,
    lower: usize,
    trials: usize,
    rng: &mut R,
    limits: &Limits,
) -> Result<VerificationReport> {
    if n_vars == 0 {
        return Err(Error::invalid("Cauchy-Binet check needs N >= 1"));
    }
    let mut checks = Vec::with_capacity(trials);
    for trial in 0..trials {
        let x: Vec<C64> = (0..n_vars).map(|_| random_point(rng, 0.5, 1.2)).collect();
        let mut y: Vec<C64> = (0..n_vars).map(|_| random_point(rng, 0.5, 1.2)).collect();
        if trial == 0 {
            y[0] = x[0].inv();
        }
        let lhs = cauchy_binet_sum(&x, &y, upper, lower, limits)?;
        let rhs = cauchy_binet_closed_form(&x, &y, upper, lower)?;
        checks.push(IdentityCheck::new(
            "cauchy-binet",
            json!({"N": n_vars, "L": upper, "n": lower, "trial": trial, "singular_entry": trial == 0}),
            complex(lhs),
            complex(rhs),
            relative(lhs, rhs),
            1e-9,
        ));
    }
    Ok(VerificationReport::new(checks))
}

/// Spectral persistence against the exact-diagonalisation ratio, plus the
/// normalisation at `n = 0`.
pub fn persistence(geometry: &ChainGeometry, n: usize, t: f64, limits: &Limits) -> Result<VerificationReport> {
    let t = C64::new(t, 0.0);
    let params = json!({"M": geometry.m(), "N": geometry.n_down(), "n": n, "t": t.re});
    let p = persistence_of_string(geometry, n, t, limits)?;
    let exact = p.exact_diagonalization.ok_or(Error::CapExceeded {
        what: "sector dimension",
        size: geometry.sector_dimension(),
        cap: limits.sector_dimension as u128,
    })?;
    let mut checks = vec![IdentityCheck::new(
        "persistence",
        params.clone(),
        complex(p.spectral),
        complex(exact),
        p.residual.unwrap_or(f64::INFINITY),
        1e-8,
    )];
    let zero = persistence_of_string(geometry, 0, t, limits)?;
    checks.push(IdentityCheck::new(
        "persistence-normalisation",
        json!({"M": geometry.m(), "N": geometry.n_down(), "n": 0, "t": t.re}),
        complex(zero.spectral),
        complex(C64::new(1.0, 0.0)),
        (zero.spectral - 1.0).norm(),
        1e-10,
    ));
    Ok(VerificationReport::new(checks))
}

/// Plane partitions in an `rows x cols` box with entries at most `k`, by
/// filling cells in reading order.
pub fn brute_force_plane_partitions(rows: usize, cols: usize, k: usize, limits: &Limits) -> Result<BigUint> {
    if rows == cols && rows > 0 {
        limits.check_enumeration("plane partitions", biguint_to_u128(&mac_mahon_count(rows, k)?))?;
    }
    fn fill(cells: &mut [usize], rows: usize, cols: usize, k: usize, at: usize) -> u128 {
        if at == rows * cols {
            return 1;
        }
        let (r, c) = (at / cols, at % cols);
        let mut hi = k;
        if r > 0 {
            hi = hi.min(cells[at - cols]);
        }
        if c > 0 {
            hi = hi.min(cells[at - 1]);
        }
        let mut total = 0;
        for v in 0..=hi {
            cells[at] = v;
            total += fill(cells, rows, cols, k, at + 1);
        }
        total
    }
    let mut cells = vec![0; rows * cols];
    Ok(BigUint::from(fill(&mut cells, rows, cols, k, 0)))
}

/// Product formula against brute force, and `Z_q` at `q = 1`.
pub fn macmahon(n: usize, k: usize, limits: &Limits) -> Result<VerificationReport> {
    let count = mac_mahon_count(n, k)?;
    let brute = brute_force_plane_partitions(n, n, k, limits)?;
    let z_at_one = mac_mahon_z(n, k)?.at_one();
    let params = json!({"N": n, "K": k});
    Ok(VerificationReport::new(vec![
        IdentityCheck::exact("macmahon-count", params.clone(), big(&count), big(&brute)),
        IdentityCheck::exact(
            "macmahon-generating-function",
            params,
            json!(z_at_one.to_string()),
            big(&count),
        ),
    ]))
}

/// `sum S(q) S(q/q)` against the kernel determinant, the q-binomial
/// determinant and the MacMahon product.
pub fn q_identity(n_down: usize, m: usize, n: usize, limits: &Limits) -> Result<VerificationReport> {
    let lhs = projection_average_q(n_down, m, n, limits)?;
    let k = m + 1 - n_down - n;
    let params = json!({"N": n_down, "M": m, "n": n});
    let binomial = q_binomial_determinant(n_down, k)?.shift_up((n * n_down * n_down) as u32);
    let kernel = kernel_determinant_q(n_down, m, n)?;
    let product = projection_average_closed(n_down, m, n)?;
    let text = |p: &crate::QPolynomial| json!(p.to_string());
    Ok(VerificationReport::new(vec![
        IdentityCheck::exact("q-identity-kernel", params.clone(), text(&lhs), text(&kernel)),
        IdentityCheck::exact("q-identity-binomial", params.clone(), text(&lhs), text(&binomial)),
        IdentityCheck::exact("q-identity-macmahon", params, text(&lhs), text(&product)),
    ]))
}

/// Bethe energies against the sector spectrum and the ground-state closed form.
pub fn spectrum(geometry: &ChainGeometry, limits: &Limits) -> Result<VerificationReport> {
    let h = build_sector_hamiltonian(geometry, limits)?;
    let (values, _) = symmetric_eigen(&h);
    let mut bethe: Vec<f64> = enumerate_bethe_sets(geometry, limits)?.iter().map(|b| b.energy()).collect();
    bethe.sort_by(f64::total_cmp);
    let residual = values
        .iter()
        .zip(&bethe)
        .map(|(a, b)| (a - b).abs())
        .fold(if values.len() == bethe.len() { 0.0 } else { f64::INFINITY }, f64::max);
    let params = json!({"M": geometry.m(), "N": geometry.n_down()});
    let mut checks = vec![IdentityCheck::new(
        "bethe-spectrum",
        params.clone(),
        json!(bethe),
        json!(values),
        residual,
        1e-8,
    )];
    if (1..=geometry.m()).contains(&geometry.n_down()) {
        let closed = ground_energy_closed_form(geometry);
        let ground = bethe_ground_state(geometry).energy();
        checks.push(IdentityCheck::new(
            "ground-energy",
            params,
            json!(closed),
            json!(values[0]),
            (closed - values[0]).abs().max((closed - ground).abs()),
            1e-9,
        ));
    }
    Ok(VerificationReport::new(checks))
}

/// Determinant against spectral sum for random endpoints and times in (0, 1).
pub fn proposition<R: Rng>(
    geometry: &ChainGeometry,
    trials: usize,
    rng: &mut R,
    limits: &Limits,
) -> Result<VerificationReport> {
    let sites = geometry.sites();
    let n = geometry.n_down();
    let mut checks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut j = rand::seq::index::sample(rng, sites, n).into_vec();
        let mut l = rand::seq::index::sample(rng, sites, n).into_vec();
        j.sort_unstable_by(|a, b| b.cmp(a));
        l.sort_unstable_by(|a, b| b.cmp(a));
        let t = rng.gen_range(0.0..1.0);
        let v = multi_particle_g(geometry, &j, &l, C64::new(t, 0.0), limits)?;
        checks.push(IdentityCheck::new(
            "proposition",
            json!({"M": geometry.m(), "N": n, "j": j, "l": l, "t": t}),
            complex(v.value),
            complex(v.alternative),
            v.residual,
            1e-9,
        ));
    }
    Ok(VerificationReport::new(checks))
}

/// For every pair of configurations and every `K' <= K`: walker count, the
/// rounded trigonometric sum, and `(Delta^K)_(jl)` when `N = 1`. One check
/// per step count, with the largest rounding residual as its residual.
pub fn path_counts(geometry: &ChainGeometry, k_max: u32, limits: &Limits) -> Result<VerificationReport> {
    let basis = SectorBasis::new(geometry, limits)?;
    let mut checks = Vec::new();
    for k in 0..=k_max {
        let power = (geometry.n_down() == 1).then(|| hopping_power(geometry, k));
        let mut worst = 0.0f64;
        let mut mismatches = 0usize;
        let mut total_dp = BigUint::zero();
        let mut total_trig = BigUint::zero();
        for l in basis.states() {
            let layer = random_turns_distribution(&StrictPartition::new(l.clone())?, k, geometry.m(), limits)?;
            for j in basis.states() {
                let dp = layer.get(j).cloned().unwrap_or_default();
                let sum = trig_path_sum(geometry, j, l, k, limits)?;
                let nearest = sum.re.round();
                worst = worst.max((sum - nearest).norm() / nearest.abs().max(1.0));
                let trig = BigUint::from(nearest.max(0.0) as u128);
                if trig != dp {
                    mismatches += 1;
                }
                if let Some(p) = &power {
                    if p.get(j[0], l[0]) != &num_bigint::BigInt::from(dp.clone()) {
                        mismatches += 1;
                    }
                }
                total_dp += dp;
                total_trig += trig;
            }
        }
        let mut check = IdentityCheck::new(
            "path-counts",
            json!({"M": geometry.m(), "N": geometry.n_down(), "K": k, "mismatches": mismatches}),
            big(&total_trig),
            big(&total_dp),
            worst,
            ROUNDING_TOLERANCE,
        );
        check.passed &= mismatches == 0;
        checks.push(check);
    }
    Ok(VerificationReport::new(checks))
}

/// Alternant ratio against the tableau sum for every shape of weight at
/// most `max_weight` at random complex points.
pub fn schur<R: Rng>(
    n_vars: usize,
    max_weight: usize,
    trials: usize,
    rng: &mut R,
    limits: &Limits,
) -> Result<VerificationReport> {
    let shapes = partitions_up_to_weight(n_vars, max_weight)?;
    let mut checks = Vec::new();
    for lambda in &shapes {
        checks.push(schur_shape(lambda, n_vars, trials, rng, limits)?);
    }
    Ok(VerificationReport::new(checks))
}

/// Dual-oracle check for a single shape; the residual is the worst trial.
pub fn schur_shape<R: Rng>(
    lambda: &Partition,
    n_vars: usize,
    trials: usize,
    rng: &mut R,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let tableaux = SchurTableaux::enumerate(lambda, n_vars, limits)?;
    let mut worst = 0.0f64;
    let mut sample = (C64::zero(), C64::zero());
    for _ in 0..trials {
        let x: Vec<C64> = (0..n_vars).map(|_| random_point(rng, 0.5, 1.5)).collect();
        let det = schur_determinant(lambda, &x)?;
        let tab = tableaux.evaluate(&x)?;
        let r = relative(det, tab);
        if r >= worst {
            worst = r;
            sample = (det, tab);
        }
    }
    Ok(IdentityCheck::new(
        "schur",
        json!({"lambda": lambda, "N": n_vars, "trials": trials}),
        complex(sample.0),
        complex(sample.1),
        worst,
        1e-10,
    ))
}
