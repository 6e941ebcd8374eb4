use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use xxpaths::chain::{
    bethe_ground_state, enumerate_bethe_sets, ground_energy_closed_form, SectorSpectrum,
};
use xxpaths::correlators::{
    laplace_generating_f, laplace_series, multi_particle_g, one_particle_g, persistence_of_string, relative_residual,
    transition_amplitude, trig_path_count, trig_path_sum,
};
use xxpaths::json::{big, complex};
use xxpaths::nests::{
    conjugate_nest_partition_function, count_random_turns_paths, enumerate_conjugate_nests, enumerate_nests,
    nest_partition_function, random_turns_distribution, watermelon_count,
};
use xxpaths::partition::StrictPartition;
use xxpaths::symmetric::{mac_mahon_count, schur_count_at_one, schur_eval, SchurTableaux};
use xxpaths::verify::{self, brute_force_plane_partitions, VerificationReport};
use xxpaths::{ChainGeometry, Limits, Partition, C64};

use crate::args::*;
use crate::output::{Cell, CliError, Doc, Table};

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(command: &Command, limits: &Limits, tolerance_scale: f64) -> Result<Doc> {
    match command {
        Command::Schur(a) => run_schur(a, limits),
        Command::Paths(p) => run_paths(p, limits),
        Command::ChainSpectrum(g) => run_chain_spectrum(g, limits),
        Command::Correlator(c) => run_correlator(c, limits),
        Command::Verify(v) => run_verify(v, limits, tolerance_scale),
        Command::Sweep(s) => run_sweep(s, limits),
    }
}

fn geometry(g: &GeometryArgs) -> Result<ChainGeometry> {
    Ok(ChainGeometry::new(g.m, g.n_down)?)
}

fn partition(parts: &[usize]) -> Result<Partition> {
    Ok(Partition::new(parts.to_vec())?)
}

fn strict(sites: &[usize]) -> Result<StrictPartition> {
    Ok(StrictPartition::from_sites(sites.to_vec())?)
}

fn joined(sites: &[usize]) -> String {
    sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run_schur(a: &SchurArgs, limits: &Limits) -> Result<Doc> {
    let lambda = partition(&a.lambda)?;
    let mut doc = json!({"lambda": lambda, "N": a.vars});
    if a.at_ones {
        doc["point"] = json!("ones");
        doc["value"] = big(&schur_count_at_one(&lambda, a.vars)?);
    } else if let Some(x) = &a.at {
        if x.len() != a.vars {
            return Err(CliError::Usage(format!("--at has {} values but --vars is {}", x.len(), a.vars)));
        }
        doc["point"] = Value::Array(x.iter().map(|&z| complex(z)).collect());
        doc["value"] = complex(schur_eval(&lambda, x, limits)?);
    } else {
        let tableaux = SchurTableaux::enumerate(&lambda, a.vars, limits)?;
        doc["point"] = json!("q");
        doc["q_point"] = json!(tableaux.q_specialization(1).to_string());
        doc["q_over_q_point"] = json!(tableaux.q_specialization(0).to_string());
    }
    Ok(Doc::value(doc))
}

fn run_paths(p: &PathsCommand, limits: &Limits) -> Result<Doc> {
    match p {
        PathsCommand::Count(a) => {
            let start = strict(&a.start)?;
            let end = strict(&a.end)?;
            let count = count_random_turns_paths(&start, &end, a.k, a.m, limits)?;
            Ok(Doc::value(json!({
                "M": a.m, "start": start, "end": end, "K": a.k, "count": big(&count),
            })))
        }
        PathsCommand::Nests(a) => {
            let lambda = partition(&a.lambda)?;
            let (nests, function) = match (a.conjugate, a.m) {
                (true, Some(m)) => (
                    enumerate_conjugate_nests(&lambda, a.n, m, limits)?,
                    conjugate_nest_partition_function(&lambda, a.n, m, limits)?,
                ),
                _ => (
                    enumerate_nests(&lambda, a.n, limits)?,
                    nest_partition_function(&lambda, a.n, limits)?,
                ),
            };
            let mut table = Table::new(&["kind", "step_counts", "volume"]);
            for nest in &nests {
                table.push(vec![
                    Cell::Text(format!("{:?}", nest.kind)),
                    Cell::Text(nest.step_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
                    Cell::Int(nest.volume.to_string()),
                ]);
            }
            let doc = json!({
                "lambda": lambda,
                "N": a.n,
                "count": nests.len(),
                "partition_function": function.to_string(),
                "nests": nests,
            });
            Ok(Doc::with_table(doc, table))
        }
        PathsCommand::Watermelon(a) => {
            let count = watermelon_count(a.geometry.n_down, a.geometry.m, a.n)?;
            Ok(Doc::value(json!({
                "M": a.geometry.m, "N": a.geometry.n_down, "n": a.n, "count": big(&count),
            })))
        }
    }
}

fn run_chain_spectrum(g: &GeometryArgs, limits: &Limits) -> Result<Doc> {
    let geo = geometry(g)?;
    let sets = enumerate_bethe_sets(&geo, limits)?;
    let exact = match SectorSpectrum::new(&geo, limits) {
        Ok(s) => Some(s.values),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e.into()),
    };
    let mut table = Table::new(&["I", "theta", "energy"]);
    for b in &sets {
        table.push(vec![
            Cell::Text(joined(b.quantum_numbers())),
            Cell::Text(b.theta().iter().map(|t| format!("{t:.12}")).collect::<Vec<_>>().join(" ")),
            Cell::Float(b.energy()),
        ]);
    }
    let mut doc = json!({
        "geometry": geo,
        "sets": sets,
        "exact_diagonalization": exact,
    });
    if (1..=geo.m()).contains(&geo.n_down()) {
        doc["ground"] = json!(bethe_ground_state(&geo));
        doc["ground_energy_closed_form"] = json!(ground_energy_closed_form(&geo));
    }
    Ok(Doc::with_table(doc, table))
}

fn run_correlator(c: &CorrelatorCommand, limits: &Limits) -> Result<Doc> {
    let doc = match c {
        CorrelatorCommand::OneParticle(a) => {
            let geo = ChainGeometry::new(a.m, 1)?;
            json!({
                "M": a.m, "j": a.j, "m": a.site, "t": complex(a.t),
                "value": complex(one_particle_g(&geo, a.j, a.site, a.t)?),
            })
        }
        CorrelatorCommand::Laplace(a) => {
            let geo = ChainGeometry::new(a.m, 1)?;
            let value = laplace_generating_f(&geo, a.j, a.site, a.z)?;
            let series = laplace_series(&geo, a.j, a.site, a.z)?;
            json!({
                "M": a.m, "j": a.j, "m": a.site, "z": complex(a.z),
                "value": complex(value),
                "route_residuals": {"series": relative_residual(value, series)},
            })
        }
        CorrelatorCommand::Multi(a) => {
            let geo = ChainGeometry::new(a.m, a.j.len())?;
            let v = multi_particle_g(&geo, &a.j, &a.l, a.t, limits)?;
            json!({
                "M": a.m, "N": a.j.len(), "j": a.j, "l": a.l, "t": complex(a.t),
                "value": complex(v.value),
                "route_residuals": {"spectral": v.residual},
            })
        }
        CorrelatorCommand::Trig(a) => {
            let geo = ChainGeometry::new(a.m, a.j.len())?;
            let count = trig_path_count(&geo, &a.j, &a.l, a.k, limits)?;
            let sum = trig_path_sum(&geo, &a.j, &a.l, a.k, limits)?;
            let walkers = match (StrictPartition::new(a.l.clone()), StrictPartition::new(a.j.clone())) {
                (Ok(l), Ok(j)) => count_random_turns_paths(&l, &j, a.k, a.m, limits)?,
                _ => Default::default(),
            };
            let residual = (sum - C64::new(sum.re.round(), 0.0)).norm() / sum.re.round().abs().max(1.0);
            json!({
                "M": a.m, "N": a.j.len(), "j": a.j, "l": a.l, "K": a.k,
                "value": big(&count),
                "walker_count": big(&walkers),
                "route_residuals": {"rounding": residual, "walkers": if walkers == count { 0 } else { 1 }},
            })
        }
        CorrelatorCommand::Transition(a) => {
            let geo = geometry(&a.geometry)?;
            let ones = vec![C64::new(1.0, 0.0); geo.n_down()];
            let u2 = a.u_squared.clone().unwrap_or_else(|| ones.clone());
            let v2 = a.v_squared.clone().unwrap_or(ones);
            let r = transition_amplitude(&geo, &u2, &v2, a.n, a.t, limits)?;
            json!({
                "M": geo.m(), "N": geo.n_down(), "n": a.n, "t": complex(a.t),
                "u_squared": u2.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
                "v_squared": v2.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
                "value": complex(r.combinatorial),
                "route_residuals": {"spectral": r.spectral_residual, "exact_diagonalization": r.exact_residual},
            })
        }
        CorrelatorCommand::Persistence(a) => {
            let geo = geometry(&a.geometry)?;
            let p = persistence_of_string(&geo, a.n, a.t, limits)?;
            json!({
                "M": geo.m(), "N": geo.n_down(), "n": a.n, "t": complex(a.t),
                "value": complex(p.spectral),
                "route_residuals": {"exact_diagonalization": p.residual},
            })
        }
    };
    Ok(Doc::value(doc))
}

fn report_doc(report: VerificationReport, tolerance_scale: f64) -> Doc {
    let report = VerificationReport::new(
        report
            .checks
            .into_iter()
            .map(|mut c| {
                c.tolerance *= tolerance_scale;
                c.passed = c.residual.is_finite() && c.residual < c.tolerance;
                c
            })
            .collect(),
    );
    let mut table = Table::new(&["identity", "parameters", "lhs", "rhs", "residual", "tolerance", "passed"]);
    let text = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    for c in &report.checks {
        table.push(vec![
            Cell::Text(c.identity.clone()),
            Cell::Text(c.parameters.to_string()),
            Cell::Text(text(&c.lhs)),
            Cell::Text(text(&c.rhs)),
            Cell::Sci(c.residual),
            Cell::Sci(c.tolerance),
            Cell::Bool(c.passed),
        ]);
    }
    let passed = report.passed;
    let mut doc = Doc::with_table(serde_json::to_value(&report).expect("reports serialise"), table);
    doc.passed = passed;
    doc
}

pub fn run_verify(v: &VerifyCommand, limits: &Limits, tolerance_scale: f64) -> Result<Doc> {
    let report = match v {
        VerifyCommand::EqualityOfSums(a) => verify::equality_of_sums(&geometry(&a.geometry)?, a.n, a.k, limits)?,
        VerifyCommand::CauchyBinet(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            verify::cauchy_binet(a.n_vars, a.upper, a.lower, a.trials, &mut rng, limits)?
        }
        VerifyCommand::Persistence(a) => verify::persistence(&geometry(&a.geometry)?, a.n, a.t, limits)?,
        VerifyCommand::Macmahon(a) => verify::macmahon(a.n, a.k, limits)?,
        VerifyCommand::QIdentity(a) => verify::q_identity(a.geometry.n_down, a.geometry.m, a.n, limits)?,
        VerifyCommand::Spectrum(g) => verify::spectrum(&geometry(g)?, limits)?,
        VerifyCommand::Proposition(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            verify::proposition(&geometry(&a.geometry)?, a.trials, &mut rng, limits)?
        }
        VerifyCommand::PathCounts(a) => verify::path_counts(&geometry(&a.geometry)?, a.k, limits)?,
        VerifyCommand::Schur(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            match &a.lambda {
                Some(parts) => VerificationReport::new(vec![verify::schur_shape(
                    &partition(parts)?,
                    a.n_vars,
                    a.trials,
                    &mut rng,
                    limits,
                )?]),
                None => verify::schur(a.n_vars, a.max_weight, a.trials, &mut rng, limits)?,
            }
        }
    };
    Ok(report_doc(report, tolerance_scale))
}

pub fn run_sweep(s: &SweepCommand, limits: &Limits) -> Result<Doc> {
    match s {
        SweepCommand::Persistence(a) => {
            let geo = geometry(&a.geometry)?;
            let mut table = Table::new(&["M", "N", "n", "t", "persistence", "exact_diagonalization", "residual"]);
            for &n in &a.n.0 {
                for &t in &a.t.0 {
                    let p = persistence_of_string(&geo, n, C64::new(t, 0.0), limits)?;
                    table.push(vec![
                        Cell::Int(geo.m().to_string()),
                        Cell::Int(geo.n_down().to_string()),
                        Cell::Int(n.to_string()),
                        Cell::Float(t),
                        Cell::Float(p.spectral.re),
                        p.exact_diagonalization.map_or(Cell::Text(String::new()), |e| Cell::Float(e.re)),
                        p.residual.map_or(Cell::Text(String::new()), Cell::Sci),
                    ]);
                }
            }
            Ok(Doc::table(table))
        }
        SweepCommand::PathCounts(a) => {
            let geo = geometry(&a.geometry)?;
            let basis = xxpaths::SectorBasis::new(&geo, limits)?;
            let mut table = Table::new(&["M", "N", "K", "start", "end", "walkers", "trigonometric"]);
            for &k in &a.k.0 {
                let k = u32::try_from(k).map_err(|_| CliError::Usage(format!("K={k} too large")))?;
                for start in basis.states() {
                    let layer = random_turns_distribution(&strict(start)?, k, geo.m(), limits)?;
                    for end in basis.states() {
                        let walkers = layer.get(end).cloned().unwrap_or_default();
                        let trig = trig_path_count(&geo, end, start, k, limits)?;
                        table.push(vec![
                            Cell::Int(geo.m().to_string()),
                            Cell::Int(geo.n_down().to_string()),
                            Cell::Int(k.to_string()),
                            Cell::Text(joined(start)),
                            Cell::Text(joined(end)),
                            Cell::Int(walkers.to_string()),
                            Cell::Int(trig.to_string()),
                        ]);
                    }
                }
            }
            Ok(Doc::table(table))
        }
        SweepCommand::Macmahon(a) => {
            let mut table = Table::new(&["N", "K", "count", "brute_force"]);
            for &n in &a.n.0 {
                for &k in &a.k.0 {
                    table.push(vec![
                        Cell::Int(n.to_string()),
                        Cell::Int(k.to_string()),
                        Cell::Int(mac_mahon_count(n, k)?.to_string()),
                        Cell::Int(brute_force_plane_partitions(n, n, k, limits)?.to_string()),
                    ]);
                }
            }
            Ok(Doc::table(table))
        }
    }
}
