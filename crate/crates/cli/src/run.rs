//! Scenario execution. Grid points run on the current rayon pool and results
//! are assembled by grid index, so tables do not depend on the thread count.

use gme_core::dressed::{diagonalize_truncate, truncation_leak_check};
use gme_core::model::{build_system_hamiltonian, SystemParams};
use gme_core::solvers::{detuning_sweep, populations, steady_state, SpectrumSolver};
use gme_core::system::HybridSystem;
use rayon::prelude::*;

use crate::config::{GridScale, ScenarioConfig, SweepParameter, Task};
use crate::table::{format_float, ResultTable, TableError};

/// Top levels watched for truncation leakage.
const LEAK_GUARD: usize = 10;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Preset name recorded in the header.
    pub preset: Option<String>,
    /// Omit the wall-clock timestamp so reruns are byte-identical.
    pub reproducible: bool,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub table: ResultTable,
    /// One message per failed grid point. Failed points appear as NaN rows.
    pub failures: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{context}: {source}")]
    Core { context: String, source: gme_core::Error },
    #[error(transparent)]
    Table(#[from] TableError),
}

fn core_err(context: impl Into<String>) -> impl FnOnce(gme_core::Error) -> RunError {
    let context = context.into();
    move |source| RunError::Core { context, source }
}

pub fn run_scenario(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<RunOutcome, RunError> {
    let mut outcome = match cfg.task {
        Task::Eigensweep => eigensweep(cfg)?,
        Task::Spectrum => spectrum(cfg)?,
        Task::DetuningSweep => populations_sweep(cfg)?,
    };
    let mut header = ResultTable::default();
    header.push_meta("generator", concat!("gme ", env!("CARGO_PKG_VERSION")));
    if let Some(p) = &opts.preset {
        header.push_meta("preset", p);
    }
    if !opts.reproducible {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        header.push_meta("created_unix", now);
    }
    header.metadata.append(&mut outcome.table.metadata);
    outcome.table.metadata = header.metadata;
    outcome.table.config = Some(cfg.to_toml());
    Ok(outcome)
}

fn axis_name(cfg: &ScenarioConfig) -> &'static str {
    match cfg.grid.scale {
        GridScale::OmegaM => "detuning_over_wm",
        GridScale::Absolute => "detuning_mev",
    }
}

fn with_parameter(base: SystemParams, parameter: SweepParameter, value: f64) -> SystemParams {
    let mut p = base;
    match parameter {
        SweepParameter::G => p.g = value,
        SweepParameter::D0 => p.d0 = value,
        SweepParameter::OmegaM => p.omega_m = value,
        SweepParameter::OmegaX => p.omega_x = value,
    }
    p
}

/// Rows `(axis, level, energy, n_exc)`; `level` counts from zero within each
/// excitation sector, `axis` is the grid value as configured.
fn eigensweep(cfg: &ScenarioConfig) -> Result<RunOutcome, RunError> {
    let sweep = cfg.eigensweep.as_ref().expect("validated");
    let axis = cfg.grid.values();
    let values = cfg.grid.scaled(cfg.system.omega_m);
    let points: Vec<Result<Vec<[f64; 4]>, String>> = axis
        .par_iter()
        .zip(values.par_iter())
        .map(|(&a, &v)| {
            let p = with_parameter(cfg.system, sweep.parameter, v);
            let run = || -> gme_core::Result<Vec<[f64; 4]>> {
                p.validate()?;
                let h = build_system_hamiltonian(&p, cfg.dims)?;
                let basis = diagonalize_truncate(&h, cfg.dims, cfg.levels)?;
                let sectors = basis.sectors()?;
                let mut seen = std::collections::BTreeMap::<usize, usize>::new();
                let mut rows = Vec::new();
                for (j, &s) in sectors.iter().enumerate() {
                    if !sweep.sectors.is_empty() && !sweep.sectors.contains(&s) {
                        continue;
                    }
                    let level = seen.entry(s).or_insert(0);
                    if sweep.max_per_sector.is_none_or(|m| *level < m) {
                        rows.push([a, *level as f64, basis.energies[j], s as f64]);
                    }
                    *level += 1;
                }
                Ok(rows)
            };
            run().map_err(|e| format!("{} = {v}: {e}", sweep.parameter.label()))
        })
        .collect();
    let mut table = ResultTable::new(["axis", "level", "energy", "n_exc"].map(String::from).to_vec());
    table.push_meta("axis", sweep.parameter.label());
    let mut failures = Vec::new();
    for (a, p) in axis.iter().zip(points) {
        match p {
            Ok(rows) => {
                for r in rows {
                    table.push_row(r.to_vec())?;
                }
            }
            Err(e) => {
                failures.push(e);
                table.push_row(vec![*a, f64::NAN, f64::NAN, f64::NAN])?;
            }
        }
    }
    Ok(RunOutcome { table, failures })
}

fn spectrum(cfg: &ScenarioConfig) -> Result<RunOutcome, RunError> {
    let system = cfg.hybrid_system().map_err(core_err("building the dressed basis"))?;
    let detunings = cfg.detunings();
    let kinds = cfg.kind.kinds();
    let mut columns = vec![axis_name(cfg).to_string()];
    columns.extend(kinds.iter().map(|k| format!("S_{}", k.label())));
    let mut table = ResultTable::new(columns);
    let mut failures = Vec::new();
    let mut curves = Vec::new();
    for &kind in &kinds {
        let label = kind.label();
        let context = |what: &str| format!("{label} {what}");
        log::info!("{label}: assembling generator on {} levels", system.levels());
        let l = system.liouvillian(kind).map_err(core_err(context("generator")))?;
        let ss = steady_state(&l).map_err(core_err(context("steady state")))?;
        let pops = populations(&ss.rho, &system);
        log::info!("{label}: reducing generator for the resolvent");
        let solver =
            SpectrumSolver::new(&l, &ss.rho, &system.cavity.x_plus_class(1)).map_err(core_err(context("spectrum")))?;
        drop(l);
        let points = solver.spectrum_points(&detunings, true);
        let mut values = Vec::with_capacity(points.len());
        let mut worst = 0.0_f64;
        for (d, p) in detunings.iter().zip(points) {
            match p {
                Ok((v, r)) => {
                    values.push(v);
                    worst = worst.max(r.abs());
                }
                Err(e) => {
                    failures.push(format!("{label} detuning {d} meV: {e}"));
                    values.push(f64::NAN);
                }
            }
        }
        let scale = values.iter().filter(|v| v.is_finite()).fold(0.0_f64, |a, v| a.max(v.abs()));
        if cfg.normalize && scale > 0.0 {
            values.iter_mut().for_each(|v| *v /= scale);
        }
        table.push_meta(format!("{label}.steady_residual"), format_float(ss.residual));
        table.push_meta(format!("{label}.min_eigenvalue"), format_float(ss.min_eigenvalue));
        table.push_meta(format!("{label}.leak"), format_float(truncation_leak_check(&ss.rho, LEAK_GUARD.min(system.levels()))));
        table.push_meta(format!("{label}.reality_residue"), format_float(if scale > 0.0 { worst / scale } else { worst }));
        table.push_meta(format!("{label}.n_c"), format_float(pops.n_c));
        table.push_meta(format!("{label}.n_x"), format_float(pops.n_x));
        table.push_meta(format!("{label}.n_m"), format_float(pops.n_m));
        curves.push(values);
    }
    for (i, x) in cfg.grid.values().into_iter().enumerate() {
        let mut row = vec![x];
        row.extend(curves.iter().map(|c| c[i]));
        table.push_row(row)?;
    }
    Ok(RunOutcome { table, failures })
}

fn populations_sweep(cfg: &ScenarioConfig) -> Result<RunOutcome, RunError> {
    let system: HybridSystem = cfg.hybrid_system().map_err(core_err("building the dressed basis"))?;
    let lasers = cfg.laser_frequencies();
    let kinds = cfg.kind.kinds();
    let mut columns = vec![axis_name(cfg).to_string()];
    for k in &kinds {
        for q in ["n_c", "n_x", "n_m", "leak"] {
            columns.push(format!("{q}_{}", k.label()));
        }
    }
    let mut table = ResultTable::new(columns);
    let mut failures = Vec::new();
    let mut blocks: Vec<Vec<[f64; 4]>> = Vec::new();
    for &kind in &kinds {
        log::info!("{}: sweeping {} laser frequencies", kind.label(), lasers.len());
        let points = detuning_sweep(&system, kind, &lasers, cfg.system.omega_pump)
            .map_err(core_err(format!("{} dissipator", kind.label())))?;
        let block = points
            .into_iter()
            .zip(&lasers)
            .map(|(p, w)| match p {
                Ok(sp) => [sp.populations.n_c, sp.populations.n_x, sp.populations.n_m, sp.leak],
                Err(e) => {
                    failures.push(format!("{} omega_l = {w} meV: {e}", kind.label()));
                    [f64::NAN; 4]
                }
            })
            .collect();
        blocks.push(block);
    }
    for (i, x) in cfg.grid.values().into_iter().enumerate() {
        let mut row = vec![x];
        for b in &blocks {
            row.extend_from_slice(&b[i]);
        }
        table.push_row(row)?;
    }
    Ok(RunOutcome { table, failures })
}
