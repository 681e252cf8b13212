use std::collections::BTreeMap;

use dqsim_core::algorithms::{run_distributed, DistributedCircuit};
use dqsim_core::experiments::{Check, Table};
use dqsim_core::noise::{noisy_distributed_distribution, noisy_transform, trajectory_sample};
use dqsim_core::state::sample;
use dqsim_core::{
    BitString, Distribution, Execution, Histogram, NoiseModel, Parameterization, Result,
};
use serde::Serialize;

pub const SCHEMA: u32 = 1;
const SUPPORT_THRESHOLD: f64 = 1e-12;

#[derive(Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub algorithm: String,
    pub n_qubits: usize,
    /// Stats of the simulated circuit.
    pub circuit: Stats,
    /// Stats after X cancellation, whether or not it was applied.
    pub optimized: Stats,
    pub parts: Vec<PartReport>,
    pub recovered: BitString,
    pub success_probability: f64,
    pub probabilities: BTreeMap<BitString, f64>,
    pub noise: Option<NoiseReport>,
    pub histogram: HistogramReport,
}

#[derive(Serialize)]
pub struct Stats {
    pub gate_count: usize,
    pub depth: usize,
    pub optimize_applied: bool,
}

#[derive(Serialize)]
pub struct PartReport {
    pub positions: [usize; 2],
    pub n_qubits: usize,
    pub gate_count: usize,
    pub depth: usize,
    pub substring: BitString,
    pub probability: f64,
}

#[derive(Serialize)]
pub struct NoiseReport {
    pub p: f64,
    pub parameterization: Parameterization,
    pub channels: usize,
    /// Noisy probability of the noiseless outcome.
    pub recovered_probability: f64,
    pub mode: BitString,
    pub probabilities: BTreeMap<BitString, f64>,
}

#[derive(Serialize)]
pub struct HistogramReport {
    /// `exact`, `density` or `trajectories`.
    pub source: &'static str,
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<BitString, u64>,
    pub mode: Option<BitString>,
}

impl HistogramReport {
    fn new(source: &'static str, h: Histogram) -> Self {
        let mode = h.mode().cloned();
        Self {
            source,
            shots: h.shots,
            seed: h.seed,
            counts: h.counts,
            mode,
        }
    }
}

fn support(d: &Distribution) -> BTreeMap<BitString, f64> {
    d.support(SUPPORT_THRESHOLD)
}

#[allow(clippy::too_many_arguments)]
pub fn run_report(
    algorithm: &str,
    built: &DistributedCircuit,
    optimize: bool,
    model: Option<NoiseModel>,
    trajectories: bool,
    shots: u64,
    seed: u64,
    exec: Execution,
) -> Result<RunReport> {
    let optimized = built.optimized();
    let simulated = if optimize { &optimized } else { built };
    let result = run_distributed(simulated, exec)?;
    let exact = simulated.exact_distribution(exec)?;

    let parts = simulated
        .parts()
        .iter()
        .zip(&result.parts)
        .map(|(p, o)| PartReport {
            positions: [p.positions.start, p.positions.end],
            n_qubits: p.circuit.n_qubits(),
            gate_count: p.circuit.gate_count(),
            depth: p.circuit.depth(),
            substring: o.substring.clone(),
            probability: o.probability,
        })
        .collect();

    let (noise, histogram) = match model {
        None => (
            None,
            HistogramReport::new("exact", sample(&exact, shots, seed)?),
        ),
        Some(model) => {
            let noisy = noisy_distributed_distribution(simulated, model, exec)?;
            let program = noisy_transform(&simulated.combined(), model);
            let hist = if trajectories {
                HistogramReport::new(
                    "trajectories",
                    trajectory_sample(&program, shots, seed, exec)?,
                )
            } else {
                HistogramReport::new("density", sample(&noisy, shots, seed)?)
            };
            let report = NoiseReport {
                p: model.p(),
                parameterization: model.parameterization(),
                channels: program.channel_count(),
                recovered_probability: noisy.get(&result.recovered),
                mode: noisy.argmax(),
                probabilities: support(&noisy),
            };
            (Some(report), hist)
        }
    };

    Ok(RunReport {
        schema: SCHEMA,
        algorithm: algorithm.to_string(),
        n_qubits: simulated.n_qubits(),
        circuit: Stats {
            gate_count: simulated.gate_count(),
            depth: simulated.depth(),
            optimize_applied: optimize,
        },
        optimized: Stats {
            gate_count: optimized.gate_count(),
            depth: optimized.depth(),
            optimize_applied: true,
        },
        parts,
        recovered: result.recovered,
        success_probability: result.probability,
        probabilities: support(&exact),
        noise,
        histogram,
    })
}

#[derive(Serialize)]
pub struct Sidecar<'a> {
    pub schema: u32,
    pub table: &'a str,
    pub rows: usize,
    pub shots: u64,
    pub seed: u64,
    pub passed: bool,
    pub checks: &'a [Check],
}

pub fn sidecar(table: &Table, shots: u64, seed: u64) -> Sidecar<'_> {
    Sidecar {
        schema: SCHEMA,
        table: &table.id,
        rows: table.rows.len(),
        shots,
        seed,
        passed: table.passed(),
        checks: &table.checks,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
