//! Single-qubit depolarizing noise: exact density-matrix evolution and
//! Monte-Carlo trajectories.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algorithms::{product, DistributedCircuit};
use crate::bits::BitString;
use crate::circuit::{Circuit, GateInstance};
use crate::error::{Error, Result};
use crate::gate::GateKind;
use crate::parallel::Execution;
use crate::state::{
    apply_kernel, validate_wires, DensityState, Distribution, Histogram, StateVector,
    MAX_DENSITY_QUBITS,
};
use crate::C64;

/// How the depolarizing probability `p` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parameterization {
    /// `(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`.
    #[default]
    PauliThirds,
    /// `(1-p) rho + p I/2`.
    UniformMix,
}

impl Parameterization {
    pub const ALL: [Parameterization; 2] =
        [Parameterization::PauliThirds, Parameterization::UniformMix];

    pub fn id(&self) -> &'static str {
        match self {
            Parameterization::PauliThirds => "pauli-thirds",
            Parameterization::UniformMix => "uniform-mix",
        }
    }
}

impl fmt::Display for Parameterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Parameterization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pauli-thirds" => Ok(Self::PauliThirds),
            "uniform-mix" => Ok(Self::UniformMix),
            _ => Err(Error::InvalidArgument(format!(
                "unknown parameterization `{s}` (pauli-thirds|uniform-mix)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    p: f64,
    parameterization: Parameterization,
}

impl NoiseModel {
    pub fn new(p: f64, parameterization: Parameterization) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(Self {
            p,
            parameterization,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn parameterization(&self) -> Parameterization {
        self.parameterization
    }

    /// Total probability of a Pauli error (X, Y or Z, each a third of it).
    pub fn pauli_error_probability(&self) -> f64 {
        match self.parameterization {
            Parameterization::PauliThirds => self.p,
            Parameterization::UniformMix => 0.75 * self.p,
        }
    }
}

const PAULIS: [GateKind; 3] = [GateKind::X, GateKind::Y, GateKind::Z];

/// Applies the depolarizing channel of `model` to one qubit of `rho`.
pub fn depolarize(rho: &mut DensityState, qubit: usize, model: &NoiseModel) -> Result<()> {
    if qubit >= rho.n_qubits() {
        return Err(Error::InvalidWire {
            wire: qubit,
            n_qubits: rho.n_qubits(),
        });
    }
    depolarize_unchecked(rho, qubit, model.pauli_error_probability());
    Ok(())
}

/// Kraus sum `(1-q) rho + q/3 sum_P P rho P`.
fn depolarize_unchecked(rho: &mut DensityState, qubit: usize, q: f64) {
    if q == 0.0 {
        return;
    }
    let n = rho.n_qubits();
    let original = rho.entries().to_vec();
    let mut acc: Vec<C64> = original.iter().map(|z| z * (1.0 - q)).collect();
    let w = q / 3.0;
    for pauli in PAULIS {
        let mut term = original.clone();
        apply_kernel(&mut term, 2 * n, pauli, &[qubit], false);
        apply_kernel(&mut term, 2 * n, pauli, &[qubit + n], true);
        acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t * w);
    }
    *rho.entries_mut() = acc;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NoisyOp {
    Gate(GateInstance),
    Depolarize(usize),
}

/// A circuit interleaved with depolarizing channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoisyProgram {
    n_qubits: usize,
    model: NoiseModel,
    ops: Vec<NoisyOp>,
}

impl NoisyProgram {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn model(&self) -> &NoiseModel {
        &self.model
    }

    pub fn ops(&self) -> &[NoisyOp] {
        &self.ops
    }

    pub fn channel_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|o| matches!(o, NoisyOp::Depolarize(_)))
            .count()
    }
}

/// Follows every gate (not barriers or measurements) with one channel on
/// each wire it touches, controls included.
pub fn noisy_transform(circuit: &Circuit, model: NoiseModel) -> NoisyProgram {
    let mut ops = Vec::new();
    for g in circuit.gates() {
        match g.kind {
            GateKind::Barrier | GateKind::Measure => continue,
            _ => {
                ops.push(NoisyOp::Gate(g.clone()));
                ops.extend(g.wires.iter().map(|&w| NoisyOp::Depolarize(w)));
            }
        }
    }
    NoisyProgram {
        n_qubits: circuit.n_qubits(),
        model,
        ops,
    }
}

/// Exact evolution of `initial` through `program`.
pub fn evolve_density(program: &NoisyProgram, initial: &DensityState) -> Result<DensityState> {
    if program.n_qubits > MAX_DENSITY_QUBITS {
        return Err(Error::DensityLimit {
            n: program.n_qubits,
            limit: MAX_DENSITY_QUBITS,
        });
    }
    if initial.n_qubits() != program.n_qubits {
        return Err(Error::InvalidArgument(format!(
            "program has {} qubits, state has {}",
            program.n_qubits,
            initial.n_qubits()
        )));
    }
    let q = program.model.pauli_error_probability();
    let mut rho = initial.clone();
    for op in &program.ops {
        match op {
            NoisyOp::Gate(g) => rho.apply_unchecked(g.kind, &g.wires),
            NoisyOp::Depolarize(w) => depolarize_unchecked(&mut rho, *w, q),
        }
    }
    Ok(rho)
}

/// Outcome distribution of `circuit` under `model`, starting from `|0...0>`.
pub fn noisy_distribution(circuit: &Circuit, model: NoiseModel) -> Result<Distribution> {
    let program = noisy_transform(circuit, model);
    let rho = evolve_density(&program, &DensityState::zero(circuit.n_qubits())?)?;
    Ok(rho.probabilities())
}

/// Noisy distribution of a distributed circuit: each part evolves under its
/// own channels and the parts are independent.
pub fn noisy_distributed_distribution(
    dc: &DistributedCircuit,
    model: NoiseModel,
    exec: Execution,
) -> Result<Distribution> {
    let dists = exec.map(dc.parts().iter().collect(), |p| {
        noisy_distribution(&p.circuit, model)
    });
    product(dists)
}

const TRAJECTORY_CHUNK: usize = 512;

/// Samples `shots` stochastic unravelings of `program`.
///
/// Every channel independently applies X, Y or Z with probability `q/3`
/// each; one outcome is drawn from each final state. Shot `i` uses the
/// ChaCha8 stream `i` of `seed`, so results do not depend on `exec`.
pub fn trajectory_sample(
    program: &NoisyProgram,
    shots: u64,
    seed: u64,
    exec: Execution,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::EmptySample);
    }
    let n = program.n_qubits;
    let base = StateVector::zero(n)?;
    let q = program.model.pauli_error_probability();
    let chunks = (shots as usize).div_ceil(TRAJECTORY_CHUNK);
    let counts = exec.map_reduce(
        chunks,
        || vec![0u64; 1 << n],
        |chunk| {
            let mut counts = vec![0u64; 1 << n];
            let start = chunk * TRAJECTORY_CHUNK;
            let end = (start + TRAJECTORY_CHUNK).min(shots as usize);
            let mut state = base.clone();
            for shot in start..end {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(shot as u64);
                counts[run_trajectory(program, q, &base, &mut state, &mut rng)] += 1;
            }
            counts
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(Histogram {
        counts: counts
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(i, c)| (BitString::from_index(i, n), c))
            .collect(),
        shots,
        seed,
    })
}

fn run_trajectory(
    program: &NoisyProgram,
    q: f64,
    base: &StateVector,
    state: &mut StateVector,
    rng: &mut ChaCha8Rng,
) -> usize {
    state.clone_from(base);
    let n = program.n_qubits;
    let amps = state.amplitudes_mut();
    for op in &program.ops {
        match op {
            NoisyOp::Gate(g) => apply_kernel(amps, n, g.kind, &g.wires, false),
            NoisyOp::Depolarize(w) => {
                if q > 0.0 && rng.gen::<f64>() < q {
                    let pauli = PAULIS[rng.gen_range(0..3)];
                    apply_kernel(amps, n, pauli, &[*w], false);
                }
            }
        }
    }
    let r: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, a) in amps.iter().enumerate() {
        acc += a.norm_sqr();
        if r < acc {
            return i;
        }
    }
    // rounding left r above the total mass
    amps.iter().rposition(|a| a.norm_sqr() > 0.0).unwrap_or(0)
}

/// Validates a single-qubit wire for callers that build programs by hand.
pub fn check_qubit(n_qubits: usize, qubit: usize) -> Result<()> {
    validate_wires(n_qubits, &[qubit]).map_err(|_| Error::InvalidWire {
        wire: qubit,
        n_qubits,
    })
}
