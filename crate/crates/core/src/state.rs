//! Dense pure and mixed state representations and the gate kernel.

use std::collections::BTreeMap;

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::circuit::{Circuit, GateInstance};
use crate::error::{Error, Result};
use crate::gate::GateKind;
use crate::C64;

/// Largest register a state vector may hold.
pub const MAX_STATE_QUBITS: usize = 24;
/// Largest register a density matrix may hold.
pub const MAX_DENSITY_QUBITS: usize = 8;

pub(crate) fn validate_wires(n_qubits: usize, wires: &[usize]) -> Result<()> {
    for (i, &w) in wires.iter().enumerate() {
        if w >= n_qubits {
            return Err(Error::InvalidWireSet(format!(
                "wire {w} out of range for {n_qubits} qubits"
            )));
        }
        if wires[..i].contains(&w) {
            return Err(Error::InvalidWireSet(format!("wire {w} listed twice")));
        }
    }
    Ok(())
}

#[inline]
fn wire_mask(n: usize, wire: usize) -> usize {
    1 << (n - 1 - wire)
}

/// Applies `kind` in place to an `n`-qubit amplitude array. Wires must be
/// validated by the caller. With `conjugate` the complex conjugate of the
/// gate matrix is applied instead, which is what the column side of a
/// vectorised density matrix needs.
pub(crate) fn apply_kernel(
    amps: &mut [C64],
    n: usize,
    kind: GateKind,
    wires: &[usize],
    conjugate: bool,
) {
    debug_assert_eq!(amps.len(), 1 << n);
    if let Some(mut m) = kind.single_qubit_matrix() {
        if conjugate {
            m.iter_mut().for_each(|z| *z = z.conj());
        }
        let mask = wire_mask(n, wires[0]);
        match kind {
            GateKind::I => {}
            GateKind::X => {
                for i in 0..amps.len() {
                    if i & mask == 0 {
                        amps.swap(i, i | mask);
                    }
                }
            }
            GateKind::Z | GateKind::T | GateKind::Tdg | GateKind::PhaseShift(_) => {
                let d = m[3];
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & mask != 0 {
                        *a *= d;
                    }
                }
            }
            _ => {
                for i in 0..amps.len() {
                    if i & mask == 0 {
                        let j = i | mask;
                        let (a, b) = (amps[i], amps[j]);
                        amps[i] = m[0] * a + m[1] * b;
                        amps[j] = m[2] * a + m[3] * b;
                    }
                }
            }
        }
        return;
    }
    let all: usize = wires.iter().map(|&w| wire_mask(n, w)).fold(0, |a, b| a | b);
    match kind {
        GateKind::MultiControlledZ | GateKind::MultiControlledPhaseShift(_) => {
            let mut phase = match kind {
                GateKind::MultiControlledPhaseShift(phi) => C64::from_polar(1.0, phi),
                _ => C64::new(-1.0, 0.0),
            };
            if conjugate {
                phase = phase.conj();
            }
            for (i, a) in amps.iter_mut().enumerate() {
                if i & all == all {
                    *a *= phase;
                }
            }
        }
        GateKind::MultiControlledX => {
            let target = wire_mask(n, *wires.last().expect("non-empty wires"));
            let controls = all & !target;
            for i in 0..amps.len() {
                if i & controls == controls && i & target == 0 {
                    amps.swap(i, i | target);
                }
            }
        }
        GateKind::Measure | GateKind::Barrier => {}
        _ => unreachable!("single-qubit kinds handled above"),
    }
}

fn check_gate(n: usize, kind: GateKind, wires: &[usize]) -> Result<()> {
    validate_wires(n, wires)?;
    if !kind.accepts_arity(wires.len()) {
        return Err(Error::ArityMismatch {
            kind: kind.name(),
            arity: wires.len(),
        });
    }
    Ok(())
}

/// Pure state of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(&BitString::zeros(n_qubits.max(1)), n_qubits)
    }

    fn basis(b: &BitString, n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_STATE_QUBITS {
            return Err(Error::DimensionLimit {
                n: n_qubits,
                limit: MAX_STATE_QUBITS,
            });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[b.index()] = C64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn from_basis(b: &BitString) -> Result<Self> {
        Self::basis(b, b.len())
    }

    /// Wraps raw amplitudes; the length must be a power of two and the
    /// vector normalised within 1e-9.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {len} is not 2^n, n >= 1"
            )));
        }
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let s = Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        if (s.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "state norm^2 {} != 1",
                s.norm_sqr()
            )));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, b: &BitString) -> C64 {
        self.amplitudes[b.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies a gate on the given wires. Measure and Barrier are no-ops.
    pub fn apply(&mut self, kind: GateKind, wires: &[usize]) -> Result<()> {
        check_gate(self.n_qubits, kind, wires)?;
        apply_kernel(&mut self.amplitudes, self.n_qubits, kind, wires, false);
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &GateInstance) -> Result<()> {
        self.apply(gate.kind, &gate.wires)
    }

    /// Runs every gate of `circuit` in order.
    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "circuit has {} qubits, state has {}",
                circuit.n_qubits(),
                self.n_qubits
            )));
        }
        for g in circuit.gates() {
            // circuits validate their gates on construction
            apply_kernel(&mut self.amplitudes, self.n_qubits, g.kind, &g.wires, false);
        }
        Ok(())
    }

    /// Simulates `circuit` from `|0...0>`.
    pub fn simulate(circuit: &Circuit) -> Result<Self> {
        let mut s = Self::zero(circuit.n_qubits())?;
        s.run(circuit)?;
        Ok(s)
    }

    pub fn probabilities(&self) -> Distribution {
        Distribution {
            n_qubits: self.n_qubits,
            probs: self.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
        }
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }
}

/// Mixed state stored as a row-major `2^n x 2^n` matrix.
///
/// Row-major storage is the same as a `2n`-qubit vector whose first `n`
/// wires index rows and last `n` wires index columns, so `U rho U^dagger`
/// is the gate kernel applied with `U` on the row wires and `conj(U)` on
/// the column wires.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    n_qubits: usize,
    entries: Vec<C64>,
}

impl DensityState {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::from_pure(&StateVector::zero(n_qubits.min(MAX_DENSITY_QUBITS + 1))?)
    }

    /// `|psi><psi|`.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let n = psi.n_qubits();
        if n > MAX_DENSITY_QUBITS {
            return Err(Error::DensityLimit {
                n,
                limit: MAX_DENSITY_QUBITS,
            });
        }
        let a = psi.amplitudes();
        let entries = a
            .iter()
            .flat_map(|r| a.iter().map(move |c| r * c.conj()))
            .collect();
        Ok(Self {
            n_qubits: n,
            entries,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Largest deviation of `rho` from `rho^dagger`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `U rho U^dagger` for one gate.
    pub fn apply(&mut self, kind: GateKind, wires: &[usize]) -> Result<()> {
        check_gate(self.n_qubits, kind, wires)?;
        self.apply_unchecked(kind, wires);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, kind: GateKind, wires: &[usize]) {
        if !kind.is_unitary() {
            return;
        }
        let n = self.n_qubits;
        apply_kernel(&mut self.entries, 2 * n, kind, wires, false);
        let cols: Vec<usize> = wires.iter().map(|w| w + n).collect();
        apply_kernel(&mut self.entries, 2 * n, kind, &cols, true);
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "circuit has {} qubits, density state has {}",
                circuit.n_qubits(),
                self.n_qubits
            )));
        }
        for g in circuit.gates() {
            self.apply_unchecked(g.kind, &g.wires);
        }
        Ok(())
    }

    pub(crate) fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut Vec<C64> {
        &mut self.entries
    }

    /// Diagonal of `rho`.
    pub fn probabilities(&self) -> Distribution {
        Distribution {
            n_qubits: self.n_qubits,
            probs: (0..self.dim()).map(|i| self.get(i, i).re).collect(),
        }
    }
}

/// Outcome probabilities over the computational basis, indexed by basis index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    n_qubits: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(n_qubits: usize, probs: Vec<f64>) -> Result<Self> {
        if n_qubits == 0 || probs.len() != 1 << n_qubits {
            return Err(Error::InvalidArgument(format!(
                "{} probabilities for {n_qubits} qubits",
                probs.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < -1e-9) {
            return Err(Error::InvalidArgument(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        Ok(Self { n_qubits, probs })
    }

    /// Point mass on `b`.
    pub fn point(b: &BitString) -> Self {
        let mut probs = vec![0.0; 1 << b.len()];
        probs[b.index()] = 1.0;
        Self {
            n_qubits: b.len(),
            probs,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, b: &BitString) -> f64 {
        assert_eq!(b.len(), self.n_qubits);
        self.probs[b.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Most likely outcome; ties resolve to the lowest index.
    pub fn argmax(&self) -> BitString {
        let (idx, _) =
            self.probs
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &p)| {
                    if p > best.1 {
                        (i, p)
                    } else {
                        best
                    }
                });
        BitString::from_index(idx, self.n_qubits)
    }

    /// Outcomes with probability above `threshold`, in basis order.
    pub fn support(&self, threshold: f64) -> BTreeMap<BitString, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > threshold)
            .map(|(i, &p)| (BitString::from_index(i, self.n_qubits), p))
            .collect()
    }

    /// Joint distribution of independent registers; `self` supplies the
    /// leading bits.
    pub fn tensor(&self, rhs: &Distribution) -> Distribution {
        let probs = self
            .probs
            .iter()
            .flat_map(|a| rhs.probs.iter().map(move |b| a * b))
            .collect();
        Distribution {
            n_qubits: self.n_qubits + rhs.n_qubits,
            probs,
        }
    }
}

/// Measurement counts from repeated sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub counts: BTreeMap<BitString, u64>,
    pub shots: u64,
    pub seed: u64,
}

impl Histogram {
    pub fn count(&self, b: &BitString) -> u64 {
        self.counts.get(b).copied().unwrap_or(0)
    }

    pub fn frequency(&self, b: &BitString) -> f64 {
        self.count(b) as f64 / self.shots as f64
    }

    /// Most frequent outcome; ties resolve to the lowest string.
    pub fn mode(&self) -> Option<&BitString> {
        self.counts
            .iter()
            .fold(
                None,
                |best: Option<(&BitString, u64)>, (b, &c)| match best {
                    Some((_, bc)) if bc >= c => best,
                    _ => Some((b, c)),
                },
            )
            .map(|(b, _)| b)
    }
}

/// Draws `shots` outcomes from `dist` with a seeded ChaCha8 stream.
pub fn sample(dist: &Distribution, shots: u64, seed: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::EmptySample);
    }
    let weights: Vec<f64> = dist.probs.iter().map(|p| p.max(0.0)).collect();
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidArgument(format!("cannot sample distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = vec![0u64; weights.len()];
    for _ in 0..shots {
        raw[index.sample(&mut rng)] += 1;
    }
    let counts = raw
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (BitString::from_index(i, dist.n_qubits), c))
        .collect();
    Ok(Histogram {
        counts,
        shots,
        seed,
    })
}
