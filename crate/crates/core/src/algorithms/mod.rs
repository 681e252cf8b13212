//! Builders and runners for the search and hidden-string algorithms.
//!
//! Distributed algorithms produce a [`DistributedCircuit`]: independent
//! circuits on disjoint blocks of the global bit string. Running one means
//! simulating each block on its own and concatenating the measured
//! substrings in block order; no quantum state crosses block boundaries.

mod bv;
mod dega;
mod grover;
mod long;

use std::ops::Range;

use serde::Serialize;

pub use bv::{build_bv, build_dbva, build_dbva_with_fill, bv_circuit, run_bv, run_dbva, NodePlan};
pub use dega::{build_dega, run_dega};
pub use grover::{build_grover, grover_iterations, grover_success_probability, run_grover};
pub use long::{build_long, long_params, run_long, LongParams};

use crate::bits::BitString;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::state::{Distribution, StateVector};

/// A circuit that owns the bit positions `positions` of the global string.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartCircuit {
    pub positions: Range<usize>,
    pub circuit: Circuit,
}

/// Independent circuits on contiguous, ordered, disjoint position blocks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributedCircuit {
    n: usize,
    parts: Vec<PartCircuit>,
}

impl DistributedCircuit {
    pub fn new(parts: Vec<PartCircuit>) -> Result<Self> {
        let mut next = 0;
        for p in &parts {
            if p.positions.start != next
                || p.positions.is_empty()
                || p.positions.len() != p.circuit.n_qubits()
            {
                return Err(Error::InvalidPlan(format!(
                    "part {:?} with {} qubits does not continue at position {next}",
                    p.positions,
                    p.circuit.n_qubits()
                )));
            }
            next = p.positions.end;
        }
        if next == 0 {
            return Err(Error::InvalidPlan("no parts".into()));
        }
        Ok(Self { n: next, parts })
    }

    pub fn single(circuit: Circuit) -> Self {
        let n = circuit.n_qubits();
        Self {
            n,
            parts: vec![PartCircuit {
                positions: 0..n,
                circuit,
            }],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[PartCircuit] {
        &self.parts
    }

    pub fn circuits(&self) -> Vec<Circuit> {
        self.parts.iter().map(|p| p.circuit.clone()).collect()
    }

    /// All parts side by side on one `n`-wire register.
    pub fn combined(&self) -> Circuit {
        Circuit::stack(self.parts.iter().map(|p| &p.circuit))
    }

    pub fn gate_count(&self) -> usize {
        self.parts.iter().map(|p| p.circuit.gate_count()).sum()
    }

    /// Depth of the deepest part, which equals the depth of `combined()`.
    pub fn depth(&self) -> usize {
        self.parts
            .iter()
            .map(|p| p.circuit.depth())
            .max()
            .unwrap_or(0)
    }

    /// Every part passed through the X-cancellation pass.
    pub fn optimized(&self) -> Self {
        Self {
            n: self.n,
            parts: self
                .parts
                .iter()
                .map(|p| PartCircuit {
                    positions: p.positions.clone(),
                    circuit: p.circuit.optimize_x_cancellation(),
                })
                .collect(),
        }
    }

    /// Noiseless outcome distribution of the whole string: the product of
    /// the part distributions.
    pub fn exact_distribution(&self, exec: Execution) -> Result<Distribution> {
        let dists = exec.map(self.parts.iter().collect(), |p| {
            StateVector::simulate(&p.circuit).map(|s| s.probabilities())
        });
        product(dists)
    }
}

pub(crate) fn product(parts: Vec<Result<Distribution>>) -> Result<Distribution> {
    let mut iter = parts.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidPlan("no parts".into()))??;
    iter.try_fold(first, |acc, d| Ok(acc.tensor(&d?)))
}

/// Measured substring and its probability for one part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartOutcome {
    pub positions: Range<usize>,
    pub substring: BitString,
    pub probability: f64,
}

/// Outcome of an exact (noiseless) run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmResult {
    /// Concatenation of the most likely substring of every part.
    pub recovered: BitString,
    /// Probability of observing `recovered`.
    pub probability: f64,
    pub parts: Vec<PartOutcome>,
    #[serde(skip)]
    pub circuits: Vec<Circuit>,
}

/// Simulates every part independently and joins the results in order.
pub fn run_distributed(dc: &DistributedCircuit, exec: Execution) -> Result<AlgorithmResult> {
    let outcomes = exec.map(dc.parts.iter().collect(), |p| -> Result<PartOutcome> {
        let dist = StateVector::simulate(&p.circuit)?.probabilities();
        let substring = dist.argmax();
        Ok(PartOutcome {
            positions: p.positions.clone(),
            probability: dist.get(&substring),
            substring,
        })
    });
    let parts = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(AlgorithmResult {
        recovered: BitString::concat(parts.iter().map(|p| &p.substring))?,
        probability: parts.iter().map(|p| p.probability).product(),
        parts,
        circuits: dc.circuits(),
    })
}

pub(crate) fn require_search_arity(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "search needs at least 2 qubits, got {n}"
        )));
    }
    Ok(())
}
