use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::{require_search_arity, run_distributed, AlgorithmResult, DistributedCircuit};
use crate::boolfn::TruthTable;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::GateKind;
use crate::oracle::{synth_rotation_oracle, synth_zero_rotation};
use crate::parallel::Execution;

/// Phase-matching parameters of the exact search for an `n`-bit register.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LongParams {
    pub n: usize,
    /// `asin(sqrt(1/2^n))`.
    pub theta: f64,
    /// `floor((pi/2 - theta) / (2 theta))`; the circuit runs `iterations + 1` rounds.
    pub iterations: usize,
    /// `2 asin(sin(pi/(4J+6)) / sin(theta))`.
    pub phi: f64,
}

impl LongParams {
    pub fn rounds(&self) -> usize {
        self.iterations + 1
    }
}

// Absorbs rounding when the quotient is an exact integer (n = 2 gives 1).
const FLOOR_SLACK: f64 = 1e-9;

pub fn long_params(n: usize) -> Result<LongParams> {
    require_search_arity(n)?;
    let theta = (1.0 / ((1u64 << n) as f64)).sqrt().asin();
    let iterations = ((FRAC_PI_2 - theta) / (2.0 * theta) + FLOOR_SLACK).floor() as usize;
    let phi = 2.0 * ((PI / (4.0 * iterations as f64 + 6.0)).sin() / theta.sin()).asin();
    Ok(LongParams {
        n,
        theta,
        iterations,
        phi,
    })
}

/// H layer, then `J+1` rounds of rotation oracle, H layer, zero rotation,
/// H layer, then measurement.
pub fn build_long(f: &TruthTable) -> Result<Circuit> {
    let n = f.arity();
    require_search_arity(n)?;
    if f.unique_target().is_none() {
        return Err(Error::RequiresUniqueTarget(f.satisfying_count()));
    }
    let params = long_params(n)?;
    let oracle = synth_rotation_oracle(f, params.phi)?;
    let zero = synth_zero_rotation(n, params.phi)?;
    let mut c = Circuit::new(n);
    c.layer(GateKind::H, 0..n)?;
    for _ in 0..params.rounds() {
        c.append(&oracle)?;
        c.layer(GateKind::H, 0..n)?;
        c.append(&zero)?;
        c.layer(GateKind::H, 0..n)?;
    }
    c.measure_all()?;
    Ok(c)
}

pub fn run_long(f: &TruthTable, exec: Execution) -> Result<AlgorithmResult> {
    run_distributed(&DistributedCircuit::single(build_long(f)?), exec)
}
