use std::f64::consts::PI;

use super::{require_search_arity, run_distributed, AlgorithmResult, DistributedCircuit};
use crate::boolfn::TruthTable;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::GateKind;
use crate::oracle::{synth_phase_oracle, synth_zero_reflection};
use crate::parallel::Execution;

/// `floor(pi/4 * sqrt(2^n))`.
pub fn grover_iterations(n: usize) -> usize {
    (PI / 4.0 * ((1u64 << n) as f64).sqrt()).floor() as usize
}

/// `sin^2((2k+1) theta)` with `theta = asin(2^{-n/2})` and `k` Grover
/// iterations.
pub fn grover_success_probability(n: usize) -> f64 {
    let theta = (1.0 / ((1u64 << n) as f64)).sqrt().asin();
    let k = grover_iterations(n) as f64;
    ((2.0 * k + 1.0) * theta).sin().powi(2)
}

/// H layer, then `grover_iterations(n)` rounds of oracle, H layer, zero
/// reflection, H layer, then measurement. The global `-1` of each round is
/// left out.
pub fn build_grover(f: &TruthTable) -> Result<Circuit> {
    let n = f.arity();
    require_search_arity(n)?;
    if f.unique_target().is_none() {
        return Err(Error::RequiresUniqueTarget(f.satisfying_count()));
    }
    let oracle = synth_phase_oracle(f);
    let reflection = synth_zero_reflection(n)?;
    let mut c = Circuit::new(n);
    c.layer(GateKind::H, 0..n)?;
    for _ in 0..grover_iterations(n) {
        c.append(&oracle)?;
        c.layer(GateKind::H, 0..n)?;
        c.append(&reflection)?;
        c.layer(GateKind::H, 0..n)?;
    }
    c.measure_all()?;
    Ok(c)
}

pub fn run_grover(f: &TruthTable, exec: Execution) -> Result<AlgorithmResult> {
    run_distributed(&DistributedCircuit::single(build_grover(f)?), exec)
}
