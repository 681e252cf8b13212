use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{run_distributed, AlgorithmResult, DistributedCircuit, PartCircuit};
use crate::bits::BitString;
use crate::boolfn::{restrict, TruthTable};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::GateKind;
use crate::oracle::synth_phase_oracle;
use crate::parallel::Execution;

/// Sizes of the computing nodes, each owning a contiguous block of the
/// hidden string in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodePlan {
    sizes: Vec<usize>,
}

impl NodePlan {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidPlan(format!(
                "node sizes {sizes:?} must be non-empty and >= 1"
            )));
        }
        Ok(Self { sizes })
    }

    /// `n` split into nodes of `size` bits, the last one taking the remainder.
    pub fn uniform(n: usize, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidPlan("node size 0".into()));
        }
        let mut sizes = vec![size; n / size];
        if !n.is_multiple_of(size) {
            sizes.push(n % size);
        }
        Self::new(sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }
}

impl std::str::FromStr for NodePlan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPlan(format!("bad node size `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sizes)
    }
}

/// H layer, phase oracle of `f`, H layer, measurement. No linearity check.
pub fn bv_circuit(f: &TruthTable) -> Circuit {
    let n = f.arity();
    let mut c = Circuit::new(n);
    c.layer(GateKind::H, 0..n).expect("in range");
    c.append(&synth_phase_oracle(f)).expect("same register");
    c.layer(GateKind::H, 0..n).expect("in range");
    c.measure_all().expect("in range");
    c
}

/// Bernstein-Vazirani circuit for a hidden-string function.
pub fn build_bv(f: &TruthTable) -> Result<Circuit> {
    f.hidden_string().ok_or(Error::NotHiddenString)?;
    Ok(bv_circuit(f))
}

pub fn run_bv(f: &TruthTable, exec: Execution) -> Result<AlgorithmResult> {
    run_distributed(&DistributedCircuit::single(build_bv(f)?), exec)
}

/// One BV circuit per node, each over `f` with every other node's block
/// fixed to zero.
pub fn build_dbva(f: &TruthTable, plan: &NodePlan) -> Result<DistributedCircuit> {
    build_dbva_with_fill(f, plan, &BitString::zeros(f.arity()))
}

/// As [`build_dbva`], but the positions outside a node are fixed to the
/// matching bits of `fill`. Any fill gives the node's substring function or
/// its complement, and both yield the same BV outcome.
pub fn build_dbva_with_fill(
    f: &TruthTable,
    plan: &NodePlan,
    fill: &BitString,
) -> Result<DistributedCircuit> {
    let n = f.arity();
    if plan.total() != n {
        return Err(Error::InvalidPlan(format!(
            "{:?} sums to {}, expected {n}",
            plan.sizes(),
            plan.total()
        )));
    }
    if fill.len() != n {
        return Err(Error::InvalidArgument(format!(
            "fill has {} bits, expected {n}",
            fill.len()
        )));
    }
    f.hidden_string().ok_or(Error::NotHiddenString)?;
    let parts = plan
        .ranges()
        .into_iter()
        .map(|r| {
            let fixed: Vec<(usize, bool)> = (0..n)
                .filter(|p| !r.contains(p))
                .map(|p| (p, fill.bit(p)))
                .collect();
            let sub = restrict(f, &fixed)?;
            if sub.hidden_string().is_none() && sub.complement().hidden_string().is_none() {
                return Err(Error::NotHiddenString);
            }
            Ok(PartCircuit {
                positions: r,
                circuit: bv_circuit(&sub),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DistributedCircuit::new(parts)
}

pub fn run_dbva(dc: &DistributedCircuit, exec: Execution) -> Result<AlgorithmResult> {
    run_distributed(dc, exec)
}
