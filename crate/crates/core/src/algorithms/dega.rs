use super::{build_grover, build_long, require_search_arity, run_distributed, AlgorithmResult};
use super::{DistributedCircuit, PartCircuit};
use crate::boolfn::{dega_subfunction, part_ranges, PartLayout, TruthTable};
use crate::error::{Error, Result};
use crate::parallel::Execution;

/// One small exact search per part: two-bit parts run a single Grover
/// round, the three-bit part (odd `n`) runs the phase-matching search with
/// two rounds.
pub fn build_dega(f: &TruthTable, layout: PartLayout) -> Result<DistributedCircuit> {
    let n = f.arity();
    require_search_arity(n)?;
    if f.unique_target().is_none() {
        return Err(Error::RequiresUniqueTarget(f.satisfying_count()));
    }
    let parts = part_ranges(n, layout)
        .into_iter()
        .enumerate()
        .map(|(i, positions)| {
            let g = dega_subfunction(f, i, layout)?;
            let circuit = match positions.len() {
                2 => build_grover(&g)?,
                _ => build_long(&g)?,
            };
            Ok(PartCircuit { positions, circuit })
        })
        .collect::<Result<Vec<_>>>()?;
    DistributedCircuit::new(parts)
}

pub fn run_dega(dc: &DistributedCircuit, exec: Execution) -> Result<AlgorithmResult> {
    run_distributed(dc, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{build_grover, long_params};
    use crate::bits::BitString;
    use crate::boolfn::point_function;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn four_qubit_example() {
        let dc = build_dega(&point_function(&bs("1001")), PartLayout::default()).unwrap();
        assert_eq!(dc.parts().len(), 2);
        assert_eq!((dc.gate_count(), dc.depth()), (28, 9));
        let r = run_dega(&dc, Execution::Sequential).unwrap();
        assert_eq!(r.recovered, bs("1001"));
    }

    #[test]
    fn five_qubit_example_both_layouts() {
        for layout in [PartLayout::TrailingRemainder, PartLayout::LeadingRemainder] {
            let dc = build_dega(&point_function(&bs("01001")), layout).unwrap();
            assert_eq!((dc.gate_count(), dc.depth()), (53, 17), "{layout:?}");
            let three = dc.parts().iter().find(|p| p.positions.len() == 3).unwrap();
            assert_eq!(three.circuit.gate_count(), 39);
            assert_eq!(long_params(3).unwrap().rounds(), 2);
            let r = run_dega(&dc, Execution::Sequential).unwrap();
            assert_eq!(r.recovered, bs("01001"));
            assert!((r.probability - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn two_qubit_is_grover() {
        let f = point_function(&bs("01"));
        let dc = build_dega(&f, PartLayout::default()).unwrap();
        assert_eq!(dc.parts()[0].circuit, build_grover(&f).unwrap());
    }

    #[test]
    fn zero_target() {
        let dc = build_dega(&point_function(&BitString::zeros(6)), PartLayout::default()).unwrap();
        assert_eq!(
            run_dega(&dc, Execution::Sequential).unwrap().recovered,
            BitString::zeros(6)
        );
    }
}
