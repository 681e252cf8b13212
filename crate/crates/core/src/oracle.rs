//! Phase-oracle synthesis from explicit truth tables.
//!
//! Each satisfying input `x` becomes one block: X on every wire where `x`
//! has a zero, a multi-controlled gate across all wires, then the same X
//! layer again. Blocks are separated by barriers so that the unoptimized
//! circuit keeps one block per time slice; the X-cancellation pass removes
//! the barriers together with the redundant X pairs.

use crate::bits::BitString;
use crate::boolfn::TruthTable;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::GateKind;

fn push_block(c: &mut Circuit, x: &BitString, kind: GateKind) -> Result<()> {
    let zeros: Vec<usize> = (0..x.len()).filter(|&j| !x.bit(j)).collect();
    let all: Vec<usize> = (0..x.len()).collect();
    c.layer(GateKind::X, zeros.iter().copied())?;
    c.push(kind, &all)?;
    c.layer(GateKind::X, zeros)?;
    Ok(())
}

/// `U|x> = (-1)^f(x) |x>`, one block per satisfying input in ascending
/// basis order. The all-ones block carries no X layers.
pub fn synth_phase_oracle(f: &TruthTable) -> Circuit {
    let mut c = Circuit::new(f.arity());
    for (i, x) in f.satisfying().iter().enumerate() {
        if i > 0 {
            c.barrier().expect("barrier spans the register");
        }
        push_block(&mut c, x, GateKind::MultiControlledZ).expect("wires within register");
    }
    c
}

/// `I - 2|0><0|` as X layer, `C^{n-1}Z`, X layer.
pub fn synth_zero_reflection(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    push_block(&mut c, &nonempty_zeros(n)?, GateKind::MultiControlledZ)?;
    Ok(c)
}

/// Multiplies the unique target of `f` by `e^{i phi}`.
pub fn synth_rotation_oracle(f: &TruthTable, phi: f64) -> Result<Circuit> {
    let target = f
        .unique_target()
        .ok_or(Error::RotationRequiresUniqueTarget(f.satisfying_count()))?;
    let mut c = Circuit::new(f.arity());
    push_block(&mut c, &target, GateKind::MultiControlledPhaseShift(phi))?;
    Ok(c)
}

/// `I + (e^{i phi} - 1)|0><0|`.
pub fn synth_zero_rotation(n: usize, phi: f64) -> Result<Circuit> {
    let mut c = Circuit::new(n);
    push_block(
        &mut c,
        &nonempty_zeros(n)?,
        GateKind::MultiControlledPhaseShift(phi),
    )?;
    Ok(c)
}

fn nonempty_zeros(n: usize) -> Result<BitString> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "oracle needs at least one qubit".into(),
        ));
    }
    Ok(BitString::zeros(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{hidden_string_function, point_function};
    use crate::gate::Matrix;
    use crate::C64;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn diag(values: &[C64]) -> Matrix {
        let mut m = Matrix::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, *v);
        }
        m
    }

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn two_target_example() {
        let f = TruthTable::from_fn(3, |x| *x == bs("010") || *x == bs("101")).unwrap();
        let c = synth_phase_oracle(&f);
        assert_eq!(c.gate_count(), 8);
        assert_eq!(c.depth(), 6);
        assert_eq!(c.optimize_x_cancellation().depth(), 5);
        let mut expected = vec![re(1.0); 8];
        expected[2] = re(-1.0);
        expected[5] = re(-1.0);
        assert_eq!(c.unitary_of().unwrap(), diag(&expected));
    }

    #[test]
    fn zero_function_gives_empty_oracle() {
        let c = synth_phase_oracle(&TruthTable::zero(3).unwrap());
        assert!(c.is_empty());
        assert_eq!(c.unitary_of().unwrap(), Matrix::identity(8));
    }

    #[test]
    fn all_ones_block_has_no_x() {
        let c = synth_phase_oracle(&point_function(&BitString::ones(4)));
        assert_eq!(c.gate_count(), 1);
        assert_eq!(c.depth(), 1);
        let c = synth_phase_oracle(&point_function(&bs("0110")));
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn bv_oracle_depth() {
        // 32 blocks, one of them all-ones
        let c = synth_phase_oracle(&hidden_string_function(&bs("001011")));
        assert_eq!(c.depth(), 3 * 31 + 1);
        let c = synth_phase_oracle(&hidden_string_function(&bs("001010")));
        assert_eq!(c.depth(), 3 * 32);
    }

    #[test]
    fn zero_reflection() {
        let c = synth_zero_reflection(2).unwrap();
        assert_eq!(
            c.unitary_of().unwrap(),
            diag(&[re(-1.0), re(1.0), re(1.0), re(1.0)])
        );
        let one = synth_zero_reflection(1).unwrap();
        assert_eq!(one.unitary_of().unwrap(), diag(&[re(-1.0), re(1.0)]));
        for n in 1..=6 {
            let c = synth_zero_reflection(n).unwrap();
            assert_eq!(c.depth(), 3);
            assert_eq!(c.gate_count(), 2 * n + 1);
        }
    }

    #[test]
    fn rotation_oracle() {
        let phi = 2.1269;
        let c = synth_rotation_oracle(&point_function(&bs("101")), phi).unwrap();
        assert_eq!(c.gate_count(), 3);
        assert_eq!(c.depth(), 3);
        let mut expected = vec![re(1.0); 8];
        expected[5] = C64::from_polar(1.0, phi);
        assert!(c.unitary_of().unwrap().max_abs_diff(&diag(&expected)) < 1e-15);

        let ones = synth_rotation_oracle(&point_function(&BitString::ones(3)), phi).unwrap();
        assert_eq!(ones.gate_count(), 1);
        assert_eq!(ones.depth(), 1);

        let f = point_function(&bs("0110"));
        let by_pi = synth_rotation_oracle(&f, std::f64::consts::PI).unwrap();
        let flip = synth_phase_oracle(&f);
        assert!(
            by_pi
                .unitary_of()
                .unwrap()
                .max_abs_diff_up_to_phase(&flip.unitary_of().unwrap())
                < 1e-12
        );

        let two = TruthTable::from_fn(3, |x| x.hamming_weight() == 3 || x.index() == 0).unwrap();
        assert_eq!(
            synth_rotation_oracle(&two, phi),
            Err(Error::RotationRequiresUniqueTarget(2))
        );
    }

    #[test]
    fn zero_rotation() {
        let phi = 2.1269;
        let c = synth_zero_rotation(3, phi).unwrap();
        let mut expected = vec![re(1.0); 8];
        expected[0] = C64::from_polar(1.0, phi);
        assert!(c.unitary_of().unwrap().max_abs_diff(&diag(&expected)) < 1e-15);
        assert_eq!(c.depth(), 3);
        assert!(
            synth_zero_rotation(3, 0.0)
                .unwrap()
                .unitary_of()
                .unwrap()
                .max_abs_diff(&Matrix::identity(8))
                < 1e-15
        );
        let by_pi = synth_zero_rotation(2, std::f64::consts::PI).unwrap();
        let refl = synth_zero_reflection(2).unwrap();
        assert!(
            by_pi
                .unitary_of()
                .unwrap()
                .max_abs_diff_up_to_phase(&refl.unitary_of().unwrap())
                < 1e-12
        );
    }
}
