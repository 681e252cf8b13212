use dqsim_core::algorithms::{
    build_dbva, build_dbva_with_fill, build_dega, run_distributed, NodePlan,
};
use dqsim_core::boolfn::{
    hidden_string_function, multilinear_degree, part_ranges, point_function, PartLayout,
};
use dqsim_core::noise::{evolve_density, noisy_distribution, noisy_transform};
use dqsim_core::oracle::{synth_phase_oracle, synth_rotation_oracle};
use dqsim_core::{
    BitString, Circuit, DensityState, Execution, GateKind, NoiseModel, Parameterization,
    StateVector, TruthTable, C64,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn bits(n: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), n).prop_map(|v| BitString::new(v).unwrap())
}

fn sized_bits(lo: usize, hi: usize) -> impl Strategy<Value = BitString> {
    (lo..=hi).prop_flat_map(bits)
}

fn table(lo: usize, hi: usize) -> impl Strategy<Value = TruthTable> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |v| TruthTable::new(n, v).unwrap())
    })
}

/// Splits `n` into a random contiguous plan.
fn plan(n: usize) -> impl Strategy<Value = NodePlan> {
    prop::collection::vec(any::<bool>(), n - 1).prop_map(move |cuts| {
        let mut sizes = vec![1];
        for cut in cuts {
            if cut {
                sizes.push(1);
            } else {
                *sizes.last_mut().unwrap() += 1;
            }
        }
        NodePlan::new(sizes).unwrap()
    })
}

#[derive(Debug, Clone)]
enum Op {
    Gate(GateKind, Vec<usize>),
    Barrier,
}

fn op(n: usize) -> BoxedStrategy<Op> {
    let single = prop_oneof![
        Just(GateKind::X),
        Just(GateKind::X),
        Just(GateKind::Y),
        Just(GateKind::Z),
        Just(GateKind::H),
        Just(GateKind::T),
        Just(GateKind::Tdg),
        (-3.0..3.0f64).prop_map(GateKind::PhaseShift),
    ];
    let single = (single, 0..n).prop_map(|(k, w)| Op::Gate(k, vec![w]));
    if n < 2 {
        return prop_oneof![4 => single, 1 => Just(Op::Barrier)].boxed();
    }
    let multi = prop_oneof![
        Just(GateKind::MultiControlledZ),
        Just(GateKind::MultiControlledX),
        (-3.0..3.0f64).prop_map(GateKind::MultiControlledPhaseShift),
    ];
    let wires = (2..=n).prop_flat_map(move |k| {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |mut w| {
                w.truncate(k);
                w
            })
    });
    prop_oneof![
        4 => single,
        2 => (multi, wires).prop_map(|(k, w)| Op::Gate(k, w)),
        1 => Just(Op::Barrier),
    ]
    .boxed()
}

fn build(n: usize, ops: &[Op], barriers: bool) -> Circuit {
    let mut c = Circuit::new(n);
    for o in ops {
        match o {
            Op::Gate(k, w) => {
                c.push(*k, w).unwrap();
            }
            Op::Barrier if barriers => {
                c.barrier().unwrap();
            }
            Op::Barrier => {}
        }
    }
    c
}

fn circuit(lo: usize, hi: usize, len: usize) -> impl Strategy<Value = (usize, Vec<Op>)> {
    (lo..=hi).prop_flat_map(move |n| (Just(n), prop::collection::vec(op(n), 0..len)))
}

fn min_eigenvalue(rho: &DensityState) -> f64 {
    let d = rho.dim();
    let m = DMatrix::from_fn(d, d, |r, c| {
        let z = rho.get(r, c);
        nalgebra::Complex::new(z.re, z.im)
    });
    m.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn optimizer_is_sound_and_monotone((n, ops) in circuit(1, 4, 30)) {
        let c = build(n, &ops, true);
        let opt = c.optimize_x_cancellation();
        prop_assert_eq!(opt.unitary_of().unwrap().max_abs_diff(&c.unitary_of().unwrap()), 0.0);
        prop_assert!(opt.gate_count() <= c.gate_count());
        prop_assert!(opt.depth() <= c.depth());
        prop_assert_eq!(opt.optimize_x_cancellation(), opt);
    }

    #[test]
    fn barriers_change_neither_count_nor_unitary((n, ops) in circuit(1, 4, 20)) {
        let with = build(n, &ops, true);
        let without = build(n, &ops, false);
        prop_assert_eq!(with.gate_count(), without.gate_count());
        prop_assert_eq!(with.unitary_of().unwrap().max_abs_diff(&without.unitary_of().unwrap()), 0.0);
        prop_assert!(with.depth() >= without.depth());
    }

    #[test]
    fn text_format_round_trips((n, ops) in circuit(1, 5, 20)) {
        let mut c = build(n, &ops, true);
        c.measure_all().unwrap();
        prop_assert_eq!(Circuit::deserialize(&c.serialize()).unwrap(), c);
    }

    #[test]
    fn phase_oracle_contract(f in table(1, 5)) {
        let u = synth_phase_oracle(&f).unitary_of().unwrap();
        for x in 0..1usize << f.arity() {
            for y in 0..1usize << f.arity() {
                let expected = match (x == y, f.eval_index(x)) {
                    (false, _) => C64::new(0.0, 0.0),
                    (true, false) => C64::new(1.0, 0.0),
                    (true, true) => C64::new(-1.0, 0.0),
                };
                prop_assert_eq!(u.get(y, x), expected);
            }
        }
    }

    #[test]
    fn rotation_oracle_contract(target in sized_bits(1, 5), phi in -3.0..3.0f64) {
        let f = point_function(&target);
        let u = synth_rotation_oracle(&f, phi).unwrap().unitary_of().unwrap();
        for x in 0..1usize << target.len() {
            let expected = if x == target.index() { C64::from_polar(1.0, phi) } else { C64::new(1.0, 0.0) };
            prop_assert!((u.get(x, x) - expected).norm() < 1e-12);
        }
        prop_assert!(u.is_unitary(1e-12));
    }

    #[test]
    fn hidden_string_counting_and_degree(s in sized_bits(1, 10)) {
        let f = hidden_string_function(&s);
        let expected = if s.hamming_weight() == 0 { 0 } else { 1 << (s.len() - 1) };
        prop_assert_eq!(f.satisfying_count(), expected);
        prop_assert_eq!(multilinear_degree(&f).unwrap(), s.hamming_weight());
        prop_assert_eq!(f.hidden_string(), Some(s));
    }

    #[test]
    fn dbva_recovery_ignores_fill((s, p) in (2usize..=6).prop_flat_map(|n| (bits(n), plan(n)))) {
        let f = hidden_string_function(&s);
        for fill in 0..1usize << s.len() {
            let dc = build_dbva_with_fill(&f, &p, &BitString::from_index(fill, s.len())).unwrap();
            let r = run_distributed(&dc, Execution::Sequential).unwrap();
            prop_assert_eq!(&r.recovered, &s);
            prop_assert!((r.probability - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn dbva_depth_bound((s, p) in (2usize..=8).prop_flat_map(|n| (bits(n), plan(n)))) {
        let dc = build_dbva(&hidden_string_function(&s), &p).unwrap().optimized();
        let widest = p.sizes().iter().copied().max().unwrap();
        prop_assert!(dc.depth() <= (1 << widest) + 3);
    }

    #[test]
    fn dega_parts_find_target_slices(t in sized_bits(2, 8), leading in any::<bool>()) {
        let layout = if leading { PartLayout::LeadingRemainder } else { PartLayout::TrailingRemainder };
        let dc = build_dega(&point_function(&t), layout).unwrap();
        let ranges = part_ranges(t.len(), layout);
        let r = run_distributed(&dc, Execution::Sequential).unwrap();
        prop_assert_eq!(r.parts.len(), ranges.len());
        for (part, range) in r.parts.iter().zip(ranges) {
            prop_assert!(range.len() == 2 || range.len() == 3);
            prop_assert_eq!(&part.substring, &t.slice(range.clone()));
            prop_assert_eq!(part.positions.clone(), range);
            prop_assert!((part.probability - 1.0).abs() < 1e-9);
        }
        // a part whose slice is all ones needs no X layers around its oracle calls
        let part_depth = |p: &dqsim_core::algorithms::PartCircuit| {
            let (full, calls) = if p.positions.len() == 3 { (17, 2) } else { (9, 1) };
            if t.slice(p.positions.clone()).hamming_weight() == p.positions.len() { full - 2 * calls } else { full }
        };
        prop_assert_eq!(dc.depth(), dc.parts().iter().map(part_depth).max().unwrap());
        prop_assert_eq!(r.recovered, t);
    }

    #[test]
    fn pure_and_mixed_evolution_agree((n, ops) in circuit(1, 4, 25)) {
        let c = build(n, &ops, true);
        let psi = StateVector::simulate(&c).unwrap();
        let from_pure = DensityState::from_pure(&psi).unwrap();
        let mut rho = DensityState::zero(n).unwrap();
        rho.run(&c).unwrap();
        for r in 0..rho.dim() {
            for col in 0..rho.dim() {
                prop_assert!((rho.get(r, col) - from_pure.get(r, col)).norm() < 1e-10);
            }
        }
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn noisy_states_stay_physical((n, ops) in circuit(1, 3, 15), p in 0.0..=1.0f64, mix in any::<bool>()) {
        let param = if mix { Parameterization::UniformMix } else { Parameterization::PauliThirds };
        let program = noisy_transform(&build(n, &ops, true), NoiseModel::new(p, param).unwrap());
        let rho = evolve_density(&program, &DensityState::zero(n).unwrap()).unwrap();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(rho.trace().im.abs() < 1e-10);
        prop_assert!(rho.hermiticity_error() < 1e-10);
        prop_assert!(min_eigenvalue(&rho) > -1e-10);
    }

    #[test]
    fn channels_follow_wires((n, ops) in circuit(1, 4, 20)) {
        let c = build(n, &ops, true);
        let program = noisy_transform(&c, NoiseModel::new(0.1, Parameterization::PauliThirds).unwrap());
        let expected: usize = c.gates().iter().filter(|g| g.kind.is_unitary()).map(|g| g.wires.len()).sum();
        prop_assert_eq!(program.channel_count(), expected);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn target_probability_falls_with_noise(t in sized_bits(2, 3), a in 0.0..0.2f64, b in 0.0..0.2f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let c = dqsim_core::algorithms::build_grover(&point_function(&t)).unwrap();
        for param in Parameterization::ALL {
            let at = |p| noisy_distribution(&c, NoiseModel::new(p, param).unwrap()).unwrap().get(&t);
            prop_assert!(at(hi) <= at(lo) + 1e-12);
        }
    }
}

#[test]
fn uniform_mix_at_one_is_maximally_mixed() {
    let c = dqsim_core::algorithms::build_grover(&point_function(&"10".parse().unwrap())).unwrap();
    let d = noisy_distribution(
        &c,
        NoiseModel::new(1.0, Parameterization::UniformMix).unwrap(),
    )
    .unwrap();
    for p in d.as_slice() {
        assert!((p - 0.25).abs() < 1e-12);
    }
}
