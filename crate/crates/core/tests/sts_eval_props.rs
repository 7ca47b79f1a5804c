use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supertask::eval::{state_at, state_at_finite, verify_limit_consistency, Rule};
use supertask::sts::{parse_sts, StateId, StateTransitionSystem};
use supertask::Ordinal;

fn build(targets: &[usize], starts: &[usize]) -> StateTransitionSystem {
    let labels: Vec<String> = (0..targets.len()).map(|i| format!("s{i}")).collect();
    let start_labels: Vec<String> = starts.iter().map(|&i| labels[i].clone()).collect();
    let edges: Vec<(String, String)> = targets
        .iter()
        .enumerate()
        .map(|(i, &t)| (labels[i].clone(), labels[t].clone()))
        .collect();
    StateTransitionSystem::new(&labels, &start_labels, &edges, None).unwrap()
}

fn random_sts(rng: &mut ChaCha8Rng, max_states: usize) -> StateTransitionSystem {
    let n = rng.gen_range(1..=max_states);
    let targets: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let starts: Vec<usize> = (0..rng.gen_range(1..=n.min(3)))
        .map(|_| rng.gen_range(0..n))
        .collect();
    build(&targets, &starts)
}

fn arb_sts() -> impl Strategy<Value = StateTransitionSystem> {
    (1usize..30)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0..n, n),
                prop::collection::vec(0..n, 1..=n.min(4)),
            )
        })
        .prop_map(|(t, s)| build(&t, &s))
}

fn naive(sts: &StateTransitionSystem, start: StateId, n: u64) -> StateId {
    (0..n).fold(start, |s, _| sts.next(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rho_shape_invariants(sts in arb_sts()) {
        for s in sts.states() {
            let rho = sts.rho_analyze(s);
            prop_assert!(rho.period >= 1);
            prop_assert!(rho.tail_length + rho.period <= sts.len());
            prop_assert_eq!(rho.cycle.len(), rho.period);
            prop_assert_eq!(rho.cycle[0], rho.entry_node);
            let back = (0..rho.period).fold(rho.entry_node, |x, _| sts.next(x));
            prop_assert_eq!(back, rho.entry_node);

            let visited: Vec<StateId> = sts.run(s).take(rho.tail_length + rho.period).collect();
            let mut distinct = visited.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(distinct.len(), visited.len());
            prop_assert_eq!(visited[rho.tail_length], rho.entry_node);
            prop_assert_eq!(&visited[rho.tail_length..], rho.cycle.as_slice());
        }
    }

    #[test]
    fn serialization_round_trips(sts in arb_sts()) {
        let text = sts.to_string();
        let back = parse_sts(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, sts);
    }

    #[test]
    fn validation_is_advisory(sts in arb_sts()) {
        let before: Vec<_> = sts.states().map(|s| state_at(&sts, s, &Ordinal::omega())).collect();
        let _ = sts.validate();
        let after: Vec<_> = sts.states().map(|s| state_at(&sts, s, &Ordinal::omega())).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn limit_and_remainder_rules(sts in arb_sts(), q in 0u64..12) {
        let limits: Vec<Ordinal> = ["w", "w*2", "w^2", "w^2+w", "w^(w)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for s in sts.states() {
            let rho = sts.rho_analyze(s);
            let expected = (0..q).fold(rho.entry_node, |x, _| sts.next(x));
            for lim in &limits {
                let at_limit = state_at(&sts, s, lim);
                prop_assert_eq!(at_limit.final_state, rho.entry_node);
                prop_assert_eq!(at_limit.rule_applied, Rule::LimitEntryNode);
                let with_tail = state_at(&sts, s, &lim.add(&Ordinal::from(q)));
                prop_assert_eq!(with_tail.final_state, expected);
            }
        }
    }

    #[test]
    fn evaluation_is_deterministic(sts in arb_sts(), n in 0u64..500) {
        let rt = Ordinal::omega().add(&Ordinal::from(n));
        for s in sts.states() {
            prop_assert_eq!(state_at(&sts, s, &rt), state_at(&sts, s, &rt));
            let fin = state_at(&sts, s, &Ordinal::from(n));
            prop_assert_eq!(fin.rule_applied, Rule::FiniteIteration);
            prop_assert_eq!(fin.final_state, naive(&sts, s, n));
        }
    }
}

#[test]
fn finite_agreement_with_naive_iteration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..30 {
        let sts = random_sts(&mut rng, 50);
        for s in sts.states().take(5) {
            let mut cur = s;
            for n in 0..=10_000u64 {
                if n % 97 == 0 || n == 10_000 {
                    assert_eq!(state_at_finite(&sts, s, n), cur, "n = {n}");
                }
                cur = sts.next(cur);
            }
        }
    }
}

#[test]
fn twenty_five_states_far_out() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let targets: Vec<usize> = (0..25).map(|_| rng.gen_range(0..25)).collect();
    let sts = build(&targets, &[0]);
    let s = StateId(0);
    assert_eq!(state_at_finite(&sts, s, 9999), naive(&sts, s, 9999));
}

#[test]
fn limit_consistency_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..100 {
        let sts = random_sts(&mut rng, 25);
        for &s in sts.start_states() {
            assert!(verify_limit_consistency(&sts, s, 25));
        }
    }
}

#[test]
fn lamp_parity_coherence() {
    let lamp = StateTransitionSystem::thomson_lamp();
    let off = lamp.id("off").unwrap();
    for n in 0..200u64 {
        let rt = Ordinal::from(n);
        assert_eq!(state_at(&lamp, off, &rt).final_state == off, rt.is_even());
    }
    for rt in ["w", "w+1", "w*2", "w*2+3", "w^2+w+2"] {
        let rt: Ordinal = rt.parse().unwrap();
        assert_eq!(
            state_at(&lamp, off, &rt).final_state == off,
            rt.is_even(),
            "{rt}"
        );
    }
}
