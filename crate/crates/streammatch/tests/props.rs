//! Property tests: structural invariants and determinism under randomly
//! generated instances, stream orders and algorithms.

use proptest::prelude::*;

use streammatch::audit::audit_run;
use streammatch::check::validate_run;
use streammatch::exact::max_matching;
use streammatch::graph::is_matching;
use streammatch::{
    make_order, parse_instance, run_multi_pass, AlgoId, Edge, Graph, Instance, OrderPolicy,
};

/// A vertex count and an edge multiset over it (duplicates allowed).
fn instance_strategy() -> impl Strategy<Value = Instance> {
    (2usize..20).prop_flat_map(|n| {
        let edge =
            (0..n, 0..n).prop_filter_map("self-loop", |(a, b)| (a != b).then(|| Edge::new(a, b)));
        proptest::collection::vec(edge, 0..60)
            .prop_map(move |edges| Instance::new("prop", Graph::new(n, edges).unwrap()))
    })
}

proptest! {
    /// Every algorithm, on any instance and order: structure holds, every
    /// audited inequality holds, and the certified ratio is met.
    #[test]
    fn all_algorithms_validate_and_audit(
        inst in instance_strategy(),
        seed in any::<u64>(),
        policy_idx in 0usize..3,
    ) {
        let policy = [OrderPolicy::File, OrderPolicy::Reverse, OrderPolicy::Random][policy_idx];
        let order = make_order(inst.edge_count(), policy, seed);
        let mstar = max_matching(&inst.graph);
        let triangle_free = !inst.graph.contains_triangle();
        for algo in AlgoId::ALL {
            if algo == AlgoId::WingTf && !triangle_free {
                continue;
            }
            let run = run_multi_pass(algo, &inst, &order).unwrap();
            prop_assert!(validate_run(&run, &inst).is_ok(),
                "{}: {:?}", algo.name(), validate_run(&run, &inst));
            let report = audit_run(&run, &mstar).unwrap();
            for r in &report.records {
                prop_assert!(r.holds, "{}: {} lhs={} rhs={}", algo.name(), r.id, r.lhs, r.rhs);
            }
            let (num, den) = algo.guarantee();
            prop_assert!(den * run.output.len() as i64 >= num * mstar.len() as i64);
        }
    }

    /// Identical (instance, order, algorithm) triples reproduce identical
    /// outputs and meter readings.
    #[test]
    fn replay_determinism(inst in instance_strategy(), seed in any::<u64>()) {
        let order = make_order(inst.edge_count(), OrderPolicy::Random, seed);
        for algo in AlgoId::ALL {
            let a = run_multi_pass(algo, &inst, &order).unwrap();
            let b = run_multi_pass(algo, &inst, &order).unwrap();
            prop_assert_eq!(&a.output, &b.output);
            prop_assert_eq!(a.meter.peak_retained_edges(), b.meter.peak_retained_edges());
            prop_assert_eq!(a.meter.per_pass_peaks(), b.meter.per_pass_peaks());
        }
    }

    /// Orders are bijections on 0..m, and the random policy is a pure
    /// function of (m, seed).
    #[test]
    fn orders_are_permutations(m in 0usize..200, seed in any::<u64>()) {
        for policy in [OrderPolicy::File, OrderPolicy::Reverse, OrderPolicy::Random] {
            let order = make_order(m, policy, seed);
            let mut sorted = order.permutation.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..m).collect::<Vec<_>>());
        }
        prop_assert_eq!(
            make_order(m, OrderPolicy::Random, seed).permutation,
            make_order(m, OrderPolicy::Random, seed).permutation
        );
    }

    /// The exact solver's output is a matching no larger than any vertex
    /// cover bound and always at least the greedy baseline.
    #[test]
    fn exact_output_is_a_matching(inst in instance_strategy()) {
        let m = max_matching(&inst.graph);
        let edges: Vec<Edge> = m.iter().collect();
        prop_assert!(is_matching(inst.vertex_count(), &edges).unwrap());
        let order = make_order(inst.edge_count(), OrderPolicy::File, 0);
        let greedy = run_multi_pass(AlgoId::Greedy, &inst, &order).unwrap();
        prop_assert!(m.len() >= greedy.output.len());
    }

    /// Rendering an instance and parsing it back is the identity on the
    /// graph.
    #[test]
    fn render_parse_round_trip(inst in instance_strategy()) {
        let again = parse_instance(&inst.render()).unwrap();
        prop_assert_eq!(inst.graph, again.graph);
    }

    /// Edge equality is orientation-independent.
    #[test]
    fn edge_canonicalization(a in 0usize..100, b in 0usize..100) {
        prop_assume!(a != b);
        prop_assert_eq!(Edge::new(a, b), Edge::new(b, a));
        prop_assert_eq!(Edge::new(a, b).a() < Edge::new(a, b).b(), true);
    }
}
