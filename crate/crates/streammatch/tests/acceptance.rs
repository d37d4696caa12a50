//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! 1. Oracle equivalence of the blossom solver against brute force.
//! 2. Certified worst-case ratios never violated across a generated corpus.
//! 3. The full inequality audit holds on that corpus and on an exhaustive
//!    sweep of small connected graphs under all (capped) stream orders.
//! 4. Structural invariants on a dedicated randomized sweep.
//! 5. Memory contract at scale.
//! 6. Tightness probes on the adversarial-path family.

use streammatch::audit::audit_run;
use streammatch::check::validate_run;
use streammatch::exact::{brute_force_max_size, max_matching};
use streammatch::gen::{generate, FamilySpec};
use streammatch::rng::XorShift64;
use streammatch::stream::explicit_order;
use streammatch::{
    make_order, run_multi_pass, AlgoId, Graph, Instance, Matching, OrderPolicy, StreamOrder,
};

fn lex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..k).collect();
    let mut all = Vec::new();
    loop {
        all.push(items.clone());
        if !next_permutation(&mut items) {
            break;
        }
    }
    all
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> Graph {
    let chosen: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &p)| p)
        .collect();
    Graph::from_pairs(n, &chosen)
}

fn is_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask & (1 << i) != 0 {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

/// Connected graphs on exactly `n` labelled vertices, one representative per
/// isomorphism class (the lexicographically least edge mask).
fn connected_representatives(n: usize) -> Vec<Graph> {
    let pairs = lex_pairs(n);
    let np = pairs.len();
    let perms = permutations(n);
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = i;
        pair_index[v][u] = i;
    }
    let remap: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| {
            pairs
                .iter()
                .map(|&(u, v)| pair_index[perm[u]][perm[v]])
                .collect()
        })
        .collect();
    let mut reps = Vec::new();
    for mask in 0..(1u32 << np) {
        if !is_connected(n, &pairs, mask) {
            continue;
        }
        let mut canon = mask;
        for row in &remap {
            let mut mapped = 0u32;
            for (i, &j) in row.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    mapped |= 1 << j;
                }
            }
            canon = canon.min(mapped);
        }
        if canon == mask {
            reps.push(graph_from_mask(n, &pairs, mask));
        }
    }
    reps
}

/// All `m!` stream orders when that is at most 5040, otherwise a
/// deterministic cap of 5040 orders (file, reverse, seeded shuffles).
fn capped_orders(m: usize) -> Vec<StreamOrder> {
    const CAP: usize = 5040;
    if m <= 7 {
        permutations(m).into_iter().map(explicit_order).collect()
    } else {
        let mut orders = Vec::with_capacity(CAP);
        orders.push(make_order(m, OrderPolicy::File, 0));
        orders.push(make_order(m, OrderPolicy::Reverse, 0));
        for seed in 0..(CAP as u64 - 2) {
            orders.push(make_order(m, OrderPolicy::Random, seed));
        }
        orders
    }
}

/// Runs, validates structure, audits every applicable inequality, and checks
/// the certified ratio. Returns the output size.
fn run_checked(algo: AlgoId, inst: &Instance, order: &StreamOrder, mstar: &Matching) -> usize {
    let run = run_multi_pass(algo, inst, order).unwrap_or_else(|e| {
        panic!("{} on {}: {e}", algo.name(), inst.name);
    });
    if let Err(msg) = validate_run(&run, inst) {
        panic!(
            "{} on {}: structural violation: {msg}",
            algo.name(),
            inst.name
        );
    }
    let report = audit_run(&run, mstar).unwrap_or_else(|e| {
        panic!("{} on {}: audit error: {e}", algo.name(), inst.name);
    });
    for r in &report.records {
        assert!(
            r.holds,
            "{} on {} (order {:?} seed {}): inequality {} fails: {} vs {}",
            algo.name(),
            inst.name,
            order.policy,
            order.seed,
            r.id,
            r.lhs,
            r.rhs
        );
    }
    let (num, den) = algo.guarantee();
    let out = run.output.len() as i64;
    let opt = mstar.len() as i64;
    assert!(
        den * out >= num * opt,
        "{} on {}: ratio bound violated: {den}*{out} < {num}*{opt}",
        algo.name(),
        inst.name
    );
    run.output.len()
}

fn random_subset_graph(rng: &mut XorShift64, n: usize, m: usize) -> Graph {
    let mut pairs = lex_pairs(n);
    rng.shuffle(&mut pairs);
    pairs.truncate(m);
    Graph::from_pairs(n, &pairs)
}

/// Exhaustive search for an augmenting path by backtracking over simple
/// alternating paths; independent certificate for optimality on small graphs.
fn has_augmenting_path(g: &Graph, m: &Matching) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let partner = m.partner_table(n);
    fn search(
        v: usize,
        adj: &[Vec<usize>],
        partner: &[Option<usize>],
        on_path: &mut [bool],
    ) -> bool {
        on_path[v] = true;
        for &u in &adj[v] {
            if on_path[u] || partner[v] == Some(u) {
                continue;
            }
            match partner[u] {
                None => {
                    on_path[v] = false;
                    return true;
                }
                Some(w) => {
                    if on_path[w] {
                        continue;
                    }
                    on_path[u] = true;
                    if search(w, adj, partner, on_path) {
                        on_path[u] = false;
                        on_path[v] = false;
                        return true;
                    }
                    on_path[u] = false;
                }
            }
        }
        on_path[v] = false;
        false
    }
    let mut on_path = vec![false; n];
    (0..n).any(|v| {
        partner[v].is_none() && !adj[v].is_empty() && search(v, &adj, &partner, &mut on_path)
    })
}

#[test]
fn criterion_1_oracle_equivalence() {
    let mut checked = 0usize;
    // every graph on up to 5 vertices
    for n in 1..=5usize {
        let pairs = lex_pairs(n);
        for mask in 0..(1u32 << pairs.len()) {
            let g = graph_from_mask(n, &pairs, mask);
            let exact = max_matching(&g);
            let brute = brute_force_max_size(&g).unwrap();
            assert_eq!(exact.len(), brute, "n = {n}, mask = {mask}");
            checked += 1;
        }
    }
    // sampled per edge-count bucket on 6 and 7 vertices
    let mut rng = XorShift64::new(0xACCE55);
    for n in [6usize, 7] {
        let max_m = n * (n - 1) / 2;
        for m in 0..=max_m {
            for _ in 0..2000 {
                let g = random_subset_graph(&mut rng, n, m);
                let exact = max_matching(&g);
                let brute = brute_force_max_size(&g).unwrap();
                assert_eq!(exact.len(), brute, "n = {n}, m = {m}");
                if checked % 50 == 0 {
                    assert!(
                        !has_augmenting_path(&g, &exact),
                        "augmenting path exists for n = {n}, m = {m}"
                    );
                }
                checked += 1;
            }
        }
    }
    // random graphs up to 14 vertices, within the oracle's edge budget
    for seed in 0..500u64 {
        let mut rng = XorShift64::new(seed + 1);
        let n = 1 + rng.next_below(14);
        let cap = (n * n.saturating_sub(1) / 2).min(24);
        let m = rng.next_below(cap + 1);
        let g = random_subset_graph(&mut rng, n, m);
        assert_eq!(
            max_matching(&g).len(),
            brute_force_max_size(&g).unwrap(),
            "seed = {seed}"
        );
        checked += 1;
    }
    println!("criterion 1: PASS - oracle equivalence on {checked} graphs");
}

fn corpus() -> Vec<Instance> {
    let probabilities = [0.04, 0.08, 0.15, 0.3, 0.5, 0.8];
    let mut instances = Vec::new();
    for i in 0..5000usize {
        let seed = i as u64;
        let p = probabilities[(i / 5) % probabilities.len()];
        let spec = match i % 5 {
            0 => FamilySpec::Gnp {
                n: 2 + (i / 5) % 59,
                p,
                seed,
            },
            1 => FamilySpec::Bipartite {
                n1: 1 + (i / 5) % 30,
                n2: 1 + (i / 7) % 30,
                p: p.max(0.1),
                seed,
            },
            2 => FamilySpec::TriangleFree {
                n: 2 + (i / 5) % 59,
                p: p.max(0.1),
                seed,
            },
            3 => FamilySpec::AdversarialPaths {
                k: 1 + (i / 5) % 12,
            },
            _ => FamilySpec::ComponentsMix {
                n: 2 + (i / 5) % 59,
                seed,
            },
        };
        instances.push(generate(spec).unwrap());
    }
    instances
}

#[test]
fn criterion_2_and_3_ratio_bounds_and_audit_on_corpus() {
    let instances = corpus();
    assert!(instances.len() >= 5000);
    let mut runs = 0usize;
    for (i, inst) in instances.iter().enumerate() {
        let mstar = max_matching(&inst.graph);
        let triangle_free = !inst.graph.contains_triangle();
        let m = inst.edge_count();
        let orders = [
            make_order(m, OrderPolicy::File, 0),
            make_order(m, OrderPolicy::Reverse, 0),
            make_order(m, OrderPolicy::Random, i as u64),
        ];
        for order in &orders {
            for algo in AlgoId::ALL {
                if algo == AlgoId::WingTf && !triangle_free {
                    continue;
                }
                run_checked(algo, inst, order, &mstar);
                runs += 1;
            }
        }
    }
    println!(
        "criterion 2: PASS - certified ratios hold on {} instances ({} runs)",
        instances.len(),
        runs
    );
    println!("criterion 3 (corpus half): PASS - every audited inequality holds on {runs} runs");
}

#[test]
fn criterion_3_exhaustive_small_graph_audit() {
    let mut graphs = 0usize;
    let mut runs = 0usize;
    for n in 1..=6usize {
        for g in connected_representatives(n) {
            let mstar = max_matching(&g);
            let inst = Instance::new(format!("sweep-n{n}-m{}", g.edge_count()), g);
            graphs += 1;
            for order in capped_orders(inst.edge_count()) {
                for algo in [AlgoId::Tri2, AlgoId::Tri3] {
                    run_checked(algo, &inst, &order, &mstar);
                    runs += 1;
                }
            }
        }
    }
    assert!(
        graphs >= 143,
        "expected at least 143 isomorphism classes, saw {graphs}"
    );
    println!(
        "criterion 3 (exhaustive half): PASS - tri2/tri3 audits hold on {graphs} graphs, {runs} runs"
    );
}

#[test]
fn criterion_4_structural_invariants() {
    let mut runs = 0usize;
    for seed in 0..300u64 {
        let mut rng = XorShift64::new(seed * 7 + 1);
        let n = 2 + rng.next_below(40);
        let max_m = n * (n - 1) / 2;
        let m = rng.next_below(max_m.min(160) + 1);
        let mut pairs = Vec::with_capacity(m);
        for _ in 0..m {
            let a = rng.next_below(n);
            let b = rng.next_below(n);
            if a != b {
                pairs.push((a, b)); // duplicates intentionally allowed
            }
        }
        let inst = Instance::new(format!("struct-{seed}"), Graph::from_pairs(n, &pairs));
        let mstar = max_matching(&inst.graph);
        let triangle_free = !inst.graph.contains_triangle();
        for policy in [OrderPolicy::File, OrderPolicy::Random] {
            let order = make_order(inst.edge_count(), policy, seed);
            for algo in AlgoId::ALL {
                if algo == AlgoId::WingTf && !triangle_free {
                    continue;
                }
                run_checked(algo, &inst, &order, &mstar);
                runs += 1;
            }
        }
    }
    println!("criterion 4: PASS - structural invariants hold on {runs} randomized runs");
}

#[test]
fn criterion_5_memory_contract() {
    let inst = generate(FamilySpec::Gnp {
        n: 2000,
        p: 0.1,
        seed: 99,
    })
    .unwrap();
    let m = inst.edge_count();
    assert!(
        (150_000..=250_000).contains(&m),
        "expected roughly 200k edges, got {m}"
    );
    let n = inst.vertex_count();
    let order = make_order(m, OrderPolicy::File, 0);
    for algo in AlgoId::ALL {
        let run = run_multi_pass(algo, &inst, &order).unwrap();
        let peak = run.meter.peak_retained_edges();
        assert!(
            peak <= 2 * n,
            "{}: peak {} exceeds 2n = {}",
            algo.name(),
            peak,
            2 * n
        );
        for (pass, &p) in run.meter.per_pass_peaks().iter().enumerate() {
            assert!(
                p <= 2 * n,
                "{} pass {}: peak {} exceeds 2n",
                algo.name(),
                pass + 1,
                p
            );
        }
    }
    println!("criterion 5: PASS - peak retained edges <= 2n for all algorithms on n=2000, m={m}");
}

#[test]
fn criterion_6_tightness_probes() {
    for k in [3usize, 10, 100] {
        let inst = generate(FamilySpec::AdversarialPaths { k }).unwrap();
        let mstar = max_matching(&inst.graph);
        assert_eq!(mstar.len(), 2 * k, "optimum of {k} disjoint 4-paths");
        if k == 3 {
            assert_eq!(brute_force_max_size(&inst.graph).unwrap(), 6);
        }
        let order = make_order(inst.edge_count(), OrderPolicy::File, 0);
        let greedy_out = run_checked(AlgoId::Greedy, &inst, &order, &mstar);
        assert_eq!(
            2 * greedy_out,
            mstar.len(),
            "greedy must land exactly on 1/2"
        );
        let wing_out = run_checked(AlgoId::WingTf, &inst, &order, &mstar);
        assert_eq!(wing_out, mstar.len(), "wing-tf must recover the optimum");
    }
    println!("criterion 6: PASS - greedy pinned to 1/2 and wing-tf to 1 on adversarial paths");
}
