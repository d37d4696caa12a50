//! Reproducible instance families for ratio measurement, property sweeps and
//! adversarial stress.

use std::fmt;

use crate::graph::{Edge, Graph};
use crate::rng::XorShift64;
use crate::stream::Instance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySpec {
    /// Erdos-Renyi: every pair independently with probability `p`.
    Gnp { n: usize, p: f64, seed: u64 },
    /// Random bipartite graph on fixed sides.
    Bipartite {
        n1: usize,
        n2: usize,
        p: f64,
        seed: u64,
    },
    /// Certified triangle-free family: random bipartite under a shuffled
    /// split, or a random subgraph of the circulant C_n(1, 3), which has no
    /// 3-cycle for n >= 8.
    TriangleFree { n: usize, p: f64, seed: u64 },
    /// `k` disjoint 4-vertex paths with every middle edge streamed first, so
    /// a greedy matching picks exactly the middles while the optimum takes
    /// both outer edges of every path.
    AdversarialPaths { k: usize },
    /// Small components of every shape (edges, paths, triangles, stars,
    /// cycles) plus a few random cross edges.
    ComponentsMix { n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamError {
    InvalidProbability(f64),
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::InvalidProbability(p) => write!(f, "probability {p} outside [0, 1]"),
        }
    }
}

impl std::error::Error for ParamError {}

fn check_probability(p: f64) -> Result<(), ParamError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ParamError::InvalidProbability(p));
    }
    Ok(())
}

/// Deterministic instance per (family, params, seed).
pub fn generate(spec: FamilySpec) -> Result<Instance, ParamError> {
    match spec {
        FamilySpec::Gnp { n, p, seed } => {
            check_probability(p)?;
            let mut rng = XorShift64::new(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_f64() < p {
                        edges.push(Edge::new(u, v));
                    }
                }
            }
            let name = format!("gnp-n{n}-p{p:.2}-s{seed}");
            Ok(Instance::new(name, Graph::new(n, edges).unwrap()))
        }
        FamilySpec::Bipartite { n1, n2, p, seed } => {
            check_probability(p)?;
            let mut rng = XorShift64::new(seed);
            let n = n1 + n2;
            let mut edges = Vec::new();
            for u in 0..n1 {
                for v in 0..n2 {
                    if rng.next_f64() < p {
                        edges.push(Edge::new(u, n1 + v));
                    }
                }
            }
            let name = format!("bipartite-{n1}x{n2}-p{p:.2}-s{seed}");
            Ok(Instance::new(name, Graph::new(n, edges).unwrap()))
        }
        FamilySpec::TriangleFree { n, p, seed } => {
            check_probability(p)?;
            let mut rng = XorShift64::new(seed);
            let graph = if seed % 2 == 0 || n < 8 {
                // random split into two sides, then bipartite
                let mut perm: Vec<usize> = (0..n).collect();
                rng.shuffle(&mut perm);
                let half = n / 2;
                let mut side = vec![false; n];
                for &v in &perm[..half] {
                    side[v] = true;
                }
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if side[u] != side[v] && rng.next_f64() < p {
                            edges.push(Edge::new(u, v));
                        }
                    }
                }
                Graph::new(n, edges).unwrap()
            } else {
                let mut edges = Vec::new();
                for step in [1usize, 3] {
                    for u in 0..n {
                        let v = (u + step) % n;
                        if u < v && rng.next_f64() < p {
                            edges.push(Edge::new(u, v));
                        }
                    }
                }
                Graph::new(n, edges).unwrap()
            };
            if n <= 200 {
                assert!(
                    !graph.contains_triangle(),
                    "triangle_free family produced a triangle (n = {n}, seed = {seed})"
                );
            }
            let name = format!("trianglefree-n{n}-p{p:.2}-s{seed}");
            Ok(Instance::new(name, graph))
        }
        FamilySpec::AdversarialPaths { k } => {
            let n = 4 * k;
            let mut edges = Vec::new();
            for i in 0..k {
                edges.push(Edge::new(4 * i + 1, 4 * i + 2));
            }
            for i in 0..k {
                edges.push(Edge::new(4 * i, 4 * i + 1));
                edges.push(Edge::new(4 * i + 2, 4 * i + 3));
            }
            let name = format!("advpaths-k{k}");
            Ok(Instance::new(name, Graph::new(n, edges).unwrap()))
        }
        FamilySpec::ComponentsMix { n, seed } => {
            let mut rng = XorShift64::new(seed);
            let mut edges = Vec::new();
            let mut v = 0;
            while v < n {
                let left = n - v;
                let size = 1 + rng.next_below(left.min(6));
                let group: Vec<usize> = (v..v + size).collect();
                match size {
                    1 => {}
                    2 => edges.push(Edge::new(group[0], group[1])),
                    _ => {
                        // a path over the group, optionally closed to a cycle
                        for w in group.windows(2) {
                            edges.push(Edge::new(w[0], w[1]));
                        }
                        if rng.next_below(2) == 0 {
                            edges.push(Edge::new(group[0], group[size - 1]));
                        }
                    }
                }
                v += size;
            }
            if n >= 2 {
                for _ in 0..n / 8 {
                    let a = rng.next_below(n);
                    let b = rng.next_below(n);
                    if a != b {
                        edges.push(Edge::new(a, b));
                    }
                }
            }
            let name = format!("mix-n{n}-s{seed}");
            Ok(Instance::new(name, Graph::new(n, edges).unwrap()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force_max_size;
    use crate::greedy::greedy_maximal;
    use crate::stream::{make_order, MemoryMeter, OrderPolicy};

    #[test]
    fn gnp_full_probability_is_complete() {
        let inst = generate(FamilySpec::Gnp {
            n: 6,
            p: 1.0,
            seed: 3,
        })
        .unwrap();
        assert_eq!(inst.edge_count(), 15);
    }

    #[test]
    fn bipartite_full_is_k33() {
        let inst = generate(FamilySpec::Bipartite {
            n1: 3,
            n2: 3,
            p: 1.0,
            seed: 0,
        })
        .unwrap();
        assert_eq!(inst.edge_count(), 9);
        assert!(!inst.graph.contains_triangle());
    }

    #[test]
    fn generation_is_deterministic() {
        for spec in [
            FamilySpec::Gnp {
                n: 20,
                p: 0.3,
                seed: 5,
            },
            FamilySpec::TriangleFree {
                n: 21,
                p: 0.5,
                seed: 5,
            },
            FamilySpec::ComponentsMix { n: 23, seed: 5 },
        ] {
            let a = generate(spec).unwrap();
            let b = generate(spec).unwrap();
            assert_eq!(a.graph, b.graph);
        }
    }

    #[test]
    fn triangle_free_is_certified() {
        for seed in 0..20 {
            let inst = generate(FamilySpec::TriangleFree {
                n: 40,
                p: 0.4,
                seed,
            })
            .unwrap();
            assert!(!inst.graph.contains_triangle());
        }
        for seed in 0..4 {
            let inst = generate(FamilySpec::TriangleFree {
                n: 200,
                p: 0.3,
                seed,
            })
            .unwrap();
            assert!(!inst.graph.contains_triangle());
        }
    }

    #[test]
    fn adversarial_paths_pin_greedy_to_half() {
        let inst = generate(FamilySpec::AdversarialPaths { k: 3 }).unwrap();
        assert_eq!(brute_force_max_size(&inst.graph).unwrap(), 6);
        let order = make_order(inst.edge_count(), OrderPolicy::File, 0);
        let m0 = greedy_maximal(inst.stream(&order), 12, &mut MemoryMeter::unbounded()).unwrap();
        assert_eq!(m0.len(), 3);
    }

    #[test]
    fn invalid_probability_is_rejected() {
        assert!(generate(FamilySpec::Gnp {
            n: 4,
            p: 1.5,
            seed: 0
        })
        .is_err());
        assert!(generate(FamilySpec::Bipartite {
            n1: 2,
            n2: 2,
            p: -0.1,
            seed: 0
        })
        .is_err());
    }
}
