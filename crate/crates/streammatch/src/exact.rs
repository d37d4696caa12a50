//! Exact maximum matching on general graphs.
//!
//! `max_matching` is the ground truth for every ratio measurement and also a
//! subroutine of the algorithms themselves (final matching extraction and the
//! auxiliary-graph matching). It is the classic blossom-contraction search:
//! grow a BFS forest of alternating paths from each free vertex, contract
//! odd cycles to their base, and flip the matching along any augmenting path
//! found. All iteration is in increasing vertex order, so the output is
//! deterministic.

use crate::graph::{Edge, Graph, Matching, VertexId};

const NONE: usize = usize::MAX;

struct Search {
    mate: Vec<usize>,
    /// BFS parent of odd-level vertices (the vertex that discovered them).
    parent: Vec<usize>,
    /// Blossom base of each vertex after contractions.
    base: Vec<usize>,
    in_queue: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Search {
    fn new(n: usize) -> Search {
        Search {
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_queue: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    /// Lowest common ancestor of `v` and `w` in the alternating forest,
    /// walking over blossom bases.
    fn lca(&self, mut v: usize, mut w: usize) -> usize {
        let n = self.mate.len();
        let mut on_path = vec![false; n];
        loop {
            v = self.base[v];
            on_path[v] = true;
            if self.mate[v] == NONE {
                break;
            }
            v = self.parent[self.mate[v]];
        }
        loop {
            w = self.base[w];
            if on_path[w] {
                return w;
            }
            w = self.parent[self.mate[w]];
        }
    }

    /// Marks the blossom path from `v` down to base `b`, rerouting parents
    /// through `child` (the vertex on the other side of the closing edge).
    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from the free vertex `start`. Returns the
    /// free endpoint discovered, with `parent` encoding the path.
    fn find_path(&mut self, start: usize, adj: &[Vec<VertexId>]) -> Option<usize> {
        let n = self.mate.len();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.in_queue.iter_mut().for_each(|q| *q = false);
        for (v, b) in self.base.iter_mut().enumerate() {
            *b = v;
        }
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        self.in_queue[start] = true;
        while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == start || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Closing edge of an odd cycle: contract the blossom.
                    let b = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, b, to);
                    self.mark_path(to, b, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = b;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    if !self.in_queue[m] {
                        self.in_queue[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
        None
    }

    /// Flips matched/unmatched status along the path ending at `finish`.
    fn apply_path(&mut self, finish: usize) {
        let mut v = finish;
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

/// Maximum-cardinality matching of an arbitrary simple graph.
pub fn max_matching(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut search = Search::new(n);
    for v in 0..n {
        if search.mate[v] == NONE && !adj[v].is_empty() {
            if let Some(finish) = search.find_path(v, &adj) {
                search.apply_path(finish);
            }
        }
    }
    let mut m = Matching::new();
    for v in 0..n {
        let p = search.mate[v];
        if p != NONE && v < p {
            m.insert(Edge::new(v, p)).expect("mate table is a matching");
        }
    }
    m
}

/// Largest number of edges the brute-force oracle will accept.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleScaleError {
    pub edges: usize,
}

impl std::fmt::Display for OracleScaleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "brute-force oracle refuses {} edges (limit {BRUTE_FORCE_EDGE_LIMIT})",
            self.edges
        )
    }
}

impl std::error::Error for OracleScaleError {}

/// Maximum matching size by exhaustive include/exclude branching over the
/// edge list. Independent of `max_matching`; guarded to oracle scale.
pub fn brute_force_max_size(g: &Graph) -> Result<usize, OracleScaleError> {
    if g.edge_count() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(OracleScaleError {
            edges: g.edge_count(),
        });
    }
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.sort_unstable();
    edges.dedup();
    let mut used = vec![false; g.vertex_count()];
    let mut best = 0;
    branch(&edges, 0, 0, &mut used, &mut best);
    Ok(best)
}

fn branch(edges: &[Edge], idx: usize, have: usize, used: &mut [bool], best: &mut usize) {
    *best = (*best).max(have);
    // Even taking every remaining edge cannot beat the best found.
    if have + (edges.len() - idx) <= *best {
        return;
    }
    if idx == edges.len() {
        return;
    }
    let e = edges[idx];
    if !used[e.a()] && !used[e.b()] {
        used[e.a()] = true;
        used[e.b()] = true;
        branch(edges, idx + 1, have + 1, used, best);
        used[e.a()] = false;
        used[e.b()] = false;
    }
    branch(edges, idx + 1, have, used, best);
}
