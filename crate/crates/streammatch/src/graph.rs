//! Basic graph, matching and augmenting-path types shared by all algorithms.

use std::collections::BTreeMap;
use std::fmt;

/// Vertices are dense 0-based indices below the graph's vertex count.
pub type VertexId = usize;

/// An undirected edge, stored with its endpoints in increasing order so that
/// `Edge(a, b) == Edge(b, a)` under equality, ordering and hashing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: VertexId,
    b: VertexId,
}

impl Edge {
    /// Builds a canonical edge. Panics on a self-loop: every algorithm in
    /// this crate assumes two distinct endpoints.
    pub fn new(u: VertexId, v: VertexId) -> Edge {
        assert!(u != v, "self-loop ({u}, {v})");
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    /// Fallible constructor for untrusted input.
    pub fn try_new(u: VertexId, v: VertexId) -> Result<Edge, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(Edge::new(u, v))
    }

    pub fn a(&self) -> VertexId {
        self.a
    }

    pub fn b(&self) -> VertexId {
        self.b
    }

    pub fn endpoints(&self) -> [VertexId; 2] {
        [self.a, self.b]
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            assert_eq!(v, self.b, "vertex {v} not on edge {self:?}");
            self.a
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.a) || self.touches(other.b)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(VertexId),
    EndpointOutOfRange { vertex: VertexId, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::EndpointOutOfRange { vertex, n } => {
                write!(f, "endpoint {vertex} out of range for {n} vertices")
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// An undirected graph given as a vertex count and an ordered edge multiset.
/// The edge order defines the canonical stream order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Graph, GraphError> {
        for e in &edges {
            for v in e.endpoints() {
                if v >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: v, n });
                }
            }
        }
        Ok(Graph { n, edges })
    }

    /// Convenience constructor from endpoint pairs; panics on invalid input.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Graph {
        let edges = pairs.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        Graph::new(n, edges).expect("endpoint out of range")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted, deduplicated adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.a()].push(e.b());
            adj[e.b()].push(e.a());
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// True iff some triple of vertices is pairwise adjacent.
    pub fn contains_triangle(&self) -> bool {
        let adj = self.adjacency();
        for e in &self.edges {
            let (x, y) = (e.a(), e.b());
            let (short, long) = if adj[x].len() <= adj[y].len() {
                (&adj[x], &adj[y])
            } else {
                (&adj[y], &adj[x])
            };
            for &w in short {
                if w != x && w != y && long.binary_search(&w).is_ok() {
                    return true;
                }
            }
        }
        false
    }
}

/// A set of pairwise vertex-disjoint edges.
///
/// Internally a partner map (two entries per edge), which makes the
/// no-shared-vertex invariant cheap to maintain and gives O(log n) partner
/// lookups. Iteration order is canonical (sorted).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    partner: BTreeMap<VertexId, VertexId>,
}

impl Matching {
    pub fn new() -> Matching {
        Matching::default()
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Matching, ContractError> {
        let mut m = Matching::new();
        for e in edges {
            m.insert(e)?;
        }
        Ok(m)
    }

    /// Adds an edge, rejecting it if either endpoint is already matched.
    pub fn insert(&mut self, e: Edge) -> Result<(), ContractError> {
        if self.partner.contains_key(&e.a()) || self.partner.contains_key(&e.b()) {
            return Err(ContractError(format!(
                "edge {e:?} shares a vertex with the matching"
            )));
        }
        self.partner.insert(e.a(), e.b());
        self.partner.insert(e.b(), e.a());
        Ok(())
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        if self.partner.get(&e.a()) == Some(&e.b()) {
            self.partner.remove(&e.a());
            self.partner.remove(&e.b());
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.partner.get(&e.a()) == Some(&e.b())
    }

    pub fn covers(&self, v: VertexId) -> bool {
        self.partner.contains_key(&v)
    }

    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.partner.get(&v).copied()
    }

    /// Edges in canonical (sorted) order.
    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.partner
            .iter()
            .filter(|&(&v, &p)| v < p)
            .map(|(&v, &p)| Edge::new(v, p))
    }

    /// Per-vertex partner lookup table for index-hot loops.
    pub fn partner_table(&self, n: usize) -> Vec<Option<VertexId>> {
        let mut table = vec![None; n];
        for (&v, &p) in &self.partner {
            table[v] = Some(p);
        }
        table
    }
}

/// Violation of an algorithmic precondition; signals a bug upstream rather
/// than bad user input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractError(pub String);

impl fmt::Display for ContractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "contract violation: {}", self.0)
    }
}

impl std::error::Error for ContractError {}

/// An augmenting path on four vertices: `u - a - b - v` where `(a, b)`
/// belongs to the base matching and `u`, `v` are free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Path4 {
    pub u: VertexId,
    pub a: VertexId,
    pub b: VertexId,
    pub v: VertexId,
}

impl Path4 {
    pub fn new(u: VertexId, a: VertexId, b: VertexId, v: VertexId) -> Result<Path4, ContractError> {
        let vs = [u, a, b, v];
        for i in 0..4 {
            for j in i + 1..4 {
                if vs[i] == vs[j] {
                    return Err(ContractError(format!(
                        "path {u}-{a}-{b}-{v} repeats vertex {}",
                        vs[i]
                    )));
                }
            }
        }
        Ok(Path4 { u, a, b, v })
    }

    pub fn first(&self) -> Edge {
        Edge::new(self.u, self.a)
    }

    pub fn mid(&self) -> Edge {
        Edge::new(self.a, self.b)
    }

    pub fn last(&self) -> Edge {
        Edge::new(self.b, self.v)
    }

    pub fn vertices(&self) -> [VertexId; 4] {
        [self.u, self.a, self.b, self.v]
    }
}

/// True iff no vertex appears in two of the given edges. Endpoints must be
/// below `n`.
pub fn is_matching(n: usize, edges: &[Edge]) -> Result<bool, GraphError> {
    let mut seen = vec![false; n];
    for e in edges {
        for v in e.endpoints() {
            if v >= n {
                return Err(GraphError::EndpointOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Ok(false);
            }
            seen[v] = true;
        }
    }
    Ok(true)
}

/// Degree of `v` in the subgraph formed by the edge set `s`.
pub fn degree_in(s: &[Edge], v: VertexId) -> usize {
    s.iter().filter(|e| e.touches(v)).count()
}

/// Applies a set of vertex-disjoint augmenting paths to `m0`: the result is
/// the symmetric difference of `m0` with the path edges, a matching of size
/// `|m0| + paths.len()`.
///
/// Preconditions (checked): paths are pairwise vertex-disjoint, each path's
/// middle edge belongs to `m0`, and each path's end vertices are unmatched.
pub fn augment(m0: &Matching, paths: &[Path4]) -> Result<Matching, ContractError> {
    let mut occupied = std::collections::BTreeSet::new();
    for p in paths {
        for v in p.vertices() {
            if !occupied.insert(v) {
                return Err(ContractError(format!(
                    "augmenting paths overlap on vertex {v}"
                )));
            }
        }
        if !m0.contains(&p.mid()) {
            return Err(ContractError(format!(
                "middle edge {:?} not in the base matching",
                p.mid()
            )));
        }
        if m0.covers(p.u) || m0.covers(p.v) {
            return Err(ContractError(format!(
                "path end of {p:?} is already matched"
            )));
        }
    }
    let mut out = m0.clone();
    for p in paths {
        out.remove(&p.mid());
        out.insert(p.first())?;
        out.insert(p.last())?;
    }
    Ok(out)
}
