//! Wing-augmentation algorithms: grow a maximal matching, collect "wings"
//! (edges with exactly one matched endpoint), combine wings into 4-vertex
//! augmenting paths via an auxiliary graph and a greedy third pass, and
//! augment.
//!
//! The triangle-free variant keeps one wing set `W`; the general variant
//! keeps two disjoint sets `W1`, `W2` so that a triangle can block at most
//! one of them. Both share every routine here: the wing sets are passed as a
//! slice, whose order is the preference order.

use std::collections::BTreeMap;

use crate::exact;
use crate::graph::{augment, Edge, Graph, Matching, Path4, VertexId};
use crate::stream::{MemoryMeter, StreamError};

/// Wings with per-vertex degree counters: at most one wing per matched
/// vertex, at most two per free vertex.
#[derive(Debug, Clone)]
pub struct WingSet {
    edges: Vec<Edge>,
    /// Matched vertex -> free endpoint of its single wing.
    wing_at: Vec<Option<VertexId>>,
    free_deg: Vec<u8>,
}

impl WingSet {
    pub fn new(n: usize) -> WingSet {
        WingSet {
            edges: Vec::new(),
            wing_at: vec![None; n],
            free_deg: vec![0; n],
        }
    }

    /// Wing edges in arrival order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Free endpoint of the wing at a matched vertex, if any.
    pub fn wing_at(&self, matched: VertexId) -> Option<VertexId> {
        self.wing_at[matched]
    }

    pub fn contains(&self, e: &Edge, covered: &[bool]) -> bool {
        match wing_sides(*e, covered) {
            Some((m, f)) => self.wing_at[m] == Some(f),
            None => false,
        }
    }

    /// Adds the wing if both degree caps allow it.
    pub fn try_add(&mut self, e: Edge, covered: &[bool]) -> bool {
        let Some((m, f)) = wing_sides(e, covered) else {
            return false;
        };
        if self.wing_at[m].is_none() && self.free_deg[f] < 2 {
            self.wing_at[m] = Some(f);
            self.free_deg[f] += 1;
            self.edges.push(e);
            true
        } else {
            false
        }
    }

    /// Degree caps and side invariants, recomputed from scratch.
    pub fn validate(&self, covered: &[bool]) -> Result<(), String> {
        let mut matched_deg = vec![0usize; covered.len()];
        let mut free_deg = vec![0usize; covered.len()];
        for e in &self.edges {
            let Some((m, f)) = wing_sides(*e, covered) else {
                return Err(format!("{e:?} is not a wing"));
            };
            matched_deg[m] += 1;
            free_deg[f] += 1;
        }
        for v in 0..covered.len() {
            if matched_deg[v] > 1 {
                return Err(format!("matched vertex {v} has {} wings", matched_deg[v]));
            }
            if free_deg[v] > 2 {
                return Err(format!("free vertex {v} has {} wings", free_deg[v]));
            }
            if free_deg[v] != self.free_deg[v] as usize {
                return Err(format!("stale free degree counter at {v}"));
            }
        }
        Ok(())
    }
}

/// Splits a wing into (matched endpoint, free endpoint); `None` if the edge
/// does not have exactly one matched endpoint.
fn wing_sides(e: Edge, covered: &[bool]) -> Option<(VertexId, VertexId)> {
    match (covered[e.a()], covered[e.b()]) {
        (true, false) => Some((e.a(), e.b())),
        (false, true) => Some((e.b(), e.a())),
        _ => None,
    }
}

fn covered_table(m0: &Matching, n: usize) -> Vec<bool> {
    let mut covered = vec![false; n];
    for e in m0.iter() {
        covered[e.a()] = true;
        covered[e.b()] = true;
    }
    covered
}

/// Second pass of the triangle-free algorithm: greedy wing collection under
/// the degree caps, in stream order.
pub fn pass2_wings(
    stream: impl Iterator<Item = Edge>,
    m0: &Matching,
    n: usize,
    meter: &mut MemoryMeter,
) -> Result<WingSet, StreamError> {
    let covered = covered_table(m0, n);
    let mut w = WingSet::new(n);
    for e in stream {
        if w.try_add(e, &covered) {
            meter.retain(1)?;
        }
    }
    debug_assert!(w.len() <= 2 * m0.len());
    Ok(w)
}

/// Second pass of the general algorithm: each wing is tried against `W1`
/// first, then `W2`. An edge enters at most one of the two sets; a repeat
/// arrival of a stored wing is never re-admitted to the other set.
pub fn pass2_wings_two_sets(
    stream: impl Iterator<Item = Edge>,
    m0: &Matching,
    n: usize,
    meter: &mut MemoryMeter,
) -> Result<(WingSet, WingSet), StreamError> {
    let covered = covered_table(m0, n);
    let mut w1 = WingSet::new(n);
    let mut w2 = WingSet::new(n);
    for e in stream {
        if wing_sides(e, &covered).is_none() || w1.contains(&e, &covered) {
            continue;
        }
        if w1.try_add(e, &covered) || w2.try_add(e, &covered) {
            meter.retain(1)?;
        }
    }
    debug_assert!(w1.len() <= 2 * m0.len() && w2.len() <= 2 * m0.len());
    Ok((w1, w2))
}

/// The auxiliary graph on the free vertices: a simple edge `(x, y)` for every
/// pair of wings reaching `x` and `y` across some matched edge, carrying the
/// first-enumerated underlying path as payload. Enumeration is by matched
/// edge in canonical order, then wing sets in preference order.
#[derive(Debug, Clone)]
pub struct AuxGraph {
    n: usize,
    edges: BTreeMap<Edge, Path4>,
}

impl AuxGraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &Path4)> {
        self.edges.iter()
    }

    pub fn payload(&self, e: &Edge) -> Option<&Path4> {
        self.edges.get(e)
    }
}

/// Enumerates the wing endpoints at `v` from each set in preference order.
fn side_wings(wings: &[&WingSet], v: VertexId) -> Vec<VertexId> {
    wings.iter().filter_map(|w| w.wing_at(v)).collect()
}

pub fn build_aux_graph(m0: &Matching, wings: &[&WingSet], n: usize) -> AuxGraph {
    let mut edges = BTreeMap::new();
    for e in m0.iter() {
        let (a, b) = (e.a(), e.b());
        for &x in &side_wings(wings, a) {
            for &y in &side_wings(wings, b) {
                if x == y {
                    continue; // the wings close a triangle, not a path
                }
                edges
                    .entry(Edge::new(x, y))
                    .or_insert_with(|| Path4 { u: x, a, b, v: y });
            }
        }
    }
    AuxGraph { n, edges }
}

/// Vertex-disjoint 4-vertex augmenting paths plus the occupancy set that
/// keeps later additions disjoint.
#[derive(Debug, Clone)]
pub struct AugPathSet {
    paths: Vec<Path4>,
    occupied: Vec<bool>,
}

impl AugPathSet {
    pub fn new(n: usize) -> AugPathSet {
        AugPathSet {
            paths: Vec::new(),
            occupied: vec![false; n],
        }
    }

    /// Starts with the vertices of an earlier stage already occupied.
    pub fn seeded_from(other: &AugPathSet) -> AugPathSet {
        AugPathSet {
            paths: Vec::new(),
            occupied: other.occupied.clone(),
        }
    }

    pub fn paths(&self) -> &[Path4] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn occupies(&self, v: VertexId) -> bool {
        self.occupied[v]
    }

    /// Adds the path iff all four vertices are unoccupied.
    pub fn try_add(&mut self, p: Path4) -> bool {
        if p.vertices().iter().any(|&v| self.occupied[v]) {
            return false;
        }
        for v in p.vertices() {
            self.occupied[v] = true;
        }
        self.paths.push(p);
        true
    }
}

/// Selects the first batch of augmenting paths from the auxiliary graph.
///
/// A maximum matching of the auxiliary graph is computed first and its
/// payloads adopted. When both wing sets are populated, two auxiliary edges
/// can carry payloads through the same matched edge; such collisions are
/// dropped and a greedy completion over all wing pairs restores maximality,
/// so that no addable path disjoint from the selection remains.
pub fn select_p1(
    aux: &AuxGraph,
    m0: &Matching,
    wings: &[&WingSet],
    n: usize,
    meter: &mut MemoryMeter,
) -> Result<AugPathSet, StreamError> {
    let aux_edges: Vec<Edge> = aux.edges.keys().copied().collect();
    let g = Graph::new(n, aux_edges).expect("aux endpoints are vertices");
    let m_a = exact::max_matching(&g);
    let mut p1 = AugPathSet::new(aux.n);
    for (e, payload) in aux.iter() {
        if m_a.contains(e) && p1.try_add(*payload) {
            meter.retain(3)?;
        }
    }
    // Greedy completion over every wing pair (a no-op for a single wing set).
    for e in m0.iter() {
        let (a, b) = (e.a(), e.b());
        if p1.occupied[a] || p1.occupied[b] {
            continue;
        }
        'pair: for &x in &side_wings(wings, a) {
            for &y in &side_wings(wings, b) {
                if x != y && p1.try_add(Path4 { u: x, a, b, v: y }) {
                    meter.retain(3)?;
                    break 'pair;
                }
            }
        }
    }
    Ok(p1)
}

/// Third pass: for each arriving edge `(u, a)` with `u` free and `a`
/// matched, complete it with the matched partner `b` of `a` and a stored
/// wing `(b, v)` into the path `u, a, b, v` when all four vertices are
/// unoccupied and `u != v` (the triangle guard). Wing sets are consulted in
/// preference order.
pub fn pass3_greedy_paths(
    stream: impl Iterator<Item = Edge>,
    m0: &Matching,
    wings: &[&WingSet],
    p1: &AugPathSet,
    n: usize,
    meter: &mut MemoryMeter,
) -> Result<AugPathSet, StreamError> {
    let covered = covered_table(m0, n);
    let partner = m0.partner_table(n);
    let mut p2 = AugPathSet::seeded_from(p1);
    for e in stream {
        let Some((a, u)) = wing_sides(e, &covered) else {
            continue;
        };
        let b = partner[a].expect("matched vertex has a partner");
        if p2.occupied[u] || p2.occupied[a] || p2.occupied[b] {
            continue;
        }
        for w in wings {
            if let Some(v) = w.wing_at(b) {
                if v != u && !p2.occupied[v] && p2.try_add(Path4 { u, a, b, v }) {
                    meter.retain(3)?;
                    break;
                }
            }
        }
    }
    Ok(p2)
}

/// Augments the base matching with both path batches; the output size is
/// exactly `|m0| + |p1| + |p2|`.
pub fn finalize(m0: &Matching, p1: &AugPathSet, p2: &AugPathSet) -> Matching {
    let mut paths = p1.paths.clone();
    paths.extend_from_slice(&p2.paths);
    augment(m0, &paths).expect("path batches are disjoint and valid")
}
