//! Triangle-greedy algorithms: a first pass that grows components of at most
//! three vertices (isolated edges, length-2 paths, triangles), then one or
//! two augmentation passes that attach extra edges to those components.
//!
//! Two algorithms share the machinery: the two-pass variant collects the
//! augmentation sets A1 and A2 in parallel during a single second pass, the
//! three-pass variant collects A1 in its second pass and a more restricted A2
//! in its third. Both finish by extracting an exact maximum matching from
//! everything they kept.

use std::collections::BTreeSet;

use crate::exact;
use crate::graph::{Edge, Graph, Matching, VertexId};
use crate::stream::{MemoryMeter, StreamError};

/// Shape of a connected component of `(V, P)` after the first pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    IsolatedVertex,
    IsolatedEdge,
    Path2 { middle: VertexId },
    Triangle,
}

/// Incremental connected components of `(V, P)`, specialised to components
/// of at most three vertices. Merges relabel the absorbed side directly,
/// which is O(1) because components never exceed three members.
#[derive(Debug, Clone)]
pub struct TriComponentIndex {
    comp_of: Vec<usize>,
    members: Vec<Vec<VertexId>>,
    kind: Vec<ComponentKind>,
}

impl TriComponentIndex {
    pub fn new(n: usize) -> TriComponentIndex {
        TriComponentIndex {
            comp_of: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
            kind: vec![ComponentKind::IsolatedVertex; n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.comp_of.len()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.comp_of[v]
    }

    pub fn component_size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn kind_of(&self, c: usize) -> ComponentKind {
        self.kind[c]
    }

    pub fn members_of(&self, c: usize) -> &[VertexId] {
        &self.members[c]
    }

    /// Live component ids (one per component).
    pub fn components(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(|&c| !self.members[c].is_empty())
    }

    /// Triangle vertices and the two end vertices of a length-2 path are
    /// connection vertices; isolated edges and vertices have none.
    pub fn is_connection_vertex(&self, v: VertexId) -> bool {
        match self.kind[self.comp_of[v]] {
            ComponentKind::Triangle => true,
            ComponentKind::Path2 { middle } => v != middle,
            ComponentKind::IsolatedVertex | ComponentKind::IsolatedEdge => false,
        }
    }

    /// Accepts `e` iff the merged component stays a path of length at most 2
    /// or becomes a triangle. The caller filters edges already in `P`.
    fn try_accept(&mut self, e: Edge) -> bool {
        let (u, v) = (e.a(), e.b());
        let cu = self.comp_of[u];
        let cv = self.comp_of[v];
        if cu == cv {
            // The only internal edge not already in P joins the two ends of a
            // length-2 path, closing a triangle.
            if let ComponentKind::Path2 { middle } = self.kind[cu] {
                if u != middle && v != middle {
                    self.kind[cu] = ComponentKind::Triangle;
                    return true;
                }
            }
            return false;
        }
        let su = self.members[cu].len();
        let sv = self.members[cv].len();
        match su + sv {
            2 => {
                self.merge(cu, cv, ComponentKind::IsolatedEdge);
                true
            }
            3 => {
                // A vertex attaching to an isolated edge turns the touched
                // endpoint into the middle of a length-2 path.
                let middle = if su == 2 { u } else { v };
                self.merge(cu, cv, ComponentKind::Path2 { middle });
                true
            }
            _ => false,
        }
    }

    fn merge(&mut self, keep: usize, absorb: usize, kind: ComponentKind) {
        let moved = std::mem::take(&mut self.members[absorb]);
        for &w in &moved {
            self.comp_of[w] = keep;
        }
        self.members[keep].extend(moved);
        self.kind[keep] = kind;
    }

    /// Checks that components partition the vertices, sizes match kinds, and
    /// the retained edge set is consistent with every component's shape.
    pub fn validate(&self, p: &BTreeSet<Edge>) -> Result<(), String> {
        let n = self.comp_of.len();
        let mut seen = vec![false; n];
        for c in self.components() {
            let members = &self.members[c];
            for &v in members {
                if self.comp_of[v] != c {
                    return Err(format!("vertex {v} not labelled with component {c}"));
                }
                if seen[v] {
                    return Err(format!("vertex {v} in two components"));
                }
                seen[v] = true;
            }
            let inside: Vec<Edge> = p
                .iter()
                .filter(|e| members.contains(&e.a()) && members.contains(&e.b()))
                .copied()
                .collect();
            let ok = match self.kind[c] {
                ComponentKind::IsolatedVertex => members.len() == 1 && inside.is_empty(),
                ComponentKind::IsolatedEdge => members.len() == 2 && inside.len() == 1,
                ComponentKind::Path2 { middle } => {
                    members.len() == 3
                        && inside.len() == 2
                        && members.contains(&middle)
                        && inside.iter().all(|e| e.touches(middle))
                }
                ComponentKind::Triangle => members.len() == 3 && inside.len() == 3,
            };
            if !ok {
                return Err(format!(
                    "component {c} has kind {:?} but members {:?} and edges {:?}",
                    self.kind[c], members, inside
                ));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("components do not cover all vertices".into());
        }
        let mut total = 0usize;
        for c in self.components() {
            total += match self.kind[c] {
                ComponentKind::IsolatedVertex => 0,
                ComponentKind::IsolatedEdge => 1,
                ComponentKind::Path2 { .. } => 2,
                ComponentKind::Triangle => 3,
            };
        }
        if total != p.len() {
            return Err(format!(
                "components carry {total} edges but |P| = {}",
                p.len()
            ));
        }
        Ok(())
    }
}

/// The augmentation sets of the second (and third) passes, with the
/// per-component single-edge bookkeeping.
#[derive(Debug, Clone, Default)]
pub struct AugmentSets {
    pub a1: BTreeSet<Edge>,
    pub a2: BTreeSet<Edge>,
    touched_a1: Vec<bool>,
    touched_a2: Vec<bool>,
}

impl AugmentSets {
    pub fn new(n: usize) -> AugmentSets {
        AugmentSets {
            a1: BTreeSet::new(),
            a2: BTreeSet::new(),
            touched_a1: vec![false; n],
            touched_a2: vec![false; n],
        }
    }

    pub fn a1_touches(&self, component: usize) -> bool {
        self.touched_a1[component]
    }

    pub fn a2_touches(&self, component: usize) -> bool {
        self.touched_a2[component]
    }

    /// Each component intersects at most one A1 edge and at most one A2 edge.
    pub fn validate(&self, index: &TriComponentIndex) -> Result<(), String> {
        for (set, name) in [(&self.a1, "A1"), (&self.a2, "A2")] {
            let mut hit = vec![0usize; index.vertex_count()];
            for e in set.iter() {
                for v in e.endpoints() {
                    let c = index.component_of(v);
                    hit[c] += 1;
                    if hit[c] > 1 {
                        return Err(format!("component {c} intersects two {name} edges"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// First pass: greedily keep edges while every component of `(V, P)` stays a
/// path of length at most 2 or a triangle. Returns the kept set `P` (at most
/// `n` edges) and the final component index.
pub fn pass1_triangles(
    stream: impl Iterator<Item = Edge>,
    n: usize,
    meter: &mut MemoryMeter,
) -> Result<(BTreeSet<Edge>, TriComponentIndex), StreamError> {
    let mut index = TriComponentIndex::new(n);
    let mut p = BTreeSet::new();
    for e in stream {
        if p.contains(&e) {
            continue;
        }
        if index.try_accept(e) {
            p.insert(e);
            meter.retain(1)?;
        }
    }
    debug_assert!(p.len() <= n);
    Ok((p, index))
}

/// Orients an edge so the first endpoint lies in a component of size > 1.
/// Returns `None` for the (impossible after pass 1) case of two isolated
/// endpoints, which is skipped defensively.
fn orient(e: Edge, index: &TriComponentIndex) -> Option<(VertexId, VertexId)> {
    let su = index.component_size(index.component_of(e.a()));
    let sv = index.component_size(index.component_of(e.b()));
    match (su > 1, sv > 1) {
        (true, _) => Some((e.a(), e.b())),
        (false, true) => Some((e.b(), e.a())),
        (false, false) => None,
    }
}

/// Second pass of the two-pass algorithm: A1 and A2 grow in parallel and the
/// same edge may enter both sets.
///
/// An arriving edge `(u, v)` with `u` in a non-trivial component joins A1 if
/// neither endpoint component is touched by A1 yet, `v` is isolated and `u`
/// is a connection vertex. It joins A2 under the analogous A2-untouched
/// condition if either `v` is isolated and `u` is a connection vertex, or
/// both endpoints are connection vertices of two distinct components.
pub fn pass2_a1_a2(
    stream: impl Iterator<Item = Edge>,
    p: &BTreeSet<Edge>,
    index: &TriComponentIndex,
    meter: &mut MemoryMeter,
) -> Result<AugmentSets, StreamError> {
    let mut sets = AugmentSets::new(index.vertex_count());
    for e in stream {
        if p.contains(&e) {
            continue;
        }
        let Some((u, v)) = orient(e, index) else {
            continue;
        };
        let cu = index.component_of(u);
        let cv = index.component_of(v);
        let v_isolated = index.component_size(cv) == 1;
        if !sets.touched_a1[cu]
            && !sets.touched_a1[cv]
            && v_isolated
            && index.is_connection_vertex(u)
        {
            sets.a1.insert(e);
            sets.touched_a1[cu] = true;
            sets.touched_a1[cv] = true;
            meter.retain(1)?;
        }
        let a2_shape = (v_isolated && index.is_connection_vertex(u))
            || (cu != cv && index.is_connection_vertex(u) && index.is_connection_vertex(v));
        if !sets.touched_a2[cu] && !sets.touched_a2[cv] && a2_shape {
            sets.a2.insert(e);
            sets.touched_a2[cu] = true;
            sets.touched_a2[cv] = true;
            meter.retain(1)?;
        }
    }
    debug_assert!(2 * sets.a1.len() <= index.vertex_count());
    debug_assert!(2 * sets.a2.len() <= index.vertex_count());
    Ok(sets)
}

/// Second pass of the three-pass algorithm: the A1 branch alone.
pub fn pass2_a1_only(
    stream: impl Iterator<Item = Edge>,
    p: &BTreeSet<Edge>,
    index: &TriComponentIndex,
    meter: &mut MemoryMeter,
) -> Result<AugmentSets, StreamError> {
    let mut sets = AugmentSets::new(index.vertex_count());
    for e in stream {
        if p.contains(&e) {
            continue;
        }
        let Some((u, v)) = orient(e, index) else {
            continue;
        };
        let cu = index.component_of(u);
        let cv = index.component_of(v);
        if !sets.touched_a1[cu]
            && !sets.touched_a1[cv]
            && index.component_size(cv) == 1
            && index.is_connection_vertex(u)
        {
            sets.a1.insert(e);
            sets.touched_a1[cu] = true;
            sets.touched_a1[cv] = true;
            meter.retain(1)?;
        }
    }
    debug_assert!(2 * sets.a1.len() <= index.vertex_count());
    Ok(sets)
}

/// Third pass of the three-pass algorithm: A2 takes edges joining connection
/// vertices of two distinct components untouched by both A1 and the current
/// A2. Edges of `P` and `A1` are skipped; there is no isolated-vertex branch.
pub fn pass3_a2_only(
    stream: impl Iterator<Item = Edge>,
    p: &BTreeSet<Edge>,
    index: &TriComponentIndex,
    sets: &mut AugmentSets,
    meter: &mut MemoryMeter,
) -> Result<(), StreamError> {
    for e in stream {
        if p.contains(&e) || sets.a1.contains(&e) {
            continue;
        }
        let cu = index.component_of(e.a());
        let cv = index.component_of(e.b());
        if cu == cv {
            continue;
        }
        let untouched = !sets.touched_a1[cu]
            && !sets.touched_a1[cv]
            && !sets.touched_a2[cu]
            && !sets.touched_a2[cv];
        if untouched && index.is_connection_vertex(e.a()) && index.is_connection_vertex(e.b()) {
            sets.a2.insert(e);
            sets.touched_a2[cu] = true;
            sets.touched_a2[cv] = true;
            meter.retain(1)?;
        }
    }
    debug_assert!(2 * sets.a2.len() <= index.vertex_count());
    Ok(())
}

/// Extracts an exact maximum matching from everything the passes kept.
pub fn finalize(n: usize, p: &BTreeSet<Edge>, sets: &AugmentSets) -> Matching {
    let mut edges: BTreeSet<Edge> = p.clone();
    edges.extend(sets.a1.iter().copied());
    edges.extend(sets.a2.iter().copied());
    let g = Graph::new(n, edges.into_iter().collect()).expect("kept edges are in range");
    exact::max_matching(&g)
}
