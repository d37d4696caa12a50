//! Instance parsing, stream ordering, memory accounting and the multi-pass
//! driver that ties the per-pass handlers of each algorithm together.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Edge, Graph, Matching, Path4};
use crate::greedy;
use crate::rng::XorShift64;
use crate::triangle::{self, AugmentSets, TriComponentIndex};
use crate::wing::{self, WingSet};

/// A named instance. The edge order of the underlying graph is the canonical
/// stream order; permutations are applied on top of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

impl Instance {
    pub fn new(name: impl Into<String>, graph: Graph) -> Instance {
        Instance {
            name: name.into(),
            graph,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// One pass over the edges in the given order.
    pub fn stream<'a>(&'a self, order: &'a StreamOrder) -> impl Iterator<Item = Edge> + 'a {
        order.permutation.iter().map(|&i| self.graph.edges()[i])
    }

    /// Renders the instance in the text format accepted by `parse_instance`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.name));
        out.push_str(&format!(
            "{} {}\n",
            self.graph.vertex_count(),
            self.graph.edge_count()
        ));
        for e in self.graph.edges() {
            out.push_str(&format!("{} {}\n", e.a(), e.b()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    MissingHeader,
    MalformedHeader {
        line: usize,
    },
    MalformedEdge {
        line: usize,
    },
    EndpointOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    SelfLoop {
        line: usize,
    },
    EdgeCountMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingHeader => write!(f, "missing header line \"n m\""),
            ParseError::MalformedHeader { line } => {
                write!(f, "line {line}: header must be two integers \"n m\"")
            }
            ParseError::MalformedEdge { line } => {
                write!(f, "line {line}: edge must be two integers \"u v\"")
            }
            ParseError::EndpointOutOfRange { line, vertex, n } => {
                write!(f, "line {line}: endpoint {vertex} out of range (n = {n})")
            }
            ParseError::SelfLoop { line } => write!(f, "line {line}: self-loop"),
            ParseError::EdgeCountMismatch { expected, got } => {
                write!(f, "header promised {expected} edges, found {got}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses the edge-list format: optional `#` comment lines, a header line
/// `n m`, then exactly `m` lines `u v` with `0 <= u, v < n` and `u != v`.
/// Blank lines are ignored. Stream order is line order.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (first, second, rest) = (tokens.next(), tokens.next(), tokens.next());
        let (Some(first), Some(second), None) = (first, second, rest) else {
            return Err(match header {
                None => ParseError::MalformedHeader { line: line_no },
                Some(_) => ParseError::MalformedEdge { line: line_no },
            });
        };
        match header {
            None => {
                let n = first
                    .parse::<usize>()
                    .map_err(|_| ParseError::MalformedHeader { line: line_no })?;
                let m = second
                    .parse::<usize>()
                    .map_err(|_| ParseError::MalformedHeader { line: line_no })?;
                header = Some((n, m, line_no));
            }
            Some((n, _, _)) => {
                let u = first
                    .parse::<usize>()
                    .map_err(|_| ParseError::MalformedEdge { line: line_no })?;
                let v = second
                    .parse::<usize>()
                    .map_err(|_| ParseError::MalformedEdge { line: line_no })?;
                for w in [u, v] {
                    if w >= n {
                        return Err(ParseError::EndpointOutOfRange {
                            line: line_no,
                            vertex: w,
                            n,
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line: line_no });
                }
                edges.push(Edge::new(u, v));
            }
        }
    }
    let Some((n, m, _)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            got: edges.len(),
        });
    }
    let graph = Graph::new(n, edges).expect("endpoints validated during parse");
    Ok(Instance::new("unnamed", graph))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderPolicy {
    File,
    Reverse,
    Random,
}

impl OrderPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            OrderPolicy::File => "file",
            OrderPolicy::Reverse => "reverse",
            OrderPolicy::Random => "random",
        }
    }
}

impl std::str::FromStr for OrderPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "file" => Ok(OrderPolicy::File),
            "reverse" => Ok(OrderPolicy::Reverse),
            "random" => Ok(OrderPolicy::Random),
            other => Err(format!("unknown order policy {other:?}")),
        }
    }
}

/// A replayable permutation of the edge indices `0..m`. The same permutation
/// is used for every pass of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamOrder {
    pub policy: OrderPolicy,
    pub seed: u64,
    pub permutation: Vec<usize>,
}

/// Builds the permutation for a policy: `file` is the identity, `reverse` the
/// reversal, and `random` a seeded Fisher-Yates shuffle (see [`XorShift64`]).
pub fn make_order(m: usize, policy: OrderPolicy, seed: u64) -> StreamOrder {
    let mut permutation: Vec<usize> = (0..m).collect();
    match policy {
        OrderPolicy::File => {}
        OrderPolicy::Reverse => permutation.reverse(),
        OrderPolicy::Random => XorShift64::new(seed).shuffle(&mut permutation),
    }
    StreamOrder {
        policy,
        seed,
        permutation,
    }
}

/// An explicit permutation (used by exhaustive order sweeps).
pub fn explicit_order(permutation: Vec<usize>) -> StreamOrder {
    StreamOrder {
        policy: OrderPolicy::File,
        seed: 0,
        permutation,
    }
}

/// Counts edges retained by an algorithm over time. Only whole edges are
/// counted (a stored 4-vertex path counts as its 3 edges); containers are
/// accounted independently, so an edge stored twice counts twice.
#[derive(Debug, Clone, Default)]
pub struct MemoryMeter {
    current: usize,
    peak: usize,
    per_pass_peaks: Vec<usize>,
    cap: Option<usize>,
}

impl MemoryMeter {
    pub fn unbounded() -> MemoryMeter {
        MemoryMeter::default()
    }

    pub fn with_cap(cap: usize) -> MemoryMeter {
        MemoryMeter {
            cap: Some(cap),
            ..MemoryMeter::default()
        }
    }

    pub fn begin_pass(&mut self) {
        self.per_pass_peaks.push(self.current);
    }

    pub fn retain(&mut self, edges: usize) -> Result<(), StreamError> {
        self.current += edges;
        self.peak = self.peak.max(self.current);
        if let Some(last) = self.per_pass_peaks.last_mut() {
            *last = (*last).max(self.current);
        }
        match self.cap {
            Some(cap) if self.current > cap => Err(StreamError::MemoryContract {
                retained: self.current,
                cap,
            }),
            _ => Ok(()),
        }
    }

    pub fn release(&mut self, edges: usize) {
        self.current = self.current.saturating_sub(edges);
    }

    pub fn current_retained_edges(&self) -> usize {
        self.current
    }

    pub fn peak_retained_edges(&self) -> usize {
        self.peak
    }

    pub fn per_pass_peaks(&self) -> &[usize] {
        &self.per_pass_peaks
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamError {
    MemoryContract { retained: usize, cap: usize },
    OrderMismatch { edges: usize, order_len: usize },
}

impl fmt::Display for StreamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamError::MemoryContract { retained, cap } => {
                write!(
                    f,
                    "memory contract violated: {retained} edges retained (cap {cap})"
                )
            }
            StreamError::OrderMismatch { edges, order_len } => {
                write!(f, "order covers {order_len} edges but instance has {edges}")
            }
        }
    }
}

impl std::error::Error for StreamError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgoId {
    /// One-pass greedy maximal matching.
    Greedy,
    /// Two-pass triangle-greedy (7/13 guarantee).
    Tri2,
    /// Three-pass triangle-greedy (5/9 guarantee).
    Tri3,
    /// Three-pass wing augmentation for triangle-free inputs (11/18).
    WingTf,
    /// Three-pass wing augmentation for general inputs (41/72).
    WingGen,
}

impl AlgoId {
    pub const ALL: [AlgoId; 5] = [
        AlgoId::Greedy,
        AlgoId::Tri2,
        AlgoId::Tri3,
        AlgoId::WingTf,
        AlgoId::WingGen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AlgoId::Greedy => "greedy",
            AlgoId::Tri2 => "tri2",
            AlgoId::Tri3 => "tri3",
            AlgoId::WingTf => "wing-tf",
            AlgoId::WingGen => "wing-gen",
        }
    }

    pub fn pass_count(&self) -> usize {
        match self {
            AlgoId::Greedy => 1,
            AlgoId::Tri2 => 2,
            AlgoId::Tri3 | AlgoId::WingTf | AlgoId::WingGen => 3,
        }
    }

    /// Certified worst-case ratio as an exact fraction (output, optimum).
    pub fn guarantee(&self) -> (i64, i64) {
        match self {
            AlgoId::Greedy => (1, 2),
            AlgoId::Tri2 => (7, 13),
            AlgoId::Tri3 => (5, 9),
            AlgoId::WingTf => (11, 18),
            AlgoId::WingGen => (41, 72),
        }
    }
}

impl std::str::FromStr for AlgoId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgoId::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Everything an algorithm kept besides its output, for auditing.
#[derive(Debug, Clone)]
pub enum RunArtifacts {
    Greedy {
        m0: Matching,
    },
    /// Shared by tri2 and tri3.
    Triangle {
        p: BTreeSet<Edge>,
        index: TriComponentIndex,
        sets: AugmentSets,
    },
    WingTf {
        m0: Matching,
        w: WingSet,
        p1: Vec<Path4>,
        p2: Vec<Path4>,
    },
    WingGen {
        m0: Matching,
        w1: WingSet,
        w2: WingSet,
        p1: Vec<Path4>,
        p2: Vec<Path4>,
    },
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub algo: AlgoId,
    pub n: usize,
    pub output: Matching,
    pub artifacts: RunArtifacts,
    pub meter: MemoryMeter,
    pub passes_used: usize,
}

/// The umbrella memory cap enforced on every run, in retained edges.
pub fn memory_cap(n: usize) -> usize {
    6 * n.max(1)
}

/// Replays the permuted edge sequence once per pass of the chosen algorithm,
/// invoking its per-pass handlers and between-pass post-processing, with the
/// memory meter updated on every retained edge.
pub fn run_multi_pass(
    algo: AlgoId,
    instance: &Instance,
    order: &StreamOrder,
) -> Result<RunResult, StreamError> {
    let n = instance.vertex_count();
    if order.permutation.len() != instance.edge_count() {
        return Err(StreamError::OrderMismatch {
            edges: instance.edge_count(),
            order_len: order.permutation.len(),
        });
    }
    let mut meter = MemoryMeter::with_cap(memory_cap(n));
    let mut passes_used = 0;
    let mut pass = |meter: &mut MemoryMeter| {
        meter.begin_pass();
        passes_used += 1;
        instance.stream(order)
    };

    let (output, artifacts) = match algo {
        AlgoId::Greedy => {
            let m0 = greedy::greedy_maximal(pass(&mut meter), n, &mut meter)?;
            (m0.clone(), RunArtifacts::Greedy { m0 })
        }
        AlgoId::Tri2 => {
            let (p, index) = triangle::pass1_triangles(pass(&mut meter), n, &mut meter)?;
            let sets = triangle::pass2_a1_a2(pass(&mut meter), &p, &index, &mut meter)?;
            let output = triangle::finalize(n, &p, &sets);
            (output, RunArtifacts::Triangle { p, index, sets })
        }
        AlgoId::Tri3 => {
            let (p, index) = triangle::pass1_triangles(pass(&mut meter), n, &mut meter)?;
            let mut sets = triangle::pass2_a1_only(pass(&mut meter), &p, &index, &mut meter)?;
            triangle::pass3_a2_only(pass(&mut meter), &p, &index, &mut sets, &mut meter)?;
            let output = triangle::finalize(n, &p, &sets);
            (output, RunArtifacts::Triangle { p, index, sets })
        }
        AlgoId::WingTf => {
            let m0 = greedy::greedy_maximal(pass(&mut meter), n, &mut meter)?;
            let w = wing::pass2_wings(pass(&mut meter), &m0, n, &mut meter)?;
            let aux = wing::build_aux_graph(&m0, &[&w], n);
            let p1 = wing::select_p1(&aux, &m0, &[&w], n, &mut meter)?;
            let p2 = wing::pass3_greedy_paths(pass(&mut meter), &m0, &[&w], &p1, n, &mut meter)?;
            let output = wing::finalize(&m0, &p1, &p2);
            (
                output,
                RunArtifacts::WingTf {
                    m0,
                    w,
                    p1: p1.paths().to_vec(),
                    p2: p2.paths().to_vec(),
                },
            )
        }
        AlgoId::WingGen => {
            let m0 = greedy::greedy_maximal(pass(&mut meter), n, &mut meter)?;
            let (w1, w2) = wing::pass2_wings_two_sets(pass(&mut meter), &m0, n, &mut meter)?;
            let aux = wing::build_aux_graph(&m0, &[&w1, &w2], n);
            let p1 = wing::select_p1(&aux, &m0, &[&w1, &w2], n, &mut meter)?;
            let p2 =
                wing::pass3_greedy_paths(pass(&mut meter), &m0, &[&w1, &w2], &p1, n, &mut meter)?;
            let output = wing::finalize(&m0, &p1, &p2);
            (
                output,
                RunArtifacts::WingGen {
                    m0,
                    w1,
                    w2,
                    p1: p1.paths().to_vec(),
                    p2: p2.paths().to_vec(),
                },
            )
        }
    };

    debug_assert_eq!(passes_used, algo.pass_count());
    Ok(RunResult {
        algo,
        n,
        output,
        artifacts,
        meter,
        passes_used,
    })
}
