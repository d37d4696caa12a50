//! Recomputes every charging quantity of the algorithms' analyses from run
//! artifacts plus an exact optimum, and verifies the full inequality chain in
//! exact integer arithmetic.
//!
//! Record ids: I1..I11 cover the two-pass triangle analysis (basic charging
//! inequality, optimum partition, auxiliary bounds, greedy A1/A2 bounds and
//! the certified lower bound L), I12..I17 the three-pass strengthening
//! (A1/A2 interaction and the bound L2), I18..I23 the triangle-free wing
//! chain, I24..I28 the general wing chain. M1 is the maximal-matching bound,
//! E1 the exact output-size identity of the wing algorithms, F1 the split of
//! optimum-free triangles, T1/T2 the final triangle-algorithm ratios.

use std::collections::BTreeSet;

use crate::graph::{Edge, Matching, Path4, VertexId};
use crate::stream::{AlgoId, RunArtifacts, RunResult};
use crate::triangle::{AugmentSets, ComponentKind, TriComponentIndex};
use crate::wing::WingSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRecord {
    pub id: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
}

impl AuditReport {
    /// Conjunction of all records.
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds)
    }

    fn ge(&mut self, id: &'static str, lhs: i64, rhs: i64) {
        self.records.push(AuditRecord {
            id,
            lhs,
            rhs,
            holds: lhs >= rhs,
        });
    }

    fn eq(&mut self, id: &'static str, lhs: i64, rhs: i64) {
        self.records.push(AuditRecord {
            id,
            lhs,
            rhs,
            holds: lhs == rhs,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditError {
    /// An optimum edge fell into a class the first pass makes impossible;
    /// the run artifacts are inconsistent.
    ImpossibleOptEdge { edge: Edge, reason: &'static str },
}

impl std::fmt::Display for AuditError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AuditError::ImpossibleOptEdge { edge, reason } => {
                write!(
                    f,
                    "optimum edge {edge:?} is {reason}, impossible after pass 1"
                )
            }
        }
    }
}

impl std::error::Error for AuditError {}

/// Component counts after the first triangle pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentCensus {
    pub isolated_edges: i64,
    pub length2_paths: i64,
    pub triangles: i64,
}

pub fn component_census(index: &TriComponentIndex) -> ComponentCensus {
    let mut census = ComponentCensus {
        isolated_edges: 0,
        length2_paths: 0,
        triangles: 0,
    };
    for c in index.components() {
        match index.kind_of(c) {
            ComponentKind::IsolatedVertex => {}
            ComponentKind::IsolatedEdge => census.isolated_edges += 1,
            ComponentKind::Path2 { .. } => census.length2_paths += 1,
            ComponentKind::Triangle => census.triangles += 1,
        }
    }
    census
}

/// Where an optimum edge lands relative to the pass-1 components. Every
/// optimum edge falls in exactly one class; the two remaining combinations
/// (isolated-isolated and isolated-to-edge) cannot survive the first pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OptEdgeClasses {
    /// Connection vertex to isolated vertex (candidates for A1).
    pub conn_isolated: i64,
    /// Connection vertices of two distinct components (candidates for A2).
    pub conn_conn: i64,
    /// Both endpoints on isolated edges.
    pub edge_edge: i64,
    /// Isolated-edge endpoint to a connection vertex.
    pub edge_conn: i64,
    /// Touches the middle of a length-2 path or lies inside a triangle.
    pub middle_or_inside: i64,
    /// Triangle components containing no optimum edge.
    pub free_triangles: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Isolated,
    EdgeEnd,
    Connection,
    Middle,
}

fn role_of(index: &TriComponentIndex, v: VertexId) -> Role {
    match index.kind_of(index.component_of(v)) {
        ComponentKind::IsolatedVertex => Role::Isolated,
        ComponentKind::IsolatedEdge => Role::EdgeEnd,
        ComponentKind::Triangle => Role::Connection,
        ComponentKind::Path2 { middle } => {
            if v == middle {
                Role::Middle
            } else {
                Role::Connection
            }
        }
    }
}

pub fn classify_opt_edges(
    index: &TriComponentIndex,
    mstar: &Matching,
) -> Result<OptEdgeClasses, AuditError> {
    let mut classes = OptEdgeClasses::default();
    for e in mstar.iter() {
        let (u, v) = (e.a(), e.b());
        let cu = index.component_of(u);
        let cv = index.component_of(v);
        if cu == cv && index.kind_of(cu) == ComponentKind::Triangle {
            classes.middle_or_inside += 1;
            continue;
        }
        let (ru, rv) = (role_of(index, u), role_of(index, v));
        if ru == Role::Middle || rv == Role::Middle {
            classes.middle_or_inside += 1;
            continue;
        }
        match (ru, rv) {
            (Role::Connection, Role::Connection) if cu != cv => classes.conn_conn += 1,
            (Role::Connection, Role::Connection) => {
                return Err(AuditError::ImpossibleOptEdge {
                    edge: e,
                    reason: "a chord joining the ends of a length-2 path",
                })
            }
            (Role::Connection, Role::Isolated) | (Role::Isolated, Role::Connection) => {
                classes.conn_isolated += 1
            }
            (Role::Connection, Role::EdgeEnd) | (Role::EdgeEnd, Role::Connection) => {
                classes.edge_conn += 1
            }
            (Role::EdgeEnd, Role::EdgeEnd) => classes.edge_edge += 1,
            (Role::EdgeEnd, Role::Isolated) | (Role::Isolated, Role::EdgeEnd) => {
                return Err(AuditError::ImpossibleOptEdge {
                    edge: e,
                    reason: "joining an isolated vertex to an isolated edge",
                })
            }
            (Role::Isolated, Role::Isolated) => {
                return Err(AuditError::ImpossibleOptEdge {
                    edge: e,
                    reason: "joining two isolated vertices",
                })
            }
            (Role::Middle, _) | (_, Role::Middle) => unreachable!("middles handled above"),
        }
    }
    for c in index.components() {
        if index.kind_of(c) == ComponentKind::Triangle {
            let members = index.members_of(c);
            let has_inner = members
                .iter()
                .any(|&v| matches!(mstar.partner(v), Some(p) if members.contains(&p)));
            if !has_inner {
                classes.free_triangles += 1;
            }
        }
    }
    Ok(classes)
}

fn touched_components(index: &TriComponentIndex, edges: &BTreeSet<Edge>) -> Vec<bool> {
    let mut touched = vec![false; index.vertex_count()];
    for e in edges {
        touched[index.component_of(e.a())] = true;
        touched[index.component_of(e.b())] = true;
    }
    touched
}

/// Splits the optimum-free triangles by whether an A1 or an A2 edge touches
/// them.
pub fn free_triangle_touches(
    index: &TriComponentIndex,
    mstar: &Matching,
    sets: &AugmentSets,
) -> (i64, i64) {
    let by_a1 = touched_components(index, &sets.a1);
    let by_a2 = touched_components(index, &sets.a2);
    let (mut t1, mut t2) = (0, 0);
    for c in index.components() {
        if index.kind_of(c) != ComponentKind::Triangle {
            continue;
        }
        let members = index.members_of(c);
        let has_inner = members
            .iter()
            .any(|&v| matches!(mstar.partner(v), Some(p) if members.contains(&p)));
        if has_inner {
            continue;
        }
        if by_a1[c] {
            t1 += 1;
        }
        if by_a2[c] {
            t2 += 1;
        }
    }
    (t1, t2)
}

/// Number of optimum edges joining connection vertices of two distinct
/// components of which at least one is touched by A1 (potential for A2 that
/// the second pass spent).
pub fn conn_conn_blocked_by_a1(
    index: &TriComponentIndex,
    mstar: &Matching,
    a1: &BTreeSet<Edge>,
) -> i64 {
    let by_a1 = touched_components(index, a1);
    let mut blocked = 0;
    for e in mstar.iter() {
        let (u, v) = (e.a(), e.b());
        let cu = index.component_of(u);
        let cv = index.component_of(v);
        let conn_conn = cu != cv
            && role_of(index, u) == Role::Connection
            && role_of(index, v) == Role::Connection;
        if conn_conn && (by_a1[cu] || by_a1[cv]) {
            blocked += 1;
        }
    }
    blocked
}

/// Optimum edges that are wings: exactly one endpoint covered by `m0`.
pub fn opt_wings(m0: &Matching, mstar: &Matching) -> Vec<Edge> {
    mstar
        .iter()
        .filter(|e| m0.covers(e.a()) != m0.covers(e.b()))
        .collect()
}

/// Re-runs the W2 admission over the optimum wings stored in W1, in their
/// original arrival order: what W2 would have been had those wings not been
/// captured by W1 first.
pub fn build_w2_prime(
    w1: &WingSet,
    w2: &WingSet,
    opt_wing_set: &BTreeSet<Edge>,
    m0: &Matching,
    n: usize,
) -> WingSet {
    let mut covered = vec![false; n];
    for e in m0.iter() {
        covered[e.a()] = true;
        covered[e.b()] = true;
    }
    let mut w2p = w2.clone();
    for e in w1.edges() {
        if opt_wing_set.contains(e) {
            w2p.try_add(*e, &covered);
        }
    }
    w2p
}

/// A directed walk: an optimum wing into `a`, the matched edge `(a, b)`,
/// then a stored wing out of `b`. `u == v` closes a triangle instead of a
/// path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WingWalk {
    pub u: VertexId,
    pub a: VertexId,
    pub b: VertexId,
    pub v: VertexId,
}

impl WingWalk {
    pub fn is_triangle(&self) -> bool {
        self.u == self.v
    }

    pub fn vertices(&self) -> [VertexId; 4] {
        [self.u, self.a, self.b, self.v]
    }
}

/// Enumerates the walk multiset: one walk per (optimum wing, wing set, stored
/// wing) combination, each wing set contributing separately. Triangles are
/// included only when requested (the general analysis counts them; on
/// triangle-free inputs they cannot exist).
pub fn collect_wing_walks(
    m0: &Matching,
    opt_wing_edges: &[Edge],
    wing_sets: &[&WingSet],
    include_triangles: bool,
) -> Vec<WingWalk> {
    let mut walks = Vec::new();
    for e in opt_wing_edges {
        let (a, u) = if m0.covers(e.a()) {
            (e.a(), e.b())
        } else {
            (e.b(), e.a())
        };
        let b = m0.partner(a).expect("covered endpoint has a partner");
        for ws in wing_sets {
            if let Some(v) = ws.wing_at(b) {
                if u != v || include_triangles {
                    walks.push(WingWalk { u, a, b, v });
                }
            }
        }
    }
    walks
}

/// Keeps the walks that avoid the first path batch entirely; in general mode
/// triangles are dropped as well.
pub fn filter_wing_walks(
    walks: &[WingWalk],
    p1: &[Path4],
    drop_triangles: bool,
    n: usize,
) -> Vec<WingWalk> {
    let mut occupied = vec![false; n];
    for p in p1 {
        for v in p.vertices() {
            occupied[v] = true;
        }
    }
    walks
        .iter()
        .filter(|w| {
            (!drop_triangles || !w.is_triangle()) && w.vertices().iter().all(|&v| !occupied[v])
        })
        .copied()
        .collect()
}

fn audit_triangle_shared(
    report: &mut AuditReport,
    census: ComponentCensus,
    classes: OptEdgeClasses,
    a1_len: i64,
    opt: i64,
) {
    let ComponentCensus {
        isolated_edges: s,
        length2_paths: d,
        triangles: t,
    } = census;
    let OptEdgeClasses {
        conn_isolated: dn,
        conn_conn: dd,
        edge_edge: ss,
        edge_conn: ds,
        middle_or_inside: dm,
        free_triangles: ftri,
    } = classes;
    // Charging inequality, doubled to clear the half-unit charges.
    report.ge(
        "I1",
        2 * s + 6 * d + 6 * t,
        2 * dn + 4 * dd + 2 * ss + 3 * ds + 2 * dm,
    );
    // The five classes partition the optimum exactly.
    report.eq("I2", dn + dd + ss + ds + dm, opt);
    report.ge("I3", d + t - ftri, dm);
    report.ge("I4", 2 * s, 2 * ss + ds);
    report.ge("I5", dn - ftri + 2 * s + 4 * d + 4 * t, 2 * opt);
    report.ge("I6", 3 * a1_len, dn - ftri);
    report.ge("I7", 3 * a1_len + 2 * s + 4 * d + 4 * t, 2 * opt);
}

fn audit_tri2(
    report: &mut AuditReport,
    census: ComponentCensus,
    classes: OptEdgeClasses,
    sets: &AugmentSets,
    out: i64,
    opt: i64,
) {
    let (s, d, t) = (
        census.isolated_edges,
        census.length2_paths,
        census.triangles,
    );
    let (a1, a2) = (sets.a1.len() as i64, sets.a2.len() as i64);
    let (dn, dd, ftri) = (
        classes.conn_isolated,
        classes.conn_conn,
        classes.free_triangles,
    );
    report.ge("I8", 4 * a2, dd + dn - ftri);
    report.ge("I9", 4 * a2 + 2 * s + d + t, opt);
    let bound_l = s + d + t + a1.max(a2);
    report.ge("I10", 13 * bound_l, 7 * opt);
    report.ge("I11", out, bound_l);
    report.ge("T1", 13 * out, 7 * opt);
}

fn audit_tri3(
    report: &mut AuditReport,
    index: &TriComponentIndex,
    mstar: &Matching,
    census: ComponentCensus,
    classes: OptEdgeClasses,
    sets: &AugmentSets,
    out: i64,
    opt: i64,
) {
    let (s, d, t) = (
        census.isolated_edges,
        census.length2_paths,
        census.triangles,
    );
    let (a1, a2) = (sets.a1.len() as i64, sets.a2.len() as i64);
    let (dn, dd, ftri) = (
        classes.conn_isolated,
        classes.conn_conn,
        classes.free_triangles,
    );
    let (ftri_a1, ftri_a2) = free_triangle_touches(index, mstar, sets);
    let missed = conn_conn_blocked_by_a1(index, mstar, &sets.a1);
    report.ge("F1", ftri, ftri_a1 + ftri_a2);
    report.ge("I12", 3 * a1, dn - ftri_a1);
    report.ge("I13", 3 * a1 - dn + ftri_a1, missed);
    report.ge("I14", 4 * a2, dd - missed - ftri_a2);
    report.ge(
        "I15",
        12 * a1 + 12 * a2,
        4 * dn + 3 * dd - 4 * ftri_a1 - 3 * ftri_a2,
    );
    let bound_l2 = s + d + t + a1 + a2;
    report.ge("I16", 9 * bound_l2, 5 * opt);
    report.ge("I17", out, bound_l2);
    report.ge("T2", 9 * out, 5 * opt);
}

struct WingQuantities {
    opt_wings: i64,
    main_wing_set: i64,
    /// Combined size of both wing pools (general mode only).
    wing_pool: i64,
    walks: i64,
    surviving: i64,
}

fn audit_wing_chain(
    report: &mut AuditReport,
    q: &WingQuantities,
    m0_len: i64,
    p1_len: i64,
    p2_len: i64,
    out: i64,
    opt: i64,
    general: bool,
) {
    report.ge("M1", 2 * m0_len, opt);
    report.eq("E1", out, m0_len + p1_len + p2_len);
    report.ge("I18", q.opt_wings, 2 * (opt - m0_len));
    report.ge("I19", 3 * q.main_wing_set, 2 * q.opt_wings);
    if general {
        report.ge("I24", 3 * q.wing_pool, 4 * q.opt_wings);
        report.ge("I25", 3 * q.walks, 20 * opt - 32 * m0_len);
        report.ge("I26", q.surviving, q.walks - 12 * p1_len - m0_len);
        report.ge("I27", 12 * p2_len, q.surviving);
        report.ge("I28", 72 * out, 41 * opt);
    } else {
        report.ge("I20", 3 * q.walks, 10 * opt - 16 * m0_len);
        report.ge("I21", q.surviving, q.walks - 6 * p1_len);
        report.ge("I22", 6 * p2_len, q.surviving);
        report.ge("I23", 18 * out, 11 * opt);
    }
}

/// Verifies every inequality applicable to the run's algorithm family
/// against the exact optimum `mstar`. All checks are exact integer
/// comparisons; `report.all_hold()` is the overall verdict.
pub fn audit_run(run: &RunResult, mstar: &Matching) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::default();
    let out = run.output.len() as i64;
    let opt = mstar.len() as i64;
    match &run.artifacts {
        RunArtifacts::Greedy { m0 } => {
            report.ge("M1", 2 * m0.len() as i64, opt);
        }
        RunArtifacts::Triangle { index, sets, .. } => {
            let census = component_census(index);
            let classes = classify_opt_edges(index, mstar)?;
            audit_triangle_shared(&mut report, census, classes, sets.a1.len() as i64, opt);
            match run.algo {
                AlgoId::Tri2 => audit_tri2(&mut report, census, classes, sets, out, opt),
                AlgoId::Tri3 => {
                    audit_tri3(&mut report, index, mstar, census, classes, sets, out, opt)
                }
                _ => unreachable!("triangle artifacts imply a triangle algorithm"),
            }
        }
        RunArtifacts::WingTf { m0, w, p1, p2 } => {
            let wm = opt_wings(m0, mstar);
            let walks = collect_wing_walks(m0, &wm, &[w], false);
            let surviving = filter_wing_walks(&walks, p1, false, run.n);
            let q = WingQuantities {
                opt_wings: wm.len() as i64,
                main_wing_set: w.len() as i64,
                wing_pool: 0,
                walks: walks.len() as i64,
                surviving: surviving.len() as i64,
            };
            audit_wing_chain(
                &mut report,
                &q,
                m0.len() as i64,
                p1.len() as i64,
                p2.len() as i64,
                out,
                opt,
                false,
            );
        }
        RunArtifacts::WingGen { m0, w1, w2, p1, p2 } => {
            let wm = opt_wings(m0, mstar);
            let wm_set: BTreeSet<Edge> = wm.iter().copied().collect();
            let w2p = build_w2_prime(w1, w2, &wm_set, m0, run.n);
            let walks = collect_wing_walks(m0, &wm, &[w1, &w2p], true);
            let surviving = filter_wing_walks(&walks, p1, true, run.n);
            let q = WingQuantities {
                opt_wings: wm.len() as i64,
                main_wing_set: w1.len() as i64,
                wing_pool: (w1.len() + w2p.len()) as i64,
                walks: walks.len() as i64,
                surviving: surviving.len() as i64,
            };
            audit_wing_chain(
                &mut report,
                &q,
                m0.len() as i64,
                p1.len() as i64,
                p2.len() as i64,
                out,
                opt,
                true,
            );
        }
    }
    Ok(report)
}
