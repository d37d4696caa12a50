//! Structural validation of a finished run against its instance: everything
//! the algorithms promise about their artifacts, independent of the
//! inequality audit. Shared by property tests, the acceptance suite and the
//! fuzz targets.

use std::collections::BTreeSet;

use crate::audit::component_census;
use crate::graph::{Edge, Matching};
use crate::stream::{AlgoId, Instance, RunArtifacts, RunResult};
use crate::triangle::TriComponentIndex;

fn err(msg: String) -> Result<(), String> {
    Err(msg)
}

fn check_subset(part: &BTreeSet<Edge>, all: &BTreeSet<Edge>, what: &str) -> Result<(), String> {
    for e in part {
        if !all.contains(e) {
            return err(format!("{what} edge {e:?} is not an instance edge"));
        }
    }
    Ok(())
}

fn check_maximal(m0: &Matching, edges: &BTreeSet<Edge>) -> Result<(), String> {
    for e in edges {
        if !m0.covers(e.a()) && !m0.covers(e.b()) {
            return err(format!("matching is not maximal: {e:?} is free"));
        }
    }
    Ok(())
}

fn check_no_isolated_pair(index: &TriComponentIndex, edges: &BTreeSet<Edge>) -> Result<(), String> {
    for e in edges {
        let su = index.component_size(index.component_of(e.a()));
        let sv = index.component_size(index.component_of(e.b()));
        if su == 1 && sv == 1 {
            return err(format!("{e:?} joins two isolated vertices after pass 1"));
        }
    }
    Ok(())
}

fn check_paths(
    run: &RunResult,
    m0: &Matching,
    p1: &[crate::graph::Path4],
    p2: &[crate::graph::Path4],
    instance_edges: &BTreeSet<Edge>,
) -> Result<(), String> {
    let mut occupied = vec![false; run.n];
    for p in p1.iter().chain(p2) {
        for v in p.vertices() {
            if occupied[v] {
                return err(format!("paths overlap on vertex {v}"));
            }
            occupied[v] = true;
        }
        if !m0.contains(&p.mid()) {
            return err(format!(
                "path middle {:?} not in the base matching",
                p.mid()
            ));
        }
        if m0.covers(p.u) || m0.covers(p.v) {
            return err(format!("path end of {p:?} is matched"));
        }
        for e in [p.first(), p.mid(), p.last()] {
            if !instance_edges.contains(&e) {
                return err(format!("path edge {e:?} is not an instance edge"));
            }
        }
    }
    if run.output.len() != m0.len() + p1.len() + p2.len() {
        return err(format!(
            "output size {} != |M0| {} + |P1| {} + |P2| {}",
            run.output.len(),
            m0.len(),
            p1.len(),
            p2.len()
        ));
    }
    if 4 * (p1.len() + p2.len()) > run.n {
        return err(format!(
            "{} disjoint 4-vertex paths cannot fit in {} vertices",
            p1.len() + p2.len(),
            run.n
        ));
    }
    Ok(())
}

/// Checks every structural invariant of the run's algorithm family.
pub fn validate_run(run: &RunResult, instance: &Instance) -> Result<(), String> {
    let n = instance.vertex_count();
    if run.n != n {
        return err(format!(
            "run recorded n = {} for an instance with n = {n}",
            run.n
        ));
    }
    if run.passes_used != run.algo.pass_count() {
        return err(format!(
            "{} used {} passes instead of {}",
            run.algo.name(),
            run.passes_used,
            run.algo.pass_count()
        ));
    }
    let instance_edges: BTreeSet<Edge> = instance.graph.edges().iter().copied().collect();
    for e in run.output.iter() {
        if !instance_edges.contains(&e) {
            return err(format!("output edge {e:?} is not an instance edge"));
        }
    }
    match &run.artifacts {
        RunArtifacts::Greedy { m0 } => {
            if *m0 != run.output {
                return err("greedy output differs from its matching".into());
            }
            check_maximal(m0, &instance_edges)?;
        }
        RunArtifacts::Triangle { p, index, sets } => {
            index.validate(p)?;
            sets.validate(index)?;
            check_subset(p, &instance_edges, "P")?;
            check_subset(&sets.a1, &instance_edges, "A1")?;
            check_subset(&sets.a2, &instance_edges, "A2")?;
            check_no_isolated_pair(index, &instance_edges)?;
            if p.len() > n {
                return err(format!("|P| = {} exceeds n = {n}", p.len()));
            }
            if 2 * sets.a1.len() > n || 2 * sets.a2.len() > n {
                return err("augment set exceeds n/2".into());
            }
            if sets.a1.intersection(p).next().is_some() || sets.a2.intersection(p).next().is_some()
            {
                return err("augment sets overlap P".into());
            }
            let census = component_census(index);
            let base = census.isolated_edges + census.length2_paths + census.triangles;
            let (a1, a2) = (sets.a1.len() as i64, sets.a2.len() as i64);
            let bound = match run.algo {
                AlgoId::Tri2 => base + a1.max(a2),
                AlgoId::Tri3 => base + a1 + a2,
                _ => unreachable!(),
            };
            if (run.output.len() as i64) < bound {
                return err(format!(
                    "output {} below certified bound {bound}",
                    run.output.len()
                ));
            }
            if run.algo == AlgoId::Tri3 {
                if sets.a1.intersection(&sets.a2).next().is_some() {
                    return err("three-pass A1 and A2 share an edge".into());
                }
                for c in index.components() {
                    if sets.a1_touches(c) && sets.a2_touches(c) {
                        return err(format!("component {c} touched by both A1 and A2"));
                    }
                }
            }
        }
        RunArtifacts::WingTf { m0, w, p1, p2 } => {
            check_maximal(m0, &instance_edges)?;
            let mut covered = vec![false; n];
            for e in m0.iter() {
                covered[e.a()] = true;
                covered[e.b()] = true;
            }
            w.validate(&covered)?;
            check_subset(&w.edges().iter().copied().collect(), &instance_edges, "W")?;
            if w.len() > 2 * m0.len() {
                return err(format!(
                    "|W| = {} exceeds 2|M0| = {}",
                    w.len(),
                    2 * m0.len()
                ));
            }
            check_paths(run, m0, p1, p2, &instance_edges)?;
        }
        RunArtifacts::WingGen { m0, w1, w2, p1, p2 } => {
            check_maximal(m0, &instance_edges)?;
            let mut covered = vec![false; n];
            for e in m0.iter() {
                covered[e.a()] = true;
                covered[e.b()] = true;
            }
            w1.validate(&covered)?;
            w2.validate(&covered)?;
            let w1_set: BTreeSet<Edge> = w1.edges().iter().copied().collect();
            let w2_set: BTreeSet<Edge> = w2.edges().iter().copied().collect();
            check_subset(&w1_set, &instance_edges, "W1")?;
            check_subset(&w2_set, &instance_edges, "W2")?;
            if w1_set.intersection(&w2_set).next().is_some() {
                return err("W1 and W2 share an edge".into());
            }
            check_paths(run, m0, p1, p2, &instance_edges)?;
        }
    }
    Ok(())
}
