//! One-pass greedy maximal matching: the baseline algorithm and the shared
//! first pass of the wing-augmentation algorithms.

use crate::graph::{Edge, Matching};
use crate::stream::{MemoryMeter, StreamError};

/// Adds each arriving edge to the matching iff neither endpoint is matched
/// yet. The result is maximal with respect to every edge seen, which makes it
/// a 1/2-approximation of the maximum matching.
pub fn greedy_maximal(
    stream: impl Iterator<Item = Edge>,
    n: usize,
    meter: &mut MemoryMeter,
) -> Result<Matching, StreamError> {
    let mut matched = vec![false; n];
    let mut m0 = Matching::new();
    for e in stream {
        if !matched[e.a()] && !matched[e.b()] {
            matched[e.a()] = true;
            matched[e.b()] = true;
            m0.insert(e).expect("endpoints were free");
            meter.retain(1)?;
        }
    }
    Ok(m0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(pairs: &[(usize, usize)], n: usize) -> Matching {
        let edges: Vec<Edge> = pairs.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        greedy_maximal(edges.into_iter(), n, &mut MemoryMeter::unbounded()).unwrap()
    }

    #[test]
    fn takes_first_fit() {
        let m = run(&[(1, 2), (2, 3), (3, 4)], 5);
        assert_eq!(m.len(), 2);
        assert!(m.contains(&Edge::new(1, 2)));
        assert!(m.contains(&Edge::new(3, 4)));
    }

    #[test]
    fn order_matters() {
        let m = run(&[(2, 3), (1, 2), (3, 4)], 5);
        assert_eq!(m.len(), 1);
        assert!(m.contains(&Edge::new(2, 3)));
    }

    #[test]
    fn empty_stream() {
        assert!(run(&[], 4).is_empty());
    }

    #[test]
    fn maximality() {
        let pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)];
        let m = run(&pairs, 6);
        for (u, v) in pairs {
            assert!(
                m.covers(u) || m.covers(v),
                "({u}, {v}) extends the matching"
            );
        }
    }
}
