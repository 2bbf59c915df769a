//! Isomorph-free generation of simple graphs by canonical vertex augmentation.
//!
//! A child is a canonical parent on `k` vertices plus a new vertex `k` joined
//! to some subset of the parent. The child's canonical deletion is the vertex
//! in the last canonical position; the child is kept iff deleting that vertex
//! gives a graph isomorphic to the parent. Children of one parent are
//! deduplicated by canonical form. Every isomorphism class therefore appears
//! exactly once, under exactly one parent.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::{canonical_form, initial_cells, label_from_cells, CanonicalForm};
use super::EnumerateError;
use crate::graph::{is_connected, Graph};

/// Default order cap for [`connected_graphs`].
pub const CONNECTED_MAX_ORDER: usize = 9;
/// Order reachable with the extended flag.
pub const CONNECTED_EXTENDED_ORDER: usize = 10;

/// Level at which the search tree is cut into independent branches.
const BRANCH_LEVEL: usize = 5;

/// Accepted children of a canonical parent, as canonical graphs, in a
/// deterministic order.
fn children(parent: &Graph, parent_form: &CanonicalForm) -> Vec<(Graph, CanonicalForm)> {
    let k = parent.order();
    let parent_max_degree = (0..k).map(|v| parent.degree(v)).max().unwrap_or(0);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out = Vec::new();
    for subset in 0u64..(1u64 << k) {
        let d = subset.count_ones() as usize;
        // the canonical deletion always has maximum degree
        if d < parent_max_degree {
            continue;
        }
        let mut rows = parent.adjacency_rows().to_vec();
        for (v, row) in rows.iter_mut().enumerate() {
            if subset >> v & 1 == 1 {
                *row |= 1 << k;
            }
        }
        rows.push(subset.into());
        let child = Graph::from_adjacency(rows).expect("augmentation keeps adjacency symmetric");
        if (0..k).any(|v| child.degree(v) > d) {
            continue;
        }
        let cells = initial_cells(&child);
        if cells.last().expect("nonempty") >> k & 1 == 0 {
            continue;
        }
        let labeling = label_from_cells(&child, cells);
        let last = labeling.last_vertex();
        let accepted = last == k
            || canonical_form(&child.remove_vertex(last).expect("order >= 2")).expect("order within cap")
                == *parent_form;
        if accepted && seen.insert(labeling.form.clone()) {
            out.push((labeling.form.to_graph(), labeling.form));
        }
    }
    out
}

/// Depth-first stream of all graphs of a target order below one root.
pub struct AugmentationStream {
    target: usize,
    connected_only: bool,
    stack: Vec<Vec<(Graph, CanonicalForm)>>,
}

impl AugmentationStream {
    fn new(root: (Graph, CanonicalForm), target: usize, connected_only: bool) -> Self {
        Self { target, connected_only, stack: vec![vec![root]] }
    }
}

impl Iterator for AugmentationStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let top = self.stack.last_mut()?;
            let Some((g, form)) = top.pop() else {
                self.stack.pop();
                continue;
            };
            if g.order() == self.target {
                if !self.connected_only || is_connected(&g) {
                    return Some(g);
                }
            } else {
                let mut kids = children(&g, &form);
                kids.reverse();
                self.stack.push(kids);
            }
        }
    }
}

fn single_vertex() -> (Graph, CanonicalForm) {
    let g = Graph::empty(1).expect("order 1 is valid");
    let form = canonical_form(&g).expect("order 1 is valid");
    (g, form)
}

/// Independent sub-streams whose concatenation is the full stream of order
/// `n`. Each can be consumed by a different worker.
pub fn augmentation_branches(n: usize, connected_only: bool) -> Vec<AugmentationStream> {
    let level = n.min(BRANCH_LEVEL);
    AugmentationStream::new(single_vertex(), level, false)
        .map(|g| {
            let form = canonical_form(&g).expect("small order");
            AugmentationStream::new((g, form), n, connected_only)
        })
        .collect()
}

fn check_cap(n: usize, max: usize) -> Result<(), EnumerateError> {
    if n == 0 || n > max {
        Err(EnumerateError::OrderOutOfRange { n, max })
    } else {
        Ok(())
    }
}

/// All graphs on `n` vertices up to isomorphism (connected or not).
pub fn all_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    check_cap(n, CONNECTED_EXTENDED_ORDER)?;
    Ok(augmentation_branches(n, false).into_iter().flatten())
}

/// Connected graphs on `n <= 9` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    connected_graphs_capped(n, false)
}

/// As [`connected_graphs`]; `extended` raises the cap to 10.
pub fn connected_graphs_capped(n: usize, extended: bool) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    check_cap(n, if extended { CONNECTED_EXTENDED_ORDER } else { CONNECTED_MAX_ORDER })?;
    Ok(augmentation_branches(n, true).into_iter().flatten())
}

/// [`connected_graphs_capped`] with branches generated on the rayon pool.
/// Output order is identical to the sequential stream.
pub fn connected_graphs_parallel(n: usize, extended: bool) -> Result<Vec<Graph>, EnumerateError> {
    check_cap(n, if extended { CONNECTED_EXTENDED_ORDER } else { CONNECTED_MAX_ORDER })?;
    let chunks: Vec<Vec<Graph>> =
        augmentation_branches(n, true).into_par_iter().map(|branch| branch.collect()).collect();
    Ok(chunks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).unwrap().count()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().count()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn caps() {
        assert!(matches!(connected_graphs(0), Err(EnumerateError::OrderOutOfRange { n: 0, .. })));
        assert!(matches!(connected_graphs(10), Err(EnumerateError::OrderOutOfRange { n: 10, max: 9 })));
        assert!(connected_graphs_capped(10, true).is_ok());
        assert!(connected_graphs_capped(11, true).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq: Vec<Graph> = connected_graphs(6).unwrap().collect();
        assert_eq!(connected_graphs_parallel(6, false).unwrap(), seq);
    }

    #[test]
    fn order_one() {
        let v: Vec<Graph> = connected_graphs(1).unwrap().collect();
        assert_eq!(v, vec![Graph::empty(1).unwrap()]);
    }
}
