//! Free trees by the level-sequence method.
//!
//! A rooted tree is a preorder list of vertex depths. Successive rooted trees
//! come from the Beyer-Hedetniemi successor rule; a level sequence is kept
//! only when it is the canonical rooting of a free tree at its center
//! (Wright, Richmond, Odlyzko and McKay), and non-canonical runs are skipped
//! in one jump.

use super::EnumerateError;
use crate::graph::Graph;

pub const TREE_MAX_ORDER: usize = 18;

/// Stream of free trees on a fixed number of vertices.
pub struct FreeTrees {
    n: usize,
    layout: Option<Vec<usize>>,
}

pub fn free_trees(n: usize) -> Result<FreeTrees, EnumerateError> {
    if n == 0 || n > TREE_MAX_ORDER {
        return Err(EnumerateError::OrderOutOfRange { n, max: TREE_MAX_ORDER });
    }
    let layout = if n == 1 {
        vec![0]
    } else {
        // path rooted at its center
        (0..=n / 2).chain(1..n.div_ceil(2)).collect()
    };
    Ok(FreeTrees { n, layout: Some(layout) })
}

/// Next rooted level sequence, changing positions `p..`.
fn next_rooted(prev: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = prev.len() - 1;
            while prev[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while prev[q] != prev[p] - 1 {
        q -= 1;
    }
    let mut next = prev.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Splits off the first subtree of the root. Returns that subtree (depths
/// reduced by one) and the rest of the tree (with its root).
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().skip(2).find(|&(_, &d)| d == 1).map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|d| d - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

/// Returns `candidate` if it is a canonical free-tree layout, otherwise the
/// next candidate to try.
fn next_tree(candidate: Vec<usize>) -> (Vec<usize>, bool) {
    let (left, rest) = split(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height {
        if left.len() > rest.len() || (left.len() == rest.len() && left > rest) {
            valid = false;
        }
    }
    if valid {
        return (candidate, true);
    }
    let p = left.len();
    let Some(mut jumped) = next_rooted(&candidate, Some(p)) else {
        return (Vec::new(), false);
    };
    if candidate[p] > 2 {
        let (new_left, _) = split(&jumped);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = jumped.len();
        for (i, depth) in (1..=h + 1).enumerate() {
            jumped[len - (h + 1) + i] = depth;
        }
    }
    (jumped, false)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut g = Graph::empty(layout.len()).expect("order within cap");
    // last vertex seen at each depth
    let mut stack: Vec<usize> = Vec::new();
    for (v, &depth) in layout.iter().enumerate() {
        stack.truncate(depth);
        if let Some(&parent) = stack.last() {
            g.add_edge(parent, v).expect("tree edge is valid");
        }
        stack.push(v);
    }
    g
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n == 1 {
            return self.layout.take().map(|l| layout_to_graph(&l));
        }
        loop {
            let layout = self.layout.take()?;
            let (candidate, valid) = next_tree(layout);
            if candidate.is_empty() {
                return None;
            }
            if valid {
                let g = layout_to_graph(&candidate);
                self.layout = next_rooted(&candidate, None);
                return Some(g);
            }
            self.layout = Some(candidate);
        }
    }
}
