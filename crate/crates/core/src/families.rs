//! Named graph families: stars, complete and complete multipartite graphs,
//! wheels, and graphs with a distinguished dominating vertex whose removal
//! leaves a regular graph (r-DVDR graphs).
//!
//! Every constructor that has an apex puts it at vertex 0.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{family} needs {requirement}, got {value}")]
    Parameter { family: &'static str, requirement: &'static str, value: usize },
    #[error("part list is empty")]
    NoParts,
    #[error("part {index} has size zero")]
    EmptyPart { index: usize },
    #[error("graph is not regular")]
    NotRegular,
}

fn require(ok: bool, family: &'static str, requirement: &'static str, value: usize) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Parameter { family, requirement, value })
    }
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Result<Graph, FamilyError> {
    require(n >= 2, "star", "n >= 2", n)?;
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    Ok(Graph::empty(n)?.complement())
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(v - 1, v)?;
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    require(n >= 3, "cycle", "n >= 3", n)?;
    let mut g = path(n)?;
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

/// Hub 0 joined to a cycle on `1..n`.
pub fn wheel(n: usize) -> Result<Graph, FamilyError> {
    require(n >= 4, "wheel", "n >= 4", n)?;
    dvdr_join(&cycle(n - 1)?)
}

/// Vertices are adjacent iff they lie in different parts. Parts are laid
/// out consecutively from vertex 0.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, FamilyError> {
    if parts.is_empty() {
        return Err(FamilyError::NoParts);
    }
    if let Some(index) = parts.iter().position(|&p| p == 0) {
        return Err(FamilyError::EmptyPart { index });
    }
    let n = parts.iter().sum();
    let mut label = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        label.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if label[u] != label[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `K_{1,2,...,2}` on odd `n`: an apex plus `(n-1)/2` parts of size two.
pub fn cocktail_apex(n: usize) -> Result<Graph, FamilyError> {
    require(n >= 3 && n % 2 == 1, "cocktail_apex", "odd n >= 3", n)?;
    let mut parts = vec![1];
    parts.extend(std::iter::repeat_n(2, (n - 1) / 2));
    complete_multipartite(&parts)
}

/// Adds a new vertex 0 adjacent to every vertex of the regular graph `h`
/// (whose vertices shift up by one).
pub fn dvdr_join(h: &Graph) -> Result<Graph, FamilyError> {
    h.regularity().ok_or(FamilyError::NotRegular)?;
    let apex = Graph::empty(1)?;
    let mut g = apex.disjoint_union(h)?;
    for v in 1..g.order() {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

/// A dominating vertex whose deletion leaves an `r`-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DvdrWitness {
    pub apex: usize,
    pub r: usize,
}

/// Smallest-id dominating vertex whose removal leaves a regular graph.
pub fn is_dvdr(g: &Graph) -> Option<DvdrWitness> {
    let n = g.order();
    (0..n).filter(|&v| g.degree(v) == n - 1).find_map(|v| {
        if n == 1 {
            return Some(DvdrWitness { apex: v, r: 0 });
        }
        // every other vertex loses exactly the edge to v
        let r = g.degree(if v == 0 { 1 } else { 0 }) - 1;
        (0..n).filter(|&u| u != v).all(|u| g.degree(u) - 1 == r).then_some(DvdrWitness { apex: v, r })
    })
}

/// Complement (within `K_{sum}`) of the disjoint union of cycles of the given lengths.
fn cycle_union_complement(lengths: &[usize]) -> Result<Graph, FamilyError> {
    let mut it = lengths.iter();
    let first = cycle(*it.next().ok_or(FamilyError::NoParts)?)?;
    let union = it.try_fold(first, |acc, &len| acc.disjoint_union(&cycle(len)?).map_err(FamilyError::from))?;
    Ok(union.complement())
}

/// Partitions of `total` into parts `>= min_part`, parts non-increasing,
/// listed in reverse lexicographic order.
fn partitions(total: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max_part: usize, min_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (min_part..=max_part.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, min_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, min_part, &mut Vec::new(), &mut out);
    out
}

/// All `(n-4)`-DVDR graphs on even `n`, up to isomorphism.
///
/// `G - v` is `(n-4)`-regular on `n-1` vertices exactly when its complement
/// is 2-regular, i.e. a disjoint union of cycles. One graph per partition of
/// `n-1` into parts of size at least 3. For `n = 4` this is the star
/// `K_{1,3}` (complement of a triangle is edgeless).
pub fn extremal_even_family(n: usize) -> Result<Vec<Graph>, FamilyError> {
    require(n >= 4 && n % 2 == 0, "extremal_even_family", "even n >= 4", n)?;
    partitions(n - 1, 3)
        .iter()
        .map(|lengths| dvdr_join(&cycle_union_complement(lengths)?))
        .collect()
}

/// Cycle lengths matching [`extremal_even_family`] order.
pub fn extremal_even_cycle_types(n: usize) -> Result<Vec<Vec<usize>>, FamilyError> {
    require(n >= 4 && n % 2 == 0, "extremal_even_family", "even n >= 4", n)?;
    Ok(partitions(n - 1, 3))
}
