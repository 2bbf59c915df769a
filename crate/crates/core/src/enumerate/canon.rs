//! Canonical labeling by partition refinement and individualization.
//!
//! The initial vertex coloring sorts vertices by (degree, neighbor degree
//! multiset, distance profile). The ordered partition is refined to an
//! equitable one, then the search tree individualizes vertices of the first
//! non-singleton cell. Each leaf is a labeling; the canonical labeling is the
//! one whose relabeled adjacency rows are lexicographically largest.
//! Automorphisms found along the way (two leaves with equal adjacency) prune
//! children that lie in the same orbit of the stabilizer of the current path.

use std::fmt;

use super::EnumerateError;
use crate::graph::{bits, parse_graph6, Graph, Mask};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 16;

/// Isomorphism-class fingerprint: the graph6 edge field of the canonical
/// relabeling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    bits: Vec<u8>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Packed upper-triangle bits, six per byte, graph6 column order.
    pub fn bytes(&self) -> &[u8] {
        &self.bits
    }

    /// graph6 string of the canonical representative.
    pub fn to_graph6(&self) -> String {
        let mut s = String::with_capacity(1 + self.bits.len());
        s.push(char::from(63 + self.n));
        s.extend(self.bits.iter().map(|&b| char::from(b)));
        s
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        parse_graph6(&self.to_graph6()).expect("canonical form holds a valid graph6 payload")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_graph6())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// A canonical labeling: `order[p]` is the vertex placed at position `p`.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub order: Vec<usize>,
    pub form: CanonicalForm,
}

impl Labeling {
    /// Vertex that lands in the last canonical position.
    pub fn last_vertex(&self) -> usize {
        *self.order.last().expect("graphs are nonempty")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, EnumerateError> {
    Ok(canonical_labeling(g)?.form)
}

pub fn canonical_labeling(g: &Graph) -> Result<Labeling, EnumerateError> {
    check_order(g)?;
    let cells = initial_cells(g);
    Ok(label_from_cells(g, cells))
}

/// `g` relabeled into canonical position order.
pub fn canonical_graph(g: &Graph) -> Result<Graph, EnumerateError> {
    Ok(canonical_form(g)?.to_graph())
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, EnumerateError> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

fn check_order(g: &Graph) -> Result<(), EnumerateError> {
    if g.order() > CANON_MAX_ORDER {
        Err(EnumerateError::OrderTooLarge { n: g.order(), max: CANON_MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Per-vertex invariant key: degree, neighbor degrees (descending), then the
/// number of vertices at each distance 2, 3, ... and the unreachable count.
fn vertex_keys(g: &Graph) -> Vec<[u8; 2 * CANON_MAX_ORDER + 2]> {
    let n = g.order();
    let full = g.vertex_mask();
    (0..n)
        .map(|v| {
            let mut key = [0u8; 2 * CANON_MAX_ORDER + 2];
            key[0] = g.degree(v) as u8;
            let mut nd: Vec<u8> = g.neighbors(v).map(|u| g.degree(u) as u8).collect();
            nd.sort_unstable_by(|a, b| b.cmp(a));
            key[1..1 + nd.len()].copy_from_slice(&nd);
            let base = 1 + CANON_MAX_ORDER;
            let mut seen = (1 as Mask) << v | g.neighbor_mask(v);
            let mut frontier = g.neighbor_mask(v);
            let mut depth = 0;
            while frontier != 0 {
                let mut next = 0;
                for u in bits(frontier) {
                    next |= g.neighbor_mask(u);
                }
                frontier = next & !seen;
                seen |= frontier;
                key[base + depth] = frontier.count_ones() as u8;
                depth += 1;
            }
            key[2 * CANON_MAX_ORDER + 1] = (full & !seen).count_ones() as u8;
            key
        })
        .collect()
}

/// Initial ordered partition: vertices grouped by key, cells in ascending key order.
pub(crate) fn initial_cells(g: &Graph) -> Vec<u64> {
    let keys = vertex_keys(g);
    let mut idx: Vec<usize> = (0..g.order()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut cells: Vec<u64> = Vec::new();
    for (i, &v) in idx.iter().enumerate() {
        if i > 0 && keys[idx[i - 1]] == keys[v] {
            *cells.last_mut().unwrap() |= 1 << v;
        } else {
            cells.push(1 << v);
        }
    }
    cells
}

pub(crate) fn label_from_cells(g: &Graph, mut cells: Vec<u64>) -> Labeling {
    // orders here are at most 16, so rows fit in u64
    let adj: Vec<u64> = g.adjacency_rows().iter().map(|&r| r as u64).collect();
    let mut search = Search { adj: &adj, n: g.order(), first: None, best: None, autos: Vec::new() };
    let mut queue = cells.clone();
    search.refine(&mut cells, &mut queue);
    search.descend(cells, &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");
    let order: Vec<usize> = best.lab.iter().map(|&v| v as usize).collect();
    let form = form_from_rows(g.order(), &best.cert);
    Labeling { order, form }
}

fn form_from_rows(n: usize, rows: &[u64]) -> CanonicalForm {
    let total = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(total.div_ceil(6));
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | (rows[i] >> j & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    CanonicalForm { n: n as u8, bits: out }
}

#[derive(Clone)]
struct Leaf {
    lab: Vec<u8>,
    cert: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as vertex maps.
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    /// Splits cells by neighbor counts into each splitter until the ordered
    /// partition is equitable. Sub-cells keep their parent's position and
    /// are ordered by ascending count.
    fn refine(&self, cells: &mut Vec<u64>, queue: &mut Vec<u64>) {
        let mut head = 0;
        let mut counts = [0u8; 64];
        let mut parts: Vec<u64> = Vec::with_capacity(16);
        while head < queue.len() && cells.len() < self.n {
            let splitter = queue[head];
            head += 1;
            let mut i = 0;
            while i < cells.len() {
                let cell = cells[i];
                if cell & (cell - 1) == 0 {
                    i += 1;
                    continue;
                }
                let (mut lo, mut hi) = (u8::MAX, 0u8);
                for v in bits(cell) {
                    let c = (self.adj[v] & splitter).count_ones() as u8;
                    counts[v] = c;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    i += 1;
                    continue;
                }
                parts.clear();
                for k in lo..=hi {
                    let mut part = 0u64;
                    for v in bits(cell) {
                        if counts[v] == k {
                            part |= 1 << v;
                        }
                    }
                    if part != 0 {
                        parts.push(part);
                    }
                }
                cells.splice(i..=i, parts.iter().copied());
                queue.extend_from_slice(&parts);
                i += parts.len();
            }
        }
    }

    /// Orbit representatives under automorphisms fixing `path` pointwise.
    fn same_orbit(&self, v: usize, explored: &[u8], path: &[u8]) -> bool {
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(p: &mut [u8], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if path.iter().all(|&p| a[p as usize] == p) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x as u8), find(&mut parent, y));
                    if rx != ry {
                        parent[rx as usize] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v as u8);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<u8>) {
        if cells.len() == self.n {
            self.leaf(&cells);
            return;
        }
        let ci = cells.iter().position(|&c| c & (c - 1) != 0).expect("a non-singleton cell exists");
        let target = cells[ci];
        let mut explored: Vec<u8> = Vec::new();
        for v in bits(target) {
            if !explored.is_empty() && self.same_orbit(v, &explored, path) {
                continue;
            }
            explored.push(v as u8);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ci]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[ci + 1..]);
            let mut queue = vec![1u64 << v];
            self.refine(&mut child, &mut queue);
            path.push(v as u8);
            self.descend(child, path);
            path.pop();
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let lab: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let mut pos = [0u8; 64];
        for (p, &v) in lab.iter().enumerate() {
            pos[v as usize] = p as u8;
        }
        let cert: Vec<u64> = lab
            .iter()
            .map(|&v| bits(self.adj[v as usize]).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();
        let leaf = Leaf { lab, cert };
        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return;
        };
        let best = self.best.as_ref().expect("best is set with first");
        let twin = if leaf.cert == first.cert {
            Some(first)
        } else if leaf.cert == best.cert {
            Some(best)
        } else {
            None
        };
        if let Some(twin) = twin {
            let mut map = vec![0u8; self.n];
            for (p, &v) in twin.lab.iter().enumerate() {
                map[v as usize] = leaf.lab[p];
            }
            self.autos.push(map);
        } else if leaf.cert > best.cert {
            self.best = Some(leaf);
        }
    }
}

/// Convenience for tests and diagnostics.
pub fn canonical_graph6(g: &Graph) -> Result<String, EnumerateError> {
    Ok(canonical_form(g)?.to_graph6())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::to_graph6;

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn distinguishes_star_and_path() {
        let p4 = families::path(4).unwrap();
        let s = families::star(4).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&s).unwrap());
    }

    #[test]
    fn order_eight_extremal_pair_differs() {
        let fam = families::extremal_even_family(8).unwrap();
        assert_ne!(canonical_form(&fam[0]).unwrap(), canonical_form(&fam[1]).unwrap());
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        for g in [families::wheel(7).unwrap(), families::cocktail_apex(9).unwrap(), families::path(6).unwrap()] {
            let c = canonical_graph(&g).unwrap();
            assert_eq!(canonical_form(&c).unwrap(), canonical_form(&g).unwrap());
            assert_eq!(c.size(), g.size());
        }
    }

    #[test]
    fn labeling_maps_graph_to_form() {
        let g = families::wheel(6).unwrap();
        let lab = canonical_labeling(&g).unwrap();
        let mut perm = vec![0; 6];
        for (p, &v) in lab.order.iter().enumerate() {
            perm[v] = p;
        }
        assert_eq!(to_graph6(&g.relabel(&perm)).unwrap(), lab.form.to_graph6());
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        for n in [1, 2, 9, 16] {
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&e).unwrap().to_graph(), e);
            let k = families::complete(n).unwrap();
            assert_eq!(canonical_form(&k).unwrap().to_graph(), k);
        }
        // Petersen graph and its relabeling
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(inner).chain(spokes).collect();
        let pet = Graph::from_edges(10, &edges).unwrap();
        let perm = [3, 7, 1, 9, 0, 4, 8, 2, 6, 5];
        assert_eq!(canonical_form(&pet).unwrap(), canonical_form(&pet.relabel(&perm)).unwrap());
    }

    #[test]
    fn order_cap() {
        let g = Graph::empty(17).unwrap();
        assert_eq!(canonical_form(&g), Err(EnumerateError::OrderTooLarge { n: 17, max: 16 }));
    }
}
