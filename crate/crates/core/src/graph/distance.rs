use super::{bits, Graph, GraphError, Mask};

/// All-pairs hop distances of a connected graph, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.n)
    }

    /// Largest distance.
    pub fn diameter(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }
}

/// Transmissions and the Wiener index, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmissionProfile {
    pub transmissions: Vec<u64>,
    pub d_max: u64,
    pub d_min: u64,
    pub wiener: u64,
    /// `n * d_max - 2 * wiener`, equivalently the sum of `d_max - D_i`.
    pub gap: u64,
    /// Vertices whose transmission equals `d_max`.
    pub argmax: Vec<usize>,
}

impl TransmissionProfile {
    pub fn order(&self) -> usize {
        self.transmissions.len()
    }

    pub fn is_transmission_regular(&self) -> bool {
        self.gap == 0
    }

    /// Vertices whose transmission equals `d_min`.
    pub fn argmin(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.transmissions[v] == self.d_min).collect()
    }
}

/// Frontier BFS from vertex 0.
pub fn is_connected(g: &Graph) -> bool {
    let full = g.vertex_mask();
    let mut seen: Mask = 1;
    let mut frontier: Mask = 1;
    while frontier != 0 {
        let mut next: Mask = 0;
        for v in bits(frontier) {
            next |= g.neighbor_mask(v);
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen == full
}

/// Per-vertex BFS. Disconnected input is an error rather than infinite
/// entries.
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.order();
    let full = g.vertex_mask();
    let mut entries = vec![0u32; n * n];
    for s in 0..n {
        let row = &mut entries[s * n..(s + 1) * n];
        let mut seen: Mask = 1 << s;
        let mut frontier = seen;
        let mut depth = 0u32;
        while frontier != 0 {
            depth += 1;
            let mut next: Mask = 0;
            for v in bits(frontier) {
                next |= g.neighbor_mask(v);
            }
            frontier = next & !seen;
            seen |= frontier;
            for v in bits(frontier) {
                row[v] = depth;
            }
        }
        if seen != full {
            return Err(GraphError::NotConnected);
        }
    }
    Ok(DistanceMatrix { n, entries })
}

pub fn transmission_profile(d: &DistanceMatrix) -> TransmissionProfile {
    let transmissions: Vec<u64> = d.rows().map(|r| r.iter().map(|&x| x as u64).sum()).collect();
    let d_max = transmissions.iter().copied().max().unwrap_or(0);
    let d_min = transmissions.iter().copied().min().unwrap_or(0);
    let total: u64 = transmissions.iter().sum();
    debug_assert!(total % 2 == 0);
    let wiener = total / 2;
    let gap = d.order() as u64 * d_max - total;
    debug_assert_eq!(gap, transmissions.iter().map(|&t| d_max - t).sum::<u64>());
    let argmax = (0..d.order()).filter(|&v| transmissions[v] == d_max).collect();
    TransmissionProfile { transmissions, d_max, d_min, wiener, gap, argmax }
}
