//! Equitable partitions and their quotient matrices.

use super::{perron, SpectralError, SymmetricMatrix};

/// Block row-sum matrix of an equitable partition.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    k: usize,
    /// Row-major `b_ij`.
    entries: Vec<f64>,
    partition: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.k + j]
    }

    pub fn partition(&self) -> &[Vec<usize>] {
        &self.partition
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.k).map(<[f64]>::to_vec).collect()
    }

    /// Spectral radius of the quotient of a nonnegative matrix.
    ///
    /// For a symmetric source, `|X_i| b_ij = |X_j| b_ji`, so scaling by
    /// `sqrt(|X_i| / |X_j|)` gives a symmetric matrix with the same spectrum.
    pub fn spectral_radius(&self, tol: f64) -> Result<f64, SpectralError> {
        let sizes: Vec<f64> = self.partition.iter().map(|c| c.len() as f64).collect();
        let sym = SymmetricMatrix::from_fn(self.k, |i, j| self.get(i, j) * (sizes[i] / sizes[j]).sqrt());
        Ok(perron(&sym, tol)?.radius)
    }
}

fn validate_partition(k: usize, partition: &[Vec<usize>]) -> Result<(), SpectralError> {
    let mut seen = vec![false; k];
    for (c, cell) in partition.iter().enumerate() {
        if cell.is_empty() {
            return Err(SpectralError::InvalidPartition(format!("block {c} is empty")));
        }
        for &v in cell {
            if v >= k {
                return Err(SpectralError::InvalidPartition(format!("index {v} out of range for order {k}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(SpectralError::InvalidPartition(format!("index {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(SpectralError::InvalidPartition(format!("index {v} is not covered")));
    }
    Ok(())
}

/// Verifies every block of `m` has constant row sums and returns the
/// quotient. Integral matrices are compared exactly; others within `1e-9`.
pub fn check_equitable(m: &SymmetricMatrix, partition: &[Vec<usize>]) -> Result<QuotientMatrix, SpectralError> {
    let k = partition.len();
    validate_partition(m.order(), partition)?;
    let exact = m.is_integral();
    let mut entries = vec![0.0; k * k];
    for (bi, rows) in partition.iter().enumerate() {
        for (bj, cols) in partition.iter().enumerate() {
            let block_sum = |r: usize| -> f64 { cols.iter().map(|&c| m.get(r, c)).sum() };
            let first = block_sum(rows[0]);
            for &r in &rows[1..] {
                let s = block_sum(r);
                let equal = if exact { s == first } else { (s - first).abs() <= 1e-9 * first.abs().max(1.0) };
                if !equal {
                    return Err(SpectralError::NotEquitable {
                        block_row: bi,
                        block_col: bj,
                        row_a: rows[0],
                        row_b: r,
                        sum_a: first,
                        sum_b: s,
                    });
                }
            }
            entries[bi * k + bj] = first;
        }
    }
    Ok(QuotientMatrix { k, entries, partition: partition.to_vec() })
}

/// Largest root of a 2x2 quotient, `(b11 + b22 + sqrt((b11 - b22)^2 + 4 b12 b21)) / 2`.
pub fn quotient_radius_2x2(b: &QuotientMatrix) -> Result<f64, SpectralError> {
    if b.order() != 2 {
        return Err(SpectralError::QuotientOrder(b.order()));
    }
    let (a, p, q, d) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    Ok((a + d + ((a - d) * (a - d) + 4.0 * p * q).sqrt()) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{distance_matrix, transmission_profile, Graph};
    use crate::spectral::DEFAULT_TOLERANCE;

    fn q_matrix(g: &Graph) -> SymmetricMatrix {
        let d = distance_matrix(g).unwrap();
        SymmetricMatrix::distance_signless_laplacian(&d, &transmission_profile(&d))
    }

    fn apex_join(h_edges: &[(usize, usize)], h_order: usize) -> Graph {
        let mut g = Graph::empty(h_order + 1).unwrap();
        for v in 1..=h_order {
            g.add_edge(0, v).unwrap();
        }
        for &(a, b) in h_edges {
            g.add_edge(a + 1, b + 1).unwrap();
        }
        g
    }

    fn from_rows(rows: [[f64; 2]; 2]) -> QuotientMatrix {
        QuotientMatrix {
            k: 2,
            entries: rows.iter().flatten().copied().collect(),
            partition: vec![vec![0], vec![1]],
        }
    }

    #[test]
    fn cocktail_apex_quotient() {
        let g = apex_join(&[(0, 1), (1, 2), (2, 3), (3, 0)], 4);
        let m = q_matrix(&g);
        let q = check_equitable(&m, &[vec![0], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(q.rows(), vec![vec![4.0, 4.0], vec![1.0, 9.0]]);
        let r = quotient_radius_2x2(&q).unwrap();
        assert!((r - (13.0 + 41f64.sqrt()) / 2.0).abs() < 1e-12);
        let full = perron(&m, DEFAULT_TOLERANCE).unwrap().radius;
        assert!((r - full).abs() < 1e-10);
        assert!((q.spectral_radius(DEFAULT_TOLERANCE).unwrap() - full).abs() < 1e-10);
    }

    #[test]
    fn wheel_quotient() {
        let g = apex_join(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5);
        let q = check_equitable(&q_matrix(&g), &[vec![0], vec![1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(q.rows(), vec![vec![5.0, 5.0], vec![1.0, 13.0]]);
        assert!((quotient_radius_2x2(&q).unwrap() - (9.0 + 21f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn path_distance_quotient() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = SymmetricMatrix::distance(&distance_matrix(&p4).unwrap());
        let q = check_equitable(&m, &[vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(q.rows(), vec![vec![3.0, 3.0], vec![3.0, 1.0]]);
        let full = perron(&m, DEFAULT_TOLERANCE).unwrap().radius;
        assert!((quotient_radius_2x2(&q).unwrap() - full).abs() < 1e-10);
    }

    #[test]
    fn star_closed_form() {
        // trace 12, determinant 24: roots 6 +- 2 sqrt(3)
        let r = quotient_radius_2x2(&from_rows([[3.0, 3.0], [1.0, 9.0]])).unwrap();
        assert!((r - (6.0 + 2.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((r * r - 12.0 * r + 24.0).abs() < 1e-10);
    }

    #[test]
    fn non_equitable_partition_reports_block() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = SymmetricMatrix::distance(&distance_matrix(&p4).unwrap());
        let err = check_equitable(&m, &[vec![0, 1], vec![2, 3]]).unwrap_err();
        assert!(matches!(err, SpectralError::NotEquitable { block_row: 0, block_col: 1, row_a: 0, row_b: 1, .. }));
    }

    #[test]
    fn partition_validation() {
        let m = SymmetricMatrix::zeros(3);
        assert!(matches!(check_equitable(&m, &[vec![0, 1]]), Err(SpectralError::InvalidPartition(_))));
        assert!(matches!(check_equitable(&m, &[vec![0, 1], vec![1, 2]]), Err(SpectralError::InvalidPartition(_))));
        assert!(matches!(check_equitable(&m, &[vec![0, 1, 2], vec![]]), Err(SpectralError::InvalidPartition(_))));
        assert!(matches!(check_equitable(&m, &[vec![0, 1, 5]]), Err(SpectralError::InvalidPartition(_))));
    }

    #[test]
    fn quotient_order_error() {
        let m = SymmetricMatrix::from_fn(3, |i, j| (i != j) as u8 as f64);
        let q = check_equitable(&m, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(quotient_radius_2x2(&q), Err(SpectralError::QuotientOrder(3)));
        assert!((q.spectral_radius(DEFAULT_TOLERANCE).unwrap() - 2.0).abs() < 1e-10);
    }
}
