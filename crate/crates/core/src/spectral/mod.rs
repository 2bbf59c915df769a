//! Perron roots of the distance matrix `D(G)` and the distance signless
//! Laplacian `Q(G) = D(G) + diag(D_1, ..., D_n)`, and the irregularity
//! measures `sigma = D_max - rho(D)` and `tau = 2 D_max - rho(Q)`.

mod quotient;

pub use quotient::{check_equitable, quotient_radius_2x2, QuotientMatrix};

use thiserror::Error;

use crate::graph::{distance_matrix, transmission_profile, DistanceMatrix, Graph, GraphError, TransmissionProfile};

/// Relative residual tolerance used when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("matrix entry ({row}, {col}) = {value} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("power iteration did not converge in {iterations} sweeps (best residual {best_residual:e})")]
    NoConvergence { iterations: usize, best_residual: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("Perron vector has a non-positive entry at index {index}")]
    NonPositiveVector { index: usize },
    #[error("partition is invalid: {0}")]
    InvalidPartition(String),
    #[error("block ({block_row}, {block_col}) is not equitable: row {row_a} sums to {sum_a}, row {row_b} to {sum_b}")]
    NotEquitable { block_row: usize, block_col: usize, row_a: usize, row_b: usize, sum_a: f64, sum_b: f64 },
    #[error("expected a 2x2 quotient, got {0}x{0}")]
    QuotientOrder(usize),
}

/// Dense real symmetric matrix stored as its packed upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    k: usize,
    packed: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(k: usize) -> Self {
        Self { k, packed: vec![0.0; k * (k + 1) / 2] }
    }

    /// Builds from `f(i, j)` evaluated for `i <= j` only.
    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut packed = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                packed.push(f(i, j));
            }
        }
        Self { k, packed }
    }

    /// `D(G)` as reals.
    pub fn distance(d: &DistanceMatrix) -> Self {
        Self::from_fn(d.order(), |i, j| d.get(i, j) as f64)
    }

    /// `Q(G) = D(G) + diag(transmissions)`.
    pub fn distance_signless_laplacian(d: &DistanceMatrix, p: &TransmissionProfile) -> Self {
        Self::from_fn(d.order(), |i, j| if i == j { p.transmissions[i] as f64 } else { d.get(i, j) as f64 })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.k
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.k - i * (i + 1) / 2 + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let idx = self.index(i, j);
        self.packed[idx] = value;
    }

    /// `y = M x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        let k = self.k;
        y.iter_mut().for_each(|v| *v = 0.0);
        let mut idx = 0;
        for i in 0..k {
            y[i] += self.packed[idx] * x[i];
            idx += 1;
            for j in i + 1..k {
                let a = self.packed[idx];
                y[i] += a * x[j];
                y[j] += a * x[i];
                idx += 1;
            }
        }
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.k).map(|i| (0..self.k).map(|j| self.get(i, j).abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_integral(&self) -> bool {
        self.packed.iter().all(|v| v.fract() == 0.0 && v.abs() < 2f64.powi(52))
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let k = self.k;
        let mut out = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                out[i * k + j] = self.get(i, j);
            }
        }
        out
    }
}

/// Largest eigenvalue and its positive unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronResult {
    pub radius: f64,
    pub vector: Vec<f64>,
    /// `||M x - radius x||_inf` at the returned vector.
    pub residual: f64,
    pub iterations: usize,
}

impl PerronResult {
    pub fn max_entry(&self) -> f64 {
        self.vector.iter().copied().fold(f64::MIN, f64::max)
    }

    pub fn min_entry(&self) -> f64 {
        self.vector.iter().copied().fold(f64::MAX, f64::min)
    }
}

/// Power iteration on `M + I` from the normalized all-ones vector.
///
/// The unit shift makes any nonnegative irreducible `M` primitive, so the
/// iteration cannot oscillate (e.g. on `[[0,1],[1,0]]`). Stops once
/// `||M x - lambda x||_inf <= tol * max(1, ||M||_inf)`, where `lambda` is
/// the Rayleigh quotient.
pub fn perron(m: &SymmetricMatrix, tol: f64) -> Result<PerronResult, SpectralError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    let k = m.order();
    for i in 0..k {
        for j in i..k {
            let v = m.get(i, j);
            if v < 0.0 || v.is_nan() {
                return Err(SpectralError::NegativeEntry { row: i, col: j, value: v });
            }
        }
    }
    let threshold = tol * m.inf_norm().max(1.0);
    let max_iter = 200 * k + 10_000;

    let mut x = vec![1.0 / (k as f64).sqrt(); k];
    let mut y = vec![0.0; k];
    let mut best_residual = f64::INFINITY;
    for iteration in 1..=max_iter {
        m.mul_vec(&x, &mut y);
        // Rayleigh quotient of the unshifted matrix; x has unit norm
        let lambda: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let residual = x.iter().zip(&y).map(|(a, b)| (b - lambda * a).abs()).fold(0.0, f64::max);
        best_residual = best_residual.min(residual);
        if residual <= threshold {
            if let Some(index) = x.iter().position(|&v| v <= 0.0) {
                return Err(SpectralError::NonPositiveVector { index });
            }
            return Ok(PerronResult { radius: lambda, vector: x, residual, iterations: iteration });
        }
        // x <- (M + I) x, normalized
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += xi;
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    Err(SpectralError::NoConvergence { iterations: max_iter, best_residual })
}

/// Perron data of `D(G)`.
pub fn distance_spectral_radius(g: &Graph) -> Result<PerronResult, SpectralError> {
    let d = distance_matrix(g)?;
    perron(&SymmetricMatrix::distance(&d), DEFAULT_TOLERANCE)
}

/// Perron data of `Q(G)`.
pub fn dsl_spectral_radius(g: &Graph) -> Result<PerronResult, SpectralError> {
    let d = distance_matrix(g)?;
    let p = transmission_profile(&d);
    perron(&SymmetricMatrix::distance_signless_laplacian(&d, &p), DEFAULT_TOLERANCE)
}

/// sigma and tau together with the quantities they are built from.
#[derive(Debug, Clone, PartialEq)]
pub struct IrregularityReport {
    pub sigma: f64,
    pub tau: f64,
    pub d_max: u64,
    pub d_min: u64,
    /// Spectral radius of `D(G)`.
    pub distance_radius: f64,
    /// Spectral radius of `Q(G)`.
    pub dsl_radius: f64,
}

pub fn irregularity(g: &Graph) -> Result<IrregularityReport, SpectralError> {
    let d = distance_matrix(g)?;
    let p = transmission_profile(&d);
    irregularity_from_parts(&d, &p, DEFAULT_TOLERANCE)
}

/// [`irregularity`] on precomputed distances.
pub fn irregularity_from_parts(
    d: &DistanceMatrix,
    p: &TransmissionProfile,
    tol: f64,
) -> Result<IrregularityReport, SpectralError> {
    let dist = perron(&SymmetricMatrix::distance(d), tol)?;
    let dsl = perron(&SymmetricMatrix::distance_signless_laplacian(d, p), tol)?;
    let d_max = p.d_max as f64;
    Ok(IrregularityReport {
        // transmission-regular graphs have sigma = tau = 0 exactly
        sigma: if p.gap == 0 { 0.0 } else { d_max - dist.radius },
        tau: if p.gap == 0 { 0.0 } else { 2.0 * d_max - dsl.radius },
        d_max: p.d_max,
        d_min: p.d_min,
        distance_radius: dist.radius,
        dsl_radius: dsl.radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, &(1..n).map(|i| (0, i)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn wheel6() -> Graph {
        let mut g = Graph::empty(6).unwrap();
        for i in 1..6 {
            g.add_edge(0, i).unwrap();
            g.add_edge(i, i % 5 + 1).unwrap();
        }
        g
    }

    fn cocktail_apex5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap()
    }

    #[test]
    fn packed_indexing() {
        let m = SymmetricMatrix::from_fn(3, |i, j| (10 * i + j) as f64);
        assert_eq!(m.get(0, 2), 2.0);
        assert_eq!(m.get(2, 0), 2.0);
        assert_eq!(m.get(1, 2), 12.0);
        assert_eq!(m.get(2, 2), 22.0);
        let mut y = [0.0; 3];
        m.mul_vec(&[1.0, 1.0, 1.0], &mut y);
        assert_eq!(y, [0.0 + 1.0 + 2.0, 1.0 + 11.0 + 12.0, 2.0 + 12.0 + 22.0]);
    }

    #[test]
    fn period_two_matrix_converges() {
        let m = SymmetricMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let r = perron(&m, 1e-12).unwrap();
        assert!(close(r.radius, 1.0, 1e-12));
        let h = 1.0 / 2f64.sqrt();
        assert!(close(r.vector[0], h, 1e-12) && close(r.vector[1], h, 1e-12));
    }

    #[test]
    fn complete_graph_radius() {
        let m = SymmetricMatrix::from_fn(4, |i, j| if i == j { 0.0 } else { 1.0 });
        assert!(close(perron(&m, 1e-12).unwrap().radius, 3.0, 1e-10));
    }

    #[test]
    fn rejects_bad_input() {
        let mut m = SymmetricMatrix::zeros(2);
        m.set(0, 1, -1.0);
        assert!(matches!(perron(&m, 1e-12), Err(SpectralError::NegativeEntry { row: 0, col: 1, .. })));
        assert!(matches!(perron(&SymmetricMatrix::zeros(2), 0.0), Err(SpectralError::InvalidTolerance(_))));
    }

    #[test]
    fn cocktail_apex_dsl_radius() {
        let r = dsl_spectral_radius(&cocktail_apex5()).unwrap();
        assert!(close(r.radius, (13.0 + 41f64.sqrt()) / 2.0, 1e-10));
        assert!(close(r.radius, 9.701562, 1e-6));
    }

    #[test]
    fn star_radii() {
        let s = star(4);
        assert!(close(distance_spectral_radius(&s).unwrap().radius, 2.0 + 7f64.sqrt(), 1e-10));
        assert!(close(dsl_spectral_radius(&s).unwrap().radius, 6.0 + 2.0 * 3f64.sqrt(), 1e-10));
    }

    #[test]
    fn regular_matrices_hit_row_sums() {
        assert!(close(distance_spectral_radius(&cycle(4)).unwrap().radius, 4.0, 1e-10));
        assert!(close(dsl_spectral_radius(&cycle(4)).unwrap().radius, 8.0, 1e-10));
    }

    #[test]
    fn path_radius() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        // largest root of the characteristic polynomial x^4 - 20x^2 - 32x - 12
        let r = distance_spectral_radius(&p4).unwrap().radius;
        assert!(close(r, 5.162278, 1e-6));
        assert!((r.powi(4) - 20.0 * r * r - 32.0 * r - 12.0).abs() < 1e-8);
    }

    #[test]
    fn wheel_dsl_radius() {
        let r = dsl_spectral_radius(&wheel6()).unwrap();
        assert!(close(r.radius, 9.0 + 21f64.sqrt(), 1e-10));
    }

    #[test]
    fn irregularity_values() {
        let r = irregularity(&cocktail_apex5()).unwrap();
        assert!(close(r.tau, (7.0 - 41f64.sqrt()) / 2.0, 1e-10));
        let r = irregularity(&star(4)).unwrap();
        assert!(close(r.sigma, 3.0 - 7f64.sqrt(), 1e-10));
        assert!(close(r.tau, 4.0 - 2.0 * 3f64.sqrt(), 1e-10));
        assert!(close(r.sigma, 0.354249, 1e-6) && close(r.tau, 0.535898, 1e-6));
        let r = irregularity(&cycle(5)).unwrap();
        assert_eq!((r.sigma, r.tau), (0.0, 0.0));
        assert_eq!((r.d_max, r.d_min), (6, 6));
    }

    #[test]
    fn disconnected_graph_propagates() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(irregularity(&g), Err(SpectralError::Graph(GraphError::NotConnected)));
    }

    #[test]
    fn residual_and_vector_invariants() {
        let g = wheel6();
        let r = dsl_spectral_radius(&g).unwrap();
        let norm: f64 = r.vector.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(close(norm, 1.0, 1e-12));
        assert!(r.vector.iter().all(|&v| v > 0.0));
        let d = distance_matrix(&g).unwrap();
        let m = SymmetricMatrix::distance_signless_laplacian(&d, &transmission_profile(&d));
        assert!(r.residual <= DEFAULT_TOLERANCE * m.inf_norm());
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1).unwrap();
        let r = distance_spectral_radius(&g).unwrap();
        assert_eq!(r.radius, 0.0);
        assert_eq!(r.vector, vec![1.0]);
    }
}
