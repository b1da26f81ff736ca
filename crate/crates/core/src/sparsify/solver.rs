//! Jacobi-preconditioned conjugate gradient for connected Laplacian systems.

use crate::error::{Error, Result};

/// Weighted Laplacian of one connected component in local vertex numbering.
pub struct ComponentLaplacian {
    /// `(neighbor, weight)` per local vertex.
    adj: Vec<Vec<(usize, f64)>>,
    diag: Vec<f64>,
}

impl ComponentLaplacian {
    pub fn new(size: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut adj = vec![Vec::new(); size];
        let mut diag = vec![0.0; size];
        for (u, v, w) in edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
            diag[u] += w;
            diag[v] += w;
        }
        ComponentLaplacian { adj, diag }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (i, row) in self.adj.iter().enumerate() {
            let mut s = self.diag[i] * x[i];
            for &(j, w) in row {
                s -= w * x[j];
            }
            out[i] = s;
        }
    }

    /// Solves `L x = b` for `b` orthogonal to the all-ones vector; the
    /// returned `x` has zero mean. Stops at relative residual `tol`.
    pub fn solve(&self, b: &[f64], tol: f64, max_iterations: usize) -> Result<Vec<f64>> {
        let n = self.size();
        let mut x = vec![0.0; n];
        if n <= 1 {
            return Ok(x);
        }
        let mean = b.iter().sum::<f64>() / n as f64;
        let mut r: Vec<f64> = b.iter().map(|v| v - mean).collect();
        let b_norm = dot(&r, &r).sqrt();
        if b_norm == 0.0 {
            return Ok(x);
        }
        let inv_diag: Vec<f64> = self.diag.iter().map(|d| 1.0 / d).collect();
        let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(a, b)| a * b).collect();
        let mut p = z.clone();
        let mut ap = vec![0.0; n];
        let mut rz = dot(&r, &z);
        let mut residual = 1.0;
        for _ in 0..max_iterations {
            self.apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            residual = dot(&r, &r).sqrt() / b_norm;
            if residual <= tol {
                center(&mut x);
                return Ok(x);
            }
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(Error::NoConvergence {
            iterations: max_iterations,
            residual,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn center(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_potential() {
        // Unit current into vertex 0 and out of vertex 2 on a path: drop of 2.
        let lap = ComponentLaplacian::new(3, [(0, 1, 1.0), (1, 2, 1.0)]);
        let x = lap.solve(&[1.0, 0.0, -1.0], 1e-12, 100).unwrap();
        assert!((x[0] - x[2] - 2.0).abs() < 1e-10);
        assert!(x.iter().sum::<f64>().abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let lap = ComponentLaplacian::new(4, [(0, 1, 1.0), (1, 2, 1e-6), (2, 3, 1.0)]);
        match lap.solve(&[1.0, 0.0, 0.0, -1.0], 1e-14, 1) {
            Err(Error::NoConvergence { iterations, .. }) => assert_eq!(iterations, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
