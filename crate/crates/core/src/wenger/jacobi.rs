//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm must drop below `REL_TOL · ‖A‖_F`.
pub const REL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    fn off_norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s
    }

    fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

/// Eigenvalues of a symmetric matrix, unsorted.
#[derive(Debug, Clone)]
pub struct JacobiResult {
    pub eigenvalues: Vec<f64>,
    pub sweeps: usize,
    /// Final off-diagonal Frobenius norm.
    pub off_norm: f64,
}

/// Runs cyclic row-by-row Jacobi sweeps until the off-diagonal mass is below
/// `REL_TOL` relative to the matrix norm.
pub fn eigenvalues(a: &SymMatrix) -> Result<JacobiResult> {
    let n = a.n;
    let mut a = a.clone();
    let scale = a.frobenius_sq().sqrt();
    let target = REL_TOL * scale.max(f64::MIN_POSITIVE);
    for sweep in 0..=MAX_SWEEPS {
        let off = a.off_norm_sq().sqrt();
        if off <= target {
            return Ok(JacobiResult {
                eigenvalues: (0..n).map(|i| a.get(i, i)).collect(),
                sweeps: sweep,
                off_norm: off,
            });
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal residual {off:e}, target {target:e})"
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
            }
        }
    }
    unreachable!()
}
