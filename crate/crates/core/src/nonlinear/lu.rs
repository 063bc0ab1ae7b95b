use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Relative pivot threshold: a pivot smaller than this times the norm of its
/// original row marks the matrix as singular.
const PIVOT_TOL: f64 = 1e-14;

/// Partial-pivot LU factors `P·A = L·U`, packed in one matrix.
#[derive(Debug, Clone)]
pub struct LuDecomposition {
    lu: Matrix,
    perm: Vec<usize>,
}

impl LuDecomposition {
    pub fn new(a: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let row_norms: Vec<f64> = (0..n)
            .map(|i| a.row(i).iter().fold(0.0, |m: f64, v| m.max(v.abs())))
            .collect();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| lu[(i, col)].abs().total_cmp(&lu[(j, col)].abs()))
                .unwrap_or(col);
            let pivot = lu[(pivot_row, col)];
            if !(pivot.abs() > PIVOT_TOL * row_norms[perm[pivot_row]]) {
                return Err(Error::SingularMatrix { column: col });
            }
            if pivot_row != col {
                perm.swap(pivot_row, col);
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
            }
            for i in col + 1..n {
                let factor = lu[(i, col)] / pivot;
                lu[(i, col)] = factor;
                if factor != 0.0 {
                    for j in col + 1..n {
                        lu[(i, j)] -= factor * lu[(col, j)];
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Solves for every column of `rhs`.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.dim();
        if rhs.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.rows(),
            });
        }
        let mut out = Matrix::zeros(n, rhs.cols());
        for j in 0..rhs.cols() {
            let col = self.solve(&rhs.column(j))?;
            for (i, v) in col.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }
}

/// Solves `A·x = b` by partial-pivot LU.
pub fn lu_solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    LuDecomposition::new(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_diagonal() {
        let b = [3.0, -1.0, 2.5];
        assert_eq!(lu_solve(&Matrix::identity(3), &b).unwrap(), b.to_vec());
        let d = Matrix::from_diag(&[2.0, 4.0]);
        assert_eq!(lu_solve(&d, &[2.0, 8.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn needs_pivoting() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(lu_solve(&a, &[2.0, 3.0]).unwrap(), vec![3.0, 2.0]);
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(lu_solve(&a, &[1.0, 1.0]), Err(Error::SingularMatrix { .. })));
        assert!(lu_solve(&Matrix::zeros(2, 2), &[0.0, 0.0]).is_err());
        let rect = Matrix::zeros(2, 3);
        assert!(matches!(LuDecomposition::new(&rect), Err(Error::DimensionMismatch { .. })));
    }

    fn random_well_conditioned(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = rng.random_range(-1.0..1.0);
            }
            // Diagonal dominance keeps the condition number modest.
            a[(i, i)] += n as f64 * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        }
        a
    }

    #[test]
    fn constructive_oracle_six_by_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = random_well_conditioned(&mut rng, 6);
        let x0: Vec<f64> = (0..6).map(|_| rng.random_range(-5.0..5.0)).collect();
        let b = a.mul_vec(&x0).unwrap();
        let x = lu_solve(&a, &b).unwrap();
        for (xi, ei) in x.iter().zip(&x0) {
            assert!((xi - ei).abs() < 1e-10);
        }
    }

    #[test]
    fn backward_stability_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        for trial in 0..1000 {
            let n = 1 + trial % 8;
            let a = random_well_conditioned(&mut rng, n);
            let b: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
            let x = lu_solve(&a, &b).unwrap();
            let ax = a.mul_vec(&x).unwrap();
            let res = ax.iter().zip(&b).fold(0.0, |m: f64, (u, v)| m.max((u - v).abs()));
            let xn = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            let bn = b.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            assert!(res <= 1e-10 * (a.norm_inf() * xn + bn), "trial {trial}: residual {res}");
        }
    }
}
