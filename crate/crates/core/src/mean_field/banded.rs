//! LDLᵀ factorization of symmetric pentadiagonal matrices.

/// Factorization of a symmetric matrix with diagonal `d`, first off-diagonal
/// `e` and second off-diagonal `f`. No pivoting, so the matrix must be
/// positive definite.
#[derive(Debug, Clone)]
pub(crate) struct PentaLdl {
    diag: Vec<f64>,
    l1: Vec<f64>,
    l2: Vec<f64>,
}

impl PentaLdl {
    pub(crate) fn factor(d: &[f64], e: &[f64], f: &[f64]) -> Self {
        let n = d.len();
        let mut diag = vec![0.0; n];
        let mut l1 = vec![0.0; n];
        let mut l2 = vec![0.0; n];
        for i in 0..n {
            if i >= 2 {
                l2[i] = f[i - 2] / diag[i - 2];
            }
            if i >= 1 {
                let mut v = e[i - 1];
                if i >= 2 {
                    v -= l2[i] * l1[i - 1] * diag[i - 2];
                }
                l1[i] = v / diag[i - 1];
            }
            let mut di = d[i];
            if i >= 1 {
                di -= l1[i] * l1[i] * diag[i - 1];
            }
            if i >= 2 {
                di -= l2[i] * l2[i] * diag[i - 2];
            }
            diag[i] = di;
        }
        Self { diag, l1, l2 }
    }

    pub(crate) fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        let mut x = rhs.to_vec();
        for i in 1..n {
            x[i] -= self.l1[i] * x[i - 1];
            if i >= 2 {
                x[i] -= self.l2[i] * x[i - 2];
            }
        }
        for (xi, di) in x.iter_mut().zip(&self.diag) {
            *xi /= di;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            x[i] -= self.l1[i + 1] * x[i + 1];
            if i + 2 < n {
                x[i] -= self.l2[i + 2] * x[i + 2];
            }
        }
        x
    }
}
