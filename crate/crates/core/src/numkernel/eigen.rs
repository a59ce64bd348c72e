use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{ComplexMatrix, Spectrum};

/// Relative Hermiticity slack admitted by [`eigh`].
pub const HERMITIAN_REL_TOL: f64 = 1e-9;
/// Convergence threshold on the off-diagonal Frobenius mass, relative to `‖H‖_F`.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `H = V Λ V†` with eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Spectrum,
    /// Columns are eigenvectors, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V†`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.values.values().iter().map(|&v| f(v)).collect();
        self.recompose(&mapped)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.recompose(self.values.values())
    }

    pub(crate) fn recompose(&self, diag: &[f64]) -> ComplexMatrix {
        let n = diag.len();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in diag.iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * lambda;
                if vik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Eigenvector `k` as a column slice copy.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of `a[p][q]` with a diagonal unitary and
/// then applies the real symmetric Jacobi rotation, so every step is a unitary
/// similarity. Iterates until the off-diagonal mass drops below
/// `1e-13·‖H‖_F`, giving up after [`MAX_SWEEPS`] sweeps.
pub fn eigh(h: &ComplexMatrix) -> Result<HermitianEigen> {
    h.ensure_hermitian(HERMITIAN_REL_TOL)?;
    let n = h.rows();
    let threshold = OFF_DIAGONAL_REL_TOL * h.frobenius_norm();

    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let mut sweep = 0;
    loop {
        let off = off_diagonal_mass(&a);
        if off <= threshold {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = Spectrum::new(order.iter().map(|&i| a[(i, i)].re).collect());
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Spectrum> {
    eigh(h).map(|e| e.values)
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let g = 100.0 * b;
    if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }

    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase_conj = (apq / b).conj();

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase_conj * (-s);
    let u_qq = phase_conj * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * b, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * b, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}
