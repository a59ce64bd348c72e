use crate::numkernel::{eigvalsh, ComplexMatrix, Spectrum};

use super::{BipartiteDims, DensityMatrix, PureState, Subsystem};

/// Traces out `traced`, returning the reduced matrix on the other factor.
pub fn partial_trace(rho: &DensityMatrix, traced: Subsystem) -> ComplexMatrix {
    partial_trace_matrix(rho.matrix(), rho.dims(), traced)
}

/// Partial trace of any `(dA·dB)`-square matrix.
pub fn partial_trace_matrix(m: &ComplexMatrix, dims: BipartiteDims, traced: Subsystem) -> ComplexMatrix {
    let (da, db) = (dims.a(), dims.b());
    match traced {
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(da, da);
            for i in 0..da {
                for j in 0..da {
                    out[(i, j)] = (0..db).map(|k| m[(i * db + k, j * db + k)]).sum();
                }
            }
            out
        }
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(db, db);
            for k in 0..db {
                for l in 0..db {
                    out[(k, l)] = (0..da).map(|i| m[(i * db + k, i * db + l)]).sum();
                }
            }
            out
        }
    }
}

/// Transposes the indices of `side`: `⟨kl|ρ^{T_A}|mn⟩ = ⟨ml|ρ|kn⟩`.
pub fn partial_transpose(rho: &DensityMatrix, side: Subsystem) -> ComplexMatrix {
    partial_transpose_matrix(rho.matrix(), rho.dims(), side)
}

pub fn partial_transpose_matrix(m: &ComplexMatrix, dims: BipartiteDims, side: Subsystem) -> ComplexMatrix {
    let (da, db) = (dims.a(), dims.b());
    let n = da * db;
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 0..da {
        for l in 0..db {
            for mm in 0..da {
                for nn in 0..db {
                    let src = match side {
                        Subsystem::A => m[(mm * db + l, k * db + nn)],
                        Subsystem::B => m[(k * db + nn, mm * db + l)],
                    };
                    out[(k * db + l, mm * db + nn)] = src;
                }
            }
        }
    }
    out
}

/// Schmidt coefficients `λ_i` (eigenvalues of `tr_B |ψ⟩⟨ψ|`), descending.
pub fn schmidt_spectrum(psi: &PureState) -> Spectrum {
    let c = psi.coefficients();
    let gram = c.matmul(&c.adjoint()).expect("square gram matrix");
    eigvalsh(&gram).expect("gram matrix is Hermitian")
}
