use crate::{FockError, Result, C64, UNITARY_TOL};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Unitary,
    Orthogonal,
    /// Sub-unitary transfer matrix of a lossy network.
    LossyMap,
}

/// Transfer matrix of a linear-optical network, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeUnitary {
    entries: DMatrix<C64>,
    kind: MatrixKind,
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

impl ModeUnitary {
    pub fn new(entries: DMatrix<C64>, kind: MatrixKind) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(FockError::NotSquare { rows: entries.nrows(), cols: entries.ncols() });
        }
        let m = entries.nrows();
        match kind {
            MatrixKind::Unitary => {
                let dev = max_abs(&(entries.adjoint() * &entries - DMatrix::identity(m, m)));
                if dev > UNITARY_TOL {
                    return Err(FockError::Invariant { kind: "unitary", deviation: dev });
                }
            }
            MatrixKind::Orthogonal => {
                let imag = entries.iter().fold(0.0f64, |acc, z| acc.max(z.im.abs()));
                if imag > 0.0 {
                    return Err(FockError::Invariant { kind: "real", deviation: imag });
                }
                let dev = max_abs(&(entries.transpose() * &entries - DMatrix::identity(m, m)));
                if dev > UNITARY_TOL {
                    return Err(FockError::Invariant { kind: "orthogonal", deviation: dev });
                }
            }
            MatrixKind::LossyMap => {
                if m > 0 {
                    let top = entries.clone().singular_values().max();
                    if top > 1.0 + UNITARY_TOL {
                        return Err(FockError::Invariant { kind: "contractive", deviation: top - 1.0 });
                    }
                }
            }
        }
        Ok(ModeUnitary { entries, kind })
    }

    pub fn from_rows(m: usize, rows: &[C64], kind: MatrixKind) -> Result<Self> {
        Self::new(DMatrix::from_row_slice(m, m, rows), kind)
    }

    pub fn identity(m: usize) -> Self {
        ModeUnitary { entries: DMatrix::identity(m, m), kind: MatrixKind::Unitary }
    }

    /// 50:50 beamsplitter `[[1, 1], [1, -1]] / √2`.
    pub fn hadamard() -> Self {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        ModeUnitary { entries: DMatrix::from_row_slice(2, 2, &[s, s, s, -s]), kind: MatrixKind::Orthogonal }
    }

    /// Permutation network sending input mode `i` to output mode `sigma[i]`.
    pub fn permutation(sigma: &[usize]) -> Result<Self> {
        let m = sigma.len();
        let mut e = DMatrix::zeros(m, m);
        for (i, &j) in sigma.iter().enumerate() {
            if j >= m {
                return Err(FockError::ModeMismatch { expected: m, got: j + 1 });
            }
            e[(i, j)] = C64::new(1.0, 0.0);
        }
        Self::new(e, MatrixKind::Orthogonal)
    }

    pub fn modes(&self) -> usize {
        self.entries.nrows()
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    /// Orthogonal matrices are unitary too; lossy maps are not.
    pub fn is_unitary(&self) -> bool {
        !matches!(self.kind, MatrixKind::LossyMap)
    }
}
