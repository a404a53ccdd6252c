use nalgebra::DMatrix;

use crate::{GkpError, Result};

/// Spin size `J`, shift strength `g` and squeezing `ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinLightParams {
    two_j: u32,
    g: f64,
    xi: f64,
}

impl SpinLightParams {
    pub fn new(j: f64, g: f64, xi: f64) -> Result<Self> {
        let two_j = two_j_of(j)?;
        if !(g > 0.0 && g.is_finite()) {
            return Err(GkpError::Parameter(format!("shift strength g = {g} must be positive")));
        }
        if !xi.is_finite() {
            return Err(GkpError::Parameter(format!("squeezing {xi} is not finite")));
        }
        Ok(SpinLightParams { two_j, g, xi })
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// `m = −J, …, J`.
    pub fn labels(&self) -> impl Iterator<Item = f64> {
        let two_j = self.two_j;
        (0..=two_j).map(move |k| k as f64 - two_j as f64 / 2.0)
    }
}

pub(crate) fn two_j_of(j: f64) -> Result<u32> {
    let two_j = 2.0 * j;
    if !(two_j >= 1.0 && two_j.fract() == 0.0 && two_j < u32::MAX as f64) {
        return Err(GkpError::Spin(format!("J = {j} must be a positive multiple of 1/2")));
    }
    Ok(two_j as u32)
}

/// Index `J + m` of a projection `m`, checking range and parity.
pub(crate) fn index_of(m: f64, two_j: u32) -> Result<usize> {
    let k = m + two_j as f64 / 2.0;
    if !(k >= 0.0 && k <= two_j as f64 && k.fract() == 0.0) {
        return Err(GkpError::Spin(format!("m = {m} is not a projection of J = {}", two_j as f64 / 2.0)));
    }
    Ok(k as usize)
}

pub(crate) fn ln_binomial(n: u32, k: u32) -> f64 {
    let lf = |v: u32| (1..=v).map(|i| (i as f64).ln()).sum::<f64>();
    lf(n) - lf(k) - lf(n - k)
}

/// `d_{m,±J} = (±1)^{J+m} 2^{−J} C(2J, J−m)^{1/2}`, evaluated in log space.
pub(crate) fn edge_column(two_j: u32, plus: bool) -> Vec<f64> {
    let half_ln2 = 0.5 * std::f64::consts::LN_2;
    (0..=two_j)
        .map(|k| {
            // k = J + m, so J − m = 2J − k
            let mag = (0.5 * ln_binomial(two_j, two_j - k) - two_j as f64 * half_ln2).exp();
            if plus || k % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect()
}

/// The real matrix `d_{m,m′} = ⟨m| e^{−iπJ_y/2} |m′⟩`.
///
/// Column `m′` is the `J_x` eigenvector with eigenvalue `m′` in the `J_z`
/// basis, sign-fixed so that `d_{J,m′}` has sign `(−1)^{J−m′}`. The alternating
/// factorial sum cancels catastrophically for large `J`; the tridiagonal
/// eigenproblem does not. The `m′ = ±J` columns use the closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerD {
    two_j: u32,
    d: DMatrix<f64>,
}

impl WignerD {
    pub fn new(j: f64) -> Result<Self> {
        let two_j = two_j_of(j)?;
        let n = two_j as usize + 1;
        let jj = j * (j + 1.0);
        // ⟨m+1|J_x|m⟩ = ½√(J(J+1) − m(m+1))
        let jx = DMatrix::from_fn(n, n, |a, b| {
            if a + 1 == b || b + 1 == a {
                let m = a.min(b) as f64 - j;
                0.5 * (jj - m * (m + 1.0)).max(0.0).sqrt()
            } else {
                0.0
            }
        });
        let eig = jx.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut d = DMatrix::zeros(n, n);
        for (col, &e) in order.iter().enumerate() {
            let top = eig.eigenvectors[(n - 1, e)];
            let want_negative = (n - 1 - col) % 2 == 1;
            let flip = (top < 0.0) != want_negative;
            for row in 0..n {
                let v = eig.eigenvectors[(row, e)];
                d[(row, col)] = if flip { -v } else { v };
            }
        }
        let plus = edge_column(two_j, true);
        let minus = edge_column(two_j, false);
        for row in 0..n {
            d[(row, n - 1)] = plus[row];
            d[(row, 0)] = minus[row];
        }
        Ok(WignerD { two_j, d })
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn get(&self, m: f64, mp: f64) -> Result<f64> {
        Ok(self.d[(index_of(m, self.two_j)?, index_of(mp, self.two_j)?)])
    }

    /// `d_{·,m′}` ordered `m = −J..=J`.
    pub fn column(&self, mp: f64) -> Result<Vec<f64>> {
        let c = index_of(mp, self.two_j)?;
        Ok(self.d.column(c).iter().copied().collect())
    }

    /// Rows and columns ordered `−J..=J`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.d
    }
}

/// Single element `d_{m,m′}` of the `β = π/2` rotation. Builds the whole
/// matrix; use [`WignerD`] for repeated lookups.
pub fn wigner_d(m: f64, mp: f64, j: f64) -> Result<f64> {
    WignerD::new(j)?.get(m, mp)
}
