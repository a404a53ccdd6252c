use crate::{MatrixKind, ModeUnitary, C64};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaarKind {
    Unitary,
    Orthogonal,
}

/// Haar-random `m×m` unitary or real orthogonal matrix.
///
/// QR of a Gaussian matrix, with the phases of `diag(R)` folded back into
/// `Q` so the result is Haar rather than merely unitary.
pub fn random_matrix<R: Rng + ?Sized>(m: usize, kind: HaarKind, rng: &mut R) -> ModeUnitary {
    assert!(m >= 1, "need at least one mode");
    let z = DMatrix::from_fn(m, m, |_, _| match kind {
        HaarKind::Unitary => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
        HaarKind::Orthogonal => C64::new(rng.sample(StandardNormal), 0.0),
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..m {
            q[(i, j)] *= ph;
        }
    }
    let kind = match kind {
        HaarKind::Unitary => MatrixKind::Unitary,
        HaarKind::Orthogonal => {
            for z in q.iter_mut() {
                z.im = 0.0;
            }
            MatrixKind::Orthogonal
        }
    };
    ModeUnitary::new(q, kind).expect("QR factor is unitary")
}
