use crate::{FockError, Result, C64};
use nalgebra::DMatrix;

/// Largest size accepted by [`permanent_naive`].
pub const NAIVE_LIMIT: usize = 10;

fn check_square(m: &DMatrix<C64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(FockError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(m.nrows())
}

/// Permanent by Ryser's inclusion-exclusion formula, visiting column subsets
/// in Gray-code order so each step updates the row sums in `O(n)`.
///
/// The empty matrix has permanent 1.
pub fn permanent_ryser(m: &DMatrix<C64>) -> Result<C64> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    assert!(n < 63, "permanent of a {n}x{n} matrix is out of reach");

    let mut row_sums = vec![C64::new(0.0, 0.0); n];
    let mut total = C64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let col = k.trailing_zeros() as usize;
        let bit = 1u64 << col;
        gray ^= bit;
        if gray & bit != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += m[(i, col)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= m[(i, col)];
            }
        }
        let prod = row_sums.iter().fold(C64::new(1.0, 0.0), |acc, s| acc * s);
        // (-1)^{n - |S|}
        if (n as u32 - gray.count_ones()) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Permanent as the explicit sum over all `n!` permutations.
///
/// Intended as an independent oracle; refuses `n > NAIVE_LIMIT`.
pub fn permanent_naive(m: &DMatrix<C64>) -> Result<C64> {
    let n = check_square(m)?;
    if n > NAIVE_LIMIT {
        return Err(FockError::SizeGuard { what: "naive permanent size", value: n, limit: NAIVE_LIMIT });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = C64::new(0.0, 0.0);
    permute(m, &mut perm, 0, &mut total);
    Ok(total)
}

fn permute(m: &DMatrix<C64>, perm: &mut [usize], k: usize, total: &mut C64) {
    if k == perm.len() {
        *total += perm.iter().enumerate().fold(C64::new(1.0, 0.0), |acc, (i, &j)| acc * m[(i, j)]);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(m, perm, k + 1, total);
        perm.swap(k, i);
    }
}
