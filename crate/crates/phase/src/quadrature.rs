use nalgebra::DMatrix;

/// Nodes and weights of the `order`-point Gauss–Hermite rule for the weight
/// `e^{−x²}`, from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_hermite(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "quadrature needs at least one node");
    let jacobi = DMatrix::from_fn(order, order, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|k| (eig.eigenvalues[k], std::f64::consts::PI.sqrt() * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `∫ e^{−2|α|²} f(α) d²α` over the complex plane, with `α = (x+iy)/√2`
/// mapping the weight onto a tensor-product Hermite rule.
pub fn integrate_plane<F: Fn(f64, f64) -> f64>(f: F, order: usize) -> f64 {
    let (x, w) = gauss_hermite(order);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut total = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        for (yi, wj) in x.iter().zip(&w) {
            total += wi * wj * f(xi * s, yi * s);
        }
    }
    0.5 * total
}
