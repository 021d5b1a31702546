//! Finite-difference weights on arbitrarily spaced grids (Fornberg's
//! recurrence).
//!
//! The profile verifier differentiates sampled data whose grid is uniform in
//! the substitution variable but not in arc length, so the stencils must not
//! assume equal spacing. With n nodes the order-m weights are exact on
//! polynomials of degree <= n - 1, which gives second-order accuracy for the
//! 3-point first/second derivatives and the 5-point third derivative used by
//! the checks.

/// Weights w such that sum_k w[k] * f(x[k]) approximates the m-th derivative
/// of f at z. Nodes must be pairwise distinct; z need not be a node.
pub fn fd_weights(z: f64, x: &[f64], m: usize) -> Vec<f64> {
    let n = x.len();
    assert!(n > m, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c.pop().expect("m + 1 rows were allocated")
}

/// Applies the order-m stencil on nodes x to values y, evaluated at z.
pub fn fd_derivative(z: f64, x: &[f64], y: &[f64], m: usize) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    fd_weights(z, x, m)
        .iter()
        .zip(y)
        .map(|(w, v)| w * v)
        .sum()
}
