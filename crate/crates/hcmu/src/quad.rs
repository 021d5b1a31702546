//! Gauss-Legendre quadrature with order doubling.
//!
//! Nodes are roots of the Legendre polynomials, found by Newton iteration;
//! weights follow from the derivative values. `integrate_to_tolerance` walks
//! a fixed ladder of orders until two successive estimates agree to a
//! relative tolerance, which is cheap and reliable for the analytic
//! integrands this crate produces.

use std::sync::OnceLock;

/// Orders tried by [`integrate_to_tolerance`], in succession.
const LADDER: [usize; 8] = [4, 8, 16, 32, 64, 128, 256, 512];

static RULES: [OnceLock<GaussRule>; 8] = [const { OnceLock::new() }; 8];

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the n-point rule. Exact for polynomials of degree <= 2n - 1.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..n {
            // Chebyshev-flavored initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-15 * x.abs().max(1.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            nodes[k] = x;
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        // Newton from the cosine guesses yields nodes in descending order;
        // flip so callers see them ascending.
        nodes.reverse();
        weights.reverse();
        GaussRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to `f` on [a, b].
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }
}

/// P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    // P_n' from P_n and P_{n-1}; the nodes are interior so x^2 != 1.
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule(ladder_index: usize) -> &'static GaussRule {
    RULES[ladder_index].get_or_init(|| GaussRule::new(LADDER[ladder_index]))
}

/// Result of an order-doubling integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: f64,
    /// Order of the rule that produced `value`.
    pub order: usize,
    /// |I_order - I_previous| relative to |I_order|.
    pub rel_delta: f64,
    pub converged: bool,
}

/// Integrates `f` over [a, b], doubling the Gauss-Legendre order until two
/// successive estimates agree to `rel_tol` (or the ladder is exhausted, in
/// which case `converged` is false and the caller decides what to do).
pub fn integrate_to_tolerance<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> QuadOutcome {
    let mut prev = rule(0).integrate(a, b, &f);
    let mut rel_delta = f64::INFINITY;
    for i in 1..LADDER.len() {
        let cur = rule(i).integrate(a, b, &f);
        rel_delta = (cur - prev).abs() / cur.abs().max(f64::MIN_POSITIVE);
        if rel_delta <= rel_tol {
            return QuadOutcome {
                value: cur,
                order: LADDER[i],
                rel_delta,
                converged: true,
            };
        }
        prev = cur;
    }
    QuadOutcome {
        value: prev,
        order: LADDER[LADDER.len() - 1],
        rel_delta,
        converged: false,
    }
}
