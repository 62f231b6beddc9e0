//! Chebyshev expansion of the wall function and its node factorization.

use std::f64::consts::PI;

use super::ChebSeries;
use crate::error::{invalid, Result};
use crate::window::SpectralWindow;

/// Coefficients `(2 - delta_k0)(-1)^k / (1 + 2m)` for `k = 0..=m`.
pub fn wall_cheb_coefficients(order: usize) -> ChebSeries {
    let norm = 1.0 / (1 + 2 * order) as f64;
    let coefficients = (0..=order)
        .map(|k| {
            let weight = if k == 0 { 1.0 } else { 2.0 };
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            weight * sign * norm
        })
        .collect();
    ChebSeries::new(coefficients)
}

/// Roots of the order-`m` wall polynomial on `[-1, 1]`, ascending:
/// `x_nu = -cos(nu pi / (m + 1/2))`.
pub fn wall_unit_nodes(order: usize) -> Vec<f64> {
    let denom = order as f64 + 0.5;
    (1..=order)
        .map(|nu| -(nu as f64 * PI / denom).cos())
        .collect()
}

/// Roots of the wall polynomial in energy units for one window.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    order: usize,
    nodes: Vec<f64>,
    window: SpectralWindow,
}

impl NodeSet {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Ascending energies `a_nu`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn window(&self) -> &SpectralWindow {
        &self.window
    }

    /// `prod_nu (E - a_nu) / (S - a_nu)`.
    pub fn product(&self, energy: f64) -> f64 {
        let s = self.window.estimate();
        self.nodes
            .iter()
            .map(|&a| (energy - a) / (s - a))
            .product()
    }
}

pub fn wall_cheb_nodes(order: usize, window: &SpectralWindow) -> Result<NodeSet> {
    if order == 0 {
        return Err(invalid("wall-Chebyshev nodes need order >= 1"));
    }
    Ok(nodes_unchecked(order, window))
}

fn nodes_unchecked(order: usize, window: &SpectralWindow) -> NodeSet {
    let nodes = wall_unit_nodes(order)
        .into_iter()
        .map(|x| window.from_unit(x))
        .collect();
    NodeSet {
        order,
        nodes,
        window: *window,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Sum,
    Product,
}

/// `g_m(E)`: the series at `x(E)` or the node product.
pub fn wall_cheb_eval(order: usize, window: &SpectralWindow, energy: f64, mode: EvalMode) -> f64 {
    match mode {
        EvalMode::Sum => wall_cheb_coefficients(order).eval(window.to_unit(energy)),
        EvalMode::Product => nodes_unchecked(order, window).product(energy),
    }
}

/// `gamma = -g_m'(S) = 2m(m+1) / (3R)`.
pub fn convergence_factor(order: usize, range: f64) -> f64 {
    let m = order as f64;
    2.0 * m * (m + 1.0) / (3.0 * range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Parity;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn low_order_coefficients() {
        assert_eq!(wall_cheb_coefficients(0).coefficients(), &[1.0]);
        let c1 = wall_cheb_coefficients(1);
        assert!(close(c1.coefficients()[0], 1.0 / 3.0, 1e-16));
        assert!(close(c1.coefficients()[1], -2.0 / 3.0, 1e-16));
        let c2 = wall_cheb_coefficients(2);
        let expect = [0.2, -0.4, 0.4];
        for (a, b) in c2.coefficients().iter().zip(expect) {
            assert!(close(*a, b, 1e-16));
        }
        // G_2(x) = (4x^2 - 2x - 1) / 5
        for x in [-1.0, -0.3, 0.0, 0.6, 1.0] {
            assert!(close(c2.eval(x), (4.0 * x * x - 2.0 * x - 1.0) / 5.0, 1e-15));
        }
    }

    #[test]
    fn nodes_first_orders() {
        let w = SpectralWindow::from_range(0.0, 1.0).unwrap();
        let n1 = wall_cheb_nodes(1, &w).unwrap();
        assert!(close(n1.nodes()[0], 0.75, 1e-15));

        // roots of 4x^2 - 2x - 1 by the quadratic formula
        let r_lo = (2.0 - (4.0f64 + 16.0).sqrt()) / 8.0;
        let r_hi = (2.0 + (4.0f64 + 16.0).sqrt()) / 8.0;
        let w2 = SpectralWindow::from_range(0.0, 2.0).unwrap();
        let n2 = wall_cheb_nodes(2, &w2).unwrap();
        let xs: Vec<f64> = n2.nodes().iter().map(|&a| w2.to_unit(a)).collect();
        assert!(close(xs[0], r_lo, 1e-12));
        assert!(close(xs[1], r_hi, 1e-12));
        assert!(close(xs[0], -0.309017, 1e-6));
        assert!(close(xs[1], 0.809017, 1e-6));
        assert!(wall_cheb_nodes(0, &w).is_err());
    }

    #[test]
    fn nodes_inside_window_and_ascending() {
        let w = SpectralWindow::new(-1.3, 2.4, 1.1).unwrap();
        for m in 1..=60 {
            let set = wall_cheb_nodes(m, &w).unwrap();
            assert_eq!(set.nodes().len(), m);
            for pair in set.nodes().windows(2) {
                assert!(pair[0] < pair[1]);
            }
            for &a in set.nodes() {
                assert!(a > w.estimate() && a < w.top());
                let g = wall_cheb_coefficients(m).eval(w.to_unit(a));
                assert!(g.abs() < 1e-10, "m={m} G={g}");
            }
        }
    }

    #[test]
    fn anchored_at_estimate() {
        let w = SpectralWindow::new(0.4, 5.0, 1.2).unwrap();
        for m in 0..20 {
            for mode in [EvalMode::Sum, EvalMode::Product] {
                assert!(close(wall_cheb_eval(m, &w, 0.4, mode), 1.0, 1e-12));
            }
        }
    }

    #[test]
    fn product_matches_series_order_two() {
        let w = SpectralWindow::from_range(0.0, 2.0).unwrap();
        let set = wall_cheb_nodes(2, &w).unwrap();
        let (a1, a2) = (set.nodes()[0], set.nodes()[1]);
        let by_hand = (1.0 - a1) * (1.0 - a2) / (a1 * a2);
        let series = wall_cheb_coefficients(2).eval(0.0);
        assert!(close(by_hand, series, 1e-14));
        assert!(close(
            wall_cheb_eval(2, &w, 1.0, EvalMode::Product),
            series,
            1e-14
        ));
    }

    #[test]
    fn product_matches_series_order_four_grid() {
        let w = SpectralWindow::from_range(0.0, 2.0).unwrap();
        let worst = (0..100)
            .map(|i| 2.0 * i as f64 / 99.0)
            .map(|e| {
                (wall_cheb_eval(4, &w, e, EvalMode::Sum)
                    - wall_cheb_eval(4, &w, e, EvalMode::Product))
                .abs()
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-10);
    }

    #[test]
    fn anchor_is_one_up_to_order_100() {
        for m in 0..=100 {
            let g = wall_cheb_coefficients(m).eval(-1.0);
            assert!(close(g, 1.0, 1e-12), "m={m} G(-1)={g}");
        }
    }

    #[test]
    fn convergence_factor_values() {
        assert!(close(convergence_factor(2, 1.0), 4.0, 1e-15));
        assert!(close(convergence_factor(1, 2.0), 2.0 / 3.0, 1e-15));
    }

    #[test]
    fn convergence_factor_matches_finite_difference() {
        let h = 1e-6;
        for range in [1.0, 3.3, 10.0] {
            let w = SpectralWindow::from_range(0.0, range).unwrap();
            for m in 1..=20 {
                let fd = (wall_cheb_eval(m, &w, h, EvalMode::Sum)
                    - wall_cheb_eval(m, &w, -h, EvalMode::Sum))
                    / (2.0 * h);
                let gamma = convergence_factor(m, range);
                assert!(((-fd) - gamma).abs() <= 1e-5 * gamma, "m={m} R={range}");
            }
        }
    }

    #[test]
    fn derivative_at_anchor_is_minus_m_m_plus_one_over_three() {
        // d/dx T_k at -1 is (-1)^(k+1) k^2
        for m in 1..=40 {
            let c = wall_cheb_coefficients(m);
            let exact: f64 = c
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, ck)| {
                    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
                    ck * sign * (k * k) as f64
                })
                .sum();
            let target = -((m * (m + 1)) as f64) / 3.0;
            assert!((exact - target).abs() <= 1e-12 * target.abs());
            let h = 1e-6;
            let fd = (c.eval_termwise(-1.0 + h) - c.eval_termwise(-1.0 - h)) / (2.0 * h);
            assert!((fd - target).abs() <= 1e-6 * target.abs(), "m={m}");
        }
    }

    #[test]
    fn wall_series_has_no_parity() {
        for m in 1..10 {
            assert_eq!(wall_cheb_coefficients(m).parity(), Parity::None);
        }
    }

    proptest! {
        #[test]
        fn series_equals_product(m in 0usize..=30, x in -1.0f64..=1.0) {
            let w = SpectralWindow::from_range(0.0, 2.0).unwrap();
            let e = w.from_unit(x);
            let s = wall_cheb_eval(m, &w, e, EvalMode::Sum);
            let p = wall_cheb_eval(m, &w, e, EvalMode::Product);
            prop_assert!((s - p).abs() < 1e-9);
        }

        #[test]
        fn bounded_by_one_inside(m in 0usize..=60, x in -1.0f64..=1.0) {
            prop_assert!(wall_cheb_coefficients(m).eval(x).abs() <= 1.0 + 1e-12);
        }
    }
}
