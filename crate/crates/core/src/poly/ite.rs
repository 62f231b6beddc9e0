//! Chebyshev (Jacobi-Anger) expansion of `exp(-tau x)` on `[-1, 1]`.

use std::f64::consts::E;

use super::{bessel_i, ChebSeries};
use crate::error::{invalid, Result};

pub const DEFAULT_TRUNCATION_BUDGET: f64 = 0.01;

/// `I_0(tau) + 2 sum_{k=1}^{q} (-1)^k I_k(tau) T_k(x)`.
pub fn ite_cheb_coefficients(tau: f64, order: usize) -> ChebSeries {
    let coefficients = (0..=order)
        .map(|k| {
            let ik = bessel_i(k, tau);
            match k {
                0 => ik,
                _ if k % 2 == 0 => 2.0 * ik,
                _ => -2.0 * ik,
            }
        })
        .collect();
    ChebSeries::new(coefficients)
}

/// `(tau e / 2q)^q`; meaningful when `q >= e tau / 2`.
pub fn ite_truncation_bound(tau: f64, order: usize) -> f64 {
    let q = order as f64;
    (tau * E / (2.0 * q)).powf(q)
}

/// Smallest `q >= max(1, ceil(e tau / 2))` whose truncation bound is at most
/// `eps`.
pub fn ite_order_bound(tau: f64, eps: f64) -> usize {
    let mut q = ((E * tau / 2.0).ceil() as usize).max(1);
    while ite_truncation_bound(tau, q) > eps {
        q += 1;
    }
    q
}

/// Maximum over `[-1, 1]` of `|exp(-tau x) - (I_0(tau) - 2 I_1(tau) x)|`.
///
/// The residual is convex in `x`, so the maximum is attained at an endpoint
/// or at the stationary point `x* = -ln(2 I_1 / tau) / tau`.
pub fn first_order_error(tau: f64) -> f64 {
    if tau == 0.0 {
        return 0.0;
    }
    let i0 = bessel_i(0, tau);
    let i1 = bessel_i(1, tau);
    let residual = |x: f64| (-tau * x).exp() - i0 + 2.0 * i1 * x;
    let stationary = (-(2.0 * i1 / tau).ln() / tau).clamp(-1.0, 1.0);
    [-1.0, 1.0, stationary]
        .into_iter()
        .map(|x| residual(x).abs())
        .fold(0.0, f64::max)
}

/// Largest time step whose first-order truncation error stays within
/// `budget`, by bisection to `1e-7`.
pub fn ite_timestep_select(budget: f64) -> Result<f64> {
    if !(budget > 0.0 && budget < 0.5) {
        return Err(invalid(format!(
            "truncation budget must lie in (0, 0.5), got {budget}"
        )));
    }
    let mut hi = 1.0;
    while first_order_error(hi) <= budget {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if first_order_error(mid) <= budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Parity;

    fn grid_error(tau: f64, series: &ChebSeries, points: usize) -> f64 {
        (0..points)
            .map(|i| -1.0 + 2.0 * i as f64 / (points - 1) as f64)
            .map(|x| ((-tau * x).exp() - series.eval(x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn first_order_coefficients() {
        let tau = 0.8;
        let s = ite_cheb_coefficients(tau, 1);
        assert_eq!(s.coefficients(), &[bessel_i(0, tau), -2.0 * bessel_i(1, tau)]);
    }

    #[test]
    fn small_time_is_identity() {
        let s = ite_cheb_coefficients(1e-12, 4);
        assert!((s.coefficients()[0] - 1.0).abs() < 1e-12);
        assert!(s.coefficients()[1..].iter().all(|c| c.abs() < 1e-11));
    }

    #[test]
    fn truncation_bound_tau2_q12() {
        let s = ite_cheb_coefficients(2.0, 12);
        assert!(grid_error(2.0, &s, 2001) <= ite_truncation_bound(2.0, 12));
    }

    #[test]
    fn no_parity_for_positive_time() {
        for q in 2..8 {
            assert_eq!(ite_cheb_coefficients(0.5, q).parity(), Parity::None);
        }
    }

    #[test]
    fn closed_form_error_matches_dense_grid() {
        for tau in [0.05, 0.2, 0.5, 1.0, 2.0] {
            let s = ite_cheb_coefficients(tau, 1);
            let grid = grid_error(tau, &s, 200_001);
            let exact = first_order_error(tau);
            assert!(exact >= grid - 1e-15);
            assert!(exact - grid < 1e-9, "tau={tau}");
        }
    }

    #[test]
    fn timestep_for_default_budget() {
        let tau = ite_timestep_select(0.01).unwrap();
        let s = ite_cheb_coefficients(tau, 1);
        let achieved = grid_error(tau, &s, 200_001);
        assert!((0.0099..=0.01).contains(&achieved), "achieved {achieved}");
        let doubled = 2.0 * tau;
        assert!(grid_error(doubled, &ite_cheb_coefficients(doubled, 1), 20_001) > 0.01);
    }

    #[test]
    fn timestep_shrinks_with_budget() {
        let a = ite_timestep_select(1e-4).unwrap();
        let b = ite_timestep_select(1e-8).unwrap();
        assert!(b < a && b < 1e-3);
        assert!(ite_timestep_select(0.0).is_err());
        assert!(ite_timestep_select(0.6).is_err());
    }

    #[test]
    fn order_bound_meets_eps() {
        for tau in [0.5, 2.0, 8.0] {
            let q = ite_order_bound(tau, 1e-10);
            assert!(ite_truncation_bound(tau, q) <= 1e-10);
            assert!(q as f64 >= E * tau / 2.0);
        }
    }
}
