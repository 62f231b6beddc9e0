use super::dense::DenseHermitian;
use crate::error::{invalid, Result};
use crate::window::SpectralWindow;

pub const DEFAULT_ALPHA_STRETCH: f64 = 1.1;

/// Which Gershgorin disc supplies the upper estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowChoice {
    /// Row with the largest diagonal entry (first on ties).
    #[default]
    HighestDiagonal,
    Index(usize),
    /// Maximum of `a_ii + r_i` over all rows; a guaranteed bound.
    FullScan,
}

fn row_radius(h: &DenseHermitian, k: usize) -> f64 {
    let m = h.matrix();
    (0..h.dim()).filter(|&j| j != k).map(|j| m[(k, j)].norm()).sum()
}

pub fn highest_diagonal_row(h: &DenseHermitian) -> usize {
    (0..h.dim()).fold(0, |best, k| if h.diagonal(k) > h.diagonal(best) { k } else { best })
}

pub fn lowest_diagonal_row(h: &DenseHermitian) -> usize {
    (0..h.dim()).fold(0, |best, k| if h.diagonal(k) < h.diagonal(best) { k } else { best })
}

/// `a_kk + sum_{j != k} |a_kj|` for the chosen row.
pub fn gershgorin_upper(h: &DenseHermitian, row: RowChoice) -> Result<f64> {
    match row {
        RowChoice::HighestDiagonal => {
            let k = highest_diagonal_row(h);
            Ok(h.diagonal(k) + row_radius(h, k))
        }
        RowChoice::Index(k) if k < h.dim() => Ok(h.diagonal(k) + row_radius(h, k)),
        RowChoice::Index(k) => Err(invalid(format!("row {k} out of range for dimension {}", h.dim()))),
        RowChoice::FullScan => Ok(gershgorin_bounds(h).1),
    }
}

/// `(min_k a_kk - r_k, max_k a_kk + r_k)`: guaranteed spectral bounds.
pub fn gershgorin_bounds(h: &DenseHermitian) -> (f64, f64) {
    (0..h.dim()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), k| {
        let (d, r) = (h.diagonal(k), row_radius(h, k));
        (lo.min(d - r), hi.max(d + r))
    })
}

/// Window anchored at `estimate` whose top is the stretched Gershgorin
/// upper estimate.
pub fn make_window(estimate: f64, h: &DenseHermitian, row: RowChoice, alpha: f64) -> Result<SpectralWindow> {
    let upper = gershgorin_upper(h, row)?;
    SpectralWindow::new(estimate, upper, alpha)
}
