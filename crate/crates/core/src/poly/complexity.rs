//! Leading-order query-complexity predictors. Constant factors are fixed at
//! one; the values are for comparing trends between methods, not for
//! predicting absolute orders.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    WallCheb,
    Ite,
    EigFilter,
    Step,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::WallCheb, Method::EigFilter, Method::Step, Method::Ite];

    pub fn name(&self) -> &'static str {
        match self {
            Method::WallCheb => "wall_cheb",
            Method::Ite => "ite",
            Method::EigFilter => "eig_filter",
            Method::Step => "step",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "wall_cheb" | "wallcheb" | "wall" => Ok(Method::WallCheb),
            "ite" => Ok(Method::Ite),
            "eig_filter" | "filter" | "eigfilter" => Ok(Method::EigFilter),
            "step" => Ok(Method::Step),
            other => Err(invalid(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityEstimate {
    pub method: Method,
    pub gap: f64,
    pub overlap: f64,
    pub target_error: f64,
    pub predicted_order: f64,
}

pub fn predicted_order(
    method: Method,
    gap: f64,
    overlap: f64,
    target_error: f64,
) -> Result<ComplexityEstimate> {
    if !(gap > 0.0) {
        return Err(invalid("gap must be positive"));
    }
    if !(overlap > 0.0 && overlap <= 1.0) {
        return Err(invalid("overlap must lie in (0, 1]"));
    }
    if !(target_error > 0.0 && target_error < 1.0) {
        return Err(invalid("target error must lie in (0, 1)"));
    }
    let log_term = (1.0 / (target_error * overlap)).ln();
    let predicted_order = match method {
        Method::WallCheb => gap.powf(-0.5) * log_term.sqrt(),
        Method::Ite | Method::EigFilter | Method::Step => log_term / gap,
    };
    Ok(ComplexityEstimate {
        method,
        gap,
        overlap,
        target_error,
        predicted_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let eps = (-1.0f64).exp();
        let wall = predicted_order(Method::WallCheb, 0.04, 1.0, eps).unwrap();
        assert!((wall.predicted_order - 5.0).abs() < 1e-12);
        let filt = predicted_order(Method::EigFilter, 0.04, 1.0, eps).unwrap();
        assert!((filt.predicted_order - 25.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_identity() {
        let (gap, c0, eps) = (0.013, 0.4, 1e-5);
        let w = predicted_order(Method::WallCheb, gap, c0, eps).unwrap();
        for m in [Method::EigFilter, Method::Step, Method::Ite] {
            let other = predicted_order(m, gap, c0, eps).unwrap();
            let log = (1.0 / (eps * c0)).ln();
            let ratio = other.predicted_order / w.predicted_order;
            assert!((ratio - gap.powf(-0.5) * log.sqrt()).abs() < 1e-10 * ratio);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(predicted_order(Method::Step, 0.0, 0.5, 0.1).is_err());
        assert!(predicted_order(Method::Step, 0.1, 1.5, 0.1).is_err());
        assert!(predicted_order(Method::Step, 0.1, 0.5, 1.0).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }
}
