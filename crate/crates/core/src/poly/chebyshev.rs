use crate::C64;

/// `T_k(x)` by the three-term recurrence. Valid for any real `x`.
pub fn cheb_eval(k: usize, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..k {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

const PARITY_TOL: f64 = 1e-14;

/// Chebyshev series `sum_k c_k T_k(x)`; coefficient `k` multiplies `T_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coefficients: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    /// Single basis polynomial `scale * T_k`.
    pub fn basis(k: usize, scale: f64) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = scale;
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    /// Clenshaw on `[-1, 1]`, explicit recurrence outside.
    pub fn eval(&self, x: f64) -> f64 {
        if x.abs() <= 1.0 {
            self.eval_clenshaw(x)
        } else {
            self.eval_termwise(x)
        }
    }

    pub fn eval_clenshaw(&self, x: f64) -> f64 {
        let c = &self.coefficients;
        if c.is_empty() {
            return 0.0;
        }
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c.iter().skip(1).rev() {
            let b0 = ck + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        c[0] + x * b1 - b2
    }

    /// Term-by-term sum with the recurrence generating each `T_k(x)`.
    pub fn eval_termwise(&self, x: f64) -> f64 {
        let mut sum = 0.0;
        let (mut prev, mut cur) = (1.0, x);
        for (k, &ck) in self.coefficients.iter().enumerate() {
            let tk = match k {
                0 => 1.0,
                1 => x,
                _ => {
                    let next = 2.0 * x * cur - prev;
                    prev = cur;
                    cur = next;
                    cur
                }
            };
            sum += ck * tk;
        }
        sum
    }

    pub fn parity(&self) -> Parity {
        let odd_zero = self
            .coefficients
            .iter()
            .skip(1)
            .step_by(2)
            .all(|c| c.abs() <= PARITY_TOL);
        let even_zero = self
            .coefficients
            .iter()
            .step_by(2)
            .all(|c| c.abs() <= PARITY_TOL);
        if odd_zero {
            Parity::Even
        } else if even_zero {
            Parity::Odd
        } else {
            Parity::None
        }
    }

    /// Largest `|p(x)|` over `points` equispaced samples of `[-1, 1]`.
    pub fn max_abs_on_unit(&self, points: usize) -> f64 {
        let n = points.max(2);
        (0..n)
            .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
            .map(|x| self.eval(x).abs())
            .fold(0.0, f64::max)
    }

    /// `p(A) v` by Clenshaw over matrix-vector products; `matvec(x, y)`
    /// must write `A x` into `y`.
    pub fn apply<F>(&self, v: &[C64], mut matvec: F) -> Vec<C64>
    where
        F: FnMut(&[C64], &mut [C64]),
    {
        let n = v.len();
        let c = &self.coefficients;
        if c.is_empty() {
            return vec![C64::new(0.0, 0.0); n];
        }
        let mut b1 = vec![C64::new(0.0, 0.0); n];
        let mut b2 = vec![C64::new(0.0, 0.0); n];
        let mut ab = vec![C64::new(0.0, 0.0); n];
        for &ck in c.iter().skip(1).rev() {
            matvec(&b1, &mut ab);
            for i in 0..n {
                let b0 = v[i] * ck + ab[i] * 2.0 - b2[i];
                b2[i] = b1[i];
                b1[i] = b0;
            }
        }
        matvec(&b1, &mut ab);
        (0..n).map(|i| v[i] * c[0] + ab[i] - b2[i]).collect()
    }
}
