/// Modified Bessel function of the first kind `I_k(tau)` by its power
/// series, stopping once the term ratio drops below `1e-16`.
///
/// Intended for desk-scale arguments (`tau <= 50`); there is no asymptotic
/// branch.
pub fn bessel_i(order: usize, tau: f64) -> f64 {
    let half = 0.5 * tau;
    if half == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    // leading term (tau/2)^k / k!
    let mut term = 1.0;
    for i in 1..=order {
        term *= half / i as f64;
    }
    let quarter_sq = half * half;
    let mut sum = term;
    let mut j = 0usize;
    loop {
        j += 1;
        term *= quarter_sq / (j as f64 * (j + order) as f64);
        sum += term;
        if term <= 1e-16 * sum || term == 0.0 {
            break;
        }
    }
    sum
}
