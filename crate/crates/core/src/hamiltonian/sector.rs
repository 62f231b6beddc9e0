/// Occupation bitmasks of every determinant with `n_alpha` up and `n_beta`
/// down electrons in `n_orbitals` spatial orbitals, ordered
/// lexicographically on (alpha string, beta string).
pub fn sector_basis(n_orbitals: usize, n_alpha: usize, n_beta: usize) -> Vec<u64> {
    let alphas = strings(n_orbitals, n_alpha);
    let betas = strings(n_orbitals, n_beta);
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for &a in &alphas {
        for &b in &betas {
            out.push(a | (b << n_orbitals));
        }
    }
    out
}

fn strings(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    (0u64..(1u64 << n))
        .filter(|s| s.count_ones() as usize == k)
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
