use std::collections::BTreeMap;

use super::pauli::{PauliSum, PauliWord};
use crate::error::{invalid, Result};
use crate::C64;

/// `(mode, is_creation)`.
pub type LadderOp = (usize, bool);

/// `(-1)^{number of occupied modes below j}`.
fn parity_below(b: u64, j: usize) -> f64 {
    if (b & ((1u64 << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `a_j |b> = sign |b ^ (1<<j)>`, or `None` if mode `j` is empty.
pub fn annihilation_sign(b: u64, j: usize) -> Option<(f64, u64)> {
    (b >> j & 1 == 1).then(|| (parity_below(b, j), b ^ (1u64 << j)))
}

/// `a_j^dagger |b> = sign |b | (1<<j)>`, or `None` if mode `j` is occupied.
pub fn creation_sign(b: u64, j: usize) -> Option<(f64, u64)> {
    (b >> j & 1 == 0).then(|| (parity_below(b, j), b | (1u64 << j)))
}

/// Jordan-Wigner image of one ladder operator as two Pauli words.
fn jw_ladder(op: LadderOp) -> [(C64, PauliWord); 2] {
    let (j, dagger) = op;
    let x = 1u64 << j;
    let string = x - 1;
    let y_coeff = if dagger { C64::new(0.0, -0.5) } else { C64::new(0.0, 0.5) };
    [
        (C64::new(0.5, 0.0), PauliWord::new(x, string)),
        (y_coeff, PauliWord::new(x, string | x)),
    ]
}

/// Real-weighted sum of ladder-operator products, applied right to left
/// as written (the last operator acts first).
#[derive(Debug, Clone, Default)]
pub struct FermionicSum {
    num_modes: usize,
    terms: Vec<(f64, Vec<LadderOp>)>,
}

impl FermionicSum {
    pub fn new(num_modes: usize) -> Self {
        Self { num_modes, terms: Vec::new() }
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn terms(&self) -> &[(f64, Vec<LadderOp>)] {
        &self.terms
    }

    pub fn push(&mut self, coeff: f64, ops: Vec<LadderOp>) -> Result<()> {
        if let Some(&(j, _)) = ops.iter().find(|(j, _)| *j >= self.num_modes) {
            return Err(invalid(format!("mode {j} outside {} modes", self.num_modes)));
        }
        if coeff != 0.0 {
            self.terms.push((coeff, ops));
        }
        Ok(())
    }

    /// Constant term (empty operator product).
    pub fn push_constant(&mut self, coeff: f64) {
        if coeff != 0.0 {
            self.terms.push((coeff, Vec::new()));
        }
    }

    /// Matrix element action on a determinant: `H|b> = sum c |b'>`.
    pub fn apply_basis(&self, b: u64) -> Vec<(f64, u64)> {
        let mut out = Vec::new();
        'term: for (c, ops) in &self.terms {
            let mut state = b;
            let mut sign = *c;
            for &(j, dagger) in ops.iter().rev() {
                let step = if dagger { creation_sign(state, j) } else { annihilation_sign(state, j) };
                match step {
                    Some((s, next)) => {
                        sign *= s;
                        state = next;
                    }
                    None => continue 'term,
                }
            }
            out.push((sign, state));
        }
        out
    }

    /// Jordan-Wigner transform.
    pub fn to_pauli(&self) -> Result<PauliSum> {
        let mut acc: BTreeMap<PauliWord, C64> = BTreeMap::new();
        for (c, ops) in &self.terms {
            let mut product: Vec<(C64, PauliWord)> = vec![(C64::new(*c, 0.0), PauliWord::IDENTITY)];
            for &op in ops {
                let factor = jw_ladder(op);
                let mut next: BTreeMap<PauliWord, C64> = BTreeMap::new();
                for (pc, pw) in &product {
                    for (fc, fw) in &factor {
                        let (ph, w) = pw.mul(fw);
                        *next.entry(w).or_default() += pc * fc * ph;
                    }
                }
                product = next.into_iter().filter(|(_, c)| c.norm() > 1e-15).map(|(w, c)| (c, w)).collect();
            }
            for (pc, pw) in product {
                *acc.entry(pw).or_default() += pc;
            }
        }
        PauliSum::from_complex(self.num_modes, acc)
    }
}
