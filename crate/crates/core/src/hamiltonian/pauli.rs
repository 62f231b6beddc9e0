use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::C64;

/// Tensor product of single-qubit Paulis stored as bitmasks.
///
/// The word denotes `i^{|x & z|} X^x Z^z`, so qubits with both bits set
/// carry a `Y`. Bit `j` refers to qubit (mode) `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliWord {
    pub x: u64,
    pub z: u64,
}

fn i_pow(e: u32) -> C64 {
    match e % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

impl PauliWord {
    pub const IDENTITY: PauliWord = PauliWord { x: 0, z: 0 };

    pub fn new(x: u64, z: u64) -> Self {
        Self { x, z }
    }

    /// Parses `"XIZY"`-style strings, qubit 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        if s.len() > 64 {
            return Err(invalid(format!("pauli string longer than 64 qubits: {}", s.len())));
        }
        let mut w = Self::IDENTITY;
        for (j, ch) in s.chars().enumerate() {
            let bit = 1u64 << j;
            match ch.to_ascii_uppercase() {
                'I' => {}
                'X' => w.x |= bit,
                'Z' => w.z |= bit,
                'Y' => {
                    w.x |= bit;
                    w.z |= bit;
                }
                other => return Err(invalid(format!("bad pauli letter {other:?} in {s:?}"))),
            }
        }
        Ok(w)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Highest qubit index touched plus one.
    pub fn support_len(&self) -> usize {
        64 - (self.x | self.z).leading_zeros() as usize
    }

    /// `P|b> = phase |b'>`.
    pub fn apply_basis(&self, b: u64) -> (C64, u64) {
        let e = (self.x & self.z).count_ones() + 2 * (self.z & b).count_ones();
        (i_pow(e), b ^ self.x)
    }

    /// `self * other = phase * word`.
    pub fn mul(&self, other: &PauliWord) -> (C64, PauliWord) {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let a1 = (self.x & self.z).count_ones();
        let a2 = (other.x & other.z).count_ones();
        let a3 = (x & z).count_ones();
        let e = a1 + a2 + 4 * 64 - a3 + 2 * (self.z & other.x).count_ones();
        (i_pow(e), PauliWord { x, z })
    }

    pub fn to_label(&self, num_qubits: usize) -> String {
        (0..num_qubits)
            .map(|j| match (self.x >> j & 1, self.z >> j & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect()
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label(self.support_len().max(1)))
    }
}

/// Real linear combination of Pauli words on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<(f64, PauliWord)>,
}

/// Imaginary residue tolerated when collapsing a complex accumulation.
const IMAG_TOL: f64 = 1e-10;
/// Terms smaller than this are dropped after merging.
const DROP_TOL: f64 = 1e-14;

impl PauliSum {
    /// Merges duplicate words and drops negligible coefficients.
    pub fn from_terms(num_qubits: usize, terms: impl IntoIterator<Item = (f64, PauliWord)>) -> Result<Self> {
        let mut acc: BTreeMap<PauliWord, C64> = BTreeMap::new();
        for (c, w) in terms {
            *acc.entry(w).or_default() += C64::new(c, 0.0);
        }
        Self::from_complex(num_qubits, acc)
    }

    /// Collapses a complex accumulation; fails if it is not Hermitian.
    pub fn from_complex(num_qubits: usize, acc: BTreeMap<PauliWord, C64>) -> Result<Self> {
        if num_qubits > 63 {
            return Err(invalid(format!("{num_qubits} qubits exceed the bitmask width")));
        }
        let mut terms = Vec::with_capacity(acc.len());
        for (w, c) in acc {
            if w.support_len() > num_qubits {
                return Err(invalid(format!("pauli word {w} outside {num_qubits} qubits")));
            }
            if c.im.abs() > IMAG_TOL {
                return Err(Error::NotHermitian { deviation: c.im.abs() });
            }
            if c.re.abs() > DROP_TOL {
                terms.push((c.re, w));
            }
        }
        Ok(Self { num_qubits, terms })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliWord)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of `|c|` over all terms, identity included.
    pub fn one_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .find(|(_, w)| w.is_identity())
            .map_or(0.0, |(c, _)| *c)
    }

    /// One-norm of the non-identity part.
    pub fn non_identity_norm(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(_, w)| !w.is_identity())
            .map(|(c, _)| c.abs())
            .sum()
    }

    /// Action on a full `2^n` amplitude vector.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        let dim = 1usize << self.num_qubits;
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for &(c, w) in &self.terms {
            for (b, amp) in v.iter().enumerate() {
                if amp.re == 0.0 && amp.im == 0.0 {
                    continue;
                }
                let (ph, b2) = w.apply_basis(b as u64);
                out[b2 as usize] += ph * c * amp;
            }
        }
        Ok(out)
    }

    /// Full `2^n x 2^n` matrix; limited to 14 qubits.
    pub fn to_dense(&self) -> Result<DMatrix<C64>> {
        if self.num_qubits > 14 {
            return Err(Error::TooManyQubits { qubits: self.num_qubits, cap: 14 });
        }
        let basis: Vec<u64> = (0..1u64 << self.num_qubits).collect();
        Ok(self.restrict_to(&basis))
    }

    /// Matrix elements `<b_i|H|b_j>` over the given determinants. Amplitude
    /// leaving the subspace is discarded, so this is only the block of `H`
    /// when the subspace is invariant.
    pub fn restrict_to(&self, basis: &[u64]) -> DMatrix<C64> {
        let index: std::collections::HashMap<u64, usize> =
            basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let n = basis.len();
        let mut m = DMatrix::zeros(n, n);
        for &(c, w) in &self.terms {
            for (j, &b) in basis.iter().enumerate() {
                let (ph, b2) = w.apply_basis(b);
                if let Some(&i) = index.get(&b2) {
                    m[(i, j)] += ph * c;
                }
            }
        }
        m
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, w)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c:+.12} {}", w.to_label(self.num_qubits))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single(letter: char) -> DMatrix<C64> {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match letter {
            'I' => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            'X' => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            'Y' => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            _ => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }

    /// Kronecker product with qubit 0 as the least significant index bit.
    fn reference_matrix(label: &str) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
        for ch in label.chars() {
            m = single(ch).kronecker(&m);
        }
        m
    }

    #[test]
    fn parse_and_label_round_trip() {
        let w = PauliWord::parse("XIZY").unwrap();
        assert_eq!(w.to_label(4), "XIZY");
        assert_eq!(w.weight(), 3);
        assert!(PauliWord::parse("XQ").is_err());
    }

    #[test]
    fn single_word_matrices_match_kronecker() {
        for label in ["X", "Y", "Z", "XY", "YZI", "ZZYX", "YYY"] {
            let w = PauliWord::parse(label).unwrap();
            let s = PauliSum::from_terms(label.len(), [(1.0, w)]).unwrap();
            let diff = (s.to_dense().unwrap() - reference_matrix(label)).norm();
            assert!(diff < 1e-14, "{label}");
        }
    }

    #[test]
    fn sum_reconstructs_dense_matrix() {
        let terms = [(0.5, "XX"), (0.5, "YY"), (-0.25, "ZI"), (1.5, "II")];
        let s = PauliSum::from_terms(
            2,
            terms.iter().map(|&(c, l)| (c, PauliWord::parse(l).unwrap())),
        )
        .unwrap();
        let mut expect = DMatrix::zeros(4, 4);
        for (c, l) in terms {
            expect += reference_matrix(l) * C64::new(c, 0.0);
        }
        assert!((s.to_dense().unwrap() - expect).norm() < 1e-12);
        assert!((s.one_norm() - 2.75).abs() < 1e-15);
        assert_eq!(s.identity_coefficient(), 1.5);
    }

    const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

    proptest! {
        #[test]
        fn product_matches_matrix_product(a in proptest::collection::vec(0usize..4, 3),
                                          b in proptest::collection::vec(0usize..4, 3)) {
            let la: String = a.iter().map(|&k| LETTERS[k]).collect();
            let lb: String = b.iter().map(|&k| LETTERS[k]).collect();
            let (ph, w) = PauliWord::parse(&la).unwrap().mul(&PauliWord::parse(&lb).unwrap());
            let lhs = reference_matrix(&la) * reference_matrix(&lb);
            let rhs = reference_matrix(&w.to_label(3)) * ph;
            prop_assert!((lhs - rhs).norm() < 1e-13);
        }
    }
}
