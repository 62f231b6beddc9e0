//! Ancilla-level simulation of LCU block encodings of the shifted oracles
//! `(H - a)/(S - a)`.
//!
//! Joint register index is `l * 2^s + x`: ancilla `l` is the most
//! significant part, system basis state `x` the least.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::engine::{Problem, ProjectionTrace, StateVector, StepRecord, TraceStatus, PROJECTED_OUT_CUTOFF};
use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{PauliSum, PauliWord};
use crate::poly::{Method, NodeSet};
use crate::C64;

/// Largest joint register simulated as a statevector.
pub const FULL_MODE_QUBIT_CAP: usize = 12;
/// Largest joint register for which the dense unitary is formed.
pub const BLOCK_UNITARY_QUBIT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockEncoding {
    system_qubits: usize,
    ancilla_qubits: usize,
    subnormalization: f64,
    prepare_column: Vec<f64>,
    /// `(sign, word)`: the coefficient phase absorbed into the unitary.
    select_terms: Vec<(f64, PauliWord)>,
    node: f64,
    estimate: f64,
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize }
}

/// Encodes `(H - a)/(S - a)`: the identity coefficient becomes `c_I - a`,
/// every coefficient is divided by `S - a`, and negative signs move into
/// the SELECT terms so the PREPARE amplitudes are `sqrt(|c_l|/alpha)`.
pub fn build_shifted_oracle(pauli: &PauliSum, node: f64, estimate: f64) -> Result<BlockEncoding> {
    let denom = estimate - node;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::SingularShift { shift: node });
    }
    let mut coeffs: Vec<(f64, PauliWord)> = Vec::with_capacity(pauli.len() + 1);
    let mut identity = -node;
    for &(c, w) in pauli.terms() {
        if w.is_identity() {
            identity += c;
        } else {
            coeffs.push((c, w));
        }
    }
    coeffs.insert(0, (identity, PauliWord::IDENTITY));
    let coeffs: Vec<(f64, PauliWord)> = coeffs
        .into_iter()
        .map(|(c, w)| (c / denom, w))
        .filter(|(c, _)| c.abs() > 1e-15)
        .collect();
    let alpha: f64 = coeffs.iter().map(|(c, _)| c.abs()).sum();
    if coeffs.is_empty() || !(alpha > 0.0) {
        return Err(invalid("shifted operator is zero"));
    }
    let b = ceil_log2(coeffs.len());
    let mut prepare_column = vec![0.0; 1 << b];
    for (slot, (c, _)) in prepare_column.iter_mut().zip(&coeffs) {
        *slot = (c.abs() / alpha).sqrt();
    }
    Ok(BlockEncoding {
        system_qubits: pauli.num_qubits(),
        ancilla_qubits: b,
        subnormalization: alpha,
        prepare_column,
        select_terms: coeffs.iter().map(|&(c, w)| (c.signum(), w)).collect(),
        node,
        estimate,
    })
}

impl BlockEncoding {
    pub fn system_qubits(&self) -> usize {
        self.system_qubits
    }

    pub fn ancilla_qubits(&self) -> usize {
        self.ancilla_qubits
    }

    pub fn total_qubits(&self) -> usize {
        self.system_qubits + self.ancilla_qubits
    }

    /// `alpha`, the one-norm of the encoded operator's coefficients.
    pub fn subnormalization(&self) -> f64 {
        self.subnormalization
    }

    pub fn prepare_column(&self) -> &[f64] {
        &self.prepare_column
    }

    pub fn select_terms(&self) -> &[(f64, PauliWord)] {
        &self.select_terms
    }

    pub fn num_terms(&self) -> usize {
        self.select_terms.len()
    }

    pub fn node(&self) -> f64 {
        self.node
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    /// Encoded coefficients `sign * alpha * prepare^2`.
    pub fn coefficients(&self) -> Vec<(f64, PauliWord)> {
        self.select_terms
            .iter()
            .zip(&self.prepare_column)
            .map(|(&(s, w), p)| (s * p * p * self.subnormalization, w))
            .collect()
    }

    /// Dense `A` on the full system space.
    pub fn operator(&self) -> Result<DMatrix<C64>> {
        let sum = PauliSum::from_terms(self.system_qubits, self.coefficients())?;
        sum.to_dense()
    }

    /// Dense `SELECT`, block diagonal over ancilla values; padding blocks
    /// hold the identity.
    pub fn select_unitary(&self) -> Result<DMatrix<C64>> {
        self.check_cap(BLOCK_UNITARY_QUBIT_CAP)?;
        let sdim = 1usize << self.system_qubits;
        let dim = sdim << self.ancilla_qubits;
        let mut u = DMatrix::zeros(dim, dim);
        for l in 0..(1usize << self.ancilla_qubits) {
            let (sign, word) = self.select_terms.get(l).copied().unwrap_or((1.0, PauliWord::IDENTITY));
            for x in 0..sdim {
                let (ph, y) = word.apply_basis(x as u64);
                u[(l * sdim + y as usize, l * sdim + x)] = ph * sign;
            }
        }
        Ok(u)
    }

    /// `(PREP^dagger (x) I) SELECT (PREP (x) I)`.
    pub fn block_unitary(&self) -> Result<DMatrix<C64>> {
        self.check_cap(BLOCK_UNITARY_QUBIT_CAP)?;
        let prep = prepare_unitary(&self.prepare_column)?.map(|v| C64::new(v, 0.0));
        let id = DMatrix::<C64>::identity(1 << self.system_qubits, 1 << self.system_qubits);
        let p = prep.kronecker(&id);
        Ok(p.adjoint() * self.select_unitary()? * p)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.total_qubits() > cap {
            return Err(Error::TooManyQubits { qubits: self.total_qubits(), cap });
        }
        Ok(())
    }
}

/// Top-left `2^s x 2^s` block, which equals `A / alpha`.
pub fn top_left_block(unitary: &DMatrix<C64>, system_qubits: usize) -> DMatrix<C64> {
    let n = 1usize << system_qubits;
    unitary.view((0, 0), (n, n)).into_owned()
}

/// Real orthogonal matrix whose first column is `column`, completed by a
/// Householder reflection.
///
/// For `column[0] < 0` this is the reflection swapping `e_0` and `column`;
/// otherwise it is minus the reflection sending `e_0` to `-column`, which
/// avoids cancellation in `e_0 - column` when the column is close to `e_0`.
pub fn prepare_unitary(column: &[f64]) -> Result<DMatrix<f64>> {
    let n = column.len();
    if n == 0 {
        return Err(invalid("empty PREPARE column"));
    }
    let norm2: f64 = column.iter().map(|c| c * c).sum();
    if (norm2 - 1.0).abs() > 1e-12 {
        return Err(invalid(format!("PREPARE column has squared norm {norm2}, expected 1")));
    }
    let flip = column[0] >= 0.0;
    let sign = if flip { 1.0 } else { -1.0 };
    let mut v: Vec<f64> = column.iter().map(|c| sign * c).collect();
    v[0] += 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let mut u = DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            u[(i, j)] -= 2.0 * v[i] * v[j] / vv;
        }
    }
    if flip {
        u.neg_mut();
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LcuMode {
    /// Statevector over system and ancilla registers.
    Full,
    /// `A psi / alpha` directly.
    #[default]
    Analytic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcuOutcome {
    /// Renormalized postselected state; `None` when the branch vanishes.
    pub state: Option<StateVector>,
    pub probability: f64,
}

/// One postselected application of the encoding to a full-space state.
pub fn lcu_apply(enc: &BlockEncoding, state: &StateVector, mode: LcuMode) -> Result<LcuOutcome> {
    let sdim = 1usize << enc.system_qubits;
    if state.dim() != sdim {
        return Err(Error::DimensionMismatch { expected: sdim, found: state.dim() });
    }
    let psi = state.amplitudes();
    let branch: Vec<C64> = match mode {
        LcuMode::Analytic => {
            let mut out = vec![C64::new(0.0, 0.0); sdim];
            for ((c, w), x) in enc.coefficients().iter().zip(0..) {
                let _ = x;
                for (b, amp) in psi.iter().enumerate() {
                    let (ph, b2) = w.apply_basis(b as u64);
                    out[b2 as usize] += ph * (*c / enc.subnormalization) * amp;
                }
            }
            out
        }
        LcuMode::Full => {
            enc.check_cap(FULL_MODE_QUBIT_CAP)?;
            let adim = 1usize << enc.ancilla_qubits;
            let prep = prepare_unitary(&enc.prepare_column)?;
            // PREP on |0>_a |psi>
            let mut joint = vec![C64::new(0.0, 0.0); adim * sdim];
            for l in 0..adim {
                let amp = prep[(l, 0)];
                for x in 0..sdim {
                    joint[l * sdim + x] = psi[x] * amp;
                }
            }
            // SELECT
            let mut selected = vec![C64::new(0.0, 0.0); adim * sdim];
            for l in 0..adim {
                let (sign, word) = enc.select_terms.get(l).copied().unwrap_or((1.0, PauliWord::IDENTITY));
                for x in 0..sdim {
                    let (ph, y) = word.apply_basis(x as u64);
                    selected[l * sdim + y as usize] += ph * sign * joint[l * sdim + x];
                }
            }
            // PREP^dagger on the ancilla register
            let mut out = vec![C64::new(0.0, 0.0); adim * sdim];
            for k in 0..adim {
                for l in 0..adim {
                    let coef = prep[(l, k)];
                    if coef == 0.0 {
                        continue;
                    }
                    for x in 0..sdim {
                        out[k * sdim + x] += selected[l * sdim + x] * coef;
                    }
                }
            }
            out.truncate(sdim);
            out
        }
    };
    let probability: f64 = branch.iter().map(|a| a.norm_sqr()).sum();
    if !(probability >= PROJECTED_OUT_CUTOFF) {
        return Ok(LcuOutcome { state: None, probability: 0.0 });
    }
    Ok(LcuOutcome { state: Some(StateVector::new(branch)?), probability })
}

/// Sector amplitudes placed into the full `2^n` occupation space.
pub fn embed(sector: &StateVector, basis: &[u64], num_qubits: usize) -> Result<StateVector> {
    if sector.dim() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: sector.dim() });
    }
    let mut full = vec![C64::new(0.0, 0.0); 1usize << num_qubits];
    for (&b, &a) in basis.iter().zip(sector.amplitudes()) {
        full[b as usize] = a;
    }
    StateVector::new(full)
}

/// Full-space amplitudes read back on the sector basis; fails if more than
/// `1e-10` of the weight lies outside.
pub fn restrict(full: &StateVector, basis: &[u64]) -> Result<StateVector> {
    let inside: HashMap<u64, ()> = basis.iter().map(|&b| (b, ())).collect();
    let leak: f64 = full
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(b, _)| !inside.contains_key(&(*b as u64)))
        .map(|(_, a)| a.norm_sqr())
        .sum();
    if leak > 1e-10 {
        return Err(invalid(format!("state leaks {leak:e} of its weight outside the sector")));
    }
    StateVector::new(basis.iter().map(|&b| full.amplitudes()[b as usize]).collect())
}

/// The `m` boxes of a wall-Chebyshev circuit, one per node.
#[derive(Debug, Clone)]
pub struct WallChebCircuit {
    nodes: NodeSet,
    boxes: Vec<BlockEncoding>,
}

impl WallChebCircuit {
    pub fn new(pauli: &PauliSum, nodes: &NodeSet) -> Result<Self> {
        let s = nodes.window().estimate();
        let boxes = nodes
            .nodes()
            .iter()
            .map(|&a| build_shifted_oracle(pauli, a, s))
            .collect::<Result<_>>()?;
        Ok(Self { nodes: nodes.clone(), boxes })
    }

    pub fn boxes(&self) -> &[BlockEncoding] {
        &self.boxes
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }
}

/// Applies each box with postselection. `problem.action` must act on the
/// full `2^s` space (e.g. the Pauli sum itself) for the energies; the
/// ground state, if given, must be embedded likewise.
pub fn run_wall_cheb_circuit(
    problem: &Problem<'_>,
    circuit: &WallChebCircuit,
    state: &StateVector,
    mode: LcuMode,
) -> Result<(StateVector, ProjectionTrace)> {
    let mut trace = ProjectionTrace::new(Method::WallCheb);
    let mut psi = state.clone();
    let mut cumulative = 1.0;
    let window = circuit.nodes.window();
    for (k, enc) in circuit.boxes.iter().enumerate() {
        let out = lcu_apply(enc, &psi, mode)?;
        let Some(next) = out.state else {
            trace.status = TraceStatus::ProjectedOut { step: k + 1 };
            return Ok((psi, trace));
        };
        cumulative *= out.probability;
        trace.records.push(StepRecord {
            step: k + 1,
            repeat: 0,
            parameter: enc.node,
            probability: out.probability,
            cumulative_probability: cumulative,
            energy: problem.energy(&next),
            fidelity: problem.fidelity(&next),
            s: window.estimate(),
            r: window.range(),
            applications: k + 1,
        });
        psi = next;
    }
    Ok((psi, trace))
}

/// One row of [`success_prob_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessPoint {
    pub c0: f64,
    pub probability: f64,
    pub fidelity: f64,
}

/// Success probability of the order-`m` wall-Chebyshev projector on a
/// two-level spectrum `{e0, e1}`, starting from
/// `c0 |0> + sqrt(1 - c0^2) |1>`.
///
/// The polynomial is block-encoded with the largest admissible scale:
/// `g(H)/alpha` with `alpha = max |g(E)|` over `[min(e0, S), S + R]`, so
/// `P = sum_i |c_i|^2 g(E_i)^2 / alpha^2`.
pub fn success_prob_curve(order: usize, nodes: &NodeSet, e0: f64, e1: f64, c0_grid: &[f64]) -> Result<Vec<SuccessPoint>> {
    if order != nodes.order() {
        return Err(invalid("node set order differs from the requested order"));
    }
    if !(e1 > e0) {
        return Err(invalid("two-level spectrum needs e1 > e0"));
    }
    let lo = e0.min(nodes.window().estimate());
    let hi = nodes.window().top().max(e1);
    let n = 4001;
    let alpha = (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .chain([e0, e1])
        .map(|e| nodes.product(e).abs())
        .fold(0.0, f64::max);
    let (g0, g1) = (nodes.product(e0) / alpha, nodes.product(e1) / alpha);
    c0_grid
        .iter()
        .map(|&c0| {
            if !(c0 > 0.0 && c0 <= 1.0) {
                return Err(invalid(format!("overlap {c0} outside (0, 1]")));
            }
            let w1 = 1.0 - c0 * c0;
            let probability = c0 * c0 * g0 * g0 + w1 * g1 * g1;
            Ok(SuccessPoint {
                c0,
                probability,
                fidelity: if probability > 0.0 { (c0 * g0).abs() / probability.sqrt() } else { 0.0 },
            })
        })
        .collect()
}
