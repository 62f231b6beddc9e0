//! FCIDUMP integral files and determinant-basis molecular Hamiltonians.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::BufRead;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{sector_basis, DenseHermitian, FermionicSum, PauliSum};
use crate::C64;

/// Real orbital integrals with full permutational symmetry.
///
/// Two-electron integrals are in chemists' notation `(pq|rs)`, orbitals
/// 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSet {
    norb: usize,
    nelec: usize,
    ms2: i64,
    core_energy: f64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
    orbsym: Vec<i64>,
    isym: Option<i64>,
}

impl IntegralSet {
    pub fn new(norb: usize, nelec: usize, ms2: i64) -> Self {
        Self {
            norb,
            nelec,
            ms2,
            core_energy: 0.0,
            one_body: vec![0.0; norb * norb],
            two_body: vec![0.0; norb.pow(4)],
            orbsym: Vec::new(),
            isym: None,
        }
    }

    pub fn norb(&self) -> usize {
        self.norb
    }

    pub fn nelec(&self) -> usize {
        self.nelec
    }

    pub fn ms2(&self) -> i64 {
        self.ms2
    }

    pub fn core_energy(&self) -> f64 {
        self.core_energy
    }

    pub fn set_core_energy(&mut self, e: f64) {
        self.core_energy = e;
    }

    pub fn orbsym(&self) -> &[i64] {
        &self.orbsym
    }

    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.one_body[p * self.norb + q]
    }

    fn idx4(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.norb + q) * self.norb + r) * self.norb + s
    }

    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.two_body[self.idx4(p, q, r, s)]
    }

    pub fn set_one_body(&mut self, p: usize, q: usize, v: f64) {
        let n = self.norb;
        self.one_body[p * n + q] = v;
        self.one_body[q * n + p] = v;
    }

    /// Sets `(pq|rs)` and its seven permutation images.
    pub fn set_two_body(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            let k = self.idx4(a, b, c, d);
            self.two_body[k] = v;
        }
    }

    /// `(n_alpha, n_beta)` implied by `NELEC` and `MS2`.
    pub fn sector(&self) -> Result<(usize, usize)> {
        let n = self.nelec as i64;
        if (n + self.ms2) % 2 != 0 || self.ms2.abs() > n {
            return Err(invalid(format!("NELEC={} incompatible with MS2={}", self.nelec, self.ms2)));
        }
        Ok((((n + self.ms2) / 2) as usize, ((n - self.ms2) / 2) as usize))
    }

    /// Serializes the symmetry-unique nonzero integrals.
    pub fn to_fcidump(&self) -> String {
        let n = self.norb;
        let mut out = String::new();
        let _ = write!(out, " &FCI NORB={n},NELEC={},MS2={},\n  ORBSYM=", self.nelec, self.ms2);
        for k in 0..n {
            let _ = write!(out, "{},", self.orbsym.get(k).copied().unwrap_or(1));
        }
        let _ = write!(out, "\n  ISYM={},\n &END\n", self.isym.unwrap_or(1));
        let line = |out: &mut String, v: f64, i: usize, j: usize, k: usize, l: usize| {
            let _ = writeln!(out, "{v:>24.16E} {i:>4} {j:>4} {k:>4} {l:>4}");
        };
        for p in 0..n {
            for q in 0..=p {
                for r in 0..n {
                    for s in 0..=r {
                        if r * (r + 1) / 2 + s > p * (p + 1) / 2 + q {
                            continue;
                        }
                        let v = self.eri(p, q, r, s);
                        if v != 0.0 {
                            line(&mut out, v, p + 1, q + 1, r + 1, s + 1);
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..=p {
                let v = self.h(p, q);
                if v != 0.0 {
                    line(&mut out, v, p + 1, q + 1, 0, 0);
                }
            }
        }
        line(&mut out, self.core_energy, 0, 0, 0, 0);
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    tok.replace(['D', 'd'], "E")
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("not a number: {tok:?}")))
}

fn parse_int(tok: &str, line: usize) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| parse_err(line, format!("not an integer: {tok:?}")))
}

fn is_header_end(tok: &str) -> bool {
    let t = tok.to_ascii_uppercase();
    t == "&END" || t == "$END" || t == "/" || t == "&" || t == "$"
}

/// Header namelist: `&FCI` (or `$FCI`) up to `&END`, `$END` or `/`, with
/// comma- or whitespace-separated `KEY=value[,value...]` entries.
fn parse_header(lines: &mut impl Iterator<Item = (usize, String)>) -> Result<(IntegralSet, usize)> {
    let mut tokens: Vec<(usize, String)> = Vec::new();
    let mut started = false;
    let mut last_line = 0;
    let mut closed = false;
    for (no, raw) in lines.by_ref() {
        last_line = no;
        let spaced = raw.replace(',', " ").replace('=', " = ");
        for tok in spaced.split_whitespace() {
            if !started {
                let t = tok.to_ascii_uppercase();
                if t == "&FCI" || t == "$FCI" {
                    started = true;
                    continue;
                }
                if let Some(rest) = t.strip_prefix("&FCI").or_else(|| t.strip_prefix("$FCI")) {
                    started = true;
                    tokens.push((no, rest.to_string()));
                    continue;
                }
                return Err(parse_err(no, format!("expected &FCI header, found {tok:?}")));
            }
            if is_header_end(tok) {
                closed = true;
                break;
            }
            let upper = tok.to_ascii_uppercase();
            if let Some(head) = upper.strip_suffix("&END").or_else(|| upper.strip_suffix("$END")) {
                if !head.is_empty() {
                    tokens.push((no, head.to_string()));
                }
                closed = true;
                break;
            }
            tokens.push((no, upper));
        }
        if closed {
            break;
        }
    }
    if !started {
        return Err(parse_err(last_line.max(1), "missing &FCI header"));
    }
    if !closed {
        return Err(parse_err(last_line, "header namelist is not terminated"));
    }

    let mut entries: BTreeMap<String, (usize, Vec<String>)> = BTreeMap::new();
    let mut k = 0;
    while k < tokens.len() {
        let (no, key) = &tokens[k];
        if tokens.get(k + 1).map(|t| t.1.as_str()) != Some("=") {
            return Err(parse_err(*no, format!("expected KEY=value, found {key:?}")));
        }
        let mut values = Vec::new();
        k += 2;
        while k < tokens.len() && tokens.get(k + 1).map(|t| t.1.as_str()) != Some("=") {
            if tokens[k].1 == "=" {
                return Err(parse_err(tokens[k].0, "stray '='"));
            }
            values.push(tokens[k].1.clone());
            k += 1;
        }
        entries.insert(key.clone(), (*no, values));
    }

    let scalar = |key: &str| -> Result<Option<i64>> {
        match entries.get(key) {
            None => Ok(None),
            Some((no, v)) if v.len() == 1 => parse_int(&v[0], *no).map(Some),
            Some((no, _)) => Err(parse_err(*no, format!("{key} needs exactly one value"))),
        }
    };
    let require = |key: &str| -> Result<i64> {
        scalar(key)?.ok_or_else(|| parse_err(last_line, format!("header lacks {key}")))
    };
    let norb = require("NORB")?;
    let nelec = require("NELEC")?;
    let ms2 = scalar("MS2")?.unwrap_or(0);
    if norb <= 0 || norb > 16 {
        return Err(parse_err(entries["NORB"].0, format!("NORB={norb} outside 1..=16")));
    }
    if nelec < 0 || nelec > 2 * norb {
        return Err(parse_err(entries["NELEC"].0, format!("NELEC={nelec} outside 0..=2*NORB")));
    }
    for flag in ["UHF", "IUHF"] {
        if let Some((no, v)) = entries.get(flag) {
            if v.iter().any(|s| matches!(s.as_str(), "1" | "T" | ".TRUE." | "TRUE")) {
                return Err(parse_err(*no, "unrestricted integrals are not supported"));
            }
        }
    }
    let mut set = IntegralSet::new(norb as usize, nelec as usize, ms2);
    if let Some((no, v)) = entries.get("ORBSYM") {
        set.orbsym = v.iter().map(|s| parse_int(s, *no)).collect::<Result<_>>()?;
    }
    set.isym = scalar("ISYM")?;
    Ok((set, last_line))
}

/// Reads an FCIDUMP stream into a symmetry-expanded [`IntegralSet`].
///
/// Lines `value i j k l` with 1-based indices: all nonzero is two-body,
/// `i j 0 0` one-body, `0 0 0 0` the core energy. Orbital-energy lines
/// (`i 0 0 0`) are skipped.
pub fn parse_fcidump<R: BufRead>(reader: R) -> Result<IntegralSet> {
    let mut lines = reader.lines().enumerate().map(|(k, l)| (k + 1, l.unwrap_or_default()));
    let (mut set, _) = parse_header(&mut lines)?;
    let norb = set.norb as i64;
    for (no, raw) in lines {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(parse_err(no, format!("expected 5 fields, found {}", fields.len())));
        }
        let v = parse_real(fields[0], no)?;
        let mut idx = [0i64; 4];
        for (slot, tok) in idx.iter_mut().zip(&fields[1..]) {
            *slot = parse_int(tok, no)?;
            if *slot < 0 || *slot > norb {
                return Err(parse_err(no, format!("orbital index {slot} outside 0..={norb}")));
            }
        }
        let [i, j, k, l] = idx.map(|x| x as usize);
        match (i, j, k, l) {
            (0, 0, 0, 0) => set.core_energy = v,
            (_, 0, 0, 0) => {}
            (i, j, 0, 0) if i > 0 && j > 0 => set.set_one_body(i - 1, j - 1, v),
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => set.set_two_body(i - 1, j - 1, k - 1, l - 1, v),
            _ => return Err(parse_err(no, format!("unrecognised index pattern {i} {j} {k} {l}"))),
        }
    }
    Ok(set)
}

pub fn parse_fcidump_str(text: &str) -> Result<IntegralSet> {
    parse_fcidump(text.as_bytes())
}

/// `key=value` sidecar metadata; blank lines and `#` comments skipped.
pub fn parse_sidecar(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(k + 1, format!("expected key=value, found {line:?}")))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// Whether the requested sector must agree with `NELEC`/`MS2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SectorCheck {
    #[default]
    Strict,
    Override,
}

/// Physicists' antisymmetrized `<pq||rs>` over spin orbitals.
struct SpinIntegrals<'a> {
    ints: &'a IntegralSet,
}

impl SpinIntegrals<'_> {
    fn split(&self, p: usize) -> (usize, usize) {
        (p % self.ints.norb, p / self.ints.norb)
    }

    fn h(&self, p: usize, q: usize) -> f64 {
        let ((a, sa), (b, sb)) = (self.split(p), self.split(q));
        if sa == sb { self.ints.h(a, b) } else { 0.0 }
    }

    /// `<pq|rs> = (pr|qs)` with spin selection.
    fn coulomb(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let ((p, sp), (q, sq), (r, sr), (s, ss)) = (self.split(p), self.split(q), self.split(r), self.split(s));
        if sp == sr && sq == ss { self.ints.eri(p, r, q, s) } else { 0.0 }
    }

    fn anti(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.coulomb(p, q, r, s) - self.coulomb(p, q, s, r)
    }
}

fn bits(mut b: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (b != 0).then(|| {
            let j = b.trailing_zeros() as usize;
            b &= b - 1;
            j
        })
    })
}

/// Sign of `a+_a a_i |D>` (creation applied second).
fn single_sign(d: u64, i: usize, a: usize) -> f64 {
    let below = |b: u64, j: usize| (b & ((1u64 << j) - 1)).count_ones();
    let d1 = d & !(1u64 << i);
    if (below(d, i) + below(d1, a)) % 2 == 0 { 1.0 } else { -1.0 }
}

/// `<D'|H|D>` by the Slater-Condon rules.
fn slater_condon(si: &SpinIntegrals<'_>, bra: u64, ket: u64) -> f64 {
    let diff = bra ^ ket;
    match diff.count_ones() {
        0 => {
            let occ: Vec<usize> = bits(ket).collect();
            let mut e = si.ints.core_energy;
            for (n, &i) in occ.iter().enumerate() {
                e += si.h(i, i);
                for &j in &occ[..n] {
                    e += si.anti(i, j, i, j);
                }
            }
            e
        }
        2 => {
            let i = (ket & diff).trailing_zeros() as usize;
            let a = (bra & diff).trailing_zeros() as usize;
            let mut v = si.h(a, i);
            for j in bits(ket) {
                v += si.anti(a, j, i, j);
            }
            single_sign(ket, i, a) * v
        }
        4 => {
            let mut holes = bits(ket & diff);
            let mut parts = bits(bra & diff);
            let (i, j) = (holes.next().unwrap(), holes.next().unwrap());
            let (a, b) = (parts.next().unwrap(), parts.next().unwrap());
            // a+_a a+_b a_j a_i |D>: apply a_i, a_j, then a+_b, a+_a
            let s1 = single_sign(ket, i, b);
            let mid = (ket & !(1u64 << i)) | (1u64 << b);
            let s2 = single_sign(mid, j, a);
            // the above builds a+_a a_j a+_b a_i; reorder to a+_a a+_b a_j a_i
            // costs one swap of a_j past a+_b (distinct modes): sign -1.
            -s1 * s2 * si.anti(a, b, i, j)
        }
        _ => 0.0,
    }
}

/// Determinant-basis Hamiltonian in the `(n_alpha, n_beta)` sector.
pub fn build_molecular_hamiltonian(
    ints: &IntegralSet,
    n_alpha: usize,
    n_beta: usize,
    check: SectorCheck,
) -> Result<DenseHermitian> {
    let n = ints.norb;
    if check == SectorCheck::Strict {
        let ms2 = n_alpha as i64 - n_beta as i64;
        if n_alpha + n_beta != ints.nelec || ms2 != ints.ms2 {
            return Err(Error::SectorMismatch {
                n_alpha,
                n_beta,
                nelec: ints.nelec,
                ms2: ints.ms2,
            });
        }
    }
    if n_alpha > n || n_beta > n {
        return Err(Error::EmptySector);
    }
    let basis = sector_basis(n, n_alpha, n_beta);
    let si = SpinIntegrals { ints };
    let dim = basis.len();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        for row in 0..=col {
            let v = slater_condon(&si, basis[row], basis[col]);
            m[(row, col)] = C64::new(v, 0.0);
            m[(col, row)] = C64::new(v, 0.0);
        }
    }
    DenseHermitian::new(m, basis, n)
}

/// Sector from the file header.
pub fn molecular_hamiltonian(ints: &IntegralSet) -> Result<DenseHermitian> {
    let (a, b) = ints.sector()?;
    build_molecular_hamiltonian(ints, a, b, SectorCheck::Strict)
}

/// `E_core + sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q` over
/// `2 * norb` spin-orbital modes (up block first).
pub fn molecular_fermionic(ints: &IntegralSet) -> Result<FermionicSum> {
    let n = ints.norb;
    let mut f = FermionicSum::new(2 * n);
    f.push_constant(ints.core_energy);
    for spin in 0..2 {
        for p in 0..n {
            for q in 0..n {
                f.push(ints.h(p, q), vec![(spin * n + p, true), (spin * n + q, false)])?;
            }
        }
    }
    for s1 in 0..2 {
        for s2 in 0..2 {
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        for s in 0..n {
                            let v = ints.eri(p, q, r, s);
                            let (pp, qq, rr, ss) = (s1 * n + p, s1 * n + q, s2 * n + r, s2 * n + s);
                            if v == 0.0 || pp == rr || qq == ss {
                                continue;
                            }
                            f.push(0.5 * v, vec![(pp, true), (rr, true), (ss, false), (qq, false)])?;
                        }
                    }
                }
            }
        }
    }
    Ok(f)
}

/// Jordan-Wigner Pauli sum of the molecular Hamiltonian.
pub fn jw_molecular(ints: &IntegralSet) -> Result<PauliSum> {
    molecular_fermionic(ints)?.to_pauli()
}

/// Second-quantized sector matrix; independent of the Slater-Condon path.
pub fn molecular_hamiltonian_second_quantized(ints: &IntegralSet, n_alpha: usize, n_beta: usize) -> Result<DenseHermitian> {
    let f = molecular_fermionic(ints)?;
    let basis = sector_basis(ints.norb, n_alpha, n_beta);
    if basis.is_empty() {
        return Err(Error::EmptySector);
    }
    let index: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let dim = basis.len();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (col, &b) in basis.iter().enumerate() {
        for (c, b2) in f.apply_basis(b) {
            m[(index[&b2], col)] += C64::new(c, 0.0);
        }
    }
    DenseHermitian::new(m, basis, ints.norb)
}
