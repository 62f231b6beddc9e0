use std::path::PathBuf;

use wallcheb::fcidump::{
    build_molecular_hamiltonian, molecular_hamiltonian, parse_fcidump_str, parse_sidecar, IntegralSet, SectorCheck,
};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../bench/fixtures/hydrogen")
}

fn load(stem: &str) -> (IntegralSet, f64) {
    let dir = fixture_dir();
    let text = std::fs::read_to_string(dir.join(format!("{stem}.fcidump"))).unwrap();
    let meta = parse_sidecar(&std::fs::read_to_string(dir.join(format!("{stem}.meta"))).unwrap()).unwrap();
    (parse_fcidump_str(&text).unwrap(), meta["e_fci"].parse().unwrap())
}

#[test]
fn hydrogen_fixtures_reproduce_reference_fci() {
    for n in [2, 4, 6] {
        for r in ["1.00", "1.50", "2.00", "2.50", "3.00"] {
            let (ints, e_fci) = load(&format!("h{n}_r{r}"));
            let h = molecular_hamiltonian(&ints).unwrap();
            let e0 = h.diagonalize().ground_energy();
            assert!((e0 - e_fci).abs() < 1e-8, "H{n} r={r}: {e0} vs {e_fci}");
        }
    }
}

#[test]
fn h2_is_four_by_four() {
    let (ints, _) = load("h2_r1.00");
    assert_eq!(molecular_hamiltonian(&ints).unwrap().dim(), 4);
}

#[test]
fn fixture_round_trip() {
    let (ints, _) = load("h4_r2.00");
    let back = parse_fcidump_str(&ints.to_fcidump()).unwrap();
    assert_eq!(back.norb(), ints.norb());
    for p in 0..4 {
        for q in 0..4 {
            assert!((back.h(p, q) - ints.h(p, q)).abs() < 1e-12);
            for r in 0..4 {
                for s in 0..4 {
                    assert!((back.eri(p, q, r, s) - ints.eri(p, q, r, s)).abs() < 1e-12);
                }
            }
        }
    }
    assert!((back.core_energy() - ints.core_energy()).abs() < 1e-12);
}

#[test]
fn fixture_symmetry_invariants() {
    let (ints, _) = load("h6_r1.50");
    let n = ints.norb();
    for p in 0..n {
        for q in 0..n {
            assert!((ints.h(p, q) - ints.h(q, p)).abs() < 1e-12);
            for r in 0..n {
                for s in 0..n {
                    let v = ints.eri(p, q, r, s);
                    for w in [ints.eri(q, p, r, s), ints.eri(p, q, s, r), ints.eri(r, s, p, q)] {
                        assert!((v - w).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

const BODY: &str = "0.5 1 1 1 1\n0.2 2 1 2 1\n0.3 2 2 1 1\n0.6 2 2 2 2\n-1.1 1 1 0 0\n0.1 2 1 0 0\n-0.4 2 2 0 0\n0.25 0 0 0 0\n";

#[test]
fn six_header_dialects_agree() {
    let headers = [
        // pyscf
        " &FCI NORB=   2,NELEC= 2,MS2=0,\n  ORBSYM=1,1,\n  ISYM=1,\n &END\n",
        // slash-terminated namelist
        "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1\n /\n",
        // whitespace-separated, single line
        "&FCI NORB=2 NELEC=2 MS2=0 ORBSYM=1 1 ISYM=1 /\n",
        // dollar delimiters
        "$FCI NORB=2, NELEC=2, MS2=0, $END\n",
        // lower case, fused terminator
        "&fci norb=2,nelec=2,ms2=0,orbsym=1,1,isym=1&end\n",
        // spaces around '=' and MS2 omitted
        "&FCI NORB = 2 , NELEC = 2 ,\n ORBSYM = 1 , 1 ,\n&END\n",
    ];
    let parsed: Vec<IntegralSet> = headers
        .iter()
        .map(|h| parse_fcidump_str(&format!("{h}{BODY}")).unwrap_or_else(|e| panic!("{h:?}: {e}")))
        .collect();
    for p in &parsed {
        assert_eq!(p.norb(), 2);
        assert_eq!(p.nelec(), 2);
        assert_eq!(p.ms2(), 0);
        assert_eq!(p.h(0, 1), 0.1);
        assert_eq!(p.eri(1, 1, 0, 0), 0.3);
        assert_eq!(p.core_energy(), 0.25);
    }
}

#[test]
fn no_two_body_spectrum_is_orbital_sums() {
    use nalgebra::DMatrix;
    let (mut ints, _) = load("h4_r1.50");
    let n = ints.norb();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    ints.set_two_body(p, q, r, s, 0.0);
                }
            }
        }
    }
    let h1 = DMatrix::from_fn(n, n, |p, q| ints.h(p, q));
    let eps = nalgebra::SymmetricEigen::new(h1).eigenvalues;
    let (na, nb) = ints.sector().unwrap();
    let subset_sums = |k: usize| -> Vec<f64> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| eps[i]).sum())
            .collect()
    };
    let mut want: Vec<f64> = Vec::new();
    for a in subset_sums(na) {
        for b in subset_sums(nb) {
            want.push(a + b + ints.core_energy());
        }
    }
    want.sort_by(f64::total_cmp);
    let h = build_molecular_hamiltonian(&ints, na, nb, SectorCheck::Strict).unwrap();
    let got = h.diagonalize();
    for (g, w) in got.energies().iter().zip(&want) {
        assert!((g - w).abs() < 1e-10);
    }
}

#[test]
fn couplings_vanish_beyond_double_excitations() {
    let (ints, _) = load("h4_r1.00");
    let h = molecular_hamiltonian(&ints).unwrap();
    let basis = h.basis();
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            if (basis[i] ^ basis[j]).count_ones() > 4 {
                assert_eq!(h.matrix()[(i, j)].norm(), 0.0);
            }
        }
    }
}
