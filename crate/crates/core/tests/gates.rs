//! Gate kernels against brute-force dense matrices, plus algebraic identities.

use cswap_core::engine::QubitIndex;
use cswap_core::testutil::random_state;
use cswap_core::{Complex64, GateKind, GateOp, StateVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

type Matrix = Vec<Vec<Complex64>>;

/// Dense `2^m × 2^m` matrix of `gate`, built column by column from the gate's
/// action on basis labels.
fn gate_matrix(gate: &GateOp, m: usize) -> Matrix {
    let dim = 1usize << m;
    let zero = Complex64::new(0.0, 0.0);
    let mut mat = vec![vec![zero; dim]; dim];
    let bit = |x: usize, q: QubitIndex| (x >> q.0) & 1 == 1;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for col in 0..dim {
        match gate.kind() {
            GateKind::H => {
                let t = gate.targets()[0];
                mat[col & !(1 << t.0)][col] += Complex64::new(h, 0.0);
                let sign = if bit(col, t) { -h } else { h };
                mat[col | (1 << t.0)][col] += Complex64::new(sign, 0.0);
            }
            GateKind::Cnot | GateKind::Toffoli => {
                let on = gate.controls().iter().all(|c| bit(col, *c));
                let t = gate.targets()[0];
                let row = if on { col ^ (1 << t.0) } else { col };
                mat[row][col] = Complex64::new(1.0, 0.0);
            }
            GateKind::Fredkin => {
                let c = gate.controls()[0];
                let (x, y) = (gate.targets()[0], gate.targets()[1]);
                let row = if bit(col, c) && bit(col, x) != bit(col, y) {
                    col ^ (1 << x.0) ^ (1 << y.0)
                } else {
                    col
                };
                mat[row][col] = Complex64::new(1.0, 0.0);
            }
        }
    }
    mat
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn apply_matrix(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn all_gates(m: usize) -> Vec<GateOp> {
    let mut out = Vec::new();
    for t in 0..m {
        out.push(GateOp::hadamard(t));
        for c in 0..m {
            if let Ok(g) = GateOp::cnot(c, t) {
                out.push(g);
            }
            for d in 0..m {
                if let Ok(g) = GateOp::toffoli(c, d, t) {
                    out.push(g);
                }
                if let Ok(g) = GateOp::fredkin(c, d, t) {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

#[test]
fn every_three_qubit_gate_matches_its_matrix() {
    let mut r = rng(1);
    let gates = all_gates(3);
    assert_eq!(gates.len(), 3 + 6 + 6 + 6);
    for g in &gates {
        let mat = gate_matrix(g, 3);
        for _ in 0..50 {
            let s = random_state(3, true, &mut r);
            let want = apply_matrix(&mat, s.amplitudes());
            let mut got = s.clone();
            got.apply_gate(g).unwrap();
            assert!(max_diff(got.amplitudes(), &want) < 1e-14, "{g:?}");
        }
    }
}

#[test]
fn gates_on_wider_registers_match_their_matrices() {
    let mut r = rng(2);
    for g in all_gates(5) {
        let mat = gate_matrix(&g, 5);
        let s = random_state(5, true, &mut r);
        let mut got = s.clone();
        got.apply_gate(&g).unwrap();
        assert!(max_diff(got.amplitudes(), &apply_matrix(&mat, s.amplitudes())) < 1e-14);
    }
}

#[test]
fn fredkin_is_cnot_toffoli_cnot_as_matrices() {
    let f = gate_matrix(&GateOp::fredkin(2, 0, 1).unwrap(), 3);
    let cnot = gate_matrix(&GateOp::cnot(1, 0).unwrap(), 3);
    let toff = gate_matrix(&GateOp::toffoli(2, 0, 1).unwrap(), 3);
    let product = matmul(&cnot, &matmul(&toff, &cnot));
    for (r1, r2) in f.iter().zip(&product) {
        assert!(max_diff(r1, r2) < 1e-15);
    }
}

#[test]
fn every_gate_matrix_is_a_unitary_involution() {
    for g in all_gates(3) {
        let m = gate_matrix(&g, 3);
        let sq = matmul(&m, &m);
        for (i, row) in sq.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((z - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }
}

#[test]
fn hadamard_layer_matches_single_gates() {
    let mut r = rng(3);
    for mask in 1u32..64 {
        let qs: Vec<QubitIndex> = (0..6).filter(|q| mask >> q & 1 == 1).map(QubitIndex).collect();
        let s = random_state(6, true, &mut r);
        let mut layered = s.clone();
        layered.apply_hadamard_layer(&qs).unwrap();
        let mut single = s;
        for q in &qs {
            single.apply_gate(&GateOp::hadamard(q.0)).unwrap();
        }
        assert!(max_diff(layered.amplitudes(), single.amplitudes()) < 1e-13);
    }
}

#[test]
fn hadamard_layer_on_sparse_state() {
    // Basis states exercise the column-sparse path.
    for label in [0u64, 5, 37, 63] {
        let qs: Vec<QubitIndex> = (2..6).map(QubitIndex).collect();
        let s = StateVector::new_basis_state(6, label).unwrap();
        let mut layered = s.clone();
        layered.apply_hadamard_layer(&qs).unwrap();
        let mut single = s;
        for q in &qs {
            single.apply_gate(&GateOp::hadamard(q.0)).unwrap();
        }
        assert!(max_diff(layered.amplitudes(), single.amplitudes()) < 1e-15);
    }
}

#[test]
fn fredkin_layer_matches_single_gates() {
    let mut r = rng(4);
    let triples = [
        (QubitIndex(6), QubitIndex(0), QubitIndex(3)),
        (QubitIndex(7), QubitIndex(1), QubitIndex(4)),
        (QubitIndex(8), QubitIndex(2), QubitIndex(5)),
    ];
    for _ in 0..20 {
        let s = random_state(9, true, &mut r);
        let mut layered = s.clone();
        layered.apply_fredkin_layer(&triples).unwrap();
        let mut single = s;
        for (c, a, b) in triples {
            single.apply_fredkin(c, a, b).unwrap();
        }
        assert!(max_diff(layered.amplitudes(), single.amplitudes()) < 1e-15);
    }
}

#[test]
fn out_of_range_and_duplicate_qubits_are_rejected() {
    let mut s = StateVector::new_basis_state(3, 0).unwrap();
    assert!(s.apply_gate(&GateOp::hadamard(3)).is_err());
    assert!(GateOp::cnot(1, 1).is_err());
    assert!(GateOp::fredkin(0, 2, 2).is_err());
    assert!(GateOp::new(GateKind::Toffoli, vec![QubitIndex(0)], vec![QubitIndex(1)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gates_are_involutions_and_preserve_norm(seed in any::<u64>(), which in 0usize..21) {
        let g = &all_gates(3)[which];
        let s = random_state(3, true, &mut rng(seed));
        let mut t = s.clone();
        t.apply_gate(g).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-12);
        t.apply_gate(g).unwrap();
        prop_assert!(max_diff(t.amplitudes(), s.amplitudes()) < 1e-14);
    }

    #[test]
    fn fredkin_equals_its_decomposition(seed in any::<u64>(), c in 0usize..4, a in 0usize..4, b in 0usize..4) {
        prop_assume!(c != a && a != b && c != b);
        let s = random_state(4, true, &mut rng(seed));
        let mut f = s.clone();
        f.apply_gate(&GateOp::fredkin(c, a, b).unwrap()).unwrap();
        let mut d = s;
        d.apply_gate(&GateOp::cnot(b, a).unwrap()).unwrap();
        d.apply_gate(&GateOp::toffoli(c, a, b).unwrap()).unwrap();
        d.apply_gate(&GateOp::cnot(b, a).unwrap()).unwrap();
        prop_assert!(max_diff(f.amplitudes(), d.amplitudes()) < 1e-14);
    }

    #[test]
    fn tensor_norm_is_product_of_norms(seed in any::<u64>(), ma in 1usize..4, mb in 1usize..4, k in 0.1f64..3.0) {
        let mut r = rng(seed);
        let mut a = random_state(ma, true, &mut r);
        a.scale(Complex64::new(k, 0.0));
        let b = random_state(mb, true, &mut r);
        let t = a.tensor(&b, 24).unwrap();
        prop_assert_eq!(t.num_qubits(), ma + mb);
        prop_assert!((t.norm_sqr() - a.norm_sqr() * b.norm_sqr()).abs() < 1e-12);
        prop_assert!((t.amplitude((1 << ma) | 1) - a.amplitude(1) * b.amplitude(1)).norm() < 1e-14);
    }

    #[test]
    fn collapse_probabilities_sum_to_one(seed in any::<u64>(), q in 0usize..4) {
        let s = random_state(4, true, &mut rng(seed));
        let (p0, _) = s.collapse(QubitIndex(q), false).unwrap();
        let (p1, rest) = s.collapse(QubitIndex(q), true).unwrap();
        prop_assert!((p0 + p1 - 1.0).abs() < 1e-12);
        prop_assert_eq!(rest.num_qubits(), 3);
        prop_assert!((rest.norm_sqr() - 1.0).abs() < 1e-12);
        let (q0, q1) = s.qubit_probabilities(QubitIndex(q)).unwrap();
        prop_assert!((q0 - p0).abs() < 1e-12 && (q1 - p1).abs() < 1e-12);
    }
}
