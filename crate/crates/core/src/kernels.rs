//! In-place amplitude kernels. Every kernel walks the index space with
//! strides and bit masks; no operator matrix is ever built.
//!
//! Kernels skip butterfly groups whose inputs are all exactly zero. The
//! output of such a group is zero, so skipping is exact, and it leaves
//! untouched pages of a freshly zeroed allocation unmapped.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[inline]
fn is_zero(z: &Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// A zero-filled amplitude buffer obtained from the zeroing allocator.
pub(crate) fn zeroed(len: usize) -> Vec<Complex64> {
    let raw = vec![0.0f64; 2 * len];
    if raw.capacity() != 2 * len {
        return vec![ZERO; len];
    }
    let mut raw = core::mem::ManuallyDrop::new(raw);
    let ptr = raw.as_mut_ptr();
    // SAFETY: `Complex64` is `#[repr(C)]` over two `f64`s, so it has the
    // alignment of `f64` and twice its size. The buffer holds exactly
    // `2 * len` initialised `f64`s with capacity `2 * len`, which is the same
    // allocation layout as `len` `Complex64`s. All-zero bits are `0 + 0i`.
    unsafe { Vec::from_raw_parts(ptr.cast::<Complex64>(), len, len) }
}

/// Scatters the low bits of `x` onto the given qubit positions.
#[inline]
pub(crate) fn deposit(x: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (r, &p)| acc | (((x >> r) & 1) << p))
}

/// Gathers the bits at `positions` into the low bits of the result.
#[inline]
pub(crate) fn gather(i: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (r, &p)| acc | (((i >> p) & 1) << r))
}

/// Returns `Some(start)` if `positions` is `start, start+1, …`.
fn contiguous_run(positions: &[usize]) -> Option<usize> {
    let start = *positions.first()?;
    positions
        .iter()
        .enumerate()
        .all(|(r, &p)| p == start + r)
        .then_some(start)
}

pub(crate) fn hadamard(amps: &mut [Complex64], target: usize) {
    let stride = 1usize << target;
    for block in amps.chunks_exact_mut(stride << 1) {
        let (lo, hi) = block.split_at_mut(stride);
        for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
            if is_zero(x) && is_zero(y) {
                continue;
            }
            let (a, b) = (*x, *y);
            *x = (a + b) * math::FRAC_1_SQRT_2;
            *y = (a - b) * math::FRAC_1_SQRT_2;
        }
    }
}

/// Flips `target` wherever every bit of `control_mask` is set (CNOT, Toffoli).
pub(crate) fn controlled_flip(amps: &mut [Complex64], control_mask: usize, target: usize) {
    let stride = 1usize << target;
    for (b, block) in amps.chunks_exact_mut(stride << 1).enumerate() {
        let base = b * (stride << 1);
        let (lo, hi) = block.split_at_mut(stride);
        for (off, (x, y)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            if (base + off) & control_mask == control_mask {
                core::mem::swap(x, y);
            }
        }
    }
}

/// Exchanges bits `t1` and `t2` wherever every bit of `control_mask` is set.
pub(crate) fn controlled_swap(amps: &mut [Complex64], control_mask: usize, t1: usize, t2: usize) {
    let (t_lo, t_hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
    let stride = 1usize << t_hi;
    let lo_bit = 1usize << t_lo;
    for (b, block) in amps.chunks_exact_mut(stride << 1).enumerate() {
        let base = b * (stride << 1);
        let (lo, hi) = block.split_at_mut(stride);
        // lo[off | lo_bit] has (t_hi, t_lo) = (0, 1); hi[off] has (1, 0).
        for off in (0..stride).filter(|off| off & lo_bit == 0) {
            if (base + off) & control_mask == control_mask {
                core::mem::swap(&mut lo[off | lo_bit], &mut hi[off]);
            }
        }
    }
}

/// Hadamard on every qubit of `qubits` (distinct positions), as one
/// Walsh–Hadamard transform per column of the remaining index bits.
///
/// Only columns holding a nonzero amplitude are transformed. When most columns
/// are occupied the per-qubit streaming kernel is faster and is used instead.
pub(crate) fn hadamard_layer(amps: &mut [Complex64], qubits: &[usize]) {
    let k = qubits.len();
    if k == 0 {
        return;
    }
    let len = amps.len();
    let qubit_mask = qubits.iter().fold(0usize, |m, &q| m | (1 << q));

    let mut occupied = vec![0u64; len.div_ceil(64)];
    let mut columns = 0usize;
    for (i, a) in amps.iter().enumerate() {
        if is_zero(a) {
            continue;
        }
        let col = i & !qubit_mask;
        let (w, bit) = (col >> 6, 1u64 << (col & 63));
        if occupied[w] & bit == 0 {
            occupied[w] |= bit;
            columns += 1;
        }
    }
    if columns == 0 {
        return;
    }
    if columns.saturating_mul(4) > len >> k {
        for &q in qubits {
            hadamard(amps, q);
        }
        return;
    }

    let offsets: Vec<usize> = (0..1usize << k).map(|x| deposit(x, qubits)).collect();
    let scale = math::powf(2.0, -(k as f64) / 2.0);
    let mut buf = vec![ZERO; 1 << k];
    for (w, &word) in occupied.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let col = (w << 6) | word.trailing_zeros() as usize;
            word &= word - 1;
            for (slot, &off) in buf.iter_mut().zip(&offsets) {
                *slot = amps[col | off];
            }
            walsh_hadamard(&mut buf);
            for (slot, &off) in buf.iter().zip(&offsets) {
                amps[col | off] = *slot * scale;
            }
        }
    }
}

/// Unnormalised in-place fast Walsh–Hadamard transform.
fn walsh_hadamard(buf: &mut [Complex64]) {
    let mut h = 1;
    while h < buf.len() {
        for block in buf.chunks_exact_mut(h << 1) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h <<= 1;
    }
}

/// A set of controlled swaps on pairwise disjoint qubits, applied in one pass.
///
/// The swaps commute, so the combined map is an involution on basis labels and
/// can be applied in place by exchanging each pair `(i, p(i))` with `i < p(i)`.
pub(crate) fn swap_layer(amps: &mut [Complex64], triples: &[(usize, usize, usize)]) {
    if triples.is_empty() {
        return;
    }
    let controls: Vec<usize> = triples.iter().map(|t| t.0).collect();
    let firsts: Vec<usize> = triples.iter().map(|t| t.1).collect();
    let seconds: Vec<usize> = triples.iter().map(|t| t.2).collect();
    let runs = (
        contiguous_run(&controls),
        contiguous_run(&firsts),
        contiguous_run(&seconds),
    );
    match runs {
        (Some(c0), Some(a0), Some(b0)) => {
            let mask = (1usize << triples.len()) - 1;
            permute_pairs(amps, |i| {
                let active = (i >> c0) & mask;
                let differ = ((i >> a0) ^ (i >> b0)) & active;
                i ^ (differ << a0) ^ (differ << b0)
            });
        }
        _ => permute_pairs(amps, |i| {
            triples.iter().fold(i, |j, &(c, t1, t2)| {
                if (i >> c) & 1 == 1 && ((i >> t1) ^ (i >> t2)) & 1 == 1 {
                    j ^ (1 << t1) ^ (1 << t2)
                } else {
                    j
                }
            })
        }),
    }
}

fn permute_pairs(amps: &mut [Complex64], partner: impl Fn(usize) -> usize) {
    for i in 0..amps.len() {
        let j = partner(i);
        if j > i && !(is_zero(&amps[i]) && is_zero(&amps[j])) {
            amps.swap(i, j);
        }
    }
}

/// Probability of each bit pattern on `qubits`; pattern bit `r` is `qubits[r]`.
pub(crate) fn marginal(amps: &[Complex64], qubits: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0f64; 1 << qubits.len()];
    let mask = (1usize << qubits.len()) - 1;
    match contiguous_run(qubits) {
        Some(start) => {
            for (i, a) in amps.iter().enumerate() {
                out[(i >> start) & mask] += a.norm_sqr();
            }
        }
        None => {
            for (i, a) in amps.iter().enumerate() {
                out[gather(i, qubits)] += a.norm_sqr();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_helpers_round_trip() {
        let pos = [1usize, 4, 5];
        for x in 0..8 {
            assert_eq!(gather(deposit(x, &pos), &pos), x);
        }
        assert_eq!(contiguous_run(&[3, 4, 5]), Some(3));
        assert_eq!(contiguous_run(&[3, 5]), None);
    }

    #[test]
    fn zeroed_buffer_is_zero() {
        let v = zeroed(1000);
        assert_eq!(v.len(), 1000);
        assert!(v.iter().all(is_zero));
    }

    #[test]
    fn layer_fallback_matches_sparse_path() {
        // Dense occupation takes the per-qubit route; a single occupied column
        // takes the column route. Both must agree with repeated hadamard().
        let len = 1 << 6;
        let dense: Vec<Complex64> = (0..len)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut sparse = vec![ZERO; len];
        sparse[5] = Complex64::new(0.6, 0.0);
        sparse[5 | 8] = Complex64::new(0.0, 0.8);
        for start in [dense, sparse] {
            let mut a = start.clone();
            let mut b = start;
            hadamard_layer(&mut a, &[3, 4, 5]);
            for q in [3, 4, 5] {
                hadamard(&mut b, q);
            }
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm_sqr() < 1e-28);
            }
        }
    }
}
