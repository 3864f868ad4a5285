//! Random states for verification batteries.
//!
//! Components are independent standard normals, normalised, which gives the
//! unitarily invariant (Haar) distribution on the sphere for complex states.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::engine::StateVector;

/// Random `m`-qubit state; `complex = false` gives real amplitudes.
pub fn random_state(m: usize, complex: bool, rng: &mut impl Rng) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..1usize << m)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
                Complex64::new(re, im)
            })
            .collect();
        let mut s = StateVector::from_amplitudes(amps).expect("power-of-two length");
        if s.normalize().is_ok() {
            return s;
        }
    }
}

/// Random normalized amplitudes of length `len`, not tied to a qubit count.
pub fn random_unit_vector(len: usize, complex: bool, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
                Complex64::new(re, im)
            })
            .collect();
        let n2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if n2 > 0.0 {
            let inv = 1.0 / libm::sqrt(n2);
            return v.into_iter().map(|z| z * inv).collect();
        }
    }
}

/// Random single-excitation state on `n` qubits, with its amplitudes
/// indexed by the excited qubit.
pub fn random_w_like(n: usize, complex: bool, rng: &mut impl Rng) -> (StateVector, Vec<Complex64>) {
    let a = random_unit_vector(n, complex, rng);
    let mut amps = alloc::vec![Complex64::new(0.0, 0.0); 1 << n];
    for (q, z) in a.iter().enumerate() {
        amps[1 << q] = *z;
    }
    (StateVector::from_amplitudes(amps).expect("power-of-two length"), a)
}
