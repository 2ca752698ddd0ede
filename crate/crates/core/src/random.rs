//! Seeded generators for ring elements, codes and cyclic codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{Code, Vector};
use crate::cyclic::{lifted_code, poly_gcd, x_n_minus_one, PolyCode};
use crate::error::Result;
use crate::ring::{Ring, RingElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(ring: &Ring, rng: &mut impl Rng) -> RingElement {
    ring.from_wire_rank(rng.gen_range(0..ring.order()))
}

pub fn random_vector(ring: &Ring, n: usize, rng: &mut impl Rng) -> Vector {
    (0..n).map(|_| random_element(ring, rng)).collect()
}

/// A code on `1..=max_gens` uniform generators.
pub fn random_code(ring: &Ring, n: usize, max_gens: usize, rng: &mut impl Rng) -> Result<Code> {
    let g = rng.gen_range(1..=max_gens.max(1));
    Code::new(ring, n, (0..g).map(|_| random_vector(ring, n, rng)).collect())
}

/// A cyclic code whose component `m` is generated by `gcd(f_m, x^n - 1)` for
/// a uniform polynomial `f_m` of degree below `n`.
pub fn random_cyclic_code(ring: &Ring, n: usize, rng: &mut impl Rng) -> Result<Code> {
    let f = ring.field();
    let q = f.order();
    let polycodes: Vec<PolyCode> = (0..ring.dim())
        .map(|m| {
            let fm: Vec<_> = (0..n).map(|_| f.from_raw(rng.gen_range(0..q))).collect();
            PolyCode { component: m, generators: vec![poly_gcd(f, &x_n_minus_one(f, n), &fm)] }
        })
        .collect();
    lifted_code(ring, n, &polycodes)
}
