//! Shared generators for the integration and acceptance suites. All
//! randomness is seeded so runs are reproducible.

#![allow(dead_code)]

use bjorth::faces::Subspace;
use bjorth::linalg;
use bjorth::scalar::{rat, ratio, Rat};
use bjorth::spaces::PolyhedralSpace;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integer vector with entries in [-bound, bound].
pub fn int_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<Rat> {
    (0..dim).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// Random nonzero rational vector with small-denominator entries.
pub fn nonzero_vec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..dim)
            .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
            .collect();
        if !linalg::is_zero(&v) {
            return v;
        }
    }
}

pub fn nonzero_f64_vec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
        if v.iter().any(|x| x.abs() > 1e-3) {
            return v;
        }
    }
}

/// Random full-dimensional centrally symmetric polytope ball in `dim`.
pub fn random_symmetric_space(rng: &mut ChaCha8Rng, dim: usize) -> PolyhedralSpace {
    loop {
        let pairs = rng.gen_range(dim..=dim + 3);
        let mut verts: Vec<Vec<Rat>> = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let v = nonzero_vec(rng, dim);
            verts.push(linalg::neg(&v));
            verts.push(v);
        }
        if let Ok(space) = PolyhedralSpace::new(verts, dim) {
            return space;
        }
    }
}

/// Random proper subspace of the given dimension.
pub fn random_subspace(rng: &mut ChaCha8Rng, ambient: usize, dim: usize) -> Subspace {
    assert!(dim < ambient && dim > 0);
    loop {
        let cols: Vec<Vec<Rat>> = (0..dim).map(|_| int_vec(rng, ambient, 3)).collect();
        if let Ok(y) = Subspace::new(cols) {
            if y.dim() == dim {
                return y;
            }
        }
    }
}
