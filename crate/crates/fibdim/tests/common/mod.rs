//! Seeded random module corpus shared by the acceptance tests.
//!
//! Everything is driven by a ChaCha stream from a fixed seed, so the
//! corpus — and therefore every acceptance verdict — is reproducible
//! bit-for-bit across runs and platforms.

use fibdim::graded::Submodule;
use fibdim::poly::{monomials_of_degree, MultiPoly, PolyVec};
use fibdim::{rat, Rat};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    (rng.next_u64() % bound as u64) as usize
}

fn coefficient(rng: &mut ChaCha8Rng) -> Rat {
    let c = 1 + pick(rng, 3) as i64;
    if pick(rng, 2) == 0 {
        rat(c, 1)
    } else {
        rat(-c, 1)
    }
}

/// Sparse homogeneous polynomial of the exact degree (or zero if the
/// random terms cancel).
fn homogeneous_entry(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> MultiPoly {
    let monomials = monomials_of_degree(n, degree);
    let mut acc = MultiPoly::zero();
    for _ in 0..1 + pick(rng, 2) {
        let m = monomials[pick(rng, monomials.len())].clone();
        acc = &acc + &MultiPoly::term(m, coefficient(rng));
    }
    acc
}

/// Sparse polynomial mixing degrees up to `max_degree`.
fn mixed_entry(rng: &mut ChaCha8Rng, n: usize, max_degree: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for _ in 0..1 + pick(rng, 2) {
        let degree = pick(rng, max_degree + 1);
        let monomials = monomials_of_degree(n, degree);
        let m = monomials[pick(rng, monomials.len())].clone();
        acc = &acc + &MultiPoly::term(m, coefficient(rng));
    }
    acc
}

/// Random homogeneous module over given dimensions: between 1 and
/// `max_gens` generators, each homogeneous of a degree ≤ `max_degree`,
/// with sparse entries (roughly a quarter of them zero).
pub fn homogeneous_module(
    rng: &mut ChaCha8Rng,
    n: usize,
    rank: usize,
    max_gens: usize,
    max_degree: usize,
) -> Submodule {
    let count = 1 + pick(rng, max_gens);
    let generators = (0..count)
        .map(|_| {
            let degree = pick(rng, max_degree + 1);
            let entries = (0..rank)
                .map(|_| {
                    if pick(rng, 4) == 0 {
                        MultiPoly::zero()
                    } else {
                        homogeneous_entry(rng, n, degree)
                    }
                })
                .collect();
            PolyVec::new(entries)
        })
        .collect();
    Submodule::new(n, rank, generators).unwrap()
}

/// Random module with mixed-degree (generally inhomogeneous) generators.
pub fn mixed_module(
    rng: &mut ChaCha8Rng,
    n: usize,
    rank: usize,
    max_gens: usize,
    max_degree: usize,
) -> Submodule {
    let count = 1 + pick(rng, max_gens);
    let generators = (0..count)
        .map(|_| {
            let entries = (0..rank)
                .map(|_| {
                    if pick(rng, 4) == 0 {
                        MultiPoly::zero()
                    } else {
                        mixed_entry(rng, n, max_degree)
                    }
                })
                .collect();
            PolyVec::new(entries)
        })
        .collect();
    Submodule::new(n, rank, generators).unwrap()
}

/// The criterion-1 corpus shape: n ∈ {1,2,3}, N ≤ 4, ≤ 4 generators,
/// degrees ≤ 3.
pub fn corpus_module(rng: &mut ChaCha8Rng) -> Submodule {
    let n = 1 + pick(rng, 3);
    let rank = 1 + pick(rng, 4);
    homogeneous_module(rng, n, rank, 4, 3)
}

/// Modest ambient shape for pair and model corpora; three-variable cases
/// appear but are a minority to keep the degreewise intersections quick.
pub fn small_shape(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let n = match pick(rng, 8) {
        0..=2 => 1,
        3..=5 => 2,
        _ => 3,
    };
    let rank = 1 + pick(rng, 3);
    (n, rank)
}

/// Random homogeneous pair over a shared ambient module.
pub fn homogeneous_pair(rng: &mut ChaCha8Rng) -> (Submodule, Submodule) {
    let (n, rank) = small_shape(rng);
    (
        homogeneous_module(rng, n, rank, 3, 2),
        homogeneous_module(rng, n, rank, 3, 2),
    )
}

/// Random pair over a shared ambient module where either side may be
/// inhomogeneous.
pub fn general_pair(rng: &mut ChaCha8Rng) -> (Submodule, Submodule) {
    let (n, rank) = small_shape(rng);
    let side = |rng: &mut ChaCha8Rng, n, rank| {
        if pick(rng, 2) == 0 {
            mixed_module(rng, n, rank, 3, 2)
        } else {
            homogeneous_module(rng, n, rank, 3, 2)
        }
    };
    (side(rng, n, rank), side(rng, n, rank))
}
