//! Seeded random instances for property checks and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::CubeSet;
use crate::layered::{layer_dim, LayeredSet};
use crate::natset::NatSet;
use crate::ordinal::Ordinal;
use crate::poset::FinPoset;

/// Independent generator for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Random subset of `ω^dim`: short prefixes and cycles, with empty and full
/// subtrees mixed in so that both ideal and positive sets are common.
pub fn cube_set<R: Rng>(rng: &mut R, dim: usize) -> CubeSet {
    if dim == 0 {
        return CubeSet::bit(rng.random_bool(0.5));
    }
    let roll: f64 = rng.random();
    if roll < 0.12 {
        return CubeSet::empty(dim);
    }
    if roll < 0.22 {
        return CubeSet::full(dim);
    }
    let prefix_len = rng.random_range(0..=3);
    let cycle_len = rng.random_range(1..=3);
    let prefix = (0..prefix_len).map(|_| cube_set(rng, dim - 1)).collect();
    let cycle = (0..cycle_len).map(|_| cube_set(rng, dim - 1)).collect();
    CubeSet::from_columns(prefix, cycle).expect("uniform child dimension")
}

/// Nonempty random subset of `ω^dim`.
pub fn nonempty_cube_set<R: Rng>(rng: &mut R, dim: usize) -> CubeSet {
    loop {
        let s = cube_set(rng, dim);
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn nat_set<R: Rng>(rng: &mut R) -> NatSet {
    let prefix: Vec<bool> = (0..rng.random_range(0..=4))
        .map(|_| rng.random_bool(0.5))
        .collect();
    let cycle: Vec<bool> = (0..rng.random_range(1..=4))
        .map(|_| rng.random_bool(0.5))
        .collect();
    NatSet::periodic(&prefix, &cycle).expect("nonempty cycle")
}

pub fn infinite_nat_set<R: Rng>(rng: &mut R) -> NatSet {
    loop {
        let s = nat_set(rng);
        if s.is_infinite() {
            return s;
        }
    }
}

/// Random column for layer `n`; deep layers are drawn sparsely.
fn layer_column<R: Rng>(rng: &mut R, n: usize) -> CubeSet {
    let dim = layer_dim(n);
    if dim <= 3 {
        return cube_set(rng, dim);
    }
    // full copies of a lower layer placed in a few columns
    match rng.random_range(0..4) {
        0 => CubeSet::empty(dim),
        1 => CubeSet::full(dim),
        _ => {
            let inner = cube_set(rng, dim - 1);
            let k = rng.random_range(1..=3);
            let cols = (0..k).map(|_| {
                if rng.random_bool(0.5) {
                    inner.clone()
                } else {
                    CubeSet::empty(dim - 1)
                }
            });
            CubeSet::stack(dim - 1, cols.collect()).expect("uniform dimension")
        }
    }
}

pub fn layered_set<R: Rng>(rng: &mut R) -> LayeredSet {
    let len = rng.random_range(0..=4);
    let prefix = (0..len).map(|n| layer_column(rng, n)).collect();
    let tail: Vec<bool> = match rng.random_range(0..4) {
        0 => vec![false],
        1 => vec![true],
        _ => (0..rng.random_range(1..=3))
            .map(|_| rng.random_bool(0.5))
            .collect(),
    };
    LayeredSet::new(prefix, tail).expect("columns drawn per layer")
}

/// Random ordinal with at most `terms` terms per level, exponents nested to
/// at most `depth` levels and coefficients in `1..=max_coeff`.
pub fn ordinal<R: Rng>(rng: &mut R, depth: usize, terms: usize, max_coeff: u64) -> Ordinal {
    let k = rng.random_range(0..=terms);
    let mut exps: Vec<Ordinal> = (0..k)
        .map(|_| {
            if depth == 0 {
                Ordinal::nat(rng.random_range(0..4))
            } else {
                ordinal(rng, depth - 1, terms, max_coeff)
            }
        })
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    Ordinal::from_terms(
        exps.into_iter()
            .map(|e| (e, rng.random_range(1..=max_coeff))),
    )
    .expect("sorted distinct exponents")
}

/// Random ordinal `≥ ω` below `ω^(ω·2)`.
pub fn ordinal_below_omega_omega2<R: Rng>(rng: &mut R) -> Ordinal {
    loop {
        let k = rng.random_range(1..=4);
        let mut exps: Vec<Ordinal> = (0..k)
            .map(|_| {
                let a = rng.random_range(0..=1);
                let b = rng.random_range(0..=6);
                Ordinal::from_terms(
                    [(Ordinal::one(), a), (Ordinal::zero(), b)]
                        .into_iter()
                        .filter(|(_, c)| *c > 0),
                )
                .expect("canonical")
            })
            .collect();
        exps.sort_by(|a, b| b.cmp(a));
        exps.dedup();
        let a = Ordinal::from_terms(exps.into_iter().map(|e| (e, rng.random_range(1..=5))))
            .expect("sorted distinct exponents");
        if !a.is_finite() {
            return a;
        }
    }
}

/// Random pre-order: closure of a random relation.
pub fn preorder<R: Rng>(rng: &mut R, size: usize) -> FinPoset {
    let density = rng.random_range(0.05..0.5);
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && rng.random_bool(density))
        .collect();
    FinPoset::closure(size, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = cube_set(&mut case_rng(7, 3), 3);
        let b = cube_set(&mut case_rng(7, 3), 3);
        assert_eq!(a, b);
        let s = layered_set(&mut case_rng(1, 2));
        assert_eq!(s, layered_set(&mut case_rng(1, 2)));
    }

    #[test]
    fn generated_values_are_well_formed() {
        for i in 0..200 {
            let mut rng = case_rng(11, i);
            let a = ordinal_below_omega_omega2(&mut rng);
            assert!(a >= Ordinal::omega());
            assert!(a < "w^(w*2)".parse().unwrap());
            let s = layered_set(&mut rng);
            for (n, c) in s.prefix().iter().enumerate() {
                assert_eq!(c.dim(), n + 1);
            }
            let p = preorder(&mut rng, 5);
            assert_eq!(p.size(), 5);
        }
    }
}
