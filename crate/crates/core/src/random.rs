//! Seeded generators for randomized sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolalg::{BoolElem, FinitePowerAlgebra, Subalgebra};
use crate::model::Cell;
use crate::scalar::{frac, Rational};

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `-6..=6` and denominator in `1..=4`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn element(rng: &mut impl Rng, alg: FinitePowerAlgebra) -> BoolElem {
    let n = alg.n_cells();
    let bits = if n == 0 { 0 } else { rng.gen::<u64>() >> (64 - n) };
    BoolElem::new(n, bits).expect("bits within range")
}

/// A random probability vector with `k` strictly positive rational entries.
pub fn probabilities(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=5)).collect();
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| frac(w, total)).collect()
}

/// Random cells with outcome counts drawn from `ks`.
pub fn cells(rng: &mut impl Rng, n: usize, ks: &[usize]) -> Vec<Cell> {
    (0..n)
        .map(|_| {
            let k = *ks.choose(rng).expect("nonempty outcome choices");
            Cell::new(probabilities(rng, k)).expect("valid random cell")
        })
        .collect()
}

/// Random subalgebra: each cell is assigned to one of up to `max_blocks`
/// groups; empty groups are dropped.
pub fn subalgebra(rng: &mut impl Rng, alg: FinitePowerAlgebra, max_blocks: usize) -> Subalgebra {
    let n = alg.n_cells();
    if n == 0 {
        return alg.trivial_subalgebra();
    }
    let groups = rng.gen_range(1..=max_blocks.clamp(1, n));
    let mut bits = vec![0u64; groups];
    for i in 0..n {
        bits[rng.gen_range(0..groups)] |= 1 << i;
    }
    let blocks = bits
        .into_iter()
        .filter(|&b| b != 0)
        .map(|b| BoolElem::new(n, b).expect("bits within range"))
        .collect();
    alg.subalgebra(blocks).expect("groups partition the cells")
}
