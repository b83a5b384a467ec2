//! Seeded generators for words and automorphisms used by campaigns and tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autom::{make_automorphism, Automorphism, NielsenMove};
use crate::word::{CyclicWord, Letter, ReducedWord, UWord};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random reduced spelling of exactly `len` letters.
pub fn random_reduced<R: Rng>(rng: &mut R, n: usize, len: usize) -> ReducedWord {
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    while v.len() < len {
        let a = Letter::from_code(rng.gen_range(0..2 * n));
        if v.last().map_or(true, |b| b.inverse() != a) {
            v.push(a);
        }
    }
    ReducedWord::from_reduced(v)
}

pub fn random_uword<R: Rng>(rng: &mut R, n: usize, len: usize) -> UWord {
    UWord::new(&random_reduced(rng, n, len)).expect("nonempty")
}

/// A cyclically reduced word of exactly `len` letters, as a necklace.
pub fn random_cyclic<R: Rng>(rng: &mut R, n: usize, len: usize) -> CyclicWord {
    assert!(len >= 1);
    loop {
        let w = random_reduced(rng, n, len);
        if w.is_cyclically_reduced() {
            return CyclicWord::new(&w).expect("nonempty");
        }
    }
}

pub fn random_move<R: Rng>(rng: &mut R, n: usize) -> NielsenMove {
    assert!(n >= 2, "transvections need rank at least 2");
    let kinds = [0u8, 0, 1, 1, 2, 3];
    let kind = *kinds.choose(rng).expect("nonempty");
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    match kind {
        0 => NielsenMove::RightMult(i, j),
        1 => NielsenMove::LeftMult(i, j),
        2 => NielsenMove::Invert(i),
        _ => NielsenMove::Swap(i, j),
    }
}

pub fn random_moves<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<NielsenMove> {
    (0..count).map(|_| random_move(rng, n)).collect()
}

/// An automorphism built from between 0 and `max_moves` random moves.
pub fn random_automorphism<R: Rng>(rng: &mut R, n: usize, max_moves: usize) -> Automorphism {
    let count = rng.gen_range(0..=max_moves);
    make_automorphism(n, &random_moves(rng, n, count)).expect("random moves are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let a: Vec<_> = (0..5).map(|_| random_cyclic(&mut rng_from_seed(7), 3, 9)).collect();
        assert!(a.windows(2).all(|p| p[0] == p[1]));
        let mut rng = rng_from_seed(1);
        for len in 1..20 {
            assert_eq!(random_cyclic(&mut rng, 2, len).len(), len);
            assert_eq!(random_uword(&mut rng, 2, len).len(), len);
        }
    }
}
