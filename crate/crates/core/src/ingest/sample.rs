//! Seeded sentence sampling.
//!
//! The generator is SplitMix64 with the seed as its initial state. A partial
//! Fisher–Yates shuffle over `0..len` draws `j = i + next_u64() % (len - i)`
//! for `i` in `0..k`; the first `k` indices are then sorted so the sample
//! keeps document order. The procedure is fixed so other implementations can
//! reproduce a sample exactly.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::corpus::Corpus;

use super::ParsedCorpus;

/// Indices of `min(n, len)` sentences chosen without replacement, ascending.
pub fn sample_indices(len: usize, n: usize, seed: u64) -> Vec<usize> {
    let k = n.min(len);
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..len).collect();
    for i in 0..k {
        let span = (len - i) as u64;
        let j = i + (rng.next_u64() % span) as usize;
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx.sort_unstable();
    idx
}

/// Corpora whose sentences can be subsampled.
pub trait Sampleable: Sized {
    fn sample(&self, n: usize, seed: u64) -> Self;
}

fn pick<T: Clone>(items: &[T], n: usize, seed: u64) -> Vec<T> {
    sample_indices(items.len(), n, seed)
        .into_iter()
        .map(|i| items[i].clone())
        .collect()
}

impl Sampleable for Corpus {
    fn sample(&self, n: usize, seed: u64) -> Self {
        Corpus::new(self.id.clone(), pick(self.sentences(), n, seed))
    }
}

impl Sampleable for ParsedCorpus {
    fn sample(&self, n: usize, seed: u64) -> Self {
        ParsedCorpus::new(self.id.clone(), pick(self.sentences(), n, seed))
    }
}

pub fn sample_sentences<C: Sampleable>(corpus: &C, n: usize, seed: u64) -> C {
    corpus.sample(n, seed)
}
