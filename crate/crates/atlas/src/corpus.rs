//! Test corpus: every small tree plus seeded random ones.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use atlas_core::corpus::{block_parameters, expand, has_exceptional, raw_from_parts, shapes};
use atlas_core::tree::{RawTree, Sign};

/// Largest `e` enumerated exhaustively.
pub const EXHAUSTIVE_MAX_E: u64 = 6;
/// Largest `e` enumerated with every rotation system.
pub const ALL_ROTATIONS_MAX_E: u64 = 4;
pub const MIN_RANDOM_TREES: usize = 100;

/// Uniform attachment: vertex `k` hangs off a uniformly chosen earlier
/// vertex. The exceptional vertex, rotations and the sign are sampled too.
pub fn random_tree(rng: &mut ChaCha8Rng, p: u64, n: u32, e: usize) -> RawTree {
    let k = e + 1;
    let edges: Vec<(usize, usize)> = (1..k).map(|v| (rng.random_range(0..v), v)).collect();
    let exceptional = has_exceptional(p, n, e as u64).then(|| rng.random_range(0..k));
    let mut rotation = atlas_core::corpus::default_rotation(k, &edges);
    for around in &mut rotation {
        around.shuffle(rng);
    }
    let sign = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
    raw_from_parts(p, n, &edges, exceptional, &rotation, sign)
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub exhaustive: Vec<RawTree>,
    pub random: Vec<RawTree>,
}

impl Corpus {
    /// Every tree with `e <= 6` (every rotation system when `e <= 4`) for each
    /// block with `p^n <= max_pn`, and `per_point` random trees for each block
    /// with `e > 4`, topped up so there are at least 100 when any exist.
    pub fn build(max_pn: u64, seed: u64, per_point: usize) -> Self {
        let mut cache = BTreeMap::new();
        let mut exhaustive = Vec::new();
        let params = block_parameters(max_pn, u64::MAX);
        for &(p, n, e) in params.iter().filter(|(_, _, e)| *e <= EXHAUSTIVE_MAX_E) {
            let rooted = has_exceptional(p, n, e);
            let s = cache.entry((e, rooted)).or_insert_with(|| shapes(e as usize, rooted));
            exhaustive.extend(expand(p, n, s, e <= ALL_ROTATIONS_MAX_E));
        }
        let points: Vec<_> = params.into_iter().filter(|(_, _, e)| *e > ALL_ROTATIONS_MAX_E).collect();
        let mut random = Vec::new();
        if !points.is_empty() {
            let per_point = per_point.max(MIN_RANDOM_TREES.div_ceil(points.len()));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for &(p, n, e) in &points {
                for _ in 0..per_point {
                    random.push(random_tree(&mut rng, p, n, e as usize));
                }
            }
        }
        Self { exhaustive, random }
    }

    pub fn iter(&self) -> impl Iterator<Item = &RawTree> {
        self.exhaustive.iter().chain(&self.random)
    }

    pub fn len(&self) -> usize {
        self.exhaustive.len() + self.random.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
