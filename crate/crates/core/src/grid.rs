//! Deterministic sampling of test spaces, reduction maps and reduction chains.
//!
//! Weights are `k/d` with `d` drawn from [`DENOMINATORS`] and `1 <= k <= d`.
//! Every `(g, n)` block draws from its own ChaCha8 stream, seeded by mixing
//! the grid seed with `g` and `n`, so blocks do not depend on each other.
//!
//! For each `(g, n)` the space sample opens with `(1,...,1)`, continues with
//! wall samples (a random `S`, `|S| >= 2`, whose weights sum to exactly 1)
//! and fills up with uniform draws. Unstable data and repeats are skipped.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::marks::Marks;
use crate::rational::{int, rat, Rational};
use crate::space::{make_space, ModuliSpace};

pub const DENOMINATORS: [i64; 8] = [2, 3, 4, 5, 6, 8, 10, 12];
pub const DEFAULT_SEED: u64 = 20_160_401;
pub const SEED_ENV: &str = "HASSETT_SEED";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridConfig {
    pub genera: Vec<u32>,
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub maps: usize,
    pub chains: usize,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> GridConfig {
        GridConfig {
            genera: vec![1, 2, 3],
            sizes: (0..=5).collect(),
            samples: 20,
            maps: 50,
            chains: 30,
            seed: DEFAULT_SEED,
        }
    }
}

impl GridConfig {
    /// Default configuration with the seed taken from `HASSETT_SEED` if set.
    pub fn from_env() -> GridConfig {
        let seed = std::env::var(SEED_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_SEED);
        GridConfig {
            seed,
            ..GridConfig::default()
        }
    }

    fn rng(&self, stream: u64, g: u32, n: usize) -> ChaCha8Rng {
        let mut x = self.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        x ^= (u64::from(g) << 32) | n as u64;
        // splitmix64 finaliser
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ChaCha8Rng::seed_from_u64(x ^ (x >> 31))
    }

    /// The spaces of the grid, ordered by `(g, n, weights)`.
    pub fn spaces(&self) -> Vec<ModuliSpace> {
        let mut out = Vec::new();
        for &g in &self.genera {
            for &n in &self.sizes {
                out.extend(self.spaces_for(g, n));
            }
        }
        out
    }

    pub fn spaces_for(&self, g: u32, n: usize) -> Vec<ModuliSpace> {
        let mut rng = self.rng(0, g, n);
        let mut out: Vec<ModuliSpace> = Vec::new();
        let walls = self.samples / 4;
        let mut attempts = 0;
        while out.len() < self.samples && attempts < 50 * self.samples.max(1) {
            let w = match attempts {
                0 => vec![int(1); n],
                k if k <= walls => wall_weights(&mut rng, n),
                _ => random_weights(&mut rng, n),
            };
            attempts += 1;
            if let Ok(s) = make_space(g, w) {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Seeded pairs `(A, B)` with `B <= A`.
    pub fn reduction_pairs(&self, g: u32, n: usize) -> Vec<(ModuliSpace, ModuliSpace)> {
        let mut rng = self.rng(1, g, n);
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < self.maps && attempts < 50 * self.maps.max(1) {
            attempts += 1;
            let a = random_weights(&mut rng, n);
            let b = shrink(&mut rng, &a);
            if let (Ok(a), Ok(b)) = (make_space(g, a), make_space(g, b)) {
                out.push((a, b));
            }
        }
        out
    }

    /// Seeded chains `(A, B, C)` with `C <= B <= A`.
    pub fn reduction_chains(
        &self,
        g: u32,
        n: usize,
    ) -> Vec<(ModuliSpace, ModuliSpace, ModuliSpace)> {
        let mut rng = self.rng(2, g, n);
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < self.chains && attempts < 50 * self.chains.max(1) {
            attempts += 1;
            let a = random_weights(&mut rng, n);
            let b = shrink(&mut rng, &a);
            let c = shrink(&mut rng, &b);
            if let (Ok(a), Ok(b), Ok(c)) = (make_space(g, a), make_space(g, b), make_space(g, c)) {
                out.push((a, b, c));
            }
        }
        out
    }
}

fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    let d = *DENOMINATORS.choose(rng).expect("nonempty");
    rat(rng.gen_range(1..=d), d)
}

pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_weight(rng)).collect()
}

/// Random weights with `w_S = 1` exactly for a random `S`, `|S| >= 2`
/// (`S = {1}` with `a_1 = 1` when `n = 1`).
pub fn wall_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut w = random_weights(rng, n);
    if n == 0 {
        return w;
    }
    if n == 1 {
        w[0] = int(1);
        return w;
    }
    let size = rng.gen_range(2..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let chosen = &idx[..size];
    let candidates: Vec<i64> = DENOMINATORS
        .iter()
        .copied()
        .filter(|&d| d >= size as i64)
        .collect();
    let d = *candidates.choose(rng).expect("12 >= 5");
    // a random composition of d into `size` positive parts
    let mut cuts: Vec<i64> = (1..d).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..size - 1].to_vec();
    cuts.sort_unstable();
    let mut prev = 0;
    for (slot, &cut) in chosen.iter().zip(cuts.iter().chain(std::iter::once(&d))) {
        w[*slot] = rat(cut - prev, d);
        prev = cut;
    }
    w
}

/// `b_i = a_i * k_i / d_i` with `1 <= k_i <= d_i`.
fn shrink<R: Rng>(rng: &mut R, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| x * random_weight(rng)).collect()
}

/// Does some `I` with `|I| >= 2` have `w_I = 1` exactly?
pub fn touches_wall(space: &ModuliSpace) -> bool {
    Marks::all_subsets(space.n()).any(|m| m.len() >= 2 && space.w(m) == int(1))
}
