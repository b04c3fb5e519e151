//! Seeded sampling of regular Cartan points with rational coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::TorusPoint;
use crate::lie::{RootDatum, Weight, Q};

/// Denominator of sampled coordinates (a prime).
pub const SAMPLE_DENOMINATOR: i64 = 10007;
/// Minimum distance of every `(α|τ)` from the integers.
pub const WALL_MARGIN: (i64, i64) = (1, 1000);

/// Deterministic stream of regular torus points `τ = z / 10007`.
pub struct RegularSampler<'a> {
    datum: &'a RootDatum,
    rng: ChaCha8Rng,
    margin: Q,
}

impl<'a> RegularSampler<'a> {
    pub fn new(datum: &'a RootDatum, seed: u64) -> Self {
        RegularSampler {
            datum,
            rng: ChaCha8Rng::seed_from_u64(seed),
            margin: Q::new(WALL_MARGIN.0, WALL_MARGIN.1),
        }
    }

    pub fn with_margin(mut self, margin: Q) -> Self {
        self.margin = margin;
        self
    }

    pub fn sample(&mut self) -> TorusPoint {
        loop {
            let coords = (0..self.datum.rank())
                .map(|_| Q::new(self.rng.gen_range(0..SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR))
                .collect();
            let p = TorusPoint::new(self.datum, Weight(coords));
            if p.wall_distance(self.datum) >= self.margin {
                return p;
            }
        }
    }

    pub fn take(&mut self, n: usize) -> Vec<TorusPoint> {
        (0..n).map(|_| self.sample()).collect()
    }
}

/// `n` regular points from `seed`.
pub fn regular_points(datum: &RootDatum, seed: u64, n: usize) -> Vec<TorusPoint> {
    RegularSampler::new(datum, seed).take(n)
}

/// `1 / (2(k + h∨))`: half the wall distance of the level-`k` torsion
/// points. Localization sums have terms of size `Π |1 - e(-β)|⁻¹`, so
/// sampling closer to a wall than this costs digits the identities at
/// level `k` are not meant to pay for.
pub fn level_margin(datum: &RootDatum, k: u32) -> Q {
    Q::new(1, 2 * (k as i64 + datum.dual_coxeter()))
}

/// `n` regular points from `seed`, at least [`level_margin`] from every wall.
pub fn level_points(datum: &RootDatum, k: u32, seed: u64, n: usize) -> Vec<TorusPoint> {
    RegularSampler::new(datum, seed)
        .with_margin(level_margin(datum, k))
        .take(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_regular_and_reproducible() {
        let d = RootDatum::new("B2".parse().unwrap()).unwrap();
        let a = regular_points(&d, 7, 20);
        let b = regular_points(&d, 7, 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.tau(), y.tau());
            assert!(x.is_regular(&d));
        }
        let c = regular_points(&d, 8, 20);
        assert!(a.iter().zip(&c).any(|(x, y)| x.tau() != y.tau()));
    }

    #[test]
    fn level_points_respect_margin() {
        let d = RootDatum::new("G2".parse().unwrap()).unwrap();
        for p in level_points(&d, 7, 3, 50) {
            assert!(p.wall_distance(&d) >= Q::new(1, 22));
        }
    }
}
