//! Seeded sampling helpers.
//!
//! Every random draw comes from a ChaCha stream selected by `(seed, stream)`,
//! so independent consumers never share state and the sequence a consumer
//! sees does not depend on what else ran before it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point in the centered ball of the given radius (rejection sampling).
pub fn ball_point<R: Rng>(rng: &mut R, dim: usize, radius: f64) -> Vec<f64> {
    loop {
        let p: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r2: f64 = p.iter().map(|x| x * x).sum();
        if r2 < 1.0 {
            return p.into_iter().map(|x| x * radius).collect();
        }
    }
}

/// Uniform point on the centered sphere of the given radius.
pub fn sphere_point<R: Rng>(rng: &mut R, dim: usize, radius: f64) -> Vec<f64> {
    loop {
        let p = ball_point(rng, dim, 1.0);
        let r: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-3 {
            return p.into_iter().map(|x| x * radius / r).collect();
        }
    }
}

pub fn ball_points(seed: u64, stream_id: u64, dim: usize, count: usize, radius: f64) -> Vec<Vec<f64>> {
    let mut rng = stream(seed, stream_id);
    (0..count).map(|_| ball_point(&mut rng, dim, radius)).collect()
}

/// Points with `inner <= |p| <= outer`, uniform in direction.
pub fn shell_points(
    seed: u64,
    stream_id: u64,
    dim: usize,
    count: usize,
    inner: f64,
    outer: f64,
) -> Vec<Vec<f64>> {
    let mut rng = stream(seed, stream_id);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(inner..=outer);
            sphere_point(&mut rng, dim, r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = ball_points(7, 1, 3, 5, 1.0);
        assert_eq!(a, ball_points(7, 1, 3, 5, 1.0));
        assert_ne!(a, ball_points(7, 2, 3, 5, 1.0));
        for p in &a {
            assert!(p.iter().map(|x| x * x).sum::<f64>() < 1.0);
        }
    }

    #[test]
    fn shell_radii() {
        for p in shell_points(3, 0, 3, 50, 1.5, 2.0) {
            let r = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((1.5 - 1e-12..=2.0 + 1e-12).contains(&r));
        }
    }
}
