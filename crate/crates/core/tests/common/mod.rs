#![allow(dead_code)]

use multibrace::maps::PartitionedMap;
use multibrace::{GradedSpace, Partition, Scalar, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Space with basis `v0, v1, ...` and the given super degrees.
pub fn space(degrees: &[i64]) -> GradedSpace {
    let items: Vec<(String, i64)> = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("v{i}"), *d))
        .collect();
    GradedSpace::from_degrees(&items).unwrap()
}

pub fn random_space(rng: &mut ChaCha8Rng, max_dim: usize) -> GradedSpace {
    let dim = rng.gen_range(1..=max_dim);
    let degrees: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..2)).collect();
    space(&degrees)
}

pub fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_int(rng.gen_range(-2..=2))
}

/// Random homogeneous map of the given type and degree; each admissible
/// output coordinate is filled with probability `density`.
pub fn random_map(
    rng: &mut ChaCha8Rng,
    s: &GradedSpace,
    ty: Partition,
    degree: i64,
    density: f64,
) -> PartitionedMap {
    let n = ty.arity();
    let mut entries = Vec::new();
    for tuple in multibrace::maps::all_tuples(s.dim(), n) {
        let deg: i64 = tuple.iter().map(|&i| s.degree(i)).sum::<i64>() + degree;
        let mut v = Vector::zero();
        for o in 0..s.dim() {
            if s.degree(o) == deg && rng.gen_bool(density) {
                v.add_term(o, small_scalar(rng));
            }
        }
        if !v.is_zero() {
            entries.push((tuple, v));
        }
    }
    PartitionedMap::table(s, ty, degree, entries).unwrap()
}

pub fn random_plain(rng: &mut ChaCha8Rng, s: &GradedSpace, max_arity: usize) -> PartitionedMap {
    let n = rng.gen_range(1..=max_arity);
    let deg = rng.gen_range(-1..=1);
    random_map(rng, s, Partition::plain(n), deg, 0.6)
}

/// Degree of a basis tuple.
pub fn tuple_degree(s: &GradedSpace, t: &[usize]) -> i64 {
    t.iter().map(|&i| s.degree(i)).sum()
}
