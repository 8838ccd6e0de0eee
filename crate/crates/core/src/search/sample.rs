//! Seeded F5^t-free samples.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::detection::f5t_through;
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph3;
use crate::index::EdgeIndex;
use crate::triple::all_triples;

/// Shuffles all triples and keeps each one that leaves the graph F5^t-free,
/// stopping once `round(density * C(n,3))` edges are in.
pub fn random_free_sample(n: u32, t: u32, density: f64, seed: u64) -> Result<Hypergraph3> {
    if !(0.0..=1.0).contains(&density) {
        return invalid(format!("density {density} outside [0, 1]"));
    }
    let mut triples: Vec<_> = all_triples(n).collect();
    let target = (density * triples.len() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    triples.shuffle(&mut rng);
    let mut idx = EdgeIndex::new(n);
    for e in triples {
        if idx.edge_count() >= target {
            break;
        }
        idx.push(e);
        if f5t_through(&idx, t, e) {
            idx.pop();
        }
    }
    Ok(Hypergraph3::from_unsorted_unchecked(n, idx.edges().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::contains_f5t;

    #[test]
    fn deterministic_and_free() {
        assert_eq!(random_free_sample(9, 1, 0.0, 3).unwrap().edge_count(), 0);
        for seed in 0..5 {
            let a = random_free_sample(11, 1, 0.6, seed).unwrap();
            assert_eq!(a, random_free_sample(11, 1, 0.6, seed).unwrap());
            assert!(contains_f5t(&a, 1).is_none());
            assert!(a.edge_count() > 0);
        }
        assert!(random_free_sample(5, 0, 1.5, 0).is_err());
    }
}
