//! Synthetic workload builders for the benchmarks.

use cfpq_core::{BitMatrix, MatrixRepr};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A balanced class taxonomy as triples text: every class points to its
/// parent with `subClassOf`, and every leaf class gets `instances` entities
/// attached with `type`. Loading it with inverse edges gives the
/// same-generation query plenty of work.
pub fn layered_taxonomy(depth: usize, fanout: usize, instances: usize) -> String {
    let mut text = String::new();
    let mut level: Vec<usize> = vec![0];
    let mut next_id = 1usize;
    for _ in 0..depth {
        let mut next_level = Vec::new();
        for &parent in &level {
            for _ in 0..fanout {
                let child = next_id;
                next_id += 1;
                text.push_str(&format!("c{child} subClassOf c{parent}\n"));
                next_level.push(child);
            }
        }
        level = next_level;
    }
    for &leaf in &level {
        for k in 0..instances {
            text.push_str(&format!("e{leaf}_{k} type c{leaf}\n"));
        }
    }
    text
}

/// A random square Boolean matrix of the given fill ratio.
pub fn random_matrix(seed: u64, dim: usize, density: f64, repr: MatrixRepr) -> BitMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut m = BitMatrix::zeros(dim, repr);
    let target = ((dim * dim) as f64 * density) as usize;
    for _ in 0..target {
        m.set(rng.gen_range(0..dim), rng.gen_range(0..dim));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taxonomy_has_expected_edge_count() {
        let text = layered_taxonomy(2, 3, 2);
        // 3 + 9 subClassOf edges, 9 * 2 type edges
        assert_eq!(text.lines().count(), 12 + 18);
        let graph = cfpq_core::Graph::from_triples(&text, true).unwrap();
        assert_eq!(graph.edge_count(), 2 * (12 + 18));
    }
}
