//! Deterministic inputs for the criterion benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use untangle_core::generate::{scrambled_triangulation, GeometricTriangulation};
use untangle_core::graph::planar_embedding;
use untangle_core::{Drawing, PlanarGraph, Point};

pub fn scrambled(n: usize, seed: u64) -> GeometricTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    scrambled_triangulation(n, &mut rng).expect("triangulation")
}

/// A triangulation with its longest face and that face's current positions,
/// ready for a barycentric solve.
pub fn embedding_input(n: usize, seed: u64) -> (PlanarGraph, Vec<usize>, Vec<Point>) {
    let t = scrambled(n, seed);
    let face = planar_embedding(&t.graph)
        .and_then(|e| e.faces())
        .expect("faces")
        .into_iter()
        .max_by_key(|f| f.len())
        .expect("a face");
    let outer = untangle_core::geometry::parabola_points(face.len());
    (t.graph, face, outer)
}

pub fn graph_and_drawing(n: usize, seed: u64) -> (PlanarGraph, Drawing) {
    let t = scrambled(n, seed);
    (t.graph, t.drawing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use untangle_core::count_crossings;

    #[test]
    fn fixtures_are_deterministic_and_tangled() {
        let (g, d) = graph_and_drawing(30, 1);
        let (g2, d2) = graph_and_drawing(30, 1);
        assert_eq!(g.edges(), g2.edges());
        assert_eq!(d, d2);
        assert!(count_crossings(&g, &d) > 0);
        let (_, face, outer) = embedding_input(30, 1);
        assert_eq!(face.len(), outer.len());
    }
}
