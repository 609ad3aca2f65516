//! Seeded random planar content for non-adversarial games, tests and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::geometry::{orient, Orientation, Point};
use crate::graph::{is_three_connected, PlanarGraph};

/// A maximal planar graph together with a plane straight-line drawing of it.
#[derive(Clone, Debug)]
pub struct GeometricTriangulation {
    pub graph: PlanarGraph,
    pub drawing: Drawing,
}

/// Random triangulation of `n >= 3` random integer points: vertices are
/// inserted into the triangle that contains them, then random edge
/// flips mix the combinatorics.
pub fn random_triangulation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<GeometricTriangulation> {
    if n < 3 {
        return Err(Error::UndefinedInput(format!("need at least 3 vertices, got {n}")));
    }
    let side = (n as i64) * 64;
    let mut pts = vec![Point::from_ints(0, 0), Point::from_ints(side, 0), Point::from_ints(0, side)];
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2]];
    while pts.len() < n {
        let x = rng.random_range(1..side);
        let y = rng.random_range(1..side - x);
        let p = Point::from_ints(x, y);
        let hit = tris.iter().position(|t| {
            (0..3).all(|i| orient(&pts[t[i]], &pts[t[(i + 1) % 3]], &p) == Orientation::CounterClockwise)
        });
        // points on an existing edge or vertex are simply redrawn
        let Some(ti) = hit else { continue };
        let v = pts.len();
        pts.push(p);
        let [a, b, c] = tris.swap_remove(ti);
        tris.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    for _ in 0..4 * n {
        try_flip(&mut tris, &pts, rng);
    }
    let edges = tris.iter().flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]);
    let mut edges: Vec<(usize, usize)> = edges.map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    let graph = PlanarGraph::new(n, edges)?;
    Ok(GeometricTriangulation {
        graph,
        drawing: Drawing::new(pts),
    })
}

/// Flips a random edge shared by two triangles whose union is a strictly
/// convex quadrilateral.
fn try_flip<R: Rng + ?Sized>(tris: &mut [[usize; 3]], pts: &[Point], rng: &mut R) {
    let ti = rng.random_range(0..tris.len());
    let i = rng.random_range(0..3);
    let (a, b) = (tris[ti][i], tris[ti][(i + 1) % 3]);
    let c = tris[ti][(i + 2) % 3];
    let Some(tj) = tris.iter().position(|t| (0..3).any(|j| t[j] == b && t[(j + 1) % 3] == a)) else {
        return;
    };
    let d = *tris[tj].iter().find(|&&x| x != a && x != b).unwrap();
    let has_cd = tris.iter().any(|t| t.contains(&c) && t.contains(&d));
    let ccw = |p: usize, q: usize, r: usize| orient(&pts[p], &pts[q], &pts[r]) == Orientation::CounterClockwise;
    // quadrilateral a, d, b, c is convex iff both new triangles are ccw
    if has_cd || !ccw(c, a, d) || !ccw(d, b, c) {
        return;
    }
    tris[ti] = [c, a, d];
    tris[tj] = [d, b, c];
}

/// Random 3-connected planar graph on `n >= 4` vertices: a random
/// triangulation with edges deleted in random order as long as the graph
/// stays 3-connected. `keep` in `0.0..=1.0` is the fraction of deletable
/// edges left in place.
pub fn random_three_connected<R: Rng + ?Sized>(n: usize, keep: f64, rng: &mut R) -> Result<PlanarGraph> {
    if n < 4 {
        return Err(Error::UndefinedInput(format!("need at least 4 vertices, got {n}")));
    }
    let tri = random_triangulation(n, rng)?;
    let mut edges = tri.graph.edges().to_vec();
    let mut order: Vec<(usize, usize)> = edges.clone();
    order.shuffle(rng);
    for e in order {
        if rng.random_bool(keep.clamp(0.0, 1.0)) {
            continue;
        }
        let trial: Vec<(usize, usize)> = edges.iter().copied().filter(|&f| f != e).collect();
        let g = PlanarGraph::new(n, trial.iter().copied())?;
        if is_three_connected(&g)? {
            edges = trial;
        }
    }
    PlanarGraph::new(n, edges)
}

/// A random triangulation with its drawing points shuffled among the
/// vertices.
pub fn scrambled_triangulation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<GeometricTriangulation> {
    let tri = random_triangulation(n, rng)?;
    let mut pts = tri.drawing.positions().to_vec();
    pts.shuffle(rng);
    Ok(GeometricTriangulation {
        graph: tri.graph,
        drawing: Drawing::new(pts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::is_plane_drawing;
    use crate::graph::{is_maximal_planar, is_planar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangulations_are_maximal_and_plane() {
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 3 + seed as usize * 4;
            let t = random_triangulation(n, &mut rng).unwrap();
            assert_eq!(t.graph.edge_count(), 3 * n - 6);
            assert!(is_maximal_planar(&t.graph).unwrap());
            assert!(is_plane_drawing(&t.graph, &t.drawing));
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = scrambled_triangulation(12, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = scrambled_triangulation(12, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.drawing, b.drawing);
    }

    #[test]
    fn thinned_graphs_stay_three_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [4, 8, 20] {
            let g = random_three_connected(n, 0.3, &mut rng).unwrap();
            assert!(is_planar(&g));
            assert!(is_three_connected(&g).unwrap());
        }
    }
}
