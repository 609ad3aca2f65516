//! Straight-line drawings and their crossings.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::{IntFrame, Point};
use crate::graph::PlanarGraph;

/// Assignment of a point to every vertex. Edges are the straight segments
/// between endpoint positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    positions: Vec<Point>,
}

impl Drawing {
    pub fn new(positions: Vec<Point>) -> Self {
        Drawing { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: usize) -> &Point {
        &self.positions[v]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn set(&mut self, v: usize, p: Point) {
        self.positions[v] = p;
    }

    /// Distinct vertices occupy distinct points.
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.positions.len());
        self.positions.iter().all(|p| seen.insert(p))
    }

    /// The vertex sitting at `p`, if any.
    pub fn occupant(&self, p: &Point) -> Option<usize> {
        self.positions.iter().position(|q| q == p)
    }

    pub fn check_covers(&self, g: &PlanarGraph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::Validation(format!(
                "drawing has {} positions for {} vertices",
                self.len(),
                g.vertex_count()
            )));
        }
        Ok(())
    }
}

/// A degenerate or proper crossing found in a drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Crossing {
    /// Two edges (by index into `PlanarGraph::edges`) meet somewhere other
    /// than a shared endpoint.
    Edges(usize, usize),
    /// A vertex lies on a non-incident edge.
    VertexOnEdge { vertex: usize, edge: usize },
}

/// Whether edges `e` and `f` meet at a point that is not a shared endpoint.
pub(crate) fn edges_cross(frame: &IntFrame, e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b) = e;
    let (c, d) = f;
    let shared = [a, b].iter().find(|x| **x == c || **x == d).copied();
    match shared {
        Some(s) => {
            let other_e = if s == a { b } else { a };
            let other_f = if s == c { d } else { c };
            // Sharing an endpoint, they meet elsewhere only when they leave
            // it in the same direction.
            frame.orient(s, other_e, other_f) == Ordering::Equal
                && frame.dot_sign(s, other_e, other_f) == Ordering::Greater
        }
        None => frame.segments_touch(a, b, c, d),
    }
}

pub(crate) fn vertex_on_edge(frame: &IntFrame, v: usize, e: (usize, usize)) -> bool {
    v != e.0 && v != e.1 && frame.on_segment(e.0, e.1, v)
}

/// Every crossing of the drawing, edge pairs first.
pub fn crossings(g: &PlanarGraph, d: &Drawing) -> Vec<Crossing> {
    let frame = IntFrame::new(d.positions());
    let edges = g.edges();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges_cross(&frame, edges[i], edges[j]) {
                out.push(Crossing::Edges(i, j));
            }
        }
    }
    for v in 0..g.vertex_count() {
        for (i, &e) in edges.iter().enumerate() {
            if vertex_on_edge(&frame, v, e) {
                out.push(Crossing::VertexOnEdge { vertex: v, edge: i });
            }
        }
    }
    out
}

/// Number of crossing edge pairs plus number of vertices lying on
/// non-incident edges.
pub fn count_crossings(g: &PlanarGraph, d: &Drawing) -> usize {
    crossings(g, d).len()
}

/// Injective and free of crossings.
pub fn is_plane_drawing(g: &PlanarGraph, d: &Drawing) -> bool {
    d.len() == g.vertex_count() && d.is_injective() && count_crossings(g, d) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn drawing(pts: &[(i64, i64)]) -> Drawing {
        Drawing::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    #[test]
    fn four_cycle_with_one_crossing() {
        let g = PlanarGraph::cycle(4);
        let d = drawing(&[(0, 0), (1, 1), (1, 0), (0, 1)]);
        assert_eq!(count_crossings(&g, &d), 1);
        let idx01 = g.edge_index(0, 1).unwrap();
        let idx23 = g.edge_index(2, 3).unwrap();
        assert_eq!(crossings(&g, &d), vec![Crossing::Edges(idx01.min(idx23), idx01.max(idx23))]);
    }

    #[test]
    fn k4_inner_vertex_and_convex() {
        let g = PlanarGraph::complete(4);
        let inner = drawing(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
        assert_eq!(count_crossings(&g, &inner), 0);
        assert!(is_plane_drawing(&g, &inner));
        let convex = drawing(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(count_crossings(&g, &convex), 1);
        assert!(!is_plane_drawing(&g, &convex));
    }

    #[test]
    fn non_injective_is_not_plane() {
        let g = PlanarGraph::new(3, [(0, 1)]).unwrap();
        let d = drawing(&[(0, 0), (1, 0), (0, 0)]);
        assert!(!is_plane_drawing(&g, &d));
    }

    #[test]
    fn degenerate_configurations_count() {
        // vertex 2 in the interior of edge 0-1
        let g = PlanarGraph::new(3, [(0, 1)]).unwrap();
        let d = drawing(&[(0, 0), (2, 0), (1, 0)]);
        assert_eq!(crossings(&g, &d), vec![Crossing::VertexOnEdge { vertex: 2, edge: 0 }]);

        // overlapping collinear edges sharing an endpoint
        let g = PlanarGraph::new(3, [(0, 1), (0, 2)]).unwrap();
        let d = drawing(&[(0, 0), (2, 0), (1, 0)]);
        assert!(count_crossings(&g, &d) >= 1);

        // collinear but pointing apart
        let d = drawing(&[(0, 0), (2, 0), (-1, 0)]);
        assert_eq!(count_crossings(&g, &d), 0);
    }

    #[test]
    fn affine_image_preserves_count() {
        let g = PlanarGraph::complete(5);
        let d = drawing(&[(0, 0), (5, 1), (3, 4), (-1, 3), (2, 2)]);
        let before = count_crossings(&g, &d);
        // (x, y) -> (2x + y + 7, x + 3y - 2), determinant 5
        let moved = drawing(&[(0, 0), (5, 1), (3, 4), (-1, 3), (2, 2)].map(|(x, y)| (2 * x + y + 7, x + 3 * y - 2)));
        assert_eq!(count_crossings(&g, &moved), before);
    }
}
