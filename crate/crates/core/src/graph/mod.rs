//! Abstract planar graphs, rotation systems and the structural predicates
//! (planarity, 3-connectivity, maximal planarity) the rest of the toolkit
//! builds on.

mod connectivity;
mod planarity;

use crate::error::{Error, Result};
use crate::geometry::{ccw_angle_cmp, Point};

pub use connectivity::{
    articulation_points, biconnected_components, is_biconnected, is_connected,
    is_connected_without, is_three_connected,
};
pub use planarity::{is_maximal_planar, is_planar, planar_embedding};

/// An undirected simple graph on vertices `0..vertex_count`, optionally
/// carrying a rotation system.
///
/// The rotation of a vertex lists its neighbours in clockwise order. Faces
/// are traced with the rule `(u, v) -> (v, succ_v(u))`, so bounded faces of a
/// drawn embedding come out counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    rotation: Option<Vec<Vec<usize>>>,
}

impl PlanarGraph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph must have at least one vertex".into()));
        }
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!("edge ({u}, {v}) out of range 0..{n}")));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Validation(format!("parallel edge {:?}", w[0])));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(PlanarGraph {
            n,
            edges: norm,
            adj,
            rotation: None,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        PlanarGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs three vertices");
        PlanarGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    /// Wheel on `n` vertices: hub `0` joined to the rim cycle `1..n`.
    pub fn wheel(n: usize) -> Self {
        assert!(n >= 4, "wheel needs four vertices");
        let rim = n - 1;
        let spokes = (1..n).map(|i| (0, i));
        let ring = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
        PlanarGraph::new(n, spokes.chain(ring)).expect("wheel is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn rotation(&self) -> Option<&[Vec<usize>]> {
        self.rotation.as_deref()
    }

    /// Attaches a rotation system; each entry must be a permutation of the
    /// vertex's neighbours.
    pub fn with_rotation(mut self, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != self.n {
            return Err(Error::Validation(format!(
                "rotation lists {} vertices, graph has {}",
                rotation.len(),
                self.n
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != self.adj[v] {
                return Err(Error::Validation(format!(
                    "rotation at {v} does not list exactly its incident edges"
                )));
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn without_rotation(mut self) -> Self {
        self.rotation = None;
        self
    }

    /// Reverses every rotation, i.e. the mirror-image embedding.
    pub fn mirrored(&self) -> Self {
        let mut g = self.clone();
        if let Some(rot) = &mut g.rotation {
            for r in rot.iter_mut() {
                r.reverse();
            }
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<PlanarGraph> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::UnknownVertex(v));
            }
            if local[v] != usize::MAX {
                return Err(Error::Validation(format!("vertex {v} listed twice")));
            }
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        PlanarGraph::new(vertices.len(), edges)
    }

    /// Traces the faces of the attached rotation system. Each face is the
    /// cyclic vertex sequence of its boundary walk.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        let rot = self
            .rotation
            .as_ref()
            .ok_or_else(|| Error::UndefinedInput("graph has no rotation system".into()))?;
        // position of each neighbour within the rotation, indexed like adj
        let pos: Vec<Vec<usize>> = (0..self.n)
            .map(|v| {
                self.adj[v]
                    .iter()
                    .map(|u| rot[v].iter().position(|w| w == u).unwrap())
                    .collect()
            })
            .collect();
        let succ = |v: usize, u: usize| -> usize {
            let j = self.adj[v].binary_search(&u).unwrap();
            let r = &rot[v];
            r[(pos[v][j] + 1) % r.len()]
        };
        // dart (u, v) is identified by (u, index of v in adj[u])
        let mut seen: Vec<Vec<bool>> = self.adj.iter().map(|a| vec![false; a.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..self.n {
            for j in 0..self.adj[u].len() {
                if seen[u][j] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, self.adj[u][j]);
                loop {
                    let ja = self.adj[a].binary_search(&b).unwrap();
                    if seen[a][ja] {
                        break;
                    }
                    seen[a][ja] = true;
                    face.push(a);
                    let c = succ(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        Ok(faces)
    }

    /// `V - E + F == 2` for the attached rotation system, for connected
    /// graphs with at least one edge.
    pub fn euler_check(&self) -> Result<bool> {
        let f = self.faces()?.len() as i64;
        Ok(self.n as i64 - self.edges.len() as i64 + f == 2)
    }

    /// Rotation system read off a straight-line drawing: neighbours of each
    /// vertex sorted clockwise by direction.
    pub fn rotation_from_drawing(&self, positions: &[Point]) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|v| {
                let origin = &positions[v];
                let mut nbrs = self.adj[v].clone();
                nbrs.sort_by(|&a, &b| ccw_angle_cmp(origin, &positions[a], &positions[b]));
                nbrs.reverse();
                nbrs
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert!(PlanarGraph::new(3, [(0, 0)]).is_err());
        assert!(PlanarGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(PlanarGraph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn rotation_must_match_incidence() {
        let g = PlanarGraph::cycle(3);
        assert!(g.clone().with_rotation(vec![vec![1, 2], vec![0, 2], vec![0, 1]]).is_ok());
        assert!(g.with_rotation(vec![vec![1], vec![0, 2], vec![0, 1]]).is_err());
    }

    #[test]
    fn k4_drawn_with_inner_vertex_traces_four_triangles() {
        let g = PlanarGraph::complete(4);
        let pos = vec![
            Point::from_ints(0, 0),
            Point::from_ints(6, 0),
            Point::from_ints(0, 6),
            Point::from_ints(1, 1),
        ];
        let rot = g.rotation_from_drawing(&pos);
        let g = g.with_rotation(rot).unwrap();
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert!(g.euler_check().unwrap());
    }

    #[test]
    fn mirrored_rotation_keeps_face_count() {
        let g = PlanarGraph::wheel(6);
        let mut pos = vec![Point::from_ints(0, 0)];
        pos.extend([(4, 0), (1, 4), (-3, 2), (-3, -2), (1, -4)].map(|(x, y)| Point::from_ints(x, y)));
        let g = g.clone().with_rotation(g.rotation_from_drawing(&pos)).unwrap();
        assert_eq!(g.faces().unwrap().len(), 6);
        assert_eq!(g.mirrored().faces().unwrap().len(), 6);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = PlanarGraph::complete(5);
        let h = g.induced_subgraph(&[4, 2, 0]).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
    }
}
