//! Adversarial clustered instances.
//!
//! A clustered instance consists of `m` clusters of `k` vertices each. Every
//! cluster induces a triangulation, and the clusters sit in each other's
//! outer faces, joined in a ring. The `chain` family has `m = s + k`; the
//! `square` family has `m = k`, so `n = k^2`. Tangled drawings put all
//! vertices on a convex curve, interleaving clusters so that reading the
//! curve in order gives the labels `1 2 .. m` repeated `k` times.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::drawing::{is_plane_drawing, Drawing};
use crate::error::{Error, Result};
use crate::geometry::{parabola_points, strict_convex_orientation, Orientation, Point};
use crate::graph::{is_planar, is_three_connected, planar_embedding, PlanarGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusterStyle {
    /// Vertices stacked along one edge of the outer triangle.
    #[default]
    Stacked,
    /// Nested triangles joined by octahedral bands; maximum degree 6.
    Strip,
}

/// Which builder produced an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    /// `m = s + k` clusters of size `k`.
    Chain { k: usize, s: usize, style: ClusterStyle },
    /// `m = k` clusters of size `k`.
    Square { k: usize, style: ClusterStyle },
}

impl Family {
    pub fn cluster_size(&self) -> usize {
        match *self {
            Family::Chain { k, .. } | Family::Square { k, .. } => k,
        }
    }

    pub fn cluster_count(&self) -> usize {
        match *self {
            Family::Chain { k, s, .. } => s + k,
            Family::Square { k, .. } => k,
        }
    }

    pub fn style(&self) -> ClusterStyle {
        match *self {
            Family::Chain { style, .. } | Family::Square { style, .. } => style,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.cluster_size() * self.cluster_count()
    }

    /// Builds the graph described by this tag.
    pub fn build(&self) -> Result<ClusteredInstance> {
        match *self {
            Family::Chain { k, s, style } => build_chain_graph_styled(k, s, style),
            Family::Square { k, style } => build_square_graph_styled(k, style),
        }
    }

    /// Short human label, e.g. `chain(3,2)`.
    pub fn label(&self) -> String {
        match *self {
            Family::Chain { k, s, .. } => format!("chain({k},{s})"),
            Family::Square { k, .. } => format!("square({k})"),
        }
    }
}

/// Points in strictly convex position, counterclockwise in boundary order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPointSet {
    points: Vec<Point>,
}

impl ConvexPointSet {
    /// Validates that every consecutive triple turns strictly left.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        match strict_convex_orientation(&points) {
            Some(Orientation::CounterClockwise) => Ok(ConvexPointSet { points }),
            Some(_) => Err(Error::Validation(
                "points are convex but listed clockwise; boundary order must be counterclockwise".into(),
            )),
            None => Err(Error::Validation("points are not in strictly convex position".into())),
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Default convex point set: `(i, i^2)` for `i = 0..n`.
pub fn convex_positions(n: usize) -> Result<ConvexPointSet> {
    if n < 3 {
        return Err(Error::UndefinedInput(format!("need at least 3 points, got {n}")));
    }
    ConvexPointSet::new(parabola_points(n))
}

/// A graph partitioned into equal clusters, with an optional tangled drawing.
#[derive(Clone, Debug)]
pub struct ClusteredInstance {
    pub graph: PlanarGraph,
    /// `clusters[c][j]` is the `j`-th member of cluster `c`; members 0, 1, 2
    /// form the cluster's outer triangle.
    pub clusters: Vec<Vec<usize>>,
    pub family: Family,
    pub bad_drawing: Option<Drawing>,
}

impl ClusteredInstance {
    pub fn cluster_size(&self) -> usize {
        self.family.cluster_size()
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Cluster index of every vertex.
    pub fn cluster_of(&self) -> Vec<usize> {
        let mut of = vec![usize::MAX; self.vertex_count()];
        for (c, members) in self.clusters.iter().enumerate() {
            for &v in members {
                of[v] = c;
            }
        }
        of
    }

    pub fn with_bad_drawing(mut self, points: &ConvexPointSet) -> Result<Self> {
        self.bad_drawing = Some(assign_bad_drawing(&self, points)?);
        Ok(self)
    }

    pub fn bad_drawing(&self) -> Result<&Drawing> {
        self.bad_drawing
            .as_ref()
            .ok_or_else(|| Error::UndefinedInput("instance has no bad drawing attached".into()))
    }

    /// True when graph and partition are exactly what the family's builder
    /// produces.
    pub fn matches_builder(&self) -> bool {
        match self.family.build() {
            Ok(fresh) => fresh.graph.edges() == self.graph.edges() && fresh.clusters == self.clusters,
            Err(_) => false,
        }
    }
}

/// The standard instance for a family, with its tangled drawing on the
/// default convex point set.
pub fn standard_instance(family: Family) -> Result<ClusteredInstance> {
    let inst = family.build()?;
    let points = convex_positions(inst.vertex_count())?;
    inst.with_bad_drawing(&points)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Local coordinates of a cluster inside the triangle
/// `(0,0), (2,0), (1,2)`, together with its edges.
fn cluster_layout(k: usize, style: ClusterStyle) -> (Vec<Point>, Vec<(usize, usize)>) {
    let mut pts = vec![Point::from_ints(0, 0), Point::from_ints(2, 0), Point::from_ints(1, 2)];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    match style {
        ClusterStyle::Stacked => {
            // vertex i sits on the axis x = 1, inside triangle (0, 1, i-1)
            for i in 3..k {
                let height = BigRational::new(BigInt::from(2), BigInt::one() << (i - 2));
                pts.push(Point::new(BigRational::one(), height));
                edges.extend([(0, i), (1, i), (i - 1, i)]);
            }
        }
        ClusterStyle::Strip => {
            let layers = k / 3;
            for layer in 1..layers {
                let base = 3 * (layer - 1);
                let (a, b, c) = (base, base + 1, base + 2);
                let centroid = centroid(&[&pts[a], &pts[b], &pts[c]]);
                let half = q(1, 2);
                for (p, r) in [(a, b), (b, c), (c, a)] {
                    let mid = centroid_pair(&pts[p], &pts[r]);
                    pts.push(Point::new(
                        &centroid.x + (&mid.x - &centroid.x) * &half,
                        &centroid.y + (&mid.y - &centroid.y) * &half,
                    ));
                }
                let (na, nb, nc) = (base + 3, base + 4, base + 5);
                edges.extend([(na, nb), (nb, nc), (na, nc)]);
                edges.extend([(na, a), (na, b), (nb, b), (nb, c), (nc, c), (nc, a)]);
            }
            let base = 3 * (layers - 1);
            let (a, b, c) = (base, base + 1, base + 2);
            if k % 3 >= 1 {
                let x = pts.len();
                pts.push(centroid(&[&pts[a], &pts[b], &pts[c]]));
                edges.extend([(x, a), (x, b), (x, c)]);
                if k % 3 == 2 {
                    let y = pts.len();
                    pts.push(centroid(&[&pts[a], &pts[b], &pts[x]]));
                    edges.extend([(y, a), (y, b), (y, x)]);
                }
            }
        }
    }
    (pts, edges)
}

fn centroid(pts: &[&Point]) -> Point {
    let n = BigRational::from_integer(BigInt::from(pts.len()));
    let (mut x, mut y) = (BigRational::zero(), BigRational::zero());
    for p in pts {
        x += &p.x;
        y += &p.y;
    }
    Point::new(x / &n, y / n)
}

fn centroid_pair(a: &Point, b: &Point) -> Point {
    centroid(&[a, b])
}

/// A maximal planar graph on `k` vertices whose outer triangle is
/// `(0, 1, 2)`. The returned graph carries the rotation system of its
/// reference layout.
pub fn build_cluster_triangulation(k: usize, style: ClusterStyle) -> Result<PlanarGraph> {
    if k < 3 {
        return Err(Error::UndefinedInput(format!("cluster size must be at least 3, got {k}")));
    }
    let (pts, edges) = cluster_layout(k, style);
    let g = PlanarGraph::new(k, edges)?;
    let rotation = g.rotation_from_drawing(&pts);
    g.with_rotation(rotation)
}

/// Chain family: `s + k` clusters of size `k`, `n = k (s + k)`.
pub fn build_chain_graph(k: usize, s: usize) -> Result<ClusteredInstance> {
    build_chain_graph_styled(k, s, ClusterStyle::default())
}

pub fn build_chain_graph_styled(k: usize, s: usize, style: ClusterStyle) -> Result<ClusteredInstance> {
    if s == 0 {
        return Err(Error::UndefinedInput("chain family needs s >= 1".into()));
    }
    build_ring(k, s + k, Family::Chain { k, s, style })
}

/// Square family: `k` clusters of size `k`, `n = k^2`.
pub fn build_square_graph(k: usize) -> Result<ClusteredInstance> {
    build_square_graph_styled(k, ClusterStyle::default())
}

pub fn build_square_graph_styled(k: usize, style: ClusterStyle) -> Result<ClusteredInstance> {
    build_ring(k, k, Family::Square { k, style })
}

/// Edges joining consecutive clusters: bottom-right to the next
/// bottom-left, and apex to apex. The last cluster closes the ring with a
/// single edge from its bottom-right to the first cluster's bottom-left.
fn ring_links(k: usize, m: usize) -> Vec<(usize, usize)> {
    let v = |c: usize, j: usize| c * k + j;
    let mut links = Vec::new();
    for c in 0..m - 1 {
        links.push((v(c, 1), v(c + 1, 0)));
        links.push((v(c, 2), v(c + 1, 2)));
    }
    links.push((v(m - 1, 1), v(0, 0)));
    links
}

fn build_ring(k: usize, m: usize, family: Family) -> Result<ClusteredInstance> {
    if k < 3 {
        return Err(Error::UndefinedInput(format!("cluster size must be at least 3, got {k}")));
    }
    if m < 2 {
        return Err(Error::UndefinedInput("need at least two clusters".into()));
    }
    let (_, local_edges) = cluster_layout(k, family.style());
    let mut edges = Vec::new();
    for c in 0..m {
        edges.extend(local_edges.iter().map(|&(a, b)| (c * k + a, c * k + b)));
    }
    edges.extend(ring_links(k, m));
    let mut graph = PlanarGraph::new(k * m, edges.clone())?;

    // The ring scheme is 3-connected for every k >= 3; should a variant ever
    // fail, add apex/base chords between consecutive clusters until it holds.
    if !is_three_connected(&graph)? {
        let extra = (0..m).flat_map(|c| {
            let d = (c + 1) % m;
            [(c * k, d * k + 1), (c * k + 2, d * k + 1), (c * k, d * k + 2)]
        });
        for e in extra {
            if graph.has_edge(e.0, e.1) {
                continue;
            }
            let mut trial = edges.clone();
            trial.push(e);
            let candidate = PlanarGraph::new(k * m, trial.clone())?;
            if is_planar(&candidate) {
                edges = trial;
                graph = candidate;
                if is_three_connected(&graph)? {
                    break;
                }
            }
        }
        if !is_three_connected(&graph)? {
            return Err(Error::Internal("could not make the clustered graph 3-connected".into()));
        }
    }
    let clusters = (0..m).map(|c| (c * k..(c + 1) * k).collect()).collect();
    Ok(ClusteredInstance {
        graph,
        clusters,
        family,
        bad_drawing: None,
    })
}

/// Rational point on the unit circle near angle `theta`, via the
/// parametrisation `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`.
fn unit_vector(theta: f64) -> (BigRational, BigRational) {
    let t = ((theta / 2.0).tan() * 1000.0).round() as i64;
    let t = q(t, 1000);
    let one = BigRational::one();
    let denom = &one + &t * &t;
    ((&one - &t * &t) / &denom, (&t + &t) / denom)
}

/// A crossing-free straight-line layout of an instance from the standard
/// builders: clusters spaced around a circle, each with its outer triangle
/// facing outward and all other clusters in its outer face.
pub fn reference_layout(inst: &ClusteredInstance) -> Result<Drawing> {
    let k = inst.cluster_size();
    let m = inst.cluster_count();
    let (local, _) = cluster_layout(k, inst.family.style());
    let radius = BigRational::from_integer(BigInt::from(m.max(3) as i64));
    // Half-width 1/2 and height 4: the apex chord to the next cluster stays
    // outside the base chord as long as height / half-width > tan(pi / m).
    let half = q(1, 2);
    let stretch = BigRational::from_integer(BigInt::from(2));
    let mut positions = vec![Point::from_ints(0, 0); k * m];
    for c in 0..m {
        let theta = std::f64::consts::TAU * (c as f64 + 0.25) / m as f64;
        let (cos, sin) = unit_vector(theta);
        let (cx, cy) = (&radius * &cos, &radius * &sin);
        // tangent (-sin, cos), outward normal (cos, sin)
        for (j, p) in local.iter().enumerate() {
            let along = (&p.x - BigRational::one()) * &half;
            let out = &p.y * &stretch;
            let x = &cx - &along * &sin + &out * &cos;
            let y = &cy + &along * &cos + &out * &sin;
            positions[inst.clusters[c][j]] = Point::new(x, y);
        }
    }
    Ok(Drawing::new(positions))
}

/// The graph with the rotation system of its defining embedding.
pub fn reference_embedding(inst: &ClusteredInstance) -> Result<PlanarGraph> {
    let layout = reference_layout(inst)?;
    if is_plane_drawing(&inst.graph, &layout) {
        let rotation = inst.graph.rotation_from_drawing(layout.positions());
        inst.graph.clone().with_rotation(rotation)
    } else {
        planar_embedding(&inst.graph)
    }
}

/// Places member `j` of cluster `c` at boundary point `c + j * m`.
pub fn assign_bad_drawing(inst: &ClusteredInstance, points: &ConvexPointSet) -> Result<Drawing> {
    let n = inst.vertex_count();
    if points.len() != n {
        return Err(Error::Validation(format!(
            "instance has {n} vertices but {} points were supplied",
            points.len()
        )));
    }
    let m = inst.cluster_count();
    let mut positions = vec![Point::from_ints(0, 0); n];
    for (c, members) in inst.clusters.iter().enumerate() {
        for (j, &v) in members.iter().enumerate() {
            positions[v] = points.points()[c + j * m].clone();
        }
    }
    Ok(Drawing::new(positions))
}
