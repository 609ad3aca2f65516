//! Crossing-free redrawings: barycentric embeddings, the face-fixing
//! untangler and conversion of a redrawing into single-vertex moves.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::bounds::{count_fixed, FixReport};
use crate::drawing::{is_plane_drawing, Drawing};
use crate::error::{Error, Result};
use crate::geometry::{orient, strict_convex_orientation, Orientation, Point};
use crate::graph::{is_connected_without, is_planar, is_three_connected, planar_embedding, PlanarGraph};

/// One move of the game: vertex `vertex` jumps to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub vertex: usize,
    pub to: Point,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveSequence {
    moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence::default()
    }

    pub fn from_moves(moves: Vec<Move>) -> Self {
        MoveSequence { moves }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, vertex: usize, to: Point) {
        self.moves.push(Move { vertex, to });
    }

    pub fn pop(&mut self) -> Option<Move> {
        self.moves.pop()
    }

    /// Replays the moves on `start`, rejecting any move onto an occupied
    /// point.
    pub fn apply_to(&self, start: &Drawing) -> Result<Drawing> {
        let mut d = start.clone();
        let mut occupied: HashMap<Point, usize> =
            d.positions().iter().cloned().enumerate().map(|(v, p)| (p, v)).collect();
        for mv in &self.moves {
            if mv.vertex >= d.len() {
                return Err(Error::UnknownVertex(mv.vertex));
            }
            if let Some(&w) = occupied.get(&mv.to) {
                return Err(Error::Occupied(w));
            }
            occupied.remove(d.position(mv.vertex));
            occupied.insert(mv.to.clone(), mv.vertex);
            d.set(mv.vertex, mv.to.clone());
        }
        Ok(d)
    }
}

/// Whether `cycle` bounds a face in the (unique up to reflection) embedding
/// of a 3-connected planar graph: an induced cycle whose removal leaves the
/// rest connected.
pub fn is_peripheral_cycle(g: &PlanarGraph, cycle: &[usize]) -> bool {
    let len = cycle.len();
    if len < 3 || cycle.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let set: HashSet<usize> = cycle.iter().copied().collect();
    if set.len() != len {
        return false;
    }
    if (0..len).any(|i| !g.has_edge(cycle[i], cycle[(i + 1) % len])) {
        return false;
    }
    let induced = g.edges().iter().filter(|(u, v)| set.contains(u) && set.contains(v)).count();
    induced == len && is_connected_without(g, cycle)
}

/// Tutte embedding with unit weights: the outer face is pinned to
/// `outer_positions` and every other vertex sits at the average of its
/// neighbours.
pub fn barycentric_embed(g: &PlanarGraph, outer_face: &[usize], outer_positions: &[Point]) -> Result<Drawing> {
    let weights = vec![1u64; g.edge_count()];
    weighted_barycentric_embed(g, outer_face, outer_positions, &weights)
}

/// Tutte embedding with positive edge weights (indexed like `g.edges()`):
/// every inner vertex is the weighted average of its neighbours.
pub fn weighted_barycentric_embed(
    g: &PlanarGraph,
    outer_face: &[usize],
    outer_positions: &[Point],
    weights: &[u64],
) -> Result<Drawing> {
    let n = g.vertex_count();
    if outer_face.len() != outer_positions.len() {
        return Err(Error::Validation(format!(
            "{} outer vertices but {} positions",
            outer_face.len(),
            outer_positions.len()
        )));
    }
    if weights.len() != g.edge_count() || weights.contains(&0) {
        return Err(Error::Validation("need one positive weight per edge".into()));
    }
    if strict_convex_orientation(outer_positions).is_none() {
        return Err(Error::Validation("outer positions are not strictly convex".into()));
    }
    if n >= 4 && !(is_planar(g) && is_three_connected(g)?) {
        return Err(Error::Validation("graph must be planar and 3-connected".into()));
    }
    if !is_peripheral_cycle(g, outer_face) {
        return Err(Error::Validation("outer face is not a face of the graph".into()));
    }

    let mut slot = vec![usize::MAX; n];
    let mut positions: Vec<Option<Point>> = vec![None; n];
    for (v, p) in outer_face.iter().zip(outer_positions) {
        positions[*v] = Some(p.clone());
    }
    let inner: Vec<usize> = (0..n).filter(|&v| positions[v].is_none()).collect();
    for (i, &v) in inner.iter().enumerate() {
        slot[v] = i;
    }

    if !inner.is_empty() {
        // Integer right-hand sides: scale the pinned coordinates by the
        // common denominator and divide it back out at the end.
        let denom = outer_positions
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.x.denom()).lcm(p.y.denom()));
        let scaled = |r: &BigRational| r.numer() * (&denom / r.denom());
        let size = inner.len();
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); size + 2]; size];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let w = BigInt::from(weights[e]);
            for (a, b) in [(u, v), (v, u)] {
                if slot[a] == usize::MAX {
                    continue;
                }
                let row = &mut rows[slot[a]];
                row[slot[a]] += &w;
                match &positions[b] {
                    Some(p) => {
                        row[size] += &w * scaled(&p.x);
                        row[size + 1] += &w * scaled(&p.y);
                    }
                    None => row[slot[b]] -= &w,
                }
            }
        }
        let solution = solve_bareiss(rows)
            .ok_or_else(|| Error::Internal("barycentric system is singular".into()))?;
        let denom = BigRational::from_integer(denom);
        for (i, (x, y)) in solution.into_iter().enumerate() {
            positions[inner[i]] = Some(Point::new(x / &denom, y / &denom));
        }
    }

    let drawing = Drawing::new(positions.into_iter().map(Option::unwrap).collect());
    if !is_plane_drawing(g, &drawing) {
        return Err(Error::Internal("barycentric embedding is not plane".into()));
    }
    Ok(drawing)
}

/// Fraction-free Gaussian elimination on an augmented system with two
/// right-hand-side columns; `None` when singular.
fn solve_bareiss(mut a: Vec<Vec<BigInt>>) -> Option<Vec<(BigRational, BigRational)>> {
    let n = a.len();
    let width = n + 2;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, swap);
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k].is_zero() {
                // Still needs the division by `prev` to stay on the Bareiss
                // lattice.
                for x in &mut row[k + 1..width] {
                    *x = &*x * &pivot_row[k] / &prev;
                }
                continue;
            }
            for j in k + 1..width {
                row[j] = (&row[j] * &pivot_row[k] - &row[k] * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut xs: Vec<(BigRational, BigRational)> = vec![(BigRational::zero(), BigRational::zero()); n];
    for i in (0..n).rev() {
        let mut bx = BigRational::from_integer(a[i][n].clone());
        let mut by = BigRational::from_integer(a[i][n + 1].clone());
        for j in i + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let c = BigRational::from_integer(a[i][j].clone());
            bx -= &c * &xs[j].0;
            by -= &c * &xs[j].1;
        }
        let d = BigRational::from_integer(a[i][i].clone());
        if d.is_zero() {
            return None;
        }
        xs[i] = (bx / &d, by / &d);
    }
    Some(xs)
}

/// Result of [`untangle_fixing_face`].
#[derive(Clone, Debug)]
pub struct Untangling {
    pub drawing: Drawing,
    pub report: FixReport,
    /// The pinned outer face, in the order its positions were assigned.
    pub outer_face: Vec<usize>,
    /// True when no facial triangle had non-collinear bad positions and only
    /// one edge of a face could be kept in place.
    pub fallback: bool,
}

fn embedded(g: &PlanarGraph) -> Result<PlanarGraph> {
    if g.rotation().is_some() && g.euler_check()? {
        return Ok(g.clone());
    }
    planar_embedding(g)
}

/// Redraws `g` without crossings while keeping a facial triangle of `bad`
/// in place, so at most `n - 3` vertices move.
///
/// The triangle is the lexicographically smallest sorted vertex triple
/// among facial triangles whose bad positions are not collinear. A Tutte
/// embedding with that triangle outside realizes one of the two mirror
/// images of the embedding, whichever matches the triangle's orientation.
pub fn untangle_fixing_face(g: &PlanarGraph, bad: &Drawing) -> Result<Untangling> {
    bad.check_covers(g)?;
    if !bad.is_injective() {
        return Err(Error::Validation("bad drawing is not injective".into()));
    }
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::UndefinedInput("need at least 3 vertices".into()));
    }
    if n == 3 {
        if g.edge_count() != 3 {
            return Err(Error::Validation("graph must be planar and 3-connected".into()));
        }
        let ps = bad.positions();
        if orient(&ps[0], &ps[1], &ps[2]) != Orientation::Collinear {
            let report = count_fixed(bad, bad)?;
            return Ok(Untangling {
                drawing: bad.clone(),
                report,
                outer_face: vec![0, 1, 2],
                fallback: false,
            });
        }
        return fallback_untangle(g, bad, vec![0, 1, 2]);
    }
    if !(is_planar(g) && is_three_connected(g)?) {
        return Err(Error::Validation("graph must be planar and 3-connected".into()));
    }
    let faces = embedded(g)?.faces()?;
    let p = bad.positions();
    let best = faces
        .iter()
        .filter(|f| f.len() == 3 && orient(&p[f[0]], &p[f[1]], &p[f[2]]) != Orientation::Collinear)
        .min_by_key(|f| {
            let mut t = [f[0], f[1], f[2]];
            t.sort_unstable();
            t
        });
    match best {
        Some(face) => {
            let outer: Vec<usize> = face.clone();
            let pos: Vec<Point> = outer.iter().map(|&v| p[v].clone()).collect();
            let drawing = barycentric_embed(g, &outer, &pos)?;
            let report = count_fixed(bad, &drawing)?;
            Ok(Untangling {
                drawing,
                report,
                outer_face: outer,
                fallback: false,
            })
        }
        None => {
            let face = faces
                .iter()
                .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
                .cloned()
                .ok_or_else(|| Error::Internal("embedding has no faces".into()))?;
            fallback_untangle(g, bad, face)
        }
    }
}

/// Keeps the first edge of `face` in place and puts the other face
/// vertices on a parabolic arc to its left.
fn fallback_untangle(g: &PlanarGraph, bad: &Drawing, face: Vec<usize>) -> Result<Untangling> {
    let (a, b) = (bad.position(face[0]), bad.position(face[1]));
    let (dx, dy) = (&b.x - &a.x, &b.y - &a.y);
    let rest = face.len() - 2;
    let steps = BigRational::from_integer(BigInt::from(rest as i64 + 1));
    let one = BigRational::one();
    let mut pos = vec![a.clone(), b.clone()];
    for i in 1..=rest {
        // t runs from b back towards a; bulge t (1 - t) along the left normal.
        let t = BigRational::from_integer(BigInt::from(i as i64)) / &steps;
        let bulge = &t * (&one - &t);
        let x = &b.x - &dx * &t - &dy * &bulge;
        let y = &b.y - &dy * &t + &dx * &bulge;
        pos.push(Point::new(x, y));
    }
    let drawing = barycentric_embed(g, &face, &pos)?;
    let report = count_fixed(bad, &drawing)?;
    Ok(Untangling {
        drawing,
        report,
        outer_face: face,
        fallback: true,
    })
}

/// Turns a redrawing into game moves: only vertices whose position differs
/// are touched, and no move lands on an occupied point. When every pending
/// destination is blocked the lowest pending vertex detours through a free
/// staging point, so a swap costs three moves.
pub fn extract_moves(start: &Drawing, target: &Drawing) -> Result<MoveSequence> {
    if start.len() != target.len() {
        return Err(Error::Validation(format!(
            "drawings cover {} and {} vertices",
            start.len(),
            target.len()
        )));
    }
    if !target.is_injective() {
        return Err(Error::Validation("target drawing is not injective".into()));
    }
    if !start.is_injective() {
        return Err(Error::Validation("start drawing is not injective".into()));
    }
    let mut current = start.clone();
    let mut occupied: HashMap<Point, usize> =
        start.positions().iter().cloned().enumerate().map(|(v, p)| (p, v)).collect();
    let mut pending: Vec<usize> = (0..start.len())
        .filter(|&v| start.position(v) != target.position(v))
        .collect();
    let mut moves = MoveSequence::new();
    let staging_x = start
        .positions()
        .iter()
        .chain(target.positions())
        .map(|p| p.x.clone())
        .max()
        .unwrap_or_else(BigRational::zero)
        + BigRational::one();
    let targets: HashSet<&Point> = target.positions().iter().collect();

    let mut relocate = |v: usize, to: Point, current: &mut Drawing, moves: &mut MoveSequence| {
        occupied.remove(current.position(v));
        occupied.insert(to.clone(), v);
        current.set(v, to.clone());
        moves.push(v, to);
    };

    while !pending.is_empty() {
        let free = pending
            .iter()
            .position(|&v| !occupied_at(&current, target.position(v), v));
        match free {
            Some(i) => {
                let v = pending.remove(i);
                relocate(v, target.position(v).clone(), &mut current, &mut moves);
            }
            None => {
                let v = pending[0];
                let mut j = 0i64;
                let stage = loop {
                    let cand = Point::new(staging_x.clone(), BigRational::from_integer(j.into()));
                    if !targets.contains(&cand) && current.occupant(&cand).is_none() {
                        break cand;
                    }
                    j += 1;
                };
                relocate(v, stage, &mut current, &mut moves);
            }
        }
    }
    Ok(moves)
}

fn occupied_at(current: &Drawing, p: &Point, mover: usize) -> bool {
    matches!(current.occupant(p), Some(w) if w != mover)
}

/// Randomized plane redrawings of one graph: a random face of its
/// embedding is pinned either at its bad positions (when those are convex
/// in face order) or on a random convex polygon, and edges get random
/// positive weights.
#[derive(Clone, Debug)]
pub struct RandomRedrawer {
    graph: PlanarGraph,
    faces: Vec<Vec<usize>>,
}

impl RandomRedrawer {
    pub fn new(g: &PlanarGraph) -> Result<Self> {
        let faces = embedded(g)?.faces()?;
        Ok(RandomRedrawer {
            graph: g.clone(),
            faces,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, bad: &Drawing, rng: &mut R) -> Result<Drawing> {
        let face = self
            .faces
            .choose(rng)
            .ok_or_else(|| Error::Internal("embedding has no faces".into()))?;
        let at_bad: Vec<Point> = face.iter().map(|&v| bad.position(v).clone()).collect();
        let outer = if rng.random_bool(0.5) && strict_convex_orientation(&at_bad).is_some() {
            at_bad
        } else {
            random_convex_polygon(face.len(), rng)
        };
        let weights: Vec<u64> = (0..self.graph.edge_count()).map(|_| rng.random_range(1..=8)).collect();
        weighted_barycentric_embed(&self.graph, face, &outer, &weights)
    }
}

/// `len` distinct integer points on a random parabola `y = a (x - c)^2`,
/// counterclockwise.
fn random_convex_polygon<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Point> {
    let a: i64 = rng.random_range(1..=3);
    let c: i64 = rng.random_range(-40..=40);
    let mut xs: Vec<i64> = (-60..=60).collect();
    xs.shuffle(rng);
    xs.truncate(len);
    xs.sort_unstable();
    xs.into_iter().map(|x| Point::from_ints(x, a * (x - c) * (x - c))).collect()
}
