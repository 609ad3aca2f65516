//! Planarity Game sessions.
//!
//! A session starts from a tangled drawing. Each move shifts one vertex to a
//! free point; the game is solved once the drawing is plane. The crossing
//! count is maintained incrementally by re-testing only the pairs that
//! involve the moved vertex or its incident edges.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{count_fixed, default_certificate, BoundCertificate};
use crate::construction::{standard_instance, ClusteredInstance, Family};
use crate::drawing::{count_crossings, edges_cross, vertex_on_edge, Drawing};
use crate::embed::{extract_moves, untangle_fixing_face, Move, MoveSequence};
use crate::error::{Error, Result};
use crate::generate::scrambled_triangulation;
use crate::geometry::{IntFrame, Point};
use crate::graph::PlanarGraph;

/// Where a game's graph and starting drawing come from.
#[derive(Clone, Debug)]
pub enum GameSource {
    /// A clustered instance with its bad drawing; a certificate is attached
    /// when the instance is a standard one.
    Clustered(ClusteredInstance),
    /// The standard instance of a family.
    Generated(Family),
    /// A random triangulation with shuffled positions.
    Scrambled { n: usize, seed: u64 },
    /// Any graph with a drawing; no certificate.
    Plain { graph: PlanarGraph, drawing: Drawing },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InProgress,
    Solved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveOutcome {
    pub vertex: usize,
    pub crossings_before: usize,
    pub crossings_after: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScoreReport {
    pub moves_used: usize,
    /// Vertices currently at their starting position.
    pub fixed_count: usize,
    pub certified_moved_lower: Option<usize>,
    pub certified_fixed_upper: Option<usize>,
    pub solved: bool,
    /// For solved sessions with a certificate: whether the result respects
    /// it. A `false` here would contradict the certificate.
    pub consistent_with_bound: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct GameState {
    graph: PlanarGraph,
    start: Drawing,
    current: Drawing,
    history: MoveSequence,
    bound: Option<BoundCertificate>,
    label: String,
    crossings: usize,
    /// Target of the last solver run, reused while it stays within reach.
    solver_target: Option<Drawing>,
}

pub fn new_game(source: GameSource) -> Result<GameState> {
    match source {
        GameSource::Generated(family) => {
            let inst = standard_instance(family)?;
            from_instance(inst)
        }
        GameSource::Clustered(inst) => from_instance(inst),
        GameSource::Scrambled { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = scrambled_triangulation(n, &mut rng)?;
            GameState::build(t.graph, t.drawing, None, format!("scrambled({n},{seed})"))
        }
        GameSource::Plain { graph, drawing } => GameState::build(graph, drawing, None, "custom".into()),
    }
}

fn from_instance(inst: ClusteredInstance) -> Result<GameState> {
    let bound = default_certificate(&inst).ok();
    let drawing = inst.bad_drawing()?.clone();
    let label = inst.family.label();
    GameState::build(inst.graph, drawing, bound, label)
}

impl GameState {
    fn build(graph: PlanarGraph, start: Drawing, bound: Option<BoundCertificate>, label: String) -> Result<Self> {
        start.check_covers(&graph).map_err(|e| Error::Input(e.to_string()))?;
        if !start.is_injective() {
            return Err(Error::Input("starting drawing puts two vertices on one point".into()));
        }
        let crossings = count_crossings(&graph, &start);
        Ok(GameState {
            graph,
            current: start.clone(),
            start,
            history: MoveSequence::new(),
            bound,
            label,
            crossings,
            solver_target: None,
        })
    }

    /// Rebuilds a session by replaying `history` from a fresh game.
    pub fn replay(source: GameSource, history: &MoveSequence) -> Result<Self> {
        let mut g = new_game(source)?;
        for mv in history.moves() {
            g.apply_move(mv.vertex, mv.to.clone())?;
        }
        Ok(g)
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn start(&self) -> &Drawing {
        &self.start
    }

    pub fn current(&self) -> &Drawing {
        &self.current
    }

    pub fn history(&self) -> &MoveSequence {
        &self.history
    }

    pub fn bound(&self) -> Option<&BoundCertificate> {
        self.bound.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn status(&self) -> Status {
        if self.crossings == 0 {
            Status::Solved
        } else {
            Status::InProgress
        }
    }

    pub fn is_solved(&self) -> bool {
        self.status() == Status::Solved
    }

    /// Crossings that involve `v`: edge pairs with at least one edge at
    /// `v`, `v` lying on other edges, and other vertices lying on edges at
    /// `v`.
    fn crossings_at(&self, v: usize) -> usize {
        let frame = IntFrame::new(self.current.positions());
        let edges = self.graph.edges();
        let incident: Vec<usize> = self
            .graph
            .neighbors(v)
            .iter()
            .map(|&w| self.graph.edge_index(v, w).unwrap())
            .collect();
        let mut count = 0;
        for &i in &incident {
            for (j, &f) in edges.iter().enumerate() {
                let f_incident = f.0 == v || f.1 == v;
                if (f_incident && j <= i) || j == i {
                    continue;
                }
                if edges_cross(&frame, edges[i], f) {
                    count += 1;
                }
            }
            for w in 0..self.graph.vertex_count() {
                if vertex_on_edge(&frame, w, edges[i]) {
                    count += 1;
                }
            }
        }
        count + edges.iter().filter(|&&e| vertex_on_edge(&frame, v, e)).count()
    }

    /// Moves `v` to `p`. Occupied destinations, including `v`'s own
    /// position, are rejected.
    pub fn apply_move(&mut self, v: usize, p: Point) -> Result<MoveOutcome> {
        if v >= self.graph.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
        if let Some(w) = self.current.occupant(&p) {
            return Err(Error::Occupied(w));
        }
        let before = self.crossings;
        let local_before = self.crossings_at(v);
        self.current.set(v, p.clone());
        let local_after = self.crossings_at(v);
        self.crossings = before - local_before + local_after;
        self.history.push(v, p);
        Ok(MoveOutcome {
            vertex: v,
            crossings_before: before,
            crossings_after: self.crossings,
            status: self.status(),
        })
    }

    /// Takes back the last move; `None` when there is nothing to undo.
    pub fn undo(&mut self) -> Result<Option<Move>> {
        let Some(last) = self.history.pop() else {
            return Ok(None);
        };
        self.current = self.history.apply_to(&self.start)?;
        self.crossings = count_crossings(&self.graph, &self.current);
        Ok(Some(last))
    }

    /// Remaining moves of the solver's plan from the current drawing.
    ///
    /// The face-fixing redrawing of the starting drawing is reused while at
    /// most `n - 3` vertices are away from it; otherwise the solver is rerun
    /// on the current drawing.
    pub fn solver_moves(&mut self) -> Result<MoveSequence> {
        if self.is_solved() {
            return Ok(MoveSequence::new());
        }
        let n = self.graph.vertex_count();
        if let Some(target) = &self.solver_target {
            let differing = (0..n).filter(|&v| self.current.position(v) != target.position(v)).count();
            if differing + 3 <= n {
                return extract_moves(&self.current, target);
            }
        }
        let base = if self.solver_target.is_none() { &self.start } else { &self.current };
        let target = untangle_fixing_face(&self.graph, base)?.drawing;
        let moves = extract_moves(&self.current, &target)?;
        self.solver_target = Some(target);
        Ok(moves)
    }

    /// Next move of the solver's plan; `None` once solved.
    pub fn hint(&mut self) -> Result<Option<Move>> {
        Ok(self.solver_moves()?.moves().first().cloned())
    }

    pub fn score(&self) -> ScoreReport {
        let solved = self.is_solved();
        let moves_used = self.history.len();
        let fixed_count = count_fixed(&self.start, &self.current)
            .map(|r| r.fixed_count)
            .unwrap_or(0);
        let lower = self.bound.as_ref().map(|b| b.certified_moved_lower);
        let upper = self.bound.as_ref().map(|b| b.certified_fixed_upper);
        let consistent = match (&self.bound, solved) {
            (Some(b), true) => Some(moves_used >= b.certified_moved_lower && fixed_count <= b.certified_fixed_upper),
            _ => None,
        };
        ScoreReport {
            moves_used,
            fixed_count,
            certified_moved_lower: lower,
            certified_fixed_upper: upper,
            solved,
            consistent_with_bound: consistent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::ClusterStyle;
    use crate::drawing::is_plane_drawing;

    fn square3() -> GameState {
        new_game(GameSource::Generated(Family::Square { k: 3, style: ClusterStyle::Stacked })).unwrap()
    }

    #[test]
    fn fresh_adversarial_game() {
        let g = square3();
        assert_eq!(g.status(), Status::InProgress);
        assert!(g.crossings() > 0);
        assert_eq!(g.bound().unwrap().certified_fixed_upper, 7);
        let s = g.score();
        assert!(!s.solved);
        assert_eq!(s.certified_fixed_upper, Some(7));
        assert_eq!(s.consistent_with_bound, None);
    }

    #[test]
    fn plane_start_is_solved() {
        let graph = PlanarGraph::complete(4);
        let drawing = Drawing::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(0, 4),
            Point::from_ints(1, 1),
        ]);
        let mut g = new_game(GameSource::Plain { graph, drawing }).unwrap();
        assert!(g.is_solved());
        assert_eq!(g.score().moves_used, 0);
        assert_eq!(g.score().certified_moved_lower, None);
        assert_eq!(g.hint().unwrap(), None);
    }

    #[test]
    fn k4_single_move_solves() {
        let graph = PlanarGraph::complete(4);
        let drawing = Drawing::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(4, 4),
            Point::from_ints(0, 4),
        ]);
        let mut g = new_game(GameSource::Plain { graph, drawing }).unwrap();
        assert_eq!(g.crossings(), 1);
        let out = g.apply_move(2, Point::from_ints(1, 1)).unwrap();
        assert_eq!((out.crossings_before, out.crossings_after), (1, 0));
        assert_eq!(out.status, Status::Solved);
    }

    #[test]
    fn occupied_and_unknown_rejected() {
        let mut g = square3();
        let own = g.current().position(0).clone();
        assert_eq!(g.apply_move(0, own), Err(Error::Occupied(0)));
        let other = g.current().position(1).clone();
        assert_eq!(g.apply_move(0, other), Err(Error::Occupied(1)));
        assert_eq!(g.apply_move(99, Point::from_ints(-1, -1)), Err(Error::UnknownVertex(99)));
        assert!(g.history().is_empty());
    }

    #[test]
    fn undo_is_exact_inverse() {
        let mut g = square3();
        let before = (g.current().clone(), g.crossings());
        g.apply_move(4, Point::from_fractions(7, 3, 5, 2).unwrap()).unwrap();
        assert_eq!(g.undo().unwrap().unwrap().vertex, 4);
        assert_eq!((g.current().clone(), g.crossings()), before);
        assert_eq!(g.undo().unwrap(), None);
    }

    #[test]
    fn solver_plan_solves_and_respects_bound() {
        let mut g = new_game(GameSource::Generated(Family::Chain { k: 3, s: 2, style: ClusterStyle::Stacked })).unwrap();
        let plan = g.solver_moves().unwrap();
        let touched: std::collections::BTreeSet<usize> = plan.moves().iter().map(|m| m.vertex).collect();
        assert!(touched.len() <= 15 - 3);
        while let Some(mv) = g.hint().unwrap() {
            g.apply_move(mv.vertex, mv.to).unwrap();
        }
        assert!(is_plane_drawing(g.graph(), g.current()));
        let s = g.score();
        assert!(s.solved);
        assert!(s.moves_used >= 4);
        assert_eq!(s.consistent_with_bound, Some(true));
    }

    #[test]
    fn hints_are_deterministic_and_shrink_the_plan() {
        let mut g = square3();
        let first = g.hint().unwrap().unwrap();
        assert_eq!(g.hint().unwrap().unwrap(), first);
        let remaining = g.solver_moves().unwrap().len();
        assert!(remaining <= 6 + 2);
        g.apply_move(first.vertex, first.to).unwrap();
        assert_eq!(g.solver_moves().unwrap().len(), remaining - 1);
    }

    #[test]
    fn replay_reconstructs_current() {
        let source = GameSource::Scrambled { n: 12, seed: 7 };
        let mut g = new_game(source.clone()).unwrap();
        for i in 0..5 {
            let v = (i * 5) % 12;
            g.apply_move(v, Point::from_fractions(-(i as i64) - 1, 3, 1000 + i as i64, 7).unwrap())
                .unwrap();
        }
        let again = GameState::replay(source, g.history()).unwrap();
        assert_eq!(again.current(), g.current());
        assert_eq!(again.crossings(), g.crossings());
    }

    #[test]
    fn incremental_count_matches_recount_on_a_small_grid() {
        use rand::Rng;
        // a 7x7 grid forces collinear and vertex-on-edge situations
        let mut g = square3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let v = rng.random_range(0..9);
            let p = Point::from_ints(rng.random_range(0..7), rng.random_range(0..7));
            if g.apply_move(v, p).is_ok() {
                assert_eq!(g.crossings(), count_crossings(g.graph(), g.current()));
            }
        }
    }

    #[test]
    fn scrambled_is_seeded() {
        let a = new_game(GameSource::Scrambled { n: 12, seed: 7 }).unwrap();
        let b = new_game(GameSource::Scrambled { n: 12, seed: 7 }).unwrap();
        assert_eq!(a.start(), b.start());
        assert!(a.bound().is_none());
    }
}
