//! Fixed-vertex accounting and certified bounds for the standard instances.
//!
//! Two certificates are available. The circle-lemma certificate applies to
//! every standard instance: the fixed vertices, labelled by cluster and read
//! along the convex curve, form an xyxy-free subsequence of `S(m + 2, k)`, so
//! at most `m + k + 1` vertices stay put. The persistence certificate is
//! specific to the chain family: at most `k - 1` clusters other than the last
//! keep two or more vertices, so at least `s (k - 1)` vertices move.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::construction::{ClusteredInstance, Family};
use crate::drawing::{is_plane_drawing, Drawing};
use crate::error::{Error, Result};
use crate::geometry::{ccw_angle_cmp, strict_convex_orientation, IntFrame, Orientation, Point};
use crate::sequences::{make_block_sequence, BlockParams, CircularSequence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixReport {
    pub fixed_count: usize,
    pub moved_count: usize,
    pub fixed_vertices: BTreeSet<usize>,
}

/// Compares two drawings vertex by vertex with exact equality.
pub fn count_fixed(before: &Drawing, after: &Drawing) -> Result<FixReport> {
    if before.len() != after.len() {
        return Err(Error::Validation(format!(
            "drawings cover {} and {} vertices",
            before.len(),
            after.len()
        )));
    }
    let fixed_vertices: BTreeSet<usize> = (0..before.len())
        .filter(|&v| before.position(v) == after.position(v))
        .collect();
    Ok(FixReport {
        fixed_count: fixed_vertices.len(),
        moved_count: before.len() - fixed_vertices.len(),
        fixed_vertices,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    CircleLemma,
    Persistence,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    pub family: Family,
    pub n: usize,
    pub label_sequence: CircularSequence,
    pub certified_fixed_upper: usize,
    pub certified_moved_lower: usize,
    pub method: BoundMethod,
}

/// Boundary order of a point set in strictly convex position:
/// counterclockwise, starting from the lexicographically smallest point.
fn convex_boundary_order(points: &[Point]) -> Result<Vec<usize>> {
    let n = points.len();
    if n < 3 {
        return Err(Error::Validation("need at least 3 points for a convex boundary".into()));
    }
    // A point strictly inside the hull: the centroid of three hull points.
    let three = [0usize, 1, 2];
    let inner = {
        let sx = three.iter().fold(num_rational::BigRational::from_integer(0.into()), |acc, &i| acc + &points[i].x);
        let sy = three.iter().fold(num_rational::BigRational::from_integer(0.into()), |acc, &i| acc + &points[i].y);
        let three_r = num_rational::BigRational::from_integer(3.into());
        Point::new(sx / &three_r, sy / three_r)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ccw_angle_cmp(&inner, &points[a], &points[b]));
    let start = (0..n).min_by(|&a, &b| points[order[a]].cmp(&points[order[b]])).unwrap();
    order.rotate_left(start);
    let ordered: Vec<Point> = order.iter().map(|&i| points[i].clone()).collect();
    if strict_convex_orientation(&ordered) != Some(Orientation::CounterClockwise) {
        return Err(Error::Validation("drawing is not on a strictly convex point set".into()));
    }
    Ok(order)
}

/// Cluster labels (1-based) of the bad drawing's vertices in boundary order.
pub fn label_sequence(inst: &ClusteredInstance) -> Result<CircularSequence> {
    let d = inst.bad_drawing()?;
    let order = convex_boundary_order(d.positions())?;
    let of = inst.cluster_of();
    Ok(CircularSequence::new(order.iter().map(|&v| of[v] as u32 + 1).collect()))
}

/// Clusters `1..m-1` (1-based, the last cluster excluded) that keep at
/// least two vertices at their bad-drawing positions.
pub fn persistent_clusters(inst: &ClusteredInstance, after: &Drawing) -> Result<BTreeSet<usize>> {
    let report = count_fixed(inst.bad_drawing()?, after)?;
    let m = inst.cluster_count();
    Ok(inst.clusters[..m - 1]
        .iter()
        .enumerate()
        .filter(|(_, members)| members.iter().filter(|v| report.fixed_vertices.contains(v)).count() >= 2)
        .map(|(c, _)| c + 1)
        .collect())
}

/// Rejects anything other than a builder-made instance with its
/// interleaved drawing on a convex point set.
fn require_standard(inst: &ClusteredInstance) -> Result<CircularSequence> {
    if !inst.matches_builder() {
        return Err(Error::UnsupportedInstance(
            "graph or partition differs from the standard builder".into(),
        ));
    }
    let labels = label_sequence(inst).map_err(|e| Error::UnsupportedInstance(e.to_string()))?;
    let expected = make_block_sequence(BlockParams::new(inst.cluster_count(), inst.cluster_size())?);
    if labels != expected {
        return Err(Error::UnsupportedInstance(
            "bad drawing does not interleave clusters along the convex curve".into(),
        ));
    }
    Ok(labels)
}

pub fn certified_fixed_upper_bound(inst: &ClusteredInstance, method: BoundMethod) -> Result<BoundCertificate> {
    let label_sequence = require_standard(inst)?;
    let n = inst.vertex_count();
    let (k, m) = (inst.cluster_size(), inst.cluster_count());
    let (fixed, moved) = match (method, inst.family) {
        (BoundMethod::CircleLemma, _) => {
            // |S| < (m + 2) + k for xyxy-free subsequences of S(m + 2, k)
            let fixed = m + k + 1;
            (fixed, n.saturating_sub(fixed))
        }
        (BoundMethod::Persistence, Family::Chain { k, s, .. }) => {
            let moved = s * (k - 1);
            (n - moved, moved)
        }
        (BoundMethod::Persistence, Family::Square { .. }) => {
            return Err(Error::UnsupportedInstance(
                "the persistence certificate only covers the chain family".into(),
            ))
        }
    };
    Ok(BoundCertificate {
        family: inst.family,
        n,
        label_sequence,
        certified_fixed_upper: fixed,
        certified_moved_lower: moved,
        method,
    })
}

/// The certificate a game or report shows by default: persistence for the
/// chain family, the circle lemma for the square family.
pub fn default_certificate(inst: &ClusteredInstance) -> Result<BoundCertificate> {
    let method = match inst.family {
        Family::Chain { .. } => BoundMethod::Persistence,
        Family::Square { .. } => BoundMethod::CircleLemma,
    };
    certified_fixed_upper_bound(inst, method)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub s: usize,
    pub n: usize,
    /// `s (k - 1)`, the persistence lower bound on moved vertices.
    pub moved_lower: usize,
    /// `s + 2k + 1`, the circle-lemma upper bound on fixed vertices.
    pub fixed_upper: usize,
}

pub fn bound_row(k: usize, s: usize) -> Result<BoundRow> {
    if k == 0 || s == 0 {
        return Err(Error::UndefinedInput(format!("bound rows need k, s >= 1, got k={k}, s={s}")));
    }
    Ok(BoundRow {
        k,
        s,
        n: k * (s + k),
        moved_lower: s * (k - 1),
        fixed_upper: s + 2 * k + 1,
    })
}

pub fn bound_table(kmax: usize, smax: usize) -> Vec<BoundRow> {
    (1..=kmax)
        .flat_map(|k| (1..=smax).map(move |s| bound_row(k, s).unwrap()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub fix: FixReport,
    pub plane: bool,
    pub certificate: BoundCertificate,
    pub persistent_clusters: Option<BTreeSet<usize>>,
    pub pass: bool,
}

/// Checks a redrawing against the circle-lemma certificate and, for the
/// chain family, the persistent-cluster bound.
pub fn verify_redrawing(inst: &ClusteredInstance, redraw: &Drawing) -> Result<VerifyReport> {
    redraw.check_covers(&inst.graph)?;
    let certificate = certified_fixed_upper_bound(inst, BoundMethod::CircleLemma)?;
    let fix = count_fixed(inst.bad_drawing()?, redraw)?;
    let plane = is_plane_drawing(&inst.graph, redraw);
    let persistent = match inst.family {
        Family::Chain { .. } => Some(persistent_clusters(inst, redraw)?),
        Family::Square { .. } => None,
    };
    let k = inst.cluster_size();
    let pass = plane
        && fix.fixed_count <= certificate.certified_fixed_upper
        && persistent.as_ref().is_none_or(|p| p.len() < k);
    Ok(VerifyReport {
        fix,
        plane,
        certificate,
        persistent_clusters: persistent,
        pass,
    })
}

/// Pairs of clusters (1-based) whose convex hulls meet in `drawing`.
///
/// Diagnostic only: it shows how the cluster regions of a redrawing sit
/// relative to each other and is not part of any certificate.
pub fn intersecting_cluster_hulls(inst: &ClusteredInstance, drawing: &Drawing) -> Vec<(usize, usize)> {
    let hulls: Vec<Vec<Point>> = inst
        .clusters
        .iter()
        .map(|members| convex_hull(members.iter().map(|&v| drawing.position(v).clone()).collect()))
        .collect();
    let mut out = Vec::new();
    for a in 0..hulls.len() {
        for b in a + 1..hulls.len() {
            if hulls_meet(&hulls[a], &hulls[b]) {
                out.push((a + 1, b + 1));
            }
        }
    }
    out
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |a: &Point, b: &Point, c: &Point| crate::geometry::orient(a, b, c) == Orientation::CounterClockwise;
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hulls_meet(a: &[Point], b: &[Point]) -> bool {
    let all: Vec<Point> = a.iter().chain(b).cloned().collect();
    let f = IntFrame::new(&all);
    let (na, nb) = (a.len(), b.len());
    let edge = |start: usize, len: usize, i: usize| (start + i, start + (i + 1) % len);
    for i in 0..na {
        for j in 0..nb {
            let (p, q) = edge(0, na, i);
            let (r, s) = edge(na, nb, j);
            if f.segments_touch(p, q, r, s) {
                return true;
            }
        }
    }
    let inside = |point: usize, start: usize, len: usize| {
        len >= 3
            && (0..len).all(|i| {
                let (p, q) = edge(start, len, i);
                f.orient(p, q, point) == std::cmp::Ordering::Greater
            })
    };
    (na > 0 && inside(na, 0, na)) || (nb > 0 && inside(0, na, nb))
}
