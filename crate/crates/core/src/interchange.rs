//! JSON interchange for graphs, drawings, clustered instances and game
//! session logs.
//!
//! Instance documents look like
//!
//! ```json
//! {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]],
//!  "drawing": {"0": [0, 1, 0, 1], "1": [1, 1, 0, 1], "2": [1, 2, 3, 1]},
//!  "clusters": [[0, 1, 2]], "family": {"kind": "square", "k": 3, "style": "stacked"}}
//! ```
//!
//! where a drawing entry `[xn, xd, yn, yd]` is the point `(xn/xd, yn/yd)`.
//! `rotation` (per-vertex clockwise neighbour order), `drawing`, `clusters`
//! and `family` are optional. Integers of any size are
//! written as plain JSON numbers.
//!
//! A session log has one move per line:
//! `{"v": 4, "x": [7, 2], "y": [-1, 1], "t": 0}` with `t` counting from 0.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Number, Value};

use crate::construction::{ClusteredInstance, Family};
use crate::drawing::Drawing;
use crate::embed::{Move, MoveSequence};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::PlanarGraph;

fn bigint_to_json(i: &BigInt) -> Value {
    Value::Number(Number::from_str(&i.to_string()).expect("integers are valid JSON numbers"))
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Input(format!("expected an integer, got {n}"))),
        other => Err(Error::Input(format!("expected an integer, got {other}"))),
    }
}

fn usize_from_json(v: &Value, what: &str) -> Result<usize> {
    bigint_from_json(v)?
        .to_usize()
        .ok_or_else(|| Error::Input(format!("{what} must be a non-negative integer")))
}

/// `[numerator, denominator]`.
pub fn rational_to_json(r: &BigRational) -> Value {
    Value::Array(vec![bigint_to_json(r.numer()), bigint_to_json(r.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Input("a rational is a [numerator, denominator] pair".into()))?;
    fraction(bigint_from_json(&arr[0])?, bigint_from_json(&arr[1])?)
}

fn fraction(n: BigInt, d: BigInt) -> Result<BigRational> {
    if d.is_zero() {
        return Err(Error::Input("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// `[xn, xd, yn, yd]`.
pub fn point_to_json(p: &Point) -> Value {
    Value::Array(vec![
        bigint_to_json(p.x.numer()),
        bigint_to_json(p.x.denom()),
        bigint_to_json(p.y.numer()),
        bigint_to_json(p.y.denom()),
    ])
}

pub fn point_from_json(v: &Value) -> Result<Point> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Input("a point is [xn, xd, yn, yd]".into()))?;
    let x = fraction(bigint_from_json(&arr[0])?, bigint_from_json(&arr[1])?)?;
    let y = fraction(bigint_from_json(&arr[2])?, bigint_from_json(&arr[3])?)?;
    Ok(Point::new(x, y))
}

pub fn drawing_to_json(d: &Drawing) -> Value {
    let map: Map<String, Value> = d
        .positions()
        .iter()
        .enumerate()
        .map(|(v, p)| (v.to_string(), point_to_json(p)))
        .collect();
    Value::Object(map)
}

/// Reads a drawing object; its keys must be exactly `"0".."n-1"`.
pub fn drawing_from_json(v: &Value, n: usize) -> Result<Drawing> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("drawing must be an object keyed by vertex id".into()))?;
    let mut slots: Vec<Option<Point>> = vec![None; n];
    for (key, val) in obj {
        let vid: usize = key
            .parse()
            .map_err(|_| Error::Input(format!("drawing key {key:?} is not a vertex id")))?;
        if vid >= n {
            return Err(Error::Input(format!("drawing mentions vertex {vid} outside 0..{n}")));
        }
        slots[vid] = Some(point_from_json(val)?);
    }
    let positions = slots
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Error::Input(format!("drawing has no position for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Drawing::new(positions))
}

/// Graph plus optional drawing, clusters and family tag.
#[derive(Clone, Debug)]
pub struct InstanceDoc {
    pub graph: PlanarGraph,
    pub drawing: Option<Drawing>,
    pub clusters: Option<Vec<Vec<usize>>>,
    pub family: Option<Family>,
}

impl InstanceDoc {
    pub fn plain(graph: PlanarGraph, drawing: Option<Drawing>) -> Self {
        InstanceDoc {
            graph,
            drawing,
            clusters: None,
            family: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self.graph.edges().iter().map(|&(u, v)| json!([u, v])).collect();
        let mut obj = Map::new();
        obj.insert("n".into(), json!(self.graph.vertex_count()));
        obj.insert("edges".into(), Value::Array(edges));
        if let Some(r) = self.graph.rotation() {
            obj.insert("rotation".into(), json!(r));
        }
        if let Some(d) = &self.drawing {
            obj.insert("drawing".into(), drawing_to_json(d));
        }
        if let Some(c) = &self.clusters {
            obj.insert("clusters".into(), json!(c));
        }
        if let Some(f) = &self.family {
            obj.insert("family".into(), serde_json::to_value(f).expect("family serializes"));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("instance must be a JSON object".into()))?;
        let n = usize_from_json(obj.get("n").ok_or_else(|| Error::Input("missing \"n\"".into()))?, "n")?;
        let edges_json = obj
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("missing \"edges\" array".into()))?;
        let mut edges = Vec::with_capacity(edges_json.len());
        for e in edges_json {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Input("an edge is a [u, v] pair".into()))?;
            edges.push((usize_from_json(&pair[0], "vertex id")?, usize_from_json(&pair[1], "vertex id")?));
        }
        let mut graph = PlanarGraph::new(n, edges).map_err(|e| Error::Input(e.to_string()))?;
        match obj.get("rotation") {
            None | Some(Value::Null) => {}
            Some(r) => {
                let rotation = serde_json::from_value::<Vec<Vec<usize>>>(r.clone())
                    .map_err(|e| Error::Input(format!("rotation: {e}")))?;
                graph = graph.with_rotation(rotation).map_err(|e| Error::Input(e.to_string()))?;
            }
        }
        let drawing = obj.get("drawing").map(|d| drawing_from_json(d, n)).transpose()?;
        let clusters = match obj.get("clusters") {
            None | Some(Value::Null) => None,
            Some(c) => Some(
                serde_json::from_value::<Vec<Vec<usize>>>(c.clone())
                    .map_err(|e| Error::Input(format!("clusters: {e}")))?,
            ),
        };
        let family = match obj.get("family") {
            None | Some(Value::Null) => None,
            Some(f) => Some(
                serde_json::from_value::<Family>(f.clone()).map_err(|e| Error::Input(format!("family: {e}")))?,
            ),
        };
        if let Some(cs) = &clusters {
            let mut seen = vec![false; n];
            for &v in cs.iter().flatten() {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Input("clusters must partition the vertex set".into()));
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Input("clusters must partition the vertex set".into()));
            }
        }
        Ok(InstanceDoc {
            graph,
            drawing,
            clusters,
            family,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        InstanceDoc::from_json(&v)
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values serialize")
    }

    /// A clustered instance, when clusters and family are both present.
    pub fn to_instance(&self) -> Option<ClusteredInstance> {
        Some(ClusteredInstance {
            graph: self.graph.clone(),
            clusters: self.clusters.clone()?,
            family: self.family?,
            bad_drawing: self.drawing.clone(),
        })
    }
}

impl From<&ClusteredInstance> for InstanceDoc {
    fn from(inst: &ClusteredInstance) -> Self {
        InstanceDoc {
            graph: inst.graph.clone(),
            drawing: inst.bad_drawing.clone(),
            clusters: Some(inst.clusters.clone()),
            family: Some(inst.family),
        }
    }
}

pub fn move_to_log_line(t: usize, mv: &Move) -> String {
    json!({
        "v": mv.vertex,
        "x": rational_to_json(&mv.to.x),
        "y": rational_to_json(&mv.to.y),
        "t": t,
    })
    .to_string()
}

pub fn parse_log_line(line: &str) -> Result<(usize, Move)> {
    let v: Value = serde_json::from_str(line).map_err(|e| Error::Input(e.to_string()))?;
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Input(format!("log line missing {k:?}")));
    let vertex = usize_from_json(field("v")?, "v")?;
    let x = rational_from_json(field("x")?)?;
    let y = rational_from_json(field("y")?)?;
    let t = usize_from_json(field("t")?, "t")?;
    Ok((t, Move { vertex, to: Point::new(x, y) }))
}

/// The whole history as JSON lines, newline-terminated.
pub fn write_session_log(history: &MoveSequence) -> String {
    history
        .moves()
        .iter()
        .enumerate()
        .map(|(t, mv)| move_to_log_line(t, mv) + "\n")
        .collect()
}

/// Parses a session log; blank lines are skipped and `t` must count up
/// from 0.
pub fn read_session_log(text: &str) -> Result<MoveSequence> {
    let mut moves = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (t, mv) = parse_log_line(line)?;
        if t != moves.len() {
            return Err(Error::Input(format!("log entry t={t} out of sequence, expected {}", moves.len())));
        }
        moves.push(mv);
    }
    Ok(MoveSequence::from_moves(moves))
}

/// Largest denominator accepted from decimal input.
pub const MAX_DECIMAL_DENOMINATOR: u64 = 1_000_000;

/// The closest rational to `x` with denominator at most `max_den`.
pub fn limit_denominator(x: &BigRational, max_den: u64) -> BigRational {
    let max_den = BigInt::from(max_den.max(1));
    if x.denom() <= &max_den {
        return x.clone();
    }
    // Convergents p/q of the continued fraction, stopping before q exceeds
    // the limit, then the best semiconvergent.
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let (a, r) = n.div_mod_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if r.is_zero() {
            break;
        }
        (n, d) = (d, r);
    }
    let k = (&max_den - &q0) / &q1;
    let semi = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = BigRational::new(p1, q1);
    if (&semi - x).abs() < (&conv - x).abs() {
        semi
    } else {
        conv
    }
}

/// Exact value of a finite decimal, then [`limit_denominator`].
pub fn rationalize_decimal(x: f64, max_den: u64) -> Result<BigRational> {
    let exact = BigRational::from_float(x).ok_or_else(|| Error::Input(format!("{x} is not a finite number")))?;
    Ok(limit_denominator(&exact, max_den))
}

/// Display-only decimal value.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{standard_instance, ClusterStyle};

    #[test]
    fn instance_round_trip() {
        let inst = standard_instance(Family::Chain { k: 3, s: 2, style: ClusterStyle::Strip }).unwrap();
        let doc = InstanceDoc::from(&inst);
        let back = InstanceDoc::parse(&doc.to_string_pretty()).unwrap();
        assert_eq!(back.graph.edges(), inst.graph.edges());
        assert_eq!(back.drawing, inst.bad_drawing);
        assert_eq!(back.clusters.as_ref(), Some(&inst.clusters));
        assert_eq!(back.family, Some(inst.family));
        assert!(back.to_instance().unwrap().matches_builder());
    }

    #[test]
    fn big_coordinates_survive() {
        let huge: BigInt = num_traits::pow(BigInt::from(10), 40) + 7;
        let p = Point::new(BigRational::new(huge.clone(), BigInt::from(3)), BigRational::new(-huge, BigInt::from(11)));
        let v = point_to_json(&p);
        assert!(v.to_string().contains("10000000000000000000000000000000000000007"));
        assert_eq!(point_from_json(&serde_json::from_str(&v.to_string()).unwrap()).unwrap(), p);
    }

    #[test]
    fn rotation_round_trip() {
        let g = PlanarGraph::new(3, vec![(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .with_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]])
            .unwrap();
        let doc = InstanceDoc::plain(g, None);
        let back = InstanceDoc::parse(&doc.to_string_pretty()).unwrap();
        assert_eq!(back.graph.rotation(), doc.graph.rotation());
        assert!(InstanceDoc::parse(r#"{"n": 3, "edges": [[0, 1]], "rotation": [[2], [0], []]}"#).is_err());
    }

    #[test]
    fn malformed_documents() {
        assert!(InstanceDoc::parse("[]").is_err());
        assert!(InstanceDoc::parse(r#"{"n": 2, "edges": [[0, 0]]}"#).is_err());
        assert!(InstanceDoc::parse(r#"{"n": 2, "edges": [[0, 1]], "drawing": {"0": [0, 1, 0, 1]}}"#).is_err());
        assert!(InstanceDoc::parse(r#"{"n": 1, "edges": [], "drawing": {"0": [0, 0, 0, 1]}}"#).is_err());
        assert!(InstanceDoc::parse(r#"{"n": 2, "edges": [[0, 1]], "drawing": {"0": [0.5, 1, 0, 1], "1": [1, 1, 1, 1]}}"#).is_err());
        assert!(InstanceDoc::parse(r#"{"n": 2, "edges": [], "clusters": [[0], [0]]}"#).is_err());
        let ok = InstanceDoc::parse(r#"{"n": 2, "edges": [[0, 1]], "drawing": {"0": [0, 1, 0, 1], "1": [1, 2, -3, 4]}}"#).unwrap();
        assert_eq!(ok.drawing.unwrap().position(1), &Point::from_fractions(1, 2, -3, 4).unwrap());
    }

    #[test]
    fn log_round_trip() {
        let mut h = MoveSequence::new();
        h.push(4, Point::from_fractions(7, 2, -1, 1).unwrap());
        h.push(0, Point::from_ints(3, 9));
        let text = write_session_log(&h);
        assert_eq!(text.lines().next().unwrap(), r#"{"t":0,"v":4,"x":[7,2],"y":[-1,1]}"#);
        assert_eq!(read_session_log(&text).unwrap(), h);
        let skipped = text.lines().nth(1).unwrap();
        assert!(read_session_log(skipped).is_err());
    }

    #[test]
    fn decimals_rationalize() {
        assert_eq!(rationalize_decimal(0.5, MAX_DECIMAL_DENOMINATOR).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(rationalize_decimal(-1.25, 1000).unwrap(), BigRational::new((-5).into(), 4.into()));
        let third = rationalize_decimal(1.0 / 3.0, MAX_DECIMAL_DENOMINATOR).unwrap();
        assert_eq!(third, BigRational::new(1.into(), 3.into()));
        let pi = rationalize_decimal(std::f64::consts::PI, 1000).unwrap();
        assert_eq!(pi, BigRational::new(355.into(), 113.into()));
        assert!(rationalize_decimal(f64::NAN, 10).is_err());
        let r = rationalize_decimal(123.456789, MAX_DECIMAL_DENOMINATOR).unwrap();
        assert!(r.denom() <= &BigInt::from(MAX_DECIMAL_DENOMINATOR));
        assert!((rational_to_f64(&r) - 123.456789).abs() < 1e-6);
    }
}
