//! JSON shapes shared by the HTTP service and the command line.
//!
//! Coordinates travel as `[numerator, denominator]` pairs. Responses add
//! `xf`/`yf` decimal fields for display; requests may send either exact
//! pairs or plain decimals, which are rationalized with denominator at most
//! 10^6.

use untangle_core::BigRational;
use serde_json::{json, Value};
use untangle_core::construction::{ClusterStyle, Family};
use untangle_core::embed::Move;
use untangle_core::game::{new_game, GameSource, GameState};
use untangle_core::interchange::{
    rational_from_json, rational_to_f64, rational_to_json, rationalize_decimal, read_session_log, InstanceDoc,
    MAX_DECIMAL_DENOMINATOR,
};
use untangle_core::{Error, Point};

/// Built-in game sources offered to clients.
pub fn presets() -> Vec<(String, GameSource)> {
    let stacked = ClusterStyle::Stacked;
    let mut out: Vec<(String, GameSource)> = Vec::new();
    for k in [3, 4, 5] {
        let f = Family::Square { k, style: stacked };
        out.push((f.label(), GameSource::Generated(f)));
    }
    for (k, s) in [(3, 1), (3, 2), (4, 1), (4, 2)] {
        let f = Family::Chain { k, s, style: stacked };
        out.push((f.label(), GameSource::Generated(f)));
    }
    let strip = Family::Chain { k: 6, s: 1, style: ClusterStyle::Strip };
    out.push((format!("{}-strip", strip.label()), GameSource::Generated(strip)));
    out.push(("scrambled(12,7)".into(), GameSource::Scrambled { n: 12, seed: 7 }));
    out.push(("scrambled(30,1)".into(), GameSource::Scrambled { n: 30, seed: 1 }));
    out
}

pub fn presets_json() -> Value {
    let items: Vec<Value> = presets()
        .into_iter()
        .map(|(id, source)| {
            let (n, family, certified) = match &source {
                GameSource::Generated(f) => (f.vertex_count(), serde_json::to_value(f).unwrap(), true),
                GameSource::Scrambled { n, .. } => (*n, Value::Null, false),
                _ => unreachable!("presets are generated or scrambled"),
            };
            json!({"id": id, "n": n, "family": family, "certified": certified})
        })
        .collect();
    Value::Array(items)
}

pub fn preset(id: &str) -> Option<GameSource> {
    presets().into_iter().find(|(p, _)| p == id).map(|(_, s)| s)
}

/// Parses a game-creation body. Exactly one of `preset`, `family`,
/// `scrambled` or `instance` selects the source; an optional `log` (session
/// log text) is replayed on top.
pub fn parse_create_body(body: &Value) -> Result<(GameSource, Option<String>), String> {
    let obj = body.as_object().ok_or("body must be a JSON object")?;
    let keys: Vec<&str> = ["preset", "family", "scrambled", "instance"]
        .into_iter()
        .filter(|k| obj.contains_key(*k))
        .collect();
    if keys.len() != 1 {
        return Err("give exactly one of preset, family, scrambled, instance".into());
    }
    let source = match keys[0] {
        "preset" => {
            let id = obj["preset"].as_str().ok_or("preset must be a string")?;
            preset(id).ok_or_else(|| format!("unknown preset {id:?}"))?
        }
        "family" => {
            let f: Family = serde_json::from_value(obj["family"].clone()).map_err(|e| format!("family: {e}"))?;
            GameSource::Generated(f)
        }
        "scrambled" => {
            let s = &obj["scrambled"];
            let n = s.get("n").and_then(Value::as_u64).ok_or("scrambled.n must be an integer")?;
            let seed = s.get("seed").and_then(Value::as_u64).unwrap_or(0);
            if !(3..=500).contains(&n) {
                return Err("scrambled.n must be between 3 and 500".into());
            }
            GameSource::Scrambled { n: n as usize, seed }
        }
        _ => {
            let doc = InstanceDoc::from_json(&obj["instance"]).map_err(|e| e.to_string())?;
            source_from_doc(doc).map_err(|e| e.to_string())?
        }
    };
    let log = match obj.get("log") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err("log must be a string of JSON lines".into()),
    };
    Ok((source, log))
}

/// Clustered documents keep their family so certificates can attach;
/// anything else becomes a plain game.
pub fn source_from_doc(doc: InstanceDoc) -> Result<GameSource, Error> {
    if doc.drawing.is_none() {
        return Err(Error::Input("instance has no drawing to start from".into()));
    }
    Ok(match doc.to_instance() {
        Some(inst) => GameSource::Clustered(inst),
        None => GameSource::Plain {
            graph: doc.graph,
            drawing: doc.drawing.unwrap(),
        },
    })
}

/// Creates a game and replays an optional session log.
pub fn start_game(source: GameSource, log: Option<&str>) -> Result<GameState, Error> {
    let mut game = new_game(source)?;
    if let Some(text) = log {
        for mv in read_session_log(text)?.moves() {
            game.apply_move(mv.vertex, mv.to.clone())?;
        }
    }
    Ok(game)
}

fn coordinate(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Array(_) => rational_from_json(v).map_err(|e| e.to_string()),
        Value::Number(n) => {
            let x: f64 = n.to_string().parse().map_err(|_| format!("bad number {n}"))?;
            rationalize_decimal(x, MAX_DECIMAL_DENOMINATOR).map_err(|e| e.to_string())
        }
        _ => Err("a coordinate is [numerator, denominator] or a decimal number".into()),
    }
}

/// `{"v": id, "x": .., "y": ..}`.
pub fn parse_move_body(body: &Value) -> Result<(usize, Point), String> {
    let v = body
        .get("v")
        .and_then(Value::as_u64)
        .ok_or("v must be a vertex id")? as usize;
    let x = coordinate(body.get("x").ok_or("missing x")?)?;
    let y = coordinate(body.get("y").ok_or("missing y")?)?;
    Ok((v, Point::new(x, y)))
}

pub fn point_json(p: &Point) -> Value {
    json!({
        "x": rational_to_json(&p.x),
        "y": rational_to_json(&p.y),
        "xf": rational_to_f64(&p.x),
        "yf": rational_to_f64(&p.y),
    })
}

pub fn move_json(t: usize, mv: &Move) -> Value {
    let mut v = point_json(&mv.to);
    v["v"] = json!(mv.vertex);
    v["t"] = json!(t);
    v
}

pub fn state_json(id: &str, game: &GameState) -> Value {
    let positions: Vec<Value> = game
        .current()
        .positions()
        .iter()
        .enumerate()
        .map(|(v, p)| {
            let mut j = point_json(p);
            j["v"] = json!(v);
            j
        })
        .collect();
    let history: Vec<Value> = game.history().moves().iter().enumerate().map(|(t, m)| move_json(t, m)).collect();
    json!({
        "id": id,
        "label": game.label(),
        "n": game.graph().vertex_count(),
        "edges": game.graph().edges(),
        "positions": positions,
        "crossings": game.crossings(),
        "status": game.status(),
        "moves_used": game.history().len(),
        "history": history,
        "bound": game.bound(),
        "score": game.score(),
    })
}
