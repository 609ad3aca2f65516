use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;
use untangle_cli::registry::SessionRegistry;
use untangle_cli::server::{router, AppState};

fn app_with_logs(log_dir: Option<std::path::PathBuf>) -> Router {
    router(
        Arc::new(AppState {
            registry: SessionRegistry::new(Duration::from_secs(600)),
            log_dir,
        }),
        None,
    )
}

fn app() -> Router {
    app_with_logs(None)
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or(Body::empty(), |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

async fn call_json(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let text = body.map(|b| b.to_string());
    let (status, bytes) = call(app, method, uri, text.as_deref()).await;
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, body: Value) -> (String, Value) {
    let (status, v) = call_json(app, "POST", "/api/games", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    (v["id"].as_str().unwrap().to_string(), v["state"].clone())
}

#[tokio::test]
async fn create_square_preset() {
    let app = app();
    let (id, state) = create(&app, json!({"preset": "square(3)"})).await;
    assert_eq!(state["n"], json!(9));
    assert_eq!(state["positions"].as_array().unwrap().len(), 9);
    assert_eq!(state["status"], json!("in_progress"));
    assert_eq!(state["moves_used"], json!(0));
    assert!(state["crossings"].as_u64().unwrap() > 0);
    assert_eq!(state["bound"]["certified_fixed_upper"], json!(7));
    let (status, again) = call_json(&app, "GET", &format!("/api/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(again, state);
}

#[tokio::test]
async fn presets_list() {
    let (status, v) = call_json(&app(), "GET", "/api/instances/presets", None).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|p| p["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"square(3)"));
    assert!(ids.contains(&"chain(3,2)"));
}

#[tokio::test]
async fn bad_requests() {
    let app = app();
    let (s, _) = call(&app, "POST", "/api/games", Some("{not json")).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call_json(&app, "POST", "/api/games", Some(json!({"preset": "nope"}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call_json(&app, "GET", "/api/games/deadbeef", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    let (s, _) = call_json(&app, "POST", "/api/games/deadbeef/moves", Some(json!({"v": 0, "x": 0, "y": 0}))).await;
    assert_eq!(s, StatusCode::NOT_FOUND);

    let (id, _) = create(&app, json!({"preset": "square(3)"})).await;
    let uri = format!("/api/games/{id}/moves");
    let (s, _) = call_json(&app, "POST", &uri, Some(json!({"v": 99, "x": 0, "y": 0}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call_json(&app, "POST", &uri, Some(json!({"v": 0, "x": [1, 0], "y": 0}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call(&app, "POST", &uri, Some("[")).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn occupied_target_conflicts() {
    let app = app();
    let (id, state) = create(&app, json!({"preset": "square(3)"})).await;
    let p1 = &state["positions"][1];
    let body = json!({"v": 0, "x": p1["x"], "y": p1["y"]});
    let (s, v) = call_json(&app, "POST", &format!("/api/games/{id}/moves"), Some(body)).await;
    assert_eq!(s, StatusCode::CONFLICT, "{v}");
    let (_, after) = call_json(&app, "GET", &format!("/api/games/{id}"), None).await;
    assert_eq!(after, state);
}

#[tokio::test]
async fn move_then_undo() {
    let app = app();
    let (id, state) = create(&app, json!({"preset": "chain(3,1)"})).await;
    let (s, v) = call_json(
        &app,
        "POST",
        &format!("/api/games/{id}/moves"),
        Some(json!({"v": 2, "x": 0.5, "y": [-7, 3]})),
    )
    .await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert_eq!(v["moves_used"], json!(1));
    assert_eq!(v["positions"][2]["x"], json!([1, 2]));
    assert_eq!(v["positions"][2]["y"], json!([-7, 3]));
    assert_eq!(v["history"][0]["t"], json!(0));

    let (s, u) = call_json(&app, "POST", &format!("/api/games/{id}/undo"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(u["undone"]["v"], json!(2));
    assert_eq!(u["positions"], state["positions"]);
    assert_eq!(u["crossings"], state["crossings"]);
    let (_, u2) = call_json(&app, "POST", &format!("/api/games/{id}/undo"), None).await;
    assert_eq!(u2["undone"], Value::Null);
}

#[tokio::test]
async fn following_hints_solves_and_then_204() {
    let app = app();
    let (id, state) = create(&app, json!({"preset": "square(3)"})).await;
    let n = state["n"].as_u64().unwrap();
    let mut last = state;
    for _ in 0..3 * n {
        let (s, hint) = call_json(&app, "GET", &format!("/api/games/{id}/hint"), None).await;
        if s == StatusCode::NO_CONTENT {
            break;
        }
        assert_eq!(s, StatusCode::OK);
        let body = json!({"v": hint["v"], "x": hint["x"], "y": hint["y"]});
        let (s, v) = call_json(&app, "POST", &format!("/api/games/{id}/moves"), Some(body)).await;
        assert_eq!(s, StatusCode::OK, "{v}");
        last = v;
    }
    assert_eq!(last["status"], json!("solved"));
    assert_eq!(last["crossings"], json!(0));
    assert_eq!(last["score"]["consistent_with_bound"], json!(true));
    let (s, body) = call(&app, "GET", &format!("/api/games/{id}/hint"), None).await;
    assert_eq!(s, StatusCode::NO_CONTENT);
    assert!(body.is_empty());
}

#[tokio::test]
async fn log_replay_reproduces_state() {
    let dir = tempfile::tempdir().unwrap();
    let app = app_with_logs(Some(dir.path().to_path_buf()));
    let (id, _) = create(&app, json!({"scrambled": {"n": 12, "seed": 3}})).await;
    for _ in 0..4 {
        let (_, hint) = call_json(&app, "GET", &format!("/api/games/{id}/hint"), None).await;
        let body = json!({"v": hint["v"], "x": hint["x"], "y": hint["y"]});
        call_json(&app, "POST", &format!("/api/games/{id}/moves"), Some(body)).await;
    }
    let (_, original) = call_json(&app, "GET", &format!("/api/games/{id}"), None).await;
    let (s, log) = call(&app, "GET", &format!("/api/games/{id}/log"), None).await;
    assert_eq!(s, StatusCode::OK);
    let log = String::from_utf8(log).unwrap();
    assert_eq!(log.lines().count(), 4);
    let mirrored = std::fs::read_to_string(dir.path().join(format!("{id}.jsonl"))).unwrap();
    assert_eq!(mirrored, log);

    let (id2, replayed) = create(&app, json!({"scrambled": {"n": 12, "seed": 3}, "log": log})).await;
    assert_ne!(id, id2);
    for key in ["positions", "crossings", "history", "moves_used", "status"] {
        assert_eq!(replayed[key], original[key], "{key}");
    }
}

#[tokio::test]
async fn uploaded_instance_keeps_certificate() {
    let inst = untangle_core::construction::standard_instance(untangle_core::Family::Square {
        k: 3,
        style: untangle_core::ClusterStyle::Stacked,
    })
    .unwrap();
    let doc = untangle_core::InstanceDoc::from(&inst).to_json();
    let app = app();
    let (_, state) = create(&app, json!({"instance": doc})).await;
    assert_eq!(state["n"], json!(9));
    assert_eq!(state["bound"]["certified_fixed_upper"], json!(7));
}
