//! HTTP service for game sessions.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::{json, Value};
use tower_http::services::ServeDir;
use untangle_core::interchange::write_session_log;
use untangle_core::Error;

use crate::api;
use crate::registry::{Session, SessionRegistry};

pub struct AppState {
    pub registry: SessionRegistry,
    /// When set, every session's history is mirrored to `<dir>/<id>.jsonl`.
    pub log_dir: Option<PathBuf>,
}

type Shared = Arc<AppState>;

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({"error": self.1}))).into_response()
    }
}

fn bad_request(msg: impl Into<String>) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.into())
}

fn from_core(e: Error) -> ApiError {
    match e {
        Error::Occupied(_) => ApiError(StatusCode::CONFLICT, e.to_string()),
        Error::Internal(_) => ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
        _ => bad_request(e.to_string()),
    }
}

fn parse_json(body: &Bytes) -> Result<Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| bad_request(format!("malformed JSON: {e}")))
}

fn session(state: &AppState, id: &str) -> Result<crate::registry::SessionHandle, ApiError> {
    state
        .registry
        .get(id)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no session {id}")))
}

fn persist(state: &AppState, id: &str, s: &Session) {
    if let Some(dir) = &state.log_dir {
        let path = dir.join(format!("{id}.jsonl"));
        if let Err(e) = std::fs::write(&path, write_session_log(s.game.history())) {
            eprintln!("could not write session log {}: {e}", path.display());
        }
    }
}

async fn create_game(State(state): State<Shared>, body: Bytes) -> Result<Response, ApiError> {
    let body = parse_json(&body)?;
    let (source, log) = api::parse_create_body(&body).map_err(bad_request)?;
    let game = api::start_game(source, log.as_deref()).map_err(from_core)?;
    let (id, handle) = state.registry.insert(game);
    let s = handle.lock().unwrap();
    persist(&state, &id, &s);
    let payload = json!({"id": id, "state": api::state_json(&id, &s.game)});
    Ok((StatusCode::CREATED, Json(payload)).into_response())
}

async fn get_game(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let handle = session(&state, &id)?;
    let s = handle.lock().unwrap();
    Ok(Json(api::state_json(&id, &s.game)))
}

async fn post_move(
    State(state): State<Shared>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let handle = session(&state, &id)?;
    let body = parse_json(&body)?;
    let (v, p) = api::parse_move_body(&body).map_err(bad_request)?;
    let mut s = handle.lock().unwrap();
    let outcome = s.game.apply_move(v, p).map_err(from_core)?;
    persist(&state, &id, &s);
    let mut payload = api::state_json(&id, &s.game);
    payload["last_move"] = json!(outcome);
    Ok(Json(payload))
}

async fn post_undo(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let handle = session(&state, &id)?;
    let mut s = handle.lock().unwrap();
    let undone = s.game.undo().map_err(from_core)?;
    persist(&state, &id, &s);
    let mut payload = api::state_json(&id, &s.game);
    payload["undone"] = match undone {
        Some(mv) => api::move_json(s.game.history().len(), &mv),
        None => Value::Null,
    };
    Ok(Json(payload))
}

async fn get_hint(State(state): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let handle = session(&state, &id)?;
    let mut s = handle.lock().unwrap();
    let plan = s.game.solver_moves().map_err(from_core)?;
    match plan.moves().first() {
        None => Ok(StatusCode::NO_CONTENT.into_response()),
        Some(mv) => {
            let mut hint = api::point_json(&mv.to);
            hint["v"] = json!(mv.vertex);
            hint["remaining"] = json!(plan.len());
            Ok(Json(hint).into_response())
        }
    }
}

async fn get_log(State(state): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let handle = session(&state, &id)?;
    let s = handle.lock().unwrap();
    let text = write_session_log(s.game.history());
    Ok(([(axum::http::header::CONTENT_TYPE, "application/x-ndjson")], text).into_response())
}

async fn get_presets() -> Json<Value> {
    Json(api::presets_json())
}

pub fn router(state: Shared, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/games", post(create_game))
        .route("/api/games/{id}", get(get_game))
        .route("/api/games/{id}/moves", post(post_move))
        .route("/api/games/{id}/undo", post(post_undo))
        .route("/api/games/{id}/hint", get(get_hint))
        .route("/api/games/{id}/log", get(get_log))
        .route("/api/instances/presets", get(get_presets))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(addr: SocketAddr, static_dir: Option<PathBuf>, log_dir: Option<PathBuf>) -> anyhow::Result<()> {
    if let Some(dir) = &log_dir {
        std::fs::create_dir_all(dir)?;
    }
    let state = Arc::new(AppState {
        registry: SessionRegistry::from_env(),
        log_dir,
    });
    let app = router(state, static_dir);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
