//! Session service: one POST endpoint taking a JSON [`Request`] and
//! answering with a JSON [`Response`]. Each session id owns one proof
//! session. Requests to one session run in arrival order; distinct
//! sessions run concurrently.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::routing::post;
use axum::{Json, Router};
use ootp_core::session::{handle, Request, Response, Session};
use tokio::net::TcpListener;

/// The single endpoint path.
pub const ENDPOINT: &str = "/";

type Shared = Arc<tokio::sync::Mutex<Session>>;

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, Shared>>>,
}

impl AppState {
    /// The session named `id`, created when `create` holds.
    fn session(&self, id: &str, create: bool) -> Option<Shared> {
        let mut map = self.sessions.lock().expect("session map poisoned");
        match map.get(id) {
            Some(s) => Some(s.clone()),
            None if create => Some(map.entry(id.to_string()).or_default().clone()),
            None => None,
        }
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("session map poisoned").len()
    }
}

pub fn router() -> Router {
    router_with(AppState::default())
}

pub fn router_with(state: AppState) -> Router {
    Router::new()
        .route(ENDPOINT, post(endpoint))
        .with_state(state)
}

async fn endpoint(State(app): State<AppState>, body: Bytes) -> (StatusCode, Json<Response>) {
    let req: Request = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => {
            return (
                StatusCode::BAD_REQUEST,
                Json(Response::error(format!("malformed request: {e}"), None)),
            )
        }
    };
    let Some(session) = app.session(&req.session, req.op.creates_session()) else {
        let msg = format!("unknown session `{}`", req.session);
        return (StatusCode::OK, Json(Response::error(msg, None)));
    };
    // The owned guard is taken before the blocking work starts, so the lock
    // queue fixes the order of requests to one session.
    let mut guard = session.lock_owned().await;
    let res = tokio::task::spawn_blocking(move || handle(&mut guard, &req)).await;
    match res {
        Ok(r) => (StatusCode::OK, Json(r)),
        Err(e) => (
            StatusCode::INTERNAL_SERVER_ERROR,
            Json(Response::error(format!("internal error: {e}"), None)),
        ),
    }
}

/// Serve on an already bound listener until the task is dropped.
pub async fn serve_on(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = TcpListener::bind(SocketAddr::from(([127, 0, 0, 1], port))).await?;
    eprintln!("ootp: listening on http://{}", listener.local_addr()?);
    serve_on(listener).await
}
