//! Local HTTP service for editing twist labels interactively.
//!
//! A session holds one mesh and a growing list of labelings (revisions).
//! Reads name a revision with `?rev=R` (default: latest), so responses for a
//! fixed revision never change.
//!
//! | Method | Path | Body / query | Response |
//! |---|---|---|---|
//! | POST | `/session` | mesh document | `{session, revision}` |
//! | GET | `/session/{id}` | | `{session, revision}` |
//! | GET | `/session/{id}/mesh` | `rev` | mesh document |
//! | PATCH | `/session/{id}/labels` | `{edits, nulls, revision?}` | `{session, revision}` |
//! | GET | `/session/{id}/strands` | `rev` | strand report |
//! | GET | `/session/{id}/geometry` | `rev`, `inset`, `radius` | strand polylines |
//! | GET | `/session/{id}/report` | `rev` | counts, lengths, linking matrix, warnings |
//!
//! Unknown sessions or revisions give 404, a conditional edit against a stale
//! revision gives 409, and invalid documents or edits give 422.

mod error;
mod handlers;
mod session;

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::http::{header, HeaderValue, Method};
use axum::routing::{get, patch, post};
use axum::Router;
use lk_core::LabeledMesh;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use session::{AppState, Session};

pub const DEFAULT_PORT: u16 = 7431;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub port: u16,
    /// Every revision is written here as a mesh document.
    pub save_dir: Option<PathBuf>,
    /// Static files served at `/` (the viewer build).
    pub ui_dir: Option<PathBuf>,
    pub cache_entries: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { port: DEFAULT_PORT, save_dir: None, ui_dir: None, cache_entries: 32 }
    }
}

fn local_origin(origin: &HeaderValue) -> bool {
    let o = origin.as_bytes();
    [&b"http://localhost"[..], b"http://127.0.0.1", b"http://[::1]"]
        .iter()
        .any(|p| o.starts_with(p) && matches!(o.get(p.len()), None | Some(b':') | Some(b'/')))
}

pub fn router(state: AppState, ui_dir: Option<PathBuf>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|o, _| local_origin(o)))
        .allow_methods([Method::GET, Method::POST, Method::PATCH, Method::OPTIONS])
        .allow_headers([header::CONTENT_TYPE]);
    let api = Router::new()
        .route("/session", post(handlers::create_session))
        .route("/session/{id}", get(handlers::session_info))
        .route("/session/{id}/mesh", get(handlers::get_mesh))
        .route("/session/{id}/labels", patch(handlers::patch_labels))
        .route("/session/{id}/strands", get(handlers::get_strands))
        .route("/session/{id}/geometry", get(handlers::get_geometry))
        .route("/session/{id}/report", get(handlers::get_report))
        .with_state(state);
    let app = match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    app.layer(cors)
}

/// Serve on localhost until the process is stopped. `initial` becomes
/// session 1.
pub async fn serve(config: ServiceConfig, initial: Option<LabeledMesh>) -> std::io::Result<()> {
    if let Some(dir) = &config.save_dir {
        std::fs::create_dir_all(dir)?;
    }
    let state = AppState::new(config.save_dir.clone(), config.cache_entries);
    if let Some(mesh) = initial {
        let s = state.create(mesh);
        log::info!("loaded initial mesh as session {}", s.id);
    }
    let addr = SocketAddr::from(([127, 0, 0, 1], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{addr}");
    axum::serve(listener, router(state, config.ui_dir)).await
}
