use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::header;
use axum::response::IntoResponse;
use axum::Json;
use lk_core::document::{LkmDocument, NullSide, StrandReport, TwistEntry};
use lk_core::geometry::{fitted_radius, linking_matrix, realize, LinkingMatrix, RealizeParams};
use lk_core::mesh::{connectivity_report, EdgeKey};
use lk_core::{trace, Exec, FaceId, LabeledMesh};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::session::{AppState, GeometryKey};

#[derive(Debug, Serialize)]
pub struct SessionInfo {
    pub session: u64,
    pub revision: u64,
}

#[derive(Debug, Deserialize)]
pub struct RevisionQuery {
    pub rev: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct GeometryQuery {
    pub rev: Option<u64>,
    pub inset: Option<f64>,
    pub radius: Option<f64>,
}

#[derive(Debug, Deserialize)]
pub struct NullEdit {
    #[serde(flatten)]
    pub side: NullSide,
    #[serde(default = "yes")]
    pub null: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelEdits {
    #[serde(default)]
    pub edits: Vec<TwistEntry>,
    #[serde(default)]
    pub nulls: Vec<NullEdit>,
    /// Conditional edit: only applies if this is still the latest revision.
    #[serde(default)]
    pub revision: Option<u64>,
}

#[derive(Debug, Serialize)]
struct StrandsResponse {
    revision: u64,
    #[serde(flatten)]
    report: StrandReport,
}

#[derive(Debug, Serialize)]
struct Report {
    revision: u64,
    count: usize,
    cycles: usize,
    paths: usize,
    lengths: Vec<usize>,
    linking: Option<LinkingMatrix>,
    warnings: Vec<String>,
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(format!("worker failed: {e}")))?
}

pub async fn create_session(State(state): State<AppState>, body: Bytes) -> Result<Json<SessionInfo>, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::invalid(e.to_string()))?;
    let doc = LkmDocument::parse(text)?;
    if doc.periodic.is_some() {
        return Err(ApiError::invalid("periodic documents must be tiled before editing"));
    }
    let session = state.create(doc.to_mesh()?);
    log::info!("session {} created", session.id);
    Ok(Json(SessionInfo { session: session.id, revision: 0 }))
}

pub async fn session_info(State(state): State<AppState>, Path(id): Path<u64>) -> Result<Json<SessionInfo>, ApiError> {
    let session = state.session(id)?;
    Ok(Json(SessionInfo { session: id, revision: session.latest() }))
}

pub async fn get_mesh(
    State(state): State<AppState>,
    Path(id): Path<u64>,
    Query(q): Query<RevisionQuery>,
) -> Result<impl IntoResponse, ApiError> {
    let (_, mesh) = state.session(id)?.at(q.rev)?;
    Ok(json_text(LkmDocument::from_mesh(&mesh).to_json()))
}

fn apply_edits(mesh: &LabeledMesh, edits: &LabelEdits) -> Result<LabeledMesh, ApiError> {
    let mut next = mesh.clone();
    for e in &edits.edits {
        let key = EdgeKey::strict(e.edge[0], e.edge[1])?;
        next.set_twist_by_key(key, e.t)?;
    }
    for n in &edits.nulls {
        let key = EdgeKey::strict(n.side.edge[0], n.side.edge[1])?;
        let s = next.find_slot(FaceId(n.side.face), key, n.side.occurrence)?;
        next.set_null(s, n.null);
    }
    Ok(next)
}

pub async fn patch_labels(
    State(state): State<AppState>,
    Path(id): Path<u64>,
    body: Bytes,
) -> Result<Json<SessionInfo>, ApiError> {
    let edits: LabelEdits = serde_json::from_slice(&body).map_err(|e| ApiError::invalid(e.to_string()))?;
    let session = state.session(id)?;
    let (revision, _) = session.edit(edits.revision, |m| apply_edits(m, &edits))?;
    state.snapshot(&session, revision);
    Ok(Json(SessionInfo { session: id, revision }))
}

pub async fn get_strands(
    State(state): State<AppState>,
    Path(id): Path<u64>,
    Query(q): Query<RevisionQuery>,
) -> Result<impl IntoResponse, ApiError> {
    let (revision, mesh) = state.session(id)?.at(q.rev)?;
    let body = blocking(move || {
        let report = StrandReport::new(&mesh, &trace(&mesh));
        Ok(serde_json::to_string(&StrandsResponse { revision, report }).expect("serializes"))
    })
    .await?;
    Ok(json_text(body))
}

fn geometry_body(mesh: &LabeledMesh, revision: u64, q: &GeometryQuery) -> Result<String, ApiError> {
    let defaults = RealizeParams::default();
    let params = RealizeParams { inset: q.inset.unwrap_or(defaults.inset), tube_radius: q.radius, ..defaults };
    params.validate()?;
    let geom = realize(mesh, &trace(mesh), &params)?;
    let requested = params.radius_for(mesh);
    let radius = fitted_radius(&geom, requested, Exec::Parallel);
    let mut warnings = Vec::new();
    if radius < requested {
        warnings.push(format!("tube radius reduced from {requested:.6} to {radius:.6} to keep strands apart"));
    }
    let body = serde_json::json!({
        "revision": revision,
        "tube_radius": radius,
        "components": geom.components,
        "warnings": warnings,
    });
    Ok(body.to_string())
}

pub async fn get_geometry(
    State(state): State<AppState>,
    Path(id): Path<u64>,
    Query(q): Query<GeometryQuery>,
) -> Result<impl IntoResponse, ApiError> {
    let (revision, mesh) = state.session(id)?.at(q.rev)?;
    let key = GeometryKey {
        session: id,
        revision,
        inset: q.inset.map_or(u64::MAX, f64::to_bits),
        radius: q.radius.map_or(u64::MAX, f64::to_bits),
    };
    if let Some(hit) = state.cached_geometry(&key) {
        return Ok(json_text(hit.as_str().to_owned()));
    }
    let body = Arc::new(blocking(move || geometry_body(&mesh, revision, &q)).await?);
    state.store_geometry(key, Arc::clone(&body));
    Ok(json_text(body.as_str().to_owned()))
}

pub async fn get_report(
    State(state): State<AppState>,
    Path(id): Path<u64>,
    Query(q): Query<RevisionQuery>,
) -> Result<impl IntoResponse, ApiError> {
    let (revision, mesh) = state.session(id)?.at(q.rev)?;
    let report = blocking(move || {
        let strands = trace(&mesh);
        let mut warnings = connectivity_report(&mesh).warnings;
        let linking = match realize(&mesh, &strands, &RealizeParams::default())
            .and_then(|g| linking_matrix(&g, Exec::Parallel))
        {
            Ok(m) => {
                warnings.extend(m.warnings.iter().cloned());
                Some(m)
            }
            Err(e) => {
                warnings.push(format!("linking numbers unavailable: {e}"));
                None
            }
        };
        Ok(Report {
            revision,
            count: strands.count(),
            cycles: strands.cycles().count(),
            paths: strands.paths().count(),
            lengths: strands.lengths(),
            linking,
            warnings,
        })
    })
    .await?;
    Ok(json_text(serde_json::to_string(&report).expect("serializes")))
}

fn json_text(body: String) -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json")], body)
}
