use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use lk_core::document::LkmDocument;
use lk_core::fixtures::{cube, tetrahedron};
use lk_core::{trace, LabeledMesh};
use lk_service::{router, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(None, 8), None)
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<String>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn json_call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let (s, bytes) = call(app, method, uri, body.map(|b| b.to_string())).await;
    (s, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn open(app: &Router, mesh: &LabeledMesh) -> u64 {
    let (s, v) = call(app, "POST", "/session", Some(LkmDocument::from_mesh(mesh).to_json())).await;
    assert_eq!(s, StatusCode::OK);
    let v: Value = serde_json::from_slice(&v).unwrap();
    assert_eq!(v["revision"], 0);
    v["session"].as_u64().unwrap()
}

fn all_edges(mesh: &LabeledMesh, t: i64) -> Value {
    let edits: Vec<Value> = mesh.edges().iter().map(|e| json!({"edge": e.key.pair(), "t": t})).collect();
    json!({ "edits": edits })
}

#[tokio::test]
async fn untouched_tetrahedron_has_four_face_loops() {
    let app = app();
    let id = open(&app, &tetrahedron()).await;
    let (s, v) = json_call(&app, "GET", &format!("/session/{id}/strands"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["count"], 4);
    assert_eq!(v["revision"], 0);
    assert!(v["components"].as_array().unwrap().iter().all(|c| c["kind"] == "cycle" && c["length"] == 3));
}

#[tokio::test]
async fn chainmail_cube_report() {
    let app = app();
    let m = cube();
    let id = open(&app, &m).await;
    let (s, v) = json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(all_edges(&m, 2))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["revision"], 1);
    let (_, r) = json_call(&app, "GET", &format!("/session/{id}/report"), None).await;
    assert_eq!(r["count"], 6);
    assert_eq!(r["lengths"], json!([4, 4, 4, 4, 4, 4]));
    let lk = r["linking"]["values"].as_array().unwrap();
    let nonzero = lk.iter().flat_map(|row| row.as_array().unwrap()).filter(|x| x.as_i64() != Some(0)).count();
    assert_eq!(nonzero, 24);
}

#[tokio::test]
async fn single_edge_edit_matches_the_core_trace() {
    let app = app();
    let m = cube();
    let id = open(&app, &m).await;
    json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(all_edges(&m, 1))).await;
    let key = m.edges()[0].key;
    let (_, v) = json_call(
        &app,
        "PATCH",
        &format!("/session/{id}/labels"),
        Some(json!({"edits": [{"edge": key.pair(), "t": 2}]})),
    )
    .await;
    assert_eq!(v["revision"], 2);
    let mut local = m.clone();
    local.set_all_twists(1);
    local.set_twist_by_key(key, 2).unwrap();
    let (_, r) = json_call(&app, "GET", &format!("/session/{id}/report"), None).await;
    assert_eq!(r["count"].as_u64().unwrap() as usize, trace(&local).count());
    let (_, r1) = json_call(&app, "GET", &format!("/session/{id}/report?rev=1"), None).await;
    assert_eq!(r1["count"], 4);
}

#[tokio::test]
async fn revisions_are_immutable_and_byte_stable() {
    let app = app();
    let m = tetrahedron();
    let id = open(&app, &m).await;
    json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(all_edges(&m, 1))).await;
    for path in ["strands", "report", "geometry", "mesh"] {
        let a = call(&app, "GET", &format!("/session/{id}/{path}?rev=1"), None).await;
        let b = call(&app, "GET", &format!("/session/{id}/{path}?rev=1"), None).await;
        assert_eq!(a.0, StatusCode::OK, "{path}");
        assert_eq!(a.1, b.1, "{path}");
    }
    let (_, old) = json_call(&app, "GET", &format!("/session/{id}/strands?rev=0"), None).await;
    assert_eq!(old["count"], 4);
    let (_, new) = json_call(&app, "GET", &format!("/session/{id}/strands"), None).await;
    assert_eq!(new["count"], 3);
    let (_, mesh0) = call(&app, "GET", &format!("/session/{id}/mesh?rev=0"), None).await;
    assert_eq!(LkmDocument::parse(std::str::from_utf8(&mesh0).unwrap()).unwrap().twists.len(), 0);
}

#[tokio::test]
async fn geometry_document() {
    let app = app();
    let m = cube();
    let id = open(&app, &m).await;
    json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(all_edges(&m, 2))).await;
    let (s, g) = json_call(&app, "GET", &format!("/session/{id}/geometry?inset=0.2&radius=0.05"), None).await;
    assert_eq!(s, StatusCode::OK);
    let comps = g["components"].as_array().unwrap();
    assert_eq!(comps.len(), 6);
    assert!(comps.iter().all(|c| c["closed"] == true && c["points"].as_array().unwrap().len() >= 4));
    assert_eq!(g["tube_radius"], 0.05);
    let (s, _) = json_call(&app, "GET", &format!("/session/{id}/geometry?inset=1.5"), None).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    let (_, g) = json_call(&app, "GET", &format!("/session/{id}/geometry?radius=5"), None).await;
    assert!(g["tube_radius"].as_f64().unwrap() < 5.0);
    assert_eq!(g["warnings"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let id = open(&app, &cube()).await;
    assert_eq!(call(&app, "GET", "/session/999/report", None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", &format!("/session/{id}/strands?rev=7"), None).await.0, StatusCode::NOT_FOUND);
    let bad_edge = json!({"edits": [{"edge": [0, 7], "t": 1}]});
    assert_eq!(json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(bad_edge)).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    let reversed = json!({"edits": [{"edge": [1, 0], "t": 1}]});
    assert_eq!(json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(reversed)).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    let bad_null = json!({"nulls": [{"face": 0, "edge": [0, 7]}]});
    assert_eq!(json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(bad_null)).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    let (_, info) = json_call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(info["revision"], 0, "rejected edits create no revision");
    assert_eq!(call(&app, "POST", "/session", Some("{\"vertices\": 3}".into())).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    let (s, body) = call(&app, "POST", "/session", Some("{\"vertices\": [[0,0,0]], \"faces\": [[0,1,2]]}".into())).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(String::from_utf8(body).unwrap().contains("error"));
}

#[tokio::test]
async fn conditional_edits_detect_stale_revisions() {
    let app = app();
    let m = cube();
    let key = m.edges()[0].key.pair();
    let id = open(&app, &m).await;
    let edit = |rev: u64| Some(json!({"edits": [{"edge": key, "t": 1}], "revision": rev}));
    assert_eq!(json_call(&app, "PATCH", &format!("/session/{id}/labels"), edit(0)).await.0, StatusCode::OK);
    assert_eq!(json_call(&app, "PATCH", &format!("/session/{id}/labels"), edit(0)).await.0, StatusCode::CONFLICT);
    assert_eq!(json_call(&app, "PATCH", &format!("/session/{id}/labels"), edit(1)).await.0, StatusCode::OK);
}

#[tokio::test]
async fn null_sides_open_strands() {
    let app = app();
    let m = cube();
    let id = open(&app, &m).await;
    let key = m.edges()[0].key.pair();
    let face = m.slot(m.edges()[0].radial_order[0]).face.0;
    json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(json!({"nulls": [{"face": face, "edge": key}]}))).await;
    let (_, r) = json_call(&app, "GET", &format!("/session/{id}/report"), None).await;
    assert_eq!(r["paths"], 1);
    assert!(r["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().contains("open")));
    json_call(
        &app,
        "PATCH",
        &format!("/session/{id}/labels"),
        Some(json!({"nulls": [{"face": face, "edge": key, "null": false}]})),
    )
    .await;
    let (_, r) = json_call(&app, "GET", &format!("/session/{id}/report"), None).await;
    assert_eq!(r["paths"], 0);
}

#[tokio::test]
async fn cors_allows_localhost_only() {
    let app = app();
    for (origin, allowed) in [("http://localhost:5173", true), ("http://127.0.0.1:8080", true), ("http://example.com", false)] {
        let req = Request::builder()
            .method("OPTIONS")
            .uri("/session")
            .header("origin", origin)
            .header("access-control-request-method", "POST")
            .body(Body::empty())
            .unwrap();
        let resp = app.clone().oneshot(req).await.unwrap();
        assert_eq!(resp.headers().contains_key("access-control-allow-origin"), allowed, "{origin}");
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_edits_get_distinct_revisions() {
    let app = app();
    let m = cube();
    let id = open(&app, &m).await;
    let mut handles = Vec::new();
    for (i, e) in m.edges().iter().enumerate() {
        let app = app.clone();
        let key = e.key.pair();
        handles.push(tokio::spawn(async move {
            let body = json!({"edits": [{"edge": key, "t": 2}]});
            let r = json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(body)).await;
            let g = json_call(&app, "GET", &format!("/session/{id}/strands"), None).await;
            (i, r.1["revision"].as_u64().unwrap(), g.1["count"].as_u64().unwrap())
        }));
    }
    let mut revs = Vec::new();
    for h in handles {
        let (_, rev, count) = h.await.unwrap();
        assert_eq!(count, 6, "even twists never change the face partition");
        revs.push(rev);
    }
    revs.sort();
    assert_eq!(revs, (1..=12).collect::<Vec<u64>>());
}

#[tokio::test]
async fn save_dir_snapshots_every_revision() {
    let dir = tempfile::tempdir().unwrap();
    let app = router(AppState::new(Some(dir.path().to_path_buf()), 4), None);
    let m = tetrahedron();
    let id = open(&app, &m).await;
    json_call(&app, "PATCH", &format!("/session/{id}/labels"), Some(all_edges(&m, 1))).await;
    let snap = LkmDocument::read(dir.path().join(format!("session-{id}-rev-1.lkm"))).unwrap();
    assert_eq!(trace(&snap.to_mesh().unwrap()).count(), 3);
    assert!(dir.path().join(format!("session-{id}-rev-0.lkm")).exists());
}

#[tokio::test]
async fn serves_static_files_when_configured() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>viewer</html>").unwrap();
    let app = router(AppState::new(None, 4), Some(dir.path().to_path_buf()));
    let (s, body) = call(&app, "GET", "/index.html", None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(body, b"<html>viewer</html>");
}
