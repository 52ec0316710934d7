use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use lk_core::LkError;
use serde_json::json;

/// An error response: status code plus a JSON `{"error": ...}` body.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    pub fn not_found(what: impl Into<String>) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, message: what.into() }
    }

    pub fn conflict(what: impl Into<String>) -> Self {
        ApiError { status: StatusCode::CONFLICT, message: what.into() }
    }

    pub fn invalid(what: impl Into<String>) -> Self {
        ApiError { status: StatusCode::UNPROCESSABLE_ENTITY, message: what.into() }
    }

    pub fn internal(what: impl Into<String>) -> Self {
        ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, message: what.into() }
    }
}

impl From<LkError> for ApiError {
    fn from(e: LkError) -> Self {
        match e {
            LkError::Io(_) => ApiError::internal(e.to_string()),
            _ => ApiError::invalid(e.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}
