//! Stateless JSON service over HTTP.

use axum::body::Bytes;
use axum::extract::Path;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::api::{self, ApiError, ApiResult, CollectionJson, MutateRequest, PolygonRequest};

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (StatusCode::BAD_REQUEST, Json(self)).into_response()
    }
}

fn parse<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    Ok(serde_json::from_slice(body)?)
}

fn reply<T: Serialize>(r: ApiResult<T>) -> Response {
    match r {
        Ok(v) => Json(v).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn surfaces() -> Response {
    Json(api::surfaces()).into_response()
}

async fn fixture(Path((surface, label)): Path<(String, String)>) -> Response {
    reply((|| {
        let kind = surface.parse().map_err(ApiError::from)?;
        api::fixture(kind, api::parse_label(&label)?)
    })())
}

async fn validate(body: Bytes) -> Response {
    reply(parse::<CollectionJson>(&body).and_then(|c| api::validate(&c)))
}

async fn gram(body: Bytes) -> Response {
    reply(parse::<CollectionJson>(&body).and_then(|c| api::gram(&c)))
}

async fn polygon(body: Bytes) -> Response {
    reply(parse::<PolygonRequest>(&body).and_then(|r| api::polygon(&r.collection, r.svg.as_ref())))
}

async fn quiver(body: Bytes) -> Response {
    reply(parse::<CollectionJson>(&body).and_then(|c| api::quiver(&c)))
}

async fn mutate(body: Bytes) -> Response {
    reply(parse::<MutateRequest>(&body).and_then(|r| api::mutate(&r)))
}

async fn minimal(body: Bytes) -> Response {
    reply(parse::<CollectionJson>(&body).and_then(|c| api::minimal(&c)))
}

/// All routes of the service.
pub fn router() -> Router {
    Router::new()
        .route("/surfaces", get(surfaces))
        .route("/fixtures/{surface}/{label}", get(fixture))
        .route("/collection/validate", post(validate))
        .route("/collection/gram", post(gram))
        .route("/collection/polygon", post(polygon))
        .route("/collection/quiver", post(quiver))
        .route("/collection/mutate", post(mutate))
        .route("/collection/minimal", post(minimal))
}

/// Serve until the process is stopped.
pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    axum::serve(listener, router()).await
}
