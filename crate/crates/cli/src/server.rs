//! `POST /reconstruct`: the editor's reconstruction endpoint.
//!
//! Request JSON:
//! `{"space": "hermite_cubic" | [2,3], "functionals": ["v@0","d1@0"], "start": 0,
//!   "data": [[g1...],[g2...]] | [[[x channels]],[[y channels]]], "grid": 16, "boundary": "mirror"}`.
//! Only `space` and `data` are required. The response is
//! `{"x": [...], "y": [[...] per dimension], "consistency": r}`, or the curve
//! CSV written by `mbspline reconstruct` when `?format=csv` is given.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::{Json, Router};
use mbspline::sampling::{parse_functionals, AnalysisFunctional, Boundary};
use serde::Deserialize;

use crate::job::ReconstructJob;
use crate::space::SpaceSpec;
use crate::table::curve_csv;
use crate::CliError;

/// Largest degree the endpoint will build a basis for.
pub const MAX_DEGREE: u32 = 12;

pub const DEFAULT_GRID: usize = 16;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SpaceField {
    Degrees(Vec<u32>),
    Id(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionalsField {
    List(Vec<String>),
    Joined(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SampleData {
    Scalar(Vec<Vec<f64>>),
    Parametric(Vec<Vec<Vec<f64>>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructRequest {
    pub space: SpaceField,
    #[serde(default)]
    pub functionals: Option<FunctionalsField>,
    #[serde(default)]
    pub start: i64,
    pub data: SampleData,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default)]
    pub boundary: Boundary,
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

impl ReconstructRequest {
    pub fn into_job(self) -> Result<ReconstructJob, CliError> {
        let spec = match &self.space {
            SpaceField::Degrees(n) => SpaceSpec::Degrees(n.clone()),
            SpaceField::Id(s) => s.parse()?,
        };
        let degrees = match &spec {
            SpaceSpec::Named(id) => id.degrees(),
            SpaceSpec::Degrees(n) => n.clone(),
            SpaceSpec::File(p) => return Err(CliError::Usage(format!("unknown space `{}`", p.display()))),
        };
        if degrees.iter().any(|&d| d > MAX_DEGREE) || degrees.len() > MAX_DEGREE as usize + 1 {
            return Err(CliError::Usage(format!("degrees above {MAX_DEGREE} are not served")));
        }
        let space = spec.load()?;
        let functionals: Vec<AnalysisFunctional> = match self.functionals {
            None => space.default_functionals,
            Some(FunctionalsField::Joined(s)) => parse_functionals(&s)?,
            Some(FunctionalsField::List(v)) => parse_functionals(&v.join(","))?,
        };
        let dims = match self.data {
            SampleData::Scalar(channels) => vec![channels],
            SampleData::Parametric(dims) => dims,
        };
        Ok(ReconstructJob {
            gs: space.gs,
            functionals,
            start: self.start,
            dims,
            grid: self.grid,
            boundary: self.boundary,
        })
    }
}

#[derive(Debug, Deserialize)]
struct FormatQuery {
    format: Option<String>,
}

pub fn router() -> Router {
    Router::new().route("/reconstruct", post(reconstruct_handler))
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}

async fn reconstruct_handler(Query(query): Query<FormatQuery>, body: Bytes) -> Response {
    let csv = match query.format.as_deref() {
        None | Some("json") => false,
        Some("csv") => true,
        Some(other) => return bad_request(format!("unknown format `{other}`")),
    };
    let result = tokio::task::spawn_blocking(move || {
        let request: ReconstructRequest = serde_json::from_slice(&body)?;
        request.into_job()?.run()
    })
    .await;
    match result {
        Ok(Ok(curve)) if csv => ([(header::CONTENT_TYPE, "text/csv")], curve_csv(&curve)).into_response(),
        Ok(Ok(curve)) => Json(curve).into_response(),
        Ok(Err(e)) => bad_request(e.to_string()),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

fn bad_request(message: String) -> Response {
    (StatusCode::BAD_REQUEST, Json(serde_json::json!({ "error": message }))).into_response()
}
