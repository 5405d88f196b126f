//! HTTP companion service for interactive net design.
//!
//! Sessions are keyed by a hash of the canonical spec document, kept in an
//! in-memory LRU registry and never modified after creation. All response
//! bodies are serialized with the stable number format, so repeating a
//! request yields identical bytes.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use indexmap::IndexMap;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tower_http::cors::{Any, CorsLayer};

use chedra_core::io::{parse_spec, spec_to_json, to_stable_json, GeometryDocument};
use chedra_core::linkage::{flexion_range, Classification, FlexInterval};
use chedra_core::net::{build_net, build_unchecked, flex, parallel_transfer, ConeNet, FlexionState, ParallelScales};
use chedra_core::validation::{validate_net, validate_state, ValidationReport};
use chedra_core::Error;

pub const DEFAULT_PORT: u16 = 8787;
pub const DEFAULT_CAPACITY: usize = 256;

/// Relative distance by which requests at a singular range end are moved
/// inside the interval.
const NUDGE: f64 = 1e-9;

/// One immutable design session.
#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub net: ConeNet,
    pub range: Option<FlexInterval>,
    pub linkage_range: Option<FlexInterval>,
}

/// Session registry with least-recently-used eviction.
#[derive(Debug)]
pub struct Registry {
    sessions: Mutex<IndexMap<String, Arc<Session>>>,
    capacity: usize,
}

impl Registry {
    pub fn new(capacity: usize) -> Self {
        Registry { sessions: Mutex::new(IndexMap::new()), capacity: capacity.max(1) }
    }

    pub fn get(&self, id: &str) -> Option<Arc<Session>> {
        let mut map = self.sessions.lock();
        let s = map.shift_remove(id)?;
        map.insert(id.to_string(), s.clone());
        Some(s)
    }

    pub fn insert(&self, s: Arc<Session>) {
        let mut map = self.sessions.lock();
        map.shift_remove(&s.id);
        map.insert(s.id.clone(), s);
        while map.len() > self.capacity {
            map.shift_remove_index(0);
        }
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new(DEFAULT_CAPACITY)
    }
}

type Shared = Arc<Registry>;

fn json_response<T: Serialize>(status: StatusCode, body: &T) -> Response {
    match to_stable_json(body) {
        Ok(text) => (status, [(header::CONTENT_TYPE, "application/json")], text).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    nearest: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    offending: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ValidationReport>,
}

impl ErrorBody {
    fn new(error: &'static str, message: impl Into<String>) -> Self {
        ErrorBody { error, message: message.into(), nearest: None, residual: None, offending: None, report: None }
    }
}

fn fail(status: StatusCode, body: ErrorBody) -> Response {
    json_response(status, &body)
}

fn not_found(id: &str) -> Response {
    fail(StatusCode::NOT_FOUND, ErrorBody::new("NotFound", format!("no session {id}")))
}

fn bad_request(message: impl Into<String>) -> Response {
    fail(StatusCode::BAD_REQUEST, ErrorBody::new("BadRequest", message))
}

fn out_of_range(a: f64, range: Option<&FlexInterval>, reason: Option<String>) -> Response {
    let mut body = ErrorBody::new(
        "OutOfRange",
        reason.unwrap_or_else(|| format!("a = {a} lies outside the flexion range")),
    );
    body.nearest = range.map(|r| {
        let x = r.clamp(a);
        if x > 0.0 {
            x
        } else {
            nudge(r, x)
        }
    });
    fail(StatusCode::CONFLICT, body)
}

/// Status for a construction error: flexibility failures are 422, the rest
/// are malformed input.
fn build_failure(e: &Error) -> (StatusCode, &'static str) {
    match e {
        Error::NotFlexible { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "NotFlexible"),
        Error::MixedCases(_) => (StatusCode::UNPROCESSABLE_ENTITY, "MixedCases"),
        Error::IncompatibleChaining { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "IncompatibleChaining"),
        Error::ClosureFailure { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "ClosureFailure"),
        Error::Schema(_) => (StatusCode::BAD_REQUEST, "SchemaError"),
        _ => (StatusCode::BAD_REQUEST, "InvariantError"),
    }
}

fn session_id(net: &ConeNet) -> String {
    let canonical = spec_to_json(&net.spec).unwrap_or_default();
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().take(12).map(|b| format!("{b:02x}")).collect()
}

fn open_session(net: ConeNet) -> Session {
    let range = net.flexion_range().first().copied();
    let linkage_range = net
        .triple_linkages()
        .first()
        .and_then(|(_, _, l)| flexion_range(l).first().copied());
    Session { id: session_id(&net), net, range, linkage_range }
}

/// Creation response.
#[derive(Debug, Serialize)]
struct Created<'a> {
    id: &'a str,
    geometry: GeometryDocument,
    /// Interval on which the whole net flexes.
    range: Option<FlexInterval>,
    /// Interval of the first triple's planar linkage alone.
    linkage_range: Option<FlexInterval>,
    classification: &'a [Classification],
}

fn created(s: &Session) -> Response {
    let state = s.net.reference_state();
    let report = validate_state(&s.net, &state).ok();
    let body = Created {
        id: &s.id,
        geometry: GeometryDocument::new(&state, report),
        range: s.range,
        linkage_range: s.linkage_range,
        classification: &s.net.classification,
    };
    json_response(StatusCode::CREATED, &body)
}

async fn create(State(reg): State<Shared>, body: String) -> Response {
    let spec = match parse_spec(&body) {
        Ok(s) => s,
        Err(e) => {
            let (_, kind) = build_failure(&e);
            return fail(StatusCode::BAD_REQUEST, ErrorBody::new(kind, e.to_string()));
        }
    };
    match build_net(&spec, true) {
        Ok(net) => {
            let s = Arc::new(open_session(net));
            reg.insert(s.clone());
            created(&s)
        }
        Err(e) => {
            let (status, kind) = build_failure(&e);
            let mut body = ErrorBody::new(kind, e.to_string());
            if let Error::NotFlexible { residual, offending } = &e {
                body.residual = Some(*residual);
                body.offending = Some(offending.clone());
                body.report = build_unchecked(&spec).ok().and_then(|n| validate_net(&n, None).ok());
            }
            fail(status, body)
        }
    }
}

fn nudge(r: &FlexInterval, a: f64) -> f64 {
    let d = NUDGE * r.width().max(f64::MIN_POSITIVE);
    if a <= r.lo {
        r.lo + d
    } else if a >= r.hi {
        r.hi - d
    } else {
        a
    }
}

/// State at `a`. Range ends are flagged as boundary; an end where the
/// construction is singular (such as `a = 0`) is served from a point just
/// inside.
fn state_at(s: &Session, a: f64) -> std::result::Result<(FlexionState, bool), Response> {
    if !a.is_finite() {
        return Err(bad_request(format!("a = {a} is not a finite number")));
    }
    let Some(r) = s.range.as_ref() else {
        return Err(out_of_range(a, None, Some("the net has no flexion range".into())));
    };
    if !r.contains(a) {
        return Err(out_of_range(a, Some(r), None));
    }
    let boundary = a == r.lo || a == r.hi;
    let mut result = flex(&s.net, a);
    if boundary && result.is_err() {
        result = flex(&s.net, nudge(r, a));
    }
    match result {
        Ok(st) => Ok((st, boundary)),
        Err(e) => Err(out_of_range(a, Some(r), Some(e.to_string()))),
    }
}

fn geometry_doc(s: &Session, a: Option<f64>) -> std::result::Result<GeometryDocument, Response> {
    let (state, boundary) = match a {
        None => (s.net.reference_state(), false),
        Some(a) => state_at(s, a)?,
    };
    let report = validate_state(&s.net, &state).ok();
    let mut doc = GeometryDocument::new(&state, report);
    doc.boundary = boundary;
    Ok(doc)
}

fn query_f64(q: &HashMap<String, String>, key: &str) -> std::result::Result<Option<f64>, Response> {
    match q.get(key) {
        None => Ok(None),
        Some(v) => v
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| bad_request(format!("{key} = {v:?} is not a number"))),
    }
}

async fn geometry(
    State(reg): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Response {
    let Some(s) = reg.get(&id) else { return not_found(&id) };
    let a = match query_f64(&q, "a") {
        Ok(a) => a,
        Err(r) => return r,
    };
    match geometry_doc(&s, a) {
        Ok(doc) => json_response(StatusCode::OK, &doc),
        Err(r) => r,
    }
}

async fn frames(
    State(reg): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Response {
    let Some(s) = reg.get(&id) else { return not_found(&id) };
    let (from, to) = match (query_f64(&q, "from"), query_f64(&q, "to")) {
        (Ok(Some(f)), Ok(Some(t))) => (f, t),
        (Err(r), _) | (_, Err(r)) => return r,
        _ => return bad_request("from and to are required"),
    };
    let n = match q.get("n").map(|v| v.trim().parse::<usize>()) {
        None => 2,
        Some(Ok(n)) if n >= 1 && n <= 10_000 => n,
        Some(_) => return bad_request("n must be an integer between 1 and 10000"),
    };
    if from > to {
        return bad_request(format!("from = {from} exceeds to = {to}"));
    }
    let values: Vec<f64> = if n == 1 {
        vec![from]
    } else {
        (0..n).map(|i| from + (to - from) * i as f64 / (n - 1) as f64).collect()
    };
    let mut docs = Vec::with_capacity(n);
    for a in values {
        match geometry_doc(&s, Some(a)) {
            Ok(d) => docs.push(d),
            Err(r) => return r,
        }
    }
    json_response(StatusCode::OK, &docs)
}

async fn parallel(State(reg): State<Shared>, Path(id): Path<String>, body: String) -> Response {
    let Some(s) = reg.get(&id) else { return not_found(&id) };
    let scales: ParallelScales = match serde_json::from_str(&body) {
        Ok(x) => x,
        Err(e) => return fail(StatusCode::BAD_REQUEST, ErrorBody::new("SchemaError", e.to_string())),
    };
    match parallel_transfer(&s.net, &scales) {
        Ok(net) => {
            let s = Arc::new(open_session(net));
            reg.insert(s.clone());
            created(&s)
        }
        Err(e) => fail(StatusCode::UNPROCESSABLE_ENTITY, ErrorBody::new("ClosureFailure", e.to_string())),
    }
}

async fn validate(
    State(reg): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Response {
    let Some(s) = reg.get(&id) else { return not_found(&id) };
    let a = match query_f64(&q, "a") {
        Ok(a) => a,
        Err(r) => return r,
    };
    let state = match a {
        None => s.net.reference_state(),
        Some(a) => match state_at(&s, a) {
            Ok((st, _)) => st,
            Err(r) => return r,
        },
    };
    match validate_state(&s.net, &state) {
        Ok(r) => json_response(StatusCode::OK, &r),
        Err(e) => fail(StatusCode::INTERNAL_SERVER_ERROR, ErrorBody::new("Internal", e.to_string())),
    }
}

/// Liveness probe.
#[derive(Debug, Serialize, Deserialize)]
struct Health {
    status: String,
    sessions: usize,
}

async fn health(State(reg): State<Shared>) -> Response {
    json_response(StatusCode::OK, &Health { status: "ok".into(), sessions: reg.len() })
}

/// The application with a fresh registry.
pub fn app() -> Router {
    router(Arc::new(Registry::default()))
}

pub fn router(reg: Arc<Registry>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers(Any);
    Router::new()
        .route("/api/health", get(health))
        .route("/api/nets", post(create))
        .route("/api/nets/{id}", get(geometry))
        .route("/api/nets/{id}/frames", get(frames))
        .route("/api/nets/{id}/parallel", post(parallel))
        .route("/api/nets/{id}/validate", get(validate))
        .layer(cors)
        .with_state(reg)
}

/// Serves until the process is stopped.
pub async fn serve(port: u16) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app()).await
}
