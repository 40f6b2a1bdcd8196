use std::process::Command;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use mbspline_cli::server::router;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn post(uri: &str, body: String) -> (StatusCode, Vec<u8>) {
    let request = Request::post(uri)
        .header("content-type", "application/json")
        .body(Body::from(body))
        .unwrap();
    let response = router().oneshot(request).await.unwrap();
    let status = response.status();
    (status, response.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn post_json(body: Value) -> (StatusCode, Value) {
    let (status, bytes) = post("/reconstruct", body.to_string()).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

#[tokio::test]
async fn hermite_five_knots() {
    let (status, v) = post_json(json!({
        "space": "hermite_cubic",
        "functionals": ["v@0", "d1@0"],
        "data": [[0, 1, 0, -1, 0], [1, 0, -1, 0, 1]],
        "grid": 8
    }))
    .await;
    assert_eq!(status, StatusCode::OK, "{v}");
    let x = v["x"].as_array().unwrap();
    let y = v["y"].as_array().unwrap();
    assert_eq!(y.len(), 1);
    assert_eq!(x.len(), y[0].as_array().unwrap().len());
    assert_eq!(x.len(), 4 * 8 + 1);
    assert_eq!(y[0][8], 1.0);
    assert!(v["consistency"].as_f64().unwrap() < 1e-15);
}

#[tokio::test]
async fn parametric_curve_by_degrees() {
    let circle: Vec<Vec<f64>> = (0..12).map(|k| vec![(k as f64 * 0.5).cos(), (k as f64 * 0.5).sin()]).collect();
    let xs: Vec<f64> = circle.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = circle.iter().map(|p| p[1]).collect();
    let (status, v) = post_json(json!({"space": [3], "data": [[xs], [ys]], "start": -2, "boundary": "zero"})).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["y"].as_array().unwrap().len(), 2);
    assert!(v["x"][0].as_f64().unwrap() >= -2.0);
}

#[tokio::test]
async fn bad_requests_get_messages() {
    for (body, needle) in [
        (json!({"space": "hermite_cubic", "data": [[0, 1, 0, -1, 0]]}), "expected 2 channels, got 1"),
        (json!({"space": "no_such_basis", "data": [[0, 1]]}), "unknown space"),
        (json!({"space": "/etc/passwd", "data": [[0, 1]]}), "unknown space"),
        (json!({"space": [3, 2], "data": [[0, 1]]}), "strictly increasing"),
        (json!({"space": [40], "data": [[0, 1]]}), "not served"),
        (json!({"space": [3], "data": [[0, 1, 2, 3, 4, 5]], "grid": 1}), "grid density"),
        (json!({"space": [3], "data": [[0, 1, 2]], "extra": 1}), "unknown field"),
    ] {
        let (status, v) = post_json(body.clone()).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        let message = v["error"].as_str().unwrap();
        assert!(message.contains(needle), "{body}: {message}");
    }
    let (status, _) = post("/reconstruct", "{not json".into()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = post("/reconstruct?format=xml", json!({"space": [3], "data": [[0]]}).to_string()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn csv_matches_command_line() {
    let f: Vec<f64> = (0..24).map(|k| (k as f64 * 0.4).sin() * 1.7).collect();
    let df: Vec<f64> = (0..24).map(|k| (k as f64 * 0.4).cos() * 0.68).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("samples.csv");
    let mut csv = String::from("k,g1,g2\n");
    for k in 0..24 {
        csv.push_str(&format!("{},{:?},{:?}\n", k + 5, f[k], df[k]));
    }
    std::fs::write(&path, csv).unwrap();
    let cli = Command::new(env!("CARGO_BIN_EXE_mbspline"))
        .args(["reconstruct", "derivative_sampling(2)", "--samples", path.to_str().unwrap(), "--grid", "10"])
        .output()
        .unwrap();
    assert!(cli.status.success());

    let body = json!({"space": "derivative_sampling(2)", "start": 5, "data": [f, df], "grid": 10});
    let (status, served) = post("/reconstruct?format=csv", body.to_string()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(served, cli.stdout);
}
