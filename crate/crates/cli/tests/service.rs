use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use pezzo_cli::service::router;

async fn call(method: &str, uri: &str, body: Value) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(if method == "GET" { Body::empty() } else { Body::from(body.to_string()) })
        .unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn p2_line_bundles() -> Value {
    json!({"surface": "P2", "objects": [{"r": 1, "c1": [0]}, {"r": 1, "c1": [1]}, {"r": 1, "c1": [2]}]})
}

#[tokio::test]
async fn surfaces_lists_all_ten() {
    let (status, v) = call("GET", "/surfaces", Value::Null).await;
    assert_eq!(status, StatusCode::OK);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 10);
    assert_eq!(list[0]["id"], "P2");
    assert_eq!(list[9]["weyl_order"], 696_729_600u64);
}

#[tokio::test]
async fn mutate_triangle_at_zero_gives_rank_four() {
    let body = json!({"collection": p2_line_bundles(), "index": 0, "side": "right"});
    let (status, v) = call("POST", "/collection/mutate", body).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["total_rank"], 4);
    assert_eq!(v["minimal"], false);
    let ranks: Vec<i64> = v["collection"]["objects"].as_array().unwrap().iter().map(|o| o["r"].as_i64().unwrap()).collect();
    assert_eq!(ranks, vec![1, 2, 1]);
    assert_eq!(v["gram"], json!([[1, 3, 3], [0, 1, 3], [0, 0, 1]]));
    assert_eq!(v["polygon"]["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["quiver"]["c"][2][0], 6);
}

#[tokio::test]
async fn block_mutation_and_unknown_op() {
    let (_, fixture) = call("GET", "/fixtures/P1xP1/3,2", Value::Null).await;
    let body = json!({"collection": fixture, "index": 1, "op": "block_quiver_mutate", "side": "right"});
    let (status, v) = call("POST", "/collection/mutate", body).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert!(v.get("target").is_none());
    let body = json!({"collection": fixture, "index": 1, "op": "rotate"});
    let (status, v) = call("POST", "/collection/mutate", body).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"], "unknown_op");
}

#[tokio::test]
async fn validate_fixture_is_ok() {
    let (status, fixture) = call("GET", "/fixtures/X5/3,7", Value::Null).await;
    assert_eq!(status, StatusCode::OK);
    let (status, v) = call("POST", "/collection/validate", fixture).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["ok"], true, "{v}");
    assert_eq!(v["minimal"], true);
    assert_eq!(v["blocks"], json!([2, 2, 4]));
}

#[tokio::test]
async fn malformed_c1_length_is_rejected() {
    let body = json!({"surface": "X2", "objects": [{"r": 1, "c1": [0, 0]}]});
    let (status, v) = call("POST", "/collection/validate", body).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"], "dimension_mismatch");
}

#[tokio::test]
async fn unparseable_bodies_are_rejected() {
    for body in [json!({"surface": "X9", "objects": []}), json!({"objects": []}), json!([1, 2])] {
        let (status, v) = call("POST", "/collection/quiver", body).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert_eq!(v["error"], "malformed_json");
    }
    let (status, v) = call("GET", "/fixtures/P2/9,9", Value::Null).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"], "unknown_label");
}

#[tokio::test]
async fn polygon_of_triangle() {
    let mut body = p2_line_bundles();
    body["svg"] = json!({"forbidden_region": true});
    let (status, v) = call("POST", "/collection/polygon", body).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["vertices"], json!([[1, 8], [-1, -7], [0, -1]]));
    assert_eq!(v["area_x2"], 3);
    assert_eq!(v["origin_in_forbidden"], true);
    assert_eq!(v["svg"].as_str().unwrap().matches("<path").count(), 1);
}

#[tokio::test]
async fn quiver_of_triangle() {
    let (status, v) = call("POST", "/collection/quiver", p2_line_bundles()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["quiver"]["c"], json!([[0, 3, -3], [-3, 0, 3], [3, -3, 0]]));
    assert_eq!(v["complete"], true);
}

#[tokio::test]
async fn minimal_reduces_mutated_triangle() {
    let body = json!({"collection": p2_line_bundles(), "index": 0});
    let (_, mutated) = call("POST", "/collection/mutate", body).await;
    let (status, v) = call("POST", "/collection/minimal", mutated["collection"].clone()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["minimal"], false);
    assert_eq!(v["total_rank"], 4);
    assert_eq!(v["reduced_total_rank"], 3);
}

#[tokio::test]
async fn non_very_strong_mutation_is_rejected() {
    let body = json!({"collection": {"surface": "P2", "objects": [{"r": 1, "c1": [0]}, {"r": 1, "c1": [2]}, {"r": 1, "c1": [1]}]}, "index": 0});
    let (status, v) = call("POST", "/collection/mutate", body).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["ok"], false);
}

#[tokio::test]
async fn responses_are_pure() {
    let body = json!({"collection": p2_line_bundles(), "index": 1, "side": "left"});
    let a = call("POST", "/collection/mutate", body.clone()).await;
    let b = call("POST", "/collection/mutate", body).await;
    assert_eq!(a, b);
}
