//! Browser bindings: build a family, run the exact clique search on a small
//! product graph, and evaluate the bounds for one parameter cell. Every
//! entry point returns a JSON string; see `www/index.html` for the page.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use xorkneser::analysis::{
    best_construction, best_upper, gamma_raw, gamma_upper, power_lower, to_f64, upper_c2,
};
use xorkneser::constructions::{
    build_core, construct_f2_lower, core_to_family, matrix_family, plane_family,
};
use xorkneser::solver::{build_product_graph_with_budget, max_clique};
use xorkneser::{verify_family, Family};

/// Largest product graph the page will search.
pub const DEMO_VERTEX_LIMIT: u128 = 4096;

fn family_json(f: &Family, name: &str) -> Value {
    let l = f.layout();
    let report = verify_family(f);
    json!({
        "construction": name,
        "ell": l.ell(),
        "n": l.n(),
        "k": l.k(),
        "size": f.len(),
        "members": f.member_lists(),
        "valid": report.valid,
    })
}

/// `kind` is `f2 (n, k)`, `plane (q)`, `matrix (n, k, t)` or `core (ell, n)`;
/// unused arguments are ignored.
pub fn construct_json(kind: &str, a: usize, b: usize, c: usize) -> Result<String, String> {
    let f = match kind {
        "f2" => construct_f2_lower(a, b),
        "plane" => plane_family(a),
        "matrix" => matrix_family(a, b, c),
        "core" => build_core(a).and_then(|core| core_to_family(&core, &vec![b; a])),
        other => return Err(format!("unknown construction `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    Ok(family_json(&f, kind).to_string())
}

pub fn solve_json(n: usize, k: usize, ell: usize, budget: u64) -> Result<String, String> {
    let g =
        build_product_graph_with_budget(n, k, ell, DEMO_VERTEX_LIMIT).map_err(|e| e.to_string())?;
    let r = max_clique(&g, budget);
    let labels = g.labels().expect("product graphs carry labels");
    let sets: Vec<Vec<usize>> = r
        .witness
        .iter()
        .map(|&v| labels.vertex_set(v).to_vec())
        .collect();
    Ok(json!({
        "ell": ell,
        "n": n,
        "k": k,
        "vertices": g.vertex_count(),
        "size": r.size,
        "exact": r.is_exact(),
        "nodes": r.nodes_explored,
        "members": sets,
    })
    .to_string())
}

pub fn bounds_json(n: usize, k: usize, ell: usize) -> Result<String, String> {
    let err = |e: xorkneser::Error| e.to_string();
    let (family, source) = best_construction(n, k, ell).map_err(err)?;
    let (upper, upper_source) = best_upper(n, k, ell).map_err(err)?;
    let gamma = if k >= 2 {
        let raw = gamma_raw(k).map_err(err)?;
        let used = gamma_upper(k).map_err(err)?;
        json!({"raw": raw.to_string(), "raw_f64": to_f64(&raw), "upper": used.to_string()})
    } else {
        Value::Null
    };
    let c2 = if ell == 2 && n >= 2 && k >= 2 {
        Some(upper_c2(n, k).map_err(err)?.to_string())
    } else {
        None
    };
    let lower_power = power_lower(n, k, ell).map_err(err)?.map(|v| v.to_string());
    Ok(json!({
        "ell": ell,
        "n": n,
        "k": k,
        "lower": family.len(),
        "lower_source": source,
        "power_lower": lower_power,
        "upper": upper.to_string(),
        "upper_source": upper_source,
        "upper_c2": c2,
        "gamma": gamma,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn construct(kind: &str, a: usize, b: usize, c: usize) -> Result<String, JsError> {
    construct_json(kind, a, b, c).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(n: usize, k: usize, ell: usize, budget: u64) -> Result<String, JsError> {
    solve_json(n, k, ell, budget).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bounds(n: usize, k: usize, ell: usize) -> Result<String, JsError> {
    bounds_json(n, k, ell).map_err(|e| JsError::new(&e))
}
