//! WebAssembly bindings for the demo page in `www/`: analyze a fan, refine
//! it, and reduce words in its Coxeter group. Every entry point takes and
//! returns JSON strings.

use serde_json::{json, Value};
use torfan::pi1::{self, AbelianVerdict};
use torfan::racg::CommutationGraph;
use torfan::{catalog, topology, Fan, Word};
use wasm_bindgen::prelude::*;

fn parse(fan_json: &str) -> Result<Fan, String> {
    Fan::parse(fan_json).map_err(|e| e.to_string())
}

pub fn analyze(fan_json: &str) -> Result<String, String> {
    let fan = parse(fan_json)?;
    let report = pi1::analyze(&fan, false);
    let (case, witness) = match &report.abelian {
        Some(AbelianVerdict::NonAbelian { witness }) => {
            (json!("non_abelian"), json!(witness.to_string()))
        }
        Some(v) => (json!(v.tag()), Value::Null),
        None => (Value::Null, Value::Null),
    };
    let value = json!({
        "fan": fan.to_document(),
        "smooth": fan.is_smooth(),
        "complete": fan.is_complete(),
        "flag_like": fan.is_flag_like(),
        "aspherical": fan.is_smooth() && topology::is_aspherical(&fan),
        "connected": report.connectedness.connected,
        "components": report.connectedness.component_count(),
        "pi1_case": case,
        "pi1_witness": witness,
        "pi1_structure": report.structure.map(|s| s.to_string()),
        "primitive_collections": fan.primitive_collections().iter().map(|p| p.rays().to_vec()).collect::<Vec<_>>(),
    });
    Ok(value.to_string())
}

pub fn refine(fan_json: &str) -> Result<String, String> {
    Ok(parse(fan_json)?.barycentric_refine().to_json())
}

pub fn reduce(fan_json: &str, word: &str) -> Result<String, String> {
    let fan = parse(fan_json)?;
    let graph = CommutationGraph::from_fan(&fan);
    let w = word
        .parse::<Word>()
        .and_then(|w| graph.check(&w))
        .map_err(|e| e.to_string())?;
    let in_pi1 = pi1::choose_basis(&fan)
        .ok()
        .map(|b| pi1::in_pi1(&pi1::char_matrix(&fan, &b), &w));
    Ok(json!({
        "normal_form": graph.reduce(&w).to_string(),
        "order": graph.order(&w).to_string(),
        "in_commutator": graph.in_commutator_subgroup(&w),
        "in_pi1": in_pi1,
    })
    .to_string())
}

pub fn example(name: &str) -> Result<String, String> {
    catalog::by_name(name)
        .map(|f| f.to_json())
        .ok_or_else(|| format!("unknown example `{name}`"))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = analyzeFan)]
pub fn analyze_fan(fan_json: &str) -> Result<String, JsValue> {
    js(analyze(fan_json))
}

#[wasm_bindgen(js_name = refineFan)]
pub fn refine_fan(fan_json: &str) -> Result<String, JsValue> {
    js(refine(fan_json))
}

#[wasm_bindgen(js_name = reduceWord)]
pub fn reduce_word(fan_json: &str, word: &str) -> Result<String, JsValue> {
    js(reduce(fan_json, word))
}

#[wasm_bindgen(js_name = exampleFan)]
pub fn example_fan(name: &str) -> Result<String, JsValue> {
    js(example(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_klein_bottle() {
        let v: Value = serde_json::from_str(&analyze(&example("klein").unwrap()).unwrap()).unwrap();
        assert_eq!(v["pi1_case"], "non_abelian");
        assert_eq!(v["aspherical"], true);
        assert_eq!(v["fan"]["rays"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn refine_plane() {
        let refined = refine(&example("rp2").unwrap()).unwrap();
        let fan = Fan::parse(&refined).unwrap();
        assert_eq!(fan.ray_count(), 6);
        assert!(fan.is_flag_like());
    }

    #[test]
    fn reduce_words() {
        let torus = example("torus").unwrap();
        let v: Value = serde_json::from_str(&reduce(&torus, "2 0 2 0").unwrap()).unwrap();
        assert_eq!(v["normal_form"], "2 0 2 0");
        assert_eq!(v["order"], "infinite");
        assert_eq!(v["in_commutator"], true);
        assert!(reduce(&torus, "7").is_err());
        assert!(example("nowhere").is_err());
    }
}
