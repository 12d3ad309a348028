//! wasm-bindgen exports for the static page in `www/`. Every function
//! returns a JSON string so the page stays free of generated bindings types.

use semigroup_census::closed::{closed_set_from_fiber, fiber, fiber_report as report};
use semigroup_census::strata::HalfDecomposition;
use semigroup_census::tree::{self, TreeConfig};
use semigroup_census::Semigroup;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest genus the page may request; keeps a click under a few seconds.
pub const PAGE_MAX_GENUS: u32 = 22;
/// Largest genus of a fiber base the page may request.
pub const PAGE_MAX_FIBER_GENUS: u32 = 8;

fn parse_list(text: &str) -> Result<Vec<u32>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("not a nonnegative integer: {s:?}")))
        .collect()
}

fn describe(s: &Semigroup) -> Value {
    let p = s.even_gap_profile();
    json!({
        "generators": s.minimal_generators(),
        "genus": s.genus(),
        "frobenius": s.frobenius(),
        "multiplicity": s.multiplicity(),
        "gaps": s.gaps(),
        "gamma": p.gamma,
        "even_gaps": p.even_gaps,
        "odd_nongaps": p.odd_nongaps,
        "smallest_odd_nongap": p.smallest_odd_nongap,
        "symmetric": s.is_symmetric(),
        "decomposition": HalfDecomposition::new(s).to_string(),
        "name": s.to_string(),
    })
}

pub fn strata_json(max_genus: u32) -> Result<String, String> {
    if max_genus > PAGE_MAX_GENUS {
        return Err(format!("the page is limited to genus {PAGE_MAX_GENUS}"));
    }
    let rows = tree::stratum_rows(max_genus, &TreeConfig::default()).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = rows.iter().map(|r| json!({ "genus": r.genus, "counts": r.counts, "total": r.total })).collect();
    Ok(json!({ "rows": rows }).to_string())
}

pub fn profile_json(generators: &str) -> Result<String, String> {
    let s = Semigroup::from_generators(&parse_list(generators)?).map_err(|e| e.to_string())?;
    Ok(describe(&s).to_string())
}

pub fn fiber_json(gaps: &str) -> Result<String, String> {
    let t = Semigroup::from_gap_set(parse_list(gaps)?).map_err(|e| e.to_string())?;
    if t.genus() > PAGE_MAX_FIBER_GENUS {
        return Err(format!("the page is limited to bases of genus {PAGE_MAX_FIBER_GENUS}"));
    }
    let r = report(&t).map_err(|e| e.to_string())?;
    let members: Vec<Value> = fiber(&t)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| {
            let b = closed_set_from_fiber(&t, s).map(|b| b.elements().to_vec()).unwrap_or_default();
            json!({ "semigroup": s.to_string(), "decomposition": HalfDecomposition::new(s).to_string(), "closed_set": b })
        })
        .collect();
    Ok(json!({ "base": describe(&t), "per_i": r.per_i, "total": r.total, "members": members }).to_string())
}

/// `{"rows": [{"genus", "counts", "total"}]}` for genera `0..=max_genus`.
#[wasm_bindgen]
pub fn strata_table(max_genus: u32) -> Result<String, JsError> {
    strata_json(max_genus).map_err(|e| JsError::new(&e))
}

/// Invariants of the semigroup generated by a comma separated list.
#[wasm_bindgen]
pub fn semigroup_profile(generators: &str) -> Result<String, JsError> {
    profile_json(generators).map_err(|e| JsError::new(&e))
}

/// The genus-3γ semigroups whose half is the semigroup with the given gaps,
/// bucketed by smallest odd member, with their closed sets.
#[wasm_bindgen]
pub fn fiber_report(gaps: &str) -> Result<String, JsError> {
    fiber_json(gaps).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strata() {
        let v: Value = serde_json::from_str(&strata_json(4).unwrap()).unwrap();
        assert_eq!(v["rows"][4]["counts"], json!([1, 2, 4]));
        assert!(strata_json(PAGE_MAX_GENUS + 1).is_err());
    }

    #[test]
    fn profile() {
        let v: Value = serde_json::from_str(&profile_json("3, 5 7").unwrap()).unwrap();
        assert_eq!(v["genus"], 3);
        assert_eq!(v["gamma"], 2);
        assert_eq!(v["odd_nongaps"], json!([5, 3]));
        assert!(profile_json("4,6").is_err());
        assert!(profile_json("x").is_err());
    }

    #[test]
    fn fiber() {
        let v: Value = serde_json::from_str(&fiber_json("1,2,3,6").unwrap()).unwrap();
        assert_eq!(v["per_i"], json!([1, 2, 3, 3, 1]));
        assert_eq!(v["members"].as_array().unwrap().len(), 10);
        assert!(fiber_json("1,2,4,6").is_err());
    }
}
