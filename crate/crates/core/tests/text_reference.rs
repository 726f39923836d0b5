//! Normalization, EM and F1 against values produced by the reference
//! Python normalizer (`fixtures/gen_text_cases.py`).

use rtqa_core::text::{exact_match, normalize_text, token_f1};
use serde_json::Value;

fn cases() -> Value {
    serde_json::from_str(include_str!("fixtures/text_cases.json")).unwrap()
}

#[test]
fn normalize_matches_reference() {
    let all = cases();
    let list = all["normalize"].as_array().unwrap();
    assert!(list.len() > 200);
    for case in list {
        let input = case["input"].as_str().unwrap();
        assert_eq!(normalize_text(input), case["expected"].as_str().unwrap(), "input {input:?}");
    }
}

#[test]
fn f1_and_em_match_reference() {
    let all = cases();
    for case in all["pairs"].as_array().unwrap() {
        let (a, b) = (case["a"].as_str().unwrap(), case["b"].as_str().unwrap());
        let want = case["f1"].as_f64().unwrap();
        assert!((token_f1(a, b) - want).abs() < 1e-12, "{a:?} vs {b:?}");
        assert_eq!(exact_match(a, b), case["em"].as_bool().unwrap(), "{a:?} vs {b:?}");
    }
}

#[test]
fn both_empty_is_a_perfect_match() {
    assert_eq!(token_f1("", "the"), 1.0);
    assert_eq!(token_f1("", "apple"), 0.0);
}
