use serde_json::Value;
use zsl_demo::{constant_curves, cover_profile, sumset_explorer};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn counterexample_has_no_certificate() {
    let v = parse(sumset_explorer(19, "0,1,2,3,5,10", "0,1,2,3,5,10").unwrap());
    assert_eq!(v["sum"].as_array().unwrap().len(), 14);
    assert_eq!(v["r"], 2);
    assert!(v["certificate"].is_null());
}

#[test]
fn interval_pair_gets_certificate() {
    let v = parse(sumset_explorer(13, "0,1,2", "0,1,2,3").unwrap());
    assert_eq!(v["r"], -1);
    assert_eq!(v["certificate"]["ok"], true);
    assert!(sumset_explorer(13, "", "1").is_err());
    assert!(sumset_explorer(100, "1", "1").is_err());
}

#[test]
fn cover_profile_matches_extremal_family() {
    let v = parse(cover_profile(23, "0,1,2,3,4,6,12").unwrap());
    assert_eq!(v["min"]["len"], 13);
    assert_eq!(v["profile"].as_array().unwrap().len(), 22);
}

#[test]
fn curves_are_sampled() {
    let v = parse(constant_curves(0.8, 50).unwrap());
    assert_eq!(v["c1"].as_array().unwrap().len(), 50);
    assert!(constant_curves(0.5, 10).is_err());
}
