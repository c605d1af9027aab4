//! Browser bindings for the kernel. Every export takes closure text and
//! returns a JSON string; failures come back as `{"error": ...}` so the
//! page never has to catch exceptions.

use lambdadelta::{
    default_fuel, parse_closure, print_closure, rt_normal_form, step_rt, whnf_rt, ApplicabilityDomain,
    BoundCount, Checker, Closure, SortPolicy,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn parse(text: &str) -> Result<Closure, Value> {
    parse_closure(text).map_err(|e| json!({ "error": format!("parse error: {e}") }))
}

fn show(c: &Closure, t: &lambdadelta::Term) -> String {
    print_closure(&Closure::new(c.env.clone(), t.clone()))
}

fn finish(v: Result<Value, Value>) -> String {
    v.unwrap_or_else(|e| e).to_string()
}

/// Lists the single bound rt-steps of a closure, so the page can walk a
/// reduction one click at a time.
#[wasm_bindgen]
pub fn reduce(text: &str) -> String {
    finish(parse(text).map(|c| {
        let steps: Vec<Value> = step_rt(&c.env, &c.subject, &SortPolicy::Successor)
            .into_iter()
            .map(|s| json!({ "bound": s.bound.0, "rule": s.rule.to_string(), "closure": show(&c, &s.result) }))
            .collect();
        json!({ "closure": print_closure(&c), "steps": steps })
    }))
}

/// Decides validity under an applicability domain written as on the
/// command line: `omega`, `empty` or `set:0,1`.
#[wasm_bindgen]
pub fn check(text: &str, domain: &str) -> String {
    finish(parse(text).and_then(|c| {
        let domain: ApplicabilityDomain =
            domain.parse().map_err(|e| json!({ "error": format!("bad domain: {e}") }))?;
        let report = Checker::new(domain).check_closure(&c).map_err(|e| json!({ "error": e.to_string() }))?;
        Ok(match report.failure {
            None => json!({ "valid": true }),
            Some(f) => json!({
                "valid": false,
                "premise": f.premise.to_string(),
                "path": f.path.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "cause": f.cause.to_string(),
            }),
        })
    }))
}

/// Weak head normal form when `bound` is negative, otherwise the r-normal
/// form of the canonical type reached after `bound` t-steps.
#[wasm_bindgen]
pub fn normal_form(text: &str, bound: i32) -> String {
    finish(parse(text).and_then(|c| {
        let fuel = default_fuel(c.size());
        let kernel = |e: lambdadelta::KernelError| json!({ "error": e.to_string() });
        if bound < 0 {
            let w = whnf_rt(&c.env, &c.subject, fuel).map_err(kernel)?;
            Ok(json!({ "bound": w.t_steps.0, "closure": show(&c, &w.form) }))
        } else {
            let n = BoundCount(bound as u64);
            let t = rt_normal_form(&c.env, &c.subject, n, &SortPolicy::Successor, fuel).map_err(kernel)?;
            Ok(json!({ "bound": n.0, "closure": show(&c, &t) }))
        }
    }))
}
