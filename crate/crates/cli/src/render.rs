//! Plain-text renderings.

use std::fmt::Write;

use qfock::json::{Diagnostics, QbinomPayload};
use qfock::rep::{ModuleReport, Recipe, RecipeEntry};
use qfock::selftest::{TimedResult, VerifyOutcome};

fn indices(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "))
}

/// The `_eps` value when present, otherwise the generic polynomial.
pub fn qbinom(q: &QbinomPayload) -> String {
    let key = |suffix: &str| q.values.keys().find(|k| k.ends_with(suffix)).cloned();
    let k = key("_eps").or_else(|| key("_q")).expect("generic value always present");
    q.values[&k].clone()
}

pub fn module(r: &ModuleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "module: {}", r.kind.describe(r.p));
    let _ = writeln!(s, "realization: {}", r.realization);
    let _ = writeln!(s, "dim: {}", r.dim());
    let weights: Vec<String> = r.weights.iter().map(|w| w.lambda.to_string()).collect();
    let _ = writeln!(s, "weights: {}", weights.join(" "));
    let _ = writeln!(s, "irreducible: {}", r.irreducible);
    let _ = writeln!(s, "maximal submodule: {}", indices(&r.maximal_submodule));
    for h in &r.highest_weight_vectors {
        let terms: Vec<String> = h.vector.iter().map(|(i, c)| format!("({c}) {}", r.basis[*i])).collect();
        let _ = writeln!(s, "highest weight vector: weight {}: {}", h.weight.lambda, terms.join(" + "));
    }
    for c in &r.classification {
        let _ = writeln!(
            s,
            "{}: V({}) generated by {}{}",
            c.role,
            c.lambda,
            c.highest_weight_vector,
            if c.irreducible { "" } else { " (not simple)" }
        );
    }
    if !r.boundary_flags.is_empty() {
        let labels: Vec<String> = r.boundary_flags.iter().map(|i| r.basis[*i].to_string()).collect();
        let _ = writeln!(s, "boundary flags: {}", labels.join(" "));
    }
    s.trim_end().to_string()
}

fn entry(e: &RecipeEntry) -> String {
    let weight = e.realized_lambda.map_or("none".to_string(), |l| l.to_string());
    let simple = if e.irreducible { "simple" } else { "not simple" };
    format!("{} ({simple}, highest weight {weight})", e.description)
}

pub fn recipe(r: &Recipe) -> String {
    let mut s = format!("V({}) at p={} (window {})\n", r.lambda, r.p, r.window);
    let _ = writeln!(s, "primary: {}", entry(&r.primary));
    for a in &r.alternates {
        let _ = writeln!(s, "alternate: {}", entry(a));
    }
    let _ = write!(s, "verified: {}", r.verified());
    s
}

pub fn verify(v: &VerifyOutcome, d: &Diagnostics) -> String {
    let mut s = format!("realization {}, p={}, bound {}, seed {}\n", v.realization, v.p, v.bound, v.seed);
    for c in &d.checks {
        match &c.counterexample {
            None => {
                let _ = writeln!(s, "{}: PASS ({} checks)", c.name, c.count);
            }
            Some(x) => {
                let _ = writeln!(s, "{}: FAIL ({} checks): {x}", c.name, c.count);
            }
        }
    }
    let _ = write!(s, "passed: {}", v.passed());
    s
}

pub fn selftest(results: &[TimedResult]) -> String {
    let lines: Vec<String> = results
        .iter()
        .map(|t| {
            let r = &t.result;
            let status = if r.passed { "PASS" } else { "FAIL" };
            format!("criterion {}: {status}  {} ({}; {:.2}s)", r.id, r.name, r.detail, t.seconds)
        })
        .collect();
    lines.join("\n")
}
