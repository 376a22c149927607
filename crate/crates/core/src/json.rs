//! Versioned JSON documents for command output.
//!
//! Every coefficient is rendered as a string, so big integers and cyclotomic
//! values survive any JSON reader. Maps are `BTreeMap`s and vectors keep
//! computation order, which makes serialization byte-for-byte deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{q_binomial_at_eps, try_q_binomial, ArithError, CyclotomicField, RootOrder};
use crate::fock::FockLabel;
use crate::rep::{Construction, ModuleKind, ModuleReport, Recipe, RecipeEntry, SparseVector};
use crate::selftest::{CriterionResult, VerifyOutcome};
use crate::uq::{RelationFailure, Weight};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: CommandEcho,
    pub payload: Payload,
    pub diagnostics: Diagnostics,
}

/// The subcommand and its arguments as given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: BTreeMap<String, String>,
}

impl CommandEcho {
    pub fn new(name: &str) -> Self {
        CommandEcho { name: name.to_string(), args: BTreeMap::new() }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Qbinom(QbinomPayload),
    Module(Box<ModuleDto>),
    Classify(RecipeDto),
    Verify(VerifyDto),
    Selftest(SelftestDto),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Basis vectors whose `f` or `f^(p)` image left the window.
    pub boundary_flags: Vec<String>,
    pub checks: Vec<CheckSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub count: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl ReportDocument {
    pub fn new(command: CommandEcho, payload: Payload, diagnostics: Diagnostics) -> Self {
        ReportDocument { schema_version: SCHEMA_VERSION.to_string(), command, payload, diagnostics }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents are always serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// All recorded checks passed.
    pub fn passed(&self) -> bool {
        self.diagnostics.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QbinomPayload {
    pub p: u32,
    pub n: i64,
    pub m: i64,
    pub at_root: bool,
    /// `"[n over m]_q"` (or `"[n]_q"` when `m = 1`) to its rendering, plus
    /// the `_eps` value when requested.
    pub values: BTreeMap<String, String>,
}

fn binomial_name(n: i64, m: i64) -> String {
    if m == 1 {
        format!("[{n}]")
    } else {
        format!("[{n} over {m}]")
    }
}

/// Gaussian binomial, generically and optionally at `eps`.
pub fn qbinom_payload(p: RootOrder, n: i64, m: i64, at_root: bool) -> Result<QbinomPayload, ArithError> {
    let name = binomial_name(n, m);
    let mut values = BTreeMap::new();
    values.insert(format!("{name}_q"), try_q_binomial(n, m)?.to_string());
    if at_root {
        let field = CyclotomicField::new(p);
        values.insert(format!("{name}_eps"), q_binomial_at_eps(&field, n, m).to_string());
    }
    Ok(QbinomPayload { p: p.get(), n, m, at_root, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDto {
    pub lambda: i64,
    pub n0: i64,
    pub n1: i64,
}

impl From<Weight> for WeightDto {
    fn from(w: Weight) -> Self {
        WeightDto { lambda: w.lambda, n0: w.digits.n0, n1: w.digits.n1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDto {
    pub index: usize,
    pub label: String,
    pub weight: WeightDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub index: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDto {
    pub from: usize,
    pub to: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDto {
    pub generator: String,
    pub entries: Vec<EntryDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeightDto {
    pub weight: WeightDto,
    pub vector: Vec<TermDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentificationDto {
    pub role: String,
    pub lambda: i64,
    pub highest_weight_vector: String,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDto {
    pub description: String,
    pub kind: ModuleKind,
    pub p: u32,
    pub realization: u8,
    pub dim: usize,
    pub irreducible: bool,
    pub basis: Vec<BasisDto>,
    pub actions: Vec<ActionDto>,
    pub highest_weight_vectors: Vec<HighestWeightDto>,
    pub maximal_submodule: Vec<usize>,
    pub classification: Vec<IdentificationDto>,
}

fn terms(v: &SparseVector) -> Vec<TermDto> {
    v.iter().map(|(i, c)| TermDto { index: *i, coeff: c.to_string() }).collect()
}

impl From<&ModuleReport> for ModuleDto {
    fn from(r: &ModuleReport) -> Self {
        ModuleDto {
            description: r.kind.describe(r.p),
            kind: r.kind.clone(),
            p: r.p.get(),
            realization: r.realization.index(),
            dim: r.dim(),
            irreducible: r.irreducible,
            basis: r
                .basis
                .iter()
                .zip(&r.weights)
                .enumerate()
                .map(|(index, (l, w))| BasisDto { index, label: l.to_string(), weight: (*w).into() })
                .collect(),
            actions: r
                .actions
                .iter()
                .map(|(g, entries)| ActionDto {
                    generator: g.to_string(),
                    entries: entries
                        .iter()
                        .map(|e| EntryDto { from: e.from, to: e.to, value: e.value.to_string() })
                        .collect(),
                })
                .collect(),
            highest_weight_vectors: r
                .highest_weight_vectors
                .iter()
                .map(|h| HighestWeightDto { weight: h.weight.into(), vector: terms(&h.vector) })
                .collect(),
            maximal_submodule: r.maximal_submodule.clone(),
            classification: r
                .classification
                .iter()
                .map(|c| IdentificationDto {
                    role: c.role.to_string(),
                    lambda: c.lambda,
                    highest_weight_vector: c.highest_weight_vector.to_string(),
                    irreducible: c.irreducible,
                })
                .collect(),
        }
    }
}

/// Boundary flags and the closure check on the maximal submodule.
pub fn module_diagnostics(r: &ModuleReport) -> Diagnostics {
    Diagnostics {
        boundary_flags: r.boundary_flags.iter().map(|i| r.basis[*i].to_string()).collect(),
        checks: vec![CheckSummary {
            name: "maximal submodule closed".into(),
            count: r.maximal_submodule.len(),
            passed: r.is_closed(&r.maximal_submodule),
            counterexample: None,
        }],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeEntryDto {
    pub construction: Construction,
    pub description: String,
    pub realized_lambda: Option<i64>,
    pub irreducible: bool,
}

impl From<&RecipeEntry> for RecipeEntryDto {
    fn from(e: &RecipeEntry) -> Self {
        RecipeEntryDto {
            construction: e.construction,
            description: e.description.clone(),
            realized_lambda: e.realized_lambda,
            irreducible: e.irreducible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeDto {
    pub p: u32,
    pub lambda: i64,
    pub window: u32,
    pub primary: RecipeEntryDto,
    pub alternates: Vec<RecipeEntryDto>,
    pub verified: bool,
}

impl From<&Recipe> for RecipeDto {
    fn from(r: &Recipe) -> Self {
        RecipeDto {
            p: r.p.get(),
            lambda: r.lambda,
            window: r.window,
            primary: (&r.primary).into(),
            alternates: r.alternates.iter().map(Into::into).collect(),
            verified: r.verified(),
        }
    }
}

pub fn recipe_diagnostics(r: &Recipe) -> Diagnostics {
    Diagnostics {
        boundary_flags: Vec::new(),
        checks: vec![CheckSummary {
            name: "constructions simple of the requested weight".into(),
            count: 1 + r.alternates.len(),
            passed: r.verified(),
            counterexample: None,
        }],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDto {
    pub relation: String,
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

impl From<&RelationFailure> for FailureDto {
    fn from(f: &RelationFailure) -> Self {
        FailureDto { relation: f.relation.clone(), label: f.label.to_string(), lhs: f.lhs.clone(), rhs: f.rhs.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDto {
    pub p: u32,
    pub realization: u8,
    pub bound: u32,
    pub seed: u64,
    pub relation_checks: usize,
    pub relation_failure: Option<FailureDto>,
    pub oracle_checks: usize,
    pub oracle_failure: Option<String>,
    pub random_checks: usize,
    pub random_failure: Option<String>,
    pub passed: bool,
}

impl From<&VerifyOutcome> for VerifyDto {
    fn from(v: &VerifyOutcome) -> Self {
        VerifyDto {
            p: v.p.get(),
            realization: v.realization.index(),
            bound: v.bound,
            seed: v.seed,
            relation_checks: v.relation_checks,
            relation_failure: v.relation_failure.as_ref().map(Into::into),
            oracle_checks: v.oracle_checks,
            oracle_failure: v.oracle_failure.clone(),
            random_checks: v.random_checks,
            random_failure: v.random_failure.clone(),
            passed: v.passed(),
        }
    }
}

/// One-line rendering of a relation failure.
pub fn describe_relation_failure(f: &RelationFailure) -> String {
    format!("{} at {}: lhs = {}, rhs = {}", f.relation, f.label, f.lhs, f.rhs)
}

pub fn verify_diagnostics(v: &VerifyOutcome) -> Diagnostics {
    let check = |name: &str, count: usize, failure: Option<String>| CheckSummary {
        name: name.to_string(),
        count,
        passed: failure.is_none(),
        counterexample: failure,
    };
    Diagnostics {
        boundary_flags: Vec::new(),
        checks: vec![
            check("defining relations", v.relation_checks, v.relation_failure.as_ref().map(describe_relation_failure)),
            check("closed forms vs oracle", v.oracle_checks, v.oracle_failure.clone()),
            check("random words", v.random_checks, v.random_failure.clone()),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestDto {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

pub fn selftest_payload(seed: u64, criteria: Vec<CriterionResult>) -> (SelftestDto, Diagnostics) {
    let checks = criteria
        .iter()
        .map(|c| CheckSummary {
            name: format!("criterion {}: {}", c.id, c.name),
            count: 1,
            passed: c.passed,
            counterexample: (!c.passed).then(|| c.detail.clone()),
        })
        .collect();
    let passed = criteria.iter().all(|c| c.passed);
    (SelftestDto { seed, criteria, passed }, Diagnostics { boundary_flags: Vec::new(), checks })
}

/// Parses a label rendered as `f(r1,r2)` or `g(r1,r2)`.
pub fn parse_label(s: &str) -> Option<FockLabel> {
    let (space, rest) = s.split_at_checked(1)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let (r1, r2) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    match space {
        "f" => Some(FockLabel::f(r1, r2)),
        "g" => Some(FockLabel::g(r1, r2)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{classify, infinite_module, weyl_module};

    fn p(n: i64) -> RootOrder {
        RootOrder::new(n).unwrap()
    }

    fn round_trip(doc: &ReportDocument) {
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        assert_eq!(&back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn qbinom_rendering() {
        let q = qbinom_payload(p(5), 3, 1, false).unwrap();
        assert_eq!(q.values["[3]_q"], "q^2 + 1 + q^-2");
        let q = qbinom_payload(p(5), 13, 5, true).unwrap();
        assert_eq!(q.values["[13 over 5]_eps"], "2");
        round_trip(&ReportDocument::new(CommandEcho::new("qbinom"), Payload::Qbinom(q), Diagnostics::default()));
    }

    #[test]
    fn module_documents_round_trip() {
        let w = weyl_module(p(5), 3).unwrap();
        let doc = ReportDocument::new(
            CommandEcho::new("weyl").arg("p", 5).arg("m", 3),
            Payload::Module(Box::new((&w).into())),
            module_diagnostics(&w),
        );
        assert!(doc.to_json().contains("\"maximal_submodule\": []"));
        assert!(doc.passed());
        round_trip(&doc);

        let r = infinite_module(p(3), 7, 12).unwrap();
        let dto = ModuleDto::from(&r);
        assert_eq!(dto.classification.len(), 2);
        round_trip(&ReportDocument::new(
            CommandEcho::new("infmod"),
            Payload::Module(Box::new(dto)),
            module_diagnostics(&r),
        ));
    }

    #[test]
    fn classify_document() {
        let r = classify(p(3), -4, 12).unwrap();
        let doc =
            ReportDocument::new(CommandEcho::new("classify"), Payload::Classify((&r).into()), recipe_diagnostics(&r));
        assert!(doc.to_json().contains("infinite(p=3, s=3)"));
        round_trip(&doc);
    }

    #[test]
    fn labels_parse_back() {
        for l in [FockLabel::f(0, 12), FockLabel::g(3, 4)] {
            assert_eq!(parse_label(&l.to_string()), Some(l));
        }
        assert_eq!(parse_label("h(1,2)"), None);
    }
}
