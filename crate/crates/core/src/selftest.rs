//! The verification battery: nine exact checks with independent oracles,
//! plus the per-realization suite behind `qfock verify`.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    digits, q_binomial, q_factorial, specialize, CyclotomicField, CyclotomicNumber, LaurentPoly, RootOrder,
};
use crate::boson::reorder::{divided_past_ordinary, ordinary_past_divided};
use crate::boson::{normal_form, GenKind, Generator, Strategy};
use crate::fock::{act, oracle_with, specialize_vector, AtRoot, FockError, FockLabel, FockVector, GenericQ};
use crate::rep::{infinite_module, weyl_irreducible_predicate, weyl_maximal_submodule, weyl_module, RepError};
use crate::uq::{verify_defining_relations, BosonImage, Realization, RelationFailure, UGenerator};

/// Outcome of one battery check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn p(n: i64) -> RootOrder {
    RootOrder::new(n).expect("valid root order")
}

fn result(id: u8, name: &str, failure: Option<String>, ok_detail: String) -> CriterionResult {
    CriterionResult { id, name: name.to_string(), passed: failure.is_none(), detail: failure.unwrap_or(ok_detail) }
}

/// `[n over p]` at `eps` equals the high digit of `n`.
pub fn root_of_unity_binomials() -> CriterionResult {
    let mut failure = None;
    let mut count = 0;
    'outer: for pp in [3, 5, 7, 9] {
        let field = CyclotomicField::new(p(pp));
        for n in -50..=50 {
            count += 1;
            let got = specialize(&q_binomial(n, pp), &field);
            let want = digits(n, p(pp)).n1;
            if got != CyclotomicNumber::from_int(&field, want) {
                failure = Some(format!("p={pp} n={n}: got {got}, want {want}"));
                break 'outer;
            }
        }
    }
    result(1, "root-of-unity binomial law", failure, format!("{count} cases"))
}

/// `[r over k] = q^-k [r-1 over k] + q^(r-k) [r-1 over k-1]`.
pub fn pascal_recurrence() -> CriterionResult {
    let mut failure = None;
    let mut count = 0;
    'outer: for r in 0..=25i64 {
        for k in 0..=r {
            count += 1;
            let rhs = &q_binomial(r - 1, k).shift(-k) + &q_binomial(r - 1, k - 1).shift(r - k);
            if q_binomial(r, k) != rhs {
                failure = Some(format!("r={r} k={k}"));
                break 'outer;
            }
        }
    }
    result(2, "q-Pascal recurrence", failure, format!("{count} cases"))
}

/// `a^n a+^m` normal ordered using only `a a+ = q^2 a+ a + 1`, as a map
/// `(creator power, annihilator power) -> coefficient`.
pub fn brute_force_reorder(n: u32, m: u32) -> std::collections::BTreeMap<(u32, u32), LaurentPoly> {
    use std::collections::BTreeMap;
    // a * a+^c, by peeling one creator at a time
    fn a_times_creators(c: u32) -> BTreeMap<(u32, u32), LaurentPoly> {
        if c == 0 {
            return BTreeMap::from([((0, 1), LaurentPoly::one())]);
        }
        let mut out = BTreeMap::new();
        for ((x, y), coeff) in a_times_creators(c - 1) {
            *out.entry((x + 1, y)).or_insert_with(LaurentPoly::zero) += &coeff.shift(2);
        }
        *out.entry((c - 1, 0)).or_insert_with(LaurentPoly::zero) += &LaurentPoly::one();
        out
    }
    let mut current = BTreeMap::from([((m, 0), LaurentPoly::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<(u32, u32), LaurentPoly> = BTreeMap::new();
        for ((c, d), coeff) in current {
            for ((x, y), inner) in a_times_creators(c) {
                *next.entry((x, y + d)).or_insert_with(LaurentPoly::zero) += &(&coeff * &inner);
            }
        }
        current = next;
    }
    current.retain(|_, c| !c.is_zero());
    current
}

fn fact(n: u32) -> LaurentPoly {
    q_factorial(n as i64).expect("nonnegative")
}

/// Both reordering closed forms against [`brute_force_reorder`].
pub fn reordering_formulas() -> CriterionResult {
    let mut failure = None;
    'outer: for n in 0..=5u32 {
        for m in 0..=5u32 {
            let brute = brute_force_reorder(n, m);
            // a^n a+^(m): divide by [m]!, rewrite a+^s = [s]! a+^(s)
            let mut lhs = std::collections::BTreeMap::new();
            for t in ordinary_past_divided(n, m) {
                lhs.insert((t.creator, t.annihilator), &t.coeff * &fact(m));
            }
            let mut rhs = std::collections::BTreeMap::new();
            for ((s, d), c) in &brute {
                rhs.insert((*s, *d), &c.clone() * &fact(*s));
            }
            if lhs != rhs {
                failure = Some(format!("a^{n} a+^({m})"));
                break 'outer;
            }
            // a^(n) a+^m: divide by [n]!, rewrite a^t = [t]! a^(t)
            let mut lhs = std::collections::BTreeMap::new();
            for t in divided_past_ordinary(n, m) {
                lhs.insert((t.creator, t.annihilator), &t.coeff * &fact(n));
            }
            let mut rhs = std::collections::BTreeMap::new();
            for ((s, d), c) in &brute {
                rhs.insert((*s, *d), c * &fact(*d));
            }
            if lhs != rhs {
                failure = Some(format!("a^({n}) a+^{m}"));
                break 'outer;
            }
        }
    }
    result(3, "reordering formulas vs brute force", failure, "0 <= n, m <= 5".into())
}

fn describe_failure(f: &RelationFailure) -> String {
    format!("{} fails on {}: lhs = {}, rhs = {}", f.relation, f.label, f.lhs, f.rhs)
}

/// Defining relations under both realizations up to `bound`.
pub fn defining_relations(bound: u32) -> Result<CriterionResult, FockError> {
    let reports = [Realization::First, Realization::Second]
        .par_iter()
        .map(|&w| verify_defining_relations(&BosonImage::new(w), bound))
        .collect::<Result<Vec<_>, _>>()?;
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let failure = reports.iter().find_map(|r| r.failure.as_ref().map(describe_failure));
    Ok(result(4, "defining relations in both realizations", failure, format!("{checks} identities, bound {bound}")))
}

fn fock_generators(max_r: u32) -> Vec<UGenerator> {
    let mut gens = vec![UGenerator::K, UGenerator::KInv];
    for r in 1..=max_r {
        gens.push(UGenerator::E(r));
        gens.push(UGenerator::F(r));
    }
    gens
}

/// First disagreement between the closed-form action and the oracle built
/// from `image` on labels with `r1, r2 <= label_bound`.
pub fn oracle_mismatch(
    image: &BosonImage,
    max_r: u32,
    label_bound: u32,
) -> Result<Option<(UGenerator, FockLabel)>, FockError> {
    let which = image.realization();
    let mut cases = Vec::new();
    for g in fock_generators(max_r) {
        for r1 in 0..=label_bound {
            for r2 in 0..=label_bound {
                cases.push((g, FockLabel::new(which.space(), r1, r2)));
            }
        }
    }
    let bad = cases
        .par_iter()
        .map(|(g, label)| {
            let closed = act(g, &FockVector::basis(*label, GenericQ), which)?;
            Ok((closed != oracle_with(image, g, label)?).then_some((*g, *label)))
        })
        .collect::<Result<Vec<_>, FockError>>()?;
    Ok(bad.into_iter().flatten().next())
}

/// Closed-form actions agree with the boson-realization oracle.
pub fn closed_forms_vs_oracle() -> Result<CriterionResult, FockError> {
    let mut failure = None;
    let mut cases = 0;
    'outer: for pp in [3u32, 5] {
        for which in [Realization::First, Realization::Second] {
            let max_r = 2 * pp + 1;
            cases += (2 * max_r as usize + 2) * (3 * pp as usize + 1).pow(2);
            if let Some((g, label)) = oracle_mismatch(&BosonImage::new(which), max_r, 3 * pp)? {
                failure = Some(format!("p={pp}: {g} on {label}"));
                break 'outer;
            }
        }
    }
    Ok(result(5, "closed-form actions vs oracle", failure, format!("{cases} cases")))
}

/// Closure-based irreducibility of Weyl modules against the digit criterion.
pub fn weyl_criterion() -> Result<CriterionResult, RepError> {
    let mut failure = None;
    let mut count = 0;
    'outer: for pp in [3i64, 5] {
        let rp = p(pp);
        for m in 1..=6 * pp as u32 {
            count += 1;
            let r = weyl_module(rp, m)?;
            let d = digits(m as i64, rp);
            let quotient_dim = r.dim() - r.maximal_submodule.len();
            if r.irreducible != weyl_irreducible_predicate(rp, m) {
                failure = Some(format!("p={pp} m={m}: irreducible = {}", r.irreducible));
            } else if r.maximal_submodule != weyl_maximal_submodule(rp, m)
                || r.maximal_submodule.is_empty() != r.irreducible
            {
                failure = Some(format!("p={pp} m={m}: maximal submodule {:?}", r.maximal_submodule));
            } else if quotient_dim as i64 != (d.n0 + 1) * (d.n1 + 1) {
                failure = Some(format!("p={pp} m={m}: quotient dimension {quotient_dim}"));
            }
            if failure.is_some() {
                break 'outer;
            }
        }
    }
    Ok(result(6, "Weyl module irreducibility criterion", failure, format!("{count} modules")))
}

/// Structure of the sectors `V^s` for `|s| <= 2p`, window `6p`.
pub fn infinite_structure() -> Result<CriterionResult, RepError> {
    let mut failure = None;
    let mut count = 0;
    'outer: for pp in [3i64, 5] {
        let rp = p(pp);
        for s in -2 * pp..=2 * pp {
            count += 1;
            let r = infinite_module(rp, s, 6 * pp as u32)?;
            let a = digits(s.abs(), rp);
            let found: Vec<(i64, bool)> = r.classification.iter().map(|c| (c.lambda, c.irreducible)).collect();
            let expected: Vec<(i64, bool)> = if a.n0 == 0 {
                vec![(-(s.abs() + 1), true)]
            } else if s > 0 {
                vec![(-(pp - a.n0 + (a.n1 + 1) * pp + 1), true), (-(s + 1), true)]
            } else {
                vec![(-(s.abs() + 1), true), (-(pp - a.n0 + (1 + a.n1) * pp + 1), true)]
            };
            if found != expected || r.irreducible != (a.n0 == 0) {
                failure = Some(format!("p={pp} s={s}: found {found:?}, expected {expected:?}"));
                break 'outer;
            }
        }
    }
    Ok(result(7, "structure of the infinite sectors", failure, format!("{count} sectors")))
}

/// A uniformly random boson word of length 1..=6.
pub fn random_word(rng: &mut StdRng) -> Vec<Generator> {
    const KINDS: [GenKind; 6] =
        [GenKind::A, GenKind::APlus, GenKind::ADivided, GenKind::APlusDivided, GenKind::K, GenKind::KInv];
    let len = rng.gen_range(1..=6);
    (0..len)
        .map(|_| {
            let kind = KINDS[rng.gen_range(0..KINDS.len())];
            Generator::new(kind, rng.gen_range(1..=2), rng.gen_range(1..=3)).expect("valid generator")
        })
        .collect()
}

/// Leftmost and rightmost rewriting reach the same normal form.
pub fn confluence(seed: u64, words: usize) -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let batch: Vec<Vec<Generator>> = (0..words).map(|_| random_word(&mut rng)).collect();
    let failure = batch
        .par_iter()
        .find_first(|w| normal_form(w, Strategy::Leftmost) != normal_form(w, Strategy::Rightmost))
        .map(|w| format!("word {w:?}"));
    result(8, "rewriting confluence", failure, format!("{words} words, seed {seed}"))
}

/// The sign-flipped realization must be caught, at the expected vectors.
pub fn negative_control() -> Result<CriterionResult, FockError> {
    let mut failure = None;
    let mut details = Vec::new();
    for (which, at) in [(Realization::First, FockLabel::f(0, 1)), (Realization::Second, FockLabel::g(0, 0))] {
        let rep = verify_defining_relations(&BosonImage::new(which).with_negated_f(), 3)?;
        match rep.failure {
            Some(f) if f.label == at => details.push(describe_failure(&f)),
            Some(f) => failure = Some(format!("caught at {} instead of {at}", f.label)),
            None => failure = Some(format!("realization {which} with negated f passed")),
        }
    }
    Ok(result(9, "negative control", failure, details.join("; ")))
}

/// A battery entry with its wall time.
#[derive(Clone, Debug)]
pub struct TimedResult {
    pub result: CriterionResult,
    pub seconds: f64,
}

/// Runs the nine checks in order.
pub fn run_battery(seed: u64) -> Result<Vec<TimedResult>, RepError> {
    type Check = Box<dyn Fn() -> Result<CriterionResult, RepError>>;
    let checks: Vec<Check> = vec![
        Box::new(|| Ok(root_of_unity_binomials())),
        Box::new(|| Ok(pascal_recurrence())),
        Box::new(|| Ok(reordering_formulas())),
        Box::new(|| Ok(defining_relations(12)?)),
        Box::new(|| Ok(closed_forms_vs_oracle()?)),
        Box::new(weyl_criterion),
        Box::new(infinite_structure),
        Box::new(move || Ok(confluence(seed, 100))),
        Box::new(|| Ok(negative_control()?)),
    ];
    checks
        .iter()
        .map(|check| {
            let start = Instant::now();
            let result = check()?;
            Ok(TimedResult { result, seconds: start.elapsed().as_secs_f64() })
        })
        .collect()
}

/// Outcome of the per-realization suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub realization: Realization,
    pub p: RootOrder,
    pub bound: u32,
    pub seed: u64,
    pub relation_checks: usize,
    pub relation_failure: Option<RelationFailure>,
    pub oracle_checks: usize,
    pub oracle_failure: Option<String>,
    pub random_checks: usize,
    pub random_failure: Option<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.relation_failure.is_none() && self.oracle_failure.is_none() && self.random_failure.is_none()
    }
}

/// Number of seeded random words `verify` applies.
pub const RANDOM_WORDS: usize = 40;

/// Relations up to `bound`, closed forms vs oracle for `r <= 2p + 1` on
/// labels up to `bound`, and seeded random `U`-words applied generically,
/// through the oracle, and at `eps`.
pub fn verify_suite(p: RootOrder, bound: u32, image: &BosonImage, seed: u64) -> Result<VerifyOutcome, FockError> {
    let which = image.realization();
    let relations = verify_defining_relations(image, bound)?;
    let max_r = 2 * p.get() + 1;
    let oracle_failure = oracle_mismatch(image, max_r, bound)?.map(|(g, l)| format!("{g} on {l}"));
    let oracle_checks = (2 * max_r as usize + 2) * (bound as usize + 1).pow(2);

    let mut rng = StdRng::seed_from_u64(seed);
    let gens = fock_generators(p.get());
    let ring = AtRoot::new(p);
    let mut random_failure = None;
    for _ in 0..RANDOM_WORDS {
        let len = rng.gen_range(1..=4);
        let word: Vec<UGenerator> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        let label = FockLabel::new(which.space(), rng.gen_range(0..=bound), rng.gen_range(0..=bound));
        let mut closed = FockVector::basis(label, GenericQ);
        let mut at_root = FockVector::basis(label, ring.clone());
        let mut oracle = FockVector::basis(label, GenericQ);
        for g in word.iter().rev() {
            closed = act(g, &closed, which)?;
            at_root = act(g, &at_root, which)?;
            let mut next = FockVector::zero(which.space(), GenericQ);
            for (l, c) in oracle.terms() {
                next.add_scaled(&oracle_with(image, g, &l)?, c);
            }
            oracle = next;
        }
        let names: Vec<String> = word.iter().map(|g| g.to_string()).collect();
        if closed != oracle {
            random_failure = Some(format!("{} on {label}: oracle disagrees", names.join(" ")));
        } else if specialize_vector(&closed, &ring) != at_root {
            random_failure = Some(format!("{} on {label}: specialization disagrees", names.join(" ")));
        }
        if random_failure.is_some() {
            break;
        }
    }
    Ok(VerifyOutcome {
        realization: which,
        p,
        bound,
        seed,
        relation_checks: relations.checks,
        relation_failure: relations.failure,
        oracle_checks,
        oracle_failure,
        random_checks: RANDOM_WORDS,
        random_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small() {
        // a a+ a+ = q^4 a+^2 a + (q^2 + 1) a+
        let b = brute_force_reorder(1, 2);
        assert_eq!(b[&(2, 1)], LaurentPoly::q_pow(4));
        assert_eq!(b[&(1, 0)], LaurentPoly::from_terms([(2, 1i64), (0, 1)]));
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn cheap_criteria_pass() {
        for r in [root_of_unity_binomials(), pascal_recurrence(), reordering_formulas(), confluence(7, 20)] {
            assert!(r.passed, "{r:?}");
        }
        assert!(negative_control().unwrap().passed);
    }

    #[test]
    fn verify_suite_small() {
        let image = BosonImage::new(Realization::Second);
        let out = verify_suite(p(3), 3, &image, 1).unwrap();
        assert!(out.passed(), "{out:?}");
        assert_eq!(out, verify_suite(p(3), 3, &image, 1).unwrap());
    }

    #[test]
    fn verify_suite_catches_negated_f() {
        let out = verify_suite(p(3), 2, &BosonImage::new(Realization::First).with_negated_f(), 1).unwrap();
        assert!(!out.passed());
        assert!(out.relation_failure.is_some());
        assert!(out.oracle_failure.is_some());
    }
}
