use proptest::prelude::*;

use qfock::arith::{
    q_binomial, q_binomial_at_eps, specialize, CyclotomicField, CyclotomicNumber, Digits, LaurentPoly, RootOrder,
};
use qfock::boson::{normal_form, GenKind, Generator, Strategy as Rewrite};
use qfock::fock::{act, act_oracle, AtRoot, FockLabel, FockVector, GenericQ};
use qfock::json::{ModuleDto, ReportDocument};
use qfock::rep::weyl_module;
use qfock::uq::{Realization, UGenerator};

fn root() -> impl Strategy<Value = RootOrder> {
    prop::sample::select(vec![3i64, 5, 7, 9]).prop_map(|p| RootOrder::new(p).unwrap())
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..5).prop_map(LaurentPoly::from_terms)
}

fn generator() -> impl Strategy<Value = Generator> {
    let kinds = vec![GenKind::A, GenKind::APlus, GenKind::ADivided, GenKind::APlusDivided, GenKind::K, GenKind::KInv];
    (prop::sample::select(kinds), 1u8..=2, 1u32..=3).prop_map(|(k, s, n)| Generator::new(k, s, n).unwrap())
}

fn u_generator() -> impl Strategy<Value = UGenerator> {
    prop_oneof![
        (1u32..=7).prop_map(UGenerator::E),
        (1u32..=7).prop_map(UGenerator::F),
        Just(UGenerator::K),
        Just(UGenerator::KInv),
    ]
}

fn realization() -> impl Strategy<Value = Realization> {
    prop_oneof![Just(Realization::First), Just(Realization::Second)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn specialization_is_a_ring_map(a in poly(), b in poly(), p in root()) {
        let field = CyclotomicField::new(p);
        let (sa, sb) = (specialize(&a, &field), specialize(&b, &field));
        prop_assert_eq!(specialize(&(&a * &b), &field), &sa * &sb);
        prop_assert_eq!(specialize(&(&a + &b), &field), &sa + &sb);
    }

    #[test]
    fn eps_has_order_p(k in -40i64..40, p in root()) {
        let field = CyclotomicField::new(p);
        let shifted = CyclotomicNumber::eps_pow(&field, k + p.get() as i64);
        prop_assert_eq!(shifted, CyclotomicNumber::eps_pow(&field, k));
    }

    #[test]
    fn nonzero_cyclotomic_numbers_invert(a in poly(), p in root()) {
        let field = CyclotomicField::new(p);
        let x = specialize(&a, &field);
        match x.inverse() {
            Some(inv) => prop_assert!((&x * &inv).is_one()),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn binomials_are_symmetric_and_bar_invariant(n in 0i64..30, m in 0i64..30) {
        let b = q_binomial(n, m);
        prop_assert_eq!(b.bar(), b.clone());
        if m <= n {
            prop_assert_eq!(q_binomial(n, n - m), b);
        }
    }

    #[test]
    fn q_lucas_at_eps(n in -40i64..60, m in 0i64..20, p in root()) {
        let field = CyclotomicField::new(p);
        let direct = specialize(&q_binomial(n, m), &field);
        prop_assert_eq!(q_binomial_at_eps(&field, n, m), direct);
        let (dn, dm) = (Digits::of(n, p), Digits::of(m, p));
        let expected = &specialize(&q_binomial(dn.n0, dm.n0), &field)
            * &CyclotomicNumber::from_int(&field, num_binomial(dn.n1, dm.n1));
        prop_assert_eq!(q_binomial_at_eps(&field, n, m), expected);
    }

    #[test]
    fn rewriting_is_confluent(word in prop::collection::vec(generator(), 1..7)) {
        prop_assert_eq!(normal_form(&word, Rewrite::Leftmost), normal_form(&word, Rewrite::Rightmost));
    }

    #[test]
    fn closed_forms_match_the_oracle(g in u_generator(), which in realization(), r1 in 0u32..8, r2 in 0u32..8) {
        let label = FockLabel::new(which.space(), r1, r2);
        let closed = act(&g, &FockVector::basis(label, GenericQ), which).unwrap();
        prop_assert_eq!(closed, act_oracle(&g, &label, which).unwrap());
    }

    #[test]
    fn generators_shift_weight(g in u_generator(), which in realization(), r1 in 0u32..10, r2 in 0u32..10) {
        let label = FockLabel::new(which.space(), r1, r2);
        let shift = match g {
            UGenerator::E(r) => 2 * r as i64,
            UGenerator::F(r) => -2 * r as i64,
            _ => 0,
        };
        let image = act(&g, &FockVector::basis(label, GenericQ), which).unwrap();
        for (l, _) in image.terms() {
            prop_assert_eq!(l.weight_value(), label.weight_value() + shift);
        }
    }

    #[test]
    fn k_to_the_p_is_identity_at_eps(p in root(), which in realization(), r1 in 0u32..10, r2 in 0u32..10) {
        let ring = AtRoot::new(p);
        let v = FockVector::basis(FockLabel::new(which.space(), r1, r2), ring);
        let mut w = v.clone();
        for _ in 0..p.get() {
            w = act(&UGenerator::K, &w, which).unwrap();
        }
        prop_assert_eq!(w, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn module_documents_round_trip(p in prop::sample::select(vec![3i64, 5]), m in 0u32..20) {
        let r = weyl_module(RootOrder::new(p).unwrap(), m).unwrap();
        let doc = ReportDocument::new(
            qfock::json::CommandEcho::new("weyl"),
            qfock::json::Payload::Module(Box::new(ModuleDto::from(&r))),
            qfock::json::module_diagnostics(&r),
        );
        let text = doc.to_json();
        prop_assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
    }
}

/// Ordinary binomial for any integer top, zero for negative bottom.
fn num_binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}
