use qfock::arith::{Digits, RootOrder};
use qfock::rep::{
    infinite_module, submodule_report, weyl_irreducible_predicate, weyl_maximal_submodule, weyl_module, ModuleReport,
    Role,
};
use qfock::uq::UGenerator;

fn p(n: i64) -> RootOrder {
    RootOrder::new(n).unwrap()
}

fn weight_graded(r: &ModuleReport) {
    for (g, entries) in &r.actions {
        let shift = match g {
            UGenerator::E(k) => 2 * *k as i64,
            UGenerator::F(k) => -2 * *k as i64,
            _ => 0,
        };
        for e in entries {
            assert_eq!(r.weights[e.to].lambda, r.weights[e.from].lambda + shift, "{g} in {:?}", r.kind);
        }
    }
}

fn highest_vectors_are_killed(r: &ModuleReport) {
    for h in &r.highest_weight_vectors {
        for g in [UGenerator::E(1), UGenerator::E(r.p.get())] {
            assert!(r.apply(&g, &h.vector).unwrap().0.is_empty());
        }
    }
}

#[test]
fn weyl_modules_match_the_digit_criterion() {
    for pp in [3, 5] {
        for m in 1..=6 * pp as u32 {
            let r = weyl_module(p(pp), m).unwrap();
            assert_eq!(r.irreducible, weyl_irreducible_predicate(p(pp), m), "p={pp} m={m}");
            assert_eq!(r.maximal_submodule.is_empty(), r.irreducible);
            let d = Digits::of(m as i64, p(pp));
            assert_eq!(r.dim() - r.maximal_submodule.len(), ((d.n0 + 1) * (d.n1 + 1)) as usize);
            weight_graded(&r);
            highest_vectors_are_killed(&r);
        }
    }
}

#[test]
fn weyl_maximal_submodule_is_unique() {
    for pp in [3, 5] {
        for m in 1..=4 * pp as u32 {
            let r = weyl_module(p(pp), m).unwrap();
            if r.irreducible {
                continue;
            }
            let sub = weyl_maximal_submodule(p(pp), m);
            assert!(sub.len() < r.dim());
            for i in 0..r.dim() {
                let c = r.closure(&[r.unit(i)]);
                let support: Vec<usize> = c.basis.support().into_iter().collect();
                assert!(c.dim() == r.dim() || support.iter().all(|j| sub.contains(j)), "p={pp} m={m} seed {i}");
            }
        }
    }
}

#[test]
fn infinite_submodules_are_unique_in_window() {
    for pp in [3i64, 5] {
        let window = 6 * pp as u32;
        for s in (1..=2 * pp).filter(|s| s % pp != 0) {
            let r = infinite_module(p(pp), s, window).unwrap();
            let sub = &r.maximal_submodule;
            for i in 0..r.dim() {
                let c = r.closure(&[r.unit(i)]);
                if sub.contains(&i) {
                    assert!(c.basis.support().iter().all(|j| sub.contains(j)));
                } else {
                    assert_eq!(c.dim(), r.dim(), "p={pp} s={s} seed {i}");
                }
            }
        }
    }
}

#[test]
fn infinite_structure() {
    for pp in [3i64, 5] {
        let window = 6 * pp as u32;
        for s in -2 * pp..=2 * pp {
            let r = infinite_module(p(pp), s, window).unwrap();
            weight_graded(&r);
            highest_vectors_are_killed(&r);
            let a = Digits::of(s.abs(), p(pp));
            if a.n0 == 0 {
                assert!(r.irreducible);
                assert_eq!(r.classification[0].role, Role::Whole);
                assert_eq!(r.classification[0].lambda, -(s.abs() + 1));
                continue;
            }
            assert!(!r.irreducible);
            let (sub, quot) = (&r.classification[0], &r.classification[1]);
            assert!(sub.irreducible && quot.irreducible, "p={pp} s={s}");
            if s > 0 {
                assert_eq!(sub.lambda, -(pp - a.n0 + (a.n1 + 1) * pp + 1));
                assert_eq!(quot.lambda, -(s + 1));
            } else {
                assert_eq!(sub.lambda, -(s.abs() + 1));
                assert_eq!(quot.lambda, -(pp - a.n0 + (1 + a.n1) * pp + 1));
            }
            let sr = submodule_report(&r, &r.maximal_submodule).unwrap();
            let top = sr.top().unwrap();
            assert_eq!(top.weight.digits, Digits::of(sub.lambda, p(pp)));
        }
    }
}

#[test]
fn sectors_are_preserved() {
    let r = infinite_module(p(5), -4, 30).unwrap();
    for g in r.closure_generators() {
        for i in 0..r.dim() {
            let (img, _) = r.apply(g, &r.unit(i)).unwrap();
            for j in img.keys() {
                let (a, b) = (r.basis[*j], r.basis[i]);
                assert_eq!(a.r2 as i64 - a.r1 as i64, b.r2 as i64 - b.r1 as i64);
            }
        }
    }
}
