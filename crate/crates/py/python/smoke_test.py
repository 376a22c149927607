"""Smoke test for the qfock extension module. Run after `maturin develop`."""

import qfock


def main() -> None:
    LP = qfock.LaurentPoly
    three = LP.q_int(3)
    assert str(three) == "q^2 + 1 + q^-2", three
    assert three.coefficients() == {-2: 1, 0: 1, 2: 1}
    assert LP({1: 1, -1: -1}) * LP.q_int(2) == LP({2: 1, -2: -1})
    assert LP.q_factorial(4).div_exact(LP.q_factorial(2) * LP.q_factorial(2)) == LP.q_binomial(4, 2)

    assert qfock.q_binomial_at_root(5, 13, 5) == "2"
    assert LP.q_binomial(13, 5).at_root(5) == "2"
    assert qfock.digits(-1, 5) == (4, -1)

    assert qfock.act("e", "f(0,1)", 1) == qfock.act_oracle("e", "f(0,1)", 1)
    assert qfock.act("e^(3)", "g(3,4)", 2) == qfock.act_oracle("e^(3)", "g(3,4)", 2)

    w = qfock.weyl_module(5, 3)
    assert (w.dim, w.irreducible, w.maximal_submodule) == (4, True, [])
    w = qfock.weyl_module(3, 4)
    assert not w.irreducible and w.quotient().dim == 4

    v = qfock.infinite_module(3, 7, 12)
    assert sorted(v.factors) == [("quotient", -8), ("submodule", -12)]
    assert v.to_dict()["description"] == "infinite(p=3, s=7, window=12)"

    recipe = qfock.classify(3, -4)
    assert recipe["primary"]["description"] == "infinite(p=3, s=3)" and recipe["verified"]

    assert qfock.verify(3, 3, 2, seed=1)["passed"]
    bad = qfock.verify_relations(1, 2, negate_f=True)
    assert bad["failure"]["label"] == {"space": "F1", "r1": 0, "r2": 1}

    try:
        qfock.weyl_module(4, 1)
    except ValueError as e:
        assert "odd" in str(e)
    else:
        raise AssertionError("even p accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
