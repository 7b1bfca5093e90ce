"""Smoke test for the pyddsurf extension module.

Build first, e.g. `maturin develop --release` inside crates/python.
"""

import pyddsurf as dd


def main():
    x2y = dd.Poly("X^2*Y")
    assert str(x2y * dd.Poly("X")) == "X^3*Y"
    assert dd.Poly("X + 1") ** 2 == dd.Poly("X^2 + 2*X + 1")
    assert str(dd.Poly("2*X", field="Fp:3") + dd.Poly("X", field="Fp:3")) == "0"

    a = dd.Surface(2, 4, "Z^2", "Y^2")
    b = dd.Surface(2, 4, "Z^2", "Y^2 - X*Y*Z^2")
    assert (a.r, a.s, a.d, a.e) == (2, 2, 2, 4)
    assert a.laurent_nf("Y") == "z^2*x^-2"
    assert b.equal_in_b("X^2*Y", "Z^2")

    verdict = dd.check_witness(a, b, "1", "1")
    assert verdict["status"] == "ISOMORPHIC", verdict
    assert verdict["map"]["images"]["T"] == "-X^3*T + T"
    assert dd.decide_isomorphic(b, a)["status"] == "ISOMORPHIC"

    ideal = ["X^4", "X^2*Y - Z^2", "X^4*T - Y^2"]
    assert dd.is_member("X^2*Y", ideal) is None
    assert dd.is_member("Z^2 - X^2*Y", ideal) == ["0", "-1", "0"]
    assert len(dd.groebner_basis(ideal)) >= 3

    assert dd.run_example("remark-v")["status"] == "PASS"
    assert dd.lemma1("Z^2", 1, bound=1)["counterexamples"] == []

    try:
        dd.Surface(1, 1, "2*Z^2", "Y^2")
    except ValueError as err:
        assert "monic" in str(err)
    else:
        raise AssertionError("non-monic P accepted")
    print("pyddsurf smoke test passed")


if __name__ == "__main__":
    main()
