"""Smoke test for the pypact extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
Then run:                 python python/smoke_test.py
"""

import json
from pathlib import Path

import pypact


def counterexample():
    action = pypact.PartialAction.counterexample()
    assert action.verify()["valid"]
    cp = action.crossed_product()
    assert cp.dim == 6
    assert not cp.is_associative()
    assert not action.condition_x()
    assert not action.has_enveloping()

    base = action.base()
    t = [0, 1, 0, 0]
    u = [0, 0, 1, 0]
    x = [a + b for a, b in zip(map(int, cp.element("1", t)), map(int, cp.element("g", u)))]
    xx = cp.mul(x, x)
    assert cp.format(cp.mul(xx, x)) == "0"
    assert cp.format(cp.mul(x, xx)) == "u@g"
    assert base.labels() == ["1", "t", "u", "v"]


def restriction():
    z2 = pypact.Group.cyclic(2)
    k3 = pypact.Algebra.product(3)
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    action = pypact.PartialAction.restrict(z2, k3, [identity, swap], [[1, 0, 0], [0, 0, 1]])
    assert action.crossed_product().dim == 3
    assert action.has_enveloping()
    env = action.envelope()
    assert env == {"dim_b": 3, "verified": True, "embedding_rank": 3, "enveloping_crossed_dim": 6}
    morita = action.morita()
    assert morita["ok"] and morita["mn_dim"] == 3 and morita["nm_dim"] == 6


def algebras():
    assert pypact.Algebra.matrix(2, p=2).semiprime_predicates()["agree"]
    assert not pypact.Algebra.upper(2, p=2).is_semiprime()
    m = pypact.Algebra.zero_product(2).multipliers()
    assert m["dim"] == 8 and not m["lr_associative"] and m["phi_image_ideal"]
    m2 = pypact.Algebra.matrix(2)
    assert m2.mul(["1", 0, 0, 0], [0, "1/2", 0, 0]) == ["0", "1/2", "0", "0"]


def representations():
    groups = [pypact.Group.cyclic(2), pypact.Group.cyclic(3), pypact.Group.cyclic(4), pypact.Group.klein()]
    assert [pypact.kpar(g)["dim"] for g in groups] == [3, 8, 20, 20]
    e = pypact.elementary(pypact.Group.klein(), ["1", "a", "b"])
    assert e["target"] == "M_3(K)" and e["iso"] and e["graded"]


def text_format():
    golden = Path(__file__).resolve().parent.parent / "crates/cli/tests/golden"
    text = (golden / "kpar.pact").read_text()
    report = pypact.run_spec(text)
    assert report == (golden / "kpar.json").read_text().rstrip("\n")
    assert all(r["status"] == "ok" for r in json.loads(report)["results"])


if __name__ == "__main__":
    for check in (counterexample, restriction, algebras, representations, text_format):
        check()
        print(f"ok  {check.__name__}")
