"""Smoke test for the pybisem extension. Run from the repo root after
building it (see README): python3 python/smoke_test.py"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pybisem

w = pybisem.Algebra.builtin("weak_kleene_3")
assert w.names == ["0", "h", "1"], w.names
assert w.varieties() == ["DBS", "BDBS", "DDBS", "IDBS"], w.varieties()
assert len(w.filters()) == 3 and len(w.filters(prime=True)) == 2
assert len(w.ideals()) == 3 and len(w.ideals(prime=True)) == 2
assert w.absorption_witness() == ["0", "h"]
assert w.join("0", "h") == "h" and w.meet("0", "h") == "h"
assert "isomorphism: x -> up(x)" in w.represent()
assert w.roundtrip()
assert w.separation_witness("1", "0") == ["1"]

s = pybisem.Algebra.builtin("strong_kleene_3")
assert s.absorption_witness() is None

again = pybisem.Algebra.from_balg(w.to_balg())
assert again == w and again.is_isomorphic(w)
assert len(w.homomorphisms(w)) == 1

assert [len(pybisem.enumerate(n, "DBS")) for n in range(1, 5)] == [1, 2, 6, 23]
sums = pybisem.plonka_random(8, 20, seed=1)
assert len(sums) == 20 and all(a.in_variety("dbs") for a in sums)

assert pybisem.tautology("p | ~p", "pwk") is None
assert pybisem.tautology("p | ~p", "k3") == {"p": "h"}
assert pybisem.tautology("p | ~p", "b3") is not None
assert pybisem.entails(["p"], "p | q", "b3") == {"p": "1", "q": "h"}
assert pybisem.eval("p & q", {"p": "h", "q": "0"}, "pwk") == "h"
assert pybisem.probe(8, 1000, 0) == 0

code, out, err = pybisem.run_cli(["check", "builtin:weak_kleene_3"])
assert code == 0 and "varieties: DBS BDBS DDBS IDBS" in out, (code, out, err)

try:
    pybisem.Algebra.from_balg("elements a\nmeet\nb\n")
except ValueError:
    pass
else:
    raise AssertionError("bad input accepted")

print("pybisem smoke test: ok")
