"""Acceptance criteria 1-10, each run at its stated scale and time limit.

Every test records one ``C<n> PASS|FAIL`` line; the lines are printed in the
terminal summary (and directly when this file is run as a script).
"""

import time

import pytest

from refcalc.cli import run_suite
from refcalc.fields import GF, QuotientRing, dual_numbers
from refcalc.profinite import cartier_check
from refcalc.suites import CARTIER_CASES

LINES = []


def _props(report):
    return {o.name: o for o in report.outcomes}


def _all_pass(report, names):
    props = _props(report)
    bad = [n for n in names if n not in props or props[n].status != "pass"]
    return not bad, props, bad


def _criterion(num, title, limit, body):
    t0 = time.perf_counter()
    ok, note = body()
    elapsed = time.perf_counter() - t0
    in_time = elapsed <= limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"C{num:<2} {status}  {title}  [{elapsed:.1f}s / {limit}s]"
    if note:
        line += f"  {note}"
    LINES.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def c1():
    names = ["extension", "triple-polar-rewrite", "triple-polar-signature", "route-agreement"]
    rep = run_suite("polar-laws", seed=0, cases=1000, properties=names)
    ok, props, bad = _all_pass(rep, names)
    subsets = props["extension"].detail.get("subsets", 0)
    ok = ok and props["extension"].cases >= 1000 and subsets >= 200 * 1000
    return ok, f"families={props['extension'].cases} subsets={subsets} failing={bad}"


def c2():
    names = ["reflexivity-catalog", "reflexivity-random"]
    rep = run_suite("duality", seed=0, cases=200, properties=names)
    ok, props, bad = _all_pass(rep, names)
    ok = ok and props["reflexivity-random"].cases >= 200
    return ok, f"catalog={props['reflexivity-catalog'].cases} random={props['reflexivity-random'].cases} failing={bad}"


def c3():
    rep = run_suite("limits", seed=0, cases=200, properties=["product-duality"])
    ok, props, bad = _all_pass(rep, ["product-duality"])
    return ok and props["product-duality"].cases >= 200, f"pairs={props['product-duality'].cases}"


def c4():
    names = ["tensor-duality", "tilde-consistency", "hom-adjunction"]
    rep = run_suite("limits", seed=0, cases=200, properties=names)
    ok, props, bad = _all_pass(rep, names)
    ok = ok and all(props[n].cases >= 200 for n in names)
    return ok, f"pairs={props['tensor-duality'].cases} failing={bad}"


def c5():
    rep = run_suite("duality", seed=0, cases=200, properties=["pairing"])
    ok, props, _ = _all_pass(rep, ["pairing"])
    n = props["pairing"].detail.get("pairings", 0)
    return ok and n >= 10_000, f"pairings={n}"


def c6():
    names = ["catalog-axioms", "dual-axioms", "double-dual", "mutations-detected"]
    rep = run_suite("bialgebra", properties=names)
    ok, props, bad = _all_pass(rep, names)
    muts = props["mutations-detected"].detail
    ok = ok and len(muts) >= 5 and all(m.get("witness") is not None for m in muts.values())
    return ok, f"catalog={props['catalog-axioms'].cases} mutations={len(muts)} failing={bad}"


def c7():
    rep = run_suite("cartier")
    ok, props, bad = _all_pass(rep, ["cartier-duality", "mu-points"])
    groups = {G if isinstance(G, tuple) else (G,) for G, _ in CARTIER_CASES}
    ok = ok and {(2,), (3,), (4,), (2, 2)} <= groups
    mu2_f3 = cartier_check(2, 3, QuotientRing(GF(3), [0, 1])).points_algebra
    mu2_f2 = cartier_check(2, 2, QuotientRing(GF(2), [0, 1])).points_algebra
    ok = ok and mu2_f3 == 2 and mu2_f2 == 1
    return ok, f"|mu2(F3)|={mu2_f3} |mu2(F2)|={mu2_f2} failing={bad}"


def c8():
    rep = run_suite("spec-points", properties=["adic-points"])
    ok, props, _ = _all_pass(rep, ["adic-points"])
    return ok, f"probes={props['adic-points'].cases}"


def c9():
    names = ["hurwitz-square-of-ones", "geometric-sum", "product-annihilation"]
    rep = run_suite("linrec", seed=0, cases=100, properties=names)
    ok, props, bad = _all_pass(rep, names)
    return ok, f"products={props['product-annihilation'].cases} failing={bad}"


def c10():
    names = ["documented-examples", "base-change", "nonhom-detection", "stability", "failure-prediction"]
    rep = run_suite("hom-determination", seed=0, cases=100)
    ok, props, bad = _all_pass(rep, names)
    ok = ok and props["base-change"].cases >= 100
    return ok, f"instances={props['base-change'].cases} base_failures={props['failure-prediction'].detail.get('base_failures')} failing={bad}"


CRITERIA = [
    (1, "polar laws", 60, c1),
    (2, "reflexivity", 60, c2),
    (3, "product duality", 30, c3),
    (4, "hom/tensor index formulas", 60, c4),
    (5, "pairing totality", 30, c5),
    (6, "bialgebra duality", 10, c6),
    (7, "Cartier desk check", 30, c7),
    (8, "formal scheme points", 10, c8),
    (9, "dual-bialgebra arithmetic", 5, c9),
    (10, "hom determination", 60, c10),
]


@pytest.mark.parametrize("num,title,limit,body", CRITERIA, ids=[f"C{c[0]}" for c in CRITERIA])
def test_criterion(num, title, limit, body):
    _criterion(num, title, limit, body)


if __name__ == "__main__":
    failed = 0
    for args in CRITERIA:
        try:
            _criterion(*args)
        except AssertionError:
            failed += 1
    raise SystemExit(1 if failed else 0)
