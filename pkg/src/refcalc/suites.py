"""Property suites.

Each suite produces a list of :class:`~refcalc.report.Outcome`.  Random cases
are driven by ``subseed(seed, case)`` so any single case can be rerun in
isolation; results are merged in case order, so the worker count never
changes the output.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import index_language as il
from .bialgebra import (
    GuardExceeded,
    alpha_p,
    base_field_bialgebra,
    check_axioms,
    dual_morphism,
    dualize,
    enumerate_algebra_homs,
    enumerate_bialgebra_homs,
    function_algebra,
    golden_catalog,
    group_algebra,
    group_hom_count,
    is_bialgebra_morphism,
    mu_n,
    mutations,
    quotient_algebra,
    tensor_algebra,
)
from .determination import (
    FdModule,
    hom_base_change_check,
    hom_equations,
    regular_module,
    submodule_stability_check,
    trivial_module,
)
from .families import (
    FIN,
    FULL,
    POLAR,
    form_member,
    ideal_form,
    ideal_leq,
    member_ideal,
    member_polar,
    normalize,
    polar_depth,
    polar_form,
)
from .fields import GF, QQ, QuotientRing, test_algebra_catalog
from .generators import random_family, random_index, random_subset, rng_for, subseed
from .linalg import identity, matmul, rank, solve, transpose
from .polys import poly_divmod, trim
from .profinite import (
    ADDITIVE,
    MULTIPLICATIVE,
    adic_tower,
    bar_factorization,
    cartier_check,
    finite_dual,
    geometric,
    linrec_product,
    monic_polys,
    nilpotents,
    ones,
    product_values,
    spec_points,
    tower_coherence,
    tower_point_values,
    LinRecFunctional,
)
from .report import FAIL, PASS, SKIP, Outcome
from .support import (
    BuildKind,
    InternalConsistencyError,
    build,
    catalog_modules,
    dual,
    modules_equal_randomized,
    pair,
    random_element,
    random_module,
)

SUBSETS_PER_FAMILY = 200
CLOSURE_SAMPLE = 40  # members checked for union and intersection closure
PROBES_PER_COMPARISON = 200
BILINEARITY_TESTS_PER_CASE = 10
PAIRINGS_PER_TEST = 6
LINREC_TERMS = 21  # n = 0..20

DEFAULT_CASES = {
    "polar-laws": 1000,
    "duality": 200,
    "limits": 200,
    "bialgebra": 0,
    "cartier": 0,
    "spec-points": 0,
    "linrec": 100,
    "hom-determination": 100,
}

SUITES = tuple(DEFAULT_CASES)


class UnknownSuite(ValueError):
    pass


@dataclass
class SuiteContext:
    suite: str
    seed: int = 0
    cases: int | None = None
    models: tuple = ()
    workers: int = 1
    only: tuple | None = None  # (property, case) when replaying
    properties: tuple = ()  # restrict to these property names (all if empty)
    outcomes: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return DEFAULT_CASES[self.suite] if self.cases is None else self.cases

    def wanted(self, name) -> bool:
        if self.properties and name not in self.properties:
            return False
        return self.only is None or self.only[0] == name

    def _witness(self, name, case, detail, label=None):
        w = {
            "suite": self.suite,
            "property": name,
            "seed": self.seed,
            "case": case,
            "case_seed": subseed(self.seed, case),
        }
        if label is not None:
            w["label"] = label
        w["detail"] = detail
        if self.models:
            w["models"] = [m.path for m in self.models]
        return w

    def static(self, name, items, fn, detail=None):
        """Run fn(payload) over labelled items; fn returns None on success or a detail dict."""
        if not self.wanted(name):
            return
        indices = range(len(items))
        if self.only is not None:
            indices = [self.only[1]] if 0 <= self.only[1] < len(items) else []
        failures, first, guard = 0, None, None
        ran = 0
        for k in indices:
            label, payload = items[k]
            try:
                res = fn(payload)
            except GuardExceeded as e:
                guard = guard or f"{label}: {e}"
                continue
            ran += 1
            if res is not None:
                failures += 1
                if first is None:
                    first = self._witness(name, k, res, label)
        self._record(name, ran, failures, first, guard, detail)

    def batch(self, names, fn):
        """Run the module-level fn(seed, case) -> {name: None | detail} over all cases."""
        names = [n for n in names if self.wanted(n)]
        if not names:
            return
        if self.only is not None:
            cases = [self.only[1]]
        else:
            cases = list(range(self.n))
        if self.workers > 1 and len(cases) > 1 and self.only is None:
            chunk = max(1, len(cases) // (self.workers * 4))
            with ProcessPoolExecutor(self.workers) as ex:
                results = list(ex.map(fn, itertools.repeat(self.seed), cases, chunksize=chunk))
        else:
            results = [fn(self.seed, c) for c in cases]
        for name in names:
            failures, first, guard, ran = 0, None, None, 0
            counters = {}
            for c, res in zip(cases, results):
                for k, v in res.get("_count", {}).get(name, {}).items():
                    counters[k] = counters.get(k, 0) + v
                if name in res.get("_guard", {}):
                    guard = guard or f"case {c}: {res['_guard'][name]}"
                    continue
                ran += 1
                d = res.get(name)
                if d is not None:
                    failures += 1
                    if first is None:
                        first = self._witness(name, c, d)
            self._record(name, ran, failures, first, guard, counters or None)

    def _record(self, name, ran, failures, first, guard, detail):
        if failures:
            status = FAIL
        elif guard:
            status = SKIP
        else:
            status = PASS
        self.outcomes.append(
            Outcome(
                name,
                status,
                cases=ran,
                detail=dict(detail or {}),
                witness=first,
                reason=guard if status == SKIP else None,
                failures=failures,
            )
        )


# ================================================================ polar-laws

POLAR_PROPERTIES = (
    "extension",
    "triple-polar-rewrite",
    "triple-polar-signature",
    "route-agreement",
    "ideal-closure",
    "antitone",
    "normal-form",
)


def polar_case(seed: int, case: int) -> dict:
    rng = rng_for(seed, case)
    index = random_index(rng)
    F = random_family(rng, index, 4)
    nF = normalize(F)
    P1 = normalize(POLAR(F))
    P2 = normalize(POLAR(P1))
    P3 = normalize(POLAR(P2))
    idf = ideal_form(F)
    pf1 = polar_form(F)
    pf3 = polar_form(POLAR(POLAR(F)))
    fin, full = FIN(index), FULL(index)
    G = random_family(rng_for(seed, case, 2), index, 4)
    nG = normalize(G)
    inside = True if ideal_leq(F, G) else None
    srng = rng_for(seed, case, 1)
    subsets = [random_subset(srng, index) for _ in range(SUBSETS_PER_FAMILY)]
    out = {name: None for name in POLAR_PROPERTIES}

    def fail(name, beta, **extra):
        if out[name] is None:
            d = {"index": str(index), "family": str(F), "normal_form": str(nF)}
            if beta is not None:
                d["subset"] = str(beta)
            d.update({k: str(v) if not isinstance(v, (bool, int)) else v for k, v in extra.items()})
            out[name] = d

    if polar_depth(P3) > 2 or P3 != P1:
        fail("normal-form", None, polar3=P3, polar1=P1)
    members = []
    for beta in subsets:
        in_ideal = member_ideal(beta, nF)
        in_polar = member_polar(beta, nF)
        in_bipolar = member_polar(beta, P1)  # beta in F°°
        if in_ideal:
            members.append(beta)
            if not in_bipolar:
                fail("extension", beta)
        if member_polar(beta, P2) != in_polar:
            fail("triple-polar-rewrite", beta, polar=in_polar)
        if form_member(beta, pf3) != form_member(beta, pf1):
            fail("triple-polar-signature", beta)
        if form_member(beta, idf) != in_ideal:
            fail("route-agreement", beta, route="ideal", structural=in_ideal)
        if form_member(beta, pf1) != in_polar:
            fail("route-agreement", beta, route="polar", structural=in_polar)
        if inside is not None:
            if member_ideal(beta, nF) and not member_ideal(beta, nG):
                fail("antitone", beta, other=G, reason="inclusion premise contradicted by a member")
            if member_polar(beta, nG) and not in_polar:
                fail("antitone", beta, other=G)
        # FIN ⊆ F ⊆ F°° ⊆ FULL, so the polars shrink along the chain
        chain = (member_polar(beta, fin), in_polar, member_polar(beta, P2), member_polar(beta, full))
        if any(later and not earlier for earlier, later in zip(chain, chain[1:])):
            fail("antitone", beta, chain=str(chain))
    members = members[:CLOSURE_SAMPLE]
    for a, b in zip(members, members[1:] + members[:1]):
        u = il.union(a, b, index)
        if not member_ideal(u, nF):
            fail("ideal-closure", u, left=a, right=b, op="union")
        for beta in subsets[:3]:
            m = il.intersect(a, beta, index)
            if not member_ideal(m, nF):
                fail("ideal-closure", m, left=a, right=beta, op="intersection")
    out["_count"] = {name: {"subsets": len(subsets)} for name in ("extension", "triple-polar-rewrite")}
    return out


def suite_polar_laws(ctx: SuiteContext):
    ctx.batch(POLAR_PROPERTIES, polar_case)


# ================================================================== duality


def reflexivity_case(seed: int, case: int) -> dict:
    rng = rng_for(seed, case)
    ring = rng.choice(("Q", "Fp:3", "Z"))
    M = random_module(rng, ring)
    r = modules_equal_randomized(dual(dual(M)), M, seed=subseed(seed, case, 2), cases=PROBES_PER_COMPARISON)
    if r.consistent:
        return {"reflexivity-random": None}
    return {"reflexivity-random": {"module": str(M), "subset": str(r.witness)}}


_PAIRING_RINGS = ("Q", "Fp:5")


def pairing_case(seed: int, case: int) -> dict:
    rng = rng_for(seed, case)
    ring = _PAIRING_RINGS[case % len(_PAIRING_RINGS)]
    cat = catalog_modules(ring)
    name = rng.choice(sorted(cat))
    M = cat[name]
    D = dual(M)
    dom = M.domain
    count = 0
    try:
        for t in range(BILINEARITY_TESTS_PER_CASE):
            x, y = random_element(rng, M), random_element(rng, M)
            w, z = random_element(rng, D), random_element(rng, D)
            a, b = dom(rng.randint(-4, 4)), dom(rng.randint(-4, 4))
            left = pair(a * x + b * y, w)
            rhs1 = a * pair(x, w) + b * pair(y, w)
            right = pair(x, a * w + b * z)
            rhs2 = a * pair(x, w) + b * pair(x, z)
            count += PAIRINGS_PER_TEST
            if left != rhs1 or right != rhs2:
                detail = {
                    "module": name,
                    "ring": ring,
                    "test": t,
                    "x": str(x),
                    "y": str(y),
                    "w": str(w),
                    "z": str(z),
                    "a": str(a),
                    "b": str(b),
                }
                return {"pairing": detail, "_count": {"pairing": {"pairings": count}}}
    except InternalConsistencyError as e:
        return {"pairing": {"module": name, "ring": ring, "error": str(e)}, "_count": {"pairing": {"pairings": count}}}
    return {"pairing": None, "_count": {"pairing": {"pairings": count}}}


def suite_duality(ctx: SuiteContext):
    items = []
    for ring in ("Q", "Fp:2", "dual:3"):
        for name, M in sorted(catalog_modules(ring).items()):
            items.append((f"{name}/{ring}", M))
    model_modules = [(f"{m.path}:{n}", M) for m in ctx.models for n, M in m.modules.items()]

    def reflexive(M):
        r = modules_equal_randomized(dual(dual(M)), M, seed=ctx.seed, cases=PROBES_PER_COMPARISON)
        return None if r.consistent else {"module": str(M), "subset": str(r.witness)}

    ctx.static("reflexivity-catalog", items, reflexive)
    ctx.batch(("reflexivity-random",), reflexivity_case)
    ctx.batch(("pairing",), pairing_case)
    if model_modules:
        ctx.static("reflexivity-model", model_modules, reflexive)
    for m in ctx.models:
        mods = m.modules
        for a, b, _ in m.equals:
            def eq(pair_, mods=mods):
                M, N = mods[pair_[0]], mods[pair_[1]]
                r = modules_equal_randomized(M, N, seed=ctx.seed, cases=PROBES_PER_COMPARISON)
                if r.consistent:
                    return None
                return {
                    "left": str(M),
                    "right": str(N),
                    "subset": str(r.witness),
                    "left_admits": M.supports(r.witness),
                    "right_admits": N.supports(r.witness),
                }

            ctx.static(f"equal {a} {b}", [(f"{a}={b}", (a, b))], eq)


# =================================================================== limits

def _limits_pair(seed, case, flat):
    rng = rng_for(seed, case)
    ring = rng.choice(("Q", "Fp:2", "Z"))
    return random_module(rng, ring, allow_prod=not flat), random_module(rng, ring, allow_prod=not flat)


def _compare(seed, case, name, X, Y, M, N):
    r = modules_equal_randomized(X, Y, seed=subseed(seed, case, 3), cases=PROBES_PER_COMPARISON)
    return {name: None if r.consistent else {"M": str(M), "N": str(N), "subset": str(r.witness)}}


def product_duality_case(seed: int, case: int) -> dict:
    M, N = _limits_pair(seed, case, flat=False)
    lhs = dual(build(BuildKind.PRODUCT, M, N))
    rhs = build(BuildKind.PRODUCT, dual(M), dual(N))
    return _compare(seed, case, "product-duality", lhs, rhs, M, N)


def tensor_duality_case(seed: int, case: int) -> dict:
    M, N = _limits_pair(seed, case, flat=True)
    lhs = dual(build(BuildKind.TENSOR_REFLEXIVE, M, N))
    return _compare(seed, case, "tensor-duality", lhs, build(BuildKind.DUAL_TENSOR, M, N), M, N)


def tilde_case(seed: int, case: int) -> dict:
    M, N = _limits_pair(seed, case, flat=True)
    lhs = build(BuildKind.TILDE_TENSOR_OF_DUALS, dual(M), dual(N))
    out = _compare(seed, case, "tilde-consistency", lhs, build(BuildKind.DUAL_TENSOR, M, N), M, N)
    if out["tilde-consistency"] is None:
        lhs = build(BuildKind.TILDE_TENSOR_OF_DUALS, M, N)
        rhs = build(BuildKind.DUAL_TENSOR, dual(M), dual(N))
        out = _compare(seed, case, "tilde-consistency", lhs, rhs, M, N)
    return out


def hom_adjunction_case(seed: int, case: int) -> dict:
    M, N = _limits_pair(seed, case, flat=True)
    lhs = build(BuildKind.HOM, M, dual(N))
    return _compare(seed, case, "hom-adjunction", lhs, build(BuildKind.DUAL_TENSOR, M, N), M, N)


def suite_limits(ctx: SuiteContext):
    ctx.batch(("product-duality",), product_duality_case)
    ctx.batch(("tensor-duality",), tensor_duality_case)
    ctx.batch(("tilde-consistency",), tilde_case)
    ctx.batch(("hom-adjunction",), hom_adjunction_case)


# ================================================================ bialgebra

GROUP_ORDERS = (1, 2, 3, 4, 5, 6, (2, 2))


def _first_failure(report):
    bad = report.failures()
    if not bad:
        return None
    r = bad[0]
    return {"law": r.law, "witness": list(r.witness) if r.witness is not None else None}


def suite_bialgebra(ctx: SuiteContext):
    cat = golden_catalog()
    extra = [(n, b) for m in ctx.models for n, b in sorted(m.bialgebras.items())]
    items = cat + extra
    ctx.static("catalog-axioms", items, lambda B: _first_failure(check_axioms(B)))
    ctx.static("dual-axioms", items, lambda B: _first_failure(check_axioms(dualize(B))))
    ctx.static("double-dual", items, lambda B: None if dualize(dualize(B)) == B else {"labels": list(B.labels)})

    def flags(B):
        if not hasattr(B, "mult") or not hasattr(B, "comult"):
            return None
        D = dualize(B)
        if (B.is_commutative, B.is_cocommutative) == (D.is_cocommutative, D.is_commutative):
            return None
        return {"commutative": B.is_commutative, "dual_cocommutative": D.is_cocommutative}

    ctx.static("flag-swap", items, flags)

    def grouplike(B):
        F = B.field
        for i in range(B.dim):
            want = [[F.one if (a, b) == (i, i) else F.zero for b in range(B.dim)] for a in range(B.dim)]
            if [list(r) for r in B.comult[i]] != want or B.counit[i] != F.one:
                return {"basis": B.labels[i]}
        return None

    groups = [
        (f"K[{G}]/{tag}", group_algebra(G, F))
        for tag, F in (("Q", QQ), ("Fp:2", GF(2)), ("Fp:3", GF(3)))
        for G in GROUP_ORDERS
    ]
    ctx.static("grouplike-basis", groups, grouplike)

    def mutation(B):
        rep = check_axioms(B)
        if rep.ok:
            return {"reason": "mutated structure passed every law"}
        if any(r.witness is None for r in rep.failures()):
            return {"reason": "failure without witness"}
        return None

    muts = mutations()
    ctx.static(
        "mutations-detected",
        muts,
        mutation,
        detail={name: _first_failure(check_axioms(B)) for name, B in muts} if ctx.wanted("mutations-detected") else None,
    )

    rng = rng_for(ctx.seed, 0)
    pairs = []
    for k in range(40):
        F = (QQ, GF(2), GF(3), GF(5))[k % 4]
        a, b, c = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)

        def mat(r, s):
            return [[F(rng.randint(-3, 3)) for _ in range(s)] for _ in range(r)]

        pairs.append((f"pair{k}/{F!r}", (F, mat(b, a), mat(c, b), a)))

    def contravariance(payload):
        F, f, g, a = payload
        lhs = dual_morphism(matmul(g, f, F))
        rhs = matmul(dual_morphism(f), dual_morphism(g), F)
        if lhs != rhs:
            return {"f": f, "g": g}
        if dual_morphism(identity(a, F)) != identity(a, F):
            return {"identity": a}
        return None

    ctx.static("dual-contravariance", pairs, contravariance)

    def counit_to_unit(F):
        B = group_algebra(2, F)
        eps = [list(B.counit)]  # 1 x 2 matrix K[Z/2] -> K
        d = dual_morphism(eps, source_dim=2, target_dim=1)
        D = dualize(B)
        if [row[0] for row in d] != list(D.unit):
            return {"transpose": d, "dual_unit": list(D.unit)}
        if not is_bialgebra_morphism(eps, B, base_field_bialgebra(F)):
            return {"reason": "counit is not a bialgebra morphism"}
        if not is_bialgebra_morphism(d, dualize(base_field_bialgebra(F)), D):
            return {"reason": "transposed counit is not a bialgebra morphism"}
        return None

    ctx.static("counit-dualizes-to-unit", [(repr(F), F) for F in (QQ, GF(2), GF(3))], counit_to_unit)

    small = [(f"K[Z/{n}]", group_algebra(n, GF(3))) for n in (1, 2, 3)]
    small += [(f"K^(Z/{n})", function_algebra(n, GF(3))) for n in (1, 2, 3)]
    small.append(("alpha_3", alpha_p(3)))
    hom_pairs = [(f"{a}->{b}", (A, B)) for (a, A), (b, B) in itertools.product(small, repeat=2)]

    def dual_homs(payload):
        A, B = payload
        DA, DB = dualize(A), dualize(B)
        homs = enumerate_bialgebra_homs(A, B)
        for f in homs:
            if not is_bialgebra_morphism(dual_morphism(f), DB, DA):
                return {"map": f}
        back = enumerate_bialgebra_homs(DB, DA)
        if sorted(_flat(dual_morphism(f)) for f in homs) != sorted(_flat(g) for g in back):
            return {"homs": len(homs), "dual_homs": len(back)}
        return None

    ctx.static("dual-morphisms", hom_pairs, dual_homs)

    F7 = GF(7)
    gh = [(f"{G}->{H}", (G, H)) for G, H in itertools.product(GROUP_ORDERS, repeat=2)]

    def count(payload):
        G, H = payload
        got = len(enumerate_bialgebra_homs(group_algebra(G, F7), group_algebra(H, F7)))
        want = group_hom_count(G, H)
        return None if got == want else {"bialgebra_homs": got, "group_homs": want}

    ctx.static("group-hom-counts", gh, count)


def _flat(mat):
    return tuple(int(x) for row in mat for x in row)


# ================================================================== cartier

CARTIER_CASES = ((2, 2), (2, 3), (3, 2), (3, 7), (4, 5), (4, 2), ((2, 2), 3))


def suite_cartier(ctx: SuiteContext):
    items = []
    for G, p in CARTIER_CASES:
        for S in test_algebra_catalog(p):
            items.append((f"G={G} p={p} S={S.name}", (G, p, S)))

    def check(payload):
        rep = cartier_check(*payload)
        return None if rep.ok else rep.as_dict()

    ctx.static("cartier-duality", items, check)

    mu = [
        ("mu_2(F3)", (3, QuotientRing(GF(3), [0, 1], name="F3"), 2)),
        ("mu_2(F2)", (2, QuotientRing(GF(2), [0, 1], name="F2"), 1)),
        ("mu_2(F5)", (5, QuotientRing(GF(5), [0, 1], name="F5"), 2)),
        ("mu_3(F7)", (7, QuotientRing(GF(7), [0, 1], name="F7"), 3)),
        ("mu_2(F2[e])", (2, QuotientRing(GF(2), [0, 0, 1], name="F2[e]"), 2)),
    ]

    def mu_count(payload):
        p, S, want = payload
        n = 3 if p == 7 else 2
        got = len(enumerate_algebra_homs(mu_n(n, GF(p)).algebra, S))
        return None if got == want else {"points": got, "expected": want}

    ctx.static("mu-points", mu, mu_count)


# ============================================================== spec-points


def _probes_for_points():
    out = []
    for p in (2, 3, 5):
        for S in test_algebra_catalog(p):
            out.append((p, S))
    for p in (2, 3):
        out.append((p, QuotientRing(GF(p), [0, 0, 0, 1], name=f"F{p}[t]/(t^3)")))
    return out


def suite_spec_points(ctx: SuiteContext):
    probes = _probes_for_points()
    items = [(S.name, (p, S)) for p, S in probes]

    def adic(payload):
        p, S = payload
        F = GF(p)
        want = [s.key() for s in nilpotents(S)]
        d = S.degree
        for depth in (d, d + 1):
            got = [s.key() for s in tower_point_values(adic_tower([0, 1], depth, F), [0, 1], S)]
            if got != want:
                return {"depth": depth, "points": got, "nilpotents": want}
        return None

    ctx.static("adic-points", items, adic)

    towers = [
        (f"{f}-adic/F{p} depth {k}", adic_tower(f, k, GF(p)))
        for p, f in ((2, [0, 1]), (3, [0, 1]), (2, [1, 1, 1]), (5, [1, 1]))
        for k in (1, 2, 3)
    ]
    towers += [(n, t) for m in ctx.models for n, t in sorted(m.towers.items())]
    ctx.static("tower-coherence", towers, lambda T: None if tower_coherence(T) else {"reason": "incoherent"})

    def tower_points(T):
        p = T.field.p
        for S in test_algebra_catalog(p):
            pts = spec_points(T, S)
            top = spec_points(T.levels[-1], S)
            keys = {_flat(m) for m in pts}
            if not keys <= {_flat(m) for m in top}:
                return {"probe": S.name, "reason": "pushed point is not a point of the top level"}
        return None

    ctx.static("tower-points-at-top", towers, tower_points)

    bars = [(S.name, S) for p in (2, 3, 5) for S in test_algebra_catalog(p)]

    def bar(S):
        rep = bar_factorization(S)
        return None if rep.equal and rep.unique_minimal else rep.as_dict()

    ctx.static("bar-factorization", bars, bar)

    algs = []
    for p in (2, 3):
        F = GF(p)
        for f in monic_polys(F, 2):
            algs.append((f"F{p}[x]/({[int(c) for c in f]})", quotient_algebra(f, F)))
        for n in (2, 3):
            algs.append((f"F{p}[Z/{n}]", group_algebra(n, F).algebra))
    algs.append(("Q[x]/(x^2-2)", quotient_algebra([-2, 0, 1], QQ)))

    def fdual(A):
        C = finite_dual(A)
        if not check_axioms(C).ok:
            return {"law": _first_failure(check_axioms(C))}
        if dualize(C) != A:
            return {"reason": "dual of the finite dual differs"}
        return None

    ctx.static("finite-dual", algs, fdual)

    tens = []
    for p in (2, 3):
        F = GF(p)
        small = [quotient_algebra(f, F) for f in ([0, 1], [0, 0, 1], [1, 0, 1], [0, 1, 1])]
        for (i, A), (j, B) in itertools.combinations(list(enumerate(small)), 2):
            tens.append((f"F{p} A{i} (x) A{j}", (A, B, test_algebra_catalog(p))))

    def product_points(payload):
        A, B, probes = payload
        AB = tensor_algebra(A, B)
        for S in probes:
            got = len(enumerate_algebra_homs(AB, S))
            want = len(enumerate_algebra_homs(A, S)) * len(enumerate_algebra_homs(B, S))
            if got != want:
                return {"probe": S.name, "tensor_points": got, "product": want}
        return None

    ctx.static("points-of-tensor", tens, product_points)


# =================================================================== linrec


def linrec_case(seed: int, case: int) -> dict:
    rng = rng_for(seed, case)
    F = (QQ, GF(2), GF(3), GF(5), GF(7))[rng.randrange(5)]
    structure = rng.choice((ADDITIVE, MULTIPLICATIVE))

    def rand_w():
        d = rng.randint(1, 3)
        mod = [F(rng.randint(-3, 3)) for _ in range(d)] + [F.one]
        init = [F(rng.randint(-3, 3)) for _ in range(d)]
        return LinRecFunctional(F, tuple(mod), tuple(init), structure)

    w, v = rand_w(), rand_w()
    u = linrec_product(w, v)
    want = product_values(w, v, LINREC_TERMS)
    d = {"w": str(w), "v": str(v), "field": repr(F), "product": str(u)}
    if u.values(LINREC_TERMS) != want:
        return {"product-annihilation": {**d, "reason": "values differ from the direct product"}}
    for name, poly in (("modulus", u.modulus), ("certificate", u.certificate)):
        k = len(poly) - 1
        for n in range(LINREC_TERMS - k):
            if sum((c * want[n + i] for i, c in enumerate(poly)), F.zero):
                return {"product-annihilation": {**d, "reason": f"{name} fails at n={n}"}}
    if u.degree > w.degree * v.degree:
        return {"product-annihilation": {**d, "reason": "modulus degree exceeds the bound"}}
    return {"product-annihilation": None}


def suite_linrec(ctx: SuiteContext):
    def hurwitz(F):
        o = ones(F)
        u = linrec_product(o, o)
        want = [F(2) ** n for n in range(LINREC_TERMS)]
        if u.values(LINREC_TERMS) != want or u.modulus != (F(-2), F.one):
            return {"modulus": list(u.modulus), "values": u.values(8)}
        return None

    ctx.static("hurwitz-square-of-ones", [("Q", QQ), ("F3", GF(3)), ("F5", GF(5)), ("F7", GF(7))], hurwitz)

    geo = []
    for F, rng_ in ((QQ, range(-3, 4)), (GF(5), range(5)), (GF(7), range(7))):
        for a, b in itertools.product(rng_, repeat=2):
            geo.append((f"{F!r} a={a} b={b}", (F, a, b)))

    def geom(payload):
        F, a, b = payload
        u = linrec_product(geometric(a, F), geometric(b, F))
        g = geometric(F(a) + F(b), F)
        if u.values(LINREC_TERMS) != g.values(LINREC_TERMS) or u.modulus != g.modulus:
            return {"modulus": list(u.modulus), "expected": list(g.modulus)}
        return None

    ctx.static("geometric-sum", geo, geom)

    def mult_unit(F):
        fib = LinRecFunctional(F, (F(-1), F(-1), F.one), (F.zero, F.one), MULTIPLICATIVE)
        u = linrec_product(ones(F, MULTIPLICATIVE), fib)
        if u.values(LINREC_TERMS) != fib.values(LINREC_TERMS):
            return {"values": u.values(8)}
        return None

    ctx.static("multiplicative-unit", [("Q", QQ), ("F7", GF(7))], mult_unit)
    ctx.batch(("product-annihilation",), linrec_case)

    model_lr = [(f"{m.path}:{n}", w) for m in ctx.models for n, w in sorted(m.linrecs.items())]
    if model_lr:
        ctx.static(
            "model-linrecs",
            model_lr,
            lambda w: None if w.is_valid(LINREC_TERMS) else {"linrec": str(w)},
        )


# ======================================================== hom-determination


def _inverse(P, F):
    n = len(P)
    cols = []
    for j in range(n):
        e = [F.one if i == j else F.zero for i in range(n)]
        x = solve(P, e, F)
        if x is None:
            return None
        cols.append(list(x))
    return transpose(cols)


def _companion(h, F):
    d = len(h) - 1
    C = [[F.zero] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = F.one
    for i in range(d):
        C[i][d - 1] = -h[i]
    return C


def _block_diag(blocks, F):
    n = sum(len(b) for b in blocks)
    out = [[F.zero] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def _monic_divisors(g, F):
    out = []
    for f in monic_polys(F, len(g) - 1):
        _, r = poly_divmod(list(g), f, F)
        if not any(trim(list(r), F)):
            out.append(tuple(f))
    return out


def _random_module(rng, A, g, F, max_dim=3):
    """Direct sum of cyclic modules K[x]/(h), h | g, conjugated by a random basis change."""
    divs = _monic_divisors(g, F)
    blocks, dim = [], 0
    while True:
        h = rng.choice(divs)
        if dim + len(h) - 1 > max_dim:
            break
        blocks.append(_companion(h, F))
        dim += len(h) - 1
        if rng.random() < 0.5:
            break
    if not blocks:
        blocks = [_companion(min(divs, key=len), F)]
        dim = len(blocks[0])
    X = _block_diag(blocks, F)
    while True:
        P = [[F(rng.randrange(F.p)) for _ in range(dim)] for _ in range(dim)]
        if rank(P, F) == dim:
            break
    Pi = _inverse(P, F)
    X = matmul(matmul(P, X, F), Pi, F)
    acts = [identity(dim, F)]
    for _ in range(1, A.dim):
        acts.append(matmul(acts[-1], X, F))
    return FdModule(A, acts)


def _cyclic_span(M, v, F):
    """Basis of the submodule generated by v."""
    vecs = [list(v)]
    for mat in M.action:
        vecs.append([sum((mat[r][c] * v[c] for c in range(M.dim)), F.zero) for r in range(M.dim)])
    out = []
    for u in vecs:
        if any(u) and rank(out + [u], F) > len(out):
            out.append(u)
    return out


def determination_case(seed: int, case: int) -> dict:
    rng = rng_for(seed, case)
    p = (2, 3)[case % 2]
    F = GF(p)
    deg = rng.randint(1, 3)
    g = [F(rng.randrange(p)) for _ in range(deg)] + [F.one]
    A = quotient_algebra(g, F)
    M = _random_module(rng, A, g, F)
    Mp = _random_module(rng, A, g, F)
    probes = test_algebra_catalog(p)
    desc = {"p": p, "modulus": [int(c) for c in g], "M": _acts(M), "M_prime": _acts(Mp)}
    out = {"base-change": None, "nonhom-detection": None, "stability": None, "failure-prediction": None}
    counts = {}

    # K-linear maps that are not A-linear
    rows, nvar = hom_equations(A, M, Mp)
    nonhoms = []
    for _ in range(6):
        f = [[F(rng.randrange(p)) for _ in range(M.dim)] for _ in range(Mp.dim)]
        flat = [x for row in f for x in row]
        if any(sum((a * b for a, b in zip(r, flat)), F.zero) for r in rows):
            nonhoms.append(f)
        if len(nonhoms) == 2:
            break
    for S in probes:
        rep = hom_base_change_check(A, M, Mp, S, nonhoms=nonhoms)
        if not (rep.dimension_ok and rep.containment_ok) and out["base-change"] is None:
            out["base-change"] = {**desc, "report": rep.as_dict()}
        if not rep.nonhom_detected and out["nonhom-detection"] is None:
            out["nonhom-detection"] = {**desc, "report": rep.as_dict(), "nonhoms": nonhoms}
    counts["nonhom-detection"] = {"nonhoms": len(nonhoms)}

    v = [F(rng.randrange(p)) for _ in range(M.dim)]
    candidates = [("random", [v]), ("cyclic", _cyclic_span(M, v, F))]
    if M.dim > 1:
        w2 = [F(rng.randrange(p)) for _ in range(M.dim)]
        candidates.append(("random2", [v, w2]))
    unstable = 0
    for label, W in candidates:
        rep = submodule_stability_check(A, M, W, probes, probe_failures=True)
        if label == "cyclic" and not rep.stable_at_base and out["stability"] is None:
            out["stability"] = {**desc, "W": W, "reason": "generated submodule reported unstable"}
        if not rep.consistent:
            key = "failure-prediction" if not rep.stable_at_base else "stability"
            if out[key] is None:
                out[key] = {**desc, "W": W, "report": rep.as_dict()}
        if not rep.stable_at_base:
            unstable += 1
    counts["failure-prediction"] = {"base_failures": unstable}
    out["_count"] = counts
    return out


def _acts(M):
    return [[[int(x) for x in row] for row in mat] for mat in M.action]


def suite_hom_determination(ctx: SuiteContext):
    F2, F3 = GF(2), GF(3)

    def documented(name):
        if name == "regular F2[Z/2] over F2[e]":
            A = group_algebra(2, F2).algebra
            M = regular_module(A)
            rep = hom_base_change_check(A, M, M, test_algebra_catalog(2)[1])
            ok = rep.ok and rep.base_dim == 2 and rep.extended_dim == 4
            return None if ok else rep.as_dict()
        if name == "base field":
            A = quotient_algebra([0, 1], F3)
            M = FdModule(A, [identity(2, F3)])
            Mp = FdModule(A, [identity(3, F3)])
            for S in test_algebra_catalog(3):
                rep = hom_base_change_check(A, M, Mp, S)
                if not rep.ok or rep.base_dim != 6:
                    return rep.as_dict()
            return None
        if name == "F3[x]/(x^2) onto F3":
            A = quotient_algebra([0, 0, 1], F3)
            M = regular_module(A)
            Mp = trivial_module(A, [1, 0])
            for S in test_algebra_catalog(3):
                rep = hom_base_change_check(A, M, Mp, S)
                if not rep.ok or rep.base_dim != 1 or rep.extended_dim != S.degree:
                    return rep.as_dict()
            return None
        A = quotient_algebra([0, 0, 1], F2)
        M = regular_module(A)
        if name == "span{x} in F2[x]/(x^2)":
            rep = submodule_stability_check(A, M, [[0, 1]])
            ok = rep.stable_at_base and rep.ran_base_change and all(rep.per_probe.values()) and rep.per_probe
        elif name == "span{1} in F2[x]/(x^2)":
            rep = submodule_stability_check(A, M, [[1, 0]])
            ok = not rep.stable_at_base and not rep.ran_base_change
        else:
            rep = submodule_stability_check(A, M, [])
            ok = rep.stable_at_base and all(rep.per_probe.values())
        return None if ok else rep.as_dict()

    names = [
        "regular F2[Z/2] over F2[e]",
        "base field",
        "F3[x]/(x^2) onto F3",
        "span{x} in F2[x]/(x^2)",
        "span{1} in F2[x]/(x^2)",
        "zero subspace",
    ]
    ctx.static("documented-examples", [(n, n) for n in names], documented)
    ctx.batch(("base-change", "nonhom-detection", "stability", "failure-prediction"), determination_case)


# ================================================================== runner

RUNNERS = {
    "polar-laws": suite_polar_laws,
    "duality": suite_duality,
    "limits": suite_limits,
    "bialgebra": suite_bialgebra,
    "cartier": suite_cartier,
    "spec-points": suite_spec_points,
    "linrec": suite_linrec,
    "hom-determination": suite_hom_determination,
}


def run(ctx: SuiteContext) -> list:
    if ctx.suite not in RUNNERS:
        raise UnknownSuite(f"unknown suite {ctx.suite!r}; choose from {', '.join(SUITES)}")
    RUNNERS[ctx.suite](ctx)
    return ctx.outcomes
