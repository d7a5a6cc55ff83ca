"""Towers of finite-dimensional algebras, their points, and recurrence functionals.

* ``AlgebraTower``: levels A_1 <- A_2 <- ... with surjective transitions.
* ``spec_points``: homomorphisms into a probe algebra S, merged across levels.
* ``LinRecFunctional``: a functional on K[x] given by a linear recurrence;
  products dual to the additive or multiplicative coalgebra structure.
* ``cartier_check``: group algebra versus function algebra of a finite
  abelian group, compared through their points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .bialgebra import (
    FdAlgebra,
    GuardExceeded,
    check_axioms,
    dualize,
    enumerate_algebra_homs,
    function_algebra,
    group_algebra,
    is_algebra_morphism,
    quotient_algebra,
    _as_orders,
    _cyclic_elems,
)
from .fields import GF, QElem, QuotientRing, poly_str
from .linalg import kron, matmul, minimal_annihilator, minimal_polynomial, rank
from .polys import poly_divmod, poly_pow, trim

MAX_TOWER_DIM = 32


# ------------------------------------------------------------------ towers


@dataclass(frozen=True)
class AlgebraTower:
    levels: tuple
    transitions: tuple  # transitions[n]: levels[n+1] -> levels[n]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "transitions", tuple(tuple(tuple(r) for r in t) for t in self.transitions))
        if not self.levels:
            raise ValueError("a tower needs at least one level")
        if len(self.transitions) != len(self.levels) - 1:
            raise ValueError("need one transition between consecutive levels")
        for n, pi in enumerate(self.transitions):
            lo, hi = self.levels[n], self.levels[n + 1]
            mat = [list(r) for r in pi]
            if len(mat) != lo.dim or any(len(r) != hi.dim for r in mat):
                raise ValueError(f"transition {n} must be {lo.dim}x{hi.dim}")
            if not is_algebra_morphism(mat, hi, lo):
                raise ValueError(f"transition {n} is not an algebra morphism")
            if rank(mat, lo.field) != lo.dim:
                raise ValueError(f"transition {n} is not surjective")

    @property
    def depth(self):
        return len(self.levels)

    @property
    def field(self):
        return self.levels[0].field

    def to_top(self, n):
        """Composite transition levels[top] -> levels[n]."""
        F = self.field
        top = len(self.levels) - 1
        mat = [[F.one if i == j else F.zero for j in range(self.levels[n].dim)] for i in range(self.levels[n].dim)]
        for k in range(n, top):
            mat = matmul(mat, [list(r) for r in self.transitions[k]], F)
        return mat


def adic_tower(f, depth: int, F) -> AlgebraTower:
    """K[x]/(f) <- K[x]/(f^2) <- ... <- K[x]/(f^depth) with the quotient maps."""
    f = trim([F(c) for c in f], F)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    d = len(f) - 1
    if d < 1 or f[-1] != F.one:
        raise ValueError("generator must be monic of degree >= 1")
    if d * depth > MAX_TOWER_DIM:
        raise GuardExceeded(f"deg(f)*depth = {d * depth} exceeds {MAX_TOWER_DIM}")
    levels = [quotient_algebra(poly_pow(f, k, F), F) for k in range(1, depth + 1)]
    transitions = []
    for k in range(1, depth):
        lo_mod = poly_pow(f, k, F)
        lo_dim, hi_dim = d * k, d * (k + 1)
        cols = []
        for j in range(hi_dim):
            _, r = poly_divmod([F.zero] * j + [F.one], lo_mod, F)
            cols.append(list(r) + [F.zero] * (lo_dim - len(r)))
        transitions.append([[cols[j][i] for j in range(hi_dim)] for i in range(lo_dim)])
    return AlgebraTower(levels, transitions)


def tower_coherence(tower: AlgebraTower) -> bool:
    """Every transition sends the unit to the unit and is an algebra morphism."""
    for n, pi in enumerate(tower.transitions):
        lo, hi = tower.levels[n], tower.levels[n + 1]
        mat = [list(r) for r in pi]
        img = [sum((mat[i][j] * hi.unit[j] for j in range(hi.dim)), lo.field.zero) for i in range(lo.dim)]
        if img != list(lo.unit) or not is_algebra_morphism(mat, hi, lo):
            return False
    return True


def _key(mat):
    return tuple(int(x) for row in mat for x in row)


def spec_points(target, S):
    """Points of Spec(target) with values in S.

    For an FdAlgebra: all algebra maps target -> S.  For a tower: the maps from
    every level, each pushed to the top level by composing with the
    transitions and identified there by exact matrix equality.
    """
    if isinstance(target, FdAlgebra):
        return enumerate_algebra_homs(target, S)
    if not isinstance(target, AlgebraTower):
        raise TypeError(f"cannot take points of {type(target).__name__}")
    F = target.field
    merged = {}
    for n, lvl in enumerate(target.levels):
        comp = target.to_top(n)
        for phi in enumerate_algebra_homs(lvl, S):
            pushed = matmul(phi, comp, F)
            merged.setdefault(_key(pushed), pushed)
    return [merged[k] for k in sorted(merged)]


def _generator_vector(A: FdAlgebra, modulus, F):
    """Coordinates of the class of x in K[x]/(modulus)."""
    _, r = poly_divmod([F.zero, F.one], modulus, F)
    return list(r) + [F.zero] * (A.dim - len(r))


def point_values(points, A: FdAlgebra, modulus, S: QuotientRing):
    """Image of x under each point of K[x]/(modulus), as elements of S."""
    F = A.field
    xv = _generator_vector(A, modulus, F)
    out = []
    for phi in points:
        coords = [sum((phi[r][j] * xv[j] for j in range(A.dim)), F.zero) for r in range(S.degree)]
        out.append(S(coords))
    return out


def tower_point_values(tower: AlgebraTower, f, S):
    """Sorted images of x for the points of an adic tower of f."""
    F = tower.field
    top = tower.levels[-1]
    modulus = poly_pow(trim([F(c) for c in f], F), tower.depth, F)
    vals = point_values(spec_points(tower, S), top, modulus, S)
    return sorted(vals, key=lambda s: s.key())


def nilpotents(S: QuotientRing):
    return sorted((s for s in S.elements() if S.is_nilpotent(s)), key=lambda s: s.key())


def finite_dual(A: FdAlgebra):
    """The coalgebra on the dual basis (transpose of the multiplication)."""
    return dualize(A)


# ------------------------------------------------------- truncated bar family


def monic_polys(F, max_degree: int):
    for d in range(1, max_degree + 1):
        for tail in itertools.product(F.elements(), repeat=d):
            yield list(tail) + [F.one]


@dataclass
class BarReport:
    truncation: int
    probe: str
    direct: int
    via_family: int
    equal: bool
    unique_minimal: bool

    def as_dict(self):
        return {
            "truncation_degree": self.truncation,
            "probe": self.probe,
            "points_direct": self.direct,
            "points_via_family": self.via_family,
            "equal": self.equal,
            "unique_minimal_factorization": self.unique_minimal,
        }


def bar_factorization(S: QuotientRing, max_degree: int | None = None) -> BarReport:
    """Points of K[x] in S versus the colimit over K[x]/(f), deg f <= max_degree.

    Hom(K[x], S) is S itself (x may go anywhere).  Each point factors through
    some finite quotient; the smallest modulus it factors through must be unique.
    """
    F = S.base
    d = S.degree if max_degree is None else max_degree
    direct = {s.key() for s in S.elements()}
    found: dict = {}
    for f in monic_polys(F, d):
        A = quotient_algebra(f, F)
        for s in point_values(enumerate_algebra_homs(A, S), A, f, S):
            found.setdefault(s.key(), []).append(tuple(int(c) for c in f))
    unique = True
    for mods in found.values():
        dmin = min(len(m) for m in mods)
        if sum(1 for m in mods if len(m) == dmin) != 1:
            unique = False
    return BarReport(d, S.name, len(direct), len(found), set(found) == direct, unique)


# -------------------------------------------------- recurrence functionals

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class LinRecFunctional:
    """w on K[x] with w(x^n) = a_n, where a satisfies the recurrence of a monic f."""

    field: object
    modulus: tuple
    init: tuple
    structure: str = ADDITIVE
    certificate: tuple = field(default=(), compare=False)

    def __post_init__(self):
        F = self.field
        mod = tuple(F(c) for c in self.modulus)
        if not mod or mod[-1] != F.one:
            raise ValueError("modulus must be monic")
        if len(self.init) != len(mod) - 1:
            raise ValueError(f"need {len(mod) - 1} initial values, got {len(self.init)}")
        if self.structure not in (ADDITIVE, MULTIPLICATIVE):
            raise ValueError(f"unknown structure tag {self.structure!r}")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "init", tuple(F(c) for c in self.init))

    @property
    def degree(self):
        return len(self.modulus) - 1

    def values(self, count: int):
        d, F = self.degree, self.field
        seq = list(self.init)
        while len(seq) < count:
            n = len(seq) - d
            seq.append(-sum((self.modulus[i] * seq[n + i] for i in range(d)), F.zero))
        return seq[:count]

    def __call__(self, n: int):
        return self.values(n + 1)[n]

    def apply(self, poly):
        """w(p) for a polynomial p given lowest degree first."""
        vals = self.values(len(poly))
        return sum((c * v for c, v in zip(poly, vals)), self.field.zero)

    def annihilates(self, poly, upto: int = 10) -> bool:
        """Does w vanish on poly * x^n for n = 0..upto?"""
        F = self.field
        return all(not self.apply([F.zero] * n + list(poly)) for n in range(upto + 1))

    def is_valid(self, upto: int = 10) -> bool:
        return self.annihilates(self.modulus, upto)

    def __str__(self):
        init = ", ".join(map(str, self.init))
        return f"linrec(f={poly_str(self.modulus)}, init=[{init}], structure={self.structure})"


def linrec_from_recurrence(f, init, structure=ADDITIVE, F=None) -> LinRecFunctional:
    if F is None:
        from .fields import QQ

        F = QQ
    w = LinRecFunctional(F, tuple(f), tuple(init), structure)
    if not w.is_valid(10):
        raise AssertionError("recurrence functional failed its own validity check")  # pragma: no cover
    return w


def geometric(a, F, structure=ADDITIVE) -> LinRecFunctional:
    """w(x^n) = a^n."""
    return LinRecFunctional(F, (-F(a), F.one), (F.one,), structure)


def ones(F, structure=ADDITIVE) -> LinRecFunctional:
    return geometric(1, F, structure)


def companion(w: LinRecFunctional):
    """Shift matrix on (a_n, ..., a_{n+d-1})."""
    d, F = w.degree, w.field
    C = [[F.zero] * d for _ in range(d)]
    for i in range(d - 1):
        C[i][i + 1] = F.one
    for j in range(d):
        C[d - 1][j] = -w.modulus[j]
    return C


def product_values(w, v, count: int):
    """Direct definition of the product sequence (the oracle)."""
    a, b = w.values(count), v.values(count)
    F = w.field
    if w.structure == MULTIPLICATIVE:
        return [x * y for x, y in zip(a, b)]
    return [
        sum((F(comb(n, k)) * a[k] * b[n - k] for k in range(n + 1)), F.zero) for n in range(count)
    ]


def linrec_product(w: LinRecFunctional, v: LinRecFunctional) -> LinRecFunctional:
    """Product dual to the coalgebra structure on K[x].

    Multiplicative (x grouplike): pointwise product, annihilated by the minimal
    polynomial of the Kronecker product of companions.  Additive (x primitive):
    Hurwitz product, annihilated by that of the Kronecker sum.  The modulus is
    then cut down to the minimal recurrence by a Hankel search.
    """
    if w.structure != v.structure:
        raise ValueError(f"structure tags differ: {w.structure} vs {v.structure}")
    if w.field != v.field:
        raise ValueError("fields differ")
    F = w.field
    C1, C2 = companion(w), companion(v)
    if w.structure == MULTIPLICATIVE:
        K = kron(C1, C2, F)
    else:
        I1 = [[F.one if i == j else F.zero for j in range(w.degree)] for i in range(w.degree)]
        I2 = [[F.one if i == j else F.zero for j in range(v.degree)] for i in range(v.degree)]
        A, B = kron(C1, I2, F), kron(I1, C2, F)
        K = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]
    big = minimal_polynomial(K, F)
    bound = len(big) - 1
    seq = product_values(w, v, max(2 * bound, 1))
    mod = minimal_annihilator(seq, bound, F)
    d = len(mod) - 1
    return LinRecFunctional(F, tuple(mod), tuple(seq[:d]), w.structure, certificate=tuple(big))


# -------------------------------------------------------------- Cartier


@dataclass
class CartierReport:
    group: tuple
    field: str
    probe: str
    dual_matches: bool
    double_dual: bool
    axioms_ok: bool
    points_algebra: int
    points_group: int
    points_equal: bool
    convolution_ok: bool
    constant_side: int | None = None

    @property
    def ok(self):
        return (
            self.dual_matches
            and self.double_dual
            and self.axioms_ok
            and self.points_equal
            and self.convolution_ok
        )

    def as_dict(self):
        return {
            "group": list(self.group),
            "field": self.field,
            "probe": self.probe,
            "dual_matches_function_algebra": self.dual_matches,
            "double_dual_equal": self.double_dual,
            "axioms_ok": self.axioms_ok,
            "points_via_algebra": self.points_algebra,
            "points_via_group": self.points_group,
            "points_equal": self.points_equal,
            "convolution_ok": self.convolution_ok,
            "constant_side_points": self.constant_side,
        }


def group_monoid_homs(G, S: QuotientRing):
    """Hom(G, (S, *)) by brute force: images of the cyclic generators."""
    orders = _as_orders(G)
    elems = _cyclic_elems(orders)
    roots = []
    for n in orders:
        roots.append([s for s in S.elements() if s**n == S.one])
    out = set()
    for imgs in itertools.product(*roots):
        vals = []
        for g in elems:
            v = S.one
            for s, e in zip(imgs, g):
                v = v * s**e
            vals.append(v.key())
        out.add(tuple(vals))
    return out


def cartier_check(G, p: int, S: QuotientRing) -> CartierReport:
    F = GF(p)
    B = group_algebra(G, F)
    Bp = function_algebra(G, F)
    dB = dualize(B)
    dual_matches = (dB.mult, dB.unit, dB.comult, dB.counit) == (Bp.mult, Bp.unit, Bp.comult, Bp.counit)
    double = dualize(dB) == B
    axioms = check_axioms(B).ok and check_axioms(Bp).ok and check_axioms(dB).ok
    # points of the dual side: algebra maps out of dualize(B') = K[G]
    dBp = dualize(Bp)
    pts = enumerate_algebra_homs(dBp.algebra, S)
    n = dBp.dim

    def as_vals(phi):
        return tuple(S([phi[r][j] for r in range(S.degree)]) for j in range(n))

    vals = [as_vals(phi) for phi in pts]
    alg_set = {tuple(v.key() for v in t) for t in vals}
    grp_set = group_monoid_homs(G, S)
    # convolution (phi * psi)(e_k) = sum comult[k][i][j] phi(e_i) psi(e_j)
    conv_ok = True
    for a in vals:
        for b in vals:
            prod = []
            for k in range(n):
                acc = S.zero
                for i in range(n):
                    for j in range(n):
                        c = dBp.comult[k][i][j]
                        if c:
                            acc = acc + S(c) * a[i] * b[j]
                prod.append(acc)
            pointwise = tuple((x * y).key() for x, y in zip(a, b))
            if tuple(x.key() for x in prod) not in alg_set or tuple(x.key() for x in prod) != pointwise:
                conv_ok = False
    counit_pt = tuple(S(c).key() for c in dBp.counit)
    conv_ok = conv_ok and counit_pt in alg_set
    constant = None
    if S.is_field:
        constant = len(enumerate_algebra_homs(Bp.algebra, S))
    return CartierReport(
        group=_as_orders(G),
        field=f"F{p}",
        probe=S.name,
        dual_matches=dual_matches,
        double_dual=double,
        axioms_ok=axioms,
        points_algebra=len(alg_set),
        points_group=len(grp_set),
        points_equal=alg_set == grp_set,
        convolution_ok=conv_ok,
        constant_side=constant,
    )


def qelem_str(s: QElem) -> str:
    return poly_str(list(s.c), "t")

