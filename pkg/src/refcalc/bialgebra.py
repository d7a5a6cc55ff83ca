"""Finite-dimensional algebras, coalgebras and bialgebras by structure constants.

Conventions (basis e_0..e_{n-1})::

    e_i * e_j = sum_k mult[i][j][k] e_k          unit = sum_i unit[i] e_i
    Delta e_k = sum_{i,j} comult[k][i][j] e_i (x) e_j
    eps(e_k)  = counit[k]

A linear map f: V -> W is a matrix with dim W rows and dim V columns; column j
is f(e_j).  Dualizing transposes every tensor on the dual basis; a dual label
is the original label with ``*`` appended (or removed, if already present), so
the double dual is literally equal to the original.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .fields import QQ, GF, PrimeField, field_tag

DEFAULT_GUARD = 10**6


class GuardExceeded(RuntimeError):
    """A brute-force search would exceed the configured search-space cap."""


def guard_max() -> int:
    raw = os.environ.get("REFCALC_GUARD_MAX")
    return int(raw) if raw else DEFAULT_GUARD


def _tensor3(t, F):
    return tuple(tuple(tuple(F(x) for x in row) for row in mat) for mat in t)


def _vec(v, F):
    return tuple(F(x) for x in v)


def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def _zero3(n, F):
    return [[[F.zero] * n for _ in range(n)] for _ in range(n)]


# --------------------------------------------------------------- structures


@dataclass(frozen=True)
class FdAlgebra:
    field: object
    labels: tuple
    mult: tuple
    unit: tuple

    def __post_init__(self):
        n = len(self.labels)
        F = self.field
        if len(self.mult) != n or any(len(r) != n or any(len(c) != n for c in r) for r in self.mult):
            raise ValueError(f"mult tensor must be {n}x{n}x{n}")
        if len(self.unit) != n:
            raise ValueError(f"unit must have length {n}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "mult", _tensor3(self.mult, F))
        object.__setattr__(self, "unit", _vec(self.unit, F))

    @property
    def dim(self):
        return len(self.labels)

    def mul(self, a, b):
        n, F = self.dim, self.field
        out = [F.zero] * n
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] = out[k] + xy * c
        return out

    @property
    def is_commutative(self):
        n = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class FdCoalgebra:
    field: object
    labels: tuple
    comult: tuple
    counit: tuple

    def __post_init__(self):
        n = len(self.labels)
        if len(self.comult) != n or any(len(r) != n or any(len(c) != n for c in r) for r in self.comult):
            raise ValueError(f"comult tensor must be {n}x{n}x{n}")
        if len(self.counit) != n:
            raise ValueError(f"counit must have length {n}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "comult", _tensor3(self.comult, self.field))
        object.__setattr__(self, "counit", _vec(self.counit, self.field))

    @property
    def dim(self):
        return len(self.labels)

    @property
    def is_cocommutative(self):
        n = self.dim
        return all(
            self.comult[k][i][j] == self.comult[k][j][i]
            for k in range(n)
            for i in range(n)
            for j in range(n)
        )


@dataclass(frozen=True)
class FdBialgebra:
    field: object
    labels: tuple
    mult: tuple
    unit: tuple
    comult: tuple
    counit: tuple

    def __post_init__(self):
        a = FdAlgebra(self.field, self.labels, self.mult, self.unit)
        c = FdCoalgebra(self.field, self.labels, self.comult, self.counit)
        object.__setattr__(self, "labels", a.labels)
        object.__setattr__(self, "mult", a.mult)
        object.__setattr__(self, "unit", a.unit)
        object.__setattr__(self, "comult", c.comult)
        object.__setattr__(self, "counit", c.counit)

    @property
    def dim(self):
        return len(self.labels)

    @property
    def algebra(self) -> FdAlgebra:
        return FdAlgebra(self.field, self.labels, self.mult, self.unit)

    @property
    def coalgebra(self) -> FdCoalgebra:
        return FdCoalgebra(self.field, self.labels, self.comult, self.counit)

    @property
    def is_commutative(self):
        return self.algebra.is_commutative

    @property
    def is_cocommutative(self):
        return self.coalgebra.is_cocommutative

    def mul(self, a, b):
        return self.algebra.mul(a, b)


def bialgebra_from(alg: FdAlgebra, coalg: FdCoalgebra) -> FdBialgebra:
    if alg.field != coalg.field or alg.labels != coalg.labels:
        raise ValueError("algebra and coalgebra live on different spaces")
    return FdBialgebra(alg.field, alg.labels, alg.mult, alg.unit, coalg.comult, coalg.counit)


# ------------------------------------------------------------ axiom checks


@dataclass(frozen=True)
class LawResult:
    law: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class AxiomReport:
    laws: tuple

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.laws)

    def failures(self):
        return [r for r in self.laws if not r.passed]

    def as_dict(self):
        return {r.law: (True if r.passed else {"witness": list(r.witness)}) for r in self.laws}


def _nz3(t):
    """Sparse view of a 3-tensor: t[a] -> list of ((b, c), value)."""
    return [
        [((b, c), x) for b, row in enumerate(mat) for c, x in enumerate(row) if x] for mat in t
    ]


def _assoc(alg):
    n, F = alg.dim, alg.field
    basis = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        left = alg.mul(alg.mul(basis[i], basis[j]), basis[k])
        right = alg.mul(basis[i], alg.mul(basis[j], basis[k]))
        if left != right:
            return LawResult("assoc", False, (i, j, k))
    return LawResult("assoc", True)


def _unit(alg):
    n, F = alg.dim, alg.field
    for i in range(n):
        e = [F.one if t == i else F.zero for t in range(n)]
        if alg.mul(list(alg.unit), e) != e or alg.mul(e, list(alg.unit)) != e:
            return LawResult("unit", False, (i,))
    return LawResult("unit", True)


def _coassoc(co):
    n, F = co.dim, co.field
    sp = _nz3(co.comult)
    for k in range(n):
        left, right = {}, {}
        for (i, j), x in sp[k]:
            # (Delta (x) id) Delta: expand the first factor
            for (a, b), y in sp[i]:
                key = (a, b, j)
                left[key] = left.get(key, F.zero) + x * y
            for (a, b), y in sp[j]:
                key = (i, a, b)
                right[key] = right.get(key, F.zero) + x * y
        left = {key: v for key, v in left.items() if v}
        right = {key: v for key, v in right.items() if v}
        if left != right:
            return LawResult("coassoc", False, (k,))
    return LawResult("coassoc", True)


def _counit(co):
    n, F = co.dim, co.field
    for k in range(n):
        l = [F.zero] * n
        r = [F.zero] * n
        for i in range(n):
            for j in range(n):
                c = co.comult[k][i][j]
                if c:
                    l[j] = l[j] + co.counit[i] * c
                    r[i] = r[i] + co.counit[j] * c
        e = [F.one if t == k else F.zero for t in range(n)]
        if l != e or r != e:
            return LawResult("counit", False, (k,))
    return LawResult("counit", True)


def _delta_vec(B, v):
    """Delta applied to a vector, as a sparse dict (i, j) -> coeff."""
    F = B.field
    out = {}
    for k, x in enumerate(v):
        if not x:
            continue
        for i, row in enumerate(B.comult[k]):
            for j, c in enumerate(row):
                if c:
                    out[(i, j)] = out.get((i, j), F.zero) + x * c
    return {key: val for key, val in out.items() if val}


def _tensor_mul(B, s, t):
    """Product in B (x) B of two sparse tensors."""
    F = B.field
    sp = B._sparse_mult if hasattr(B, "_sparse_mult") else None
    if sp is None:
        sp = [[[(k, c) for k, c in enumerate(B.mult[i][j]) if c] for j in range(B.dim)] for i in range(B.dim)]
        object.__setattr__(B, "_sparse_mult", sp)
    out = {}
    for (a, b), x in s.items():
        for (c, d), y in t.items():
            xy = x * y
            for p, u in sp[a][c]:
                for q, w in sp[b][d]:
                    key = (p, q)
                    out[key] = out.get(key, F.zero) + xy * u * w
    return {key: val for key, val in out.items() if val}


def _compat(B):
    n, F = B.dim, B.field
    basis = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    res = []
    bad = None
    for i, j in itertools.product(range(n), repeat=2):
        lhs = _delta_vec(B, B.mul(basis[i], basis[j]))
        rhs = _tensor_mul(B, _delta_vec(B, basis[i]), _delta_vec(B, basis[j]))
        if lhs != rhs:
            bad = (i, j)
            break
    res.append(LawResult("delta-multiplicative", bad is None, bad))
    bad = None
    for i, j in itertools.product(range(n), repeat=2):
        prod = B.mul(basis[i], basis[j])
        lhs = sum((B.counit[k] * prod[k] for k in range(n)), F.zero)
        if lhs != B.counit[i] * B.counit[j]:
            bad = (i, j)
            break
    res.append(LawResult("counit-multiplicative", bad is None, bad))
    du = _delta_vec(B, B.unit)
    uu = {
        (i, j): B.unit[i] * B.unit[j]
        for i in range(n)
        for j in range(n)
        if B.unit[i] * B.unit[j]
    }
    eu = sum((B.counit[k] * B.unit[k] for k in range(n)), F.zero)
    ok = du == uu and eu == F.one
    res.append(LawResult("unit-grouplike", ok, None if ok else (0,)))
    return res


def check_axioms(x) -> AxiomReport:
    """Check every law that applies to x; failures carry a witness index tuple."""
    laws = []
    if isinstance(x, (FdAlgebra, FdBialgebra)):
        alg = x if isinstance(x, FdAlgebra) else x.algebra
        laws += [_assoc(alg), _unit(alg)]
    if isinstance(x, (FdCoalgebra, FdBialgebra)):
        co = x if isinstance(x, FdCoalgebra) else x.coalgebra
        laws += [_coassoc(co), _counit(co)]
    if isinstance(x, FdBialgebra):
        laws += _compat(x)
    return AxiomReport(tuple(laws))


# ---------------------------------------------------------------- duality


def dualize(x):
    """Transpose structure constants on the dual basis."""
    n = x.dim
    labels = tuple(_dual_label(l) for l in x.labels)
    if isinstance(x, FdAlgebra):
        comult = [[[x.mult[i][j][k] for j in range(n)] for i in range(n)] for k in range(n)]
        return FdCoalgebra(x.field, labels, comult, x.unit)
    if isinstance(x, FdCoalgebra):
        mult = [[[x.comult[k][i][j] for k in range(n)] for j in range(n)] for i in range(n)]
        return FdAlgebra(x.field, labels, mult, x.counit)
    if isinstance(x, FdBialgebra):
        a = dualize(x.coalgebra)
        c = dualize(x.algebra)
        return bialgebra_from(a, c)
    raise TypeError(f"cannot dualize {type(x).__name__}")


def transpose(f):
    if not f:
        return []
    return [list(col) for col in zip(*f)]


def compose(g, f, F):
    """g after f, as matrices."""
    from .linalg import matmul

    return matmul(g, f, F)


def dual_morphism(f, source_dim: int | None = None, target_dim: int | None = None):
    """Transpose of f: V -> W, a map W* -> V*."""
    if f and len({len(r) for r in f}) != 1:
        raise ValueError("ragged matrix")
    if source_dim is not None and f and len(f[0]) != source_dim:
        raise ValueError(f"map has {len(f[0])} columns, source dimension is {source_dim}")
    if target_dim is not None and len(f) != target_dim:
        raise ValueError(f"map has {len(f)} rows, target dimension is {target_dim}")
    return transpose(f)


def _apply(f, v, F):
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), F.zero) for row in f]


def is_algebra_morphism(f, A, B) -> bool:
    n, F = A.dim, A.field
    if len(f) != B.dim or any(len(r) != n for r in f):
        raise ValueError("dimension mismatch")
    if _apply(f, list(A.unit), F) != list(B.unit):
        return False
    cols = [[f[r][j] for r in range(B.dim)] for j in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        prod = [A.mult[i][j][k] for k in range(n)]
        if _apply(f, prod, F) != B.mul(cols[i], cols[j]):
            return False
    return True


def is_coalgebra_morphism(f, A, B) -> bool:
    n, F = A.dim, A.field
    if len(f) != B.dim or any(len(r) != n for r in f):
        raise ValueError("dimension mismatch")
    cols = [[f[r][j] for r in range(B.dim)] for j in range(n)]
    for j in range(n):
        if sum((B.counit[r] * cols[j][r] for r in range(B.dim)), F.zero) != A.counit[j]:
            return False
        lhs = _delta_vec(B, cols[j])
        rhs = {}
        for a, row in enumerate(A.comult[j]):
            for b, c in enumerate(row):
                if not c:
                    continue
                for p, x in enumerate(cols[a]):
                    if not x:
                        continue
                    for q, y in enumerate(cols[b]):
                        if y:
                            rhs[(p, q)] = rhs.get((p, q), F.zero) + c * x * y
        if lhs != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def is_bialgebra_morphism(f, A, B) -> bool:
    return is_algebra_morphism(f, A, B) and is_coalgebra_morphism(f, A, B)


# ----------------------------------------------------------------- catalog


def _cyclic_elems(orders):
    return list(itertools.product(*[range(n) for n in orders]))


def _group_label(g, orders):
    if len(orders) == 1:
        return f"g{g[0]}"
    return "g" + "_".join(map(str, g))


def _as_orders(G):
    return (G,) if isinstance(G, int) else tuple(G)


def group_algebra(G, F=QQ) -> FdBialgebra:
    """K[G] for G a product of cyclic groups (an int n means Z/n)."""
    orders = _as_orders(G)
    elems = _cyclic_elems(orders)
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    mult = _zero3(n, F)
    comult = _zero3(n, F)
    for g in elems:
        for h in elems:
            s = tuple((a + b) % m for a, b, m in zip(g, h, orders))
            mult[idx[g]][idx[h]][idx[s]] = F.one
        comult[idx[g]][idx[g]][idx[g]] = F.one
    unit = [F.one if i == 0 else F.zero for i in range(n)]
    counit = [F.one] * n
    labels = tuple(_group_label(g, orders) for g in elems)
    return FdBialgebra(F, labels, mult, unit, comult, counit)


def function_algebra(G, F=QQ) -> FdBialgebra:
    """K^G: pointwise product, Delta(delta_g) = sum over g = a + b of delta_a (x) delta_b."""
    orders = _as_orders(G)
    elems = _cyclic_elems(orders)
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    mult = _zero3(n, F)
    comult = _zero3(n, F)
    for g in elems:
        mult[idx[g]][idx[g]][idx[g]] = F.one
        for a in elems:
            b = tuple((x - y) % m for x, y, m in zip(g, a, orders))
            comult[idx[g]][idx[a]][idx[b]] = F.one
    unit = [F.one] * n
    counit = [F.one if i == 0 else F.zero for i in range(n)]
    labels = tuple("d" + _group_label(g, orders)[1:] for g in elems)
    return FdBialgebra(F, labels, mult, unit, comult, counit)


def _monomial_labels(n):
    return tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(n))


def mu_n(n: int, F=QQ) -> FdBialgebra:
    """K[x]/(x^n - 1) with x grouplike."""
    mult = _zero3(n, F)
    comult = _zero3(n, F)
    for i in range(n):
        for j in range(n):
            mult[i][j][(i + j) % n] = F.one
        comult[i][i][i] = F.one
    unit = [F.one if i == 0 else F.zero for i in range(n)]
    return FdBialgebra(F, _monomial_labels(n), mult, unit, comult, [F.one] * n)


def alpha_p(p: int) -> FdBialgebra:
    """F_p[x]/(x^p) with x primitive: Delta x^i = sum_k C(i,k) x^k (x) x^(i-k)."""
    F = GF(p)
    mult = _zero3(p, F)
    comult = _zero3(p, F)
    for i in range(p):
        for j in range(p):
            if i + j < p:
                mult[i][j][i + j] = F.one
        for k in range(i + 1):
            comult[i][k][i - k] = F(comb(i, k))
    unit = [F.one if i == 0 else F.zero for i in range(p)]
    counit = [F.one if i == 0 else F.zero for i in range(p)]
    return FdBialgebra(F, _monomial_labels(p), mult, unit, comult, counit)


def quotient_algebra(modulus, F=QQ) -> FdAlgebra:
    """K[x]/(f) on the monomial basis, f monic given lowest degree first."""
    from .polys import poly_divmod

    f = [F(c) for c in modulus]
    if not f or f[-1] != F.one:
        raise ValueError("modulus must be monic")
    d = len(f) - 1
    if d < 1:
        raise ValueError("modulus must have degree >= 1")
    mult = _zero3(d, F)
    for i in range(d):
        for j in range(d):
            mono = [F.zero] * (i + j) + [F.one]
            _, r = poly_divmod(mono, f, F)
            for k, c in enumerate(r):
                mult[i][j][k] = c
    unit = [F.one] + [F.zero] * (d - 1)
    return FdAlgebra(F, _monomial_labels(d), mult, unit)


def base_field_algebra(F=QQ) -> FdAlgebra:
    return FdAlgebra(F, ("1",), [[[F.one]]], [F.one])


def base_field_bialgebra(F=QQ) -> FdBialgebra:
    return FdBialgebra(F, ("1",), [[[F.one]]], [F.one], [[[F.one]]], [F.one])


def tensor_algebra(A: FdAlgebra, B: FdAlgebra) -> FdAlgebra:
    """A (x) B with the Kronecker product of multiplication tensors."""
    if A.field != B.field:
        raise ValueError("field mismatch")
    F = A.field
    n, m = A.dim, B.dim
    N = n * m
    mult = _zero3(N, F)
    for i1, j1, k1 in itertools.product(range(n), repeat=3):
        a = A.mult[i1][j1][k1]
        if not a:
            continue
        for i2, j2, k2 in itertools.product(range(m), repeat=3):
            b = B.mult[i2][j2][k2]
            if b:
                mult[i1 * m + i2][j1 * m + j2][k1 * m + k2] = a * b
    unit = [A.unit[i] * B.unit[j] for i in range(n) for j in range(m)]
    labels = tuple(f"{a}|{b}" for a in A.labels for b in B.labels)
    return FdAlgebra(F, labels, mult, unit)


CATALOG_FIELDS = ("Q", "Fp:2", "Fp:3", "Fp:5")


def golden_catalog():
    """(name, bialgebra) pairs: K[Z/n], K^(Z/n) for n <= 6, mu_n, alpha_p."""
    from .fields import parse_field

    out = []
    for tag in CATALOG_FIELDS:
        F = parse_field(tag)
        for n in range(1, 7):
            out.append((f"K[Z/{n}]/{tag}", group_algebra(n, F)))
            out.append((f"K^(Z/{n})/{tag}", function_algebra(n, F)))
        for n in (2, 3, 4):
            out.append((f"mu_{n}/{tag}", mu_n(n, F)))
        if isinstance(F, PrimeField):
            out.append((f"alpha_{F.p}", alpha_p(F.p)))
    return out


def mutations():
    """Deterministic single-constant perturbations of catalog members."""
    F3 = GF(3)

    def bump3(t, a, b, c):
        t = [[list(r) for r in m] for m in t]
        t[a][b][c] = t[a][b][c] + 1
        return t

    def bump1(v, a):
        v = list(v)
        v[a] = v[a] + 1
        return v

    g3 = group_algebra(3, F3)
    f3 = function_algebra(3, F3)
    a3 = alpha_p(3)
    g4 = group_algebra(4, QQ)
    out = [
        ("mult K[Z/3]", g3, dict(mult=bump3(g3.mult, 1, 1, 0))),
        ("unit K[Z/3]", g3, dict(unit=bump1(g3.unit, 1))),
        ("comult K[Z/3]", g3, dict(comult=bump3(g3.comult, 1, 1, 2))),
        ("counit K^(Z/3)", f3, dict(counit=bump1(f3.counit, 2))),
        ("comult alpha_3", a3, dict(comult=bump3(a3.comult, 2, 1, 1))),
        ("mult K[Z/4]/Q", g4, dict(mult=bump3(g4.mult, 2, 3, 1))),
        ("comult K^(Z/3)", f3, dict(comult=bump3(f3.comult, 0, 1, 1))),
    ]
    result = []
    for name, B, change in out:
        fields = dict(
            field=B.field, labels=B.labels, mult=B.mult, unit=B.unit, comult=B.comult, counit=B.counit
        )
        fields.update(change)
        result.append((name, FdBialgebra(**fields)))
    return result


# -------------------------------------------------------- hom enumeration


def _int_tensor(t, p):
    return np.array([[[int(x) % p for x in r] for r in m] for m in t], dtype=np.int64)


def _field_p(F):
    if not isinstance(F, PrimeField):
        raise ValueError(f"brute-force enumeration needs a finite prime field, not {F}")
    return F.p


def enumerate_algebra_homs(A: FdAlgebra, S):
    """All unital multiplicative K-linear maps A -> S, as (deg S) x (dim A) matrices.

    S is a :class:`refcalc.fields.QuotientRing` over the same prime field, or an
    FdAlgebra.  Backtracks over the images of basis vectors, checking each
    product relation as soon as all basis vectors it involves are assigned.
    """
    if isinstance(S, FdAlgebra):
        return _homs_into_fd(A, S)
    F = A.field
    if S.base != F:
        raise ValueError(f"field mismatch: {F} vs {S.base}")
    if not S.enumerable:
        raise ValueError(f"{S} is not enumerable")
    n = A.dim
    space = S.size**n
    if space > guard_max():
        raise GuardExceeded(f"|S|^dim A = {space} exceeds {guard_max()}")
    elems = S.elements()
    coeff = [[[S(A.mult[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
    checks = _product_checks(A)
    unit_targets = _unit_constraints(A)
    imgs = [None] * n
    out = []

    def ok_at(t):
        for i, j, ks in checks[t]:
            lhs = imgs[i] * imgs[j]
            rhs = S.zero
            for k in ks:
                rhs = rhs + coeff[i][j][k] * imgs[k]
            if lhs != rhs:
                return False
        if t in unit_targets:
            val = S.zero
            for k, c in unit_targets[t]:
                val = val + S(c) * imgs[k]
            if val != S.one:
                return False
        return True

    def rec(t):
        if t == n:
            out.append([[imgs[j].c[r] for j in range(n)] for r in range(S.degree)])
            return
        for s in elems:
            imgs[t] = s
            if ok_at(t):
                rec(t + 1)
        imgs[t] = None

    rec(0)
    out.sort(key=lambda m: [int(x) for row in m for x in row])
    return out


def _product_checks(A):
    """checks[t]: relations e_i e_j = sum_k m_ijk e_k whose indices are all <= t, max = t."""
    n = A.dim
    checks = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            ks = [k for k in range(n) if A.mult[i][j][k]]
            t = max([i, j] + ks)
            checks[t].append((i, j, ks))
    return checks


def _unit_constraints(A):
    ks = [(k, A.unit[k]) for k in range(A.dim) if A.unit[k]]
    if not ks:
        return {}
    return {max(k for k, _ in ks): ks}


def _homs_into_fd(A, B):
    """Algebra maps between FdAlgebras over F_p, by column backtracking."""
    p = _field_p(A.field)
    n, m = A.dim, B.dim
    if p**m > guard_max():
        raise GuardExceeded(f"|K|^dim B = {p**m} exceeds {guard_max()}")
    cand = np.array(list(itertools.product(range(p), repeat=m)), dtype=np.int64)
    Bm = _int_tensor(B.mult, p)
    checks = _product_checks(A)
    unit_targets = _unit_constraints(A)
    Bu = np.array([int(x) for x in B.unit], dtype=np.int64)
    Am = [[[int(x) for x in r] for r in mm] for mm in A.mult]
    imgs = [None] * n
    out = []

    def bmul(u, v):
        return np.einsum("i,j,ijk->k", u, v, Bm) % p

    def ok_at(t):
        for i, j, ks in checks[t]:
            lhs = bmul(imgs[i], imgs[j])
            rhs = sum(Am[i][j][k] * imgs[k] for k in ks) % p if ks else np.zeros(m, dtype=np.int64)
            if not np.array_equal(lhs, rhs):
                return False
        if t in unit_targets:
            val = sum(int(c) * imgs[k] for k, c in unit_targets[t]) % p
            if not np.array_equal(val, Bu):
                return False
        return True

    nodes = 0

    def rec(t):
        nonlocal nodes
        if t == n:
            out.append([[B.field(int(imgs[j][r])) for j in range(n)] for r in range(m)])
            return
        for v in cand:
            nodes += 1
            if nodes > guard_max():
                raise GuardExceeded(f"search visited more than {guard_max()} nodes")
            imgs[t] = v
            if ok_at(t):
                rec(t + 1)
        imgs[t] = None

    rec(0)
    out.sort(key=lambda mat: [int(x) for row in mat for x in row])
    return out


@lru_cache(maxsize=16)
def _all_vectors(p: int, m: int):
    # rows enumerate F_p^m in lexicographic order
    return np.indices((p,) * m, dtype=np.int64).reshape(m, -1).T.copy()


@lru_cache(maxsize=256)
def _local_candidates(B, Bp, j, p):
    """Images of e_j in B' allowed by the constraints that only involve column j."""
    m = Bp.dim
    if p**m > guard_max():
        raise GuardExceeded(f"|K|^dim B' = {p**m} exceeds {guard_max()}")
    V = _all_vectors(p, m)
    eps_p = np.array([int(x) for x in Bp.counit], dtype=np.int64)
    keep = (V @ eps_p) % p == int(B.counit[j]) % p
    # unit: if the unit of B is e_j, its image is the unit of B'
    unit = [int(x) % p for x in B.unit]
    if unit == [1 if i == j else 0 for i in range(B.dim)]:
        keep &= np.all(V == np.array([int(x) for x in Bp.unit]) % p, axis=1)
    V = V[keep]
    dj = [[int(x) % p for x in r] for r in B.comult[j]]
    nz = [(a, b, c) for a, r in enumerate(dj) for b, c in enumerate(r) if c]
    if nz and all(a == j and b == j for a, b, _ in nz):
        c = nz[0][2]
        Dp = _int_tensor(Bp.comult, p).reshape(m, m * m)
        lhs = (V @ Dp) % p
        rhs = (c * (V[:, :, None] * V[:, None, :])).reshape(len(V), -1) % p
        V = V[np.all(lhs == rhs, axis=1)]
    mj = [int(x) % p for x in B.mult[j][j]]
    if all(x == 0 for k, x in enumerate(mj) if k != j):
        Mp = _int_tensor(Bp.mult, p).reshape(m * m, m)
        sq = ((V[:, :, None] * V[:, None, :]).reshape(len(V), -1) @ Mp) % p
        V = V[np.all(sq == (mj[j] * V) % p, axis=1)]
    return V


def enumerate_bialgebra_homs(B: FdBialgebra, Bp: FdBialgebra):
    """All linear maps B -> B' that are algebra and coalgebra morphisms."""
    if B.field != Bp.field:
        raise ValueError("field mismatch")
    p = _field_p(B.field)
    n, m = B.dim, Bp.dim
    cands = [[tuple(int(x) for x in v) for v in _local_candidates(B, Bp, j, p)] for j in range(n)]
    # sparse structure constants of B' as python ints
    Mp = [(a, b, k, int(c) % p) for a in range(m) for b in range(m) for k, c in enumerate(Bp.mult[a][b]) if int(c) % p]
    Dp = [(k, a, b, int(c) % p) for k in range(m) for a in range(m) for b, c in enumerate(Bp.comult[k][a]) if int(c) % p]
    checks = _product_checks(B)
    Bm = [[[int(x) % p for x in r] for r in mm] for mm in B.mult]
    dchecks = [[] for _ in range(n)]
    for k in range(n):
        terms = [(a, b, int(c) % p) for a, r in enumerate(B.comult[k]) for b, c in enumerate(r) if int(c) % p]
        t = max([k] + [a for a, _, _ in terms] + [b for _, b, _ in terms])
        dchecks[t].append((k, terms))
    imgs = [None] * n
    out = []
    nodes = 0

    def ok_at(t):
        for i, j, ks in checks[t]:
            u, v = imgs[i], imgs[j]
            lhs = [0] * m
            for a, b, k, c in Mp:
                if u[a] and v[b]:
                    lhs[k] += c * u[a] * v[b]
            rhs = [0] * m
            for k in ks:
                c = Bm[i][j][k]
                w = imgs[k]
                for r in range(m):
                    rhs[r] += c * w[r]
            if any((x - y) % p for x, y in zip(lhs, rhs)):
                return False
        for k, terms in dchecks[t]:
            w = imgs[k]
            diff = {}
            for kk, a, b, c in Dp:
                if w[kk]:
                    diff[(a, b)] = diff.get((a, b), 0) + c * w[kk]
            for a, b, c in terms:
                u, v = imgs[a], imgs[b]
                for x in range(m):
                    if u[x]:
                        for y in range(m):
                            if v[y]:
                                diff[(x, y)] = diff.get((x, y), 0) - c * u[x] * v[y]
            if any(val % p for val in diff.values()):
                return False
        return True

    def rec(t):
        nonlocal nodes
        if t == n:
            out.append([[Bp.field(imgs[j][r]) for j in range(n)] for r in range(m)])
            return
        for v in cands[t]:
            nodes += 1
            if nodes > guard_max():
                raise GuardExceeded(f"search visited more than {guard_max()} nodes")
            imgs[t] = v
            if ok_at(t):
                rec(t + 1)
        imgs[t] = None

    rec(0)
    out.sort(key=lambda mat: [int(x) for row in mat for x in row])
    return out


def group_hom_count(G, H) -> int:
    """|Hom(G, H)| for products of cyclic groups, by brute force over generator images."""
    go, ho = _as_orders(G), _as_orders(H)
    helems = _cyclic_elems(ho)
    count = 0
    for imgs in itertools.product(helems, repeat=len(go)):
        # a generator of order n must map to an element killed by n
        if all(all((n * x) % m == 0 for x, m in zip(h, ho)) for n, h in zip(go, imgs)):
            count += 1
    return count


def describe_field(F) -> str:
    return field_tag(F)
