"""Generator families of subsets, their polars, and membership decisions.

A family is read through the ideal it generates (downward closure plus finite
unions).  Two independent decision routes are provided:

* ``normalize`` + ``member_ideal`` / ``member_polar``: rewrite to normal form,
  then decide structurally.
* ``ideal_form`` + ``form_member``: compute a finite signature of the
  generated ideal (one kind per leaf or per product block) with no rewriting.

The test suites compare the two, so a bug in one shows up as disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .index_language import (
    Atom,
    Cofinite,
    FinSet,
    Graph,
    IndexTypeError,
    Pair,
    Prod,
    Rect,
    Sum,
    as_union,
    full,
    intersect,
    is_empty,
    is_finite,
    leaves,
    prod_depth,
    restrict,
)


class NormalFormError(ValueError):
    """Raised when a membership test meets a family that is not normalized."""


class UnsupportedFormError(ValueError):
    """Raised for products nested inside products, which are not decided."""


# ------------------------------------------------------------------ nodes


@dataclass(frozen=True)
class FIN:
    index: object

    def __str__(self):
        return "FIN"


@dataclass(frozen=True)
class FULL:
    index: object

    def __str__(self):
        return "FULL"


@dataclass(frozen=True)
class POLAR:
    inner: object

    @property
    def index(self):
        return self.inner.index

    def __str__(self):
        return f"POLAR({self.inner})"


@dataclass(frozen=True)
class SUMFAM:
    left: object
    right: object

    @property
    def index(self):
        return Sum(self.left.index, self.right.index)

    def __str__(self):
        return f"SUMFAM({self.left}, {self.right})"


@dataclass(frozen=True)
class RECT:
    left: object
    right: object

    @property
    def index(self):
        return Prod(self.left.index, self.right.index)

    def __str__(self):
        return f"RECT({self.left}, {self.right})"


Family = FIN | FULL | POLAR | SUMFAM | RECT


def polar_power(F, n: int):
    for _ in range(n):
        F = POLAR(F)
    return F


def check_family(F, index) -> None:
    """Raise IndexTypeError unless F is a well-typed family over `index`."""
    if isinstance(F, (FIN, FULL)):
        if F.index != index:
            raise IndexTypeError(f"{F} is over {F.index}, expected {index}")
    elif isinstance(F, POLAR):
        check_family(F.inner, index)
    elif isinstance(F, SUMFAM):
        if not isinstance(index, Sum):
            raise IndexTypeError(f"SUMFAM needs a Sum index, got {index}")
        check_family(F.left, index.left)
        check_family(F.right, index.right)
    elif isinstance(F, RECT):
        if not isinstance(index, Prod):
            raise IndexTypeError(f"RECT needs a Prod index, got {index}")
        check_family(F.left, index.left)
        check_family(F.right, index.right)
    else:
        raise IndexTypeError(f"not a family: {F!r}")


def polar_depth(F) -> int:
    """Longest run of directly nested POLAR nodes anywhere in F."""
    if isinstance(F, POLAR):
        run, inner = 1, F.inner
        while isinstance(inner, POLAR):
            run, inner = run + 1, inner.inner
        return max(run, polar_depth(inner))
    if isinstance(F, (SUMFAM, RECT)):
        return max(polar_depth(F.left), polar_depth(F.right))
    return 0


# ------------------------------------------------------------- normalize


def _polar_of_normal(g):
    if isinstance(g, FIN):
        return FULL(g.index)
    if isinstance(g, FULL):
        return FIN(g.index)
    if isinstance(g, SUMFAM):
        return SUMFAM(_polar_of_normal(g.left), _polar_of_normal(g.right))
    if isinstance(g, RECT):
        return POLAR(g)
    if isinstance(g, POLAR) and isinstance(g.inner, RECT):
        return POLAR(g)
    # g = POLAR(POLAR(R)): a third polar collapses to one
    return g.inner


@lru_cache(maxsize=65536)
def normalize(F):
    """Ideal-equivalent normal form.

    Rewrites, applied bottom-up to a fixpoint: POLAR^3 -> POLAR,
    POLAR(FIN) -> FULL, POLAR(FULL) -> FIN and
    POLAR(SUMFAM(a, b)) -> SUMFAM(POLAR a, POLAR b).  POLAR(RECT(..)) and
    POLAR(POLAR(RECT(..))) are normal.
    """
    if isinstance(F, (FIN, FULL)):
        return F
    if isinstance(F, SUMFAM):
        return SUMFAM(normalize(F.left), normalize(F.right))
    if isinstance(F, RECT):
        return RECT(normalize(F.left), normalize(F.right))
    if isinstance(F, POLAR):
        return _polar_of_normal(normalize(F.inner))
    raise IndexTypeError(f"not a family: {F!r}")


# ------------------------------------------------ structural membership


def cover(F):
    """Union of all members of F, as a described subset of F's index."""
    if isinstance(F, SUMFAM):
        return Pair(cover(F.left), cover(F.right))
    # FIN contains every singleton, FULL is the whole set, and RECT and
    # polars of covering families cover too.
    return full(F.index)


def _require_flat_factors(F):
    if prod_depth(F.left.index) or prod_depth(F.right.index):
        raise UnsupportedFormError(f"products nested inside products are not decided: {F.index}")


_ALL_ATOM = Cofinite(())


def member_ideal(beta, F) -> bool:
    """Is beta contained in a finite union of members of F?  F must be normalized."""
    if isinstance(F, FIN):
        return is_finite(beta)
    if isinstance(F, FULL):
        return True
    if isinstance(F, SUMFAM):
        return member_ideal(beta.left, F.left) and member_ideal(beta.right, F.right)
    if isinstance(F, RECT):
        _require_flat_factors(F)
        for part in as_union(beta).parts:
            if isinstance(part, Rect):
                if is_empty(part):
                    continue
                if not (member_ideal(part.left, F.left) and member_ideal(part.right, F.right)):
                    return False
            else:
                # Graph over Atom x Atom; both projections are infinite
                if not (member_ideal(_ALL_ATOM, F.left) and member_ideal(_ALL_ATOM, F.right)):
                    return False
        return True
    if isinstance(F, POLAR):
        if polar_depth(F) > 2:
            raise NormalFormError(f"not normalized: {F}")
        return member_polar(beta, F.inner)
    raise IndexTypeError(f"not a family: {F!r}")


def member_polar(beta, F) -> bool:
    """Does beta meet every member of F in a finite set?  F must be normalized."""
    if isinstance(F, FIN):
        return True
    if isinstance(F, FULL):
        return is_finite(beta)
    if isinstance(F, SUMFAM):
        return member_polar(beta.left, F.left) and member_polar(beta.right, F.right)
    if isinstance(F, RECT):
        _require_flat_factors(F)
        for part in as_union(beta).parts:
            if isinstance(part, Rect):
                d1, d2 = part.left, part.right
                if is_empty(d1) or is_empty(d2):
                    continue
                ok1 = member_polar(d1, F.left) or is_empty(intersect(d2, cover(F.right)))
                ok2 = member_polar(d2, F.right) or is_empty(intersect(d1, cover(F.left)))
                if not (ok1 and ok2):
                    return False
            else:
                # a line meets a1 x a2 infinitely iff both factor ideals hold a cofinite set
                if member_ideal(_ALL_ATOM, F.left) and member_ideal(_ALL_ATOM, F.right):
                    return False
        return True
    if isinstance(F, POLAR):
        g = F.inner
        if isinstance(g, RECT):
            # rectangle ideals over product-free factors are reflexive
            return member_ideal(beta, g)
        if isinstance(g, POLAR) and isinstance(g.inner, RECT):
            return member_polar(beta, g.inner)
        raise NormalFormError(f"not normalized: {F}")
    raise IndexTypeError(f"not a family: {F!r}")


# --------------------------------------------------------- ideal forms
#
# A form is one of
#   ("L", kind, fixed)      leaf over Atom/FinSet; kind "fin" or "all";
#                           fixed=True for FinSet leaves, where both agree
#   ("S", left, right)      over Sum
#   ("B", lleaves, rleaves, kinds)
#                           over Prod of two product-free terms; kinds[i][j]
#                           is the 2D kind of the block (left leaf i, right leaf j)
#
# 2D kinds: FINITE, ALL, ROWB (first projection finite), COLB (second
# projection finite), ROWF (every row finite), COLF (every column finite).

_POLAR_2D = {
    "FINITE": "ALL",
    "ALL": "FINITE",
    "ROWB": "ROWF",
    "ROWF": "ROWB",
    "COLB": "COLF",
    "COLF": "COLB",
}
_RECT_2D = {
    ("fin", "fin"): "FINITE",
    ("all", "all"): "ALL",
    ("fin", "all"): "ROWB",
    ("all", "fin"): "COLB",
}
_LEFT_FINITE = {"ROWB": "ALL", "COLB": "FINITE", "ROWF": "FINITE", "COLF": "ALL"}
_RIGHT_FINITE = {"COLB": "ALL", "ROWB": "FINITE", "COLF": "FINITE", "ROWF": "ALL"}


def _canon_block(kind, li, ri):
    lf, rf = isinstance(li, FinSet), isinstance(ri, FinSet)
    if (lf and rf) or (lf and li.n == 0) or (rf and ri.n == 0):
        return "ALL"
    if lf:
        return _LEFT_FINITE.get(kind, kind)
    if rf:
        return _RIGHT_FINITE.get(kind, kind)
    return kind


def _block(index, kind_of):
    if prod_depth(index.left) or prod_depth(index.right):
        raise UnsupportedFormError(f"products nested inside products are not decided: {index}")
    ll, rl = tuple(leaves(index.left)), tuple(leaves(index.right))
    kinds = tuple(
        tuple(_canon_block(kind_of(i, j), li, rj) for j, (_, rj) in enumerate(rl))
        for i, (_, li) in enumerate(ll)
    )
    return ("B", ll, rl, kinds)


def _uniform(index, kind):
    if isinstance(index, Atom):
        return ("L", kind, False)
    if isinstance(index, FinSet):
        return ("L", "all", True)
    if isinstance(index, Sum):
        return ("S", _uniform(index.left, kind), _uniform(index.right, kind))
    k2 = "FINITE" if kind == "fin" else "ALL"
    return _block(index, lambda i, j: k2)


def _leaf_kinds(form):
    if form[0] == "L":
        return [form[1]]
    if form[0] == "S":
        return _leaf_kinds(form[1]) + _leaf_kinds(form[2])
    raise UnsupportedFormError("products nested inside products are not decided")


def _polar_form(form):
    tag = form[0]
    if tag == "L":
        if form[2]:
            return form
        return ("L", "all" if form[1] == "fin" else "fin", False)
    if tag == "S":
        return ("S", _polar_form(form[1]), _polar_form(form[2]))
    _, ll, rl, kinds = form
    new = tuple(
        tuple(_canon_block(_POLAR_2D[k], ll[i][1], rl[j][1]) for j, k in enumerate(row))
        for i, row in enumerate(kinds)
    )
    return ("B", ll, rl, new)


@lru_cache(maxsize=65536)
def ideal_form(F):
    """Signature of the ideal generated by F (F need not be normalized)."""
    if isinstance(F, FIN):
        return _uniform(F.index, "fin")
    if isinstance(F, FULL):
        return _uniform(F.index, "all")
    if isinstance(F, POLAR):
        return _polar_form(ideal_form(F.inner))
    if isinstance(F, SUMFAM):
        return ("S", ideal_form(F.left), ideal_form(F.right))
    if isinstance(F, RECT):
        lk = _leaf_kinds(ideal_form(F.left))
        rk = _leaf_kinds(ideal_form(F.right))
        return _block(F.index, lambda i, j: _RECT_2D[(lk[i], rk[j])])
    raise IndexTypeError(f"not a family: {F!r}")


def polar_form(F):
    """Signature of the polar ideal F° (the support ideal of the F-module)."""
    return _polar_form(ideal_form(F))


_RECT_TEST = {
    "FINITE": lambda d1, d2: is_finite(d1) and is_finite(d2),
    "ALL": lambda d1, d2: True,
    "ROWB": lambda d1, d2: is_finite(d1),
    "COLB": lambda d1, d2: is_finite(d2),
    "ROWF": lambda d1, d2: is_finite(d2),
    "COLF": lambda d1, d2: is_finite(d1),
}
_GRAPH_TEST = {"FINITE": False, "ALL": True, "ROWB": False, "COLB": False, "ROWF": True, "COLF": True}


def form_member(beta, form) -> bool:
    """Membership of beta in the ideal with the given signature."""
    tag = form[0]
    if tag == "L":
        return form[1] == "all" or is_finite(beta)
    if tag == "S":
        return form_member(beta.left, form[1]) and form_member(beta.right, form[2])
    _, ll, rl, kinds = form
    for part in as_union(beta).parts:
        if isinstance(part, Graph):
            if not _GRAPH_TEST[kinds[0][0]]:
                return False
            continue
        for i, (pi, _) in enumerate(ll):
            d1 = restrict(part.left, pi)
            if is_empty(d1):
                continue
            for j, (pj, _) in enumerate(rl):
                d2 = restrict(part.right, pj)
                if is_empty(d2):
                    continue
                if not _RECT_TEST[kinds[i][j]](d1, d2):
                    return False
    return True


# a kind's ideal sits inside every kind listed for it
_BLOCK_UP = {
    "FINITE": {"FINITE", "ROWB", "COLB", "ROWF", "COLF", "ALL"},
    "ROWB": {"ROWB", "COLF", "ALL"},
    "COLB": {"COLB", "ROWF", "ALL"},
    "ROWF": {"ROWF", "ALL"},
    "COLF": {"COLF", "ALL"},
    "ALL": {"ALL"},
}


def form_leq(f, g) -> bool:
    """Is the ideal with signature f contained in the one with signature g?"""
    if f[0] == "L":
        return f[1] == g[1] or g[1] == "all"
    if f[0] == "S":
        return form_leq(f[1], g[1]) and form_leq(f[2], g[2])
    return all(b in _BLOCK_UP[a] for ra, rb in zip(f[3], g[3]) for a, b in zip(ra, rb))


def ideal_leq(F, G) -> bool:
    """Exact inclusion of generated ideals over the same index."""
    if F.index != G.index:
        raise IndexTypeError(f"index mismatch: {F.index} vs {G.index}")
    return form_leq(ideal_form(F), ideal_form(G))


def equivalent(F, G) -> bool:
    """Exact equality of generated ideals, via signatures."""
    return F.index == G.index and ideal_form(F) == ideal_form(G)
