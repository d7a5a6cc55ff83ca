"""Countable index sets and finitely described subsets of them.

Index terms::

    Atom A        a copy of the naturals, named A
    FinSet n      {0, ..., n-1}
    Sum(I, J)     disjoint union; points are (0, i) or (1, j)
    Prod(I, J)    cartesian product; points are (i, j)

Described subsets, by index shape::

    Atom:    Finite(elems) | Cofinite(excluded)
    FinSet:  Finite(elems)
    Sum:     Pair(left, right)
    Prod:    Union(parts), each part Rect(left, right) or, over Prod(Atom A, Atom A),
             Graph(k, excluded) = {(n, n+k) : n >= max(0, -k), n not excluded}

Everything here is immutable; the constructors below canonicalize so that
structurally equal values denote equal sets in the common cases (sorted
element lists, empty rectangles dropped from unions).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union as _U


class IndexTypeError(TypeError):
    """A subset or family does not match the index term it is used with."""


# ---------------------------------------------------------------- index terms


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return f"Atom {self.name}"


@dataclass(frozen=True)
class FinSet:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"FinSet needs n >= 0, got {self.n}")

    def __str__(self):
        return f"FinSet {self.n}"


@dataclass(frozen=True)
class Sum:
    left: "IndexTerm"
    right: "IndexTerm"

    def __str__(self):
        return f"Sum({self.left}, {self.right})"


@dataclass(frozen=True)
class Prod:
    left: "IndexTerm"
    right: "IndexTerm"

    def __str__(self):
        return f"Prod({self.left}, {self.right})"


IndexTerm = _U[Atom, FinSet, Sum, Prod]


@lru_cache(maxsize=4096)
def prod_depth(index) -> int:
    """Nesting depth of Prod nodes (0 for product-free terms)."""
    if isinstance(index, (Atom, FinSet)):
        return 0
    if isinstance(index, Sum):
        return max(prod_depth(index.left), prod_depth(index.right))
    return 1 + max(prod_depth(index.left), prod_depth(index.right))


def atoms(index) -> set[str]:
    if isinstance(index, Atom):
        return {index.name}
    if isinstance(index, FinSet):
        return set()
    return atoms(index.left) | atoms(index.right)


# ------------------------------------------------------------- subset nodes


@dataclass(frozen=True)
class Finite:
    elems: tuple = ()

    def __str__(self):
        return "Fin{" + ",".join(map(str, self.elems)) + "}"


@dataclass(frozen=True)
class Cofinite:
    excluded: tuple = ()

    def __str__(self):
        return "Cofin{" + ",".join(map(str, self.excluded)) + "}"


@dataclass(frozen=True)
class Pair:
    left: "Subset"
    right: "Subset"

    def __str__(self):
        return f"Pair({self.left}, {self.right})"


@dataclass(frozen=True)
class Rect:
    left: "Subset"
    right: "Subset"

    def __str__(self):
        return f"Rect({self.left}, {self.right})"


@dataclass(frozen=True)
class Graph:
    offset: int
    excluded: tuple = ()

    @property
    def start(self) -> int:
        return max(0, -self.offset)

    def __str__(self):
        if self.excluded:
            return f"Graph({self.offset}, Cofin{{{','.join(map(str, self.excluded))}}})"
        return f"Graph({self.offset})"


@dataclass(frozen=True)
class Union:
    parts: tuple = ()

    def __str__(self):
        if not self.parts:
            return "Rect(Fin{}, Fin{})"
        if len(self.parts) == 1:
            return str(self.parts[0])
        return "Union(" + ", ".join(map(str, self.parts)) + ")"


Subset = _U[Finite, Cofinite, Pair, Union]


def finite(elems) -> Finite:
    return Finite(tuple(sorted(set(elems))))


def cofinite(excluded=()) -> Cofinite:
    return Cofinite(tuple(sorted(set(excluded))))


def graph(offset: int, excluded=()) -> Graph:
    start = max(0, -offset)
    return Graph(offset, tuple(sorted({n for n in excluded if n >= start})))


def union_of(parts) -> Union:
    """Canonical union over a product: flattened, empties dropped, sorted, deduplicated."""
    flat = []
    for p in parts:
        if isinstance(p, Union):
            flat.extend(p.parts)
        elif isinstance(p, Rect):
            if not (is_empty(p.left) or is_empty(p.right)):
                flat.append(p)
        elif isinstance(p, Graph):
            flat.append(p)
        else:
            raise IndexTypeError(f"not a product component: {p}")
    uniq = {str(p): p for p in flat}
    return Union(tuple(uniq[k] for k in sorted(uniq)))


def as_union(d) -> Union:
    if isinstance(d, Union):
        return d
    if isinstance(d, (Rect, Graph)):
        return union_of([d])
    raise IndexTypeError(f"expected a subset of a product, got {d}")


def empty(index) -> Subset:
    if isinstance(index, (Atom, FinSet)):
        return Finite(())
    if isinstance(index, Sum):
        return Pair(empty(index.left), empty(index.right))
    return Union(())


def full(index) -> Subset:
    if isinstance(index, Atom):
        return Cofinite(())
    if isinstance(index, FinSet):
        return Finite(tuple(range(index.n)))
    if isinstance(index, Sum):
        return Pair(full(index.left), full(index.right))
    return union_of([Rect(full(index.left), full(index.right))])


# ----------------------------------------------------------------- typing


def check_subset(d, index) -> None:
    """Raise IndexTypeError unless `d` is a well-formed subset of `index`."""
    if isinstance(index, Atom):
        if isinstance(d, (Finite, Cofinite)):
            vals = d.elems if isinstance(d, Finite) else d.excluded
            if any(not isinstance(v, int) or v < 0 for v in vals):
                raise IndexTypeError(f"{d}: atom elements must be naturals")
            return
        raise IndexTypeError(f"{d} is not a subset of {index}")
    if isinstance(index, FinSet):
        if isinstance(d, Cofinite):
            raise IndexTypeError(f"Cofin is not allowed over {index}; use the finite complement")
        if isinstance(d, Finite):
            if any(not isinstance(v, int) or not 0 <= v < index.n for v in d.elems):
                raise IndexTypeError(f"{d} has elements outside {index}")
            return
        raise IndexTypeError(f"{d} is not a subset of {index}")
    if isinstance(index, Sum):
        if not isinstance(d, Pair):
            raise IndexTypeError(f"{d} is not a subset of {index} (expected Pair)")
        check_subset(d.left, index.left)
        check_subset(d.right, index.right)
        return
    if isinstance(d, (Rect, Graph)):
        d = Union((d,))
    if not isinstance(d, Union):
        raise IndexTypeError(f"{d} is not a subset of {index} (expected Rect/Graph/Union)")
    for p in d.parts:
        if isinstance(p, Rect):
            check_subset(p.left, index.left)
            check_subset(p.right, index.right)
        elif isinstance(p, Graph):
            if not (isinstance(index.left, Atom) and index.left == index.right):
                raise IndexTypeError(f"Graph needs Prod(Atom X, Atom X), not {index}")
        else:
            raise IndexTypeError(f"{p} is not a product component")


# ----------------------------------------------------------- decision procedures


def is_empty(d) -> bool:
    if isinstance(d, Finite):
        return not d.elems
    if isinstance(d, Cofinite):
        return False
    if isinstance(d, Pair):
        return is_empty(d.left) and is_empty(d.right)
    if isinstance(d, Rect):
        return is_empty(d.left) or is_empty(d.right)
    if isinstance(d, Graph):
        return False
    if isinstance(d, Union):
        return all(is_empty(p) for p in d.parts)
    raise IndexTypeError(f"not a subset: {d!r}")


def is_finite(d) -> bool:
    if isinstance(d, Finite):
        return True
    if isinstance(d, Cofinite):
        return False
    if isinstance(d, Pair):
        return is_finite(d.left) and is_finite(d.right)
    if isinstance(d, Rect):
        return is_empty(d) or (is_finite(d.left) and is_finite(d.right))
    if isinstance(d, Graph):
        return False
    if isinstance(d, Union):
        return all(is_finite(p) for p in d.parts)
    raise IndexTypeError(f"not a subset: {d!r}")


def _points(d):
    if isinstance(d, Finite):
        return list(d.elems)
    if isinstance(d, Pair):
        return [(0, p) for p in _points(d.left)] + [(1, p) for p in _points(d.right)]
    if isinstance(d, Rect):
        return [(a, b) for a in _points(d.left) for b in _points(d.right)]
    if isinstance(d, Union):
        pts = set()
        for p in d.parts:
            pts.update(_points(p))
        return list(pts)
    raise AssertionError(d)  # pragma: no cover


def finiteness(d):
    """Sorted list of the points of `d` if it is finite, else None (infinite)."""
    if not is_finite(d):
        return None
    return sorted(set(_points(d)))


def cardinality(d):
    pts = finiteness(d)
    return None if pts is None else len(pts)


def contains(d, point) -> bool:
    if isinstance(d, Finite):
        return point in d.elems
    if isinstance(d, Cofinite):
        return point not in d.excluded
    if isinstance(d, Pair):
        side, p = point
        return contains(d.left if side == 0 else d.right, p)
    if isinstance(d, Rect):
        a, b = point
        return contains(d.left, a) and contains(d.right, b)
    if isinstance(d, Graph):
        a, b = point
        return b - a == d.offset and a >= d.start and a not in d.excluded
    if isinstance(d, Union):
        return any(contains(p, point) for p in d.parts)
    raise IndexTypeError(f"not a subset: {d!r}")


def _intersect_graph_rect(g: Graph, r: Rect):
    k = g.offset
    left, right = r.left, r.right
    if isinstance(left, Finite) or isinstance(right, Finite):
        if isinstance(left, Finite):
            ns = left.elems
        else:
            ns = [m - k for m in right.elems]
        pts = [
            n
            for n in ns
            if n >= g.start and n not in g.excluded and contains(left, n) and contains(right, n + k)
        ]
        return [Rect(Finite((n,)), Finite((n + k,))) for n in sorted(set(pts))]
    if not (isinstance(left, Cofinite) and isinstance(right, Cofinite)):
        raise IndexTypeError(f"Graph can only meet rectangles over atoms, got {r}")
    excl = set(g.excluded) | set(left.excluded) | {m - k for m in right.excluded}
    return [graph(k, excl)]


def _intersect_parts(p, q):
    if isinstance(p, Rect) and isinstance(q, Rect):
        return [Rect(intersect(p.left, q.left), intersect(p.right, q.right))]
    if isinstance(p, Graph) and isinstance(q, Graph):
        if p.offset != q.offset:
            return []
        return [graph(p.offset, set(p.excluded) | set(q.excluded))]
    if isinstance(p, Graph):
        return _intersect_graph_rect(p, q)
    return _intersect_graph_rect(q, p)


def intersect(a, b, index=None):
    """Exact intersection of two described subsets of the same index."""
    if index is not None:
        check_subset(a, index)
        check_subset(b, index)
    if isinstance(a, (Rect, Graph)):
        a = as_union(a)
    if isinstance(b, (Rect, Graph)):
        b = as_union(b)
    if isinstance(a, Finite) and isinstance(b, Finite):
        s = set(b.elems)
        return Finite(tuple(x for x in a.elems if x in s))
    if isinstance(a, Finite) and isinstance(b, Cofinite):
        s = set(b.excluded)
        return Finite(tuple(x for x in a.elems if x not in s))
    if isinstance(a, Cofinite) and isinstance(b, Finite):
        return intersect(b, a)
    if isinstance(a, Cofinite) and isinstance(b, Cofinite):
        return cofinite(a.excluded + b.excluded)
    if isinstance(a, Pair) and isinstance(b, Pair):
        return Pair(intersect(a.left, b.left), intersect(a.right, b.right))
    if isinstance(a, Union) and isinstance(b, Union):
        parts = []
        for p in a.parts:
            for q in b.parts:
                parts.extend(_intersect_parts(p, q))
        return union_of(parts)
    raise IndexTypeError(f"type mismatch: cannot intersect {a} with {b}")


def union(a, b, index=None):
    if index is not None:
        check_subset(a, index)
        check_subset(b, index)
    if isinstance(a, (Rect, Graph)):
        a = as_union(a)
    if isinstance(b, (Rect, Graph)):
        b = as_union(b)
    if isinstance(a, Finite) and isinstance(b, Finite):
        return finite(a.elems + b.elems)
    if isinstance(a, Finite) and isinstance(b, Cofinite):
        s = set(a.elems)
        return Cofinite(tuple(x for x in b.excluded if x not in s))
    if isinstance(a, Cofinite) and isinstance(b, Finite):
        return union(b, a)
    if isinstance(a, Cofinite) and isinstance(b, Cofinite):
        s = set(b.excluded)
        return Cofinite(tuple(x for x in a.excluded if x in s))
    if isinstance(a, Pair) and isinstance(b, Pair):
        return Pair(union(a.left, b.left), union(a.right, b.right))
    if isinstance(a, Union) and isinstance(b, Union):
        return union_of(a.parts + b.parts)
    raise IndexTypeError(f"type mismatch: cannot unite {a} with {b}")


def _project_part(p, axis):
    if isinstance(p, Rect):
        return p.left if axis == 1 else p.right
    start = p.start
    if axis == 1:
        return cofinite(tuple(range(start)) + p.excluded)
    low = max(0, p.offset)
    return cofinite(tuple(range(low)) + tuple(n + p.offset for n in p.excluded))


def project(d, axis: int, index=None):
    """Projection of a subset of Prod(I1, I2) onto I1 (axis=1) or I2 (axis=2)."""
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    if index is not None:
        if not isinstance(index, Prod):
            raise IndexTypeError(f"project needs a product index, got {index}")
        check_subset(d, index)
    d = as_union(d)
    out = None
    for p in d.parts:
        if is_empty(p):
            continue
        img = _project_part(p, axis)
        out = img if out is None else union(out, img)
    if out is None:
        if index is None:
            # empty product subset; the factor shape is unknown without the index
            return Finite(())
        return empty(index.left if axis == 1 else index.right)
    return out


def restrict(d, path):
    """Follow a path of 0/1 choices through nested Pairs."""
    for side in path:
        d = d.left if side == 0 else d.right
    return d


def leaves(index, path=()):
    """(path, leaf index) for every non-Sum node reached through Sum nodes."""
    if isinstance(index, Sum):
        return leaves(index.left, path + (0,)) + leaves(index.right, path + (1,))
    return [(path, index)]
