"""Seeded random generators for index terms, subsets, families and modules.

Each case gets its own ``random.Random`` seeded by ``subseed(seed, i)``, a
splitmix64 step, so a case can be replayed without regenerating the cases
before it and work can be split across processes without changing results.
"""

from __future__ import annotations

import random

from . import index_language as il
from .families import FIN, FULL, POLAR, RECT, SUMFAM

MASK64 = (1 << 64) - 1

MAX_FINITE_SIZE = 8
MAX_ENTRY = 64
MAX_OFFSET = 4
MAX_COMPONENTS = 3


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def subseed(seed: int, *path: int) -> int:
    """Deterministic child seed for case `path` under `seed`."""
    s = seed & MASK64
    for p in path:
        s = splitmix64(s ^ splitmix64(p & MASK64))
    return s


def rng_for(seed: int, *path: int) -> random.Random:
    return random.Random(subseed(seed, *path))


ATOM_NAMES = ("A", "B", "C")


def random_index(rng: random.Random, depth: int = 2, allow_prod: bool = True):
    """Index term with product depth <= 1."""
    r = rng.random()
    if depth <= 0 or r < 0.2:
        if rng.random() < 0.75:
            return il.Atom(rng.choice(ATOM_NAMES))
        return il.FinSet(rng.randint(0, 3))
    if allow_prod and r < 0.6:
        if rng.random() < 0.3:
            a = il.Atom(rng.choice(ATOM_NAMES))
            return il.Prod(a, a)
        return il.Prod(random_index(rng, depth - 1, False), random_index(rng, depth - 1, False))
    return il.Sum(random_index(rng, depth - 1, allow_prod), random_index(rng, depth - 1, allow_prod))


def random_family(rng: random.Random, index, depth: int = 4):
    """Family over `index` with term depth <= depth."""
    options = ["FIN", "FULL"]
    if depth > 1:
        options += ["POLAR", "POLAR"]
        if isinstance(index, il.Sum):
            options += ["SUMFAM"] * 3
        if isinstance(index, il.Prod):
            options += ["RECT"] * 3
    kind = rng.choice(options)
    if kind == "FIN":
        return FIN(index)
    if kind == "FULL":
        return FULL(index)
    if kind == "POLAR":
        return POLAR(random_family(rng, index, depth - 1))
    if kind == "SUMFAM":
        return SUMFAM(random_family(rng, index.left, depth - 1), random_family(rng, index.right, depth - 1))
    return RECT(random_family(rng, index.left, depth - 1), random_family(rng, index.right, depth - 1))


def _ints(rng, bound, size):
    """`size` distinct integers below `bound` (fewer if bound is smaller)."""
    size = min(size, bound)
    out = set()
    while len(out) < size:
        out.add(int(rng.random() * bound))
    return out


def random_subset(rng: random.Random, index):
    if isinstance(index, il.Atom):
        r = rng.random()
        if r < 0.45:
            return il.finite(_ints(rng, MAX_ENTRY, rng.randint(0, MAX_FINITE_SIZE)))
        return il.cofinite(_ints(rng, MAX_ENTRY, rng.randint(0, MAX_FINITE_SIZE)))
    if isinstance(index, il.FinSet):
        return il.finite(x for x in range(index.n) if rng.random() < 0.5)
    if isinstance(index, il.Sum):
        return il.Pair(random_subset(rng, index.left), random_subset(rng, index.right))
    graphs_ok = isinstance(index.left, il.Atom) and index.left == index.right
    parts = []
    for _ in range(rng.randint(1, MAX_COMPONENTS)):
        if graphs_ok and rng.random() < 0.35:
            k = rng.randint(-MAX_OFFSET, MAX_OFFSET)
            excl = _ints(rng, 16, rng.randint(0, 2)) if rng.random() < 0.2 else ()
            parts.append(il.graph(k, excl))
        else:
            parts.append(il.Rect(random_subset(rng, index.left), random_subset(rng, index.right)))
    return il.union_of(parts)


def random_point(rng: random.Random, index, bound: int = 72):
    """A point of `index`, or None if the index is empty."""
    if isinstance(index, il.Atom):
        return rng.randrange(bound)
    if isinstance(index, il.FinSet):
        return rng.randrange(index.n) if index.n else None
    if isinstance(index, il.Sum):
        side = rng.randrange(2)
        p = random_point(rng, index.right if side else index.left, bound)
        if p is None:
            other = random_point(rng, index.left if side else index.right, bound)
            return None if other is None else (1 - side, other)
        return (side, p)
    a = random_point(rng, index.left, bound)
    b = random_point(rng, index.right, bound)
    return None if a is None or b is None else (a, b)


def _draw(rng, d, bound):
    if isinstance(d, il.Finite):
        return rng.choice(d.elems) if d.elems else None
    if isinstance(d, il.Cofinite):
        for _ in range(32):
            n = rng.randrange(bound)
            if n not in d.excluded:
                return n
        return bound + max(d.excluded, default=0)
    if isinstance(d, il.Pair):
        sides = [0, 1]
        rng.shuffle(sides)
        for side in sides:
            p = _draw(rng, d.left if side == 0 else d.right, bound)
            if p is not None:
                return (side, p)
        return None
    if isinstance(d, il.Union):
        parts = [q for q in d.parts if not il.is_empty(q)]
        return _draw(rng, rng.choice(parts), bound) if parts else None
    if isinstance(d, il.Rect):
        a, b = _draw(rng, d.left, bound), _draw(rng, d.right, bound)
        return None if a is None or b is None else (a, b)
    # Graph
    for _ in range(32):
        n = d.start + rng.randrange(bound)
        if n not in d.excluded:
            return (n, n + d.offset)
    return None  # pragma: no cover


def sample_points(rng: random.Random, d, count: int = 24, bound: int = 72):
    """Concrete points of `d`: the full enumeration if finite, else `count` random members."""
    pts = il.finiteness(d)
    if pts is not None:
        return pts
    out = []
    for _ in range(count):
        p = _draw(rng, d, bound)
        if p is not None:
            out.append(p)
    return out
