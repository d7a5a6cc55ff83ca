"""Essentially free module objects, their elements, duals and the dual pairing.

A module over index I with family F is the set of vectors in R^I whose support
lies in the polar F°.  Everything here reduces to membership questions about
F and its polars (see :mod:`refcalc.families`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from . import index_language as il
from .families import (
    FIN,
    FULL,
    POLAR,
    RECT,
    SUMFAM,
    check_family,
    member_polar,
    normalize,
    polar_power,
)
from .fields import parse_field
from .generators import random_family, random_index, random_subset, rng_for


class CoefficientMismatch(ValueError):
    pass


class InternalConsistencyError(RuntimeError):
    """An invariant that the calculus guarantees was found broken."""


COEFFICIENT_TAGS = ("Z", "Q", "Fp:<p>", "dual:<p>")


@dataclass(frozen=True)
class ModuleObject:
    index: object
    family: object
    ring: str = "Q"

    def __post_init__(self):
        check_family(self.family, self.index)
        object.__setattr__(self, "family", normalize(self.family))
        parse_field(self.ring)  # validates the tag

    @property
    def domain(self):
        return parse_field(self.ring)

    def __str__(self):
        return f"Module({self.index}; {self.family}; {self.ring})"

    def element(self, terms):
        return ModuleElement(self, tuple(terms))

    def supports(self, beta) -> bool:
        """Is beta an admissible support for elements of this module?"""
        return member_polar(beta, self.family)


def module(index, family, ring: str = "Q") -> ModuleObject:
    return ModuleObject(index, family, ring)


def direct_sum(index, ring="Q") -> ModuleObject:
    """The free module with basis `index` (finite supports)."""
    return ModuleObject(index, FULL(index), ring)


def direct_product(index, ring="Q") -> ModuleObject:
    """R^index (all supports)."""
    return ModuleObject(index, FIN(index), ring)


def dual(M: ModuleObject) -> ModuleObject:
    return ModuleObject(M.index, normalize(POLAR(M.family)), M.ring)


class BuildKind(str, enum.Enum):
    PRODUCT = "Product"
    HOM = "Hom"
    DUAL_TENSOR = "DualTensor"
    TENSOR_REFLEXIVE = "TensorReflexive"
    TILDE_TENSOR_OF_DUALS = "TildeTensorOfDuals"


def build(kind, M: ModuleObject, N: ModuleObject) -> ModuleObject:
    """Product, Hom and tensor constructions on index families."""
    kind = BuildKind(kind)
    if M.ring != N.ring:
        raise CoefficientMismatch(f"coefficient rings differ: {M.ring} vs {N.ring}")
    f, g = M.family, N.family
    if kind is BuildKind.PRODUCT:
        return ModuleObject(il.Sum(M.index, N.index), SUMFAM(f, g), M.ring)
    idx = il.Prod(M.index, N.index)
    if kind is BuildKind.HOM:
        fam = RECT(POLAR(f), g)
    elif kind is BuildKind.DUAL_TENSOR:
        fam = RECT(POLAR(f), POLAR(g))
    elif kind is BuildKind.TENSOR_REFLEXIVE:
        fam = POLAR(RECT(POLAR(f), POLAR(g)))
    else:
        fam = RECT(polar_power(f, 2), polar_power(g, 2))
    return ModuleObject(idx, fam, M.ring)


# ------------------------------------------------------- extensional equality


@dataclass(frozen=True)
class EqualityResult:
    consistent: bool
    witness: object = None
    checked: int = 0

    def __bool__(self):
        return self.consistent


@lru_cache(maxsize=256)
def probe_subsets(index, seed: int, cases: int) -> tuple:
    """Deterministic probe subsets: the whole index first, then seeded random draws."""
    rng = rng_for(seed)
    return (il.full(index),) + tuple(random_subset(rng, index) for _ in range(cases - 1))


def modules_equal_randomized(M: ModuleObject, N: ModuleObject, seed: int = 0, cases: int = 200):
    """Compare support ideals on `cases` sampled subsets; return the first disagreement."""
    if M.index != N.index:
        raise il.IndexTypeError(f"index mismatch: {M.index} vs {N.index}")
    n = 0
    for beta in probe_subsets(M.index, seed, cases):
        n += 1
        if member_polar(beta, M.family) != member_polar(beta, N.family):
            return EqualityResult(False, beta, n)
    return EqualityResult(True, None, n)


# ------------------------------------------------------------- elements


@dataclass(frozen=True)
class ModuleElement:
    """Finite combination sum c_k * indicator(beta_k) in a module."""

    owner: ModuleObject
    terms: tuple = field(default=())

    def __post_init__(self):
        dom = self.owner.domain
        clean = []
        for beta, c in self.terms:
            il.check_subset(beta, self.owner.index)
            if not self.owner.supports(beta):
                raise ValueError(f"support {beta} is not admissible in {self.owner}")
            clean.append((beta, dom(c)))
        object.__setattr__(self, "terms", tuple(clean))

    def _same(self, other):
        if not isinstance(other, ModuleElement) or other.owner != self.owner:
            raise CoefficientMismatch("elements belong to different modules")

    def __add__(self, other):
        self._same(other)
        return ModuleElement(self.owner, self.terms + other.terms)

    def __neg__(self):
        return ModuleElement(self.owner, tuple((b, -c) for b, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.owner.domain(c)
        return ModuleElement(self.owner, tuple((b, c * x) for b, x in self.terms))

    def __rmul__(self, c):
        return self.scale(c)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*chi[{b}]" for b, c in self.terms)


def pair(x: ModuleElement, w: ModuleElement):
    """<x, w> = sum_{k,l} c_k d_l |beta_k cap gamma_l| for x in M, w in dual(M)."""
    M = x.owner
    D = dual(M)
    if w.owner.index != D.index or w.owner.family != D.family:
        raise il.IndexTypeError(f"{w.owner} is not the dual of {M}")
    if w.owner.ring != M.ring:
        raise CoefficientMismatch(f"coefficient rings differ: {M.ring} vs {w.owner.ring}")
    dom = M.domain
    total = dom.zero
    for beta, c in x.terms:
        for gamma, d in w.terms:
            n = il.cardinality(il.intersect(beta, gamma))
            if n is None:
                raise InternalConsistencyError(f"infinite intersection {beta} with {gamma}")
            if n:
                total = total + c * d * dom(n)
    return total


# -------------------------------------------------------------- generators


def catalog_modules(ring: str = "Q"):
    """Named reference modules used by the duality suites."""
    A, B = il.Atom("A"), il.Atom("B")
    AA, AB = il.Prod(A, A), il.Prod(A, B)
    S = il.Sum(A, B)
    return {
        "sum_A": direct_sum(A, ring),
        "prod_A": direct_product(A, ring),
        "free_rank3": direct_sum(il.FinSet(3), ring),
        "mixed_sum": ModuleObject(S, SUMFAM(FULL(A), FIN(B)), ring),
        "row_finite": ModuleObject(AA, RECT(FIN(A), FULL(A)), ring),
        "col_bounded": ModuleObject(AA, RECT(FULL(A), FIN(A)), ring),
        "rect_full": ModuleObject(AB, RECT(FULL(A), FULL(B)), ring),
        "rect_fin": ModuleObject(AB, RECT(FIN(A), FIN(B)), ring),
        "polar_rect": ModuleObject(AA, POLAR(RECT(FIN(A), FULL(A))), ring),
        "bipolar_rect": ModuleObject(AB, polar_power(RECT(FULL(A), FULL(B)), 2), ring),
        "sum_with_finset": ModuleObject(
            il.Sum(il.FinSet(2), il.Prod(il.FinSet(2), B)),
            SUMFAM(FULL(il.FinSet(2)), RECT(FIN(il.FinSet(2)), FULL(B))),
            ring,
        ),
    }


def random_module(rng, ring: str = "Q", depth: int = 4, allow_prod: bool = True) -> ModuleObject:
    index = random_index(rng, 2, allow_prod)
    return ModuleObject(index, random_family(rng, index, depth), ring)


def random_element(rng, M: ModuleObject, terms: int = 3, tries: int = 40) -> ModuleElement:
    """Random element with up to `terms` admissible supports and small coefficients."""
    dom = M.domain
    out = []
    for _ in range(tries):
        if len(out) == terms:
            break
        beta = random_subset(rng, M.index)
        if M.supports(beta):
            out.append((beta, dom(rng.randint(-5, 5))))
    return ModuleElement(M, tuple(out))
