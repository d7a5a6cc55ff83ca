"""Homomorphism determination and submodule stability under base change.

Modules over a finite-dimensional algebra A are given by one action matrix per
basis vector of A.  Base change to a probe algebra S = K[t]/(g) is handled by
linearizing over K with coordinates in the monomial basis s_0..s_{d-1} of S,
so every check reduces to exact linear algebra over K.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bialgebra import FdAlgebra
from .fields import QuotientRing, test_algebra_catalog
from .linalg import identity, kernel_basis, matmul, rank, zeros


@dataclass(frozen=True)
class FdModule:
    algebra: FdAlgebra
    action: tuple  # action[i] is the matrix of e_i

    def __post_init__(self):
        A = self.algebra
        F = A.field
        acts = tuple(tuple(tuple(F(x) for x in row) for row in mat) for mat in self.action)
        if len(acts) != A.dim:
            raise ValueError(f"need {A.dim} action matrices, got {len(acts)}")
        d = len(acts[0]) if acts else 0
        if any(len(m) != d or any(len(r) != d for r in m) for m in acts):
            raise ValueError("action matrices must be square of one size")
        object.__setattr__(self, "action", acts)
        err = module_axiom_failure(A, acts)
        if err:
            raise ValueError(f"not an A-module: {err}")

    @property
    def dim(self):
        return len(self.action[0]) if self.action else 0


def _lin(A, coeffs, acts, d):
    F = A.field
    out = zeros(d, d, F)
    for c, m in zip(coeffs, acts):
        if c:
            for r in range(d):
                for s in range(d):
                    if m[r][s]:
                        out[r][s] = out[r][s] + c * m[r][s]
    return out


def module_axiom_failure(A, acts):
    F = A.field
    d = len(acts[0]) if acts else 0
    if _lin(A, A.unit, acts, d) != identity(d, F):
        return "unit acts nontrivially"
    for i, j in itertools.product(range(A.dim), repeat=2):
        lhs = matmul([list(r) for r in acts[i]], [list(r) for r in acts[j]], F)
        if lhs != _lin(A, A.mult[i][j], acts, d):
            return f"rho(e{i})rho(e{j}) != rho(e{i}e{j})"
    return None


def regular_module(A: FdAlgebra) -> FdModule:
    """A acting on itself by left multiplication."""
    n = A.dim
    acts = [[[A.mult[i][j][k] for j in range(n)] for k in range(n)] for i in range(n)]
    return FdModule(A, acts)


def trivial_module(A: FdAlgebra, values) -> FdModule:
    """One-dimensional module where e_i acts by values[i] (a character of A)."""
    return FdModule(A, [[[v]] for v in values])


def direct_sum(M: FdModule, N: FdModule) -> FdModule:
    F = M.algebra.field
    a, b = M.dim, N.dim
    acts = []
    for mi, ni in zip(M.action, N.action):
        mat = zeros(a + b, a + b, F)
        for r in range(a):
            mat[r][:a] = list(mi[r])
        for r in range(b):
            mat[a + r][a:] = list(ni[r])
        acts.append(mat)
    return FdModule(M.algebra, acts)


# ----------------------------------------------------- linearization over S


def _s_mult_table(S: QuotientRing):
    """table[u][t] = coordinates of s_u * s_t."""
    basis = S.basis()
    return [[list((bu * bt).c) for bt in basis] for bu in basis]


def hom_equations(A, M, Mp, S=None):
    """Linear system over K for Hom_{A(x)S}(M(x)S, M'(x)S).

    Unknown f[r][c][t] is the s_t-coordinate of entry (r, c) of an S-matrix
    M -> M'.  Equations: f rho(a (x) s_u) = rho'(a (x) s_u) f for every basis
    vector a of A and every s_u.  S=None means S = K.
    """
    F = A.field
    d = S.degree if S is not None else 1
    table = _s_mult_table(S) if S is not None else [[[F.one]]]
    m, mp = M.dim, Mp.dim
    nvar = mp * m * d

    def var(r, c, t):
        return (r * m + c) * d + t

    rows = []
    for a in range(A.dim):
        rho, rhop = M.action[a], Mp.action[a]
        for u in range(d):
            # entry (r, c) of f*rho(a)*s_u - rho'(a)*s_u*f, coordinate t
            for r in range(mp):
                for c in range(m):
                    eq = [[F.zero] * nvar for _ in range(d)]
                    for k in range(m):
                        if rho[k][c]:
                            for t in range(d):
                                for q, coef in enumerate(table[u][t]):
                                    if coef:
                                        eq[q][var(r, k, t)] = eq[q][var(r, k, t)] + rho[k][c] * coef
                    for k in range(mp):
                        if rhop[r][k]:
                            for t in range(d):
                                for q, coef in enumerate(table[u][t]):
                                    if coef:
                                        eq[q][var(k, c, t)] = eq[q][var(k, c, t)] - rhop[r][k] * coef
                    rows.extend(e for e in eq if any(e))
    return rows, nvar


def hom_space(A, M, Mp, S=None):
    """Basis of Hom_{A(x)S}(M(x)S, M'(x)S) as K-vectors in the f[r][c][t] coordinates."""
    rows, nvar = hom_equations(A, M, Mp, S)
    return kernel_basis(rows, A.field, ncols=nvar) if rows else kernel_basis([], A.field, ncols=nvar)


def _satisfies(rows, v, F):
    return all(sum((x * y for x, y in zip(row, v) if x and y), F.zero) == F.zero for row in rows)


@dataclass
class BaseChangeReport:
    algebra: str
    probe: str
    base_dim: int
    extended_dim: int
    degree: int
    dimension_ok: bool
    containment_ok: bool
    nonhom_detected: bool = True

    @property
    def ok(self):
        return self.dimension_ok and self.containment_ok and self.nonhom_detected

    def as_dict(self):
        return {
            "probe": self.probe,
            "dim_base": self.base_dim,
            "dim_extended": self.extended_dim,
            "degree": self.degree,
            "dimension_ok": self.dimension_ok,
            "containment_ok": self.containment_ok,
            "nonhom_detected": self.nonhom_detected,
        }


def hom_base_change_check(A, M, Mp, S, nonhoms=()):
    """Hom over A(x)S equals S (x) Hom over A.

    Checks dim_K of the extended hom space is deg(S) times the base dimension
    and that every f (x) s_t with f a base hom solves the extended system.  Each
    matrix in `nonhoms` (a K-linear map that is not A-linear) must also fail to
    be A(x)S-linear after extension, since maps are determined on base points.
    """
    F = A.field
    base = hom_space(A, M, Mp)
    rows, nvar = hom_equations(A, M, Mp, S)
    ext_dim = nvar - (rank(rows, F) if rows else 0)
    d = S.degree
    contained = True
    for f in base:
        for t in range(d):
            v = [F.zero] * nvar
            for idx, x in enumerate(f):
                v[idx * d + t] = x
            if not _satisfies(rows, v, F):
                contained = False
    base_rows, _ = hom_equations(A, M, Mp)
    detected = True
    for g in nonhoms:
        flat = [F(x) for row in g for x in row]
        if _satisfies(base_rows, flat, F):
            raise ValueError("supplied map is an A-module map")
        v = [F.zero] * nvar
        for idx, x in enumerate(flat):
            v[idx * d] = x
        if _satisfies(rows, v, F):
            detected = False
    return BaseChangeReport(
        algebra=str(A.labels),
        probe=S.name,
        base_dim=len(base),
        extended_dim=ext_dim,
        degree=d,
        dimension_ok=ext_dim == d * len(base),
        containment_ok=contained,
        nonhom_detected=detected,
    )


# ------------------------------------------------------ submodule stability


def _stable(A, M, W, S=None):
    """Is the K-span of W (x) S stable under A (x) S inside M (x) S?"""
    F = A.field
    d = S.degree if S is not None else 1
    table = _s_mult_table(S) if S is not None else [[[F.one]]]
    m = M.dim

    def embed(w, t):
        v = [F.zero] * (m * d)
        for i, x in enumerate(w):
            v[i * d + t] = x
        return v

    span = [embed(w, t) for w in W for t in range(d)]
    base_rank = rank(span, F) if span else 0
    for a in range(A.dim):
        rho = M.action[a]
        for w in W:
            aw = [sum((rho[r][c] * w[c] for c in range(m) if rho[r][c] and w[c]), F.zero) for r in range(m)]
            for u in range(d):
                for t in range(d):
                    img = [F.zero] * (m * d)
                    for q, coef in enumerate(table[u][t]):
                        if coef:
                            for r in range(m):
                                if aw[r]:
                                    img[r * d + q] = img[r * d + q] + aw[r] * coef
                    if not any(img):
                        continue
                    if rank(span + [img], F) != base_rank:
                        return False
    return True


@dataclass
class StabilityReport:
    stable_at_base: bool
    per_probe: dict = field(default_factory=dict)
    ran_base_change: bool = False

    @property
    def consistent(self) -> bool:
        """Stability over every probe agrees with stability at the base."""
        return all(v == self.stable_at_base for v in self.per_probe.values())

    def as_dict(self):
        return {
            "stable_at_base": self.stable_at_base,
            "ran_base_change": self.ran_base_change,
            "per_probe": dict(self.per_probe),
            "consistent": self.consistent,
        }


def submodule_stability_check(A, M, W, probes=None, probe_failures=False):
    """Is span(W) an A-submodule, and does that persist after every base change?

    When W is not stable at the base the probes are skipped unless
    `probe_failures` is set, in which case they are run to confirm the failure
    persists.
    """
    W = [list(w) for w in W if any(w)]
    if probes is None:
        probes = test_algebra_catalog(A.field.p)
    rep = StabilityReport(stable_at_base=_stable(A, M, W))
    if rep.stable_at_base or probe_failures:
        rep.ran_base_change = True
        for S in probes:
            rep.per_probe[S.name] = _stable(A, M, W, S)
    return rep
