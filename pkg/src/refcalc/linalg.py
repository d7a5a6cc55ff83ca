"""Dense exact linear algebra over the domains in :mod:`refcalc.fields`.

Matrices are lists of rows.  Pivoting takes the first nonzero entry in the
column, so results are deterministic and usable in golden tests.
"""

from __future__ import annotations

from .fields import DomainError, infer_domain


def _domain_of(m, domain):
    if domain is not None:
        return domain
    return infer_domain(x for row in m for x in row)


def _check(m, domain):
    cols = len(m[0]) if m else 0
    for row in m:
        if len(row) != cols:
            raise DomainError("ragged matrix")
        for x in row:
            if not isinstance(x, int) and not domain.contains(x):
                raise DomainError(f"mixed-domain entries: {x!r} not in {domain}")
    return cols


def rref(m, domain=None):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    domain = _domain_of(m, domain)
    _check(m, domain)
    if not domain.is_field:
        raise DomainError(f"row reduction needs a field, not {domain}")
    a = [[domain(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = domain.one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(m, domain=None) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m, domain)[1])


def kernel_basis(m, domain=None, ncols: int | None = None):
    """Basis of the right null space {v : m v = 0}; empty iff m is injective.

    One vector per free column, scaled so its first nonzero entry is 1.
    """
    domain = _domain_of(m, domain)
    if not m:
        n = ncols or 0
        return [[domain.one if i == j else domain.zero for i in range(n)] for j in range(n)]
    n = _check(m, domain)
    red, pivots = rref(m, domain)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [domain.zero] * n
        v[f] = domain.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        lead = next(x for x in v if x)
        basis.append([x / lead for x in v])
    return basis


def solve(m, b, domain=None):
    """One solution x of m x = b, or None if inconsistent."""
    domain = _domain_of(m, domain)
    n = len(m[0]) if m else 0
    aug = [list(row) + [domain(bi)] for row, bi in zip(m, b)]
    red, pivots = rref(aug, domain)
    if n in pivots:
        return None
    x = [domain.zero] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


def matmul(a, b, domain):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [domain.zero] * cols
        for k in range(inner):
            x = row[k]
            if not x:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    acc[j] = acc[j] + x * bk[j]
        out.append(acc)
    return out


def matvec(a, v, domain):
    out = []
    for row in a:
        acc = domain.zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def identity(n, domain):
    return [[domain.one if i == j else domain.zero for j in range(n)] for i in range(n)]


def zeros(r, c, domain):
    return [[domain.zero] * c for _ in range(r)]


def kron(a, b, domain):
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y for x in ra for y in rb])
    return out


def span_contains(basis, v, domain) -> bool:
    """Is v in the column span of the given vectors?"""
    if not basis:
        return not any(v)
    before = rank(basis, domain)
    return rank(basis + [list(v)], domain) == before


def hankel_relation(seq, order: int, domain, rows: int | None = None):
    """Monic order-`order` recurrence c with sum_j c_j a_{i+j} + a_{i+order} = 0.

    Checks indices i = 0 .. rows-1 (default: every index available).
    Returns [c_0, ..., c_{order-1}, 1] or None.
    """
    avail = len(seq) - order
    if rows is None:
        rows = avail
    if rows > avail:
        raise ValueError("not enough terms for the requested Hankel rows")
    if order == 0:
        return [domain.one] if all(not seq[i] for i in range(rows)) else None
    mat = [[seq[i + j] for j in range(order)] for i in range(rows)]
    rhs = [-seq[i + order] for i in range(rows)]
    if not mat:
        return [domain.zero] * order + [domain.one]
    sol = solve(mat, rhs, domain)
    if sol is None:
        return None
    return sol + [domain.one]


def minimal_annihilator(seq, bound: int, domain):
    """Minimal monic recurrence of a sequence known to satisfy one of order <= bound.

    Uses the first 2*bound terms: an order-d candidate that holds on indices
    0..2*bound-d-1 holds forever, because the defect sequence satisfies the
    order-bound recurrence and vanishes on `bound` consecutive terms.
    """
    if len(seq) < 2 * bound:
        raise ValueError(f"need {2 * bound} terms, got {len(seq)}")
    for d in range(bound + 1):
        rel = hankel_relation(seq, d, domain, rows=2 * bound - d)
        if rel is not None:
            return rel
    raise ValueError("sequence does not satisfy a recurrence of the stated order")


def minimal_polynomial(mat, domain):
    """Minimal polynomial of a square matrix via the Krylov sequence of its powers."""
    n = len(mat)
    powers = [identity(n, domain)]
    for _ in range(n):
        powers.append(matmul(powers[-1], mat, domain))
    vecs = [[x for row in p for x in row] for p in powers]
    for d in range(n + 1):
        cols = [[vecs[j][i] for j in range(d)] for i in range(n * n)]
        rhs = [-x for x in vecs[d]]
        if d == 0:
            if not any(vecs[0]):
                return [domain.one]  # pragma: no cover - only for n == 0
            continue
        sol = solve(cols, rhs, domain)
        if sol is not None:
            return sol + [domain.one]
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover
