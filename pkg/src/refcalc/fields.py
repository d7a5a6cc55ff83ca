"""Exact scalar domains: integers, rationals, prime fields and small quotient rings.

Every domain is a callable that coerces python values (ints, Fractions,
"a/b" strings, other domain elements of the same ring) into its elements.
Elements overload the arithmetic operators, so the linear algebra in
:mod:`refcalc.linalg` is written once for all of them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import total_ordering

MAX_PRIME = 97
MAX_QUOTIENT_DEGREE = 4


class DomainError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


class Integers:
    name = "Z"
    is_field = False
    is_finite = False
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        if isinstance(x, str):
            return int(x)
        raise DomainError(f"cannot coerce {x!r} into Z")

    zero = 0
    one = 1

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "ZZ"


class Rationals:
    name = "Q"
    is_field = True
    is_finite = False
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise DomainError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


@total_ordering
class FpElem:
    """Residue class modulo a prime p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise DomainError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElem(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElem(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElem(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, FpElem):
            return self.v < other.v
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class PrimeField:
    is_field = True
    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p) or p > MAX_PRIME:
            raise DomainError(f"prime fields need a prime p <= {MAX_PRIME}, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"
        self.zero = FpElem(0, p)
        self.one = FpElem(1, p)

    def __call__(self, x):
        if isinstance(x, FpElem):
            if x.p != self.p:
                raise DomainError(f"element of F_{x.p} is not in F_{self.p}")
            return x
        if isinstance(x, bool):
            return FpElem(int(x), self.p)
        if isinstance(x, int):
            return FpElem(x, self.p)
        if isinstance(x, Fraction):
            return FpElem(x.numerator, self.p) / FpElem(x.denominator, self.p)
        if isinstance(x, str):
            return self(Fraction(x))
        raise DomainError(f"cannot coerce {x!r} into F_{self.p}")

    def contains(self, x) -> bool:
        return isinstance(x, FpElem) and x.p == self.p

    def elements(self):
        return [FpElem(i, self.p) for i in range(self.p)]

    @property
    def size(self):
        return self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def GF(p: int) -> PrimeField:
    return PrimeField(p)


QQ = Rationals()
ZZ = Integers()


class QElem:
    """Element of base[t]/(g), stored as the reduced coefficient tuple (low degree first)."""

    __slots__ = ("c", "ring")

    def __init__(self, coeffs, ring: "QuotientRing"):
        self.c = tuple(coeffs)
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, QElem):
            if other.ring != self.ring:
                raise DomainError(f"mixed quotient rings {self.ring} and {other.ring}")
            return other
        try:
            return self.ring(other)
        except DomainError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QElem(tuple(a + b for a, b in zip(self.c, o.c)), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QElem(tuple(a - b for a, b in zip(self.c, o.c)), self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return QElem(tuple(-a for a in self.c), self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ring._mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        return self.ring._inverse(self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, QElem):
            return self.ring == other.ring and self.c == other.c
        try:
            o = self.ring(other)
        except DomainError:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.c, self.ring.modulus))

    def __bool__(self):
        return any(bool(a) for a in self.c)

    def key(self):
        return tuple(int(a) if isinstance(a, FpElem) else a for a in self.c)

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(a)
            if mon and coef == "1":
                terms.append(mon)
            elif mon:
                terms.append(f"{coef}*{mon}")
            else:
                terms.append(coef)
        return " + ".join(terms) if terms else "0"


class QuotientRing:
    """base[t]/(g) for a monic g of degree 1..4.

    Used both as a coefficient ring (dual numbers) and as the probe
    algebras S at which functors are evaluated.
    """

    def __init__(self, base, modulus, name: str | None = None):
        modulus = [base(a) for a in modulus]
        if not modulus or modulus[-1] != base.one:
            raise DomainError("quotient modulus must be monic")
        d = len(modulus) - 1
        if d < 1 or d > MAX_QUOTIENT_DEGREE:
            raise DomainError(f"quotient degree must be in 1..{MAX_QUOTIENT_DEGREE}, got {d}")
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = d
        self.is_finite = base.is_finite
        self.characteristic = base.characteristic
        self.name = name or f"{base.name}[t]/({poly_str(modulus, 't')})"
        self.zero = QElem((base.zero,) * d, self)
        self.one = QElem((base.one,) + (base.zero,) * (d - 1), self)
        self._field = None

    @property
    def enumerable(self) -> bool:
        return self.is_finite

    @property
    def is_field(self) -> bool:
        if self._field is None:
            self._field = self.base.is_field and _is_irreducible(self.modulus, self.base)
        return self._field

    def gen(self):
        if self.degree == 1:
            return self(-self.modulus[0])
        c = [self.base.zero] * self.degree
        c[1] = self.base.one
        return QElem(c, self)

    def basis(self):
        out = []
        for i in range(self.degree):
            c = [self.base.zero] * self.degree
            c[i] = self.base.one
            out.append(QElem(c, self))
        return out

    def __call__(self, x):
        if isinstance(x, QElem):
            if x.ring != self:
                raise DomainError(f"element of {x.ring} is not in {self}")
            return x
        if isinstance(x, (list, tuple)):
            coeffs = [self.base(a) for a in x]
            return QElem(self._reduce(coeffs), self)
        a = self.base(x)
        return QElem((a,) + (self.base.zero,) * (self.degree - 1), self)

    def _reduce(self, coeffs):
        coeffs = list(coeffs)
        d = self.degree
        g = self.modulus
        for i in range(len(coeffs) - 1, d - 1, -1):
            lead = coeffs[i]
            if lead:
                for j in range(d + 1):
                    coeffs[i - d + j] = coeffs[i - d + j] - lead * g[j]
        coeffs = coeffs[:d]
        coeffs += [self.base.zero] * (d - len(coeffs))
        return tuple(coeffs)

    def _mul(self, a: QElem, b: QElem) -> QElem:
        prod = [self.base.zero] * (2 * self.degree - 1)
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if y:
                    prod[i + j] = prod[i + j] + x * y
        return QElem(self._reduce(prod), self)

    def _inverse(self, a: QElem) -> QElem:
        # Solve a * y = 1 as a linear system in the coordinates of y.
        from .linalg import solve

        cols = [a * e for e in self.basis()]
        mat = [[cols[j].c[i] for j in range(self.degree)] for i in range(self.degree)]
        sol = solve(mat, list(self.one.c), self.base)
        if sol is None:
            raise ZeroDivisionError(f"{a} is not invertible in {self}")
        return QElem(tuple(sol), self)

    def elements(self):
        if not self.is_finite:
            raise DomainError(f"{self} is not enumerable")
        return [QElem(c, self) for c in itertools.product(self.base.elements(), repeat=self.degree)]

    @property
    def size(self):
        return self.base.size**self.degree

    def contains(self, x) -> bool:
        return isinstance(x, QElem) and x.ring == self

    def is_nilpotent(self, s: QElem) -> bool:
        return not (s ** self.degree)

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.base == other.base
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("Q", self.base, self.modulus))

    def __repr__(self):
        return self.name


TestAlgebra = QuotientRing


def _is_irreducible(g, base) -> bool:
    d = len(g) - 1
    if d == 1:
        return True
    if not base.is_finite:
        # only used for probe algebras over finite fields
        raise DomainError("irreducibility test needs a finite base field")
    # degree <= 4: reducible iff it has a factor of degree <= 2
    from .polys import poly_divmod

    for k in range(1, d // 2 + 1):
        for tail in itertools.product(base.elements(), repeat=k):
            f = list(tail) + [base.one]
            _, r = poly_divmod(list(g), f, base)
            if not any(r):
                return False
    return True


def poly_str(coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if not a:
            continue
        s = str(a)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if i == 0:
            body = s
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if s == "1" else f"{s}*{mon}"
        if not terms:
            terms.append(("-" if neg else "") + body)
        else:
            terms.append((" - " if neg else " + ") + body)
    return "".join(terms) if terms else "0"


def parse_field(tag: str):
    """Parse a field tag: ``Q``, ``Z``, ``Fp:<p>`` (or ``F<p>``), ``dual:<p>``."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    if tag in ("Z", "ZZ"):
        return ZZ
    for prefix in ("Fp:", "GF:", "F"):
        if tag.startswith(prefix) and tag[len(prefix):].isdigit():
            return GF(int(tag[len(prefix):]))
    if tag.startswith("dual:") and tag[5:].isdigit():
        return dual_numbers(int(tag[5:]))
    raise DomainError(f"unknown field tag {tag!r}")


def field_tag(domain) -> str:
    if isinstance(domain, QuotientRing) and domain.modulus == (domain.base.zero, domain.base.zero, domain.base.one):
        if isinstance(domain.base, PrimeField):
            return f"dual:{domain.base.p}"
    return domain.name


def dual_numbers(p: int) -> QuotientRing:
    F = GF(p)
    return QuotientRing(F, [0, 0, 1], name=f"F{p}[e]")


def irreducible_quadratic(F: PrimeField):
    for a, b in itertools.product(range(F.p), repeat=2):
        g = (F(b), F(a), F.one)
        if _is_irreducible(g, F):
            return g
    raise DomainError(f"no irreducible quadratic over {F}")  # pragma: no cover


def test_algebra_catalog(p: int) -> list[QuotientRing]:
    """The probe algebras F_p, F_p[e], F_p[t]/(t^2-t) and F_{p^2}."""
    F = GF(p)
    return [
        QuotientRing(F, [0, 1], name=f"F{p}"),
        QuotientRing(F, [0, 0, 1], name=f"F{p}[e]"),
        QuotientRing(F, [0, -1, 1], name=f"F{p}[t]/(t^2-t)"),
        QuotientRing(F, irreducible_quadratic(F), name=f"F{p*p}"),
    ]


test_algebra_catalog.__test__ = False  # not a pytest test despite the name


def infer_domain(values):
    """Common domain of a collection of scalars, or DomainError if they mix."""
    found = None
    for x in values:
        if isinstance(x, bool):
            raise DomainError("booleans are not scalars")
        if isinstance(x, FpElem):
            d = GF(x.p)
        elif isinstance(x, QElem):
            d = x.ring
        elif isinstance(x, Fraction):
            d = QQ
        elif isinstance(x, int):
            continue
        else:
            raise DomainError(f"not a scalar: {x!r}")
        if found is None:
            found = d
        elif found != d:
            raise DomainError(f"mixed-domain entries: {found} and {d}")
    return found if found is not None else QQ
