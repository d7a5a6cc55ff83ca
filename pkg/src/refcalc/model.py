"""Model files: named index terms, families, modules, subsets and assertions.

Line-based text format (``#`` starts a comment)::

    index I = Sum(Atom A, Atom B)
    family P on I = SUMFAM(FULL, FIN)
    module M on I = SUMFAM(FULL, FIN) coeff Q
    subset s on I = Pair(Fin{1,2}, Cofin{})
    equal M N
    linrec fib = linrec(Q, f=x^2 - x - 1, init=[0, 1], structure=additive)
    bialgebra B = path/to/structure.json
    tower T = path/to/tower.json

``on`` takes an index name declared earlier or an inline index term.  JSON
files hold structure constants (see :func:`load_structure`) or towers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import index_language as il
from .bialgebra import FdAlgebra, FdBialgebra, FdCoalgebra
from .dsl import DSLSyntaxError, Parser
from .fields import DomainError, PrimeField, field_tag, parse_field
from .polys import parse_poly
from .profinite import AlgebraTower, LinRecFunctional
from .support import ModuleObject


class ModelError(ValueError):
    """A model file is malformed; the message names the location."""


@dataclass
class Decl:
    kind: str
    name: str
    line: int
    index_name: str | None = None
    index: object = None
    value: object = None
    coeff: str | None = None
    source: str | None = None


@dataclass
class Model:
    path: str | None = None
    decls: list = field(default_factory=list)
    equals: list = field(default_factory=list)  # (left, right, line)

    def _by_kind(self, kind):
        return {d.name: d for d in self.decls if d.kind == kind}

    @property
    def indexes(self):
        return {n: d.value for n, d in self._by_kind("index").items()}

    @property
    def families(self):
        return {n: d.value for n, d in self._by_kind("family").items()}

    @property
    def modules(self):
        return {n: d.value for n, d in self._by_kind("module").items()}

    @property
    def subsets(self):
        return {n: d.value for n, d in self._by_kind("subset").items()}

    @property
    def linrecs(self):
        return {n: d.value for n, d in self._by_kind("linrec").items()}

    @property
    def bialgebras(self):
        return {n: d.value for n, d in self._by_kind("bialgebra").items()}

    @property
    def towers(self):
        return {n: d.value for n, d in self._by_kind("tower").items()}

    def ast(self):
        """Comparable summary of the declarations (used for round-trip checks)."""
        out = [(d.kind, d.name, d.index, d.value) for d in self.decls]
        return out + [("equal", a, b) for a, b, _ in self.equals]


_DECL = re.compile(r"^(index|family|module|subset|linrec|bialgebra|tower)\s+([A-Za-z_][A-Za-z0-9_]*)\s*")
_EQUAL = re.compile(r"^equal\s+([A-Za-z_][A-Za-z0-9_]*)\s+([A-Za-z_][A-Za-z0-9_]*)\s*$")
_LINREC = re.compile(
    r"^linrec\(\s*([A-Za-z0-9:]+)\s*,\s*f\s*=\s*([^,]+?)\s*,\s*init\s*=\s*\[([^\]]*)\]\s*,"
    r"\s*structure\s*=\s*(additive|multiplicative)\s*\)$"
)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_model_text(text: str, path: str | None = None) -> Model:
    model = Model(path=path)
    names: dict[str, int] = {}
    base = Path(path).parent if path else Path(".")
    where = path or "<model>"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        offset = len(line) - len(line.lstrip())
        body = line.strip()
        m = _EQUAL.match(body)
        if m:
            model.equals.append((m.group(1), m.group(2), lineno))
            continue
        m = _DECL.match(body)
        if not m:
            raise ModelError(f"{where}:{lineno}:{offset + 1}: expected a declaration")
        kind, name = m.group(1), m.group(2)
        if name in names:
            raise ModelError(
                f"{where}:{lineno}: duplicate name {name!r} (first declared on line {names[name]})"
            )
        names[name] = lineno
        rest = body[m.end():]
        col = offset + m.end() + 1
        try:
            decl = _parse_decl(kind, name, rest, lineno, col, model, base)
        except DSLSyntaxError as e:
            raise ModelError(f"{where}:{e.line}:{e.column}: {e.message}") from None
        except (il.IndexTypeError, DomainError, ValueError) as e:
            if isinstance(e, ModelError):
                raise
            pos = re.match(r"line (\d+), column (\d+): (.*)", str(e), re.S)
            if pos:
                raise ModelError(
                    f"{where}:{pos.group(1)}:{pos.group(2)}: declaration {name!r}: {pos.group(3)}"
                ) from None
            raise ModelError(f"{where}:{lineno}: declaration {name!r}: {e}") from None
        model.decls.append(decl)
    defined = model._by_kind("module")
    for a, b, lineno in model.equals:
        for n in (a, b):
            if n not in defined:
                raise ModelError(f"{where}:{lineno}: equal refers to unknown module {n!r}")
        ma, mb = defined[a].value, defined[b].value
        if ma.index != mb.index:
            raise ModelError(f"{where}:{lineno}: equal {a} {b}: index mismatch {ma.index} vs {mb.index}")
        if ma.ring != mb.ring:
            raise ModelError(f"{where}:{lineno}: equal {a} {b}: field mismatch {ma.ring} vs {mb.ring}")
    return model


def _split_on(rest, lineno, col, model):
    """Parse ``on <index> = ...``; returns (index_name, index, text_after_eq, column)."""
    m = re.match(r"on\s+", rest)
    if not m:
        raise DSLSyntaxError("expected 'on <index>'", lineno, col)
    rest2 = rest[m.end():]
    col2 = col + m.end()
    eq = rest2.find("=")
    if eq < 0:
        raise DSLSyntaxError("expected '='", lineno, col2 + len(rest2))
    idx_text = rest2[:eq].strip()
    indexes = model.indexes
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", idx_text) and idx_text not in ("Atom", "FinSet"):
        if idx_text not in indexes:
            raise ModelError(f"line {lineno}: unknown index {idx_text!r}")
        index_name, index = idx_text, indexes[idx_text]
    else:
        p = Parser(rest2[:eq], lineno, col2)
        index = p.index()
        p.end()
        index_name = None
    after = rest2[eq + 1:]
    lead = len(after) - len(after.lstrip())
    return index_name, index, after.strip(), col2 + eq + 1 + lead


def _expect_eq(rest, lineno, col):
    m = re.match(r"=\s*", rest)
    if not m:
        raise DSLSyntaxError("expected '='", lineno, col)
    return rest[m.end():].strip(), col + m.end()


def _parse_decl(kind, name, rest, lineno, col, model, base):
    if kind == "index":
        text, c = _expect_eq(rest, lineno, col)
        p = Parser(text, lineno, c)
        value = p.index()
        p.end()
        return Decl(kind, name, lineno, value=value)
    if kind in ("family", "module", "subset"):
        index_name, index, text, c = _split_on(rest, lineno, col, model)
        if kind == "subset":
            p = Parser(text, lineno, c)
            value = p.subset()
            p.end()
            il.check_subset(value, index)
            return Decl(kind, name, lineno, index_name, index, value)
        coeff = None
        m = re.search(r"\s+coeff\s+(\S+)\s*$", text)
        if m and kind == "module":
            coeff = m.group(1)
            text = text[: m.start()]
        p = Parser(text, lineno, c)
        fam = p.family(index)
        p.end()
        if kind == "family":
            return Decl(kind, name, lineno, index_name, index, fam)
        coeff = coeff or "Q"
        return Decl(kind, name, lineno, index_name, index, ModuleObject(index, fam, coeff), coeff, str(fam))
    if kind == "linrec":
        text, c = _expect_eq(rest, lineno, col)
        return Decl(kind, name, lineno, value=parse_linrec(text), source=text)
    text, c = _expect_eq(rest, lineno, col)
    path = (base / text).resolve() if not Path(text).is_absolute() else Path(text)
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise ModelError(f"line {lineno}: cannot read {text}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ModelError(f"{text}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None
    value = load_structure(data, text) if kind == "bialgebra" else load_tower(data, text)
    return Decl(kind, name, lineno, value=value, source=text)


def parse_linrec(text: str) -> LinRecFunctional:
    m = _LINREC.match(text.strip())
    if not m:
        raise ValueError(f"bad linrec literal {text!r}")
    F = parse_field(m.group(1))
    f = parse_poly(m.group(2), F)
    init = [F(x.strip()) for x in m.group(3).split(",") if x.strip()]
    return LinRecFunctional(F, tuple(f), tuple(init), m.group(4))


def parse_model_file(path) -> Model:
    path = str(path)
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ModelError(f"cannot read {path}: {e.strerror}") from None
    if path.endswith(".json"):
        data = json.loads(text)
        model = Model(path=path)
        kind = "tower" if "levels" in data else "bialgebra"
        value = load_tower(data, path) if kind == "tower" else load_structure(data, path)
        model.decls.append(Decl(kind, Path(path).stem, 1, value=value, source=Path(path).name))
        return model
    return parse_model_text(text, path)


# ------------------------------------------------------------------ printing


def _scalar_text(x) -> str:
    return str(x)


def model_to_text(model: Model) -> str:
    lines = []
    for d in model.decls:
        idx = d.index_name or (str(d.index) if d.index is not None else None)
        if d.kind == "index":
            lines.append(f"index {d.name} = {d.value}")
        elif d.kind == "family":
            lines.append(f"family {d.name} on {idx} = {d.value}")
        elif d.kind == "module":
            lines.append(f"module {d.name} on {idx} = {d.source} coeff {d.coeff}")
        elif d.kind == "subset":
            lines.append(f"subset {d.name} on {idx} = {d.value}")
        elif d.kind == "linrec":
            w = d.value
            lines.append(f"linrec {d.name} = {linrec_literal(w)}")
        else:
            lines.append(f"{d.kind} {d.name} = {d.source}")
    for a, b, _ in model.equals:
        lines.append(f"equal {a} {b}")
    return "\n".join(lines) + "\n"


def linrec_literal(w: LinRecFunctional) -> str:
    from .fields import poly_str

    init = ", ".join(_scalar_text(x) for x in w.init)
    return f"linrec({field_tag(w.field)}, f={poly_str(w.modulus)}, init=[{init}], structure={w.structure})"


# ------------------------------------------------------------------- JSON


def _parse_json_scalar(x, F, where):
    try:
        if isinstance(x, str):
            return F(Fraction(x)) if not isinstance(F, PrimeField) else _fp_from_text(x, F)
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            if isinstance(x, float) and not x.is_integer():
                raise DomainError("floats are not exact; write rationals as \"a/b\"")
            return F(int(x))
    except (ValueError, ZeroDivisionError) as e:
        raise ModelError(f"{where}: bad scalar {x!r}: {e}") from None
    raise ModelError(f"{where}: bad scalar {x!r}")


def _fp_from_text(x, F):
    q = Fraction(x)
    return F(q.numerator) / F(q.denominator)


def _tensor(data, n, F, where):
    if not isinstance(data, list) or len(data) != n:
        raise ModelError(f"{where}: expected a {n}x{n}x{n} tensor, got {_shape(data)}")
    out = []
    for i, mat in enumerate(data):
        if not isinstance(mat, list) or len(mat) != n:
            raise ModelError(f"{where}[{i}]: expected {n} rows, got {_shape(mat)}")
        rows = []
        for j, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise ModelError(f"{where}[{i}][{j}]: expected {n} entries, got {_shape(row)}")
            rows.append([_parse_json_scalar(x, F, f"{where}[{i}][{j}]") for x in row])
        out.append(rows)
    return out


def _shape(x):
    if isinstance(x, list):
        return f"list of length {len(x)}"
    return type(x).__name__


def _vector(data, n, F, where):
    if not isinstance(data, list) or len(data) != n:
        raise ModelError(f"{where}: expected {n} entries, got {_shape(data)}")
    return [_parse_json_scalar(x, F, where) for x in data]


def load_structure(data: dict, where: str = "<json>"):
    """Structure constants from a JSON object; returns an FdAlgebra, FdCoalgebra or FdBialgebra."""
    try:
        F = parse_field(str(data["field"]))
        n = int(data["dim"])
    except KeyError as e:
        raise ModelError(f"{where}: missing key {e.args[0]!r}") from None
    except DomainError as e:
        raise ModelError(f"{where}: {e}") from None
    labels = data.get("labels") or [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise ModelError(f"{where}: {len(labels)} labels for dimension {n}")
    has_alg = "mult" in data
    has_co = "comult" in data
    if not (has_alg or has_co):
        raise ModelError(f"{where}: need 'mult' and/or 'comult'")
    if has_alg:
        mult = _tensor(data["mult"], n, F, f"{where}: mult")
        unit = _vector(data.get("unit"), n, F, f"{where}: unit")
    if has_co:
        comult = _tensor(data["comult"], n, F, f"{where}: comult")
        counit = _vector(data.get("counit"), n, F, f"{where}: counit")
    if has_alg and has_co:
        return FdBialgebra(F, tuple(labels), mult, unit, comult, counit)
    if has_alg:
        return FdAlgebra(F, tuple(labels), mult, unit)
    return FdCoalgebra(F, tuple(labels), comult, counit)


def dump_structure(x) -> dict:
    out = {"field": field_tag(x.field), "dim": x.dim, "labels": list(x.labels)}

    def enc(v):
        return str(v)

    if hasattr(x, "mult"):
        out["mult"] = [[[enc(v) for v in r] for r in m] for m in x.mult]
        out["unit"] = [enc(v) for v in x.unit]
    if hasattr(x, "comult"):
        out["comult"] = [[[enc(v) for v in r] for r in m] for m in x.comult]
        out["counit"] = [enc(v) for v in x.counit]
    return out


def load_tower(data: dict, where: str = "<json>") -> AlgebraTower:
    try:
        F = parse_field(str(data["field"]))
        levels_raw = data["levels"]
        trans_raw = data.get("transitions", [])
    except KeyError as e:
        raise ModelError(f"{where}: missing key {e.args[0]!r}") from None
    levels = []
    for i, lv in enumerate(levels_raw):
        lv = dict(lv)
        lv.setdefault("field", data["field"])
        alg = load_structure(lv, f"{where}: levels[{i}]")
        if not isinstance(alg, FdAlgebra):
            raise ModelError(f"{where}: levels[{i}] must be an algebra")
        if alg.field != F:
            raise ModelError(f"{where}: levels[{i}] field mismatch")
        levels.append(alg)
    trans = []
    for i, t in enumerate(trans_raw):
        if not isinstance(t, list):
            raise ModelError(f"{where}: transitions[{i}] must be a matrix")
        trans.append([[_parse_json_scalar(x, F, f"{where}: transitions[{i}]") for x in row] for row in t])
    try:
        return AlgebraTower(levels, trans)
    except ValueError as e:
        raise ModelError(f"{where}: {e}") from None
