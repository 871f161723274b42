"""Text forms: a small set language and JSON documents for certificates.

Set language::

    expr := term ('u' term)*
    term := '{' [int (',' int)*] '}'      finite set
          | kN+a                          {a, a+k, a+2k, ...}
          | -kN+a                         {a, a-k, a-2k, ...}
          | kZ+a                          the class a mod k

Offsets may be written ``+a`` or ``-a`` and default to ``+0``; whitespace is
ignored.  A term with period k can be placed at period m only when k divides m.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from jsonschema import Draft202012Validator

from .mac import Failure, MacCertificate, Part, VerifyReport
from .strip import StripSet, monomial
from .zset import ZSet, _resolve_cap

SCHEMA_ID = "mac-forge/1"


class SetSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        shown = ", ".join(sorted(expected))
        super().__init__(f"{message} at byte {offset}; expected one of: {shown}")
        self.offset, self.expected = offset, expected


class IncompatiblePeriod(ValueError):
    pass


class SchemaError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


# -- syntax tree ----------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    elements: tuple[int, ...]


@dataclass(frozen=True)
class UpRay:
    period: int
    start: int


@dataclass(frozen=True)
class DownRay:
    period: int
    start: int


@dataclass(frozen=True)
class FullClass:
    period: int
    offset: int


Term = Finite | UpRay | DownRay | FullClass


@dataclass(frozen=True)
class SetExpr:
    terms: tuple[Term, ...]


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"(?P<int>[0-9]+)|(?P<sym>[{},+\-NZu])")
_TERM_START = frozenset({"'{'", "'-'", "integer", "'N'", "'Z'"})


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", a symbol, or "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    def byte_offset(i: int) -> int:
        return len(text[:i].encode("utf-8"))

    out, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            expected = _TERM_START | {"'u'", "','", "'}'", "'+'"}
            raise SetSyntaxError(f"unexpected character {text[pos]!r}", byte_offset(pos), expected)
        kind = "int" if mt.group("int") else mt.group("sym")
        out.append(_Tok(kind, mt.group(0), byte_offset(pos)))
        pos = mt.end()
    out.append(_Tok("end", "", byte_offset(len(text))))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: frozenset[str]) -> SetSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        return SetSyntaxError(f"unexpected {found}", t.offset, expected)

    def take(self, kind: str, expected: frozenset[str]) -> _Tok:
        if self.tok.kind != kind:
            raise self.fail(expected)
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
        return sign * int(self.take("int", frozenset({"integer"})).text)

    def expr(self) -> SetExpr:
        terms = [self.term()]
        while self.tok.kind == "u":
            self.i += 1
            terms.append(self.term())
        if self.tok.kind != "end":
            raise self.fail(frozenset({"'u'", "end of input"}))
        return SetExpr(tuple(terms))

    def term(self) -> Term:
        t = self.tok
        if t.kind == "{":
            self.i += 1
            elems = []
            if self.tok.kind != "}":
                elems.append(self.integer())
                while self.tok.kind == ",":
                    self.i += 1
                    elems.append(self.integer())
            self.take("}", frozenset({"','", "'}'"}))
            return Finite(tuple(elems))
        negative = False
        if t.kind == "-":
            negative = True
            self.i += 1
        period_tok = self.tok
        period = 1
        if period_tok.kind == "int":
            period = int(period_tok.text)
            self.i += 1
        kind = self.tok
        if kind.kind not in ("N", "Z") or (negative and kind.kind == "Z"):
            if period_tok is kind:
                raise self.fail(frozenset({"integer", "'N'"}) if negative else _TERM_START)
            raise self.fail(frozenset({"'N'"}) if negative else frozenset({"'N'", "'Z'"}))
        self.i += 1
        if period < 1:
            raise SetSyntaxError("period must be at least 1", period_tok.offset, frozenset({"positive integer"}))
        offset = 0
        if self.tok.kind in ("+", "-"):
            offset = self.integer()
        if kind.kind == "Z":
            return FullClass(period, offset)
        return DownRay(period, offset) if negative else UpRay(period, offset)


def parse(text: str) -> SetExpr:
    return _Parser(text).expr()


def _render_term(t: Term) -> str:
    if isinstance(t, Finite):
        return "{" + ",".join(str(n) for n in t.elements) + "}"
    if isinstance(t, UpRay):
        return f"{t.period}N{t.start:+d}"
    if isinstance(t, DownRay):
        return f"-{t.period}N{t.start:+d}"
    return f"{t.period}Z{t.offset:+d}"


def render(e: SetExpr) -> str:
    return " u ".join(_render_term(t) for t in e.terms)


# -- meaning ----------------------------------------------------------------


def _term_columns(t: Term, m: int, cap: int) -> StripSet:
    if isinstance(t, Finite):
        return StripSet.from_integers(m, set(t.elements), cap)
    if m % t.period:
        raise IncompatiblePeriod(f"period {t.period} does not divide {m}")
    out = StripSet.empty(m, cap)
    for j in range(m // t.period):
        if isinstance(t, UpRay):
            n = t.start + j * t.period
            out = out.union(monomial(ZSet.up_ray(n // m, cap), n % m, m))
        elif isinstance(t, DownRay):
            n = t.start - j * t.period
            out = out.union(monomial(ZSet.down_ray(n // m, cap), n % m, m))
        else:
            n = t.offset + j * t.period
            out = out.union(monomial(ZSet.full(cap), n % m, m))
    return out


def to_stripset(e: SetExpr, m: int, cap: int | None = None) -> StripSet:
    cap = _resolve_cap(cap)
    out = StripSet.empty(m, cap)
    for t in e.terms:
        out = out.union(_term_columns(t, m, cap))
    return out


def from_stripset(s: StripSet) -> SetExpr:
    """Canonical expression: classes, up-rays, down-rays, then one finite set."""
    m = s.m
    classes, ups, downs, points = [], [], [], []
    for r, col in enumerate(s.cols):
        if col.is_empty():
            continue
        if not col.is_plain():
            raise ValueError(f"column {r} has multiplicities above 1; the set language holds plain sets")
        if col.is_full():
            classes.append(FullClass(m, r))
            continue
        if col.neg_tail:
            downs.append(DownRay(m, r + m * (col.lo - 1)))
        if col.pos_tail:
            ups.append(UpRay(m, r + m * (col.hi + 1)))
        points.extend(r + m * (col.lo + i) for i, v in enumerate(col.core) if v)
    terms: list[Term] = classes + ups + downs
    if points or not terms:
        terms.append(Finite(tuple(sorted(points))))
    return SetExpr(tuple(terms))


def parse_strip(text: str, m: int, cap: int | None = None) -> StripSet:
    return to_stripset(parse(text), m, cap)


def render_strip(s: StripSet) -> str:
    return render(from_stripset(s))


def parse_heights(text: str, cap: int | None = None) -> ZSet:
    """A set read at period 1, i.e. a plain ZSet."""
    return to_stripset(parse(text), 1, cap).cols[0]


def render_heights(z: ZSet) -> str:
    return render_strip(StripSet(1, (z,)))


# -- JSON documents ---------------------------------------------------------

_FAILURE = {
    "type": "object",
    "required": ["kind", "residue", "point"],
    "properties": {
        "kind": {"enum": ["uncovered", "not-unique", "no-dependent", "partition", "residue", "not-in-W", "not-plain"]},
        "residue": {"type": "integer"},
        "point": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}

_VERDICTS = {
    "type": "object",
    "required": ["covered", "minimal", "failures"],
    "properties": {
        "covered": {"type": "boolean"},
        "minimal": {"type": "boolean"},
        "window": {"type": ["array", "null"], "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "failures": {"type": "array", "items": _FAILURE},
    },
    "additionalProperties": False,
}

_HEADER = {"schema": {"const": SCHEMA_ID}, "kind": {"enum": ["certificate", "report"]}}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["schema", "kind", "m", "C", "W", "parts"],
    "properties": {
        **_HEADER,
        "m": {"type": "integer", "minimum": 1},
        "C": {"type": "string"},
        "W": {"type": "string"},
        "parts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["piece", "pieceResidue", "w", "targetResidue"],
                "properties": {
                    "piece": {"type": "string"},
                    "pieceResidue": {"type": "integer"},
                    "w": {"type": "integer"},
                    "targetResidue": {"type": "integer"},
                },
                "additionalProperties": False,
            },
        },
        "verdicts": _VERDICTS,
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "kind", "verdicts"],
    "properties": {**_HEADER, "verdicts": _VERDICTS},
    "additionalProperties": False,
}


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def _validate(doc, schema) -> None:
    errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=lambda e: (len(e.absolute_path), str(e.absolute_path)))
    if not errors:
        return
    err = errors[0]
    path = list(err.absolute_path)
    if err.validator == "required" and isinstance(err.instance, dict):
        missing = [p for p in err.validator_value if p not in err.instance]
        path.append(missing[0])
    raise SchemaError(_pointer(path), err.message)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _verdicts(report: VerifyReport) -> dict:
    return {
        "covered": report.covered,
        "minimal": report.minimal,
        "window": list(report.window) if report.window else None,
        "failures": [{"kind": f.kind, "residue": f.residue, "point": f.point} for f in report.failures],
    }


def certificate_to_json(cert: MacCertificate, report: VerifyReport | None = None) -> str:
    m = cert.m
    doc = {
        "schema": SCHEMA_ID,
        "kind": "certificate",
        "m": m,
        "C": render_strip(cert.C),
        "W": render_strip(cert.W),
        "parts": [
            {
                "piece": render_strip(monomial(p.piece, p.piece_residue, m)),
                "pieceResidue": p.piece_residue,
                "w": p.w,
                "targetResidue": p.target_residue,
            }
            for p in cert.parts
        ],
    }
    if report is not None:
        doc["verdicts"] = _verdicts(report)
    return _dump(doc)


def report_to_json(report: VerifyReport) -> str:
    return _dump({"schema": SCHEMA_ID, "kind": "report", "verdicts": _verdicts(report)})


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("", "document must be an object")
    return doc


def _set_field(doc: dict, key: str, m: int, pointer: str, cap: int | None) -> StripSet:
    try:
        return parse_strip(doc[key], m, cap)
    except (SetSyntaxError, IncompatiblePeriod) as exc:
        raise SchemaError(pointer, str(exc)) from exc


def _report_from(v: dict) -> VerifyReport:
    return VerifyReport(
        covered=v["covered"],
        minimal=v["minimal"],
        failures=[Failure(f["kind"], f["residue"], f["point"]) for f in v["failures"]],
        window=tuple(v["window"]) if v.get("window") else None,
    )


def certificate_from_json(text: str, cap: int | None = None) -> tuple[MacCertificate, VerifyReport | None]:
    doc = _load(text)
    _validate(doc, CERTIFICATE_SCHEMA)
    if doc["kind"] != "certificate":
        raise SchemaError("/kind", "expected a certificate document")
    m = doc["m"]
    C = _set_field(doc, "C", m, "/C", cap)
    W = _set_field(doc, "W", m, "/W", cap)
    parts = []
    for i, p in enumerate(doc["parts"]):
        where = f"/parts/{i}/piece"
        cols = _set_field(p, "piece", m, where, cap)
        r = p["pieceResidue"]
        if any(not c.is_empty() for j, c in enumerate(cols.cols) if j != r % m):
            raise SchemaError(where, f"piece has points outside residue {r}")
        parts.append(Part(cols.cols[r % m], r, p["w"], p["targetResidue"]))
    report = _report_from(doc["verdicts"]) if "verdicts" in doc else None
    return MacCertificate(m, C, W, tuple(parts)), report


def report_from_json(text: str) -> VerifyReport:
    doc = _load(text)
    _validate(doc, REPORT_SCHEMA)
    if doc["kind"] != "report":
        raise SchemaError("/kind", "expected a report document")
    return _report_from(doc["verdicts"])


def normalize_certificate_json(text: str, cap: int | None = None) -> str:
    """Parse and re-emit, so that equivalent documents become identical bytes."""
    cert, report = certificate_from_json(text, cap)
    return certificate_to_json(cert, report)
