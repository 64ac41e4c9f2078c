"""Text and JSON formats.

Element grammar (whitespace between tokens is ignored)::

    element  := term (('+'|'-') term)*
    term     := [scalar '*'] gen | scalar
    gen      := ('L'|'H'|'I'|'J') ['b'] '[' integer ']'
    scalar   := rational | '(' rational [('+'|'-') rational] 'i' ')' | 'i'
    rational := ['-'] digits ['/' digits]

A bare scalar term denotes a multiple of nothing and is only accepted when it
is zero, so the zero element round-trips as ``"0"``.  The first term may also
carry a leading ``-`` (``"-J[3]"``), which the printer uses for negative real
leading coefficients.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .algebra import BOLD, FAMILIES, PLAIN, Element, Generator
from .errors import BasisMixError, InvalidInstance, ParseError, PgcaError, SchemaError
from .scalars import IMAG_UNIT, GaussianRational

__all__ = [
    "INSTANCE_SCHEMA",
    "REPORT_SCHEMA",
    "dump_json",
    "format_scalar",
    "load_instance",
    "load_instance_file",
    "parse_element",
    "parse_scalar",
    "print_element",
    "save_instance",
    "save_report",
]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.data = text.encode("utf-8")
        self.pos = 0
        # char index -> byte offset
        self._offsets = []
        off = 0
        for ch in text:
            self._offsets.append(off)
            off += len(ch.encode("utf-8"))
        self._offsets.append(off)

    def offset(self, pos=None):
        return self._offsets[self.pos if pos is None else pos]

    def error(self, message, expected=(), pos=None):
        return ParseError(message, self.offset(pos), expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise self.error(f"unexpected {self._describe()}", [repr(ch)])
        self.pos += 1

    def _describe(self):
        c = self.peek()
        return "end of input" if not c else repr(c)

    def digits(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            raise self.error(f"unexpected {self._describe()}", ["digit"])
        return int(self.text[start:self.pos])

    def rational(self):
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        num = self.digits()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den_pos = self.pos
            den = self.digits()
            if den == 0:
                raise self.error("zero denominator", pos=den_pos)
        q = Fraction(num, den)
        return -q if neg else q

    def scalar(self):
        c = self.peek()
        if c == "i":
            self.pos += 1
            return IMAG_UNIT
        if c == "(":
            self.pos += 1
            first = self.rational()
            c = self.peek()
            if c == "i":
                self.pos += 1
                self.expect(")")
                return GaussianRational(0, first)
            if c and c in "+-":
                self.pos += 1
                second = self.rational()
                if c == "-":
                    second = -second
                self.expect("i")
                self.expect(")")
                return GaussianRational(first, second)
            raise self.error(f"unexpected {self._describe()}", ["'+'", "'-'", "'i'"])
        if c == "-" or c.isdigit():
            return GaussianRational(self.rational())
        raise self.error(f"unexpected {self._describe()}", ["scalar", "generator"])

    def gen(self):
        fam = self.peek()
        if fam not in FAMILIES:
            raise self.error(f"unexpected {self._describe()}", [repr(f) for f in FAMILIES])
        start = self.pos
        self.pos += 1
        basis = PLAIN
        if self.pos < len(self.text) and self.text[self.pos] == "b":
            basis = BOLD
            self.pos += 1
        self.expect("[")
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        m = self.digits()
        self.expect("]")
        return Generator(fam, -m if neg else m, basis), start

    def term(self):
        c = self.peek()
        if c in FAMILIES:
            g, start = self.gen()
            return GaussianRational(1), g, start
        scalar_pos = self.pos
        k = self.scalar()
        if self.peek() == "*":
            self.pos += 1
            g, start = self.gen()
            return k, g, start
        if k:
            raise self.error("a bare scalar term must be zero", ["'*'"], pos=scalar_pos)
        return k, None, scalar_pos

    def _unary_minus(self):
        # '-' before a non-numeric first term, as in "-J[3]"
        if self.peek() != "-":
            return False
        k = self.pos + 1
        while k < len(self.text) and self.text[k].isspace():
            k += 1
        return k < len(self.text) and (self.text[k] in FAMILIES or self.text[k] in "(i")

    def element(self):
        terms = []
        sign = 1
        if self._unary_minus():
            self.pos += 1
            sign = -1
        while True:
            k, g, start = self.term()
            if g is not None:
                terms.append((g, k * sign, start))
            c = self.peek()
            if c == "+":
                sign = 1
            elif c == "-":
                sign = -1
            elif not c:
                break
            else:
                raise self.error(f"unexpected {self._describe()}", ["'+'", "'-'", "end of input"])
            self.pos += 1
        basis = None
        for g, _, start in terms:
            if basis is None:
                basis = g.basis
            elif g.basis != basis:
                raise BasisMixError("an element cannot mix plain and bold generators", self.offset(start))
        return Element([(g, k) for g, k, _ in terms])


def parse_element(text: str) -> Element:
    """Parse element text into a canonical :class:`Element`."""
    return _Parser(text).element()


def parse_scalar(text: str) -> GaussianRational:
    p = _Parser(text)
    k = p.scalar()
    if p.peek():
        raise p.error(f"unexpected {p._describe()}", ["end of input"])
    return k


def format_scalar(k: GaussianRational) -> str:
    """Canonical scalar text: ``3/4`` for rationals, ``(a+bi)`` otherwise."""
    return str(k)


def _format_generator(g: Generator) -> str:
    return f"{g.family}{'b' if g.basis == BOLD else ''}[{g.degree}]"


def print_element(x: Element) -> str:
    """Canonical text for ``x``; ``parse_element`` inverts it."""
    if not x:
        return "0"
    parts = []
    for n, (g, k) in enumerate(x.items()):
        gen = _format_generator(g)
        if k.is_real:
            neg = k.re < 0
            mag = -k.re if neg else k.re
            body = gen if mag == 1 else f"{mag}*{gen}"
            if n == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"{'-' if neg else '+'} {body}")
        else:
            body = f"{format_scalar(k)}*{gen}"
            parts.append(body if n == 0 else f"+ {body}")
    return " ".join(parts)


# --- JSON documents ------------------------------------------------------------

INSTANCE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "TwoLocalInstance",
    "type": "object",
    "required": ["window", "table"],
    "additionalProperties": False,
    "properties": {
        "window": {
            "type": "object",
            "required": ["radius"],
            "additionalProperties": False,
            "properties": {
                "radius": {"type": "integer", "minimum": 2},
                "interior": {"type": "integer", "minimum": 1},
            },
        },
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "value"],
                "additionalProperties": False,
                "properties": {
                    "point": {"type": "string"},
                    "value": {"type": "string"},
                },
            },
        },
    },
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Report",
    "type": "object",
    "required": ["command", "status", "exit_code"],
    "properties": {
        "command": {"type": "string"},
        "status": {"enum": ["pass", "fail", "error"]},
        "exit_code": {"enum": [0, 1, 2]},
        "error": {
            "type": "object",
            "required": ["code", "message"],
            "properties": {
                "code": {"type": "string"},
                "message": {"type": "string"},
            },
        },
    },
}


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts) if parts else "/"


def _validate(doc, schema):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(e.absolute_path), e.message))
    if not errors:
        return
    err = errors[0]
    path = list(err.absolute_path)
    if err.validator == "required" and isinstance(err.instance, dict):
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            path.append(missing[0])
            raise SchemaError(f"missing required property {missing[0]!r}", _pointer(path))
    raise SchemaError(err.message, _pointer(path))


def load_instance(doc: dict):
    """Validate an InstanceDoc (already decoded from JSON) into a TwoLocalInstance."""
    from .derivations import Window
    from .errors import InvalidWindow
    from .twolocal import TwoLocalInstance

    _validate(doc, INSTANCE_SCHEMA)
    w = doc["window"]
    try:
        window = Window(w["radius"], w.get("interior"))
    except InvalidWindow as exc:
        raise SchemaError(str(exc), "/window") from None
    table = []
    seen = {}
    for k, entry in enumerate(doc["table"]):
        pair = []
        for key in ("point", "value"):
            try:
                x = parse_element(entry[key])
            except ParseError as exc:
                raise SchemaError(f"{exc.code}: {exc}", f"/table/{k}/{key}") from None
            if x.basis == BOLD:
                raise SchemaError("instance elements must use the plain basis", f"/table/{k}/{key}")
            pair.append(x)
        if pair[0] in seen:
            raise SchemaError(f"duplicate point (first seen at /table/{seen[pair[0]]})", f"/table/{k}/point")
        seen[pair[0]] = k
        table.append(tuple(pair))
    try:
        return TwoLocalInstance(tuple(table), window)
    except InvalidInstance as exc:
        raise SchemaError(str(exc), f"/table/{exc.index}/point" if exc.index is not None else "/table") from None


def load_instance_file(path) -> "Any":
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", "/") from None
    return load_instance(doc)


def save_instance(inst) -> dict:
    return {
        "window": {"radius": inst.window.radius, "interior": inst.window.interior},
        "table": [{"point": print_element(p), "value": print_element(v)} for p, v in inst.table],
    }


def _jsonable(obj):
    from .derivations import Derivation

    if isinstance(obj, Element):
        return print_element(obj)
    if isinstance(obj, GaussianRational):
        return format_scalar(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Derivation):
        return {"inner": print_element(obj.inner), "outer": format_scalar(obj.outer)}
    if isinstance(obj, PgcaError):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("reports never carry floats")
    if hasattr(obj, "to_report"):
        return _jsonable(obj.to_report())
    return obj


def save_report(report) -> dict:
    """Turn a report (dict or object with ``to_report``) into a JSON-ready document.

    Elements become element text, scalars become exact strings and errors
    become ``{"code", "message", ...}`` objects.
    """
    doc = _jsonable(report)
    _validate(doc, REPORT_SCHEMA)
    return doc


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


