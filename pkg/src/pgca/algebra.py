"""Generators, sparse elements and the two bracket tables.

The planar Galilean conformal algebra has basis families L, H, I, J indexed
by the integers.  Two bases are supported: the *plain* basis used for all
derivation work and the *bold* basis related to it by

    L_m = Lb_m,  H_m = i*Hb_m,  I_m = Ib_m + i*Jb_m,  J_m = Ib_m - i*Jb_m.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import BasisMismatch
from .scalars import IMAG_UNIT, ZERO, GaussianRational, as_scalar

__all__ = [
    "BOLD",
    "FAMILIES",
    "PLAIN",
    "Element",
    "Generator",
    "H",
    "I",
    "J",
    "L",
    "Hb",
    "Ib",
    "Jb",
    "Lb",
    "bracket",
    "generator_bracket",
    "to_bold",
    "to_plain",
    "window_generators",
]

FAMILIES = ("L", "H", "I", "J")
PLAIN = "plain"
BOLD = "bold"
_FAMILY_RANK = {f: k for k, f in enumerate(FAMILIES)}
_BASIS_RANK = {PLAIN: 0, BOLD: 1}


@total_ordering
class Generator:
    """One basis symbol, e.g. ``L_3`` or bold ``Ib_-2``.

    Generators are totally ordered by basis, then family (L < H < I < J),
    then degree.
    """

    __slots__ = ("family", "degree", "basis", "_key")

    def __init__(self, family: str, degree: int, basis: str = PLAIN):
        if family not in _FAMILY_RANK:
            raise ValueError(f"unknown family {family!r}")
        if basis not in _BASIS_RANK:
            raise ValueError(f"unknown basis {basis!r}")
        if isinstance(degree, bool) or not isinstance(degree, int):
            raise TypeError("degree must be an int")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_key", (_BASIS_RANK[basis], _FAMILY_RANK[family], degree))

    def __setattr__(self, name, value):
        raise AttributeError("Generator is immutable")

    def __reduce__(self):
        return (Generator, (self.family, self.degree, self.basis))

    @property
    def sort_key(self):
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other):
        if not isinstance(other, Generator):
            return NotImplemented
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        suffix = "b" if self.basis == BOLD else ""
        return f"{self.family}{suffix}[{self.degree}]"

    def shifted(self, family: str | None = None, degree: int | None = None) -> "Generator":
        return Generator(
            self.family if family is None else family,
            self.degree if degree is None else degree,
            self.basis,
        )


class Element:
    """A finitely supported Q(i)-combination of generators of one basis.

    Zero coefficients are never stored, so the zero element is the empty map
    and has no basis tag.
    """

    __slots__ = ("_terms", "_basis", "_hash")

    def __init__(self, terms: Mapping[Generator, object] | Iterable[tuple[Generator, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Generator, GaussianRational] = {}
        for g, c in items:
            c = as_scalar(c)
            if not c:
                continue
            prev = acc.get(g)
            if prev is None:
                acc[g] = c
            else:
                s = prev + c
                if s:
                    acc[g] = s
                else:
                    del acc[g]
        self._init(acc)

    def _init(self, acc):
        basis = None
        for g in acc:
            if basis is None:
                basis = g.basis
            elif g.basis != basis:
                raise BasisMismatch("an element cannot mix plain and bold generators")
        object.__setattr__(self, "_terms", acc)
        object.__setattr__(self, "_basis", basis)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_clean(cls, acc: dict) -> "Element":
        # acc must be zero-free; ownership passes to the element
        obj = object.__new__(cls)
        obj._init(acc)
        return obj

    @classmethod
    def generator(cls, g: Generator, coefficient=1) -> "Element":
        return cls({g: coefficient})

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def __reduce__(self):
        return (Element, (list(self._terms.items()),))

    # mapping-like access

    @property
    def terms(self) -> Mapping[Generator, GaussianRational]:
        return MappingProxyType(self._terms)

    @property
    def basis(self) -> str | None:
        return self._basis

    def items(self) -> list[tuple[Generator, GaussianRational]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0]._key)

    def support(self) -> list[Generator]:
        return sorted(self._terms)

    def coefficient(self, g: Generator) -> GaussianRational:
        return self._terms.get(g, ZERO)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.support())

    def __len__(self):
        return len(self._terms)

    def __contains__(self, g):
        return g in self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {g.degree for g in self._terms}

    def max_abs_degree(self) -> int:
        return max((abs(g.degree) for g in self._terms), default=0)

    def family_part(self, *families: str) -> "Element":
        return Element._from_clean({g: c for g, c in self._terms.items() if g.family in families})

    def in_window(self, radius: int) -> bool:
        return all(abs(g.degree) <= radius for g in self._terms)

    # vector space structure

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: "Element"):
        if self._basis and other._basis and self._basis != other._basis:
            raise BasisMismatch(f"cannot combine {self._basis} and {other._basis} elements")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        _accumulate(acc, other._terms.items(), 1)
        return Element._from_clean(acc)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        _accumulate(acc, other._terms.items(), -1)
        return Element._from_clean(acc)

    def __neg__(self):
        return Element._from_clean({g: -c for g, c in self._terms.items()})

    def __mul__(self, k):
        try:
            k = as_scalar(k)
        except TypeError:
            return NotImplemented
        if not k:
            return Element._from_clean({})
        return Element._from_clean({g: c * k for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * as_scalar(k).inverse()

    def __repr__(self):
        from .exprio import print_element

        return f"Element({print_element(self)!r})"

    def __str__(self):
        from .exprio import print_element

        return print_element(self)


def _accumulate(acc: dict, items, scale):
    for g, c in items:
        if scale != 1:
            c = c * scale
        prev = acc.get(g)
        if prev is None:
            acc[g] = c
        else:
            s = prev + c
            if s:
                acc[g] = s
            else:
                del acc[g]


def _gen(family: str, basis: str):
    def make(m: int, coefficient=1) -> Element:
        return Element({Generator(family, m, basis): coefficient})

    make.__name__ = family
    make.__doc__ = f"The element {family}_m of the {basis} basis (times ``coefficient``)."
    return make


L, H, I, J = (_gen(f, PLAIN) for f in FAMILIES)
Lb, Hb, Ib, Jb = (_gen(f, BOLD) for f in FAMILIES)


def window_generators(radius: int, basis: str = PLAIN) -> list[Generator]:
    """All generators with degree in [-radius, radius], canonically ordered."""
    return [Generator(f, m, basis) for f in FAMILIES for m in range(-radius, radius + 1)]


# Bracket tables.  Each entry maps (family_a, family_b) to (coefficient(n, m), family)
# for [A_n, B_m] = coefficient * Family_{n+m}; pairs not listed bracket to zero.
_PLAIN_TABLE = {
    ("L", "L"): (lambda n, m: m - n, "L"),
    ("L", "H"): (lambda n, m: m, "H"),
    ("L", "I"): (lambda n, m: m - n, "I"),
    ("L", "J"): (lambda n, m: m - n, "J"),
    ("H", "I"): (lambda n, m: 1, "I"),
    ("H", "J"): (lambda n, m: -1, "J"),
}
_BOLD_TABLE = {
    ("L", "L"): (lambda n, m: m - n, "L"),
    ("L", "H"): (lambda n, m: m, "H"),
    ("L", "I"): (lambda n, m: m - n, "I"),
    ("L", "J"): (lambda n, m: m - n, "J"),
    ("H", "I"): (lambda n, m: 1, "J"),
    ("H", "J"): (lambda n, m: -1, "I"),
}
_TABLES = {PLAIN: _PLAIN_TABLE, BOLD: _BOLD_TABLE}


@lru_cache(maxsize=1 << 16)
def generator_bracket(a: Generator, b: Generator) -> tuple[tuple[int, Generator], ...]:
    """[a, b] as a tuple of (integer coefficient, generator) pairs (length 0 or 1)."""
    if a.basis != b.basis:
        raise BasisMismatch("cannot bracket generators from different bases")
    table = _TABLES[a.basis]
    entry = table.get((a.family, b.family))
    sign = 1
    if entry is None:
        entry = table.get((b.family, a.family))
        if entry is None:
            return ()
        a, b = b, a
        sign = -1
    coef, fam = entry
    c = sign * coef(a.degree, b.degree)
    if c == 0:
        return ()
    return ((c, Generator(fam, a.degree + b.degree, a.basis)),)


def bracket(x: Element, y: Element) -> Element:
    """The Lie bracket [x, y], bilinear extension of the generator table."""
    if not x or not y:
        return Element._from_clean({})
    if x.basis != y.basis:
        raise BasisMismatch(f"cannot bracket a {x.basis} element with a {y.basis} element")
    acc: dict[Generator, GaussianRational] = {}
    for gx, cx in x._terms.items():
        for gy, cy in y._terms.items():
            for c, g in generator_bracket(gx, gy):
                _accumulate(acc, ((g, cx * cy * c),), 1)
    return Element._from_clean(acc)


_HALF = GaussianRational(Fraction(1, 2))
_TO_BOLD = {
    "L": (("L", 1),),
    "H": (("H", IMAG_UNIT),),
    "I": (("I", 1), ("J", IMAG_UNIT)),
    "J": (("I", 1), ("J", -IMAG_UNIT)),
}
# inverse of the substitution above: Ib = (I + J)/2, Jb = (I - J)/(2i), Hb = -i*H
_TO_PLAIN = {
    "L": (("L", 1),),
    "H": (("H", -IMAG_UNIT),),
    "I": (("I", _HALF), ("J", _HALF)),
    "J": (("I", -IMAG_UNIT * _HALF), ("J", IMAG_UNIT * _HALF)),
}


def _change_basis(x: Element, source: str, target: str, rules) -> Element:
    if x.basis not in (None, source):
        raise BasisMismatch(f"expected a {source} element, got a {x.basis} one")
    pairs = []
    for g, c in x._terms.items():
        for fam, k in rules[g.family]:
            pairs.append((Generator(fam, g.degree, target), c * k))
    return Element(pairs)


def to_bold(x: Element) -> Element:
    """Rewrite a plain-basis element in the bold basis."""
    return _change_basis(x, PLAIN, BOLD, _TO_BOLD)


def to_plain(x: Element) -> Element:
    """Rewrite a bold-basis element in the plain basis."""
    return _change_basis(x, BOLD, PLAIN, _TO_PLAIN)
