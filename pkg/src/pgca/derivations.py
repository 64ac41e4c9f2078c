"""Derivations ad(w) + lambda*D and exact solving on degree windows.

Every derivation of the algebra is ``ad(w) + lambda*D`` where ``D`` fixes the
I and J families pointwise and kills L and H.  The infinite algebra is
handled through a :class:`Window` of degrees [-radius, radius]; comparisons
that could be polluted by truncation are made on the interior
[-interior, interior] only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg
from .algebra import (
    FAMILIES,
    PLAIN,
    Element,
    Generator,
    bracket,
    generator_bracket,
    window_generators,
)
from .errors import (
    BasisMismatch,
    InfeasibleWitness,
    InvalidWindow,
    OutOfWindow,
    WindowTooSmall,
)
from .scalars import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "Derivation",
    "DerivationSpace",
    "LinearMapOnWindow",
    "Window",
    "WitnessSpace",
    "annihilator",
    "apply",
    "center_check",
    "derivation_space",
    "joint_annihilator",
    "leibniz_check",
    "outer_D",
    "solve_derivations",
    "witness_solve",
]


@dataclass(frozen=True)
class Window:
    """Degrees [-radius, radius]; ``interior`` (default radius // 2) is certified."""

    radius: int
    interior: int | None = None

    def __post_init__(self):
        if self.interior is None:
            object.__setattr__(self, "interior", self.radius // 2)
        if self.radius < 1:
            raise InvalidWindow(f"window radius must be positive, got {self.radius}")
        if self.interior < 1 or 2 * self.interior > self.radius:
            raise InvalidWindow(
                f"interior radius must satisfy 1 <= interior <= radius/2, got {self.interior} "
                f"for radius {self.radius}"
            )

    def contains(self, x: Element) -> bool:
        return x.in_window(self.radius)

    def in_interior(self, x: Element) -> bool:
        return x.in_window(self.interior)

    def generators(self) -> list[Generator]:
        return window_generators(self.radius)

    def interior_generators(self) -> list[Generator]:
        return window_generators(self.interior)


def _require_plain(x: Element):
    if x.basis not in (None, PLAIN):
        raise BasisMismatch("derivations act on plain-basis elements only")


def outer_D(y: Element) -> Element:
    """The outer derivation: zero on L and H, identity on I and J."""
    _require_plain(y)
    return y.family_part("I", "J")


@dataclass(frozen=True)
class Derivation:
    """``ad(inner) + outer * D``."""

    inner: Element = field(default_factory=Element)
    outer: GaussianRational = ZERO

    def __post_init__(self):
        _require_plain(self.inner)
        object.__setattr__(self, "outer", as_scalar(self.outer))

    @classmethod
    def ad(cls, w: Element) -> "Derivation":
        return cls(w, ZERO)

    @classmethod
    def D(cls) -> "Derivation":
        return cls(Element(), ONE)

    def __call__(self, y: Element) -> Element:
        return apply(self, y)

    def __add__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(self.inner + other.inner, self.outer + other.outer)

    def __sub__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(self.inner - other.inner, self.outer - other.outer)

    def __neg__(self):
        return Derivation(-self.inner, -self.outer)

    def __mul__(self, k):
        k = as_scalar(k)
        return Derivation(self.inner * k, self.outer * k)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.inner) or bool(self.outer)

    def __str__(self):
        if not self.outer:
            return f"ad({self.inner})" if self.inner else "0"
        outer = "D" if self.outer == 1 else f"{self.outer}*D"
        return f"ad({self.inner}) + {outer}" if self.inner else outer


def apply(d: Derivation, y: Element) -> Element:
    """d(y) = [d.inner, y] + d.outer * D(y)."""
    _require_plain(y)
    out = bracket(d.inner, y)
    if d.outer:
        out = out + outer_D(y) * d.outer
    return out


@dataclass(frozen=True)
class LinearMapOnWindow:
    """A linear map given by its images on the generators of a window.

    Generators missing from ``images`` map to zero.
    """

    window: Window
    images: Mapping[Generator, Element]

    def __post_init__(self):
        for g, img in self.images.items():
            if abs(g.degree) > self.window.radius or not self.window.contains(img):
                raise OutOfWindow(f"image of {g!r} leaves the window of radius {self.window.radius}")

    @classmethod
    def from_derivation(cls, d: Derivation, window: Window, sources: Iterable[Generator] | None = None):
        sources = window.generators() if sources is None else sources
        images = {}
        for g in sources:
            img = apply(d, Element({g: 1}))
            if img:
                images[g] = img
        return cls(window, images)

    def __call__(self, x: Element) -> Element:
        _require_plain(x)
        if not self.window.contains(x):
            raise OutOfWindow(f"{x} is not supported in the window of radius {self.window.radius}")
        out = Element()
        for g, c in x.terms.items():
            img = self.images.get(g)
            if img:
                out = out + img * c
        return out

    def restricted(self, radius: int) -> "LinearMapOnWindow":
        return LinearMapOnWindow(
            self.window, {g: v for g, v in self.images.items() if abs(g.degree) <= radius}
        )


def leibniz_check(d: Derivation | LinearMapOnWindow, x: Element, y: Element) -> bool:
    """Whether d([x, y]) == [d(x), y] + [x, d(y)] holds exactly."""
    xy = bracket(x, y)
    if isinstance(d, LinearMapOnWindow):
        for z in (x, y, xy):
            if not d.window.contains(z):
                raise OutOfWindow(
                    f"{z} leaves the window of radius {d.window.radius}; Leibniz is undecidable here"
                )
    return d(xy) == bracket(d(x), y) + bracket(x, d(y))


# --- Lemma 2.1 normal form on a window -------------------------------------


def _normal_form_columns(window: Window) -> linalg.Indexer:
    # inner coefficients in generator order, then the D coefficient last
    return linalg.Indexer([*window.generators(), "D"])


def _vector_to_derivation(vec: Mapping[int, GaussianRational], cols: linalg.Indexer) -> Derivation:
    inner = {}
    outer = ZERO
    for c, v in vec.items():
        key = cols.keys[c]
        if key == "D":
            outer = v
        else:
            inner[key] = v
    return Derivation(Element(inner), outer)


def _derivation_to_vector(d: Derivation, cols: linalg.Indexer) -> dict:
    vec = {}
    for g, c in d.inner.terms.items():
        if g not in cols:
            raise OutOfWindow(f"inner part of {d} leaves the window")
        vec[cols.index[g]] = c
    if d.outer:
        vec[cols.index["D"]] = d.outer
    return vec


def _constraint_rows(point: Element, value: Element, cols: linalg.Indexer):
    """Rows of apply(d, point) == value in the normal-form unknowns."""
    _require_plain(point)
    _require_plain(value)
    rows: dict[Generator, dict] = {}
    for c, key in enumerate(cols.keys):
        img = outer_D(point) if key == "D" else bracket(Element({key: 1}), point)
        for g, v in img.terms.items():
            rows.setdefault(g, {})[c] = v
    for g in value.terms:
        rows.setdefault(g, {})
    return [(row, value.coefficient(g)) for g, row in sorted(rows.items(), key=lambda kv: kv[0].sort_key)]


@dataclass(frozen=True)
class WitnessSpace:
    """Affine space ``particular + span(homogeneous_basis)`` of derivations."""

    particular: Derivation
    homogeneous_basis: tuple[Derivation, ...]

    @property
    def dimension(self) -> int:
        return len(self.homogeneous_basis)

    def member(self, coefficients: Sequence) -> Derivation:
        d = self.particular
        for k, b in zip(coefficients, self.homogeneous_basis, strict=True):
            d = d + b * k
        return d


def solve_derivations(constraints: Iterable[tuple[Element, Element]], window: Window) -> WitnessSpace:
    """All window-supported ``ad(w) + lambda*D`` with d(point) == value for each pair."""
    cols = _normal_form_columns(window)
    equations = []
    for point, value in constraints:
        equations.extend(_constraint_rows(point, value, cols))
    try:
        particular, kernel = linalg.solve(equations, len(cols))
    except linalg.Inconsistent:
        raise InfeasibleWitness("no derivation on this window takes the prescribed values") from None
    return WitnessSpace(
        _vector_to_derivation(particular, cols),
        tuple(_vector_to_derivation(v, cols) for v in kernel),
    )


def _require_interior(window: Window, *xs: Element):
    for x in xs:
        if not window.in_interior(x):
            raise WindowTooSmall(f"{x} is not supported in the interior [-{window.interior}, {window.interior}]")


def witness_solve(x: Element, vx: Element, y: Element, vy: Element, window: Window) -> WitnessSpace:
    """Derivations agreeing with the prescribed values at x and y."""
    _require_interior(window, x, y)
    return solve_derivations([(x, vx), (y, vy)], window)


def joint_annihilator(points: Iterable[Element], window: Window) -> list[Derivation]:
    """Reduced echelon basis of the derivations killing every point."""
    return list(solve_derivations([(p, Element()) for p in points], window).homogeneous_basis)


def annihilator(x: Element, window: Window) -> list[Derivation]:
    """Basis of {ad(w) + lambda*D : w window-supported, d(x) = 0}."""
    _require_interior(window, x)
    return joint_annihilator([x], window)


def derivations_rref(ds: Iterable[Derivation], window: Window) -> list[Derivation]:
    """Canonical reduced echelon basis for the span of some derivations."""
    cols = _normal_form_columns(window)
    return [_vector_to_derivation(v, cols) for v in linalg.rref(_derivation_to_vector(d, cols) for d in ds)]


def center_check(window: Window) -> list[Element]:
    """Interior-supported elements commuting with every generator of the window."""
    unknowns = linalg.Indexer(window.interior_generators())
    rows: dict[tuple, dict] = {}
    for g in window.generators():
        for c, h in enumerate(unknowns.keys):
            for k, out in generator_bracket(h, g):
                row = rows.setdefault((g.sort_key, out.sort_key), {})
                row[c] = row.get(c, ZERO) + k
    basis = linalg.nullspace((r for _, r in sorted(rows.items())), len(unknowns))
    return [Element(unknowns.decode(v)) for v in basis]


# --- homogeneous derivation spaces -------------------------------------------


@dataclass(frozen=True)
class DerivationSpace:
    """Solution of the degree-``degree`` Leibniz system on a window."""

    window: Window
    degree: int
    basis: tuple[LinearMapOnWindow, ...]
    interior_basis: tuple[LinearMapOnWindow, ...]
    expected: tuple[Derivation, ...]
    matches: bool
    contains_outer: bool | None

    @property
    def dimension(self) -> int:
        """Dimension after restriction to the interior."""
        return len(self.interior_basis)

    @property
    def full_dimension(self) -> int:
        return len(self.basis)


def _map_columns(window: Window, degree: int) -> linalg.Indexer:
    keys = []
    for g in window.generators():
        if abs(g.degree + degree) <= window.radius:
            keys.extend((g, f) for f in FAMILIES)
    return linalg.Indexer(keys)


def _map_vector(m: LinearMapOnWindow, cols: linalg.Indexer) -> dict:
    vec = {}
    for g, img in m.images.items():
        for t, c in img.terms.items():
            vec[cols.index[(g, t.family)]] = c
    return vec


def _vector_to_map(vec: Mapping[int, GaussianRational], cols: linalg.Indexer, window: Window, degree: int):
    images: dict[Generator, dict] = {}
    for c, v in vec.items():
        g, f = cols.keys[c]
        images.setdefault(g, {})[Generator(f, g.degree + degree)] = v
    return LinearMapOnWindow(window, {g: Element(t) for g, t in images.items()})


def _leibniz_rows(window: Window, degree: int, cols: linalg.Indexer):
    n = window.radius
    gens = window.generators()

    def image(g):
        # symbolic D(g) as [(column, target generator)]
        if abs(g.degree + degree) > n:
            return ()
        return tuple(
            (cols.index[(g, f)], Generator(f, g.degree + degree)) for f in FAMILIES
        )

    images = {g: image(g) for g in gens}
    for i, a in enumerate(gens):
        if abs(a.degree + degree) > n:
            continue
        for b in gens[i + 1:]:
            s = a.degree + b.degree
            if abs(b.degree + degree) > n or abs(s) > n or abs(s + degree) > n:
                continue
            rows: dict[Generator, dict] = {}

            def put(out, col, k):
                row = rows.setdefault(out, {})
                v = row.get(col, ZERO) + k
                if v:
                    row[col] = v
                else:
                    row.pop(col, None)

            for k, ab in generator_bracket(a, b):
                for col, t in images[ab]:
                    put(t, col, k)
            for col, t in images[a]:
                for k, out in generator_bracket(t, b):
                    put(out, col, -k)
            for col, t in images[b]:
                for k, out in generator_bracket(a, t):
                    put(out, col, -k)
            for row in rows.values():
                if row:
                    yield row


def _known_derivations(degree: int) -> list[Derivation]:
    ds = [Derivation.ad(Element({Generator(f, degree): 1})) for f in FAMILIES]
    if degree == 0:
        ds.append(Derivation.D())
    return ds


def derivation_space(window: Window, degree: int) -> DerivationSpace:
    """Solve for homogeneous degree-``degree`` derivations on the window.

    Leibniz is imposed on every generator pair whose degrees, bracket degree
    and image degrees all stay inside the window.  The solution is then
    restricted to interior sources and compared with the span of
    ad(L_d), ad(H_d), ad(I_d), ad(J_d) (and D when d = 0).
    """
    if abs(degree) > window.radius - window.interior:
        raise WindowTooSmall(
            f"degree {degree} needs radius - interior >= {abs(degree)}; "
            f"window has {window.radius} - {window.interior}"
        )
    cols = _map_columns(window, degree)
    kernel = linalg.nullspace(_leibniz_rows(window, degree, cols), len(cols))
    basis = tuple(_vector_to_map(v, cols, window, degree) for v in kernel)

    inner_cols = [c for c, (g, _) in enumerate(cols.keys) if abs(g.degree) <= window.interior]
    keep = set(inner_cols)
    restricted = linalg.rref({c: x for c, x in v.items() if c in keep} for v in kernel)
    interior_sources = window.interior_generators()
    known = _known_derivations(degree)
    expected_vecs = linalg.rref(
        _map_vector(LinearMapOnWindow.from_derivation(d, window, interior_sources), cols) for d in known
    )
    contains_outer = None
    if degree == 0:
        e = linalg.Echelon()
        for v in kernel:
            e.add(v)
        contains_outer = e.contains(_map_vector(LinearMapOnWindow.from_derivation(Derivation.D(), window), cols))
    return DerivationSpace(
        window=window,
        degree=degree,
        basis=basis,
        interior_basis=tuple(_vector_to_map(v, cols, window, degree) for v in restricted),
        expected=tuple(known),
        matches=restricted == expected_vecs,
        contains_outer=contains_outer,
    )
