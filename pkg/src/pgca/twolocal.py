"""Finite 2-local derivation instances, lemma replays and extraction.

A 2-local derivation is only ever seen here through a finite table of
(point, value) pairs.  Each replay turns one step of the argument that such a
map is a derivation into a finite linear computation over Q(i) and checks its
conclusion exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import linalg
from .algebra import PLAIN, Element, Generator, H, I, J, L
from .derivations import (
    Derivation,
    Window,

    annihilator,
    apply,
    derivations_rref,
    joint_annihilator,
    witness_solve,
)
from .errors import (
    BasisMismatch,
    InvalidInstance,
    InvalidParameter,
    MissingAnchor,
    NotInSpan,
    ProbeSetTooSmall,
    ReplayFailed,
    TableMismatch,
    WindowTooSmall,
)
from .scalars import GaussianRational

__all__ = [
    "ANCHORS",
    "ReplayReport",
    "TwoLocalInstance",
    "complete_extraction",
    "default_probes",
    "extract_derivation",
    "family_space",
    "replay_lemma31",
    "replay_lemma32",
    "replay_lemma33",
    "replay_lemma34",
    "replay_lemma35",
    "validate_homogeneity",
]

ANCHORS = (L(0), L(1), I(0) + J(0))


@dataclass(frozen=True)
class TwoLocalInstance:
    """A 2-local derivation restricted to finitely many points."""

    table: tuple[tuple[Element, Element], ...]
    window: Window

    def __post_init__(self):
        table = tuple((p, v) for p, v in self.table)
        object.__setattr__(self, "table", table)
        seen = set()
        for k, (p, v) in enumerate(table):
            if p.basis == "bold" or v.basis == "bold":
                raise InvalidInstance("instance elements must use the plain basis", k)
            if not p:
                raise InvalidInstance("table points must be nonzero", k)
            if not self.window.in_interior(p):
                raise InvalidInstance(
                    f"point {p} is not supported in the interior [-{self.window.interior}, {self.window.interior}]", k
                )
            if p in seen:
                raise InvalidInstance(f"duplicate point {p}", k)
            seen.add(p)

    @classmethod
    def induced(cls, d: Derivation, points: Iterable[Element], window: Window) -> "TwoLocalInstance":
        """The table of a genuine derivation on the given points."""
        return cls(tuple((p, apply(d, p)) for p in points), window)

    @property
    def points(self) -> list[Element]:
        return [p for p, _ in self.table]

    def value(self, point: Element) -> Element:
        for p, v in self.table:
            if p == point:
                return v
        raise KeyError(point)

    def __contains__(self, point):
        return any(p == point for p, _ in self.table)

    def scaled(self, k) -> "TwoLocalInstance":
        """The instance of k*Delta (same points, values times k)."""
        return TwoLocalInstance(tuple((p, v * k) for p, v in self.table), self.window)

    def replaced(self, index: int, value: Element) -> "TwoLocalInstance":
        table = list(self.table)
        table[index] = (table[index][0], value)
        return TwoLocalInstance(tuple(table), self.window)


def _ratio(x: Element, y: Element) -> GaussianRational | None:
    """k with y == k*x, or None."""
    if not x or x.terms.keys() != y.terms.keys():
        return None
    g = next(iter(x.terms))
    k = y.coefficient(g) / x.coefficient(g)
    return k if x * k == y else None


def validate_homogeneity(inst: TwoLocalInstance) -> bool:
    """Delta(k*x) == k*Delta(x) for every proportional pair of table points."""
    return _homogeneity_violation(inst) is None


def _homogeneity_violation(inst):
    table = inst.table
    for a in range(len(table)):
        for b in range(a + 1, len(table)):
            k = _ratio(table[a][0], table[b][0])
            if k is not None and table[a][1] * k != table[b][1]:
                return table[a][0], table[b][0]
    return None


def extract_derivation(inst: TwoLocalInstance) -> Derivation:
    """Rebuild the derivation behind a 2-local instance.

    Take the canonical witness agreeing with the table at L_0 and L_1, read
    off the leftover at I_0 + J_0, correct by mu*ad(H_0) + nu*D, and check the
    result against every point of the table.
    """
    for a in ANCHORS:
        if a not in inst:
            raise MissingAnchor(f"the table has no entry for the anchor point {a}")
    bad = _homogeneity_violation(inst)
    if bad is not None:
        raise TableMismatch(f"values at {bad[0]} and {bad[1]} do not scale together", point=bad[1])
    w = witness_solve(ANCHORS[0], inst.value(ANCHORS[0]), ANCHORS[1], inst.value(ANCHORS[1]), inst.window)
    return complete_extraction(inst, w.particular)


def complete_extraction(inst: TwoLocalInstance, witness: Derivation) -> Derivation:
    """Correct a witness matching the table at L_0, L_1 and verify the table."""
    anchor = ANCHORS[2]
    r = inst.value(anchor) - apply(witness, anchor)
    v_i = r.coefficient(Generator("I", 0))
    v_j = r.coefficient(Generator("J", 0))
    if r != I(0, v_i) + J(0, v_j):
        raise NotInSpan(
            f"Delta(I[0] + J[0]) minus the witness value is {r}, which is not in span(I[0], J[0])",
            residual=r,
        )
    mu = (v_i - v_j) / 2
    nu = (v_i + v_j) / 2
    delta = witness + Derivation.ad(H(0)) * mu + Derivation.D() * nu
    for p, v in inst.table:
        got = apply(delta, p)
        if got != v:
            raise TableMismatch(
                f"extracted derivation sends {p} to {got}, but the table says {v}",
                point=p,
                expected=v,
                got=got,
            )
    return delta


# --- replays -------------------------------------------------------------------


@dataclass(frozen=True)
class ReplayReport:
    lemma: str
    params: dict
    dimension: int
    basis: tuple = ()
    details: dict = field(default_factory=dict)
    passed: bool = True

    def to_report(self) -> dict[str, Any]:
        return {
            "command": "replay",
            "lemma": self.lemma,
            "status": "pass" if self.passed else "fail",
            "exit_code": 0 if self.passed else 1,
            "params": self.params,
            "dimension": self.dimension,
            "basis": list(self.basis),
            "details": self.details,
        }


def _first_outside(candidates: Sequence, span: Sequence, encode) -> Any:
    e = linalg.Echelon()
    for v in span:
        e.add(encode(v))
    for c in candidates:
        if not e.contains(encode(c)):
            return c
    return None


def _compare_derivation_spans(computed, expected, window, lemma):
    cols = linalg.Indexer([*window.generators(), "D"])

    def encode(d):
        vec = {cols.index[g]: c for g, c in d.inner.terms.items()}
        if d.outer:
            vec[cols.index["D"]] = d.outer
        return vec

    bad = _first_outside(computed, expected, encode)
    if bad is not None:
        raise ReplayFailed(f"Lemma {lemma}: solver found {bad}, outside the stated span", offending=bad)
    bad = _first_outside(expected, computed, encode)
    if bad is not None:
        raise ReplayFailed(f"Lemma {lemma}: stated member {bad} does not annihilate", offending=bad)


def _element_indexer(spaces) -> linalg.Indexer:
    gens = sorted({g for space in spaces for x in space for g in x.terms})
    return linalg.Indexer(gens)


def elements_rref(elements: Iterable[Element]) -> list[Element]:
    elements = list(elements)
    cols = _element_indexer([elements])
    return [Element(cols.decode(v)) for v in linalg.rref(cols.encode(x.terms) for x in elements)]


def intersect_spaces(*spaces: Sequence[Element]) -> list[Element]:
    """Reduced echelon basis of the intersection of spans of elements."""
    cols = _element_indexer(spaces)
    current = linalg.rref(cols.encode(x.terms) for x in spaces[0])
    for space in spaces[1:]:
        current = linalg.intersect(current, [cols.encode(x.terms) for x in space], len(cols))
    return [Element(cols.decode(v)) for v in current]


def _value_space(ds: Iterable[Derivation], x: Element) -> list[Element]:
    return [v for v in (apply(d, x) for d in ds) if v]


def family_space(x: Element) -> list[Element]:
    """Span of sum(g_t I_t - d_t J_t) and sum(g_t I_t + d_t J_t), g/d the I/J coefficients of x."""
    ij = x.family_part("I", "J")
    flipped = x.family_part("I") - x.family_part("J")
    return elements_rref([flipped, ij])


def _texts(xs):
    return tuple(str(x) for x in xs)


def replay_lemma31(variant: int | str, window: Window) -> ReplayReport:
    """Annihilator of L_i (integer variant) or of I_0 + J_0 (variant ``"I0J0"``)."""
    if variant == "I0J0":
        x = ANCHORS[2]
        computed = annihilator(x, window)
        expected = [Derivation.ad(L(0))]
        expected += [Derivation.ad(I(k)) for k in range(-window.radius, window.radius + 1)]
        expected += [Derivation.ad(J(k)) for k in range(-window.radius, window.radius + 1)]
        _compare_derivation_spans(computed, expected, window, "3.1(ii)")
        if any(d.outer for d in computed):
            raise ReplayFailed("Lemma 3.1(ii): the D coefficient is not forced to zero")
        if any(g.family == "H" or (g.family == "L" and g.degree) for d in computed for g in d.inner.terms):
            raise ReplayFailed("Lemma 3.1(ii): an H or nonzero-degree L coefficient survives")
        return ReplayReport(
            "3.1ii",
            {"window": window.radius, "interior": window.interior},
            len(computed),
            _texts(computed),
            {"lambda_forced_zero": True, "expected_dimension": 1 + 2 * (2 * window.radius + 1)},
        )
    if isinstance(variant, bool) or not isinstance(variant, int):
        raise InvalidParameter(f"Lemma 3.1 variant must be an integer i or 'I0J0', got {variant!r}")
    i = variant
    computed = annihilator(L(i), window)
    expected = [Derivation.ad(L(i)), Derivation.ad(H(0)), Derivation.ad(I(i)), Derivation.ad(J(i)), Derivation.D()]
    _compare_derivation_spans(computed, expected, window, "3.1(i)")
    return ReplayReport(
        "3.1i",
        {"i": i, "window": window.radius, "interior": window.interior},
        len(computed),
        _texts(computed),
        {"expected_dimension": len(derivations_rref(expected, window))},
    )


def replay_lemma32(i: int, window: Window) -> ReplayReport:
    """Values at L_i allowed by both annihilators of L_0 and L_1 must be {0}."""
    x = L(i)
    from_l0 = _value_space(annihilator(L(0), window), x)
    from_l1 = _value_space(annihilator(L(1), window), x)
    common = intersect_spaces(from_l0, from_l1)
    if common:
        raise ReplayFailed(f"Lemma 3.2: Delta(L[{i}]) may be {common[0]}", offending=common[0])
    return ReplayReport(
        "3.2",
        {"i": i, "window": window.radius, "interior": window.interior},
        0,
        (),
        {
            "values_from_L0": _texts(elements_rref(from_l0)),
            "values_from_L1": _texts(elements_rref(from_l1)),
        },
    )


def default_probes(x: Element) -> tuple[int, int, int]:
    """Three probe indices q, q+1, -q with q > 2(1 + max |degree| of x)."""
    q = 2 * (1 + x.max_abs_degree()) + 1
    return (q, q + 1, -q)


def _probes_adequate(x: Element, probes: Sequence[int]) -> bool:
    bound = 2 * (1 + x.max_abs_degree())
    return len(set(probes)) >= 3 and all(abs(p) > bound for p in probes)


def _check_probes(probes, window, allow_zero=True):
    if not probes:
        raise InvalidParameter("the probe set is empty")
    for p in probes:
        if isinstance(p, bool) or not isinstance(p, int):
            raise InvalidParameter(f"probe {p!r} is not an integer")
        if not allow_zero and p == 0:
            raise InvalidParameter("probe indices must be nonzero")
        if abs(p) > window.radius:
            raise WindowTooSmall(f"probe index {p} lies outside the window of radius {window.radius}")


def _plain_interior(x: Element, window: Window):
    if x.basis not in (None, PLAIN):
        raise BasisMismatch("replays take plain-basis elements")
    if not window.in_interior(x):
        raise WindowTooSmall(f"{x} is not supported in the interior [-{window.interior}, {window.interior}]")


def replay_lemma33(x: Element, probes: Sequence[int] | None, window: Window) -> ReplayReport:
    """If Delta kills every L_i, Delta(x) lies in the two-parameter I/J family of x."""
    _plain_interior(x, window)
    probes = tuple(default_probes(x) if probes is None else probes)
    _check_probes(probes, window)
    # L_i sits in the window, so its annihilator is computed exactly there
    spaces = [_value_space(joint_annihilator([L(i)], window), x) for i in probes]
    common = intersect_spaces(*spaces)
    family = family_space(x)
    cols = _element_indexer([common, family])
    if not linalg.same_span([cols.encode(v.terms) for v in common], [cols.encode(v.terms) for v in family]):
        missing = _first_outside(family, common, lambda v: cols.encode(v.terms))
        if missing is not None:
            raise ReplayFailed(f"Lemma 3.3: family member {missing} is not attainable", offending=missing)
        extra = _first_outside(common, family, lambda v: cols.encode(v.terms))
        if _probes_adequate(x, probes):
            raise ReplayFailed(f"Lemma 3.3: {extra} survives every probe", offending=extra)
        raise ProbeSetTooSmall(f"probes {list(probes)} leave {extra} outside the family; use larger |i|")
    return ReplayReport(
        "3.3",
        {"x": str(x), "probes": list(probes), "window": window.radius, "interior": window.interior},
        len(common),
        _texts(common),
        {"family": _texts(family)},
    )


def _lemma34_normal_form(p: int) -> list[Derivation]:
    x = L(p) + I(2 * p) + J(2 * p)
    return [Derivation.ad(x), Derivation.ad(I(p)), Derivation.ad(J(p))]


def replay_lemma34(p: int, window: Window) -> ReplayReport:
    """Delta(L_p + I_2p + J_2p) = 0 and the annihilator of that point has the xi/eta/eps form."""
    if p == 0:
        raise InvalidParameter("Lemma 3.4 needs a nonzero p")
    if 3 * abs(p) > window.interior:
        raise WindowTooSmall(f"3|p| = {3 * abs(p)} exceeds the interior radius {window.interior}")
    x = L(p) + I(2 * p) + J(2 * p)
    family = family_space(x)
    possible = _value_space(annihilator(ANCHORS[2], window), x)
    common = intersect_spaces(family, possible)
    if common:
        raise ReplayFailed(f"Lemma 3.4: Delta({x}) may be {common[0]}", offending=common[0])
    computed = annihilator(x, window)
    _compare_derivation_spans(computed, _lemma34_normal_form(p), window, "3.4")
    return ReplayReport(
        "3.4",
        {"p": p, "window": window.radius, "interior": window.interior},
        len(computed),
        _texts(computed),
        {"point": str(x), "forced_value": "0", "family": _texts(family)},
    )


def lemma35_case(x: Element) -> str:
    """Which branch of the vanishing argument covers x."""
    if x.family_part("L"):
        return "1"
    hs = x.family_part("H")
    if any(g.degree for g in hs.terms):
        return "2.1a"
    if hs:
        return "2.1b"
    return "2.2"


def replay_lemma35(x: Element, probes: Sequence[int] | None, window: Window) -> ReplayReport:
    """With Delta zero on L_0, L_1 and I_0 + J_0, Delta(x) is forced to 0."""
    _plain_interior(x, window)
    probes = tuple(default_probes(x) if probes is None else probes)
    _check_probes(probes, window, allow_zero=False)
    case = lemma35_case(x)
    spaces = [family_space(x)]
    for p in probes:
        forms = _lemma34_normal_form(p)
        probe_point = L(p) + I(2 * p) + J(2 * p)
        assert all(not apply(d, probe_point) for d in forms)
        spaces.append(_value_space(forms, x))
    common = intersect_spaces(*spaces)
    if common:
        if _probes_adequate(x, probes):
            raise ReplayFailed(f"Lemma 3.5 (case {case}): Delta({x}) may be {common[0]}", offending=common[0])
        raise ProbeSetTooSmall(f"probes {list(probes)} leave {common[0]} possible; use larger |p|")
    return ReplayReport(
        "3.5",
        {"x": str(x), "probes": list(probes), "window": window.radius, "interior": window.interior},
        0,
        (),
        {"case": case, "family": _texts(spaces[0])},
    )


