"""Seeded property fuzzing with counterexample shrinking."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import BOLD, FAMILIES, PLAIN, Element, Generator, bracket, to_bold, to_plain
from .derivations import Derivation, leibniz_check
from .errors import InvalidParameter
from .scalars import GaussianRational

__all__ = ["PROPERTIES", "FuzzResult", "random_derivation", "random_element", "random_scalar", "run_fuzz", "shrink"]


def random_scalar(rng: random.Random, complex_prob: float = 0.3) -> GaussianRational:
    """A nonzero Gaussian rational with small numerators and denominators."""
    while True:
        re = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        im = Fraction(rng.randint(-6, 6), rng.randint(1, 4)) if rng.random() < complex_prob else Fraction(0)
        if re or im:
            return GaussianRational(re, im)


def random_element(rng: random.Random, radius: int, basis: str = PLAIN, max_terms: int = 4,
                   families=FAMILIES) -> Element:
    n = rng.randint(1, max_terms)
    terms = [
        (Generator(rng.choice(families), rng.randint(-radius, radius), basis), random_scalar(rng))
        for _ in range(n)
    ]
    return Element(terms)


def random_derivation(rng: random.Random, radius: int, max_terms: int = 4) -> Derivation:
    outer = random_scalar(rng) if rng.random() < 0.7 else 0
    return Derivation(random_element(rng, radius, max_terms=max_terms), outer)


def _jacobi(x, y, z):
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    return not jac and bracket(x, y) == -bracket(y, x)


def _gen_jacobi(rng, radius):
    basis = rng.choice((PLAIN, BOLD))
    return tuple(random_element(rng, radius, basis) for _ in range(3))


def _isomorphism(x, y):
    return to_bold(bracket(x, y)) == bracket(to_bold(x), to_bold(y)) and to_plain(to_bold(x)) == x


def _gen_isomorphism(rng, radius):
    return random_element(rng, radius), random_element(rng, radius)


def _leibniz(d, x, y):
    return leibniz_check(d, x, y)


def _gen_leibniz(rng, radius):
    return random_derivation(rng, radius), random_element(rng, radius), random_element(rng, radius)


# name -> (generator of argument tuples, property returning True when it holds)
PROPERTIES: dict[str, tuple[Callable, Callable]] = {
    "jacobi": (_gen_jacobi, _jacobi),
    "isomorphism": (_gen_isomorphism, _isomorphism),
    "leibniz": (_gen_leibniz, _leibniz),
}


def _smaller(arg):
    """Candidates with one term dropped (or a coefficient set to 1)."""
    if isinstance(arg, Derivation):
        for inner in _smaller(arg.inner):
            yield Derivation(inner, arg.outer)
        if arg.outer:
            yield Derivation(arg.inner, 0)
        return
    items = arg.items()
    for k in range(len(items)):
        yield Element(items[:k] + items[k + 1:])
    for k, (g, c) in enumerate(items):
        if c != 1:
            yield Element(items[:k] + [(g, 1)] + items[k + 1:])


def shrink(args: tuple, prop: Callable) -> tuple:
    """Greedy shrink of a failing argument tuple; the result still fails."""
    args = tuple(args)
    progress = True
    while progress:
        progress = False
        for pos, arg in enumerate(args):
            for cand in _smaller(arg):
                trial = args[:pos] + (cand,) + args[pos + 1:]
                try:
                    failed = not prop(*trial)
                except Exception:
                    failed = True
                if failed:
                    args = trial
                    progress = True
                    break
            if progress:
                break
    return args


@dataclass(frozen=True)
class FuzzResult:
    what: str
    radius: int
    samples: int
    seed: int
    checked: int
    counterexample: tuple | None = None
    original: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_report(self):
        doc = {
            "command": "fuzz",
            "what": self.what,
            "status": "pass" if self.passed else "fail",
            "exit_code": 0 if self.passed else 1,
            "window": self.radius,
            "samples": self.samples,
            "seed": self.seed,
            "checked": self.checked,
            "failures": 0 if self.passed else 1,
        }
        if not self.passed:
            doc["counterexample"] = [str(a) for a in self.counterexample]
            doc["original"] = [str(a) for a in self.original]
        return doc


def run_fuzz(what: str, radius: int, samples: int, seed: int, properties=None) -> FuzzResult:
    """Check a named property on ``samples`` random inputs; stop at the first failure."""
    properties = PROPERTIES if properties is None else properties
    if what not in properties:
        raise InvalidParameter(f"unknown property {what!r}; choose from {', '.join(sorted(properties))}")
    if radius < 0 or samples < 0:
        raise InvalidParameter("window and samples must be non-negative")
    gen, prop = properties[what]
    rng = random.Random(seed)
    for n in range(samples):
        args = gen(rng, radius)
        if not prop(*args):
            return FuzzResult(what, radius, samples, seed, n + 1, shrink(args, prop), args)
    return FuzzResult(what, radius, samples, seed, samples)
