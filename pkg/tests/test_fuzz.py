import random

from pgca.algebra import Element, Generator, bracket
from pgca.fuzz import PROPERTIES, random_element, run_fuzz, shrink


def test_reproducible():
    a = [random_element(random.Random(3), 5) for _ in range(3)]
    b = [random_element(random.Random(3), 5) for _ in range(3)]
    assert a == b
    assert run_fuzz("jacobi", 4, 50, 1) == run_fuzz("jacobi", 4, 50, 1)


def test_broken_property_shrinks_to_minimal_counterexample():
    # "brackets of I-containing elements vanish" fails as soon as an L or H meets an I
    def prop(x, y):
        return not (any(g.family == "I" for g in x) or any(g.family == "I" for g in y)) or not bracket(x, y)

    gen = lambda rng, r: (random_element(rng, r, max_terms=6), random_element(rng, r, max_terms=6))
    result = run_fuzz("broken", 5, 200, 4, properties={"broken": (gen, prop)})
    assert not result.passed
    x, y = result.counterexample
    assert not prop(x, y)
    assert len(x) == len(y) == 1
    assert all(c == 1 for e in (x, y) for _, c in e.items())
    report = result.to_report()
    assert report["exit_code"] == 1 and len(report["counterexample"]) == 2


def test_shrink_keeps_failure():
    x = Element({Generator("L", 1): 3, Generator("H", 2): 5, Generator("J", 0): 1})
    prop = lambda e: Generator("H", 2) not in e
    (small,) = shrink((x,), prop)
    assert small == Element({Generator("H", 2): 1})


def test_registry():
    assert set(PROPERTIES) == {"jacobi", "isomorphism", "leibniz"}
