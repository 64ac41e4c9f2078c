from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from pgca.algebra import BOLD, FAMILIES, PLAIN, Element, Generator
from pgca.scalars import GaussianRational

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.builds(
    Fraction, st.integers(min_value=-20, max_value=20), st.integers(min_value=1, max_value=12)
)
scalars = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_scalars = scalars.filter(bool)


def generators(basis=PLAIN, radius=6):
    return st.builds(
        Generator, st.sampled_from(FAMILIES), st.integers(min_value=-radius, max_value=radius), st.just(basis)
    )


def elements(basis=PLAIN, radius=6, max_terms=5):
    return st.lists(st.tuples(generators(basis, radius), scalars), max_size=max_terms).map(Element)


any_basis_elements = st.sampled_from([PLAIN, BOLD]).flatmap(
    lambda b: st.tuples(elements(b), elements(b), elements(b))
)


# --- acceptance summary --------------------------------------------------------

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _ACCEPTANCE.append((number, title, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    merged = {}
    for number, title, outcome in _ACCEPTANCE:
        ok = merged.get(number, (title, True))[1] and outcome == "passed"
        merged[number] = (title, ok)
    for number, (title, ok) in sorted(merged.items()):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
