"""Exact symbolic computation in the planar Galilean conformal algebra."""

from .algebra import BOLD, FAMILIES, PLAIN, Element, Generator, H, Hb, I, Ib, J, Jb, L, Lb, bracket, to_bold, to_plain
from .derivations import (
    Derivation,
    DerivationSpace,
    LinearMapOnWindow,
    Window,
    WitnessSpace,
    annihilator,
    apply,
    center_check,
    derivation_space,
    joint_annihilator,
    leibniz_check,
    outer_D,
    solve_derivations,
    witness_solve,
)
from .errors import *  # noqa: F401,F403
from .exprio import load_instance, parse_element, print_element, save_report
from .scalars import IMAG_UNIT, GaussianRational, scalar_arith
from .twolocal import (
    ReplayReport,
    TwoLocalInstance,
    extract_derivation,
    replay_lemma31,
    replay_lemma32,
    replay_lemma33,
    replay_lemma34,
    replay_lemma35,
    validate_homogeneity,
)

__version__ = "0.1.0"
