"""Exact character groups of the rooted-tree (Butcher) and shuffle Hopf algebras."""

from .basis import TREES, HopfBasis, TreeBasis, WordBasis
from .butcher import (
    RK4,
    FORWARD_EULER,
    IMPLICIT_MIDPOINT,
    RKMethod,
    euler_composite,
    exact_flow,
    growth_profile,
    order_of,
    rk_character,
    scale_step,
    symplectic_ideal,
)
from .core import (
    Functional,
    IdealSpec,
    annihilates,
    bch,
    char_inverse,
    character,
    convolve,
    distance,
    exp_star,
    ideal_closure,
    infinitesimal,
    is_character,
    is_hopf_ideal,
    is_infinitesimal,
    lie_bracket,
    log_star,
    truncate,
    um_order,
    unit_character,
)
from .flows import PolyCurve, evolve, time_ordered_exp
from .linear import Element
from .renorm import BirkhoffPair, birkhoff, counterterm_report
from .targets import ComplexRational, LaurentAlgebra, LaurentSeries, ms_split
from .trees import Forest, Tree, antipode, coproduct, counit, enumerate_trees, graft, ordered_subtrees
from .words import Alphabet, Word, deconcat, shuffle, word_antipode
from .wordseries import ExtendedWordSeries, NuMatrix, xi_action

__version__ = "0.1.0"
