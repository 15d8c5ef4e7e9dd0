"""Pure braids, horizontal chord diagrams and their gl(N) weight systems.

Submodules:

* ``braid``   words, the word problem, combing, singular braids
* ``chords``  chord diagrams, relations, straightening, cabling
* ``weights`` W_sigma, W_{k,sigma}, path weights and the separation matrix
* ``quantum`` the gl(N) R-matrix invariant as exact series in h
* ``cli``     the ``purebraid`` command
"""

from .braid import (
    BraidWord,
    CombedForm,
    Permutation,
    SingularBraidWord,
    braids_equal,
    comb,
    combed_equal,
    combed_to_artin,
    is_pure,
    parse_braid,
    parse_permutation,
    parse_singular_braid,
    pure_generator_artin,
)
from .chords import (
    CablingSpec,
    ChordDiagram,
    DiagramCombination,
    delta_cabling,
    enumerate_non_decreasing,
    normal_form,
    parse_combination,
    parse_diagram,
)
from .errors import BudgetExceeded, InputError, PureBraidError, PurityError
from .quantum import j_invariant, j_singular, separate, trace_sigma
from .weights import NPolynomial, Path, parse_path, separation_matrix, w_k_sigma, w_path, w_sigma

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "CombedForm",
    "Permutation",
    "SingularBraidWord",
    "braids_equal",
    "comb",
    "combed_equal",
    "combed_to_artin",
    "is_pure",
    "parse_braid",
    "parse_permutation",
    "parse_singular_braid",
    "pure_generator_artin",
    "CablingSpec",
    "ChordDiagram",
    "DiagramCombination",
    "delta_cabling",
    "enumerate_non_decreasing",
    "normal_form",
    "parse_combination",
    "parse_diagram",
    "BudgetExceeded",
    "InputError",
    "PureBraidError",
    "PurityError",
    "j_invariant",
    "j_singular",
    "separate",
    "trace_sigma",
    "NPolynomial",
    "Path",
    "parse_path",
    "separation_matrix",
    "w_k_sigma",
    "w_path",
    "w_sigma",
]
