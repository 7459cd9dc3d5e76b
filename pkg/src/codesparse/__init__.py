"""Unweighted one-sided sparsifiers of binary linear codes and thin subgraphs."""

__version__ = "0.1.0"

from .bounds import BoundsReport, bounds_for, entropy
from .errors import (
    CapExceeded,
    DimensionTooLarge,
    LengthMismatch,
    LengthTooLarge,
    ParseError,
    SearchFailed,
    TheoremViolation,
)
from .gf2 import (
    BitVector,
    CosetLabel,
    Gf2Matrix,
    LinearCode,
    add,
    enumerate_codewords,
    project_weight,
    row_reduce,
    weight,
)
from .graphs import (
    Graph,
    count_thin,
    cut_space,
    disjoint_hitting_sets,
    edge_connectivity,
    find_thin,
    is_hitting_set,
    is_thin,
    proper_sparsifier_search,
)
from .sparsify import (
    HALF,
    Alpha,
    CensusReport,
    IterationTrace,
    Verdict,
    coset_maximize,
    count_sparsifiers,
    improve_once,
    iterated_sparsifier,
    min_sparsifier,
    monte_carlo_density,
    small_sparsifier_search,
    verify,
)
