"""Kauffman bracket, f-polynomial and supporting genus of virtual link
diagrams, with executable checks of the span formulas for alternating and
v-alternating diagrams."""

from .diagram import (
    Diagram,
    DiagramValidationError,
    GaussCodeError,
    Passage,
    Role,
    connected_components,
    is_alternating,
    parse_gauss,
    writhe,
)
from .generators import (
    SamplingBudgetError,
    connected_sum,
    gen_Dnr,
    gen_K,
    random_diagram,
    random_proper_alternating,
    reduce_K,
    twist_region,
)
from .laurent import DELTA, LaurentPoly, ZeroPolynomialError
from .moves import insert_r1, insert_r2, kauffman_twist, virtualize
from .statesum import (
    CrossingLimitError,
    FrontierTooWideError,
    bracket,
    f_poly,
    span_f,
    splice,
    state_histogram,
    state_loops,
)
from .surface import (
    GenusError,
    NotAlternatingError,
    canonical_coloring,
    checkerboard,
    genus,
    is_proper,
    is_proper_crossing,
    is_v_alternating,
    state_boundary_bijection,
)
from .verify import (
    Classicality,
    Report,
    census,
    classicality_obstruction,
    verify_alt_span,
    verify_state_claims,
    verify_valt_span,
)

__version__ = "0.1.0"
