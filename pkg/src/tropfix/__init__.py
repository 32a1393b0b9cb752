"""Exact tropical self-intersection and fixed-point calculator.

Core objects: matroids with exact rank oracles, weighted fans on the braid
arrangement, piecewise-linear functions and their divisors, smooth tropical
curves and real tori.  The headline checks equate intersection-theoretic
degrees with Euler-characteristic and trace data, all in exact arithmetic.
"""

from .curve import (
    CurveMorphism,
    Edge,
    TropicalCurve,
    Vertex,
    circle_trace,
    stable_fixed_cycle,
    subdivide_flipped,
    validate_morphism,
    weil_verify,
)
from .cycles import (
    TropicalCycle,
    codim1_stars,
    degree0,
    indicator_vector,
    is_balanced,
    matroid_fan,
)
from .diagonal import (
    classify_chain,
    diagonal_cycle,
    f_function,
    g_function,
    self_intersection,
    xk,
    xk_predicted,
)
from .divisor import (
    PLFunction,
    divisor,
    evaluate_on_face,
    pullback_diagonal,
    quotient_chain_functions,
    quotient_chain_matroids,
)
from .euler import (
    euler_char_fan,
    euler_report,
    framing_dim,
    framing_dims,
    framing_report,
    os_dim,
    reduced_os_dims,
)
from .matroid import (
    Matroid,
    MatroidError,
    bases_matroid,
    beta,
    contract,
    diagonal_matroid,
    direct_sum,
    flats,
    graphic_matroid,
    is_connected,
    make_matroid,
    parallel_connection_self,
    rank_table_matroid,
    relabel,
    uniform_matroid,
)
from .torus import (
    TorusEndo,
    fixed_points,
    intersection_side,
    lefschetz_verify,
    trace_side,
    validate_endo,
)

__version__ = "0.1.0"
