"""Boundary dynamics of free-group automorphisms.

Exact arithmetic on reduced words, Stallings graphs for finitely
generated subgroups, verified automorphism pairs with abelianization,
an orbit-limit engine with parabolic detection, sampled dynamics graphs,
and a catalog of automorphism families with known behavior.
"""

from .words import (
    Alphabet,
    AlphabetMismatchError,
    CyclicDecomposition,
    EmptyWordError,
    Word,
    WordSyntaxError,
    common_prefix_length,
    concat,
    cyclic_reduce,
    format_word,
    identity,
    invert,
    parse_word,
    primitive_root,
    reduce,
    standard_alphabet,
)
from .subgroups import (
    StallingsGraph,
    build_core_graph,
    contains,
    core_graph_dot,
    coset_power_membership,
    enumerate_elements,
)
from .automorphisms import (
    AutoPair,
    DilatationInfo,
    Endomorphism,
    IntMatrix,
    NotHyperbolicError,
    NotInverseError,
    abelianize,
    compose,
    compose_pairs,
    conjugate,
    determinant,
    dilatation_info,
    identity_pair,
    inner,
    matrix_mul,
    matrix_power,
    power,
    squarefree_part,
    verify_pair,
)
from .dynamics import (
    Boundary,
    FixedElement,
    GrowthClass,
    GrowthOverflowError,
    IterationConfig,
    LimitPoint,
    LimitResult,
    NotConverged,
    ParabolicReport,
    PrefixApprox,
    Rational,
    RationalPoint,
    apply_rational,
    detect_boundary_period,
    detect_parabolic,
    element_of,
    growth_classify,
    iterate,
    omega_limit,
    omega_limit_rational,
    prefix_of,
    rational_from_element,
    rational_point,
    recognize_rational,
    translate,
    verify_splitting,
)
from .graphs import (
    DynamicsGraph,
    GraphTemplate,
    IsoglossyClass,
    build_graph,
    default_seeds,
    emit_dot,
    graph_to_json,
    has_parabolic_loop,
    isogloss,
    verify_fixed_generators,
)
from .families import (
    TwistCase,
    UnknownFamilyError,
    classify_twist,
    expected_graph,
    family,
    make_alpha_k,
    make_beta,
    make_delta,
    make_phi_k,
    make_sigma,
    make_twist,
    parse_family_spec,
    stock_theta,
    stock_theta_names,
    twist_reduce,
)
from .autofiles import AutoFile, AutoFileError, load_autofile, parse_autofile

__version__ = "0.1.0"
