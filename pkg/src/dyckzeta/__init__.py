"""Exact zeta functions, entropy, and enumeration oracles for
bracket-matching subshifts built over labeled graphs."""

from .monoid import (
    MINUS,
    ONE,
    PLUS,
    ZERO,
    Generator,
    MonoidElement,
    gminus,
    gplus,
    mul,
    multiplier_class,
    powers_never_vanish,
    word_product,
)
from .series import (
    InexactDivision,
    Polynomial,
    PowerSeries,
    SeriesError,
    counts_from_zeta,
    det_poly_matrix,
    identity_minus_adjacency_z,
    zeta_from_counts,
)
from .graphs import (
    GraphError,
    LabeledGraph,
    Lbl,
    adjacency,
    build_bouquet,
    build_degenerate,
    build_even_automaton,
    first_return_gf,
    is_irreducible,
    is_right_resolving,
    matrix_period,
    presented_shift_zeta,
    q_polynomial,
)
from .shifts import (
    Br,
    Dyck,
    GraphBrackets,
    Motzkin,
    MotzkinRestricted,
    PsiExclusion,
    SpecError,
    TripleExclusion,
    XiExclusion,
    alphabet,
    as_subset_map,
    count_periodic,
    count_words,
    entropy_estimate,
    forbidden_words,
    is_admissible,
    is_periodic_point,
    periodic_counts,
)
from .formulas import (
    CapabilityError,
    ClassificationError,
    FormulaError,
    NoClosedForm,
    PsiClassification,
    VerifyReport,
    carrier_zeta,
    classify_psi,
    closed_form_zeta,
    compare_with_oracle,
    dyck_graph_spec,
    gf_matched_code,
    gf_one_sided_code,
    psi_system_residuals,
    solve_psi_system,
    transition_matrix_from_psi,
    transport_code_word,
    uniform_code_gf,
    zeta_bouquet,
    zeta_combiner,
    zeta_even_odd,
    zeta_graph_brackets,
    zeta_motzkin_restricted,
    zeta_psi_uniform,
    zeta_schroeder,
    zeta_triple_exclusion,
    zeta_xi,
)
from .entropy import (
    EntropyResult,
    RootError,
    entropy_bouquet,
    entropy_closed,
    entropy_graph_brackets,
    entropy_growth_check,
)

__version__ = "0.1.0"
