"""scatter-calc: exact order-type arithmetic, colouring extractors and
verifiers for countable scattered linear orders."""

from .errors import ScatterCalcError
from .ordinal import (
    CnfOrdinal,
    OMEGA,
    ONE,
    ZERO,
    format_ordinal,
    from_int,
    fundamental_sequence,
    is_indecomposable,
    ord_add,
    ord_compare,
    ord_mul,
    ord_pow,
    parse_ordinal,
)
from .terms import (
    Fin,
    FinSupp,
    FinSuppElem,
    Ord,
    OrderTerm,
    Rev,
    Scaled,
    Shuffle,
    SumList,
    compare_elements,
    compare_shuffle,
    decode_element,
    encode_element,
    finite_size,
    finsupp_elem,
    format_term,
    materialize,
    parse_term,
    pow_term,
    reverse_term,
    sample_elements,
    search_embedding,
    validate_element,
)
from .partition import (
    Labeling,
    PairColoring,
    extract_unary,
    find_homogeneous,
    lex_power_domain,
    make_unary_realizer,
    sierpinski_color,
    sierpinski_coloring,
    step_up_extract,
    trivial_pair_realizer,
)
from .milner_rado import (
    CANTOR1,
    PairingFn,
    ks_omega_check,
    mr_class_type_bound,
    mr_label_ordinal,
    mr_label_term,
    mr_labeling,
)
from .neg_graph import (
    GridGraph,
    NegGraphParams,
    build_neg_graph,
    check_corner_invariant,
    check_triangle_free,
    column_lift,
    compose_negative_coloring,
)
from .antilex import (
    AlphaTree,
    DecSeq,
    FinSuppFn,
    check_antilex_lemma,
    compare_antilex,
    dec_seq,
    delta_prime,
    induced_seq_coloring,
    ks_embed,
    marker_embed,
    marker_host,
    search_alpha_tree,
    universal_sum_catalogue,
    validate_alpha_tree,
    verify_color_collapse,
)

__version__ = "0.1.0"
