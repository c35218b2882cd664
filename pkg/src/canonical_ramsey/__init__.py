"""Canonical Ramsey extraction for distinct distances and distinct areas."""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    GeometryError,
    PointSet,
    check_general_position,
    format_rational,
    is_cool_sequence,
    parse_rational,
    sphere_point,
    sq_area,
    sq_distance,
)
from .colorings import (  # noqa: E402
    PairColoring,
    TripleColoring,
    area_coloring,
    bad_triples,
    count_bad_triples,
    derive_col_prime,
    distance_coloring,
    max_color_degree,
)
from .canonical import (  # noqa: E402
    BudgetExceeded,
    SetClass,
    classify_pair_subset,
    find_I_whomog,
    find_whomog_pairs,
    is_I_whomog,
    is_rainbow,
    is_whomog_ordered,
)
from .extraction import (  # noqa: E402
    InvariantViolation,
    derive_params,
    distinct_area_subset,
    distinct_distance_subset,
    extract_rainbow,
)
from .bounds import TowerBound, invert_wer, r3_bound, r4_bound, schedule, wer3_bound, wer_upper  # noqa: E402
from .oracle import distinct_distance_count, max_rainbow_exact  # noqa: E402
from .verify import verify_witness  # noqa: E402

__all__ = [
    "__version__",
    "GeometryError",
    "PointSet",
    "check_general_position",
    "format_rational",
    "is_cool_sequence",
    "parse_rational",
    "sphere_point",
    "sq_area",
    "sq_distance",
    "PairColoring",
    "TripleColoring",
    "area_coloring",
    "bad_triples",
    "count_bad_triples",
    "derive_col_prime",
    "distance_coloring",
    "max_color_degree",
    "BudgetExceeded",
    "SetClass",
    "classify_pair_subset",
    "find_I_whomog",
    "find_whomog_pairs",
    "is_I_whomog",
    "is_rainbow",
    "is_whomog_ordered",
    "InvariantViolation",
    "derive_params",
    "distinct_area_subset",
    "distinct_distance_subset",
    "extract_rainbow",
    "TowerBound",
    "invert_wer",
    "r3_bound",
    "r4_bound",
    "schedule",
    "wer3_bound",
    "wer_upper",
    "distinct_distance_count",
    "max_rainbow_exact",
    "verify_witness",
]
