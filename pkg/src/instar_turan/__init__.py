"""Oriented Turan numbers of the 1-subdivided in-star S_{k,1}."""

__version__ = "0.1.0"

from .constructions import (  # noqa: E402
    ConstructionParams,
    circulant_inregular,
    construct_lower,
    extremal_member,
    extremal_window,
    fixture,
    theorem3_bounds,
    turan_formula,
)
from .detect import (  # noqa: E402
    SubdivisionWitness,
    brute_force_subdivision,
    centers_with_subdivision,
    find_subdivision,
    is_free,
    max_disjoint_inpaths,
)
from .errors import (  # noqa: E402
    AntiParallel,
    CountMismatch,
    DomainError,
    DuplicateArc,
    GraphError,
    GuardExceeded,
    InstanceTooLarge,
    InstarError,
    LoopArc,
    OrderTooLarge,
    ParseError,
    SchemaError,
    SchemeError,
    UnknownFixture,
    VertexOutOfRange,
)
from .graph import (  # noqa: E402
    OrientedGraph,
    arcs_between,
    build_graph,
    canonical_code,
    degree_queries,
    is_isomorphic,
    max_in_degree,
    underlying,
)
from .io import ReportDocument, emit_report, parse_arclist, parse_report, serialize_arclist  # noqa: E402
from .search import SearchConfig, TuranResult, enumerate_all_extremal, exact_turan, heuristic_turan  # noqa: E402
from .vectors import covers, hall_certificate, max_matching  # noqa: E402
from .verify import VerifyReport, check_extremal_family, random_oriented, verify_lemma, verify_theorem  # noqa: E402
