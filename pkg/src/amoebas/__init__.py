"""Exact tropicalizations and adelic amoebas of Laurent hypersurfaces.

The engine computes, in exact rational arithmetic, the tropicalization of a
hypersurface over Q or Q(z) at any nonarchimedean place, assembles the
adelic amoeba (generic normal-fan skeleton plus finitely many special
places), intersects pulled-back tropicalizations into prevarieties, answers
archimedean membership queries with certificates, and decides whether a
rational open halfspace meets the adelic amoeba, verifying the structural
conclusion that disjointness forces.
"""

from .errors import (
    AmoebaError,
    ArchimedeanNotSupported,
    DegenerateSlice,
    DependentDirection,
    DimensionMismatch,
    EmptyPolynomial,
    InvalidPlace,
    MissingImagePresentation,
    MonomialInput,
    PlaceFieldMismatch,
    PolySyntaxError,
    RankDeficient,
    RankMismatch,
    TermCountMismatch,
    ZeroCoordinate,
    ZeroInput,
)
from .scalars import (
    ARCH,
    FF_INFINITY,
    FIELD_Q,
    FIELD_QZ,
    GENERIC,
    ArchimedeanQ,
    FiniteIrreducible,
    FinitePrime,
    FunctionFieldInfinity,
    GenericPlace,
    Poly,
    RationalFunction,
    Z,
    log_abs,
    place_from_str,
    place_to_str,
    product_formula_residual,
    support_places,
    valuation,
)
from .laurent import (
    LaurentPoly,
    NewtonPolytope,
    bad_places,
    make_laurent,
    newton_polytope,
    normalize,
    parse_poly,
    poly_from_json,
    poly_to_json,
    poly_to_str,
    scale,
)
from .polyhedral import (
    Cell,
    LPInfeasible,
    LPOptimal,
    LPUnbounded,
    Polyhedron,
    PolyhedralComplex,
    complex_from_json,
    complex_membership,
    complex_to_json,
    complexes_equal,
    dimension,
    from_generators,
    lp_solve,
    make_complex,
    polyhedron,
    preimage,
    project,
)
from .tropical import (
    AdelicAmoeba,
    Constraint,
    PrevarietySystem,
    TropicalData,
    adelic_amoeba,
    adelic_amoeba_of_system,
    contains_zero,
    generic_skeleton,
    is_balanced,
    prevariety,
    project_complex,
    psi,
    system_bad_places,
    trop_hypersurface,
)
from .archimedean import (
    lopsided_outside,
    sampled_inside,
    triangle_exact_membership,
)
from .classify import (
    AdelicReport,
    EklReport,
    Halfspace,
    QuotientMap,
    TheoremReport,
    adelic_disjoint,
    defined_over_k_test,
    ekl_consistency_check,
    halfline_disjoint_fast,
    halfspace_meets_complex,
    halfspace_quotient,
    theorem1_report,
    torsion_coset_test,
    torsion_point_test,
)

__version__ = "0.1.0"
