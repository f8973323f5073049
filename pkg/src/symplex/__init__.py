"""Exact symplectic-group machinery over monoid algebras."""
from .errors import *  # noqa: F401,F403
from .factorization import (
    BruhatResult,
    FactorizationResult,
    bruhat_decompose,
    factor,
    factor_over_euclidean,
    factor_over_field,
    local_ring_factor,
)
from .geometry import (
    PolarizedTriple,
    RationalCone,
    cone_of,
    interior_monoid,
    is_c_divisible,
    pyramid_split,
    shipped_polarized_example,
    submonoid_select,
    validate_polarized,
)
from .lab import LemmaReport, run_suite
from .prng import SplitMix64
from .rings import (
    GF,
    QQ,
    ZZ,
    Affine,
    BaseRing,
    CDivisibleTruncation,
    FreeMixed,
    Ring,
    RingElement,
    euclidean_divmod,
    is_unit,
    poly_add,
    poly_mul,
    polynomial_ring,
    retract,
    scalars,
    substitute,
    unit_inverse,
)
from .symplectic import (
    SE,
    SW,
    DeltaConj,
    GenWord,
    IndexSet,
    SEDiag,
    SympMatrix,
    delta,
    delta_conjugate,
    phi_q,
    psi,
    random_word,
    se,
    se_diag,
    sigma,
    sp_check,
    subgroup_shape,
    sw,
    tilde,
    transvection_delta,
    transvection_gamma,
    word_eval,
    word_invert,
)

__version__ = "0.1.0"
