"""omnirate: coalitional-game rate allocation for communication for omniscience.

Models a group of users exchanging information until everyone can
reconstruct the whole source, as a coalitional game: minimum sum-rates for
both divisible and integer rates, core nonemptiness with certificates,
Dilworth truncation to the equivalent convex game, Shapley / greedy-vertex /
integer-core allocations, and Jain-index fairness reporting. All arithmetic
is exact rational.
"""

from .allocation import (
    Allocation,
    CoreEmptyError,
    IntegralityError,
    enumerate_integer_core,
    fairness_compare,
    greedy_vertex,
    greedy_vertices,
    jain_index,
    shapley,
)
from .combinatorics import (
    Partition,
    bits,
    mask_of,
    min_partition_sum,
    partition_min_table,
    partitions,
    subsets,
)
from .dilworth import (
    ConvexCharacteristic,
    CoreComparison,
    ModularityCheck,
    TruncatedDual,
    check_submodular,
    check_supermodular,
    convex_characteristic,
    cores_equal,
    dilworth_truncate,
    greedy_marginals,
)
from .game import (
    Decision,
    Game,
    RateVector,
    dual_membership,
    in_core,
    satisfies_slepian_wolf,
)
from .models import (
    EntropyTable,
    InvalidModelError,
    ModelFormatError,
    PacketModel,
    SourceModel,
    ValidationReport,
    Violation,
    canonical_model_dict,
    load_model,
    model_digest,
    model_from_dict,
    validate_polymatroid,
)
from .rationals import format_rational, parse_rational
from .sumrate import (
    ASYMPTOTIC,
    FLAG_NON_INTEGER_ENTROPY,
    NON_ASYMPTOTIC,
    MmiResult,
    NonemptinessCertificate,
    SumRateReport,
    core_nonempty,
    min_sum_rate_asymptotic,
    min_sum_rate_non_asymptotic,
    mmi,
    upper_base_nonempty,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "ASYMPTOTIC",
    "ConvexCharacteristic",
    "CoreComparison",
    "CoreEmptyError",
    "Decision",
    "EntropyTable",
    "FLAG_NON_INTEGER_ENTROPY",
    "Game",
    "IntegralityError",
    "InvalidModelError",
    "MmiResult",
    "ModelFormatError",
    "ModularityCheck",
    "NON_ASYMPTOTIC",
    "NonemptinessCertificate",
    "PacketModel",
    "Partition",
    "RateVector",
    "SourceModel",
    "SumRateReport",
    "TruncatedDual",
    "ValidationReport",
    "Violation",
    "bits",
    "canonical_model_dict",
    "check_submodular",
    "check_supermodular",
    "convex_characteristic",
    "core_nonempty",
    "cores_equal",
    "dilworth_truncate",
    "dual_membership",
    "enumerate_integer_core",
    "fairness_compare",
    "format_rational",
    "greedy_marginals",
    "greedy_vertex",
    "greedy_vertices",
    "in_core",
    "jain_index",
    "load_model",
    "mask_of",
    "min_partition_sum",
    "min_sum_rate_asymptotic",
    "min_sum_rate_non_asymptotic",
    "mmi",
    "model_digest",
    "model_from_dict",
    "parse_rational",
    "partition_min_table",
    "partitions",
    "satisfies_slepian_wolf",
    "shapley",
    "subsets",
    "upper_base_nonempty",
    "validate_polymatroid",
]
