"""Exact classes in the image of K0(Var) and their finite-field point-count shadows."""
from .classes import (
    MotivicClass,
    ZetaSeries,
    blowup_class,
    evaluate_count,
    line_bundle_quotient,
    mod_L,
    parse_class,
    projective_space_class,
    sym_power_class,
    torsor_quotient,
    vector_bundle_quotient,
    zeta_coefficients,
)
from .errors import *  # noqa: F401,F403
from .partitions import (
    PartitionType,
    SetPartition,
    StabilizerDecomposition,
    enumerate_partitions,
    join,
    orbit_count_of_type,
    stabilizer,
    type_of,
)

__version__ = "0.1.0"
