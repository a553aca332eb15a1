"""Finite-field point counting: fields, counting sequences, twisted counts and the oracle."""
from .actions import (
    BlowupAction,
    DiagonalLinear,
    DisjointCopiesAction,
    FunctionAction,
    GroupAction,
    Monomial,
    MonomialLinear,
    PermutationLinear,
    PermutationOnPower,
    ProductAction,
    WreathZeroSumAction,
    ZeroSumPowerAction,
    burnside_quotient_count,
    burnside_sum,
    generate_monomials,
    q_integer,
    twisted_count_blowup,
    twisted_count_diagonal,
    twisted_count_power,
    twisted_count_projective,
)
from .field import GF, FieldSpec, is_prime_power, prime_power
from .oracle import (
    OracleResult,
    effective_zero_cycles,
    oracle_orbit_count,
    oracle_sym_power,
    plain_point_count,
)
from .sequences import CountingSequence
from . import varieties

__all__ = [name for name in dir() if not name.startswith("_")]
