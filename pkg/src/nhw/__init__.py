"""Exact computations on nested r-partitions, their Hecke operators and the
degenerate DAHA action on the fixed-point module."""

from .conventions import Convention, frozen
from .daha import SHContext, build_generators, check_heisenberg, check_relations, \
    check_vacuum_and_cyclicity, compute_E, derive_higher_generators
from .errors import CapExceeded, ContractViolation, DenominatorVanishes, ZeroWeight
from .exact_algebra import LaurentPoly, PowerSeries, RatFun, ps_exp, ps_log, rf_substitute
from .hecke import GradedOperator, f_diag, f_down, f_up, g0_direct, truncate_and_specialize
from .localization import (TangentChar, WeightDict, c00k, correspondence_tangent_character,
                           euler_class, tangent_character, verify_fixed_lemmas)
from .partitions import (MultiPartition, Partition, enumerate_multipartitions, macmahon_series,
                         nested_count_series, phi0, phi0_is_injective)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "ContractViolation", "Convention", "DenominatorVanishes", "GradedOperator",
    "LaurentPoly", "MultiPartition", "Partition", "PowerSeries", "RatFun", "SHContext",
    "TangentChar", "WeightDict", "ZeroWeight", "build_generators", "c00k", "check_heisenberg",
    "check_relations", "check_vacuum_and_cyclicity", "compute_E",
    "correspondence_tangent_character", "derive_higher_generators", "enumerate_multipartitions",
    "euler_class", "f_diag", "f_down", "f_up", "frozen", "g0_direct", "macmahon_series",
    "nested_count_series", "phi0", "phi0_is_injective", "ps_exp", "ps_log", "rf_substitute",
    "tangent_character", "truncate_and_specialize", "verify_fixed_lemmas",
]
