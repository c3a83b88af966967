from ._core import (
    SubgroupValuesError,
    count,
    exceptional_lambdas,
    exponents,
    find_multiplier,
    perfect_power,
    run_cli,
    support_set,
    sweep,
    theorem_bound,
    trace,
    vinogradov_count,
)

__all__ = [
    "SubgroupValuesError",
    "count",
    "exceptional_lambdas",
    "exponents",
    "find_multiplier",
    "perfect_power",
    "run_cli",
    "support_set",
    "sweep",
    "theorem_bound",
    "trace",
    "vinogradov_count",
]
