"""Discrete restriction counts, Weyl sums and fifth-order dispersive flows."""

from ._core import (
    BudgetExceeded,
    ConfigError,
    count_S,
    divisor_scan,
    even_norm,
    first_iterate,
    illposedness_scan,
    linear_flow,
    picard_solve,
    power_sum_distribution,
    ramanujan_sum,
    run,
    weyl_sum,
)

__all__ = [
    "BudgetExceeded",
    "ConfigError",
    "count_S",
    "divisor_scan",
    "even_norm",
    "first_iterate",
    "illposedness_scan",
    "linear_flow",
    "picard_solve",
    "power_sum_distribution",
    "ramanujan_sum",
    "run",
    "weyl_sum",
]
