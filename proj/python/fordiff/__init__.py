"""Largest subsets of [1, n] with pairwise differences avoiding a forbidden set.

The heavy lifting lives in the compiled extension ``_fordiff``; this package
re-exports its public names.  Sets are described by strings such as
``"squares"``, ``"primes-1"``, ``"powers:3"`` or ``"list:1,4,9"`` and are
accepted directly by every function that takes a set.
"""

from ._fordiff import (
    BudgetExhausted,
    CascadeInterrupted,
    CascadeRecord,
    CascadeResult,
    DensityRecord,
    DValue,
    ForbiddenSet,
    FormulaResult,
    Ratio,
    VerifyRow,
    cascade,
    compute_d,
    compute_d_oracle,
    difference_free,
    find_m_star,
    greedy_construct,
    lift_density_witness,
    local_density,
    locally_intersective_up_to,
    mu_lower_scan,
    primes_formula,
    scan_densities,
    squares_plus_one_formula,
    squares_plus_two_lower_bound,
    verify_formula,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "CascadeInterrupted",
    "CascadeRecord",
    "CascadeResult",
    "DensityRecord",
    "DValue",
    "ForbiddenSet",
    "FormulaResult",
    "Ratio",
    "VerifyRow",
    "cascade",
    "compute_d",
    "compute_d_oracle",
    "difference_free",
    "find_m_star",
    "greedy_construct",
    "lift_density_witness",
    "local_density",
    "locally_intersective_up_to",
    "mu_lower_scan",
    "primes_formula",
    "scan_densities",
    "squares_plus_one_formula",
    "squares_plus_two_lower_bound",
    "verify_formula",
]
