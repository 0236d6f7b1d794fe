"""Critical magnetic field B = 4/mu^2 of a relativistic hydrogenic atom.

Thin re-export of the compiled extension; all numerics live in the C++ core.
"""

from ._magcrit import (
    ALPHA_INVERSE,
    TESLA_FACTOR,
    __version__,
    asymptotic_diagnostic,
    build_table,
    coefficients,
    comparison_ratio,
    critical_field_from_mu,
    erfcx,
    landau_eigenvalue,
    landau_eigenvalue_converged,
    landau_moment,
    landau_table_nu_values,
    record,
    run_acceptance,
    to_tesla_log10,
    unconstrained_eigenvalue,
    unconstrained_table_nu_values,
)

__all__ = [
    "ALPHA_INVERSE",
    "TESLA_FACTOR",
    "__version__",
    "asymptotic_diagnostic",
    "build_table",
    "coefficients",
    "comparison_ratio",
    "critical_field_from_mu",
    "erfcx",
    "landau_eigenvalue",
    "landau_eigenvalue_converged",
    "landau_moment",
    "landau_table_nu_values",
    "record",
    "run_acceptance",
    "to_tesla_log10",
    "unconstrained_eigenvalue",
    "unconstrained_table_nu_values",
]
