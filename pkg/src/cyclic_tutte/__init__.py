"""Tutte and rank generating polynomials of matroids from their cyclic flats.

The rank generating polynomial of a matroid depends only on its
configuration (the lattice of cyclic flats labelled by size and rank), and
even only on a condensed configuration when the lattice has symmetry. This
package computes it along each of these routes and checks the results
against a brute-force subset enumeration.
"""

from cyclic_tutte.cloudflock import CloudFlockTable, cloud_flock_from_configuration, rgp_from_configuration
from cyclic_tutte.condensation import (
    Condensation,
    CondensedConfiguration,
    avg_cloud_flock,
    coarsest_condensation,
    orbits_from_generators,
    rgp_from_condensed,
    validate_condensation,
)
from cyclic_tutte.configuration import Configuration, extract_configuration, interval
from cyclic_tutte.engine import compute_rgp
from cyclic_tutte.errors import (
    CyclicTutteError,
    EnumerationLimitError,
    InfeasibleDesignError,
    NotRealizableError,
    ValidationError,
)
from cyclic_tutte.matroid import Matroid, strip_loops_coloops
from cyclic_tutte.oracle import cloud_direct, flock_direct, rgp_bruteforce
from cyclic_tutte.pmd import PmdSpec, pmd_feasibility_report, pmd_rgp
from cyclic_tutte.poly import BivarPoly, UnivarPoly, rgp_from_tutte, tutte_from_rgp

__all__ = [
    "BivarPoly",
    "UnivarPoly",
    "tutte_from_rgp",
    "rgp_from_tutte",
    "Matroid",
    "strip_loops_coloops",
    "rgp_bruteforce",
    "cloud_direct",
    "flock_direct",
    "Configuration",
    "extract_configuration",
    "interval",
    "CloudFlockTable",
    "cloud_flock_from_configuration",
    "rgp_from_configuration",
    "Condensation",
    "CondensedConfiguration",
    "orbits_from_generators",
    "coarsest_condensation",
    "validate_condensation",
    "avg_cloud_flock",
    "rgp_from_condensed",
    "PmdSpec",
    "pmd_rgp",
    "pmd_feasibility_report",
    "compute_rgp",
    "CyclicTutteError",
    "ValidationError",
    "EnumerationLimitError",
    "NotRealizableError",
    "InfeasibleDesignError",
]
