"""Route any supported input to the engine that handles it.

| Input | Engine |
|---|---|
| `Matroid` | loops and coloops stripped, configuration extracted, `cloudflock` |
| `Configuration` | `cloudflock` |
| `CondensedConfiguration` | `condensation` (averaged recursion) |
| `PmdSpec` | `pmd` |

`compute_rgp` also records timing and size metadata; the CLI writes it
with `rgp --metadata FILE`.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any

from cyclic_tutte.cloudflock import rgp_from_configuration
from cyclic_tutte.condensation import CondensedConfiguration, rgp_from_condensed
from cyclic_tutte.configuration import Configuration, extract_configuration
from cyclic_tutte.errors import ValidationError
from cyclic_tutte.matroid import Matroid, strip_loops_coloops
from cyclic_tutte.oracle import rgp_bruteforce
from cyclic_tutte.pmd import PmdSpec, pmd_rgp
from cyclic_tutte.poly import BivarPoly

logger = logging.getLogger(__name__)


@dataclass
class RgpResult:
    """Outcome of `compute_rgp`.

    Attributes:
        rgp: S(M; x, y).
        metadata: Input kind, engine, sizes and per-engine elapsed milliseconds.
        oracle: The brute-force polynomial when it was requested.
    """
    rgp: BivarPoly
    metadata: dict = field(default_factory=dict)
    oracle: BivarPoly | None = None

    @property
    def oracle_agrees(self) -> bool | None:
        return None if self.oracle is None else self.oracle == self.rgp


def _elapsed_ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000, 2)


def _matroid_rgp(m: Matroid, flat_limit: int | None, metadata: dict) -> BivarPoly:
    stripped, nloops, ncoloops = strip_loops_coloops(m)
    metadata.update(n=m.n, loops=nloops, coloops=ncoloops)
    if stripped.n == 0:
        core = BivarPoly.one()
        metadata["nodes"] = 1
    else:
        c = extract_configuration(stripped, limit=flat_limit)
        metadata["nodes"] = len(c)
        core = rgp_from_configuration(c)
    factor = (BivarPoly.x() + 1) ** ncoloops * (BivarPoly.y() + 1) ** nloops
    return core * factor


def compute_rgp(value: Any, *, flat_limit: int | None = None, check_oracle: bool = False,
                oracle_limit: int | None = None, jobs: int | None = None) -> RgpResult:
    """Compute S(M; x, y) from any supported input.

    Args:
        value: A `Matroid`, `Configuration`, `CondensedConfiguration` or `PmdSpec`.
        flat_limit: Flat enumeration bound for matroid inputs.
        check_oracle: Also run the brute-force oracle (matroid inputs only).
        oracle_limit: Subset enumeration bound for the oracle.
        jobs: Oracle worker processes.

    Raises:
        ValidationError: For an unsupported input, or `check_oracle` on a
            non-matroid input.
        NotRealizableError: If a configuration input is not realizable.
        InfeasibleDesignError: For an infeasible PMD sequence.
        EnumerationLimitError: If a bound is exceeded.
    """
    metadata: dict = {"elapsed_ms": {}}
    total_start = time.perf_counter()
    if check_oracle and not isinstance(value, Matroid):
        raise ValidationError("The oracle check needs a matroid input.")

    start = time.perf_counter()
    if isinstance(value, Matroid):
        metadata.update(input_kind="matroid", engine="cloudflock")
        s = _matroid_rgp(value, flat_limit, metadata)
    elif isinstance(value, Configuration):
        metadata.update(input_kind="configuration", engine="cloudflock", nodes=len(value))
        s = rgp_from_configuration(value)
    elif isinstance(value, CondensedConfiguration):
        metadata.update(input_kind="condensed", engine="condensation", blocks=len(value))
        s = rgp_from_condensed(value)
    elif isinstance(value, PmdSpec):
        metadata.update(input_kind="pmd", engine="pmd", k=list(value.k))
        s = pmd_rgp(value)
    else:
        raise ValidationError(f"No engine for input of type {type(value).__name__}.")
    metadata["elapsed_ms"][metadata["engine"]] = _elapsed_ms(start)
    logger.info("%s engine finished in %.2f ms", metadata["engine"], metadata["elapsed_ms"][metadata["engine"]])

    result = RgpResult(rgp=s, metadata=metadata)
    if check_oracle:
        start = time.perf_counter()
        result.oracle = rgp_bruteforce(value, limit=oracle_limit, jobs=jobs)
        metadata["elapsed_ms"]["oracle"] = _elapsed_ms(start)
        metadata["oracle_agrees"] = result.oracle_agrees
    metadata["s11"] = s.evaluate(1, 1)
    metadata["t11"] = s.evaluate(0, 0)
    metadata["total_elapsed_ms"] = _elapsed_ms(total_start)
    return result
