"""Perfect matroid designs: rank generating polynomials and nonexistence checks.

In a perfect matroid design (PMD) every flat of rank i has the same size
`k_i`. The number of rank-i flats inside a rank-j flat is then

    prod_{h < i} (k_j - k_h) / (k_i - k_h)

so the rank classes with `k_i > k_{i-1} + 1` (the classes made of cyclic
flats) form a condensation whose matrix depends on k alone. Hence so does
the rank generating polynomial. A sequence for which some count is not a
positive integer, or for which the averaged recursion produces a negative
coefficient, has no realization.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from cyclic_tutte.condensation import CondensedConfiguration, avg_cloud_flock, rgp_from_condensed
from cyclic_tutte.errors import CondensationError, InfeasibleDesignError, PmdSpecError
from cyclic_tutte.poly import BivarPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PmdSpec:
    """Flat sizes `k_0, ..., k_r` of a candidate perfect matroid design.

    Raises:
        PmdSpecError: Unless `k_0 = 0` and k is strictly increasing.
    """
    k: tuple[int, ...]

    def __post_init__(self) -> None:
        k = tuple(self.k)
        object.__setattr__(self, "k", k)
        if not k:
            raise PmdSpecError("A PMD sequence needs at least k_0.")
        if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in k):
            raise PmdSpecError(f"PMD entries must be nonnegative integers, got {list(k)}.")
        if k[0] != 0:
            raise PmdSpecError(f"k_0 must be 0 (no loops), got {k[0]}.")
        if any(b <= a for a, b in zip(k, k[1:])):
            raise PmdSpecError(f"PMD sequence must be strictly increasing, got {list(k)}.")

    @property
    def r(self) -> int:
        return len(self.k) - 1

    @property
    def n(self) -> int:
        return self.k[-1]

    def is_free(self) -> bool:
        """Whether k is `0, 1, ..., r` with r >= 1, the sequence of U(r, r)."""
        return self.r >= 1 and self.k == tuple(range(self.r + 1))

    def retained_ranks(self) -> list[int]:
        """Ranks whose flats are cyclic: 0, r, and every i with `k_i > k_{i-1} + 1`."""
        ranks = [0] + [i for i in range(1, self.r) if self.k[i] > self.k[i - 1] + 1]
        if self.r > 0:
            ranks.append(self.r)
        return ranks


def pmd_count_terms(spec: PmdSpec, i: int, j: int) -> tuple[int, int]:
    """Numerator and denominator of `pmd_count` before reduction."""
    if not 0 <= i <= j <= spec.r:
        raise PmdSpecError(f"pmd_count needs 0 <= i <= j <= {spec.r}, got i={i}, j={j}.")
    k = spec.k
    return prod(k[j] - k[h] for h in range(i)), prod(k[i] - k[h] for h in range(i))


def pmd_count(spec: PmdSpec, i: int, j: int) -> Fraction:
    """Number of rank-i flats inside a rank-j flat, as an exact fraction.

    Example:
        ```python
        pmd_count(PmdSpec((0, 1, 3, 7)), 2, 3)     # Fraction(7, 1)
        pmd_count(PmdSpec((0, 1, 3, 8)), 2, 3)     # Fraction(28, 3)
        ```
    """
    num, den = pmd_count_terms(spec, i, j)
    return Fraction(num, den)


def _witness(spec: PmdSpec, i: int, j: int) -> str:
    num, den = pmd_count_terms(spec, i, j)
    return f"{num}/{den}"


def _require_cyclic_top(spec: PmdSpec) -> None:
    r, k = spec.r, spec.k
    if r >= 1 and k[r] == k[r - 1] + 1:
        raise InfeasibleDesignError(
            r - 1, r,
            detail=f"k_r = k_(r-1) + 1 forces every element to be a coloop, which needs k = {list(range(r + 1))}.",
        )


def pmd_condensed_configuration(spec: PmdSpec) -> CondensedConfiguration:
    """The condensation of a PMD's cyclic flats into rank classes.

    Blocks are labelled `(k_i, i)` for the retained ranks and
    `A(B_i, B_j) = pmd_count(k, i, j)`.

    Raises:
        InfeasibleDesignError: If a count between retained ranks is not an
            integer, or the ground set cannot be cyclic (this includes the
            free sequence, which `pmd_rgp` handles separately).
    """
    _require_cyclic_top(spec)
    ranks = spec.retained_ranks()
    a = []
    for i in ranks:
        row = []
        for j in ranks:
            if j < i:
                row.append(0)
                continue
            count = pmd_count(spec, i, j)
            if count.denominator != 1 or count <= 0:
                raise InfeasibleDesignError(i, j, _witness(spec, i, j))
            row.append(int(count))
        a.append(row)
    logger.debug("PMD %s keeps ranks %s", list(spec.k), ranks)
    return CondensedConfiguration(labels=tuple((spec.k[i], i) for i in ranks), a=tuple(tuple(row) for row in a))


def pmd_rgp(spec: PmdSpec) -> BivarPoly:
    """S(M; x, y) of any PMD with flat sizes k.

    The free sequence `0, 1, ..., r` gives `(x + 1)^r`.

    Raises:
        InfeasibleDesignError: See `pmd_condensed_configuration`.
        NotRealizableError: If the averaged recursion turns negative.
    """
    if spec.is_free():
        return (BivarPoly.x() + BivarPoly.one()) ** spec.r
    return rgp_from_condensed(pmd_condensed_configuration(spec))


@dataclass
class FeasibilityReport:
    """Every obstruction found for a PMD sequence.

    Attributes:
        k: The sequence checked.
        violations: One dict per obstruction with keys `kind`, `i`, `j` and `detail`.
        notes: Observations that are not obstructions.
    """
    k: tuple[int, ...]
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, i: int | None, j: int | None, detail: str) -> None:
        self.violations.append({"kind": kind, "i": i, "j": j, "detail": detail})

    def to_dict(self) -> dict:
        return {"k": list(self.k), "ok": self.ok, "violations": list(self.violations), "notes": list(self.notes)}


def pmd_feasibility_report(spec: PmdSpec) -> FeasibilityReport:
    """Collect every obstruction to the existence of a PMD with flat sizes k.

    Checks, in order: the ground set can be cyclic; every count
    `pmd_count(k, i, j)` with `i <= j` is an integer; the averaged cloud and
    flock polynomials have no negative coefficient; every x-degree of the
    averaged cloud polynomial of the whole lattice lies in `0..r`. Later
    checks run only when the earlier ones pass.
    """
    report = FeasibilityReport(k=spec.k)
    r, k = spec.r, spec.k
    if spec.is_free():
        report.notes.append(f"Free sequence: the only realization is U({r}, {r}) with S = (x + 1)^{r}.")
        return report
    if r >= 1 and k[r] == k[r - 1] + 1:
        report.add("coloop", r - 1, r, "k_r = k_(r-1) + 1 but k is not the free sequence.")
        return report
    for i in range(r + 1):
        for j in range(i, r + 1):
            if pmd_count(spec, i, j).denominator != 1:
                report.add("count", i, j, f"{_witness(spec, i, j)} is not an integer.")
    if not report.ok:
        return report
    ranks = spec.retained_ranks()
    if len(ranks) <= 2 and r >= 1:
        report.notes.append(f"Only the empty set and the ground set are cyclic: any realization is U({r}, {k[r]}).")
    try:
        cc = pmd_condensed_configuration(spec)
    except CondensationError as e:
        report.add("structure", None, None, str(e))
        return report
    table = avg_cloud_flock(cc, strict=False)
    for problem in table.problems:
        lo, hi = problem.interval
        report.add("negative", ranks[lo], ranks[hi], f"{problem.which} polynomial has a negative coefficient.")
    top_cloud = table.cloud(cc.bottom, cc.top)
    for degree in top_cloud.degrees():
        if not 0 <= degree <= r:
            report.add("exponent", 0, r, f"Cloud polynomial of the empty set has degree {degree} outside 0..{r}.")
    return report


def parse_pmd_line(line: str) -> PmdSpec | None:
    """Read one batch line such as `0 1 3 7`, `0,1,3,7` or `[0, 1, 3, 7]`.

    Blank lines and lines starting with `#` give None.

    Raises:
        PmdSpecError: If the line holds anything but integers.
    """
    text = line.strip()
    if not text or text.startswith("#"):
        return None
    tokens = text.strip("[]").replace(",", " ").split()
    try:
        return PmdSpec(tuple(int(t) for t in tokens))
    except ValueError:
        raise PmdSpecError(f"Cannot read PMD sequence from '{line.strip()}'.") from None


def specs_from_lines(lines: Sequence[str]) -> list[PmdSpec]:
    return [spec for spec in (parse_pmd_line(line) for line in lines) if spec is not None]
