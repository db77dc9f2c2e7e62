"""Matroid representations and primitive queries.

A `Matroid` lives on the ground set `0..n-1` and is backed by one of

- an explicit basis list (`Matroid.from_bases`),
- a presentation by its cyclic flats and their ranks (`Matroid.from_cyclic_flats`),
- the uniform matroid U(r, n) (`Matroid.uniform`).

Subsets are passed either as bitsets (`int`, see `cyclic_tutte.bitset`) or as
iterables of element indices. All query methods are pure; rank values are
memoized per instance.

Minors (`restrict`, `contract`) and `strip_loops_coloops` relabel the
remaining elements to `0..n'-1` and record the correspondence in `labels`
(`labels[i]` is the parent's index of new element `i`).

See Also:
    `cyclic_tutte.configuration`: The abstract lattice of cyclic flats.
    `cyclic_tutte.oracle`: Brute-force polynomials computed from `rank`.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from cyclic_tutte import bitset
from cyclic_tutte.errors import EnumerationLimitError, MatroidError
from cyclic_tutte.settings import get_settings

logger = logging.getLogger(__name__)

Subset = int | Iterable[int]

_RANK_CACHE_LIMIT = 1 << 20


@dataclass(frozen=True, order=True)
class CyclicFlatRecord:
    """A cyclic flat with its labels.

    Attributes:
        rank: Rank of the flat.
        size: Number of elements.
        members: The flat as a bitset.
    """
    rank: int
    size: int
    members: int

    @classmethod
    def of(cls, members: int, rank: int) -> "CyclicFlatRecord":
        return cls(rank=rank, size=members.bit_count(), members=members)

    @property
    def label(self) -> tuple[int, int]:
        """The `(size, rank)` label."""
        return (self.size, self.rank)

    def elements(self) -> list[int]:
        return bitset.elements(self.members)


@dataclass(frozen=True)
class AxiomViolation:
    """First violated cyclic-flat axiom found by `validate_cyclic_flats_presentation`.

    Attributes:
        axiom: One of `"record"`, `"lattice"`, `"bottom"`, `"chain"`, `"incomparable"`.
        message: Human-readable description.
        witnesses: The offending records.
    """
    axiom: str
    message: str
    witnesses: tuple[CyclicFlatRecord, ...] = ()


def _record_text(rec: CyclicFlatRecord) -> str:
    return f"{{{','.join(map(str, rec.elements()))}}} (rank {rec.rank})"


def validate_cyclic_flats_presentation(n: int, records: Sequence[CyclicFlatRecord]) -> AxiomViolation | None:
    """Check the cyclic-flat axioms on a presentation.

    The checks, in order:

    1. each record lies in `0..n-1`, has `size == |members|` and `rank <= size`; no set repeats,
    2. the collection is a lattice under inclusion (every pair has a least upper
       bound and a greatest lower bound inside the collection),
    3. the bottom has rank 0,
    4. for `X` strictly inside `Y`: `0 < r(Y) - r(X) < |Y| - |X|`,
    5. for incomparable `X, Y`:
       `r(X) + r(Y) >= r(X v Y) + r(X ^ Y) + |(X & Y) - (X ^ Y)|`.

    Args:
        n: Ground-set size.
        records: The presented cyclic flats.

    Returns:
        `None` when every axiom holds, otherwise the first `AxiomViolation`.
    """
    if not records:
        return AxiomViolation("lattice", "A presentation needs at least one cyclic flat.")
    seen = set()
    for rec in records:
        if rec.members >> n:
            return AxiomViolation("record", f"{_record_text(rec)} has elements outside 0..{n - 1}.", (rec,))
        if rec.size != rec.members.bit_count() or rec.rank < 0 or rec.rank > rec.size:
            return AxiomViolation("record", f"{_record_text(rec)} has inconsistent size/rank.", (rec,))
        if rec.members in seen:
            return AxiomViolation("record", f"{_record_text(rec)} appears twice.", (rec,))
        seen.add(rec.members)

    def below(a: CyclicFlatRecord, b: CyclicFlatRecord) -> bool:
        return a.members & ~b.members == 0

    def join(a, b):
        uppers = [z for z in records if below(a, z) and below(b, z)]
        least = [z for z in uppers if all(below(z, u) for u in uppers)]
        return least[0] if least else None

    def meet(a, b):
        lowers = [z for z in records if below(z, a) and below(z, b)]
        greatest = [z for z in lowers if all(below(l, z) for l in lowers)]
        return greatest[0] if greatest else None

    joins = {}
    meets = {}
    for i, a in enumerate(records):
        for b in records[i + 1:]:
            j, m = join(a, b), meet(a, b)
            if j is None:
                return AxiomViolation("lattice", f"{_record_text(a)} and {_record_text(b)} have no join.", (a, b))
            if m is None:
                return AxiomViolation("lattice", f"{_record_text(a)} and {_record_text(b)} have no meet.", (a, b))
            joins[a, b] = j
            meets[a, b] = m

    bottom = min(records, key=lambda rec: rec.size)
    if any(not below(bottom, z) for z in records):
        return AxiomViolation("lattice", "The collection has no least element.")
    if bottom.rank != 0:
        return AxiomViolation("bottom", f"Bottom {_record_text(bottom)} must have rank 0.", (bottom,))

    for a in records:
        for b in records:
            if a is b or not below(a, b):
                continue
            if not 0 < b.rank - a.rank < b.size - a.size:
                return AxiomViolation(
                    "chain",
                    f"{_record_text(a)} inside {_record_text(b)}: need 0 < rank gap < size gap, "
                    f"got rank gap {b.rank - a.rank}, size gap {b.size - a.size}.",
                    (a, b),
                )

    for (a, b), j in joins.items():
        if below(a, b) or below(b, a):
            continue
        m = meets[a, b]
        excess = ((a.members & b.members) & ~m.members).bit_count()
        if a.rank + b.rank < j.rank + m.rank + excess:
            return AxiomViolation(
                "incomparable",
                f"{_record_text(a)} and {_record_text(b)}: {a.rank} + {b.rank} < "
                f"{j.rank} + {m.rank} + {excess}.",
                (a, b, j, m),
            )
    return None


class Matroid:
    """A matroid on `0..n-1`.

    Attributes:
        n: Ground-set size.
        kind: Backing in use: `"bases"`, `"cyclic_flats"` or `"uniform"`.
        labels: Parent element index of each element (identity for a root matroid).

    Example:
        ```python
        m = Matroid.from_bases(3, [[0, 1], [0, 2], [1, 2]])
        m.rank([0, 1, 2])      # 2
        m.cyclic_flats()       # [(0,0) {}, (3,2) {0,1,2}]
        ```
    """

    def __init__(self, n: int, kind: str, *, bases=None, records=None, uniform_rank=None, labels=None) -> None:
        """Use `from_bases`, `from_cyclic_flats` or `uniform` instead."""
        if n < 0:
            raise MatroidError(f"Ground-set size must be >= 0, got {n}.")
        if n > 64 and kind != "uniform":
            raise MatroidError(f"Explicit matroids need n <= 64, got {n}.")
        self.n = n
        self.kind = kind
        self._bases = bases
        self._records = records
        self._uniform_rank = uniform_rank
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise MatroidError(f"Expected {n} labels, got {len(self.labels)}.")
        self._rank_cache: dict[int, int] = {}

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Subset], *, check: bool = True,
                   basis_check_limit: int | None = None, labels=None) -> "Matroid":
        """Build a matroid from its bases.

        Args:
            n: Ground-set size.
            bases: The bases, as bitsets or element lists.
            check: Validate the input. Equal sizes are always checked; basis
                exchange is checked exhaustively when `n <= basis_check_limit`.
            basis_check_limit: Overrides `CYCLIC_TUTTE_BASIS_CHECK_LIMIT`.
            labels: Element correspondence to a parent matroid.

        Raises:
            MatroidError: If the bases are empty, of unequal sizes, out of
                range, or violate basis exchange.
        """
        masks = frozenset(_to_mask(b, n) for b in bases)
        if not masks:
            raise MatroidError("A matroid needs at least one basis.")
        sizes = {b.bit_count() for b in masks}
        if len(sizes) != 1:
            raise MatroidError(f"Bases must all have the same size, found sizes {sorted(sizes)}.")
        if check:
            limit = get_settings().basis_check_limit if basis_check_limit is None else basis_check_limit
            if n <= limit:
                _check_basis_exchange(masks)
            else:
                logger.info("Skipping basis-exchange check for n=%d > %d", n, limit)
        return cls(n, "bases", bases=masks, labels=labels)

    @classmethod
    def from_cyclic_flats(cls, n: int, records: Iterable[CyclicFlatRecord | tuple[Subset, int]], *,
                          check: bool = True, labels=None) -> "Matroid":
        """Build a matroid from its cyclic flats and their ranks.

        Args:
            n: Ground-set size.
            records: `CyclicFlatRecord`s or `(elements, rank)` pairs.
            check: Validate the cyclic-flat axioms.
            labels: Element correspondence to a parent matroid.

        Raises:
            MatroidError: If the presentation violates an axiom.
        """
        recs = []
        for rec in records:
            if not isinstance(rec, CyclicFlatRecord):
                members, rank = rec
                rec = CyclicFlatRecord.of(_to_mask(members, n), rank)
            recs.append(rec)
        recs = sorted(recs)
        if check:
            violation = validate_cyclic_flats_presentation(n, recs)
            if violation is not None:
                raise MatroidError(f"Cyclic-flat axiom '{violation.axiom}' violated: {violation.message}")
        return cls(n, "cyclic_flats", records=tuple(recs), labels=labels)

    @classmethod
    def uniform(cls, r: int, n: int, labels=None) -> "Matroid":
        """The uniform matroid U(r, n).

        Raises:
            MatroidError: Unless `0 <= r <= n`.
        """
        if not 0 <= r <= n:
            raise MatroidError(f"U(r, n) needs 0 <= r <= n, got r={r}, n={n}.")
        return cls(n, "uniform", uniform_rank=r, labels=labels)

    @classmethod
    def empty(cls) -> "Matroid":
        return cls.uniform(0, 0)

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_rank_cache"] = {}
        return state

    def __repr__(self) -> str:
        return f"Matroid(kind={self.kind!r}, n={self.n}, r={self.rank_of_matroid})"

    @property
    def ground(self) -> int:
        return bitset.full(self.n)

    @property
    def rank_of_matroid(self) -> int:
        return self.rank(self.ground)

    @property
    def bases(self) -> frozenset[int]:
        """All bases as bitsets (enumerated for non-basis backings)."""
        if self.kind == "bases":
            return self._bases
        r = self.rank_of_matroid
        return frozenset(b for b in bitset.k_subsets(self.ground, r) if self.rank(b) == r)

    def _mask(self, subset: Subset) -> int:
        return _to_mask(subset, self.n)

    def rank(self, subset: Subset) -> int:
        """Rank of a subset.

        Raises:
            MatroidError: If an element is out of range.
        """
        mask = self._mask(subset)
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        if self.kind == "uniform":
            value = min(mask.bit_count(), self._uniform_rank)
        elif self.kind == "bases":
            value = max((mask & b).bit_count() for b in self._bases)
        else:
            value = min(rec.rank + (mask & ~rec.members).bit_count() for rec in self._records)
        if len(self._rank_cache) < _RANK_CACHE_LIMIT:
            self._rank_cache[mask] = value
        return value

    def closure(self, subset: Subset) -> int:
        """All elements whose addition does not raise the rank."""
        mask = self._mask(subset)
        r = self.rank(mask)
        out = mask
        for e in range(self.n):
            bit = 1 << e
            if not mask & bit and self.rank(mask | bit) == r:
                out |= bit
        return out

    def is_flat(self, subset: Subset) -> bool:
        mask = self._mask(subset)
        return self.closure(mask) == mask

    def loops(self) -> int:
        return bitset.from_elements(e for e in range(self.n) if self.rank(1 << e) == 0)

    def coloops(self) -> int:
        r = self.rank_of_matroid
        return bitset.from_elements(e for e in range(self.n) if self.rank(self.ground & ~(1 << e)) < r)

    def flats(self, limit: int | None = None) -> list[int]:
        """Enumerate all flats by climbing covers from `cl(empty)`.

        Returns:
            Flats sorted by (rank, size, members).

        Raises:
            EnumerationLimitError: If `n` exceeds the flat limit.
        """
        limit = get_settings().flat_limit if limit is None else limit
        if self.n > limit:
            raise EnumerationLimitError("Flat enumeration", self.n, limit)
        start = self.closure(0)
        seen = {start}
        frontier = [start]
        while frontier:
            flat = frontier.pop()
            for e in range(self.n):
                if flat >> e & 1:
                    continue
                cover = self.closure(flat | 1 << e)
                if cover not in seen:
                    seen.add(cover)
                    frontier.append(cover)
        logger.debug("Enumerated %d flats on %d elements", len(seen), self.n)
        return sorted(seen, key=lambda f: (self.rank(f), f.bit_count(), bitset.sort_key(f)))

    def _coloops_of_restriction(self, flat: int) -> int:
        r = self.rank(flat)
        return bitset.from_elements(e for e in bitset.elements(flat) if self.rank(flat & ~(1 << e)) < r)

    def cyclic_flats(self, limit: int | None = None) -> list[CyclicFlatRecord]:
        """All cyclic flats with their labels, sorted by (rank, size, members).

        A presentation-backed matroid returns its presented records.

        Raises:
            EnumerationLimitError: If flats must be enumerated and `n` exceeds the limit.
        """
        if self.kind == "cyclic_flats":
            return list(self._records)
        if self.kind == "uniform":
            r = self._uniform_rank
            if r == 0:
                return [CyclicFlatRecord.of(self.ground, 0)]
            if r == self.n:
                return [CyclicFlatRecord.of(0, 0)]
            return [CyclicFlatRecord.of(0, 0), CyclicFlatRecord.of(self.ground, r)]
        records = [
            CyclicFlatRecord.of(f, self.rank(f))
            for f in self.flats(limit)
            if not self._coloops_of_restriction(f)
        ]
        return sorted(records)

    def ess(self, flat: Subset) -> int:
        """Largest cyclic flat inside `flat`: the flat minus the coloops of its restriction.

        Raises:
            MatroidError: If `flat` is not a flat.
        """
        mask = self._mask(flat)
        if self.closure(mask) != mask:
            raise MatroidError(f"{bitset.elements(mask)} is not a flat.")
        return mask & ~self._coloops_of_restriction(mask)

    def restrict(self, subset: Subset) -> "Matroid":
        """The restriction M|X, relabeled onto `0..|X|-1`."""
        mask = self._mask(subset)
        support = bitset.elements(mask)
        k = len(support)
        if self.kind == "uniform":
            return Matroid.uniform(min(self._uniform_rank, k), k, labels=support)
        rx = self.rank(mask)
        if self.kind == "bases":
            bases = {bitset.compress(b & mask, support) for b in self._bases if (b & mask).bit_count() == rx}
        else:
            bases = {bitset.compress(b, support) for b in bitset.k_subsets(mask, rx) if self.rank(b) == rx}
        return Matroid.from_bases(k, bases, check=False, labels=support)

    def contract(self, subset: Subset) -> "Matroid":
        """The contraction M/X, relabeled onto `0..n-|X|-1`."""
        mask = self._mask(subset)
        rest = self.ground & ~mask
        support = bitset.elements(rest)
        k = len(support)
        if self.kind == "uniform":
            r = self._uniform_rank
            return Matroid.uniform(r - min(mask.bit_count(), r), k, labels=support)
        rx = self.rank(mask)
        r = self.rank_of_matroid
        if self.kind == "bases":
            bases = {bitset.compress(b & rest, support) for b in self._bases if (b & mask).bit_count() == rx}
        else:
            bases = {bitset.compress(j, support) for j in bitset.k_subsets(rest, r - rx) if self.rank(j | mask) == r}
        return Matroid.from_bases(k, bases, check=False, labels=support)

    def dual(self) -> "Matroid":
        """The dual matroid on the same ground set."""
        if self.kind == "uniform":
            return Matroid.uniform(self.n - self._uniform_rank, self.n, labels=self.labels)
        if self.kind == "bases":
            return Matroid.from_bases(self.n, {self.ground & ~b for b in self._bases}, check=False, labels=self.labels)
        r = self.rank_of_matroid
        records = [
            CyclicFlatRecord.of(self.ground & ~rec.members, (self.n - rec.size) - r + rec.rank)
            for rec in self._records
        ]
        return Matroid.from_cyclic_flats(self.n, records, check=False, labels=self.labels)

    def from_parent(self, mask: int) -> int:
        """Translate a parent-indexed bitset into this matroid's indices."""
        return bitset.compress(mask, self.labels)

    def to_parent(self, mask: int) -> int:
        return bitset.expand(mask, self.labels)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        """Whether `e -> perm[e]` maps the matroid onto itself.

        Basis-backed matroids compare bases; other backings compare the
        cyclic flats with their ranks, which determine the matroid.
        """
        if sorted(perm) != list(range(self.n)):
            return False
        if self.kind == "uniform":
            return True
        if self.kind == "bases":
            return all(bitset.permute(b, perm) in self._bases for b in self._bases)
        records = set(self.cyclic_flats())
        return all(CyclicFlatRecord.of(bitset.permute(rec.members, perm), rec.rank) in records for rec in records)


def strip_loops_coloops(m: Matroid) -> tuple[Matroid, int, int]:
    """Remove loops and coloops.

    `S(M) = (x + 1)^ncoloops * (y + 1)^nloops * S(M')`, and every engine
    applies this factorization.

    Returns:
        `(M', nloops, ncoloops)`; `M'` is `m` itself when nothing is removed,
        otherwise the restriction to the remaining elements.
    """
    loops = m.loops()
    coloops = m.coloops()
    if not loops and not coloops:
        return m, 0, 0
    logger.debug("Stripping %d loops and %d coloops", loops.bit_count(), coloops.bit_count())
    return m.restrict(m.ground & ~loops & ~coloops), loops.bit_count(), coloops.bit_count()


def _to_mask(subset: Subset, n: int) -> int:
    if isinstance(subset, int):
        mask = subset
        if mask < 0:
            raise MatroidError(f"Negative bitset {mask}.")
    else:
        elems = list(subset)
        for e in elems:
            if not isinstance(e, int) or e < 0 or e >= n:
                raise MatroidError(f"Element {e!r} out of range 0..{n - 1}.")
        if len(set(elems)) != len(elems):
            raise MatroidError(f"Subset {elems} repeats an element.")
        mask = bitset.from_elements(elems)
    if mask >> n:
        raise MatroidError(f"Subset {bitset.elements(mask)} has elements outside 0..{n - 1}.")
    return mask


def _check_basis_exchange(bases: frozenset[int]) -> None:
    for b1 in bases:
        for b2 in bases:
            gain = bitset.elements(b2 & ~b1)
            for x in bitset.elements(b1 & ~b2):
                reduced = b1 & ~(1 << x)
                if not any(reduced | 1 << y in bases for y in gain):
                    raise MatroidError(
                        f"Basis exchange fails: removing {x} from {bitset.elements(b1)} "
                        f"admits no replacement from {bitset.elements(b2)}."
                    )
