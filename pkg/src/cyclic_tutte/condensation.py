"""Condensations of the lattice of cyclic flats and the averaged cloud/flock engine.

A condensation is a partition P of the cyclic flats into blocks such that

1. size and rank are constant on each block, and
2. `A(B, C) = |{X in B : X <= Y}|` does not depend on the choice of Y in C.

The blocks with the matrix A form a `CondensedConfiguration`. `A(B, C) > 0`
is again a lattice order, and the rank generating polynomial is determined
by the block labels and A alone:

    S(M; x, y) = sum over blocks B of cloudC(B, top) * flockC(bottom, B)

where `cloudC` and `flockC` come from the cloud/flock recursion of
`cyclic_tutte.cloudflock` with the binomial terms weighted by A.

Condensations are obtained from automorphisms (`orbits_from_generators`),
by partition refinement (`coarsest_condensation`) or from user partitions
checked by `validate_condensation`.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

from cyclic_tutte import bitset
from cyclic_tutte.cloudflock import Pair, solve_intervals
from cyclic_tutte.configuration import Configuration, Label, extract_configuration
from cyclic_tutte.errors import CondensationError, NotRealizableError
from cyclic_tutte.matroid import Matroid, strip_loops_coloops
from cyclic_tutte.poly import BivarPoly, UnivarPoly, cross

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CondensedConfiguration:
    """Block labels and the count matrix A of a condensation.

    Blocks are stored along a linear extension of the block order, so A is
    upper triangular. Use `build` to sort arbitrary input.

    Attributes:
        labels: `(size, rank)` of each block.
        a: `a[b][c]` = number of members of block b below any one member of block c.

    Raises:
        CondensationError: If A is not square with unit diagonal and
            nonnegative integer entries, if `A > 0` is not a lattice order
            with a unique bottom labelled (0, 0) and a unique top, if A is
            not upper triangular, or if a strict relation does not increase
            both size and rank with rank gap smaller than size gap.
    """
    labels: tuple[Label, ...]
    a: tuple[tuple[int, ...], ...]
    _up: tuple[int, ...] = field(init=False, compare=False, repr=False)
    _down: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise CondensationError("A condensed configuration needs at least one block.")
        if len(self.a) != n or any(len(row) != n for row in self.a):
            raise CondensationError(f"A must be a {n} x {n} matrix to match the blocks.")
        for i, row in enumerate(self.a):
            for j, value in enumerate(row):
                if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                    raise CondensationError(f"A[{i}][{j}] = {value!r} is not a nonnegative integer.")
        up = tuple(bitset.from_elements(j for j in range(n) if self.a[i][j] > 0) for i in range(n))
        down = tuple(bitset.from_elements(i for i in range(n) if self.a[i][j] > 0) for j in range(n))
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_down", down)
        self._validate()

    @classmethod
    def build(cls, labels: Sequence[Label], a: Sequence[Sequence[int]]) -> "CondensedConfiguration":
        """Sort blocks by (rank, size, input position) and validate."""
        labels = [tuple(label) for label in labels]
        if len(a) != len(labels) or any(len(row) != len(labels) for row in a):
            raise CondensationError(f"A must be a {len(labels)} x {len(labels)} matrix to match the blocks.")
        order = sorted(range(len(labels)), key=lambda i: (labels[i][1], labels[i][0], i))
        return cls(
            labels=tuple(labels[i] for i in order),
            a=tuple(tuple(a[i][j] for j in order) for i in order),
        )

    def _validate(self) -> None:
        n = len(self.labels)
        for i in range(n):
            if self.a[i][i] != 1:
                raise CondensationError(f"A[{i}][{i}] must be 1, got {self.a[i][i]}.")
        for i in range(n):
            for j in bitset.elements(self._up[i] & ~(1 << i)):
                if j < i:
                    raise CondensationError(f"A is not upper triangular: A[{i}][{j}] = {self.a[i][j]}.")
                for k in bitset.elements(self._up[j]):
                    if not self._up[i] >> k & 1:
                        raise CondensationError(f"Block order is not transitive at ({i}, {j}, {k}).")
                (si, ri), (sj, rj) = self.labels[i], self.labels[j]
                if not (sj > si and rj > ri and rj - ri < sj - si):
                    raise CondensationError(
                        f"Block {i} {self.labels[i]} below block {j} {self.labels[j]} needs "
                        f"larger size and rank with rank gap < size gap."
                    )
        bottoms = [i for i in range(n) if self._up[i] == bitset.full(n)]
        tops = [j for j in range(n) if self._down[j] == bitset.full(n)]
        if len(bottoms) != 1 or len(tops) != 1:
            raise CondensationError("The block order needs a unique bottom and a unique top.")
        if self.labels[bottoms[0]] != (0, 0):
            raise CondensationError(f"Bottom block must be labelled (0, 0), got {self.labels[bottoms[0]]}.")
        for i in range(n):
            for j in range(i + 1, n):
                if self.join(i, j) is None or self.meet(i, j) is None:
                    raise CondensationError(f"Blocks {i} and {j} have no unique join or meet: not a lattice.")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self) - 1

    def le(self, i: int, j: int) -> bool:
        return self.a[i][j] > 0

    def comparable_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self)) for j in bitset.elements(self._up[i])]

    def open_interval(self, lo: int, hi: int) -> list[int]:
        return bitset.elements(self._up[lo] & self._down[hi] & ~(1 << lo) & ~(1 << hi))

    def join(self, i: int, j: int) -> int | None:
        uppers = self._up[i] & self._up[j]
        least = [k for k in bitset.elements(uppers) if self._up[k] & uppers == uppers]
        return least[0] if len(least) == 1 else None

    def meet(self, i: int, j: int) -> int | None:
        lowers = self._down[i] & self._down[j]
        greatest = [k for k in bitset.elements(lowers) if self._down[k] & lowers == lowers]
        return greatest[0] if len(greatest) == 1 else None

    def is_isolated(self, i: int) -> bool:
        """Whether block `i` is comparable with the bottom and top only."""
        return self._up[i] == (1 << i | 1 << self.top) and self._down[i] == (1 << i | 1 << self.bottom)

    def remove_block(self, i: int) -> "CondensedConfiguration":
        """Drop an isolated block, giving the condensed configuration of a new matroid.

        Removing a block that no other nontrivial block lies above or below
        keeps the cyclic-flat axioms intact; the result is validated again.

        Raises:
            CondensationError: If `i` is the bottom, the top, or comparable
                with another block.
        """
        if i in (self.bottom, self.top) or not 0 <= i < len(self):
            raise CondensationError(f"Block {i} cannot be removed: only interior blocks can.")
        if not self.is_isolated(i):
            raise CondensationError(f"Block {i} {self.labels[i]} is comparable with other interior blocks.")
        keep = [b for b in range(len(self)) if b != i]
        return CondensedConfiguration(
            labels=tuple(self.labels[b] for b in keep),
            a=tuple(tuple(self.a[b][c] for c in keep) for b in keep),
        )


@dataclass(frozen=True)
class CondensationViolation:
    """Why a partition is not a condensation.

    Attributes:
        condition: `"partition"`, `"label"` or `"count"`.
        message: Human-readable explanation.
        witnesses: Offending node or block indices.
    """
    condition: str
    message: str
    witnesses: tuple = ()


def validate_condensation(c: Configuration, partition: Sequence[Sequence[int]]) -> CondensationViolation | None:
    """Check that `partition` of the nodes of `c` is a condensation.

    Returns:
        None if it is, otherwise the first violated condition with witnesses:
        two nodes with different labels in one block, or a block pair
        `(B, C)` with two members of C that see different counts from B.
    """
    n = len(c)
    seen = [node for block in partition for node in block]
    if sorted(seen) != list(range(n)) or any(not block for block in partition):
        return CondensationViolation("partition", f"Blocks must partition the {n} nodes into nonempty parts.")
    for b, block in enumerate(partition):
        first = block[0]
        for node in block[1:]:
            if c.labels[node] != c.labels[first]:
                return CondensationViolation(
                    "label",
                    f"Block {b} mixes labels {c.labels[first]} and {c.labels[node]}.",
                    (b, first, node),
                )
    masks = [bitset.from_elements(block) for block in partition]
    for b, mask in enumerate(masks):
        for cb, block in enumerate(partition):
            counts = [(mask & c.down_set(y)).bit_count() for y in block]
            for y, count in zip(block[1:], counts[1:]):
                if count != counts[0]:
                    return CondensationViolation(
                        "count",
                        f"Nodes {block[0]} and {y} of block {cb} lie above {counts[0]} and {count} "
                        f"members of block {b}.",
                        (b, cb, block[0], y),
                    )
    return None


@dataclass(frozen=True)
class Condensation:
    """A verified condensation of a configuration.

    Attributes:
        configuration: The source configuration.
        blocks: Node indices of each block, in the order of `condensed`.
        condensed: Block labels and count matrix.
    """
    configuration: Configuration
    blocks: tuple[tuple[int, ...], ...]
    condensed: CondensedConfiguration

    @classmethod
    def from_partition(cls, c: Configuration, partition: Sequence[Sequence[int]]) -> "Condensation":
        """Verify `partition` and compute its count matrix.

        Raises:
            CondensationError: If the partition fails a condition.
        """
        violation = validate_condensation(c, partition)
        if violation is not None:
            raise CondensationError(f"Condensation condition '{violation.condition}' violated: {violation.message}")
        blocks = sorted(
            (tuple(sorted(block)) for block in partition),
            key=lambda block: (c.labels[block[0]][1], c.labels[block[0]][0], block[0]),
        )
        masks = [bitset.from_elements(block) for block in blocks]
        a = tuple(
            tuple((masks[b] & c.down_set(blocks[cb][0])).bit_count() for cb in range(len(blocks)))
            for b in range(len(blocks))
        )
        condensed = CondensedConfiguration(labels=tuple(c.labels[block[0]] for block in blocks), a=a)
        return cls(configuration=c, blocks=tuple(blocks), condensed=condensed)

    def representative(self, b: int) -> int:
        """Node of block `b` whose cyclic flat is lexicographically smallest."""
        members = self.configuration.members
        if members is None:
            return self.blocks[b][0]
        return min(self.blocks[b], key=lambda node: bitset.sort_key(members[node]))

    def block_of(self, node: int) -> int:
        return next(b for b, block in enumerate(self.blocks) if node in block)

    def refines(self, other: "Condensation") -> bool:
        """Whether every block of `self` lies inside a block of `other`."""
        return all(any(set(block) <= set(big) for big in other.blocks) for block in self.blocks)

    def is_trivial(self) -> bool:
        return all(len(block) == 1 for block in self.blocks)


def trivial_condensation(c: Configuration) -> Condensation:
    """Every node in its own block; A is the zeta matrix of the lattice."""
    return Condensation.from_partition(c, [[node] for node in range(len(c))])


def _configuration_of(source: Configuration | Matroid, limit: int | None) -> Configuration:
    if isinstance(source, Configuration):
        return source
    return extract_configuration(source, limit=limit)


def orbits_from_generators(m: Matroid, generators: Sequence[Sequence[int]], *,
                           limit: int | None = None) -> Condensation:
    """Partition the cyclic flats of `m` into orbits of the group generated by `generators`.

    Loops and coloops are stripped first; automorphisms preserve both sets.

    Args:
        m: The matroid.
        generators: Permutations of `0..n-1` as image lists.
        limit: Flat enumeration bound.

    Raises:
        CondensationError: If a generator is not an automorphism of `m`, or
            the orbit partition fails verification.
    """
    for g, perm in enumerate(generators):
        if len(perm) != m.n or not m.is_automorphism(perm):
            raise CondensationError(f"Generator {g} is not an automorphism of the matroid.")
    stripped, _, _ = strip_loops_coloops(m)
    support = list(stripped.labels) if stripped is not m else list(range(m.n))
    position = {e: i for i, e in enumerate(support)}
    perms = [[position[perm[e]] for e in support] for perm in generators]
    c = extract_configuration(stripped, limit=limit)
    node_of = {member: node for node, member in enumerate(c.members)}
    unassigned = set(range(len(c)))
    partition = []
    while unassigned:
        start = min(unassigned)
        orbit = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for perm in perms:
                image = node_of.get(bitset.permute(c.members[node], perm))
                if image is None:
                    raise CondensationError(f"A generator maps cyclic flat {bitset.elements(c.members[node])} off the lattice.")
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        unassigned -= orbit
        partition.append(sorted(orbit))
    logger.debug("%d generators give %d orbits on %d cyclic flats", len(perms), len(partition), len(c))
    return Condensation.from_partition(c, partition)


def coarsest_condensation(source: Configuration | Matroid, *, limit: int | None = None) -> Condensation:
    """The unique coarsest condensation, by partition refinement.

    Starts from the blocks of equal `(size, rank)` and splits each block by
    the vector of counts of members of every current block lying below it,
    until no block splits. The fixpoint is verified before it is returned.

    Raises:
        CondensationError: If the fixpoint fails verification.
    """
    c = _configuration_of(source, limit)
    by_label: dict[Label, list[int]] = {}
    for node, label in enumerate(c.labels):
        by_label.setdefault(label, []).append(node)
    blocks = [by_label[label] for label in sorted(by_label, key=lambda lab: (lab[1], lab[0]))]
    rounds = 0
    while True:
        rounds += 1
        masks = [bitset.from_elements(block) for block in blocks]
        refined = []
        for block in blocks:
            groups: dict[tuple[int, ...], list[int]] = {}
            for y in block:
                signature = tuple((mask & c.down_set(y)).bit_count() for mask in masks)
                groups.setdefault(signature, []).append(y)
            refined.extend(groups[sig] for sig in sorted(groups))
        if len(refined) == len(blocks):
            break
        blocks = refined
    logger.debug("Refinement stable after %d rounds with %d blocks", rounds, len(blocks))
    try:
        return Condensation.from_partition(c, blocks)
    except CondensationError as e:
        raise CondensationError(f"Refinement fixpoint failed verification: {e}") from e


@dataclass(frozen=True)
class AvgCloudFlockTable:
    """Averaged cloud and flock polynomials for every comparable block pair.

    Attributes:
        condensed: The source condensed configuration.
        table: `(cloudC, flockC)` of each comparable block pair.
        problems: Negative-coefficient intervals found in collecting mode.
    """
    condensed: CondensedConfiguration
    table: dict[tuple[int, int], Pair]
    problems: tuple[NotRealizableError, ...] = ()

    def cloud(self, b: int, c: int) -> UnivarPoly:
        return self.table[b, c][0]

    def flock(self, b: int, c: int) -> UnivarPoly:
        return self.table[b, c][1]

    def rgp(self) -> BivarPoly:
        top, bottom = self.condensed.top, self.condensed.bottom
        total = BivarPoly.zero()
        for b in range(len(self.condensed)):
            total = total + cross(self.cloud(b, top), self.flock(bottom, b))
        return total


def avg_cloud_flock(cc: CondensedConfiguration, *, strict: bool = True) -> AvgCloudFlockTable:
    """Averaged cloud/flock polynomials of every comparable block pair.

    Args:
        cc: The condensed configuration.
        strict: Raise at the first negative coefficient; otherwise collect
            them all in `problems`.

    Raises:
        NotRealizableError: In strict mode, if no matroid realizes `cc`.
    """
    table, problems = solve_intervals(cc, cc.labels, lambda b, c: cc.a[b][c], strict=strict)
    return AvgCloudFlockTable(condensed=cc, table=table, problems=tuple(problems))


def rgp_from_condensed(cc: CondensedConfiguration) -> BivarPoly:
    """S(M; x, y) for any matroid (loop- and coloop-free) realizing `cc`."""
    return avg_cloud_flock(cc).rgp()
