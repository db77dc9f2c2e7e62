"""The configuration of a matroid: its lattice of cyclic flats, abstracted.

A `Configuration` keeps only the order relation between cyclic flats and the
`(size, rank)` label of each one. Nodes are stored in a canonical order so
that two matroids with the same configuration produce equal objects (and
byte-identical files); see `Configuration.build`.

`interval(C, lo, hi)` views the interval `[lo, hi]` with labels shifted by
the label of `lo`. For cyclic flats X inside Y this is the configuration of
the minor M|Y/X.

See Also:
    `cyclic_tutte.cloudflock`: Computes the rank generating polynomial from a Configuration.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from cyclic_tutte import bitset
from cyclic_tutte.errors import ConfigurationError
from cyclic_tutte.matroid import Matroid

logger = logging.getLogger(__name__)

Label = tuple[int, int]


def _transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Return the up-set bitmask of every node of the reflexive-transitive closure."""
    up = [1 << i for i in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise ConfigurationError(f"Order pair ({i}, {j}) refers to a missing node.")
        up[i] |= 1 << j
    changed = True
    while changed:
        changed = False
        for i in range(n):
            grown = up[i]
            for j in bitset.elements(up[i]):
                grown |= up[j]
            if grown != up[i]:
                up[i] = grown
                changed = True
    return up


def _swap_bits(mask: int, i: int, j: int) -> int:
    if (mask >> i & 1) != (mask >> j & 1):
        mask ^= (1 << i) | (1 << j)
    return mask


def _swap_preserves_order(up: Sequence[int], i: int, j: int) -> bool:
    """Whether exchanging nodes i and j is an automorphism of the order."""
    image = {i: j, j: i}
    return all(_swap_bits(up[k], i, j) == up[image.get(k, k)] for k in range(len(up)))


def _canonical_order(labels: Sequence[Label], up: Sequence[int], down: Sequence[int]) -> list[int]:
    """Order nodes by (rank, size) refined by iterated down/up-set signatures."""
    n = len(labels)
    keys = [(rank, size) for size, rank in labels]
    distinct = sorted(set(keys))
    colors = [distinct.index(k) for k in keys]
    for _ in range(n):
        sigs = [
            (
                colors[i],
                tuple(sorted(colors[d] for d in bitset.elements(down[i] & ~(1 << i)))),
                tuple(sorted(colors[u] for u in bitset.elements(up[i] & ~(1 << i)))),
            )
            for i in range(n)
        ]
        distinct_sigs = sorted(set(sigs))
        refined = [distinct_sigs.index(s) for s in sigs]
        if len(distinct_sigs) == len(set(colors)):
            colors = refined
            break
        colors = refined
    ambiguous = []
    for color in sorted(set(colors)):
        tied = [i for i in range(n) if colors[i] == color]
        if any(not _swap_preserves_order(up, tied[0], j) for j in tied[1:]):
            ambiguous.append(tied)
    if ambiguous:
        logger.warning(
            "Canonical order is not unique: tied nodes %s are not interchangeable, "
            "so the node order follows the input order.", ambiguous,
        )
    return sorted(range(n), key=lambda i: (colors[i], i))


@dataclass(frozen=True)
class Configuration:
    """Abstract lattice of cyclic flats with `(size, rank)` labels.

    Attributes:
        labels: `(size, rank)` of each node.
        leq: Dense reflexive order relation; `leq[i][j]` means node i lies below node j.
        members: Optional source cyclic flats as bitsets, aligned with `labels`.
            Ignored by equality.

    Raises:
        ConfigurationError: If the relation is not a partial order and a
            lattice, if the bottom is not labelled (0, 0), or if a strict
            relation does not increase both size and rank with rank gap
            smaller than size gap.
    """
    labels: tuple[Label, ...]
    leq: tuple[tuple[bool, ...], ...]
    members: tuple[int, ...] | None = field(default=None, compare=False, repr=False)
    _up: tuple[int, ...] = field(init=False, compare=False, repr=False)
    _down: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise ConfigurationError("A configuration needs at least one node.")
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise ConfigurationError("Order relation must be an n x n matrix.")
        if self.members is not None and len(self.members) != n:
            raise ConfigurationError("members must align with labels.")
        up = tuple(bitset.from_elements(j for j in range(n) if self.leq[i][j]) for i in range(n))
        down = tuple(bitset.from_elements(i for i in range(n) if self.leq[i][j]) for j in range(n))
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_down", down)
        self._validate()

    @classmethod
    def build(cls, labels: Sequence[Label], pairs: Iterable[tuple[int, int]],
              members: Sequence[int] | None = None) -> "Configuration":
        """Build a configuration in canonical node order.

        Args:
            labels: `(size, rank)` per node.
            pairs: Any generating set of the order (covering pairs suffice);
                the reflexive-transitive closure is taken.
            members: Optional source cyclic flats aligned with `labels`.

        Returns:
            A validated `Configuration` whose nodes are sorted by rank, size
            and iterated down/up-set signatures.
        """
        labels = [tuple(label) for label in labels]
        n = len(labels)
        up = _transitive_closure(n, pairs)
        for i in range(n):
            for j in bitset.elements(up[i]):
                if i != j and up[j] >> i & 1:
                    raise ConfigurationError(f"Nodes {i} and {j} lie below each other: not a partial order.")
        down = [bitset.from_elements(i for i in range(n) if up[i] >> j & 1) for j in range(n)]
        order = _canonical_order(labels, up, down)
        leq = tuple(
            tuple(bool(up[order[a]] >> order[b] & 1) for b in range(n))
            for a in range(n)
        )
        new_members = tuple(members[old] for old in order) if members is not None else None
        return cls(labels=tuple(labels[old] for old in order), leq=leq, members=new_members)

    def _validate(self) -> None:
        n = len(self.labels)
        for i in range(n):
            if not self.leq[i][i]:
                raise ConfigurationError(f"Order relation is not reflexive at node {i}.")
        bottoms = [i for i in range(n) if self._up[i] == bitset.full(n)]
        tops = [j for j in range(n) if self._down[j] == bitset.full(n)]
        if len(bottoms) != 1:
            raise ConfigurationError("A configuration needs a unique bottom node.")
        if len(tops) != 1:
            raise ConfigurationError("A configuration needs a unique top node.")
        if self.labels[bottoms[0]] != (0, 0):
            raise ConfigurationError(f"Bottom must be labelled (0, 0), got {self.labels[bottoms[0]]}.")
        for i in range(n):
            for j in bitset.elements(self._up[i] & ~(1 << i)):
                if self._up[j] >> i & 1:
                    raise ConfigurationError(f"Nodes {i} and {j} lie below each other: not a partial order.")
                for k in bitset.elements(self._up[j]):
                    if not self._up[i] >> k & 1:
                        raise ConfigurationError(f"Order relation is not transitive at ({i}, {j}, {k}).")
                (si, ri), (sj, rj) = self.labels[i], self.labels[j]
                if not (sj > si and rj > ri and rj - ri < sj - si):
                    raise ConfigurationError(
                        f"Node {i} {self.labels[i]} below node {j} {self.labels[j]} needs "
                        f"larger size and rank with rank gap < size gap."
                    )
        for i in range(n):
            for j in range(i + 1, n):
                if self.join(i, j) is None or self.meet(i, j) is None:
                    raise ConfigurationError(f"Nodes {i} and {j} have no unique join or meet: not a lattice.")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def bottom(self) -> int:
        return next(i for i in range(len(self)) if self._up[i] == bitset.full(len(self)))

    @property
    def top(self) -> int:
        return next(j for j in range(len(self)) if self._down[j] == bitset.full(len(self)))

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def up_set(self, i: int) -> int:
        return self._up[i]

    def down_set(self, j: int) -> int:
        return self._down[j]

    def open_interval(self, lo: int, hi: int) -> list[int]:
        """Nodes strictly between `lo` and `hi`."""
        return bitset.elements(self._up[lo] & self._down[hi] & ~(1 << lo) & ~(1 << hi))

    def comparable_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self)) for j in bitset.elements(self._up[i])]

    def join(self, i: int, j: int) -> int | None:
        uppers = self._up[i] & self._up[j]
        least = [k for k in bitset.elements(uppers) if self._up[k] & uppers == uppers]
        return least[0] if len(least) == 1 else None

    def meet(self, i: int, j: int) -> int | None:
        lowers = self._down[i] & self._down[j]
        greatest = [k for k in bitset.elements(lowers) if self._down[k] & lowers == lowers]
        return greatest[0] if len(greatest) == 1 else None

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (the Hasse diagram), sorted."""
        return [
            (i, j)
            for i, j in self.comparable_pairs()
            if i != j and not self.open_interval(i, j)
        ]

    def isomorphic(self, other: "Configuration") -> bool:
        """Decide label-preserving lattice isomorphism by backtracking.

        Meant for small lattices (tests and spot checks).
        """
        n = len(self)
        if n != len(other) or sorted(self.labels) != sorted(other.labels):
            return False

        def profile(c: "Configuration", i: int):
            return (c.labels[i], c._up[i].bit_count(), c._down[i].bit_count())

        candidates = [
            [j for j in range(n) if profile(other, j) == profile(self, i)]
            for i in range(n)
        ]
        image = [-1] * n
        used = [False] * n

        def extend(i: int) -> bool:
            if i == n:
                return True
            for j in candidates[i]:
                if used[j]:
                    continue
                if all(
                    self.leq[i][k] == other.leq[j][image[k]] and self.leq[k][i] == other.leq[image[k]][j]
                    for k in range(i)
                ):
                    image[i], used[j] = j, True
                    if extend(i + 1):
                        return True
                    image[i], used[j] = -1, False
            return False

        return extend(0)


@dataclass(frozen=True)
class IntervalView:
    """The interval `[lo, hi]` of a configuration with shifted labels.

    Attributes:
        source: The configuration viewed.
        lo: Bottom node of the interval.
        hi: Top node of the interval.
        nodes: Source indices of the interval's nodes, increasing.
    """
    source: Configuration
    lo: int
    hi: int
    nodes: tuple[int, ...]

    @property
    def labels(self) -> tuple[Label, ...]:
        s0, r0 = self.source.labels[self.lo]
        return tuple((s - s0, r - r0) for s, r in (self.source.labels[i] for i in self.nodes))

    def as_configuration(self) -> Configuration:
        """The interval as a configuration in its own right (the minor M|hi/lo)."""
        position = {node: k for k, node in enumerate(self.nodes)}
        pairs = [
            (position[a], position[b])
            for a in self.nodes
            for b in self.nodes
            if self.source.leq[a][b]
        ]
        members = None
        if self.source.members is not None:
            base = self.source.members[self.lo]
            support = bitset.elements(self.source.members[self.hi] & ~base)
            members = [bitset.compress(self.source.members[i] & ~base, support) for i in self.nodes]
        return Configuration.build(self.labels, pairs, members)


def interval(c: Configuration, lo: int, hi: int) -> IntervalView:
    """View `[lo, hi]` of `c` with labels shifted by the label of `lo`.

    Raises:
        ConfigurationError: If `lo` is not below `hi`.
    """
    if not (0 <= lo < len(c) and 0 <= hi < len(c)) or not c.leq[lo][hi]:
        raise ConfigurationError(f"Node {lo} does not lie below node {hi}.")
    nodes = tuple(bitset.elements(c.up_set(lo) & c.down_set(hi)))
    return IntervalView(source=c, lo=lo, hi=hi, nodes=nodes)


def extract_configuration(m: Matroid, *, limit: int | None = None) -> Configuration:
    """The configuration of a loop- and coloop-free matroid.

    Nodes carry the source cyclic flats in `members`.

    Raises:
        ConfigurationError: If `m` has loops or coloops (strip them first).
        EnumerationLimitError: If the cyclic flats cannot be enumerated.
    """
    if m.loops() or m.coloops():
        raise ConfigurationError("Matroid has loops or coloops; apply strip_loops_coloops first.")
    records = m.cyclic_flats(limit)
    pairs = [
        (i, j)
        for i, a in enumerate(records)
        for j, b in enumerate(records)
        if a.members & ~b.members == 0
    ]
    logger.debug("Configuration with %d cyclic flats", len(records))
    return Configuration.build([rec.label for rec in records], pairs, [rec.members for rec in records])
