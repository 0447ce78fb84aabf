"""The symmetric group acting on labels: centers, divisors, nested sets,
degeneration trees.

Permutations relabel index sets; component indices and expansion depths are
untouched.  The nestedness predicate is invariant (all its clauses are
boolean combinations of disjointness and containment of index sets), which
is the checkable shadow of equivariance of the whole construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .geometry import GeometryConfig
from .labels import Partition, elements
from .loci import Diagonal, DLocus
from .nested import (
    DTilde,
    DeltaTilde,
    NestedSet,
    divisor_sort_key,
    divisors_for,
    enumerate_nested_sets,
    make_nested_set,
)
from .trees import DegenerationTree


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; images[i-1] = image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("images %r are not a bijection of {1..%d}" % (self.images, len(self.images)))

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation "(1 2)(3 4)"; fixed points may be omitted."""
        images = list(range(1, n + 1))
        body = text.strip()
        if body in ("", "()", "id"):
            return cls(tuple(images))
        if body.count("(") != body.count(")"):
            raise ValueError("unbalanced cycle notation %r" % text)
        for chunk in body.replace(")", ")|").split("|"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if not (chunk.startswith("(") and chunk.endswith(")")):
                raise ValueError("bad cycle %r in %r" % (chunk, text))
            entries = [int(tok) for tok in chunk[1:-1].replace(",", " ").split()]
            if len(set(entries)) != len(entries):
                raise ValueError("repeated element in cycle %r" % chunk)
            for i in entries:
                if not 1 <= i <= n:
                    raise ValueError("cycle element %d outside {1..%d}" % (i, n))
            for a, b in zip(entries, entries[1:] + entries[:1]):
                images[a - 1] = b
        perm = cls(tuple(images))
        return perm

    def apply(self, i: int) -> int:
        return self.images[i - 1]

    def apply_mask(self, mask: int) -> int:
        out = 0
        for i in elements(mask):
            out |= 1 << (self.images[i - 1] - 1)
        return out

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("composing permutations of different degrees")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> str:
        seen = set()
        parts = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.apply(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.apply(j)
            if len(cyc) > 1:
                parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"

    def __str__(self):
        return self.cycles()


def all_permutations(n: int):
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def act(p: Permutation, x):
    """Relabel x by the permutation; x may be a center, a boundary divisor,
    a nested set, or a degeneration tree."""
    if isinstance(x, DLocus):
        if p.n != x.n:
            raise ValueError("permutation degree %d does not match population %d" % (p.n, x.n))
        return DLocus(x.n, x.component, p.apply_mask(x.subset))
    if isinstance(x, Diagonal):
        part = x.partition
        if p.n != part.n:
            raise ValueError("permutation degree %d does not match population %d" % (p.n, part.n))
        return Diagonal(Partition.from_blocks(part.n, [p.apply_mask(b) for b in part.blocks]))
    if isinstance(x, DTilde):
        if p.n != x.n:
            raise ValueError("permutation degree %d does not match population %d" % (p.n, x.n))
        return DTilde(x.n, x.component, p.apply_mask(x.subset))
    if isinstance(x, DeltaTilde):
        if p.n != x.n:
            raise ValueError("permutation degree %d does not match population %d" % (p.n, x.n))
        return DeltaTilde(x.n, p.apply_mask(x.subset))
    if isinstance(x, NestedSet):
        return make_nested_set(x.geometry, [act(p, d) for d in x.divisors])
    if isinstance(x, DegenerationTree):
        if p.n != x.geometry.n:
            raise ValueError("permutation degree %d does not match population %d" % (p.n, x.geometry.n))
        markings = [0] * p.n
        for i in range(1, p.n + 1):
            markings[p.apply(i) - 1] = x.markings[i - 1]
        return replace(x, markings=tuple(markings))
    raise TypeError("cannot act on %r" % (x,))


@dataclass(frozen=True)
class Orbit:
    representative: object
    size: int
    stabilizer_order: int


def _orbit_partition(items, n, key):
    items = sorted(items, key=key)
    index = {key(x): i for i, x in enumerate(items)}
    seen = [False] * len(items)
    perms = list(all_permutations(n))
    out = []
    for i, x in enumerate(items):
        if seen[i]:
            continue
        orbit_keys = {key(act(p, x)) for p in perms}
        for k in orbit_keys:
            seen[index[k]] = True
        out.append(Orbit(x, len(orbit_keys), len(perms) // len(orbit_keys)))
    return tuple(out)


def orbits(g: GeometryConfig, kind: str, size: int | None = None) -> tuple[Orbit, ...]:
    """Orbit representatives with orbit sizes, in canonical order.

    kind "divisors" partitions the boundary divisors; kind "nested" the
    nested sets of the given cardinality.  Sizes always divide n!.
    """
    if kind == "divisors":
        return _orbit_partition(divisors_for(g), g.n, divisor_sort_key)
    if kind == "nested":
        if size is None:
            raise ValueError("orbit kind 'nested' needs a size")
        items = [ns for ns in enumerate_nested_sets(g, max_size=size) if len(ns) == size]
        return _orbit_partition(items, g.n, lambda ns: tuple(divisor_sort_key(d) for d in ns.divisors))
    raise ValueError("unknown orbit kind %r" % kind)


def stabilizer(g: GeometryConfig, ns: NestedSet) -> tuple[Permutation, ...]:
    """The permutations fixing the nested set as a set of divisors.

    Orders here are tiny (subgroups of S_n for desk-scale n); any order
    below 60 forces solvability, which covers everything this module is
    asked to produce at n <= 4.
    """
    return tuple(p for p in all_permutations(g.n) if act(p, ns) == ns)


__all__ = [
    "Orbit",
    "Permutation",
    "act",
    "all_permutations",
    "orbits",
    "stabilizer",
]
