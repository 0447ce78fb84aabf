"""Boundary divisors, the closed-form nestedness criterion, and the
nested-set complex.

The boundary of the compactified space is a union of divisors: a transform
of D_{c,S} for every component c and nonempty S, plus (in the space of
distinct points) a transform of every simple diagonal, |I| >= 2.  A
collection of boundary divisors has nonempty intersection exactly when it is
nested, and nestedness is a pairwise condition:

* two D-divisors with different components need disjoint index sets; with
  the same component one index set must contain the other;
* two diagonal divisors need disjoint or nested index sets;
* a D-divisor and a diagonal divisor need S and I disjoint, or I inside S.

The non-trivial half of the mixed case (S meets I but I escapes S implies
the transforms are disjoint) is certified constructively: the ambient
intersection sits inside the blowup center D_{c, S union I}, which is
strictly contained in D_{c,S}, and blowing up such a center separates the
transforms.

Pairwise-ness makes the complex of nested sets downward closed, so it is
enumerated by a depth-first search that only ever extends by compatible
divisors.  Counting functions count nested sets; whether distinct nested
sets can cut out one and the same stratum is left open here, deliberately.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .geometry import GeometryConfig, Space
from .labels import format_subset, full_mask, parse_subset, subset_key, subset_relation, subsets, SubsetRelation
from .loci import (
    Center,
    Diagonal,
    DLocus,
    SeparationCertificate,
    check_separation,
)

ENUMERATION_DIVISOR_BOUND = 40


class BudgetError(RuntimeError):
    """Exhaustive enumeration refused; the offending bound is named."""


@dataclass(frozen=True)
class DTilde:
    """Boundary divisor covering D_{c,S}."""

    n: int
    component: int
    subset: int

    def __post_init__(self):
        if self.subset == 0:
            raise ValueError("a D-divisor needs a nonempty index set")
        if self.subset & ~full_mask(self.n):
            raise ValueError("index set exceeds population %d" % self.n)

    def __str__(self):
        return "D:c%d:%s" % (self.component, format_subset(self.subset))


@dataclass(frozen=True)
class DeltaTilde:
    """Boundary divisor covering the simple diagonal of I, |I| >= 2."""

    n: int
    subset: int

    def __post_init__(self):
        if self.subset.bit_count() < 2:
            raise ValueError("a diagonal divisor needs |I| >= 2")
        if self.subset & ~full_mask(self.n):
            raise ValueError("index set exceeds population %d" % self.n)

    def __str__(self):
        return "Delta:" + format_subset(self.subset)


BoundaryDivisor = DTilde | DeltaTilde


def parse_divisor(text: str, n: int) -> BoundaryDivisor:
    t = text.strip()
    if t.startswith("D:"):
        head, sep, subset_text = t[2:].partition(":")
        if not sep or not head.startswith("c"):
            raise ValueError("bad divisor label %r" % text)
        return DTilde(n, int(head[1:]), parse_subset(subset_text))
    if t.startswith("Delta:"):
        return DeltaTilde(n, parse_subset(t[len("Delta:"):]))
    raise ValueError("divisor label must start with 'D:' or 'Delta:', got %r" % text)


def divisor_sort_key(d: BoundaryDivisor) -> tuple:
    if isinstance(d, DTilde):
        return (0, d.component, subset_key(d.subset))
    return (1, 0, subset_key(d.subset))


def divisor_to_center(d: BoundaryDivisor) -> Center:
    if isinstance(d, DTilde):
        return DLocus(d.n, d.component, d.subset)
    return Diagonal.simple(d.n, d.subset)


def validate_divisor(g: GeometryConfig, d: BoundaryDivisor) -> BoundaryDivisor:
    if d.n != g.n:
        raise ValueError("divisor population %d does not match n=%d" % (d.n, g.n))
    if isinstance(d, DTilde):
        if not 1 <= d.component <= g.n_components:
            raise ValueError("divisor %s references a missing component" % d)
    elif g.space is Space.XD_UPPER:
        raise ValueError("diagonal divisors do not exist in the colliding-points space")
    return d


def divisors_for(g: GeometryConfig) -> tuple[BoundaryDivisor, ...]:
    """All boundary divisors of the configured space, canonically ordered."""
    out: list[BoundaryDivisor] = []
    if g.space is not Space.FM:
        for c in range(1, g.n_components + 1):
            for mask in subsets(g.n, min_size=1):
                out.append(DTilde(g.n, c, mask))
    if g.space is not Space.XD_UPPER:
        for mask in subsets(g.n, min_size=2):
            out.append(DeltaTilde(g.n, mask))
    out.sort(key=divisor_sort_key)
    return tuple(out)


def count_divisors(g: GeometryConfig) -> int:
    """#components * (2^n - 1) D-divisors plus, with distinct points, 2^n - n - 1
    diagonal divisors."""
    d_part = g.n_components * ((1 << g.n) - 1) if g.space is not Space.FM else 0
    delta_part = (1 << g.n) - g.n - 1 if g.space is not Space.XD_UPPER else 0
    return d_part + delta_part


def pair_compatible(a: BoundaryDivisor, b: BoundaryDivisor) -> bool:
    """The pairwise nestedness criterion; see the module docstring."""
    if isinstance(a, DTilde) and isinstance(b, DTilde):
        rel = subset_relation(a.subset, b.subset)
        if a.component != b.component:
            return rel is SubsetRelation.DISJOINT
        return rel in (SubsetRelation.A_IN_B, SubsetRelation.B_IN_A)
    if isinstance(a, DeltaTilde) and isinstance(b, DeltaTilde):
        return subset_relation(a.subset, b.subset) in (
            SubsetRelation.DISJOINT,
            SubsetRelation.A_IN_B,
            SubsetRelation.B_IN_A,
        )
    if isinstance(a, DeltaTilde):
        a, b = b, a
    rel = subset_relation(a.subset, b.subset)  # a = D-divisor, b = diagonal
    return rel in (SubsetRelation.DISJOINT, SubsetRelation.B_IN_A, SubsetRelation.EQUAL)


def is_nested(g: GeometryConfig, divisors) -> bool:
    """Nonempty intersection criterion for a set of boundary divisors."""
    ds = list(dict.fromkeys(divisors))
    for d in ds:
        validate_divisor(g, d)
    return all(pair_compatible(ds[i], ds[j]) for i in range(len(ds)) for j in range(i + 1, len(ds)))


@dataclass(frozen=True)
class NestedSet:
    """A nested collection of boundary divisors; the constructor enforces the
    pairwise criterion."""

    geometry: GeometryConfig
    divisors: tuple[BoundaryDivisor, ...]

    def __post_init__(self):
        ordered = tuple(sorted(set(self.divisors), key=divisor_sort_key))
        if ordered != self.divisors:
            raise ValueError("divisors must be canonically sorted and distinct")
        if not is_nested(self.geometry, self.divisors):
            raise ValueError("collection is not nested")

    def labels(self) -> tuple[str, ...]:
        return tuple(str(d) for d in self.divisors)

    def __len__(self):
        return len(self.divisors)


def make_nested_set(g: GeometryConfig, divisors) -> NestedSet:
    return NestedSet(g, tuple(sorted(set(divisors), key=divisor_sort_key)))


def _enumerate_from(g, divisors, prefix, start, max_size, out):
    if max_size is not None and len(prefix) >= max_size:
        return
    for i in range(start, len(divisors)):
        cand = divisors[i]
        if all(pair_compatible(d, cand) for d in prefix):
            chosen = prefix + [cand]
            out.append(NestedSet(g, tuple(chosen)))
            _enumerate_from(g, divisors, chosen, i + 1, max_size, out)


def enumerate_nested_sets(
    g: GeometryConfig,
    max_size: int | None = None,
    workers: int = 1,
    divisor_bound: int | None = None,
) -> tuple[NestedSet, ...]:
    """Every nested set (the empty one included) up to ``max_size``, in a
    deterministic order.

    The search prunes by pairwise compatibility, which is exact because the
    complex is downward closed.  With several workers the tree is split by
    first divisor and merged back in canonical order, so the output does not
    depend on the worker count.  Exhaustive enumeration over more than
    ENUMERATION_DIVISOR_BOUND divisors is refused unless max_size <= 2; a
    caller that knows better may raise ``divisor_bound`` explicitly (the
    command line interface never does).
    """
    divisors = divisors_for(g)
    bound = ENUMERATION_DIVISOR_BOUND if divisor_bound is None else divisor_bound
    if len(divisors) > bound and (max_size is None or max_size > 2):
        raise BudgetError(
            "refusing exhaustive enumeration over %d divisors"
            " (bound %d exceeded and max_size not <= 2)" % (len(divisors), bound)
        )
    results: tuple[list[NestedSet], ...] = tuple([] for _ in divisors)
    empty = NestedSet(g, ())

    def run_first(i: int):
        if max_size is not None and max_size < 1:
            return
        chosen = [divisors[i]]
        results[i].append(NestedSet(g, tuple(chosen)))
        _enumerate_from(g, divisors, chosen, i + 1, max_size, results[i])

    if workers <= 1 or not divisors:
        for i in range(len(divisors)):
            run_first(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run_first, range(len(divisors))))
    out = [empty]
    for chunk in results:
        out.extend(chunk)
    return tuple(out)


def f_vector(g: GeometryConfig, workers: int = 1, divisor_bound: int | None = None) -> tuple[int, ...]:
    """Face counts of the nested-set complex by cardinality, starting with the
    empty set."""
    counts: dict[int, int] = {}
    for ns in enumerate_nested_sets(g, workers=workers, divisor_bound=divisor_bound):
        counts[len(ns)] = counts.get(len(ns), 0) + 1
    return tuple(counts.get(k, 0) for k in range(max(counts) + 1))


def maximal_nested_sets(
    g: GeometryConfig, workers: int = 1, divisor_bound: int | None = None
) -> tuple[NestedSet, ...]:
    """Nested sets maximal under inclusion.  Pairwise-ness makes maximality a
    local test: no single further divisor stays compatible."""
    divisors = divisors_for(g)
    out = []
    for ns in enumerate_nested_sets(g, workers=workers, divisor_bound=divisor_bound):
        chosen = set(ns.divisors)
        extendable = any(
            d not in chosen and all(pair_compatible(d, e) for e in ns.divisors)
            for d in divisors
        )
        if not extendable:
            out.append(ns)
    return tuple(out)


def mixed_pair_certificate(g: GeometryConfig, d: DTilde, delta: DeltaTilde) -> SeparationCertificate:
    """Constructive disjointness for a non-nested mixed pair.

    Requires S meeting I with I not inside S.  The witness blowup center is
    D_{c, S union I}: it contains the ambient intersection of D_{c,S} with
    the diagonal and is strictly contained in D_{c,S}, so once it is blown
    up (every D_{c,T} is, in stage one) the two transforms are disjoint.
    """
    validate_divisor(g, d)
    validate_divisor(g, delta)
    rel = subset_relation(d.subset, delta.subset)
    if rel is SubsetRelation.DISJOINT or rel in (SubsetRelation.B_IN_A, SubsetRelation.EQUAL):
        raise ValueError("the pair %s, %s is nested; no separation needed" % (d, delta))
    cert = SeparationCertificate(
        v1=DLocus(g.n, d.component, d.subset),
        v2=Diagonal.simple(g.n, delta.subset),
        center=DLocus(g.n, d.component, d.subset | delta.subset),
    )
    if not check_separation(g, cert):
        raise AssertionError("separation certificate failed for %s, %s" % (d, delta))
    return cert


__all__ = [
    "BoundaryDivisor",
    "BudgetError",
    "DTilde",
    "DeltaTilde",
    "ENUMERATION_DIVISOR_BOUND",
    "NestedSet",
    "count_divisors",
    "divisor_sort_key",
    "divisor_to_center",
    "divisors_for",
    "enumerate_nested_sets",
    "f_vector",
    "is_nested",
    "make_nested_set",
    "maximal_nested_sets",
    "mixed_pair_certificate",
    "pair_compatible",
    "parse_divisor",
    "validate_divisor",
]
