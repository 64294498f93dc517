"""Definable convex subgroups of a lexicographic sum and derived invariants.

In a finite lexicographic sum of Archimedean blocks the convex subgroups are
exactly the K+1 suffix cuts: ``ConvexCut(s)`` names the subgroup of elements
supported on coordinates >= s (s = 0 is the whole group, s = K is {0}).
Everything here (largest convex subgroup avoiding a coset, the sorts of a
prime, the rank bound) is computed inside this finite lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .groups import (
    BlockKind,
    Element,
    GroupSpec,
    _zero_value,
    block_divisible,
)


@dataclass(frozen=True, order=True)
class ConvexCut:
    """Index of a suffix convex subgroup; smaller s names a larger subgroup."""

    s: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("cut index must be >= 0")

    def subgroup_desc(self) -> str:
        return f"coords>={self.s}"


@dataclass(frozen=True)
class SortElement:
    """A named convex subgroup inside the sort of a prime."""

    p: int
    cut: ConvexCut


def _check_cut(spec: GroupSpec, cut: ConvexCut) -> None:
    if not 0 <= cut.s <= spec.K:
        raise PreconditionError(f"cut {cut.s} out of range for K={spec.K}")


def subgroup_contains(c1: ConvexCut, c2: ConvexCut) -> bool:
    """Whether the subgroup named by c1 contains the one named by c2."""
    return c1.s <= c2.s


def in_subgroup(x: Element, cut: ConvexCut) -> bool:
    """Membership in the convex subgroup itself: coordinates < s all zero."""
    _check_cut(x.spec, cut)
    return all(v == 0 or v == () for v in x.coords[: cut.s])


def in_coset(x: Element, cut: ConvexCut, m: int) -> bool:
    """Membership in (subgroup of the cut) + mG.

    Holds exactly when every coordinate above the cut is m-divisible in its
    block: the suffix part absorbs coordinates >= s and mG must account for
    the rest coordinatewise.
    """
    if m < 1:
        raise ValueError("modulus must be a positive integer")
    _check_cut(x.spec, cut)
    return all(
        block_divisible(b, v, m)
        for b, v in zip(x.spec.blocks[: cut.s], x.coords[: cut.s])
    )


def hsub(a: Element, n: int) -> ConvexCut:
    """The largest convex subgroup H with a not in H + nG; cut K when a is
    in nG (so the subgroup is {0})."""
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    for i, (block, v) in enumerate(zip(a.spec.blocks, a.coords)):
        if not block_divisible(block, v, n):
            return ConvexCut(i + 1)
    return ConvexCut(a.spec.K)


def project_into(a: Element, target: ConvexCut, p: int) -> Element:
    """Zero the coordinates above the target cut.

    Requires every coordinate above the cut to be p-divisible; then the
    result a' lies in the target subgroup, a - a' is in pG, and
    hsub(a', p) == hsub(a, p).
    """
    _check_cut(a.spec, target)
    if not subgroup_contains(target, hsub(a, p)):
        raise PreconditionError("hsub(a, p) does not lie inside the target cut")
    if not in_coset(a, target, p):
        raise PreconditionError(
            "coordinates above the cut are not p-divisible; projection would "
            "change the residue mod pG"
        )
    coords = [
        _zero_value(b) if i < target.s else v
        for i, (b, v) in enumerate(zip(a.spec.blocks, a.coords))
    ]
    return Element(a.spec, tuple(coords))


def _block_fully_divisible(block: BlockKind, n: int) -> bool:
    """Whether every element of the block is n-divisible."""
    if block.kind == "Q":
        return True
    if block.kind == "Z":
        return n == 1
    return n % block.p != 0


def sorts(g: GroupSpec, n: int) -> list[ConvexCut]:
    """All values of hsub(., n) over the group, largest cut index first.

    Cut K always occurs (witnessed by any element of nG); cut i+1 occurs
    exactly when block i is not n-divisible as a block.
    """
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    cuts = {g.K}
    for i, block in enumerate(g.blocks):
        if not _block_fully_divisible(block, n):
            cuts.add(i + 1)
    return [ConvexCut(s) for s in sorted(cuts, reverse=True)]


def collapse_sorts(g: GroupSpec, p: int) -> list[tuple[ConvexCut, ...]]:
    """Group the raw sorts of p into classes naming the same coset data.

    Cuts s <= s' are identified when every block in [s, s') is p-divisible;
    then the two subgroups have equal sum with p^l G for every l, so no
    congruence relation can tell them apart.  Classes are returned smallest
    subgroup first, each class ordered the same way.
    """
    raw = sorts(g, p)  # descending cut index
    classes: list[list[ConvexCut]] = []
    for cut in raw:
        if classes:
            prev = classes[-1][-1]  # smallest cut index so far in this class
            # prev.s > cut.s; mergeable iff blocks[cut.s : prev.s] all p-divisible
            if all(
                _block_fully_divisible(b, p) for b in g.blocks[cut.s : prev.s]
            ):
                classes[-1].append(cut)
                continue
        classes.append([cut])
    return [tuple(c) for c in classes]


def singular_primes(g: GroupSpec) -> set[int]:
    """Primes p for which the index of pG in G is infinite.

    Only the span blocks contribute: a span block of p has infinitely many
    residues mod p (one per basis symbol), while Z, Q and the p-local
    rationals have finite index quotients for every prime.
    """
    return {b.p for b in g.blocks if b.kind == "GP"}


def bracket_membership(x: Element, alpha: SortElement, n: int) -> bool:
    """Membership in the intersection of (larger sort subgroup) + nG over all
    sorts strictly above alpha; vacuously true at the top sort."""
    g = x.spec
    sort_cuts = sorts(g, n)
    if alpha.cut not in sort_cuts:
        raise PreconditionError(f"cut {alpha.cut.s} is not a sort value for n={n}")
    return all(
        in_coset(x, c, n)
        for c in sort_cuts
        if c.s < alpha.cut.s  # strictly larger subgroup
    )


@dataclass(frozen=True)
class SortSummary:
    p: int
    raw: tuple[ConvexCut, ...]
    collapsed: tuple[tuple[ConvexCut, ...], ...]

    @property
    def raw_count(self) -> int:
        return len(self.raw)

    @property
    def collapsed_count(self) -> int:
        return len(self.collapsed)


@dataclass(frozen=True)
class AnalysisReport:
    group: GroupSpec
    singular: tuple[int, ...]
    sorts: tuple[SortSummary, ...] = field(default=())

    @property
    def dp_rank_bound(self) -> int:
        return 1 + sum(s.collapsed_count for s in self.sorts)

    @property
    def strongly_dependent(self) -> bool:
        # Finite block lists always have finitely many singular primes and
        # finite sorts, so both structural conditions hold.
        return True

    def to_json_dict(self) -> dict:
        return {
            "spec": str(self.group),
            "singular_primes": list(self.singular),
            "sorts": [
                {
                    "p": s.p,
                    "raw": [_cut_json(s.p, c) for c in s.raw],
                    "raw_count": s.raw_count,
                    "collapsed": [
                        [_cut_json(s.p, c) for c in cls] for cls in s.collapsed
                    ],
                    "collapsed_count": s.collapsed_count,
                }
                for s in self.sorts
            ],
            "dp_rank_bound": self.dp_rank_bound,
            "strongly_dependent": self.strongly_dependent,
        }


def _cut_json(p: int, cut: ConvexCut) -> dict:
    return {"p": p, "cut": cut.s, "subgroup": cut.subgroup_desc()}


def analyze(g: GroupSpec) -> AnalysisReport:
    """Singular primes, raw and collapsed sorts per singular prime, and the
    rank bound 1 + sum of collapsed sort counts."""
    sing = tuple(sorted(singular_primes(g)))
    summaries = tuple(
        SortSummary(p, tuple(sorts(g, p)), tuple(collapse_sorts(g, p)))
        for p in sing
    )
    return AnalysisReport(g, sing, summaries)


def dp_rank_bound(g: GroupSpec) -> int:
    return analyze(g).dp_rank_bound


def strongly_dependent(g: GroupSpec) -> bool:
    return analyze(g).strongly_dependent
