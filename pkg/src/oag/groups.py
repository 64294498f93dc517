"""Exact elements of finite lexicographic sums of Archimedean ordered-group blocks.

A group is described by a ``GroupSpec``: a nonempty ordered list of blocks,
index 0 most significant.  Four block kinds are supported:

* ``INT``        -- the integers
* ``RAT``        -- the rationals
* ``PLOCAL(p)``  -- rationals whose denominator is coprime to the prime p
* ``PSPAN(p)``   -- finite PLOCAL(p)-linear combinations of a fixed countable
  basis b0, b1, b2, ... with b0 = 1

The basis symbol bk (k >= 1) is realized as the square root of the k-th
prime, so the basis is linearly independent over the rationals and the real
ordering of any combination is decidable.  All arithmetic is exact rational
arithmetic; floating point never enters, and order certification on spans
uses adaptive-precision rational enclosures of the square roots.

Elements are immutable and hashable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import NotDivisibleError, SpecMismatchError
from .numutil import is_prime, nth_prime, sqrt_enclosure, valuation_at_least

SpanPairs = tuple[tuple[int, Fraction], ...]
BlockValue = Union[int, Fraction, SpanPairs]


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class BlockKind:
    """One Archimedean block: 'Z', 'Q', 'ZLOC' (p-local rationals) or 'GP'
    (p-local span of the square-root basis)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "ZLOC", "GP"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind in ("ZLOC", "GP"):
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"block {self.kind} needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"block {self.kind} takes no prime")

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Q":
            return "Q"
        if self.kind == "ZLOC":
            return f"Zloc({self.p})"
        return f"Gp({self.p})"


INT = BlockKind("Z")
RAT = BlockKind("Q")


def PLOCAL(p: int) -> BlockKind:
    return BlockKind("ZLOC", p)


def PSPAN(p: int) -> BlockKind:
    return BlockKind("GP", p)


@dataclass(frozen=True)
class GroupSpec:
    """Ordered list of blocks, most significant first."""

    blocks: tuple[BlockKind, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("a group spec needs at least one block")
        for b in blocks:
            if not isinstance(b, BlockKind):
                raise TypeError(f"expected BlockKind, got {type(b).__name__}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def K(self) -> int:
        return len(self.blocks)

    def zero(self) -> "Element":
        return Element(self, tuple(_zero_value(b) for b in self.blocks))

    def __str__(self) -> str:
        parts: list[str] = []
        i = 0
        while i < len(self.blocks):
            j = i
            while j < len(self.blocks) and self.blocks[j] == self.blocks[i]:
                j += 1
            run = j - i
            parts.append(str(self.blocks[i]) + (f"^{run}" if run > 1 else ""))
            i = j
        return "lex(" + ", ".join(parts) + ")"


def _zero_value(block: BlockKind) -> BlockValue:
    if block.kind == "Z":
        return 0
    if block.kind == "GP":
        return ()
    return Fraction(0)


def _norm_span(value) -> SpanPairs:
    """Canonical span form: sorted (basis index, coefficient) pairs, no zeros."""
    if isinstance(value, (int, Fraction)):
        pairs: Iterable = (((0, value),) if value else ())
    elif isinstance(value, Mapping):
        pairs = value.items()
    else:
        pairs = value
    acc: dict[int, Fraction] = {}
    for idx, c in pairs:
        idx = int(idx)
        if idx < 0:
            raise ValueError("basis indices must be >= 0")
        c = Fraction(c)
        if c:
            acc[idx] = acc.get(idx, Fraction(0)) + c
    return tuple(sorted((i, c) for i, c in acc.items() if c))


def _norm_block_value(block: BlockKind, value) -> BlockValue:
    if block.kind == "Z":
        f = Fraction(value) if not isinstance(value, int) else Fraction(value)
        if f.denominator != 1:
            raise ValueError(f"Z coordinate must be an integer, got {value!r}")
        return int(f)
    if block.kind == "Q":
        return Fraction(value)
    if block.kind == "ZLOC":
        f = Fraction(value)
        if not valuation_at_least(f, block.p, 0):
            raise ValueError(f"{f} has denominator divisible by {block.p}")
        return f
    span = _norm_span(value)
    for _, c in span:
        if not valuation_at_least(c, block.p, 0):
            raise ValueError(f"span coefficient {c} not {block.p}-local")
    return span


@dataclass(frozen=True)
class Element:
    """One group element: a block value per coordinate of the spec."""

    spec: GroupSpec
    coords: tuple[BlockValue, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) != self.spec.K:
            raise ValueError(
                f"expected {self.spec.K} coordinates, got {len(coords)}"
            )
        coords = tuple(
            _norm_block_value(b, v) for b, v in zip(self.spec.blocks, coords)
        )
        object.__setattr__(self, "coords", coords)

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return sub(self, other)

    def __neg__(self) -> "Element":
        return neg(self)

    def __rmul__(self, k: int) -> "Element":
        return scale(k, self)

    def __lt__(self, other):
        return compare(self, other) is Ordering.LT

    def __le__(self, other):
        return compare(self, other) is not Ordering.GT

    def __gt__(self, other):
        return compare(self, other) is Ordering.GT

    def __ge__(self, other):
        return compare(self, other) is not Ordering.LT

    def is_zero(self) -> bool:
        return all(_block_is_zero(v) for v in self.coords)

    def __str__(self) -> str:
        return format_element(self)


def _raw_element(spec: GroupSpec, coords: tuple[BlockValue, ...]) -> Element:
    """Internal constructor for coordinates already in canonical form.

    Arithmetic on canonical values stays canonical (sums and integer
    multiples of p-local rationals are p-local, span helpers keep pairs
    sorted and zero-free), so the per-construction validation of Element
    can be skipped on these paths.
    """
    e = object.__new__(Element)
    object.__setattr__(e, "spec", spec)
    object.__setattr__(e, "coords", coords)
    return e


def unit_element(spec: GroupSpec, coord: int, value=1, basis: int = 0) -> Element:
    """Element supported on a single coordinate; for span blocks the value
    is placed on the given basis symbol."""
    coords = [_zero_value(b) for b in spec.blocks]
    if spec.blocks[coord].kind == "GP":
        coords[coord] = ((basis, Fraction(value)),)
    else:
        coords[coord] = value
    return Element(spec, tuple(coords))


def _check_same_spec(a: Element, b: Element) -> None:
    if a.spec != b.spec:
        raise SpecMismatchError("elements belong to different group specs")


def _block_is_zero(v: BlockValue) -> bool:
    return v == 0 or v == ()


def _span_add(x: SpanPairs, y: SpanPairs) -> SpanPairs:
    acc = dict(x)
    for idx, c in y:
        acc[idx] = acc.get(idx, Fraction(0)) + c
    return tuple(sorted((i, c) for i, c in acc.items() if c))


def _span_scale(k, x: SpanPairs) -> SpanPairs:
    if k == 0:
        return ()
    return tuple((i, c * k) for i, c in x)


def span_coefficient(v: SpanPairs, basis: int) -> Fraction:
    for i, c in v:
        if i == basis:
            return c
    return Fraction(0)


def add(a: Element, b: Element) -> Element:
    _check_same_spec(a, b)
    coords = tuple(
        _span_add(x, y) if block.kind == "GP" else x + y
        for block, x, y in zip(a.spec.blocks, a.coords, b.coords)
    )
    return _raw_element(a.spec, coords)


def neg(a: Element) -> Element:
    coords = tuple(
        _span_scale(-1, x) if block.kind == "GP" else -x
        for block, x in zip(a.spec.blocks, a.coords)
    )
    return _raw_element(a.spec, coords)


def sub(a: Element, b: Element) -> Element:
    _check_same_spec(a, b)
    coords = tuple(
        _span_add(x, _span_scale(-1, y)) if block.kind == "GP" else x - y
        for block, x, y in zip(a.spec.blocks, a.coords, b.coords)
    )
    return _raw_element(a.spec, coords)


def scale(k: int, a: Element) -> Element:
    if not isinstance(k, int):
        raise TypeError("scale takes an integer multiplier")
    coords = tuple(
        _span_scale(k, x) if block.kind == "GP" else x * k
        for block, x in zip(a.spec.blocks, a.coords)
    )
    return _raw_element(a.spec, coords)


def span_enclosure(pairs: SpanPairs, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval containing the real value of a span at the given
    working precision."""
    lo = hi = Fraction(0)
    for idx, c in pairs:
        if idx == 0:
            lo += c
            hi += c
            continue
        slo, shi = sqrt_enclosure(nth_prime(idx), bits)
        if c >= 0:
            lo += c * slo
            hi += c * shi
        else:
            lo += c * shi
            hi += c * slo
    return lo, hi


def _span_sign(pairs: SpanPairs) -> int:
    """Exact sign of the real value of a nonempty canonical span.

    Terminates because a span with a nonzero coefficient vector has nonzero
    real value (the realized basis is linearly independent over Q), so some
    working precision separates the enclosure from 0.
    """
    if not pairs:
        return 0
    if len(pairs) == 1 and pairs[0][0] == 0:
        c = pairs[0][1]
        return -1 if c < 0 else 1
    bits = 32
    while True:
        lo, hi = span_enclosure(pairs, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def compare(a: Element, b: Element) -> Ordering:
    """Lexicographic order, coordinate 0 most significant.

    Span coordinates are compared by exact coefficient equality first; a
    nonzero difference is signed by adaptive-precision enclosure of its
    real value.
    """
    _check_same_spec(a, b)
    for block, x, y in zip(a.spec.blocks, a.coords, b.coords):
        if block.kind == "GP":
            if x == y:
                continue
            s = _span_sign(_span_add(x, _span_scale(-1, y)))
        else:
            if x == y:
                continue
            s = -1 if x < y else 1
        return Ordering.LT if s < 0 else Ordering.GT
    return Ordering.EQ


def block_divisible(block: BlockKind, value: BlockValue, n: int) -> bool:
    """Whether the block value is n-divisible inside its block."""
    if block.kind == "Z":
        return value % n == 0
    if block.kind == "Q":
        return True
    if block.kind == "ZLOC":
        e = _prime_power_in(n, block.p)
        return valuation_at_least(value, block.p, e)
    e = _prime_power_in(n, block.p)
    return all(valuation_at_least(c, block.p, e) for _, c in value)


def _prime_power_in(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def block_divide(block: BlockKind, value: BlockValue, n: int) -> BlockValue | None:
    """Exact quotient value/n inside the block, or None if not divisible."""
    if not block_divisible(block, value, n):
        return None
    if block.kind == "Z":
        return value // n
    if block.kind == "GP":
        return tuple((i, c / n) for i, c in value)
    return value / n


def is_divisible(a: Element, n: int) -> bool:
    """Whether a is in nG, i.e. every coordinate is n-divisible in its block."""
    if n < 1:
        raise ValueError("divisor must be a positive integer")
    return all(
        block_divisible(b, v, n) for b, v in zip(a.spec.blocks, a.coords)
    )


def divide_exact(a: Element, n: int) -> Element:
    """The unique y with scale(n, y) == a; raises NotDivisibleError otherwise."""
    if n < 1:
        raise ValueError("divisor must be a positive integer")
    coords = []
    for block, v in zip(a.spec.blocks, a.coords):
        q = block_divide(block, v, n)
        if q is None:
            raise NotDivisibleError(f"element is not divisible by {n}")
        coords.append(q)
    return Element(a.spec, tuple(coords))


def _format_fraction(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_block_value(block: BlockKind, v: BlockValue) -> str:
    if block.kind == "GP":
        if not v:
            return "0"
        parts = []
        for n, (idx, c) in enumerate(v):
            mag = abs(c)
            body = f"b{idx}" if mag == 1 else f"{_format_fraction(mag)}*b{idx}"
            if n == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)
    if block.kind == "Z":
        return str(v)
    return _format_fraction(v)


def format_element(a: Element) -> str:
    inner = " | ".join(
        format_block_value(b, v) for b, v in zip(a.spec.blocks, a.coords)
    )
    return f"({inner})"
