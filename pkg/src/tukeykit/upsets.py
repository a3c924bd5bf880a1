"""Ultimately periodic subsets of omega with exact set algebra.

A set is stored as a finite prefix of membership bits followed by a
nonempty period word that repeats forever.  Construction canonicalizes
the representation (primitive period, then shortest prefix), so two
``UPSet`` values compare equal exactly when they denote the same subset
of the naturals.  All the usual mod-finite relations (almost inclusion,
almost disjointness, splitting) are decided exactly on this fragment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word whose repetition equals ``word`` repeated."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class UPSet:
    """An ultimately periodic subset of omega, always in canonical form."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        prefix = tuple(self.prefix)
        period = tuple(self.period)
        if not period:
            raise ValueError("period must be nonempty")
        if any(b not in (0, 1) for b in prefix + period):
            raise ValueError("membership bits must be 0 or 1")
        period = _primitive_root(period)
        # Absorb prefix bits that already match the rotated period; this
        # yields the shortest possible prefix for the denoted set.
        while prefix and prefix[-1] == period[-1]:
            period = (period[-1],) + period[:-1]
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    # -- construction ------------------------------------------------

    @classmethod
    def from_bits(cls, bits: Iterable[int], period: Iterable[int]) -> "UPSet":
        return cls(tuple(bits), tuple(period))

    @classmethod
    def from_residues(cls, modulus: int, residues: Iterable[int]) -> "UPSet":
        """The set of k with k mod ``modulus`` in ``residues``."""
        if modulus < 1:
            raise ValueError("modulus must be positive")
        rs = {r % modulus for r in residues}
        return cls((), tuple(1 if i in rs else 0 for i in range(modulus)))

    @classmethod
    def from_finite(cls, members: Iterable[int]) -> "UPSet":
        ms = sorted(set(members))
        if ms and ms[0] < 0:
            raise ValueError("members must be naturals")
        top = ms[-1] + 1 if ms else 0
        bits = [0] * top
        for m in ms:
            bits[m] = 1
        return cls(tuple(bits), (0,))

    # -- queries -----------------------------------------------------

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if k < len(self.prefix):
            return self.prefix[k] == 1
        return self.period[(k - len(self.prefix)) % len(self.period)] == 1

    def bit(self, k: int) -> int:
        return 1 if k in self else 0

    @property
    def is_finite(self) -> bool:
        return 1 not in self.period

    @property
    def is_infinite(self) -> bool:
        return 1 in self.period

    @property
    def is_cofinite(self) -> bool:
        return 0 not in self.period

    @property
    def is_ic(self) -> bool:
        """Infinite and co-infinite."""
        return 1 in self.period and 0 in self.period

    def elements(self) -> Iterator[int]:
        for k in itertools.count():
            if k in self:
                yield k
            elif k >= len(self.prefix) and self.is_finite:
                return

    def elements_below(self, n: int) -> list[int]:
        return [k for k in range(n) if k in self]

    def next_element(self, k: int) -> int:
        """Least member strictly above ``k`` (set must be infinite)."""
        if not self.is_infinite:
            raise ValueError("finite set has no next element eventually")
        stop = max(k + 1, len(self.prefix)) + len(self.period) + 1
        for j in range(k + 1, stop):
            if j in self:
                return j
        raise AssertionError("unreachable for infinite sets")

    def eventual_gap_bound(self) -> int:
        """A bound D so that beyond the prefix every member is followed
        by another member within D steps."""
        if not self.is_infinite:
            raise ValueError("finite set has unbounded gaps")
        start = len(self.prefix)
        window = [j for j in range(start, start + 2 * len(self.period) + 1) if j in self]
        gaps = [b - a for a, b in zip(window, window[1:])]
        return max(gaps) if gaps else len(self.period)

    # -- boolean algebra ----------------------------------------------

    def _combine(self, other: "UPSet", fn) -> "UPSet":
        m = max(len(self.prefix), len(other.prefix))
        d = lcm(len(self.period), len(other.period))
        prefix = tuple(fn(self.bit(k), other.bit(k)) for k in range(m))
        period = tuple(fn(self.bit(k), other.bit(k)) for k in range(m, m + d))
        return UPSet(prefix, period)

    def __and__(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a & b)

    def __or__(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a | b)

    def __sub__(self, other: "UPSet") -> "UPSet":
        return self._combine(other, lambda a, b: a & (1 - b))

    def complement(self) -> "UPSet":
        return UPSet(
            tuple(1 - b for b in self.prefix),
            tuple(1 - b for b in self.period),
        )

    # -- literals -----------------------------------------------------

    def literal(self) -> str:
        pre = "".join(map(str, self.prefix)) or "ε"
        return pre + "|" + "".join(map(str, self.period))

    def __str__(self) -> str:
        return self.literal()


EMPTY = UPSet((), (0,))
FULL = UPSet((), (1,))
EVENS = UPSet.from_residues(2, {0})
ODDS = UPSet.from_residues(2, {1})


def parse_upset(text: str) -> UPSet:
    """Parse a ``prefix|period`` bit-string literal, e.g. ``ε|10``."""
    if "|" not in text:
        raise ValueError(f"not an UPSet literal: {text!r}")
    pre, _, per = text.partition("|")
    if pre in ("ε", ""):
        pre = ""
    if not per or set(pre + per) - {"0", "1"}:
        raise ValueError(f"not an UPSet literal: {text!r}")
    return UPSet(tuple(int(c) for c in pre), tuple(int(c) for c in per))


def upset_algebra(a: UPSet, b: UPSet | None, op: str) -> UPSet:
    """Named boolean combinations; ``complement`` ignores ``b``."""
    if op == "complement":
        return a.complement()
    if b is None:
        raise ValueError(f"operation {op!r} needs two sets")
    if op == "intersect":
        return a & b
    if op == "union":
        return a | b
    if op == "minus":
        return a - b
    raise ValueError(f"unknown operation {op!r}")


def almost_subset(a: UPSet, b: UPSet) -> bool:
    """a is contained in b up to finitely many exceptions."""
    return (a - b).is_finite


def almost_equal(a: UPSet, b: UPSet) -> bool:
    return almost_subset(a, b) and almost_subset(b, a)


def almost_disjoint(a: UPSet, b: UPSet) -> bool:
    return (a & b).is_finite


def splits(c: UPSet, a: UPSet) -> bool:
    """Does the coloring c take both values infinitely often on a?"""
    if not a.is_infinite:
        raise ValueError("splitting is only defined for infinite sets")
    return (a & c).is_infinite and (a - c).is_infinite


def intersection_of(family: Iterable[UPSet]) -> UPSet:
    out = FULL
    for s in family:
        out = out & s
    return out


def is_centered(family: list[UPSet]) -> bool:
    """Every finite subfamily has infinite intersection.

    Intersections only shrink as the subfamily grows, so for a finite
    family it is enough that the full intersection is infinite.
    """
    if not family:
        raise ValueError("empty family")
    return intersection_of(family).is_infinite


def is_linearly_ordered(family: list[UPSet]) -> bool:
    """Totally preordered by almost-inclusion."""
    if not family:
        raise ValueError("empty family")
    return all(
        almost_subset(a, b) or almost_subset(b, a)
        for a, b in itertools.combinations(family, 2)
    )


def is_ad_family(family: list[UPSet]) -> bool:
    """Pairwise almost disjoint, every member infinite.

    A finite list can only ever be a sample of an infinite a.d. family;
    callers asserting the infinite-family reading should say so (see
    ``family_property``).
    """
    if not family:
        raise ValueError("empty family")
    if not all(s.is_infinite for s in family):
        return False
    return all(almost_disjoint(a, b) for a, b in itertools.combinations(family, 2))


FAMILY_PROPERTIES = {
    "centered": is_centered,
    "linearly_ordered": is_linearly_ordered,
    "ad_infinite": is_ad_family,
}

# ad_infinite verdicts certify only the supplied finite sample.
SAMPLE_ONLY_PROPERTIES = frozenset({"ad_infinite"})


def family_property(family: list[UPSet], prop: str) -> bool:
    if prop not in FAMILY_PROPERTIES:
        raise ValueError(f"unknown family property {prop!r}")
    return FAMILY_PROPERTIES[prop](family)


def slice_by_index(b: UPSet, t: int, j: int) -> UPSet:
    """Members of b whose enumeration index is congruent to j mod t.

    For infinite b this carves b into t disjoint infinite pieces whose
    union is b; the result is again ultimately periodic because the
    running count of members cycles mod t along the period.
    """
    if t < 1 or not 0 <= j < t:
        raise ValueError("need t >= 1 and 0 <= j < t")
    n0 = len(b.prefix)
    d = len(b.period)
    # After d*t steps the position phase and the member count mod t
    # both return, so d*t is always a valid (possibly non-primitive)
    # period for the slice.
    horizon = n0 + d * t
    bits = []
    count = 0
    for k in range(horizon):
        if k in b:
            bits.append(1 if count % t == j else 0)
            count += 1
        else:
            bits.append(0)
    return UPSet(tuple(bits[:n0]), tuple(bits[n0:]))


def partition_upset(b: UPSet, parts: int) -> list[UPSet]:
    """Split an infinite set into ``parts`` disjoint infinite pieces."""
    if not b.is_infinite:
        raise ValueError("can only partition an infinite set")
    return [slice_by_index(b, parts, j) for j in range(parts)]


def dyadic_family(count: int) -> list[UPSet]:
    """The sets {k : k = 2^i mod 2^(i+1)} for i below ``count``;
    a standard almost disjoint family that extends to an infinite one."""
    return [UPSet.from_residues(2 ** (i + 1), {2**i}) for i in range(count)]
