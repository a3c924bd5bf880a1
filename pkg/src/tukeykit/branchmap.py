"""A continuous branch-to-set map with a centered image and exactly
computable finite intersections.

Construction, column by column.  Column n uses the tree T_n that
branches over all of omega for its first n levels and binary afterward.
An admissible n-tuple at level l consists of n level-l nodes whose
level-n prefixes, coded as a single natural, stay below l.  The column
map sends a branch f to the set of admissible tuples having f's
restriction among their components.  Tuples are enumerated per column
in (level, code, tails) order, and column n lands on the n-th column of
a Cantor pairing, giving one subset of omega per branch.

Key exact facts made executable here:
  * any k <= n branches share admissible tuples at every sufficiently
    deep level (witness streams, hence a centered image),
  * n+1 branches with distinct level-n prefixes share nothing at all
    (pigeonhole, emptiness certificates),
  * n+1 distinct branches share only tuples below their separation
    level, a finite set this module enumerates completely,
  * a finite trace of observed tuples forces per-coordinate bounds on
    every branch consistent with it (constraint propagation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .apfuncs import APFunc, first_difference
from .upsets import UPSet


class InsufficientDepth(ValueError):
    """A branch description was not determined deep enough."""

    def __init__(self, needed: int, message: str | None = None):
        self.needed = needed
        super().__init__(message or f"branch description needed to depth {needed}")


class EnumerationBudget(RuntimeError):
    """An enumeration would exceed the configured size guard."""


# -- pairing and tuple coding ------------------------------------------


def pair(x: int, y: int) -> int:
    """Cantor pairing (x+y)(x+y+1)/2 + y."""
    return (x + y) * (x + y + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def tuple_code(matrix: Sequence[Sequence[int]]) -> int:
    """Code an n x n matrix of naturals by folding the pairing over the
    entries in row-major order; the 1 x 1 case is the identity."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    entries = [e for row in matrix for e in row]
    if any(e < 0 for e in entries):
        raise ValueError("entries must be naturals")
    code = entries[0]
    for e in entries[1:]:
        code = pair(code, e)
    return code


def tuple_decode(code: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Inverse of ``tuple_code`` for a given dimension."""
    if n < 1 or code < 0:
        raise ValueError("need n >= 1 and a natural code")
    entries: list[int] = []
    z = code
    for _ in range(n * n - 1):
        z, e = unpair(z)
        entries.append(e)
    entries.append(z)
    entries.reverse()
    return tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))


# -- branches of the column trees ---------------------------------------


def encode_blocks(n: int, values: Sequence[int]) -> tuple[int, ...]:
    """Embed a value sequence into T_n: the first n values verbatim,
    every later value m as the block 1^m 0."""
    out = list(values[:n])
    for v in values[n:]:
        out.extend([1] * v)
        out.append(0)
    return tuple(out)


def decode_blocks(n: int, entries: Sequence[int]) -> list[int]:
    """Values recoverable from a node's complete blocks."""
    values = list(entries[:n])
    run = 0
    for b in entries[n:]:
        if b == 1:
            run += 1
        else:
            values.append(run)
            run = 0
    return values


@dataclass(frozen=True)
class Branch:
    """A branch of T_n, described by a function or by explicit entries.

    Function-backed branches are total: the embedding above produces
    entries to any depth.  Entry-backed branches raise
    ``InsufficientDepth`` past their description.
    """

    n: int
    func: APFunc | None = None
    entries: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("column index must be at least 1")
        if (self.func is None) == (self.entries is None):
            raise ValueError("describe a branch by a function or by entries")
        if self.entries is not None and any(
            b not in (0, 1) for b in self.entries[self.n :]
        ):
            raise ValueError("entries beyond the identity region must be bits")

    def restrict(self, level: int) -> tuple[int, ...]:
        if self.entries is not None:
            if level > len(self.entries):
                raise InsufficientDepth(level)
            return self.entries[:level]
        values_used = self.values_needed(level)
        return encode_blocks(self.n, self.func.values(values_used))[:level]

    def values_needed(self, level: int) -> int:
        """How many function values determine this branch to ``level``."""
        if self.func is None:
            raise ValueError("entry-backed branch has no generating function")
        if level <= self.n:
            return level
        length = self.n
        u = self.n
        while length < level:
            length += self.func(u) + 1
            u += 1
        return u

    def entry_length_through(self, k: int) -> int:
        """Entry count produced by the first k+1 function values."""
        if self.func is None:
            raise ValueError("entry-backed branch has no generating function")
        if k < self.n:
            return k + 1
        return self.n + sum(self.func(i) + 1 for i in range(self.n, k + 1))


def branch_of(f: APFunc, n: int) -> Branch:
    return Branch(n, func=f)


def divergence_level(a: Branch, b: Branch) -> int | None:
    """Least level where the two branch restrictions differ, or None
    when the branches are equal."""
    if a.n != b.n:
        raise ValueError("branches live in different trees")
    if a.func is not None and b.func is not None:
        k = first_difference(a.func, b.func)
        if k is None:
            return None
        # both agree up to value k, so they separate within the block
        # coding of value k; this bounds the search
        ceiling = max(a.entry_length_through(k), b.entry_length_through(k)) + 2
    elif a.entries is not None and b.entries is not None:
        if a.entries == b.entries:
            raise InsufficientDepth(
                len(a.entries) + 1, "entry-backed branches agree on their whole description"
            )
        ceiling = min(len(a.entries), len(b.entries)) + 1
    else:
        raise ValueError("mixed branch descriptions cannot be compared")
    for level in range(1, ceiling + 1):
        if a.restrict(level) != b.restrict(level):
            return level
    raise AssertionError("branches must separate below the computed ceiling")


# -- admissible tuples ---------------------------------------------------


@dataclass(frozen=True)
class ColumnTuple:
    """An admissible tuple of a column: n equal-level nodes whose
    level-n prefix matrix codes below the level."""

    n: int
    nodes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        nodes = tuple(tuple(t) for t in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) != self.n:
            raise ValueError("tuple arity must equal the column index")
        levels = {len(t) for t in nodes}
        if len(levels) != 1:
            raise ValueError("components must share one level")
        level = levels.pop()
        if level <= self.n:
            raise ValueError("tuples live strictly below level n")
        if any(b not in (0, 1) for t in nodes for b in t[self.n :]):
            raise ValueError("components must be binary past the identity region")
        if self.code >= level:
            raise ValueError("prefix code must stay below the level")

    @property
    def level(self) -> int:
        return len(self.nodes[0])

    @property
    def code(self) -> int:
        return tuple_code([t[: self.n] for t in self.nodes])

    def to_json(self) -> dict:
        return {"level": self.level, "nodes": [list(t) for t in self.nodes]}


def level_count(n: int, level: int) -> int:
    """Number of admissible column-n tuples at one level: one matrix
    per code below the level, binary tails free."""
    return level << (n * (level - n))


def tuple_index(t: ColumnTuple) -> int:
    """Position of a tuple in its column's (level, code, tails) order."""
    idx = sum(level_count(t.n, l) for l in range(t.n + 1, t.level))
    width = t.n * (t.level - t.n)
    tails = 0
    for node in t.nodes:
        for b in node[t.n :]:
            tails = (tails << 1) | b
    return idx + (t.code << width) + tails


def tuple_at(n: int, index: int) -> ColumnTuple:
    """Inverse of ``tuple_index``."""
    if index < 0:
        raise ValueError("index must be a natural")
    level = n + 1
    rest = index
    while rest >= level_count(n, level):
        rest -= level_count(n, level)
        level += 1
    width = n * (level - n)
    code, tails = rest >> width, rest & ((1 << width) - 1)
    matrix = tuple_decode(code, n)
    bits = [(tails >> (width - 1 - i)) & 1 for i in range(width)]
    per = level - n
    nodes = tuple(
        matrix[j] + tuple(bits[j * per : (j + 1) * per]) for j in range(n)
    )
    return ColumnTuple(n, nodes)


def _nodes_with_prefix(prefix: tuple[int, ...], level: int):
    for tail in itertools.product((0, 1), repeat=level - len(prefix)):
        yield prefix + tail


def column_level_set(
    n: int, branch: Branch, level: int, *, size_guard: int = 22
) -> list[ColumnTuple]:
    """All admissible tuples at one level having the branch restriction
    among their components.

    Enumerated by placement: pick the exact nonempty set of slots that
    carry the restriction (their prefixes must match), then let the
    remaining slots range over the other nodes.  Each tuple arises from
    exactly one placement.
    """
    if level <= n:
        raise ValueError("levels start above the column index")
    if n * (level - n) > size_guard:
        raise EnumerationBudget(
            f"level set of column {n} at level {level} exceeds 2^{size_guard} tails"
        )
    r = branch.restrict(level)
    head = r[:n]
    out = []
    for code in range(level):
        matrix = tuple_decode(code, n)
        carriers = [j for j in range(n) if matrix[j] == head]
        if not carriers:
            continue
        pools = {}
        for j in range(n):
            nodes = list(_nodes_with_prefix(matrix[j], level))
            pools[j] = [t for t in nodes if t != r] if matrix[j] == head else nodes
        for size in range(1, len(carriers) + 1):
            for chosen in itertools.combinations(carriers, size):
                slot_pools = [
                    (r,) if j in chosen else tuple(pools[j]) for j in range(n)
                ]
                for combo in itertools.product(*slot_pools):
                    out.append(ColumnTuple(n, combo))
    return sorted(out, key=tuple_index)


def tuple_in_column_image(n: int, branch: Branch, t: ColumnTuple) -> bool:
    if t.n != n:
        raise ValueError("column mismatch")
    return branch.restrict(t.level) in t.nodes


# -- the glued map --------------------------------------------------------


@dataclass(frozen=True)
class ImagePrefix:
    """The glued image of a function intersected with an initial
    segment, together with the input depth that determined it."""

    elements: tuple[int, ...]
    bound: int
    depth_used: int


def image_contains(f: APFunc, x: int) -> bool:
    """Is x in the glued image of f?  Column 0 carries nothing."""
    col, m = unpair(x)
    if col == 0:
        return False
    return tuple_in_column_image(col, branch_of(f, col), tuple_at(col, m))


def image_prefix(f: APFunc, bound: int) -> ImagePrefix:
    """The image's elements below ``bound``, computed column by column."""
    elements = []
    depth = 0
    for x in range(bound):
        col, m = unpair(x)
        if col == 0:
            continue
        t = tuple_at(col, m)
        b = branch_of(f, col)
        depth = max(depth, b.values_needed(t.level))
        if tuple_in_column_image(col, b, t):
            elements.append(x)
    return ImagePrefix(tuple(elements), bound, depth)


def witness_stream(
    n: int, branches: Sequence[Branch], count: int, *, code_guard: int = 10**6
) -> list[ColumnTuple]:
    """Admissible tuples common to every branch's column image, one per
    admissible level; works for up to n branches by padding with the
    first.

    Admissible levels start above the code of the shared prefix matrix.
    The fixed fold coding makes that code explode unless the branches'
    identity-region entries are small, so desk-scale inputs should keep
    their first n values near zero; the guard turns would-be astronomic
    materializations into an explicit error.
    """
    if not 1 <= len(branches) <= n:
        raise ValueError("need between 1 and n branches")
    if any(b.n != n for b in branches):
        raise ValueError("branches must live in column n's tree")
    padded = list(branches) + [branches[0]] * (n - len(branches))
    code = tuple_code([b.restrict(n) for b in padded])
    if code > code_guard:
        raise EnumerationBudget(
            f"shared tuples start only above level {code}; "
            "use branches with smaller identity-region entries"
        )
    out = []
    level = max(n, code) + 1
    while len(out) < count:
        t = ColumnTuple(n, tuple(b.restrict(level) for b in padded))
        for b in branches:
            assert tuple_in_column_image(n, b, t)
        out.append(t)
        level += 1
    return out


@dataclass(frozen=True)
class CommonWitnesses:
    column: int
    tuples: tuple[ColumnTuple, ...]
    elements: tuple[int, ...]


def common_witnesses(fs: Sequence[APFunc], count: int) -> CommonWitnesses:
    """Members of the intersection of the glued images of ``fs``.

    Distinct functions route to the column matching their number, where
    a shared tuple exists at every deep enough level.
    """
    if not fs:
        raise ValueError("need at least one function")
    unique: list[APFunc] = []
    for f in fs:
        if f not in unique:
            unique.append(f)
    n = len(unique)
    tuples = witness_stream(n, [branch_of(f, n) for f in unique], count)
    elements = tuple(pair(n, tuple_index(t)) for t in tuples)
    for x in elements:
        for f in fs:
            assert image_contains(f, x)
    return CommonWitnesses(n, tuple(tuples), elements)


# -- exact finite intersections -------------------------------------------


@dataclass(frozen=True)
class ExactIntersection:
    column: int
    separation_level: int
    tuples: tuple[ColumnTuple, ...]

    @property
    def size(self) -> int:
        return len(self.tuples)


def exact_intersection(
    n: int, branches: Sequence[Branch], *, size_guard: int = 24
) -> ExactIntersection:
    """The complete intersection of the column images of n+1 pairwise
    distinct branches.

    Once all restrictions are pairwise distinct, n slots cannot match
    n+1 of them, so every shared tuple lies below the separation level;
    those levels are enumerated exhaustively.
    """
    if len(branches) != n + 1:
        raise ValueError("exact intersections take n+1 branches")
    if any(b.n != n for b in branches):
        raise ValueError("branches must live in column n's tree")
    sep = 0
    for a, b in itertools.combinations(branches, 2):
        lvl = divergence_level(a, b)
        if lvl is None:
            raise ValueError("branches must be pairwise distinct")
        sep = max(sep, lvl)
    found = []
    for level in range(n + 1, sep):
        if n * (level - n) > size_guard:
            raise EnumerationBudget(
                f"intersection scan at level {level} exceeds 2^{size_guard} tails"
            )
        rs = [b.restrict(level) for b in branches]
        for code in range(level):
            matrix = tuple_decode(code, n)
            slots = [list(_nodes_with_prefix(matrix[j], level)) for j in range(n)]
            for combo in itertools.product(*slots):
                if all(r in combo for r in rs):
                    found.append(ColumnTuple(n, combo))
    return ExactIntersection(n, sep, tuple(sorted(found, key=tuple_index)))


@dataclass(frozen=True)
class ColumnEmptiness:
    column: int
    witnesses: tuple[int, ...]  # indices of the functions used
    reason: str


@dataclass(frozen=True)
class EmptyColumnsCertificate:
    covered: tuple[ColumnEmptiness, ...]
    uncovered: tuple[tuple[int, str], ...]


def empty_columns_certificate(
    fs: Sequence[APFunc], max_column: int, level: int
) -> EmptyColumnsCertificate:
    """Certify that high columns contribute nothing to the intersection
    of the glued images of ``fs``.

    Column c is covered when c+1 of the functions already have pairwise
    distinct value prefixes of length c: the embedding is the identity
    there, so no c-slot tuple can match c+1 distinct prefixes.
    """
    vals = [tuple(f.values(level)) for f in fs]
    for (i, a), (j, b) in itertools.combinations(enumerate(vals), 2):
        if a == b:
            raise ValueError(
                f"functions {i} and {j} agree up to level {level}; hypothesis fails"
            )
    covered = []
    uncovered = []
    for col in range(1, max_column + 1):
        if len(fs) < col + 1:
            uncovered.append((col, f"needs {col + 1} functions, have {len(fs)}"))
            continue
        seen: dict[tuple[int, ...], int] = {}
        for i, f in enumerate(fs):
            seen.setdefault(tuple(f.values(col)), i)
        if len(seen) >= col + 1:
            witnesses = tuple(sorted(seen.values())[: col + 1])
            covered.append(
                ColumnEmptiness(
                    col,
                    witnesses,
                    f"{col + 1} distinct length-{col} prefixes cannot share "
                    f"a {col}-slot tuple",
                )
            )
        else:
            uncovered.append(
                (col, f"only {len(seen)} distinct length-{col} prefixes")
            )
    return EmptyColumnsCertificate(tuple(covered), tuple(uncovered))


# -- bounds from finite traces ---------------------------------------------


@dataclass(frozen=True)
class BoundCertificate:
    """Per-coordinate bounds forced on any branch consistent with the
    observed tuples of one column; ``empty`` means no branch fits."""

    column: int
    constraints: tuple[ColumnTuple, ...]
    empty: bool
    bound: tuple[int, ...]
    chains: int


def _compatible(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    return long_[: len(short)] == short


def bound_from_trace(
    n: int, observed: Sequence[ColumnTuple]
) -> BoundCertificate:
    """Propagate "the branch extends one component of each observation"
    through every consistent selection and take coordinatewise maxima.

    The returned bound's domain is the part of the tree every
    consistent selection pins down; any branch matching all the
    observations obeys the bound there.
    """
    if not observed:
        raise ValueError("need at least one observation")
    if any(t.n != n for t in observed):
        raise ValueError("observations must come from column n")
    unions: set[tuple[int, ...]] = set()
    seen: set[tuple[int, tuple[int, ...]]] = set()

    def extend(i: int, chain: tuple[int, ...]) -> None:
        if (i, chain) in seen:
            return
        seen.add((i, chain))
        if i == len(observed):
            unions.add(chain)
            return
        for node in observed[i].nodes:
            if _compatible(chain, node):
                extend(i + 1, node if len(node) >= len(chain) else chain)

    extend(0, ())
    if not unions:
        return BoundCertificate(n, tuple(observed), True, (), 0)
    dom = min(len(u) for u in unions)
    bound = tuple(max(u[k] for u in unions) for k in range(dom))
    return BoundCertificate(n, tuple(observed), False, bound, len(unions))


def trace_bound_func(
    a: UPSet, *, columns: int = 4, element_cap: int = 4000, per_column: int = 12
) -> APFunc:
    """A concrete function bound extracted from a set's trace through
    the glued map's columns.

    For each low column, the set's first few elements there are decoded
    to observed tuples; the chain bounds they force are translated back
    through the block coding into value bounds, combined coordinatewise,
    and finished with a strictly growing tail.
    """
    claims: list[list[int]] = []
    for col in range(1, columns + 1):
        observed = []
        for x in a.elements_below(element_cap):
            c, m = unpair(x)
            if c == col:
                observed.append(tuple_at(col, m))
                if len(observed) >= per_column:
                    break
        if not observed:
            continue
        cert = bound_from_trace(col, observed)
        if cert.empty:
            continue
        values = decode_blocks(col, cert.bound)
        if values:
            claims.append(values)
    if not claims:
        return APFunc((), (0,), 1)
    dom = max(len(v) for v in claims)
    combined = [
        max((v[k] for v in claims if k < len(v)), default=0) for k in range(dom)
    ]
    return APFunc(tuple(combined), (combined[-1] + 1,), 1)
