"""Catalog of cardinal-invariant triples over the decidable fragment,
the built-in morphism candidates, and the two comparison diagrams.

Carriers are stood in for exactly: infinite sets and 2-colorings by
ultimately periodic sets, function spaces by arithmetically periodic
functions, finite-color spaces by bounded zero-drift functions, and
sequence carriers by finite tuples read as cycling sequences.  Every
relation in the catalog is decided exactly on these representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

from . import branchmap
from .apfuncs import (
    APFunc,
    IDENTITY,
    ZERO,
    almost_constant_on,
    bit_coloring,
    constant,
    eventually_dominates,
    is_coloring,
    next_element_func,
    pointwise_max,
)
from .triples import CodedTriple, FamilyProperty, MorphismCandidate
from .upsets import (
    EVENS,
    FULL,
    ODDS,
    UPSet,
    almost_disjoint,
    almost_subset,
    dyadic_family,
    intersection_of,
    is_linearly_ordered,
    splits,
)

# -- kinds ----------------------------------------------------------------

UPSET = "upset"  # infinite subsets of omega
IC = "ic"  # infinite, co-infinite subsets
COLORING = "coloring"  # 2-colorings, i.e. arbitrary subsets
APFUNC = "apfunc"  # functions omega -> omega
UPSET_TUPLE = "upset_tuple"
COLORING_TUPLE = "coloring_tuple"


def coloring_kind(colors: int) -> str:
    return f"coloring{colors}"


def upset_tuple_kind(arity: int) -> str:
    return f"upset_tuple{arity}"


# -- derived colorings -----------------------------------------------------


@dataclass(frozen=True)
class IterateColoring:
    """The coloring that paints blocks [t_j, t_{j+1}) alternately, where
    t_{j+1} = max(g(t_j), t_j + 1) iterates a function from 0.

    With slope above 1 the blocks outgrow every fixed gap bound, so the
    coloring splits every infinite ultimately periodic set; with slope
    exactly 1 the block pattern is eventually periodic and the coloring
    converts to an exact ``UPSet``.
    """

    g: APFunc

    @property
    def step(self) -> APFunc:
        return pointwise_max(self.g, APFunc((), (1,), 1))

    def boundaries(self, count: int) -> list[int]:
        step = self.step
        ts = [0]
        while len(ts) <= count:
            ts.append(step(ts[-1]))
        return ts

    def bit(self, k: int) -> int:
        step = self.step
        t, j = 0, 0
        while step(t) <= k:
            t, j = step(t), j + 1
        return 1 if j % 2 == 0 else 0

    def as_upset(self) -> UPSet:
        """Exact conversion, available when the step has slope 1."""
        step = self.step
        if step.slope != 1:
            raise ValueError("only slope-1 iterations are eventually periodic")
        n0, p = step.period_start, step.period_len
        seen: dict[tuple[int, int], tuple[int, int]] = {}
        bits: list[int] = []
        t, j = 0, 0
        while True:
            nxt = step(t)
            bits.extend([1 if j % 2 == 0 else 0] * (nxt - t))
            if t >= n0:
                state = ((t - n0) % p, j % 2)
                if state in seen:
                    t0, len0 = seen[state][0], t - seen[state][0]
                    return UPSet(tuple(bits[:t0]), tuple(bits[t0 : t0 + len0]))
                seen[state] = (t, j)
            t, j = nxt, j + 1

    def splits_upset(self, a: UPSet) -> bool:
        """Exact splitting decision for ultimately periodic targets."""
        if not a.is_infinite:
            raise ValueError("splitting is only defined for infinite sets")
        if self.step.slope == 1:
            return splits(self.as_upset(), a)
        # blocks strictly outgrow the target's eventual gap bound, so
        # every late block of either color meets the target
        return True


def splits_general(c: "UPSet | IterateColoring", a: UPSet) -> bool:
    if isinstance(c, IterateColoring):
        return c.splits_upset(a)
    return splits(c, a)


# -- the glued image as a plus-side value -----------------------------------


@dataclass(frozen=True)
class GluedImage:
    """The glued-map image of a function, usable on the plus side of
    almost-inclusion triples.

    No infinite ultimately periodic set is almost contained in such an
    image: some column's trace of the set is infinite with positive
    density among that column's tuple indices, while the image tuples
    containing any fixed branch thin out geometrically.  The decision
    procedure locates such a column and emits concrete missing
    elements.
    """

    func: APFunc

    def __contains__(self, x: int) -> bool:
        return branchmap.image_contains(self.func, x)

    def _infinite_trace_column(self, a: UPSet) -> int:
        d = len(a.period)
        n0 = len(a.prefix)
        for col in range(0, 2 * d + 2):
            m0 = 0
            while branchmap.pair(col, m0) < n0:
                m0 += 1
            if any(
                branchmap.pair(col, m) in a for m in range(m0, m0 + 2 * d)
            ):
                return col
        raise AssertionError("every infinite periodic set has an infinite column trace")

    def missing_elements(self, a: UPSet, count: int, *, scan: int = 20000) -> list[int]:
        """Concrete members of ``a`` outside this image."""
        if not a.is_infinite:
            raise ValueError("need an infinite set")
        col = self._infinite_trace_column(a)
        out: list[int] = []
        for m in range(scan):
            x = branchmap.pair(col, m)
            if x not in a:
                continue
            if col == 0 or not branchmap.image_contains(self.func, x):
                out.append(x)
                if len(out) >= count:
                    return out
        raise RuntimeError(
            f"could not exhibit {count} missing elements within the scan window"
        )

    def almost_contains(self, a: UPSet) -> bool:
        if a.is_finite:
            return True
        # certified by explicit counterexamples; see class docstring
        self.missing_elements(a, 3)
        return False


def not_almost_subset_general(x: UPSet, y: "UPSet | GluedImage") -> bool:
    if isinstance(y, GluedImage):
        return not y.almost_contains(x)
    return not almost_subset(x, y)


# -- family properties ------------------------------------------------------


def _centered_check(family: list) -> bool:
    if not family:
        raise ValueError("empty family")
    if all(isinstance(s, UPSet) for s in family):
        return intersection_of(family).is_infinite
    if all(isinstance(s, GluedImage) for s in family):
        witnesses = branchmap.common_witnesses([s.func for s in family], 12)
        return all(x in s for s in family for x in witnesses.elements)
    raise TypeError("centeredness needs a homogeneous family")


CENTERED = FamilyProperty("centered", _centered_check, downward_closed=True)
LINEARLY_ORDERED = FamilyProperty(
    "linearly_ordered", is_linearly_ordered, downward_closed=True
)


def _ad_check(family: list) -> bool:
    if not family:
        raise ValueError("empty family")
    if not all(s.is_infinite for s in family):
        return False
    return all(
        almost_disjoint(x, y) for x, y in itertools.combinations(family, 2)
    )


AD_INFINITE = FamilyProperty(
    "ad_infinite",
    _ad_check,
    downward_closed=True,
    note="a finite list only samples an infinite a.d. family",
)


@dataclass(frozen=True)
class TaggedIndependentFamily:
    """A family together with the independent list it is derived from;
    the only inputs on which the independence property is checkable."""

    members: tuple[UPSet, ...]
    base: tuple[UPSet, ...]
    patterns: tuple[tuple[int, ...], ...]  # sign pattern per member, 1=set, 0=complement


def _independent_base(base: Sequence[UPSet]) -> bool:
    for signs in itertools.product((0, 1), repeat=len(base)):
        combo = intersection_of(
            [s if b else s.complement() for s, b in zip(base, signs)]
        )
        if not combo.is_infinite:
            return False
    return True


def _independence_derived_check(family: list) -> bool:
    if not family:
        raise ValueError("empty family")
    if len(family) == 1 and isinstance(family[0], TaggedIndependentFamily):
        tagged = family[0]
        if not _independent_base(tagged.base):
            return False
        for member, pattern in zip(tagged.members, tagged.patterns):
            combo = intersection_of(
                [
                    s if b else s.complement()
                    for s, b in zip(tagged.base, pattern)
                    if b in (0, 1)
                ]
            )
            if member != combo:
                return False
        return True
    return False


INDEPENDENCE_DERIVED = FamilyProperty(
    "independence_derived",
    _independence_derived_check,
    downward_closed=False,
    note=(
        "checkable only on explicitly tagged inputs: members must be the "
        "declared boolean combinations of an independent list"
    ),
)


# -- validators -------------------------------------------------------------


def _is_infinite_upset(x: Any) -> bool:
    return isinstance(x, UPSet) and x.is_infinite


def _is_ic(x: Any) -> bool:
    return isinstance(x, UPSet) and x.is_ic


def _is_coloring(x: Any) -> bool:
    return isinstance(x, (UPSet, IterateColoring))


def _is_apfunc(x: Any) -> bool:
    return isinstance(x, APFunc)


def _is_upset_tuple(n: int | None):
    def check(xs: Any) -> bool:
        if not isinstance(xs, tuple) or (n is not None and len(xs) != n):
            return False
        return all(_is_infinite_upset(x) for x in xs)

    return check


# -- the catalog -------------------------------------------------------------


def pseudo_intersection_triple() -> CodedTriple:
    return CodedTriple(
        name="p",
        minus_kind=UPSET,
        plus_kind=UPSET,
        relation=lambda x, y: not_almost_subset_general(x, y),
        property=CENTERED,
        relation_name="not almost contained in",
        validate_minus=_is_infinite_upset,
    )


def tower_triple() -> CodedTriple:
    t = pseudo_intersection_triple()
    return CodedTriple(
        name="t",
        minus_kind=t.minus_kind,
        plus_kind=t.plus_kind,
        relation=t.relation,
        property=LINEARLY_ORDERED,
        relation_name=t.relation_name,
        validate_minus=t.validate_minus,
    )


def splitting_triple() -> CodedTriple:
    return CodedTriple(
        name="s",
        minus_kind=UPSET,
        plus_kind=COLORING,
        relation=lambda a, c: splits_general(c, a),
        relation_name="is split by",
        validate_minus=_is_infinite_upset,
        validate_plus=_is_coloring,
    )


def unsplitting_triple() -> CodedTriple:
    return CodedTriple(
        name="r",
        minus_kind=COLORING,
        plus_kind=UPSET,
        relation=lambda c, b: not splits_general(c, b),
        relation_name="does not split",
        validate_minus=_is_coloring,
        validate_plus=_is_infinite_upset,
    )


def unbounded_triple() -> CodedTriple:
    return CodedTriple(
        name="b",
        minus_kind=APFUNC,
        plus_kind=APFUNC,
        relation=lambda f, g: not eventually_dominates(f, g),
        relation_name="does not eventually dominate",
        validate_minus=_is_apfunc,
        validate_plus=_is_apfunc,
    )


def dominating_triple() -> CodedTriple:
    return CodedTriple(
        name="d",
        minus_kind=APFUNC,
        plus_kind=APFUNC,
        relation=lambda f, g: eventually_dominates(g, f),
        relation_name="is eventually dominated by",
        validate_minus=_is_apfunc,
        validate_plus=_is_apfunc,
    )


def almost_disjointness_triple() -> CodedTriple:
    return CodedTriple(
        name="a",
        minus_kind=IC,
        plus_kind=IC,
        relation=lambda x, y: not almost_disjoint(x, y),
        property=AD_INFINITE,
        relation_name="meets infinitely",
        validate_minus=_is_ic,
        validate_plus=_is_ic,
    )


def independence_triple() -> CodedTriple:
    return CodedTriple(
        name="i",
        minus_kind=IC,
        plus_kind=IC,
        relation=lambda x, y: not splits(x, y),
        property=INDEPENDENCE_DERIVED,
        relation_name="does not split",
        validate_minus=_is_ic,
        validate_plus=_is_ic,
    )


def ultrafilter_triple() -> CodedTriple:
    return CodedTriple(
        name="u",
        minus_kind=UPSET,
        plus_kind=UPSET,
        relation=lambda x, y: not splits(x, y),
        property=CENTERED,
        relation_name="does not split",
        validate_minus=_is_infinite_upset,
        validate_plus=_is_infinite_upset,
    )


def n_unsplitting_triple(colors: int) -> CodedTriple:
    if colors < 2:
        raise ValueError("need at least two colors")
    return CodedTriple(
        name=f"r_{colors}",
        minus_kind=coloring_kind(colors),
        plus_kind=UPSET,
        relation=lambda c, b: almost_constant_on(c, b),
        relation_name="is almost constant on",
        validate_minus=lambda c: isinstance(c, APFunc) and is_coloring(c, colors),
        validate_plus=_is_infinite_upset,
    )


def sigma_unsplitting_triple() -> CodedTriple:
    def rel(cs: tuple[UPSet, ...], b: UPSet) -> bool:
        return all(not splits(c, b) for c in cs)

    return CodedTriple(
        name="r_sigma",
        minus_kind=COLORING_TUPLE,
        plus_kind=UPSET,
        relation=rel,
        relation_name="every listed coloring almost constant on",
        validate_minus=lambda xs: isinstance(xs, tuple)
        and all(isinstance(c, UPSet) for c in xs),
        validate_plus=_is_infinite_upset,
    )


def n_splitting_triple(n: int) -> CodedTriple:
    return CodedTriple(
        name=f"s_{n}",
        minus_kind=upset_tuple_kind(n),
        plus_kind=COLORING,
        relation=lambda xs, c: all(splits_general(c, a) for a in xs),
        relation_name="splits every entry of",
        validate_minus=_is_upset_tuple(n),
        validate_plus=_is_coloring,
    )


def nm_splitting_triple(n: int, m: int) -> CodedTriple:
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    return CodedTriple(
        name=f"s_{n},{m}",
        minus_kind=upset_tuple_kind(n),
        plus_kind=COLORING,
        relation=lambda xs, c: sum(1 for a in xs if splits_general(c, a)) >= m,
        relation_name=f"splits at least {m} entries of",
        validate_minus=_is_upset_tuple(n),
        validate_plus=_is_coloring,
    )


def sigma_splitting_triple() -> CodedTriple:
    return CodedTriple(
        name="s_sigma",
        minus_kind=UPSET_TUPLE,
        plus_kind=UPSET,
        relation=lambda xs, b: all(splits(b, a) for a in xs),
        relation_name="splits every listed set",
        validate_minus=_is_upset_tuple(None),
        validate_plus=_is_infinite_upset,
    )


def finite_splitting_triple() -> CodedTriple:
    return CodedTriple(
        name="s_finite",
        minus_kind=UPSET_TUPLE,
        plus_kind=COLORING,
        relation=lambda xs, c: all(splits_general(c, a) for a in xs),
        relation_name="splits every entry of the finite tuple",
        validate_minus=_is_upset_tuple(None),
        validate_plus=_is_coloring,
    )


def catalog() -> dict[str, CodedTriple]:
    """All catalog triples, keyed by id; parametrized families appear
    with small default parameters alongside their factory functions."""
    base = [
        pseudo_intersection_triple(),
        splitting_triple(),
        unsplitting_triple(),
        unbounded_triple(),
        dominating_triple(),
        almost_disjointness_triple(),
        independence_triple(),
        ultrafilter_triple(),
        tower_triple(),
    ]
    extra = [
        n_unsplitting_triple(3),
        n_unsplitting_triple(4),
        sigma_unsplitting_triple(),
        n_splitting_triple(2),
        n_splitting_triple(3),
        nm_splitting_triple(4, 2),
        sigma_splitting_triple(),
        finite_splitting_triple(),
    ]
    return {t.name: t for t in base + extra}


# -- built-in morphism candidates --------------------------------------------


def _as_infinite(x: UPSet) -> UPSet:
    return x if x.is_infinite else EVENS


def _as_ic(x: UPSet) -> UPSet:
    return x if x.is_ic else EVENS


def plus_one(f: APFunc) -> APFunc:
    return APFunc(
        tuple(v + 1 for v in f.prefix), tuple(v + 1 for v in f.base), f.drift
    )


def ultrafilter_to_unsplitting() -> MorphismCandidate:
    return MorphismCandidate(
        pull=_as_infinite,
        push=lambda y: y,
        source_kinds=(UPSET, UPSET),
        target_kinds=(COLORING, UPSET),
        name="u->r identity",
    )


def independence_to_unsplitting() -> MorphismCandidate:
    # the pull map must choose something for finite and cofinite
    # colorings; any infinite co-infinite set works there
    return MorphismCandidate(
        pull=_as_ic,
        push=lambda y: y,
        source_kinds=(IC, IC),
        target_kinds=(COLORING, UPSET),
        name="i->r identity",
    )


def dominating_to_unbounded() -> MorphismCandidate:
    # +1 realizes "dominating families are unbounded": if x+1 is
    # eventually below y then x cannot eventually sit above y
    return MorphismCandidate(
        pull=plus_one,
        push=lambda y: y,
        source_kinds=(APFUNC, APFUNC),
        target_kinds=(APFUNC, APFUNC),
        name="d->b successor",
    )


def dominating_to_splitting() -> MorphismCandidate:
    return MorphismCandidate(
        pull=lambda a: plus_one(next_element_func(a)),
        push=IterateColoring,
        source_kinds=(APFUNC, APFUNC),
        target_kinds=(UPSET, COLORING),
        name="d->s next-element / block coloring",
    )


def unsplitting_to_unbounded() -> MorphismCandidate:
    from .triples import dual_morphism

    c = dual_morphism(dominating_to_splitting())
    return MorphismCandidate(
        pull=c.pull,
        push=c.push,
        source_kinds=(COLORING, UPSET),
        target_kinds=(APFUNC, APFUNC),
        name="r->b dual of d->s",
    )


def ad_to_pseudo_intersection() -> MorphismCandidate:
    return MorphismCandidate(
        pull=_as_ic,
        push=lambda y: y.complement(),
        source_kinds=(IC, IC),
        target_kinds=(UPSET, UPSET),
        name="a->p complement",
    )


def tower_to_pseudo_intersection() -> MorphismCandidate:
    return MorphismCandidate(
        pull=lambda x: x,
        push=lambda y: y,
        source_kinds=(UPSET, UPSET),
        target_kinds=(UPSET, UPSET),
        name="t->p identity",
    )


def unbounded_to_pseudo_intersection() -> MorphismCandidate:
    return MorphismCandidate(
        pull=branchmap.trace_bound_func,
        push=GluedImage,
        source_kinds=(APFUNC, APFUNC),
        target_kinds=(UPSET, UPSET),
        name="b->p glued map / trace bound",
    )


def sigma_unsplitting_to_unsplitting() -> MorphismCandidate:
    return MorphismCandidate(
        pull=lambda c: (c,),
        push=lambda y: y,
        source_kinds=(COLORING_TUPLE, UPSET),
        target_kinds=(COLORING, UPSET),
        name="r_sigma->r constant sequence",
    )


def sigma_unsplitting_to_n_unsplitting(colors: int) -> MorphismCandidate:
    bits = max(1, (colors - 1).bit_length())

    def pull(c: APFunc) -> tuple[UPSet, ...]:
        return tuple(bit_coloring(c, i) for i in range(bits))

    return MorphismCandidate(
        pull=pull,
        push=lambda y: y,
        source_kinds=(COLORING_TUPLE, UPSET),
        target_kinds=(coloring_kind(colors), UPSET),
        name=f"r_sigma->r_{colors} bit colorings",
    )


def n_unsplitting_inclusion(colors_from: int, colors_to: int) -> MorphismCandidate:
    if colors_from < colors_to:
        raise ValueError("inclusion goes from more colors to fewer")
    return MorphismCandidate(
        pull=lambda c: c,
        push=lambda y: y,
        source_kinds=(coloring_kind(colors_from), UPSET),
        target_kinds=(coloring_kind(colors_to), UPSET),
        name=f"r_{colors_from}->r_{colors_to} inclusion",
    )


def sigma_splitting_to_splitting() -> MorphismCandidate:
    return MorphismCandidate(
        pull=lambda a: (a,),
        push=lambda y: y,
        source_kinds=(UPSET_TUPLE, UPSET),
        target_kinds=(UPSET, COLORING),
        name="s_sigma->s singleton",
    )


def n_splitting_to_m_splitting(n: int, m: int) -> MorphismCandidate:
    if m > n:
        raise ValueError("splitting strength only drops")

    def pull(xs: tuple[UPSet, ...]) -> tuple[UPSet, ...]:
        return xs + (xs[-1],) * (n - len(xs))

    return MorphismCandidate(
        pull=pull,
        push=lambda y: y,
        source_kinds=(upset_tuple_kind(n), COLORING),
        target_kinds=(upset_tuple_kind(m), COLORING),
        name=f"s_{n}->s_{m} padding",
    )


def finite_splitting_to_n_splitting(n: int) -> MorphismCandidate:
    return MorphismCandidate(
        pull=lambda xs: xs,
        push=lambda y: y,
        source_kinds=(UPSET_TUPLE, COLORING),
        target_kinds=(upset_tuple_kind(n), COLORING),
        name=f"s_finite->s_{n} inclusion",
    )


def nm_partition_candidate(a_n: int, a_m: int, b_n: int, b_m: int) -> MorphismCandidate:
    """The even-partition map behind positive verdicts in the
    (n, m)-splitting order: each incoming set is cut into almost equal
    infinite pieces, remainder to the left."""
    from .splitorder import SplitSpec, bt_edge, column_sizes
    from .upsets import partition_upset

    verdict = bt_edge(SplitSpec(a_n, a_m), SplitSpec(b_n, b_m))
    if not verdict.morphism:
        raise ValueError(f"no morphism: {verdict.describe()}")
    sizes = column_sizes(a_n, b_n)

    def pull(xs: tuple[UPSet, ...]) -> tuple[UPSet, ...]:
        pieces: list[UPSet] = []
        for b, size in zip(xs, sizes):
            pieces.extend(partition_upset(b, size))
        return tuple(pieces)

    return MorphismCandidate(
        pull=pull,
        push=lambda y: y,
        source_kinds=(upset_tuple_kind(a_n), COLORING),
        target_kinds=(upset_tuple_kind(b_n), COLORING),
        name=f"s_{a_n},{a_m}->s_{b_n},{b_m} even partition",
    )


# -- probe suites -------------------------------------------------------------

UPSET_PROBES: tuple[UPSet, ...] = (
    EVENS,
    ODDS,
    UPSet.from_residues(4, {0}),
    UPSet.from_residues(4, {2}),
    UPSet.from_residues(3, {0}),
    UPSet.from_residues(3, {1, 2}),
)

IC_PROBES: tuple[UPSet, ...] = UPSET_PROBES

COLORING_PROBES: tuple[UPSet, ...] = UPSET_PROBES + (
    FULL,
    UPSet.from_finite({0, 1, 2}),
    UPSet.from_finite({0, 4}).complement(),
)

APFUNC_PROBES: tuple[APFunc, ...] = (
    ZERO,
    constant(5),
    IDENTITY,
    APFunc((), (0,), 2),
    APFunc((), (1,), 2),
    APFunc((), (1,), 1),
    APFunc((3, 1), (0, 1), 2),
)

CHAIN_FAMILY = [
    UPSet.from_residues(8, {0}),
    UPSet.from_residues(4, {0}),
    EVENS,
]


def probes_for_kind(kind: str) -> tuple:
    if kind in (UPSET,):
        return UPSET_PROBES
    if kind == IC:
        return IC_PROBES
    if kind == COLORING:
        return COLORING_PROBES
    if kind == APFUNC:
        return APFUNC_PROBES
    if kind.startswith("coloring") and kind != COLORING_TUPLE:
        colors = int(kind.removeprefix("coloring"))
        mods = [
            APFunc((), tuple(range(colors)), 0),
            APFunc((), (0,) * (colors - 1) + (colors - 1,), 0),
            constant(colors - 1),
            APFunc((1, 0), (0, 1), 0),
        ]
        return tuple(mods)
    if kind == COLORING_TUPLE:
        return ((EVENS,), (EVENS, UPSet.from_residues(4, {1})), (FULL,))
    if kind == UPSET_TUPLE:
        return ((EVENS,), (EVENS, ODDS), UPSET_PROBES[:3])
    if kind.startswith("upset_tuple"):
        arity = int(kind.removeprefix("upset_tuple"))
        pool = UPSET_PROBES
        return (
            tuple(pool[i % len(pool)] for i in range(arity)),
            tuple(pool[(i + 1) % len(pool)] for i in range(arity)),
        )
    raise ValueError(f"no probe suite for kind {kind!r}")


@dataclass(frozen=True)
class BuiltinMorphism:
    source: str
    target: str
    candidate: MorphismCandidate
    families: tuple[tuple, ...] = ()


def builtin_morphisms() -> list[BuiltinMorphism]:
    dyadics = tuple(dyadic_family(4))
    return [
        BuiltinMorphism("u", "r", ultrafilter_to_unsplitting(), (CHAIN_FAMILY,)),
        BuiltinMorphism("i", "r", independence_to_unsplitting()),
        BuiltinMorphism("d", "b", dominating_to_unbounded()),
        BuiltinMorphism("d", "s", dominating_to_splitting()),
        BuiltinMorphism("r", "b", unsplitting_to_unbounded()),
        BuiltinMorphism("a", "p", ad_to_pseudo_intersection(), (dyadics, (EVENS,))),
        BuiltinMorphism("t", "p", tower_to_pseudo_intersection(), (CHAIN_FAMILY,)),
        BuiltinMorphism(
            "b",
            "p",
            unbounded_to_pseudo_intersection(),
            ((IDENTITY, APFunc((), (0,), 2)), (ZERO, constant(3))),
        ),
        BuiltinMorphism("r_sigma", "r", sigma_unsplitting_to_unsplitting()),
        BuiltinMorphism("r_sigma", "r_4", sigma_unsplitting_to_n_unsplitting(4)),
        BuiltinMorphism("r_4", "r_3", n_unsplitting_inclusion(4, 3)),
        BuiltinMorphism("s_sigma", "s", sigma_splitting_to_splitting()),
        BuiltinMorphism("s_3", "s_2", n_splitting_to_m_splitting(3, 2)),
        BuiltinMorphism("s_finite", "s_3", finite_splitting_to_n_splitting(3)),
    ]


def default_probe_check(entry: BuiltinMorphism):
    """Run the standard probe suite against one built-in candidate."""
    from .triples import check_morphism

    cat = catalog()
    source = cat[entry.source]
    target = cat[entry.target]
    return check_morphism(
        entry.candidate,
        source,
        target,
        target_minus_probes=probes_for_kind(target.minus_kind),
        source_plus_probes=probes_for_kind(source.plus_kind),
        families=entry.families,
    )


# -- diagrams ------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeRecord:
    source: str
    target: str
    verdict: str  # BT-morphism | no-BT-morphism | no-morphism-at-all | open | zfc-inequality
    provenance: str


@dataclass(frozen=True)
class Diagram:
    kind: str
    nodes: tuple[str, ...]
    edges: tuple[EdgeRecord, ...]

    def positive_edges(self) -> set[tuple[str, str]]:
        return {
            (e.source, e.target)
            for e in self.edges
            if e.verdict in ("BT-morphism", "zfc-inequality")
        }

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [
                {
                    "src": e.source,
                    "dst": e.target,
                    "verdict": e.verdict,
                    "provenance": e.provenance,
                }
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        style = {
            "BT-morphism": "",
            "zfc-inequality": "",
            "no-BT-morphism": ' [style=dashed, color=red, label="no"]',
            "no-morphism-at-all": ' [style=dashed, color=red, label="none"]',
            "open": ' [style=dotted, label="open"]',
        }
        lines = [f"digraph {self.kind}_diagram {{"]
        for v in self.nodes:
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.source}" -> "{e.target}"{style[e.verdict]};')
        lines.append("}")
        return "\n".join(lines)


CLASSICAL_EDGES: tuple[tuple[str, str], ...] = (
    ("i", "d"),
    ("i", "r"),
    ("u", "r"),
    ("d", "s"),
    ("d", "b"),
    ("r", "b"),
    ("a", "b"),
    ("s", "p"),
    ("b", "p"),
)

BOREL_POSITIVE_EDGES: tuple[tuple[str, str], ...] = (
    ("i", "r"),
    ("u", "r"),
    ("d", "s"),
    ("d", "b"),
    ("r", "b"),
    ("b", "p"),
    ("a", "p"),
    ("t", "p"),
)

# Edges of the classical picture that fail definably, plus the open and
# incomparability annotations.
BOREL_NEGATIVE_EDGES: tuple[EdgeRecord, ...] = (
    EdgeRecord(
        "i",
        "d",
        "no-BT-morphism",
        "forcing: such maps would compare unsplitting with dominating, "
        "which the Miller model separates",
    ),
    EdgeRecord(
        "r",
        "d",
        "no-BT-morphism",
        "forcing: fails in the Miller model and both triples are simple",
    ),
    EdgeRecord(
        "a",
        "b",
        "no-morphism-at-all",
        "gadget: parity max over a complementary pair refutes every map pair",
    ),
    EdgeRecord(
        "s",
        "p",
        "no-BT-morphism",
        "forcing: restricted Mathias forcing keeps the ground model splitting",
    ),
    EdgeRecord(
        "p",
        "t",
        "no-BT-morphism",
        "gadget: three sets with empty triple intersection but infinite "
        "pairwise intersections",
    ),
    EdgeRecord("b", "t", "open", "open question"),
) + tuple(
    EdgeRecord(
        x,
        y,
        "no-BT-morphism",
        "forcing: would yield a definable comparison with the unsplitting "
        "triple that forcing separates",
    )
    for x, y in itertools.permutations(("i", "u", "a"), 2)
)


def vd_diagram(kind: str) -> Diagram:
    """The two comparison diagrams over the nine catalog invariants."""
    if kind == "classical":
        nodes = ("i", "u", "d", "r", "a", "s", "b", "p")
        edges = tuple(
            EdgeRecord(s, t, "zfc-inequality", "classical diagram")
            for s, t in CLASSICAL_EDGES
        )
        return Diagram("classical", nodes, edges)
    if kind == "borel":
        nodes = ("i", "u", "d", "r", "a", "s", "b", "p", "t")
        by_edge = {(b.source, b.target): b for b in builtin_morphisms()}
        positives = tuple(
            EdgeRecord(
                s,
                t,
                "BT-morphism",
                f"built-in candidate: {by_edge[(s, t)].candidate.name}",
            )
            for s, t in BOREL_POSITIVE_EDGES
        )
        negatives = tuple(
            e for e in BOREL_NEGATIVE_EDGES if e.source in nodes and e.target in nodes
        )
        return Diagram("borel", nodes, positives + negatives)
    raise ValueError("diagram kind must be classical or borel")
