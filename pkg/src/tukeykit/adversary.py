"""The adversary engine: interval partitions and predictors built
against a continuous machine, predicted families, and non-splitting
certificates for their images.

A continuous machine answers queries "given this bit prefix, what is
the output's value at m?" with 0, 1, or undecided, and decided answers
must persist under prefix extension.  Level by level the engine finds a
fresh pivot position and, for every history over the intervals built so
far, an extension forcing the machine's output to 1 at that pivot.  The
extensions, padded to a common length, become the next interval and the
predictor's forecasts.  Elements predicted on a fixed residue class of
levels keep their free intervals fully flexible (so they can split
anything living there), while their images are pinned to 1 on the whole
pivot class, which is the finite obstruction the certificates record.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Protocol

from .upsets import UPSet


class MachineFault(RuntimeError):
    """A machine contradicted one of its recorded decided answers."""


@dataclass
class PartialProgress:
    level: int
    history: str
    pivot_tried: int


class BudgetExhausted(RuntimeError):
    def __init__(self, progress: PartialProgress, certificate: "AdversaryCertificate | None"):
        self.progress = progress
        self.partial = certificate
        super().__init__(
            f"query budget exhausted at level {progress.level}, "
            f"history {progress.history!r}, pivot {progress.pivot_tried}"
        )


class ContinuousMachine(Protocol):
    name: str

    def query(self, prefix: str, m: int) -> int | None: ...


@dataclass
class FunctionMachine:
    """A machine computing its answers from a total bit-prefix rule."""

    name: str
    rule: Callable[[str, int], int | None]

    def query(self, prefix: str, m: int) -> int | None:
        return self.rule(prefix, m)


def identity_machine() -> FunctionMachine:
    return FunctionMachine(
        "identity", lambda prefix, m: int(prefix[m]) if m < len(prefix) else None
    )


def constant_machine(bit: int) -> FunctionMachine:
    return FunctionMachine(f"constant-{bit}", lambda prefix, m: bit)


def flip_machine() -> FunctionMachine:
    return FunctionMachine(
        "flip", lambda prefix, m: 1 - int(prefix[m]) if m < len(prefix) else None
    )


@dataclass
class MeteredMachine:
    """Budget wrapper; every query decrements the remaining budget."""

    inner: ContinuousMachine
    budget: int
    used: int = 0

    @property
    def name(self) -> str:
        return self.inner.name

    def query(self, prefix: str, m: int) -> int | None:
        if self.used >= self.budget:
            raise _BudgetSignal()
        self.used += 1
        return self.inner.query(prefix, m)


class _BudgetSignal(Exception):
    pass


@dataclass(frozen=True)
class IntervalPartition:
    """Consecutive finite intervals [cuts[k], cuts[k+1])."""

    cuts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cuts or self.cuts[0] != 0:
            raise ValueError("cuts start at 0")
        if any(a >= b for a, b in zip(self.cuts, self.cuts[1:])):
            raise ValueError("intervals must be nonempty")

    @property
    def depth(self) -> int:
        return len(self.cuts) - 1

    def interval(self, k: int) -> range:
        return range(self.cuts[k], self.cuts[k + 1])

    def positions_of_levels(self, levels) -> list[int]:
        return [p for k in levels for p in self.interval(k)]


@dataclass(frozen=True)
class Predictor:
    """Total forecast tables: level k maps each history over the earlier
    intervals to a block over interval k."""

    partition: IntervalPartition
    tables: tuple[Mapping[str, str], ...]

    def __post_init__(self) -> None:
        for k, table in enumerate(self.tables):
            width = self.partition.cuts[k]
            block = self.partition.cuts[k + 1] - width
            if len(table) != 2**width:
                raise ValueError(f"table {k} is not total over 2^{width} histories")
            if any(len(v) != block for v in table.values()):
                raise ValueError(f"table {k} forecasts must have length {block}")

    def forecast(self, history: str, k: int) -> str:
        return self.tables[k][history]


def predicts(predictor: Predictor, c: "str | UPSet", k: int) -> bool:
    """Does the predictor's forecast at level k match c?"""
    cuts = predictor.partition.cuts
    if k >= predictor.partition.depth:
        raise ValueError(f"predictor depth {predictor.partition.depth} exceeded")
    bits = _bits_of(c, cuts[k + 1])
    return predictor.forecast(bits[: cuts[k]], k) == bits[cuts[k] : cuts[k + 1]]


def _bits_of(c: "str | UPSet", length: int) -> str:
    if isinstance(c, UPSet):
        return "".join(str(c.bit(k)) for k in range(length))
    if len(c) < length:
        raise ValueError(f"bit string of length {len(c)} does not reach {length}")
    return c


@dataclass(frozen=True)
class DecidedFact:
    level: int
    history: str
    pivot: int

    def prefix(self, predictor: Predictor) -> str:
        return self.history + predictor.forecast(self.history, self.level)


@dataclass(frozen=True)
class AdversaryCertificate:
    machine_name: str
    predictor: Predictor
    pivots: tuple[int, ...]
    facts: tuple[DecidedFact, ...]
    queries_used: int

    @property
    def partition(self) -> IntervalPartition:
        return self.predictor.partition

    @property
    def depth(self) -> int:
        return self.partition.depth

    def to_json(self) -> dict:
        return {
            "machine": self.machine_name,
            "cuts": list(self.partition.cuts),
            "pivots": list(self.pivots),
            "tables": [dict(sorted(t.items())) for t in self.predictor.tables],
            "facts": [
                {"level": f.level, "history": f.history, "pivot": f.pivot}
                for f in self.facts
            ],
            "queries_used": self.queries_used,
        }


def verify_certificate(cert: AdversaryCertificate, machine: ContinuousMachine) -> int:
    """Re-run every decided fact against a fresh machine; returns the
    number of confirmed facts and raises on any contradiction."""
    for fact in cert.facts:
        answer = machine.query(fact.prefix(cert.predictor), fact.pivot)
        if answer != 1:
            raise MachineFault(
                f"machine answered {answer!r} at pivot {fact.pivot} on a "
                f"recorded level-{fact.level} cylinder"
            )
    return len(cert.facts)


def _histories(width: int):
    for bits in itertools.product("01", repeat=width):
        yield "".join(bits)


def build_adversary(
    machine: ContinuousMachine,
    depth: int,
    budget: int = 10**6,
    *,
    dense_extension: Callable[[str], str] | None = None,
) -> AdversaryCertificate:
    """Run the level construction to the requested depth.

    Per level the engine dovetails over pivots; for each pivot every
    history searches extensions in (length, lexicographic) order, with
    the allowed extension length growing with the pivot.  The first
    pivot where every history succeeds becomes the level's pivot, and
    the per-history extensions (padded to a common length) become the
    next interval and the forecasts.  Exhaustion raises with the failing
    frontier; it is never retried silently.
    """
    hook = dense_extension or (getattr(machine, "dense_extension", None))
    metered = MeteredMachine(machine, budget)
    cuts = [0]
    pivots: list[int] = []
    tables: list[dict[str, str]] = []
    facts: list[DecidedFact] = []

    def fail(level: int, history: str, pivot: int):
        partial = None
        if level > 0:
            partial = AdversaryCertificate(
                machine.name,
                Predictor(IntervalPartition(tuple(cuts)), tuple(tables)),
                tuple(pivots),
                tuple(facts),
                metered.used,
            )
        return BudgetExhausted(PartialProgress(level, history, pivot), partial)

    for level in range(depth):
        width = cuts[-1]
        base = {h: h + (hook(h) if hook else "") for h in _histories(width)}
        pivot = (pivots[-1] + 1) if pivots else 0
        found: dict[str, str] | None = None
        while found is None:
            attempt: dict[str, str] = {}
            try:
                for history, stem in base.items():
                    ext = _find_extension(metered, stem, pivot, pivot + 2 - width)
                    if ext is None:
                        attempt = {}
                        break
                    attempt[history] = stem[width:] + ext
                else:
                    found = attempt
                    break
            except _BudgetSignal:
                raise fail(level, history, pivot) from None
            pivot += 1
        block = max(1, max(len(v) for v in found.values()))
        table = {}
        for history, ext in found.items():
            padded = ext + "0" * (block - len(ext))
            table[history] = padded
            try:
                answer = metered.query(history + padded, pivot)
            except _BudgetSignal:
                raise fail(level, history, pivot) from None
            if answer != 1:
                raise MachineFault(
                    "a decided answer did not persist under padding; the "
                    "machine is not monotone"
                )
            facts.append(DecidedFact(level, history, pivot))
        cuts.append(cuts[-1] + block)
        pivots.append(pivot)
        tables.append(table)

    return AdversaryCertificate(
        machine.name,
        Predictor(IntervalPartition(tuple(cuts)), tuple(tables)),
        tuple(pivots),
        tuple(facts),
        metered.used,
    )


def _find_extension(
    machine: MeteredMachine, stem: str, pivot: int, max_len: int
) -> str | None:
    """Shortest-then-lexicographically-least extension making the
    machine decide 1 at the pivot."""
    for length in range(max(0, max_len) + 1):
        for bits in itertools.product("01", repeat=length):
            ext = "".join(bits)
            if machine.query(stem + ext, pivot) == 1:
                return ext
    return None


# -- predicted families -------------------------------------------------------


def predicted_element(
    cert: AdversaryCertificate,
    n: int,
    r: int,
    free_bits: Mapping[int, str] | None = None,
    fill: str = "0",
) -> str:
    """An element predicted at every level congruent to r mod n, with
    the remaining intervals taken from ``free_bits`` (default: fill)."""
    if not 0 <= r < n:
        raise ValueError("need 0 <= r < n")
    if fill not in ("0", "1"):
        raise ValueError("fill must be a bit")
    cuts = cert.partition.cuts
    out = ""
    for k in range(cert.depth):
        block = cuts[k + 1] - cuts[k]
        if k % n == r:
            out += cert.predictor.forecast(out, k)
        else:
            bits = (free_bits or {}).get(k, fill * block)
            if len(bits) != block or set(bits) - {"0", "1"}:
                raise ValueError(f"free bits for level {k} must be {block} bits")
            out += bits
    return out


def free_positions(cert: AdversaryCertificate, n: int, r: int) -> list[int]:
    """Positions in the intervals this residue class leaves free."""
    return cert.partition.positions_of_levels(
        k for k in range(cert.depth) if k % n != r
    )


@dataclass(frozen=True)
class SplitterTrace:
    element: str
    n: int
    r: int
    hits: tuple[tuple[int, int], ...]  # (position, assigned bit) on the target

    @property
    def ones(self) -> int:
        return sum(1 for _, b in self.hits if b == 1)

    @property
    def zeros(self) -> int:
        return sum(1 for _, b in self.hits if b == 0)


def splitter_from_free_class(
    cert: AdversaryCertificate, n: int, r: int, target: UPSet
) -> SplitterTrace:
    """A predicted element alternating its free bits on the target, so
    both colors hit the target inside the free region."""
    free = [p for p in free_positions(cert, n, r) if p in target]
    if len(free) < 2:
        raise ValueError(
            "target meets the free region fewer than twice within the "
            "constructed depth"
        )
    assignment = {p: (1 - i % 2) for i, p in enumerate(free)}
    cuts = cert.partition.cuts
    free_bits = {}
    for k in range(cert.depth):
        if k % n == r:
            continue
        free_bits[k] = "".join(
            str(assignment.get(p, 0)) for p in cert.partition.interval(k)
        )
    element = predicted_element(cert, n, r, free_bits)
    hits = tuple((p, assignment[p]) for p in free)
    for p, b in hits:
        assert int(element[p]) == b
    return SplitterTrace(element, n, r, hits)


@dataclass(frozen=True)
class ImagePinning:
    """Certified machine answers: the image of the element is 1 at every
    pivot of the predicted residue class, so within the constructed
    depth it cannot take the value 0 there."""

    element: str
    n: int
    r: int
    pinned_pivots: tuple[int, ...]


def image_nonsplit_certificate(
    cert: AdversaryCertificate,
    machine: ContinuousMachine,
    element: str,
    n: int,
    r: int,
) -> ImagePinning:
    """Re-query the machine along the element's predicted levels and
    confirm the recorded value-1 answers at the class pivots."""
    cuts = cert.partition.cuts
    if len(element) < cuts[-1]:
        raise ValueError("element must be determined over the whole partition")
    pinned = []
    for k in range(cert.depth):
        if k % n != r:
            continue
        history = element[: cuts[k]]
        if element[cuts[k] : cuts[k + 1]] != cert.predictor.forecast(history, k):
            raise ValueError(f"element is not predicted at level {k}")
        answer = machine.query(element[: cuts[k + 1]], cert.pivots[k])
        if answer != 1:
            raise MachineFault(
                f"machine answered {answer!r} at pivot {cert.pivots[k]}, "
                f"contradicting the level-{k} decided fact"
            )
        pinned.append(cert.pivots[k])
    return ImagePinning(element, n, r, tuple(pinned))


@dataclass(frozen=True)
class FamilyReport:
    spec: tuple[int, int]
    representative: str
    splits: tuple[SplitterTrace, ...]
    pinnings: tuple[ImagePinning, ...]
    skipped_targets: tuple[int, ...]


def multiclass_family(
    cert: AdversaryCertificate,
    machine: ContinuousMachine,
    specs: list[tuple[int, int]],
    targets: list[UPSet] | None = None,
) -> list[FamilyReport]:
    """One report per residue class: a representative predicted element,
    splitter traces for the targets its free region can reach, and the
    pinned-image certificates pairing them."""
    reports = []
    for n, r in specs:
        rep = predicted_element(cert, n, r, fill="1")
        splits = []
        pinnings = [image_nonsplit_certificate(cert, machine, rep, n, r)]
        skipped = []
        for i, target in enumerate(targets or []):
            try:
                trace = splitter_from_free_class(cert, n, r, target)
            except ValueError:
                skipped.append(i)
                continue
            splits.append(trace)
            pinnings.append(
                image_nonsplit_certificate(cert, machine, trace.element, n, r)
            )
        reports.append(
            FamilyReport((n, r), rep, tuple(splits), tuple(pinnings), tuple(skipped))
        )
    return reports
