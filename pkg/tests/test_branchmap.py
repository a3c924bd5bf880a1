import itertools
import random

import pytest

from tukeykit.apfuncs import APFunc, ZERO, constant
from tukeykit.branchmap import (
    Branch,
    ColumnTuple,
    InsufficientDepth,
    bound_from_trace,
    branch_of,
    column_level_set,
    common_witnesses,
    divergence_level,
    empty_columns_certificate,
    encode_blocks,
    exact_intersection,
    image_contains,
    image_prefix,
    level_count,
    pair,
    trace_bound_func,
    tuple_at,
    tuple_code,
    tuple_decode,
    tuple_in_column_image,
    tuple_index,
    unpair,
    witness_stream,
)
from tukeykit.upsets import UPSet

from helpers import naive_level_tuples


def small_apfunc(rng: random.Random) -> APFunc:
    prefix = tuple(rng.randrange(3) for _ in range(rng.randrange(3)))
    base = tuple(rng.randrange(3) for _ in range(rng.randrange(1, 3)))
    return APFunc(prefix, base, rng.randrange(3))


class TestCoding:
    def test_pair_unpair(self):
        for z in range(2000):
            x, y = unpair(z)
            assert pair(x, y) == z

    def test_single_entry_code_is_identity(self):
        assert tuple_code([(0,)]) == 0
        assert tuple_code([(2,)]) == 2

    def test_code_decode_round_trip(self):
        for n in (1, 2, 3):
            for code in range(1000):
                assert tuple_code(tuple_decode(code, n)) == code

    def test_decode_code_round_trip(self):
        rng = random.Random(7)
        for n in (1, 2, 3):
            for _ in range(50):
                matrix = tuple(
                    tuple(rng.randrange(4) for _ in range(n)) for _ in range(n)
                )
                assert tuple_decode(tuple_code(matrix), n) == matrix

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            tuple_code([(1, 2), (3,)])


class TestBranches:
    def test_identity_region(self):
        b = branch_of(APFunc((5, 7), (0,), 0), 2)
        assert b.restrict(2) == (5, 7)

    def test_block_coding(self):
        b = branch_of(APFunc((3, 2), (0,), 0), 1)
        # value 2 becomes the block 110
        assert b.restrict(4) == (3, 1, 1, 0)
        assert encode_blocks(1, (3, 2)) == (3, 1, 1, 0)

    def test_prefix_monotone(self):
        rng = random.Random(1)
        for _ in range(100):
            n = rng.randrange(1, 4)
            f = small_apfunc(rng)
            b = branch_of(f, n)
            l1 = rng.randrange(1, 8)
            l2 = rng.randrange(l1, 10)
            assert b.restrict(l2)[:l1] == b.restrict(l1)

    def test_entry_backed_depth_error(self):
        b = Branch(1, entries=(4, 1, 0))
        assert b.restrict(2) == (4, 1)
        with pytest.raises(InsufficientDepth):
            b.restrict(5)

    def test_divergence_level(self):
        rng = random.Random(2)
        for _ in range(60):
            n = rng.randrange(1, 4)
            f, g = small_apfunc(rng), small_apfunc(rng)
            bf, bg = branch_of(f, n), branch_of(g, n)
            lvl = divergence_level(bf, bg)
            if lvl is None:
                assert f == g
            else:
                assert bf.restrict(lvl) != bg.restrict(lvl)
                assert bf.restrict(lvl - 1) == bg.restrict(lvl - 1)


class TestTupleEnumeration:
    def test_level_count_matches_naive(self):
        for n in (1, 2):
            for level in range(n + 1, n + 4):
                assert len(naive_level_tuples(n, level)) == level_count(n, level)

    def test_index_round_trip(self):
        for n in (1, 2):
            for m in range(400):
                assert tuple_index(tuple_at(n, m)) == m

    def test_enumeration_order_is_index_order(self):
        for n in (1, 2):
            ts = naive_level_tuples(n, n + 1) + naive_level_tuples(n, n + 2)
            indices = sorted(tuple_index(t) for t in ts)
            assert indices == list(range(len(ts)))


class TestColumnLevelSets:
    def test_single_column_single_element(self):
        b = branch_of(ZERO, 1)
        found = column_level_set(1, b, 2)
        assert len(found) == 1
        assert found[0].nodes == ((0, 0),)

    def test_large_first_value_empty(self):
        b = branch_of(constant(9), 1)
        assert column_level_set(1, b, 3) == []

    def test_matches_naive_filter(self):
        rng = random.Random(3)
        for n, level in ((1, 3), (1, 5), (2, 4), (2, 5)):
            for _ in range(4):
                f = small_apfunc(rng)
                b = branch_of(f, n)
                mine = column_level_set(n, b, level)
                r = b.restrict(level)
                naive = [t for t in naive_level_tuples(n, level) if r in t.nodes]
                assert mine == sorted(naive, key=tuple_index)

    def test_cross_column_common_tuples(self):
        f1 = APFunc((0, 0), (1,), 0)
        f2 = APFunc((0, 0), (2,), 0)
        b1, b2 = branch_of(f1, 2), branch_of(f2, 2)
        for level in (3, 4):
            s1 = {t.nodes for t in column_level_set(2, b1, level)}
            s2 = {t.nodes for t in column_level_set(2, b2, level)}
            naive_common = {
                t.nodes
                for t in naive_level_tuples(2, level)
                if b1.restrict(level) in t.nodes and b2.restrict(level) in t.nodes
            }
            assert s1 & s2 == naive_common


class TestImage:
    def test_prefix_monotone_in_bound(self):
        f = APFunc((), (0, 1), 0)
        small = image_prefix(f, 60)
        large = image_prefix(f, 120)
        assert set(small.elements) == {x for x in large.elements if x < 60}

    def test_continuity_depth_report(self):
        f = APFunc((), (1,), 0)
        result = image_prefix(f, 80)
        # mutating the function beyond the reported depth cannot change
        # the computed prefix
        mutated = APFunc(
            tuple(f(k) for k in range(result.depth_used)) + (f(result.depth_used) + 9,),
            (0,),
            1,
        )
        assert image_prefix(mutated, 80).elements == result.elements

    def test_column_one_growth_linear(self):
        # one admissible tuple per level in the first column
        b = branch_of(ZERO, 1)
        counts = [len(column_level_set(1, b, level)) for level in range(2, 12)]
        assert counts == [1] * 10

    def test_membership_agrees_with_prefix(self):
        f = APFunc((1,), (0, 2), 1)
        result = image_prefix(f, 90)
        for x in range(90):
            assert (x in set(result.elements)) == image_contains(f, x)


class TestWitnesses:
    def test_single_branch_counts(self):
        ws = witness_stream(1, [branch_of(ZERO, 1)], 10)
        assert len(ws) == 10
        levels = [t.level for t in ws]
        assert levels == sorted(set(levels))

    def test_three_branches(self):
        # zero identity regions keep the shared prefix code at 0, so
        # witnesses exist from level 4 on
        fs = [
            APFunc((0, 0, 0), (1,), 0),
            APFunc((0, 0, 0), (2,), 0),
            APFunc((0, 0, 0, 5), (0,), 1),
        ]
        branches = [branch_of(f, 3) for f in fs]
        ws = witness_stream(3, branches, 8)
        assert len(ws) == 8
        for t in ws:
            for b in branches:
                assert tuple_in_column_image(3, b, t)

    def test_astronomic_code_guarded(self):
        from tukeykit.branchmap import EnumerationBudget

        branches = [branch_of(constant(1), 3)] * 3
        with pytest.raises(EnumerationBudget):
            witness_stream(3, branches, 1)

    def test_common_witnesses_verified(self):
        found = common_witnesses([ZERO, constant(2)], 10)
        assert found.column == 2
        assert len(found.elements) == 10
        for x in found.elements:
            assert image_contains(ZERO, x)
            assert image_contains(constant(2), x)

    def test_duplicates_deduplicated(self):
        found = common_witnesses([ZERO, ZERO], 5)
        assert found.column == 1


class TestExactIntersection:
    def test_distinct_at_zero_empty(self):
        fs = [ZERO, constant(1)]
        result = exact_intersection(1, [branch_of(f, 1) for f in fs])
        assert result.tuples == ()

    def test_shared_prefix_counts(self):
        # branches equal to depth 4, separating at entry 4
        a = Branch(1, entries=(0, 0, 0, 0, 0, 0))
        b = Branch(1, entries=(0, 0, 0, 0, 1, 1))
        result = exact_intersection(1, [a, b])
        assert result.separation_level == 5
        # shared tuples can live at levels 2, 3, 4 only
        assert {t.level for t in result.tuples} <= {2, 3, 4}
        assert result.size == 3

    def test_equal_branches_rejected(self):
        with pytest.raises(ValueError):
            exact_intersection(1, [branch_of(ZERO, 1), branch_of(ZERO, 1)])

    def test_matches_brute_force(self):
        rng = random.Random(11)
        done = 0
        while done < 40:
            n = rng.randrange(1, 3)
            fs = []
            while len(fs) < n + 1:
                f = small_apfunc(rng)
                if f not in fs:
                    fs.append(f)
            branches = [branch_of(f, n) for f in fs]
            sep = max(
                divergence_level(x, y)
                for x, y in itertools.combinations(branches, 2)
            )
            if sep > 6:
                continue
            result = exact_intersection(n, branches)
            assert result.separation_level == sep
            brute = []
            for level in range(n + 1, result.separation_level):
                rs = [b.restrict(level) for b in branches]
                for t in naive_level_tuples(n, level):
                    if all(r in t.nodes for r in rs):
                        brute.append(t)
            assert list(result.tuples) == sorted(brute, key=tuple_index)
            done += 1


class TestEmptyColumns:
    def test_three_functions_distinct_at_one(self):
        fs = [ZERO, constant(1), constant(2)]
        cert = empty_columns_certificate(fs, 2, 1)
        assert [c.column for c in cert.covered] == [1, 2]
        assert cert.uncovered == ()

    def test_shared_prefix_reported(self):
        fs = [ZERO, APFunc((0, 1), (0,), 0), APFunc((0, 2), (0,), 0)]
        cert = empty_columns_certificate(fs, 2, 2)
        assert [c for c, _ in cert.uncovered] == [1]
        assert [c.column for c in cert.covered] == [2]

    def test_hypothesis_violation(self):
        with pytest.raises(ValueError):
            empty_columns_certificate([ZERO, ZERO], 1, 3)

    def test_cross_check_with_exact_intersection(self):
        fs = [ZERO, constant(1), constant(2)]
        cert = empty_columns_certificate(fs, 2, 1)
        for fact in cert.covered:
            branches = [branch_of(fs[i], fact.column) for i in fact.witnesses]
            assert exact_intersection(fact.column, branches).tuples == ()


def sample_observations(rng, n, branch, levels):
    """Observations drawn from the branch's column image: the branch
    restriction in one slot, arbitrary compatible nodes elsewhere."""
    out = []
    for level in levels:
        r = branch.restrict(level)
        pos = rng.randrange(n)
        nodes = []
        for j in range(n):
            if j == pos:
                nodes.append(r)
            else:
                prefix = tuple(rng.randrange(level) for _ in range(n))
                tail = tuple(rng.randrange(2) for _ in range(level - n))
                nodes.append(prefix + tail)
        code = tuple_code([t[:n] for t in nodes])
        if code >= level:
            continue
        out.append(ColumnTuple(n, tuple(nodes)))
    return out


class TestBoundFromTrace:
    def test_single_observation(self):
        t = ColumnTuple(1, ((0, 1, 0),))
        cert = bound_from_trace(1, [t])
        assert not cert.empty
        assert cert.bound == (0, 1, 0)

    def test_incompatible_singletons(self):
        t1 = ColumnTuple(1, ((0, 0),))
        t2 = ColumnTuple(1, ((1, 0),))
        cert = bound_from_trace(1, [t1, t2])
        assert cert.empty

    def test_matches_exhaustive_choice_oracle(self):
        rng = random.Random(5)
        for _ in range(30):
            n = 2
            f = small_apfunc(rng)
            branch = branch_of(f, n)
            obs = sample_observations(rng, n, branch, [3, 4, 5])
            if not obs:
                continue
            cert = bound_from_trace(n, obs)
            # oracle: every choice vector, chain check by pairwise prefix test
            unions = []
            for choice in itertools.product(range(n), repeat=len(obs)):
                chosen = [obs[i].nodes[c] for i, c in enumerate(choice)]
                ok = all(
                    a[: min(len(a), len(b))] == b[: min(len(a), len(b))]
                    for a, b in itertools.combinations(chosen, 2)
                )
                if ok:
                    unions.append(max(chosen, key=len))
            if not unions:
                assert cert.empty
                continue
            dom = min(len(u) for u in unions)
            expected = tuple(max(u[k] for u in unions) for k in range(dom))
            assert cert.bound == expected

    def test_soundness_randomized(self):
        rng = random.Random(9)
        trials = 0
        while trials < 200:
            n = rng.randrange(1, 3)
            f = small_apfunc(rng)
            branch = branch_of(f, n)
            obs = sample_observations(rng, n, branch, [n + 2, n + 3])
            if not obs:
                continue
            cert = bound_from_trace(n, obs)
            assert not cert.empty  # the generating branch is consistent
            entries = branch.restrict(len(cert.bound))
            for k, bound_k in enumerate(cert.bound):
                assert entries[k] <= bound_k
            trials += 1


class TestTraceBound:
    def test_returns_growing_function(self):
        f = trace_bound_func(UPSet.from_residues(3, {0}))
        assert f.drift >= 1

    def test_bounds_generating_function_on_observed_columns(self):
        g = APFunc((), (1,), 0)
        img = image_prefix(g, 400)
        a = UPSet.from_finite(img.elements)
        bound = trace_bound_func(a)
        # on the identity region of column 1 the claims are g-values
        assert bound(0) >= g(0)
