import pytest

from tukeykit.apfuncs import ZERO
from tukeykit.gadgets import (
    ContractBreach,
    refute_filterclass_to_unbounded,
    refute_pseudo_intersection_to_tower,
)
from tukeykit.triples import MorphismCandidate
from tukeykit.upsets import EVENS, ODDS, UPSet, almost_subset

from helpers import scripted_max_pair_candidates, scripted_three_sets_candidates


class TestMaxPairGadget:
    def test_scripted_suite_all_refuted(self):
        for cand in scripted_max_pair_candidates():
            violation = refute_filterclass_to_unbounded(cand)
            assert violation.verify(), cand.name
            assert violation.side_name in ("O", "E")

    def test_forced_constant_example(self):
        cand = MorphismCandidate(pull=lambda f: EVENS, push=lambda a: ZERO)
        violation = refute_filterclass_to_unbounded(cand)
        # the pulled set is the evens, so the witnessing half is E
        assert violation.side_name == "E"
        assert violation.combined == ZERO

    def test_certificate_clauses(self):
        from tukeykit.apfuncs import eventually_dominates

        cand = scripted_max_pair_candidates()[2]
        v = refute_filterclass_to_unbounded(cand)
        assert (v.pulled & v.side).is_infinite
        assert eventually_dominates(v.combined, v.pushed_side)

    def test_finite_pull_is_contract_breach(self):
        cand = MorphismCandidate(
            pull=lambda f: UPSet.from_finite({1, 2}), push=lambda a: ZERO
        )
        with pytest.raises(ContractBreach):
            refute_filterclass_to_unbounded(cand)

    def test_custom_halves_must_be_complementary(self):
        cand = scripted_max_pair_candidates()[0]
        with pytest.raises(ValueError):
            refute_filterclass_to_unbounded(
                cand, halves=(("A", EVENS), ("B", EVENS))
            )

    def test_custom_complementary_halves(self):
        cand = scripted_max_pair_candidates()[0]
        thirds = (
            ("T0", UPSet.from_residues(3, {0})),
            ("T12", UPSet.from_residues(3, {1, 2})),
        )
        violation = refute_filterclass_to_unbounded(cand, halves=thirds)
        assert violation.verify()


class TestThreeSetsGadget:
    def test_scripted_suite_all_refuted(self):
        for cand in scripted_three_sets_candidates():
            violation = refute_pseudo_intersection_to_tower(cand)
            assert violation.verify(), cand.name

    def test_identity_fails_family_condition(self):
        v = refute_pseudo_intersection_to_tower(
            MorphismCandidate(pull=lambda x: x, push=lambda y: y)
        )
        assert v.kind == "family"

    def test_constant_push_fails_relation(self):
        v = refute_pseudo_intersection_to_tower(
            MorphismCandidate(pull=lambda x: x, push=lambda y: EVENS)
        )
        assert v.kind == "relation"
        assert v.common == EVENS
        assert v.pulled == EVENS
        assert not almost_subset(v.pulled, v.culprit)

    def test_bad_custom_sets_rejected(self):
        cand = MorphismCandidate(pull=lambda x: x, push=lambda y: y)
        with pytest.raises(ValueError):
            refute_pseudo_intersection_to_tower(
                cand, sets=(EVENS, ODDS, UPSet.from_residues(4, {0}))
            )

    def test_push_must_produce_infinite_sets(self):
        cand = MorphismCandidate(
            pull=lambda x: x, push=lambda y: UPSet.from_finite({3})
        )
        with pytest.raises(ContractBreach):
            refute_pseudo_intersection_to_tower(cand)

    def test_custom_sets(self):
        # pairwise infinite meets, finite triple meet, over modulus 5
        sets = (
            UPSet.from_residues(5, {0, 1}),
            UPSet.from_residues(5, {1, 2}),
            UPSet.from_residues(5, {0, 2}),
        )
        v = refute_pseudo_intersection_to_tower(
            MorphismCandidate(pull=lambda x: x, push=lambda y: y), sets=sets
        )
        assert v.verify()
