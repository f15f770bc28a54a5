"""Unit tests for the exhaustive-enumeration oracle."""

from math import comb

import pytest

from electctl import (
    Candidate,
    ControlInstance,
    Problem,
    Profile,
    TieRule,
    VotingRule,
    enumerate_equipartitions,
    linear,
    oracle_solve,
    verify_witness,
)
from electctl.oracle import _bipartitions, _k_partitions

PAB = tuple(Candidate(c) for c in ("p", "a", "b"))


def lex(top):
    rest = sorted(c for c in ("p", "a", "b") if c != top)
    return linear(top, *rest)


def profile(*tops):
    return Profile(PAB, tuple(lex(t) for t in tops))


class TestEnumeration:
    def test_equipartition_counts(self):
        # even n: unordered halves, element 0 pinned -> C(n, n/2)/2;
        # odd n: C(n, ceil(n/2)) distinct size splits.
        expected = {0: 1, 1: 1, 2: 1, 3: 3, 4: 3, 5: 10, 6: 10, 8: 35}
        for n, count in expected.items():
            parts = list(enumerate_equipartitions(n))
            assert len(parts) == count, n
            for v1, v2 in parts:
                assert sorted(v1 + v2) == list(range(n))
                assert abs(len(v1) - len(v2)) <= 1

    def test_equipartition_count_formula(self):
        assert len(list(enumerate_equipartitions(10))) == comb(10, 5) // 2

    def test_bipartition_count(self):
        for n in range(1, 7):
            parts = list(_bipartitions(n))
            assert len(parts) == 2 ** (n - 1)
            assert len(set(parts)) == len(parts)

    def test_k_partition_counts(self):
        # ordered-part-irrelevant partitions into at most k blocks, padded
        # with empty parts; counts follow restricted growth strings.
        assert len(list(_k_partitions(3, 2))) == 4   # {123}, {1|23}, {12|3}, {13|2}
        assert len(list(_k_partitions(3, 3))) == 5   # Bell(3)
        assert len(list(_k_partitions(0, 2))) == 1
        for parts in _k_partitions(4, 3):
            assert len(parts) == 3
            assert sorted(i for p in parts for i in p) == list(range(4))


class TestOracle:
    def test_yes_with_verifying_witness(self):
        inst = ControlInstance(problem=Problem.CCEPV, rule=VotingRule.PLURALITY,
                               profile=profile("p", "p", "a", "a", "b"),
                               p="p", tie=TieRule.TE)
        d = oracle_solve(inst)
        assert d.answer == "yes"
        assert verify_witness(inst, d.witness)
        assert d.stats["cases"] >= 1

    def test_no_reports_case_count(self):
        inst = ControlInstance(problem=Problem.CCPV, rule=VotingRule.PLURALITY,
                               profile=profile("a", "a", "a", "p"),
                               p="p", tie=TieRule.TE)
        d = oracle_solve(inst)
        assert d.answer == "no"
        assert d.witness is None
        assert d.stats["cases"] == 2 ** 3  # all unordered bipartitions of 4 ballots

    def test_worked_example_case_count(self):
        prof = profile(*(["p"] * 5 + ["a"] * 6 + ["b"] * 3))
        inst = ControlInstance(problem=Problem.CCEPV, rule=VotingRule.PLURALITY,
                               profile=prof, p="p", tie=TieRule.TE)
        d = oracle_solve(inst)
        assert (d.answer, d.stats["cases"]) == ("yes", 37)

    def test_budget_exhaustion_yields_unknown(self):
        prof = profile(*(["a"] * 12 + ["p"] * 2))
        inst = ControlInstance(problem=Problem.CCPV, rule=VotingRule.PLURALITY,
                               profile=prof, p="p", tie=TieRule.TE)
        d = oracle_solve(inst, budget=5)
        assert d.answer == "unknown"
        assert d.stats["budget"] == 5

    def test_candidate_partition_problems(self):
        prof = Profile(PAB, (linear("a", "p", "b"), linear("a", "p", "b"),
                             linear("p", "b", "a"), linear("b", "p", "a"),
                             linear("p", "a", "b")))
        frozen = {
            (Problem.CCRPC, TieRule.TE): ("yes", frozenset({"p"})),
            (Problem.CCRPC, TieRule.TP): ("yes", frozenset({"p"})),
            (Problem.CCREPC, TieRule.TE): ("yes", frozenset({"p", "a"})),
            (Problem.CCREPC, TieRule.TP): ("yes", frozenset({"p", "a"})),
        }
        for (problem, tie), (answer, c1) in frozen.items():
            inst = ControlInstance(problem=problem, rule=VotingRule.CONDORCET,
                                   profile=prof, p="p", tie=tie)
            d = oracle_solve(inst)
            assert d.answer == answer
            assert d.witness.c1 == c1
            assert verify_witness(inst, d.witness)

    def test_group_problems(self):
        inst = ControlInstance(
            problem=Problem.CCDVG, rule=VotingRule.PLURALITY,
            profile=profile("p", "p", "a", "b", "a"), p="p", limit=1,
            groups=(("g1", (0, 1)), ("g2", (2, 3)), ("g3", (4,))))
        d = oracle_solve(inst)
        assert d.answer == "yes"
        assert d.witness.labels == frozenset({"g3"})

        add = ControlInstance(
            problem=Problem.CCAVG, rule=VotingRule.PLURALITY,
            profile=profile("p", "a", "b"), p="p", limit=1,
            groups=(("h1", (0, 1)), ("h2", (2,))), pool=profile("p", "p", "p"))
        d = oracle_solve(add)
        assert d.answer == "yes"
        assert d.witness.labels == frozenset({"h2"})

    def test_every_returned_witness_verifies(self):
        # spot-check one instance per problem family
        prof = profile("p", "p", "a", "a", "b")
        groups = (("g1", (0, 1)), ("g2", (2, 3)), ("g3", (4,)))
        instances = [
            ControlInstance(problem=Problem.CCPV, rule=VotingRule.PLURALITY,
                            profile=prof, p="p", tie=TieRule.TE),
            ControlInstance(problem=Problem.CCEPV, rule=VotingRule.PLURALITY,
                            profile=prof, p="p", tie=TieRule.TP),
            ControlInstance(problem=Problem.CCPKV, rule=VotingRule.PLURALITY,
                            profile=prof, p="p", tie=TieRule.TE, k=3),
            ControlInstance(problem=Problem.CCPVG, rule=VotingRule.PLURALITY,
                            profile=prof, p="p", tie=TieRule.TE, groups=groups),
        ]
        for inst in instances:
            d = oracle_solve(inst)
            if d.answer == "yes":
                assert verify_witness(inst, d.witness), inst.problem
