"""Ground-truth exponential-time solver for every control family.

The oracle enumerates candidate witnesses in a fixed deterministic order,
replays each one through the two-stage (or one-stage) election semantics,
and returns the first that makes the distinguished candidate the sole
winner. Bipartitions are enumerated unordered; k-partitions are enumerated
canonically (restricted growth strings) so part relabelings are not
revisited. Exceeding the witness budget yields a distinct "unknown" answer,
never a silent "no".
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .two_stage import (
    NO,
    UNKNOWN,
    YES,
    CandidatePartition,
    ControlInstance,
    Decision,
    GroupSelection,
    Problem,
    VoterPartition,
    Witness,
    verify_witness,
)

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(Exception):
    pass


def enumerate_equipartitions(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All unordered bipartitions of range(n) with part sizes within one.

    Yields C(n, n//2) / 2 bipartitions for even n > 0, C(n, (n+1)//2) for
    odd n, and the single empty bipartition for n = 0.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield (), ()
        return
    hi = (n + 1) // 2
    universe = range(n)
    if n % 2 == 0:
        # Pin element 0 into the first part to kill the part swap.
        for rest in combinations(range(1, n), hi - 1):
            first = (0,) + rest
            yield first, tuple(i for i in universe if i not in set(first))
    else:
        for first in combinations(universe, hi):
            yield first, tuple(i for i in universe if i not in set(first))


def _bipartitions(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All unordered bipartitions of range(n), empty parts included."""
    if n == 0:
        yield (), ()
        return
    rest = list(range(1, n))
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            first = (0,) + extra
            yield first, tuple(i for i in range(n) if i not in set(first))


def _k_partitions(n: int, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Canonical (part-permutation-free) k-part partitions of range(n)."""
    labels = [0] * n

    def rec(i: int, used: int):
        if i == n:
            parts: list[list[int]] = [[] for _ in range(k)]
            for idx, lab in enumerate(labels):
                parts[lab].append(idx)
            yield tuple(tuple(part) for part in parts)
            return
        for lab in range(min(used + 1, k)):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    if n == 0:
        yield ((),) * k
    else:
        yield from rec(0, 0)


def _candidate_witnesses(instance: ControlInstance) -> Iterator[Witness]:
    prob = instance.problem
    nv = len(instance.profile.ballots)

    if prob is Problem.CCPV:
        for a, b in _bipartitions(nv):
            yield VoterPartition((a, b))
    elif prob is Problem.CCEPV:
        for a, b in enumerate_equipartitions(nv):
            yield VoterPartition((a, b))
    elif prob is Problem.CCPKV:
        for parts in _k_partitions(nv, instance.k):
            yield VoterPartition(parts)
    elif prob in (Problem.CCRPC, Problem.CCREPC):
        ids = instance.profile.candidate_ids
        nc = len(ids)
        if prob is Problem.CCREPC:
            source = enumerate_equipartitions(nc)
        else:
            source = _bipartitions(nc)
        for a, b in source:
            yield CandidatePartition(
                frozenset(ids[i] for i in a), frozenset(ids[i] for i in b)
            )
    elif prob is Problem.CCPVG:
        labels = [lab for lab, _ in instance.groups]
        if not labels:
            yield GroupSelection(frozenset())
            return
        # Unordered bipartition of groups: the first group stays in part one.
        rest = labels[1:]
        for r in range(len(rest) + 1):
            for chosen in combinations(rest, r):
                yield GroupSelection(frozenset(chosen))
    elif prob in (Problem.CCDVG, Problem.CCAVG):
        labels = [lab for lab, _ in instance.groups]
        sizes = dict((lab, len(idx)) for lab, idx in instance.groups)
        for r in range(len(labels) + 1):
            for chosen in combinations(labels, r):
                if sum(sizes[lab] for lab in chosen) <= instance.limit:
                    yield GroupSelection(frozenset(chosen))
    else:
        raise ValueError(f"unsupported problem {prob}")


def oracle_solve(instance: ControlInstance, budget: int = DEFAULT_BUDGET) -> Decision:
    """Decide the instance by exhaustive witness enumeration."""
    examined = 0
    for w in _candidate_witnesses(instance):
        examined += 1
        if examined > budget:
            return Decision(UNKNOWN, stats={"cases": examined - 1,
                                            "budget": budget})
        if verify_witness(instance, w):
            return Decision(YES, w, {"cases": examined})
    return Decision(NO, stats={"cases": examined})
