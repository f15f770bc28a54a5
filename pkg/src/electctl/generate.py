"""Seeded random instance generation for sweeps and property testing."""

from __future__ import annotations

import random
from typing import Sequence

from .elections import Ballot, Candidate, Profile, VotingRule
from .two_stage import ControlInstance, Problem, TieRule

GROUP_PREFIX = "G"


def default_candidate_ids(n: int) -> tuple[str, ...]:
    return ("p",) + tuple(f"c{i}" for i in range(1, n))


def linear_profile(rng: random.Random, ids: Sequence[str], n_voters: int) -> Profile:
    cands = tuple(Candidate(cid) for cid in ids)
    ballots = tuple(
        Ballot(order=tuple(rng.sample(list(ids), len(ids)))) for _ in range(n_voters)
    )
    return Profile(cands, ballots)


def approval_profile(rng: random.Random, ids: Sequence[str], n_voters: int) -> Profile:
    cands = tuple(Candidate(cid) for cid in ids)
    ballots = tuple(
        Ballot(approvals=frozenset(cid for cid in ids if rng.random() < 0.5))
        for _ in range(n_voters)
    )
    return Profile(cands, ballots)


def random_groups(rng: random.Random, n_ballots: int, n_groups: int):
    """A random partition of ballot indices into at most n_groups groups."""
    assignment = [rng.randrange(n_groups) for _ in range(n_ballots)]
    groups = []
    for g in range(n_groups):
        idx = tuple(i for i, a in enumerate(assignment) if a == g)
        if idx:
            groups.append((f"{GROUP_PREFIX}{g + 1}", idx))
    return tuple(groups)


def random_instance(
    rng: random.Random,
    problem: Problem,
    rule: VotingRule,
    tie: TieRule | None,
    n_candidates: int,
    n_voters: int,
    k: int | None = None,
    limit: int | None = None,
    n_groups: int | None = None,
    pool_size: int | None = None,
    with_specials: bool = False,
) -> ControlInstance:
    """One random instance; reproducible given the rng state."""
    ids = default_candidate_ids(n_candidates)
    approval_kind = rule in (VotingRule.APPROVAL, VotingRule.SYSTEM_E)
    make = approval_profile if approval_kind else linear_profile

    if with_specials:
        cands = tuple(Candidate(cid) for cid in ids) + tuple(
            Candidate(f"s{i}", special_index=i) for i in range(4)
        )
        all_ids = tuple(c.id for c in cands)
        base = make(rng, all_ids, n_voters)
        profile = Profile(cands, base.ballots)
    else:
        profile = make(rng, ids, n_voters)

    groups = None
    pool = None
    if problem in (Problem.CCPVG, Problem.CCDVG):
        groups = random_groups(rng, n_voters, n_groups or max(1, n_voters // 2))
    elif problem is Problem.CCAVG:
        size = pool_size if pool_size is not None else n_voters
        pool = Profile(profile.candidates, make(rng, profile.candidate_ids, size).ballots)
        groups = random_groups(rng, size, n_groups or max(1, size // 2))

    return ControlInstance(
        problem=problem,
        rule=rule,
        profile=profile,
        p="p",
        tie=tie,
        k=k,
        limit=limit,
        groups=groups,
        pool=pool,
    )


# Sweepable families with a polynomial solver on one side.
FAMILIES = {
    "ccepv": (Problem.CCEPV, VotingRule.PLURALITY, TieRule.TE),
    "ccpkv": (Problem.CCPKV, VotingRule.PLURALITY, TieRule.TE),
    "wcrpc": (Problem.CCRPC, VotingRule.WEAK_CONDORCET, TieRule.TP),
    "e-ccepv": (Problem.CCEPV, VotingRule.SYSTEM_E, TieRule.TP),
}


def family_instance(
    rng: random.Random,
    family: str,
    n_candidates: int,
    n_voters: int,
    k: int | None = None,
) -> ControlInstance:
    problem, rule, tie = FAMILIES[family]
    return random_instance(
        rng, problem, rule, tie, n_candidates, n_voters,
        k=k if problem is Problem.CCPKV else None,
        with_specials=rule is VotingRule.SYSTEM_E,
    )
