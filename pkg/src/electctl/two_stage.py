"""Two-stage partition elections with TE/TP tie handling, plus witness checks.

Stage one runs subelections (per voter part, or per candidate part); the
tie-handling rule decides who survives into the final: TE promotes a
subelection winner only if it is the unique winner there, TP promotes all
winners. The final election is run under the same voting rule over the
surviving candidates with all voters. Acceptance everywhere is the
unique-winner model: the distinguished candidate must be the one and only
final winner. TE/TP is never applied to the final stage itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

from .elections import (
    Profile,
    VotingRule,
    condorcet_winners_from_margins,
    pairwise_margins,
    restrict_profile,
    winners,
)


class TieRule(Enum):
    TE = "TE"
    TP = "TP"


class Problem(Enum):
    CCPV = "CCPV"
    CCEPV = "CCEPV"
    CCRPC = "CCRPC"
    CCREPC = "CCREPC"
    CCPKV = "CCPkV"
    CCPVG = "CCPVG"
    CCDVG = "CCDVG"
    CCAVG = "CCAVG"


PARTITION_PROBLEMS = frozenset(
    {Problem.CCPV, Problem.CCEPV, Problem.CCRPC, Problem.CCREPC,
     Problem.CCPKV, Problem.CCPVG}
)
GROUP_PROBLEMS = frozenset({Problem.CCPVG, Problem.CCDVG, Problem.CCAVG})

_CONDORCET_FAMILY = (VotingRule.CONDORCET, VotingRule.WEAK_CONDORCET)


@dataclass(frozen=True)
class VoterPartition:
    """Witness: ballot-index sets, one per partition part."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(tuple(sorted(p)) for p in self.parts)
        )


@dataclass(frozen=True)
class CandidatePartition:
    """Witness: a bipartition of the candidate ids."""

    c1: frozenset[str]
    c2: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "c1", frozenset(self.c1))
        object.__setattr__(self, "c2", frozenset(self.c2))


@dataclass(frozen=True)
class GroupSelection:
    """Witness: a set of group labels (the selected/second-part groups)."""

    labels: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))


Witness = Union[VoterPartition, CandidatePartition, GroupSelection]

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass
class Decision:
    """Yes/no/unknown answer, optional witness, and diagnostic counters."""

    answer: str
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ControlInstance:
    """An election plus a control-problem descriptor.

    ``groups`` maps a label to ballot indices of the election's voters for
    CCPVG/CCDVG, or of the adder pool for CCAVG; where present the groups
    must partition their vote multiset. ``limit`` is the addition/deletion
    budget for CCDVG/CCAVG; ``k`` is the part count for CCPkV.
    """

    problem: Problem
    rule: VotingRule
    profile: Profile
    p: str
    tie: TieRule | None = None
    k: int | None = None
    limit: int | None = None
    groups: tuple[tuple[str, tuple[int, ...]], ...] | None = None
    pool: Profile | None = None

    def __post_init__(self):
        if self.p not in self.profile.candidate_ids:
            raise ValueError(f"distinguished candidate {self.p!r} not in the election")
        if isinstance(self.groups, Mapping):
            object.__setattr__(
                self, "groups",
                tuple((lab, tuple(idx)) for lab, idx in self.groups.items()),
            )
        elif self.groups is not None:
            object.__setattr__(
                self, "groups",
                tuple((lab, tuple(idx)) for lab, idx in self.groups),
            )

        if self.problem in PARTITION_PROBLEMS:
            if self.tie is None:
                raise ValueError(f"{self.problem.value} needs a tie rule")
        elif self.tie is not None:
            raise ValueError(f"{self.problem.value} takes no tie rule")

        if self.problem is Problem.CCPKV:
            if self.k is None or self.k < 2:
                raise ValueError("CCPkV needs k >= 2")
        elif self.k is not None:
            raise ValueError(f"{self.problem.value} takes no k")

        if self.problem in (Problem.CCDVG, Problem.CCAVG):
            if self.limit is None or self.limit < 0:
                raise ValueError(f"{self.problem.value} needs a nonnegative limit")
        elif self.limit is not None:
            raise ValueError(f"{self.problem.value} takes no limit")

        if self.problem is Problem.CCAVG and self.pool is None:
            raise ValueError("CCAVG needs an adder pool")

        if self.problem in GROUP_PROBLEMS:
            if self.groups is None:
                raise ValueError(f"{self.problem.value} needs voter groups")
            covered = self.pool if self.problem is Problem.CCAVG else self.profile
            n = len(covered.ballots)
            seen = sorted(i for _, idx in self.groups for i in idx)
            if seen != list(range(n)):
                raise ValueError("groups must partition the vote multiset exactly once")
            labels = [lab for lab, _ in self.groups]
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate group labels")
        elif self.groups is not None:
            raise ValueError(f"{self.problem.value} takes no groups")

        if self.problem is Problem.CCAVG:
            if self.pool.candidates != self.profile.candidates:
                raise ValueError("pool must share the election's candidate set")
            if (self.pool.kind is not None and self.profile.kind is not None
                    and self.pool.kind != self.profile.kind):
                raise ValueError("pool ballots must share the instance's ballot kind")
        elif self.pool is not None:
            raise ValueError(f"{self.problem.value} takes no pool")

    @property
    def group_map(self) -> dict[str, tuple[int, ...]]:
        return dict(self.groups or ())


def _filter_tie(tie: TieRule, subwinners: frozenset[str]) -> frozenset[str]:
    if tie is TieRule.TE and len(subwinners) != 1:
        return frozenset()
    return subwinners


def _check_parts(n: int, parts: Sequence[Iterable[int]]) -> list[tuple[int, ...]]:
    out = [tuple(p) for p in parts]
    flat = sorted(i for p in out for i in p)
    if any(i < 0 or i >= n for i in flat):
        raise ValueError("ballot index out of range")
    if len(flat) != len(set(flat)):
        raise ValueError("overlapping partition parts")
    if len(flat) != n:
        raise ValueError("parts must cover every ballot")
    return out


def finalists_voter_partition(
    rule: VotingRule,
    tie: TieRule,
    profile: Profile,
    parts: Sequence[Iterable[int]],
) -> frozenset[str]:
    """Union over parts of the TE/TP-filtered subelection winner sets."""
    checked = _check_parts(len(profile.ballots), parts)
    finalists: frozenset[str] = frozenset()
    for part in checked:
        sub = Profile(profile.candidates, tuple(profile.ballots[i] for i in part))
        finalists |= _filter_tie(tie, winners(rule, sub))
    return finalists


def run_two_stage_voter_partition(
    rule: VotingRule,
    tie: TieRule,
    profile: Profile,
    parts: Sequence[Iterable[int]],
) -> frozenset[str]:
    """Final winner set after partitioning the voters into ``parts``."""
    finalists = finalists_voter_partition(rule, tie, profile, parts)
    if not finalists:
        return frozenset()
    return winners(rule, restrict_profile(profile, finalists))


def run_two_stage_candidate_partition(
    rule: VotingRule,
    tie: TieRule,
    profile: Profile,
    c1: Iterable[str],
    c2: Iterable[str],
) -> frozenset[str]:
    """Final winner set after a runoff candidate partition (C1, C2).

    Empty parts are legal and contribute no finalists. For the Condorcet
    family all stages are evaluated from the full profile's margin table,
    which equals running each restricted subelection directly.
    """
    s1, s2 = frozenset(c1), frozenset(c2)
    ids = frozenset(profile.candidate_ids)
    if s1 & s2 or (s1 | s2) != ids:
        raise ValueError("(C1, C2) must partition the candidate set")

    if rule in _CONDORCET_FAMILY:
        margins = pairwise_margins(profile)
        weak = rule is VotingRule.WEAK_CONDORCET
        finalists: frozenset[str] = frozenset()
        for side in (s1, s2):
            if side:
                sub = condorcet_winners_from_margins(margins, side, weak)
                finalists |= _filter_tie(tie, sub)
        if not finalists:
            return frozenset()
        return condorcet_winners_from_margins(margins, finalists, weak)

    finalists = frozenset()
    for side in (s1, s2):
        if side:
            sub = winners(rule, restrict_profile(profile, side))
            finalists |= _filter_tie(tie, sub)
    if not finalists:
        return frozenset()
    return winners(rule, restrict_profile(profile, finalists))


def _group_parts(
    instance: ControlInstance, selected: frozenset[str]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    gmap = instance.group_map
    unknown = selected - set(gmap)
    if unknown:
        raise ValueError(f"unknown group labels: {sorted(unknown)}")
    chosen = tuple(sorted(i for lab in selected for i in gmap[lab]))
    rest = tuple(sorted(i for lab, idx in instance.groups for i in idx
                        if lab not in selected))
    return rest, chosen


def _groups_atomic(instance: ControlInstance, part: frozenset[int]) -> bool:
    return all(set(idx) <= part or not (set(idx) & part)
               for _, idx in instance.groups)


def verify_witness(instance: ControlInstance, w: Witness) -> bool:
    """Replay the control action described by ``w``.

    True iff the witness satisfies the problem's structural side conditions
    (equipartition size bound, group atomicity, selection budget) and makes
    the distinguished candidate the sole resulting winner. A witness whose
    shape does not fit the problem family is an error, not a False.
    """
    prob, rule, tie, profile = instance.problem, instance.rule, instance.tie, instance.profile
    goal = frozenset({instance.p})

    if prob in (Problem.CCPV, Problem.CCEPV):
        if not isinstance(w, VoterPartition) or len(w.parts) != 2:
            raise ValueError(f"{prob.value} needs a two-part voter partition witness")
        if prob is Problem.CCEPV and abs(len(w.parts[0]) - len(w.parts[1])) > 1:
            return False
        return run_two_stage_voter_partition(rule, tie, profile, w.parts) == goal

    if prob is Problem.CCPKV:
        if not isinstance(w, VoterPartition) or len(w.parts) != instance.k:
            raise ValueError("CCPkV needs a k-part voter partition witness")
        return run_two_stage_voter_partition(rule, tie, profile, w.parts) == goal

    if prob in (Problem.CCRPC, Problem.CCREPC):
        if not isinstance(w, CandidatePartition):
            raise ValueError(f"{prob.value} needs a candidate partition witness")
        if prob is Problem.CCREPC and abs(len(w.c1) - len(w.c2)) > 1:
            return False
        return run_two_stage_candidate_partition(rule, tie, profile, w.c1, w.c2) == goal

    if prob is Problem.CCPVG:
        if isinstance(w, GroupSelection):
            parts = _group_parts(instance, w.labels)
        elif isinstance(w, VoterPartition) and len(w.parts) == 2:
            if not all(_groups_atomic(instance, frozenset(p)) for p in w.parts):
                return False
            parts = w.parts
        else:
            raise ValueError("CCPVG needs a group selection or two-part voter partition")
        return run_two_stage_voter_partition(rule, tie, profile, parts) == goal

    if prob in (Problem.CCDVG, Problem.CCAVG):
        if not isinstance(w, GroupSelection):
            raise ValueError(f"{prob.value} needs a group selection witness")
        _, chosen = _group_parts(instance, w.labels)
        if len(chosen) > instance.limit:
            return False
        if prob is Problem.CCDVG:
            keep = [b for i, b in enumerate(profile.ballots) if i not in set(chosen)]
            final = Profile(profile.candidates, tuple(keep))
        else:
            added = tuple(instance.pool.ballots[i] for i in chosen)
            final = Profile(profile.candidates, profile.ballots + added)
        return winners(rule, final) == goal

    raise ValueError(f"unsupported problem {prob}")
