"""Exhaustive enumeration, seeded sampling, and randomized search.

Enumeration scans every one of the 2^(2^d) candidate membership tables in
ascending order, so it is capped at d <= 4.  All randomness in this module
flows through ``random.Random`` (MT19937) seeded explicitly; given the same
seed, every function here reproduces its output bit for bit.  Bernoulli
draws are exact: a coordinate with weight a/b is set when a uniform draw
from {0, ..., b-1} lands below a, so no float ever approximates a weight.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Callable, Iterable, Iterator, Sequence

from .cube import (
    InputError,
    PreconditionError,
    SetFamily,
    WeightVector,
    family_measure,
    is_simply_rooted,
    is_union_closed,
    measure_numerators,
)

ENUMERATION_MAX_DIMENSION = 4

FILTER_NAMES = ("union-closed", "simply-rooted", "contains-empty", "has-nonempty-member")

_FILTERS: dict[str, Callable[[SetFamily], bool]] = {
    "union-closed": is_union_closed,
    "simply-rooted": is_simply_rooted,
    "contains-empty": lambda family: 0 in family,
    "has-nonempty-member": lambda family: family.has_nonempty_member(),
}


def _resolve_filters(names: Iterable[str]) -> list[Callable[[SetFamily], bool]]:
    predicates = []
    for name in names:
        if name not in _FILTERS:
            raise InputError(f"unknown filter {name!r}, expected one of {', '.join(FILTER_NAMES)}")
        predicates.append(_FILTERS[name])
    return predicates


def enumerate_families(d: int, filters: Iterable[str] = ()) -> Iterator[SetFamily]:
    """Yield every family passing all filters, in ascending table order."""
    if not 1 <= d <= ENUMERATION_MAX_DIMENSION:
        raise InputError(f"exhaustive enumeration supports d in 1..{ENUMERATION_MAX_DIMENSION}, got {d}")
    predicates = _resolve_filters(filters)
    for table in range(1 << (1 << d)):
        family = SetFamily(d, table)
        if all(predicate(family) for predicate in predicates):
            yield family


def scan_tables(d: int, lo: int, hi: int, filters: tuple[str, ...]) -> list[int]:
    """Membership tables in [lo, hi) passing all filters, ascending.

    Top-level so process pools can ship it to workers.
    """
    predicates = _resolve_filters(filters)
    out = []
    for table in range(lo, hi):
        family = SetFamily(d, table)
        if all(predicate(family) for predicate in predicates):
            out.append(table)
    return out


def enumerate_tables_parallel(d: int, filters: Iterable[str], jobs: int) -> list[int]:
    """Parallel variant of the enumeration scan; output is independent of jobs.

    The candidate range is split into contiguous chunks handed to a process
    pool; chunk results are concatenated in range order, so the table list
    is identical for every job count.
    """
    if not 1 <= d <= ENUMERATION_MAX_DIMENSION:
        raise InputError(f"exhaustive enumeration supports d in 1..{ENUMERATION_MAX_DIMENSION}, got {d}")
    if jobs < 1:
        raise InputError(f"jobs must be at least 1, got {jobs}")
    names = tuple(filters)
    _resolve_filters(names)
    total = 1 << (1 << d)
    if jobs == 1:
        return scan_tables(d, 0, total, names)
    chunk_count = min(total, jobs * 4)
    step = (total + chunk_count - 1) // chunk_count
    spans = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    out: list[int] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_scan_span, [(d, lo, hi, names) for lo, hi in spans]):
            out.extend(chunk)
    return out


def _scan_span(args: tuple[int, int, int, tuple[str, ...]]) -> list[int]:
    d, lo, hi, names = args
    return scan_tables(d, lo, hi, names)


def union_closure(d: int, generators: Iterable[int]) -> SetFamily:
    """Smallest union-closed family containing the generators."""
    seed_family = SetFamily.from_members(d, generators)  # validates masks
    members = set(seed_family.members())
    queue = list(members)
    while queue:
        fresh = queue.pop()
        additions = []
        for existing in members:
            merged = existing | fresh
            if merged not in members:
                additions.append(merged)
        for merged in additions:
            members.add(merged)
            queue.append(merged)
    return SetFamily.from_members(d, members)


def _weight_pairs(w: WeightVector) -> list[tuple[int, int]]:
    return [(pi.numerator, pi.denominator) for pi in w.p]


def _draw_mask(rng: random.Random, pairs: Sequence[tuple[int, int]]) -> int:
    mask = 0
    for idx, (num, den) in enumerate(pairs):
        if rng.randrange(den) < num:
            mask |= 1 << idx
    return mask


def sample_point(w: WeightVector, seed: int) -> int:
    """One point of the cube with each coordinate set with its own weight."""
    return _draw_mask(random.Random(seed), _weight_pairs(w))


def sample_stream(w: WeightVector, n: int, seed: int) -> list[int]:
    """n points drawn from a single seeded stream, coordinate 1 first per point."""
    if n < 0:
        raise InputError(f"sample count must be nonnegative, got {n}")
    rng = random.Random(seed)
    pairs = _weight_pairs(w)
    return [_draw_mask(rng, pairs) for _ in range(n)]


@dataclass(frozen=True)
class MonteCarloEstimate:
    hits: int
    draws: int
    estimate: Fraction
    stderr: float

    @property
    def estimate_float(self) -> float:
        return self.hits / self.draws


def monte_carlo_measure(family: SetFamily, w: WeightVector, n: int, seed: int) -> MonteCarloEstimate:
    """Estimate the family weight as the hit rate over n seeded sample points."""
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    if n < 1:
        raise InputError(f"sample count must be positive, got {n}")
    rng = random.Random(seed)
    pairs = _weight_pairs(w)
    table = family.table
    hits = 0
    for _ in range(n):
        if (table >> _draw_mask(rng, pairs)) & 1:
            hits += 1
    rate = hits / n
    stderr = sqrt(rate * (1.0 - rate) / n)
    return MonteCarloEstimate(hits, n, Fraction(hits, n), stderr)


@dataclass(frozen=True)
class SearchResult:
    family: SetFamily
    objective: Fraction
    seed: int
    evaluations: int
    accepted: int
    restarts: int


def _ratio_objective(family: SetFamily, nums: Sequence[int], d: int) -> Fraction:
    total = 0
    per = [0] * d
    for m in family.members():
        v = nums[m]
        total += v
        rest = m
        while rest:
            low = rest & -rest
            per[low.bit_length() - 1] += v
            rest ^= low
    return max(Fraction(c, total) for c in per)


def search_min_ratio(
    d: int,
    w: WeightVector,
    budget: int,
    seed: int,
    *,
    require_weight_hypothesis: bool = False,
    include_empty: bool = True,
    stall_limit: int = 40,
) -> SearchResult:
    """Hill-climb over generator lists to minimize the worst coordinate ratio.

    States are lists of distinct nonempty generator masks; the candidate
    family is their union closure (plus the empty set when configured).
    The objective max_i mu(F_i) / mu(F) is exact.  A move is accepted only
    when it strictly lowers the objective; after ``stall_limit`` straight
    rejections the climb restarts from a fresh random state.  ``budget``
    counts proposal evaluations, so budget 0 reports the initial state.
    """
    if d != w.d:
        raise InputError(f"search dimension {d} != weight dimension {w.d}")
    w.require_interior("ratio search")
    if budget < 0:
        raise InputError(f"budget must be nonnegative, got {budget}")
    rng = random.Random(seed)
    nums, _den = measure_numerators(w)
    q_max = w.q_max

    def build(generators: set[int]) -> SetFamily:
        family = union_closure(d, generators)
        if include_empty:
            family = SetFamily(d, family.table | 1)
        return family

    def feasible(family: SetFamily) -> bool:
        if not require_weight_hypothesis:
            return True
        return family_measure(family, w) >= q_max

    def random_state() -> set[int]:
        count = rng.randrange(1, d + 2)
        return {rng.randrange(1, 1 << d) for _ in range(count)}

    def initial_state() -> set[int]:
        for _ in range(200):
            state = random_state()
            if feasible(build(state)):
                return state
        fallback = {m for m in range(1, 1 << d)}
        if feasible(build(fallback)):
            return fallback
        raise PreconditionError(
            ["no feasible starting family found under the weight hypothesis constraint"]
        )

    generators = initial_state()
    family = build(generators)
    objective = _ratio_objective(family, nums, d)
    best_family, best_objective = family, objective
    evaluations = 0
    accepted = 0
    restarts = 0
    stall = 0
    while evaluations < budget:
        proposal = set(generators)
        move = rng.randrange(3)
        if move == 0 or not proposal:
            proposal.add(rng.randrange(1, 1 << d))
        elif move == 1 and len(proposal) > 1:
            proposal.discard(rng.choice(sorted(proposal)))
        else:
            proposal.discard(rng.choice(sorted(proposal)))
            proposal.add(rng.randrange(1, 1 << d))
        evaluations += 1
        candidate = build(proposal)
        if not feasible(candidate):
            stall += 1
        else:
            value = _ratio_objective(candidate, nums, d)
            if value < objective:
                generators, family, objective = proposal, candidate, value
                accepted += 1
                stall = 0
                if value < best_objective:
                    best_family, best_objective = candidate, value
            else:
                stall += 1
        if stall >= stall_limit and evaluations < budget:
            restarts += 1
            stall = 0
            generators = initial_state()
            family = build(generators)
            objective = _ratio_objective(family, nums, d)
            if objective < best_objective:
                best_family, best_objective = family, objective
    return SearchResult(best_family, best_objective, seed, evaluations, accepted, restarts)
