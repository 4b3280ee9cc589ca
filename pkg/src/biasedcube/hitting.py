"""Hitting sets of set families and the union certificates they induce.

A hitting set S meets every nonempty member of the family.  When S is
minimal, every element s of S has a member whose only S-element is s;
taking unions of those representatives embeds the nonempty subsets of S
injectively into the family (for union-closed families), which is the
engine behind the size bounds at the bottom of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .cube import (
    InputError,
    PreconditionError,
    SetFamily,
    WeightVector,
    coords_of_mask,
    family_measure,
    is_union_closed,
)


def _check_subset_mask(s: int, d: int) -> None:
    if not 0 <= s < (1 << d):
        raise InputError(f"coordinate-set mask {s} out of range for dimension {d}")


def is_hitting(family: SetFamily, s: int) -> bool:
    """True when every nonempty member intersects the coordinate set s."""
    _check_subset_mask(s, family.d)
    for member in family.members():
        if member and not member & s:
            return False
    return True


def is_minimal_hitting(family: SetFamily, s: int) -> bool:
    """True when s hits the family but no proper subset of s does."""
    if not is_hitting(family, s):
        return False
    t = s
    while t:
        low = t & -t
        if is_hitting(family, s ^ low):
            return False
        t ^= low
    return True


def enumerate_minimal_hitting_sets(family: SetFamily) -> list[int]:
    """All minimal hitting sets as coordinate masks, ascending mask order."""
    members = [m for m in family.members() if m]
    if not members:
        # Nothing to hit: the empty coordinate set is the unique minimal one.
        return [0]
    out = []
    for s in range(1 << family.d):
        if all(m & s for m in members):
            t = s
            minimal = True
            while t:
                low = t & -t
                if all(m & (s ^ low) for m in members):
                    minimal = False
                    break
                t ^= low
            if minimal:
                out.append(s)
    return out


@dataclass(frozen=True)
class HittingCertificate:
    """Representatives and their unions for a minimal hitting set.

    ``representatives`` maps each element s of the hitting set (given as a
    1-indexed coordinate) to the smallest-mask member whose intersection
    with the hitting set is exactly {s}.  ``unions`` lists, for every
    nonempty subset T of the hitting set (as a mask), the union of the
    representatives of T's elements.
    """

    hitting_set: int
    representatives: tuple[tuple[int, int], ...]
    unions: tuple[tuple[int, int], ...]

    def representative(self, coordinate: int) -> int:
        for c, member in self.representatives:
            if c == coordinate:
                return member
        raise InputError(f"coordinate {coordinate} is not in the hitting set")

    def union_for(self, subset_mask: int) -> int:
        for t, member in self.unions:
            if t == subset_mask:
                return member
        raise InputError(f"mask {subset_mask} is not a nonempty subset of the hitting set")


def build_certificate(family: SetFamily, s: int) -> HittingCertificate:
    """Build the representative certificate for a minimal hitting set.

    Ties among candidate representatives break toward the smallest mask,
    which makes the certificate deterministic.
    """
    _check_subset_mask(s, family.d)
    if not is_hitting(family, s):
        raise PreconditionError([f"coordinate set {set(coords_of_mask(s)) or '{}'} does not hit the family"])
    reps: list[tuple[int, int]] = []
    for c in coords_of_mask(s):
        bit = 1 << (c - 1)
        rep = None
        for member in family.members():
            if member & s == bit:
                rep = member
                break
        if rep is None:
            raise PreconditionError(
                [f"no member meets the hitting set exactly in coordinate {c}; the set is not minimal"]
            )
        reps.append((c, rep))
    rep_by_bit = {1 << (c - 1): member for c, member in reps}
    unions: list[tuple[int, int]] = []
    # Iterate nonempty submasks of s in ascending order.
    for mask in range(1, s + 1):
        if mask & ~s:
            continue
        merged = 0
        rest = mask
        while rest:
            low = rest & -rest
            merged |= rep_by_bit[low]
            rest ^= low
        unions.append((mask, merged))
    return HittingCertificate(s, tuple(reps), tuple(unions))


class SizeBound(NamedTuple):
    power: int
    family_size: int
    holds: bool


def knill_size_margin(family: SetFamily, s: int) -> SizeBound:
    """Compare 2^|S| against |F| for a minimal hitting set S of a nonempty F."""
    violations = []
    if family.size == 0:
        violations.append("family is empty")
    if not is_minimal_hitting(family, s):
        violations.append("coordinate set is not a minimal hitting set")
    if violations:
        raise PreconditionError(violations)
    power = 1 << s.bit_count()
    return SizeBound(power, family.size, power <= family.size)


class WeightedSizeBound(NamedTuple):
    family_weight: Fraction
    outside_q_product: Fraction
    holds: bool


def weighted_size_margin(family: SetFamily, s: int, w: WeightVector) -> WeightedSizeBound:
    """Compare mu(F) against prod of q_i outside a minimal hitting set.

    Preconditions (each reported if violated): every weight at least 1/2,
    the empty set is a member, the family is union-closed, and s is a
    minimal hitting set.
    """
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    _check_subset_mask(s, family.d)
    violations = []
    low = [i for i in range(1, w.d + 1) if w.p[i - 1] < Fraction(1, 2)]
    if low:
        violations.append(f"weights below 1/2 at coordinates {low}")
    if 0 not in family:
        violations.append("empty set is not a member")
    if not is_union_closed(family):
        violations.append("family is not union-closed")
    if not is_minimal_hitting(family, s):
        violations.append("coordinate set is not a minimal hitting set")
    if violations:
        raise PreconditionError(violations)
    outside = Fraction(1)
    for i in range(1, w.d + 1):
        if not (s >> (i - 1)) & 1:
            outside *= 1 - w.p[i - 1]
    weight = family_measure(family, w)
    return WeightedSizeBound(weight, outside, weight >= outside)
