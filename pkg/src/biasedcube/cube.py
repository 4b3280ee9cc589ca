"""Core types for the p-biased Boolean cube.

Points of the cube on ground set {1, ..., d} are plain int bitmasks: bit i-1
is set exactly when coordinate i is in the support.  A set family is a dense
membership table over all 2^d points, stored in a single int (bit m set
exactly when point mask m belongs to the family), which keeps membership,
complement and union tests bit-parallel.

Every measure computation is exact rational arithmetic over
``fractions.Fraction``.  There is no floating-point measure backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

MAX_DIMENSION = 16


class InputError(ValueError):
    """Malformed input: bad file text, bad literal, dimension mismatch."""


class PreconditionError(ValueError):
    """An operation's structural preconditions are violated.

    Collects every violated precondition so callers see the full list,
    not just the first failure.
    """

    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


def parse_rational(text: str) -> Fraction:
    """Parse ``a/b`` or a decimal literal into an exact Fraction.

    Decimal literals convert exactly (digits over a power of ten), never
    through binary floating point.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}: {exc}") from None


def format_rational(value: Fraction | int) -> str:
    """Render a rational as ``a/b`` (or a bare integer when b = 1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _check_dimension(d: int) -> None:
    if not 1 <= d <= MAX_DIMENSION:
        raise InputError(f"dimension must be in 1..{MAX_DIMENSION}, got {d}")


def _check_point(x: int, d: int) -> None:
    if not 0 <= x < (1 << d):
        raise InputError(f"point mask {x} out of range for dimension {d}")


def mask_from_coords(coords: Iterable[int], d: int) -> int:
    """Build a point mask from 1-indexed coordinates."""
    _check_dimension(d)
    mask = 0
    for i in coords:
        if not 1 <= i <= d:
            raise InputError(f"coordinate {i} out of range 1..{d}")
        mask |= 1 << (i - 1)
    return mask


def coords_of_mask(mask: int) -> tuple[int, ...]:
    """1-indexed coordinates present in a point mask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def set_coordinate(x: int, i: int, bit: int, d: int) -> int:
    """Return x with coordinate i forced to the given bit."""
    _check_point(x, d)
    if not 1 <= i <= d:
        raise InputError(f"coordinate {i} out of range 1..{d}")
    if bit not in (0, 1):
        raise InputError(f"bit must be 0 or 1, got {bit}")
    if bit:
        return x | (1 << (i - 1))
    return x & ~(1 << (i - 1))


@dataclass(frozen=True)
class WeightVector:
    """Per-coordinate biases p_i defining the product measure on the cube.

    q_i = 1 - p_i.  All arithmetic on weights is exact.  The normalization
    1/(p_i q_i) is kept as an exact rational; its square root is irrational
    in general and is never materialized.
    """

    p: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_dimension(len(self.p))
        clean = []
        for i, value in enumerate(self.p, start=1):
            value = Fraction(value)
            if not 0 <= value <= 1:
                raise InputError(f"weight p_{i}={format_rational(value)} outside [0, 1]")
            clean.append(value)
        object.__setattr__(self, "p", tuple(clean))

    @property
    def d(self) -> int:
        return len(self.p)

    @property
    def q(self) -> tuple[Fraction, ...]:
        return tuple(1 - pi for pi in self.p)

    @property
    def p_min(self) -> Fraction:
        return min(self.p)

    @property
    def q_max(self) -> Fraction:
        return 1 - self.p_min

    @property
    def is_interior(self) -> bool:
        """True when every bias is strictly between 0 and 1."""
        return all(0 < pi < 1 for pi in self.p)

    def require_interior(self, context: str) -> None:
        if not self.is_interior:
            raise PreconditionError([f"{context} requires 0 < p_i < 1 for every coordinate"])

    def alpha_sq(self, i: int) -> Fraction:
        """Squared basis normalization 1/(p_i q_i) for coordinate i."""
        pi = self.p[i - 1]
        if pi == 0 or pi == 1:
            raise PreconditionError([f"alpha_sq undefined at boundary weight p_{i}={format_rational(pi)}"])
        return 1 / (pi * (1 - pi))

    def q_reciprocal(self, i: int) -> Fraction:
        """Q_i = 1/q_i, defined only when q_i > 0."""
        qi = 1 - self.p[i - 1]
        if qi == 0:
            raise PreconditionError([f"Q_{i} undefined: q_{i} = 0"])
        return 1 / qi

    @property
    def q_reciprocal_product(self) -> Fraction:
        """Q = prod_i 1/q_i; 1/Q is the measure of the empty-set point."""
        product = Fraction(1)
        for i in range(1, self.d + 1):
            product *= self.q_reciprocal(i)
        return product

    @classmethod
    def uniform(cls, d: int) -> "WeightVector":
        _check_dimension(d)
        return cls(tuple(Fraction(1, 2) for _ in range(d)))

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Parse a comma-separated weight literal like ``2/3,0.75``."""
        parts = [part for part in text.split(",")]
        if not parts or not text.strip():
            raise InputError("empty weight literal")
        return cls(tuple(parse_rational(part) for part in parts))

    def __str__(self) -> str:
        return ",".join(format_rational(pi) for pi in self.p)


@dataclass(frozen=True)
class SetFamily:
    """A family of subsets of {1, ..., d} as a dense membership table.

    ``table`` has bit m set exactly when point mask m is a member.
    """

    d: int
    table: int

    def __post_init__(self) -> None:
        _check_dimension(self.d)
        if not 0 <= self.table < (1 << (1 << self.d)):
            raise InputError(f"membership table out of range for dimension {self.d}")

    @classmethod
    def from_members(cls, d: int, members: Iterable[int]) -> "SetFamily":
        table = 0
        for m in members:
            _check_point(m, d)
            table |= 1 << m
        return cls(d, table)

    @classmethod
    def empty(cls, d: int) -> "SetFamily":
        return cls(d, 0)

    @classmethod
    def full(cls, d: int) -> "SetFamily":
        return cls(d, (1 << (1 << d)) - 1)

    @property
    def size(self) -> int:
        return self.table.bit_count()

    def __contains__(self, mask: int) -> bool:
        return 0 <= mask < (1 << self.d) and bool((self.table >> mask) & 1)

    def members(self) -> Iterator[int]:
        """Member point masks in ascending mask order."""
        table = self.table
        m = 0
        while table:
            if table & 1:
                yield m
            table >>= 1
            m += 1

    def has_nonempty_member(self) -> bool:
        return self.table >> 1 != 0

    def __str__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, coords_of_mask(m))) + "}" for m in self.members())
        return f"Family(d={self.d}, {{{inner}}})"


def point_measure(x: int, w: WeightVector) -> Fraction:
    """Product measure of a single point: prod p_i over the support, q_i off it."""
    _check_point(x, w.d)
    value = Fraction(1)
    for i in range(w.d):
        value *= w.p[i] if (x >> i) & 1 else 1 - w.p[i]
    return value


def measure_table(w: WeightVector) -> list[Fraction]:
    """Point measures for all 2^d masks, built by one butterfly-style pass."""
    out = [Fraction(1)] * (1 << w.d)
    for i in range(w.d):
        pi = w.p[i]
        qi = 1 - pi
        step = 1 << i
        for base in range(0, 1 << w.d, step << 1):
            for off in range(base, base + step):
                out[off + step] = out[off] * pi
                out[off] = out[off] * qi
    return out


def measure_numerators(w: WeightVector) -> tuple[list[int], int]:
    """Point measures as integer numerators over the common denominator.

    Returns ``(nums, den)`` with ``point_measure(m, w) == nums[m] / den``
    where ``den = prod denominator(p_i)``.  The representation is not
    reduced, which is what makes it useful: family measures become plain
    integer sums and measure comparisons become integer comparisons.
    """
    nums = [1] * (1 << w.d)
    den = 1
    for i in range(w.d):
        a = w.p[i].numerator
        b = w.p[i].denominator
        den *= b
        step = 1 << i
        for base in range(0, 1 << w.d, step << 1):
            for off in range(base, base + step):
                nums[off + step] = nums[off] * a
                nums[off] = nums[off] * (b - a)
    return nums, den


def family_measure(family: SetFamily, w: WeightVector) -> Fraction:
    """Total measure of the family under the product measure."""
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    total = Fraction(0)
    table = measure_table(w)
    for m in family.members():
        total += table[m]
    return total


def subfamily_containing(family: SetFamily, i: int) -> SetFamily:
    """The subfamily of members whose support contains coordinate i."""
    if not 1 <= i <= family.d:
        raise InputError(f"coordinate {i} out of range 1..{family.d}")
    bit = 1 << (i - 1)
    table = 0
    for m in family.members():
        if m & bit:
            table |= 1 << m
    return SetFamily(family.d, table)


def complement_family(family: SetFamily) -> SetFamily:
    """All subsets of {1, ..., d} not in the family."""
    return SetFamily(family.d, family.table ^ ((1 << (1 << family.d)) - 1))


def is_union_closed(family: SetFamily) -> bool:
    """True when the union of any two members is a member.

    The empty family is union-closed by the vacuous convention.
    """
    members = list(family.members())
    table = family.table
    for idx, a in enumerate(members):
        for b in members[idx + 1:]:
            if not (table >> (a | b)) & 1:
                return False
    return True


def is_simply_rooted(family: SetFamily) -> bool:
    """True when the family's complement is union-closed.

    Equivalently: every member has at most one missing lower neighbor
    within its support.
    """
    return is_union_closed(complement_family(family))


def missing_lower_neighbors(family: SetFamily, x: int) -> tuple[int, ...]:
    """Coordinates i in the support of member x with x minus {i} not in the family."""
    if x not in family:
        raise InputError(f"point mask {x} is not a member of the family")
    out = []
    for i in range(1, family.d + 1):
        bit = 1 << (i - 1)
        if x & bit and not (family.table >> (x ^ bit)) & 1:
            out.append(i)
    return tuple(out)


def member_to_bitstring(mask: int, d: int) -> str:
    """Render a member as a length-d 0/1 string, leftmost char = coordinate 1."""
    _check_point(mask, d)
    return "".join("1" if (mask >> (i - 1)) & 1 else "0" for i in range(1, d + 1))


def bitstring_to_member(line: str, d: int) -> int:
    if len(line) != d:
        raise InputError(f"member line {line!r} is not {d} characters wide")
    mask = 0
    for k, ch in enumerate(line):
        if ch == "1":
            mask |= 1 << k
        elif ch != "0":
            raise InputError(f"member line {line!r} has a character other than 0/1")
    return mask


def family_to_text(family: SetFamily) -> str:
    """Canonical text form: a ``d=<n>`` header, then one 0/1 line per member."""
    lines = [f"d={family.d}"]
    lines.extend(member_to_bitstring(m, family.d) for m in family.members())
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> SetFamily:
    """Parse the canonical family format.

    First non-blank line must be ``d=<n>``; each later non-blank line is a
    length-d 0/1 membership string (leftmost character is coordinate 1).
    Duplicate member lines are an error.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise InputError("empty family text")
    header = lines[0]
    if not header.startswith("d="):
        raise InputError(f"first line must be d=<n>, got {header!r}")
    try:
        d = int(header[2:])
    except ValueError:
        raise InputError(f"bad dimension in header {header!r}") from None
    _check_dimension(d)
    table = 0
    for line in lines[1:]:
        mask = bitstring_to_member(line, d)
        if (table >> mask) & 1:
            raise InputError(f"duplicate member line {line!r}")
        table |= 1 << mask
    return SetFamily(d, table)
