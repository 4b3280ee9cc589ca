"""Exact biased Fourier analysis of Boolean functions on the cube.

The orthonormal basis element for a subset S rescales each factor
(x_i - p_i) by 1/sqrt(p_i q_i).  That square root is irrational in
general, so the spectrum is stored in kernel form: the exact rational
expectation m_S = E[f * prod_{i in S} (x_i - p_i)].  The squared Fourier
coefficient is then m_S^2 * prod_{i in S} 1/(p_i q_i), again exact, and
every identity below is checked with no floating point at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import sqrt

from .cube import (
    InputError,
    SetFamily,
    WeightVector,
    measure_numerators,
    measure_table,
)


@dataclass(frozen=True)
class BooleanFunction:
    """A function from the cube to {-1, +1}, tabulated by point mask."""

    d: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.d:
            raise InputError(f"value table must have 2^{self.d} entries, got {len(self.values)}")
        if any(v not in (-1, 1) for v in self.values):
            raise InputError("function values must be -1 or +1")

    def __call__(self, x: int) -> int:
        return self.values[x]


def indicator(family: SetFamily) -> BooleanFunction:
    """The +-1 indicator: +1 on members of the family, -1 elsewhere."""
    values = tuple(1 if m in family else -1 for m in range(1 << family.d))
    return BooleanFunction(family.d, values)


@dataclass(frozen=True)
class Spectrum:
    """Kernel-form spectrum of a function under a fixed weight vector.

    ``kernels[S]`` is the exact rational m_S indexed by subset bitmask S.
    """

    w: WeightVector
    kernels: tuple[Fraction, ...]

    @property
    def d(self) -> int:
        return self.w.d

    @cached_property
    def _alpha_sq_products(self) -> tuple[Fraction, ...]:
        # prod_{i in S} 1/(p_i q_i), built by lowest-bit recursion.
        out = [Fraction(1)] * (1 << self.d)
        per_coord = [self.w.alpha_sq(i) for i in range(1, self.d + 1)]
        for s in range(1, 1 << self.d):
            low = s & -s
            out[s] = out[s ^ low] * per_coord[low.bit_length() - 1]
        return tuple(out)

    def kernel(self, s: int) -> Fraction:
        return self.kernels[s]

    def coeff_sq(self, s: int) -> Fraction:
        """Exact squared Fourier coefficient for subset mask s."""
        return self.kernels[s] * self.kernels[s] * self._alpha_sq_products[s]

    def coeff_float(self, s: int) -> float:
        """Signed float coefficient, for display only; verdicts never use it."""
        magnitude = sqrt(float(self.coeff_sq(s)))
        return -magnitude if self.kernels[s] < 0 else magnitude

    def level_weight(self, k: int) -> Fraction:
        """Total squared coefficient mass on subsets of size k."""
        if not 0 <= k <= self.d:
            raise InputError(f"level {k} out of range 0..{self.d}")
        total = Fraction(0)
        for s in range(1 << self.d):
            if s.bit_count() == k:
                total += self.coeff_sq(s)
        return total

    def level_weights(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * (self.d + 1)
        for s in range(1 << self.d):
            out[s.bit_count()] += self.coeff_sq(s)
        return tuple(out)


def _check_pair(f: BooleanFunction, w: WeightVector) -> None:
    if f.d != w.d:
        raise InputError(f"function dimension {f.d} != weight dimension {w.d}")


def transform(f: BooleanFunction, w: WeightVector) -> Spectrum:
    """Kernel spectrum via the in-place biased butterfly, O(d 2^d) exact ops.

    One pass per coordinate maps each (x_i=0, x_i=1) slice pair (a, b) to
    (q_i a + p_i b, p_i q_i (b - a)): the first entry marginalizes the
    coordinate, the second contributes the (x_i - p_i) kernel factor.
    """
    _check_pair(f, w)
    w.require_interior("transform")
    work = [Fraction(v) for v in f.values]
    n = 1 << f.d
    for i in range(f.d):
        pi = w.p[i]
        qi = 1 - pi
        pq = pi * qi
        step = 1 << i
        for base in range(0, n, step << 1):
            for off in range(base, base + step):
                a = work[off]
                b = work[off + step]
                work[off] = qi * a + pi * b
                work[off + step] = pq * (b - a)
    return Spectrum(w, tuple(work))


def transform_naive(f: BooleanFunction, w: WeightVector) -> Spectrum:
    """Reference spectrum by the literal double sum over (subset, point).

    Kept deliberately independent of the butterfly: for every point x the
    products prod_{i in S} (x_i - p_i) are expanded over all S and summed
    against f(x) mu(x).  Exactness comes from carrying integer numerators
    over the fixed common denominators.
    """
    _check_pair(f, w)
    w.require_interior("transform")
    n = 1 << f.d
    nums, den = measure_numerators(w)
    numer_p = [pi.numerator for pi in w.p]
    denom_p = [pi.denominator for pi in w.p]
    acc = [0] * n
    prod = [0] * n
    for x in range(n):
        fx = f.values[x] * nums[x]
        prod[0] = 1
        for s in range(1, n):
            low = s & -s
            i = low.bit_length() - 1
            factor = denom_p[i] - numer_p[i] if (x >> i) & 1 else -numer_p[i]
            prod[s] = prod[s ^ low] * factor
        for s in range(n):
            acc[s] += fx * prod[s]
    subset_den = [1] * n
    for s in range(1, n):
        low = s & -s
        subset_den[s] = subset_den[s ^ low] * denom_p[low.bit_length() - 1]
    kernels = tuple(Fraction(acc[s], den * subset_den[s]) for s in range(n))
    return Spectrum(w, kernels)


def parseval_defect(f: BooleanFunction, w: WeightVector) -> Fraction:
    """Total squared coefficient mass minus the measure of f^2; 0 for +-1 f."""
    spectrum = transform(f, w)
    total = Fraction(0)
    for s in range(1 << f.d):
        total += spectrum.coeff_sq(s)
    table = measure_table(w)
    f_sq_measure = sum((table[x] * f.values[x] * f.values[x] for x in range(1 << f.d)), Fraction(0))
    return total - f_sq_measure


def derivative(f: BooleanFunction, i: int) -> tuple[int, ...]:
    """Discrete derivative table (f(x with i set) - f(x with i clear)) / 2.

    Values lie in {-1, 0, +1} and do not depend on coordinate i of x.
    """
    if not 1 <= i <= f.d:
        raise InputError(f"coordinate {i} out of range 1..{f.d}")
    bit = 1 << (i - 1)
    return tuple((f.values[x | bit] - f.values[x & ~bit]) // 2 for x in range(1 << f.d))


@dataclass(frozen=True)
class InfluenceProfile:
    """Exact one-sided and total influences of a function.

    ``plus[i-1]`` is the probability that flipping coordinate i from 0 to 1
    flips the function from -1 to +1; ``minus`` is the opposite flip.  The
    weighted totals rescale each coordinate by 4 p_i q_i.
    """

    plus: tuple[Fraction, ...]
    minus: tuple[Fraction, ...]
    total_plus: Fraction
    total_minus: Fraction

    @property
    def per_coordinate(self) -> tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(self.plus, self.minus))

    @property
    def total(self) -> Fraction:
        return self.total_plus + self.total_minus


def influences(f: BooleanFunction, w: WeightVector) -> InfluenceProfile:
    _check_pair(f, w)
    table = measure_table(w)
    plus = []
    minus = []
    total_plus = Fraction(0)
    total_minus = Fraction(0)
    for i in range(1, f.d + 1):
        bit = 1 << (i - 1)
        up = Fraction(0)
        down = Fraction(0)
        for x in range(1 << f.d):
            lo = f.values[x & ~bit]
            hi = f.values[x | bit]
            if lo == -1 and hi == 1:
                up += table[x]
            elif lo == 1 and hi == -1:
                down += table[x]
        plus.append(up)
        minus.append(down)
        scale = 4 * w.p[i - 1] * (1 - w.p[i - 1])
        total_plus += scale * up
        total_minus += scale * down
    return InfluenceProfile(tuple(plus), tuple(minus), total_plus, total_minus)


@dataclass(frozen=True)
class DegreeOneReport:
    """Degree-0 and degree-1 kernel identities, stated as exact value pairs.

    The empty-set kernel must equal 2 mu(f = +1) - 1, and the rescaled
    singleton kernel m_i / (p_i q_i) must equal twice the one-sided
    influence gap.  ``pairs`` lists (lhs, rhs) with the empty set first.
    """

    mean_pair: tuple[Fraction, Fraction]
    singleton_pairs: tuple[tuple[int, Fraction, Fraction], ...]

    @property
    def all_equal(self) -> bool:
        if self.mean_pair[0] != self.mean_pair[1]:
            return False
        return all(lhs == rhs for _, lhs, rhs in self.singleton_pairs)


def degree_one_identities(f: BooleanFunction, w: WeightVector) -> DegreeOneReport:
    _check_pair(f, w)
    w.require_interior("degree-one identities")
    spectrum = transform(f, w)
    table = measure_table(w)
    positive_mass = sum((table[x] for x in range(1 << f.d) if f.values[x] == 1), Fraction(0))
    mean_pair = (spectrum.kernel(0), 2 * positive_mass - 1)
    profile = influences(f, w)
    singles = []
    for i in range(1, f.d + 1):
        lhs = w.alpha_sq(i) * spectrum.kernel(1 << (i - 1))
        rhs = 2 * (profile.plus[i - 1] - profile.minus[i - 1])
        singles.append((i, lhs, rhs))
    return DegreeOneReport(mean_pair, tuple(singles))


def influence_level_identity_defect(f: BooleanFunction, w: WeightVector) -> Fraction:
    """Total influence minus sum_k k * (level-k weight); exactly 0 always."""
    _check_pair(f, w)
    w.require_interior("influence level identity")
    spectrum = transform(f, w)
    profile = influences(f, w)
    weighted_levels = Fraction(0)
    for k, mass in enumerate(spectrum.level_weights()):
        weighted_levels += k * mass
    return profile.total - weighted_levels


def coordinate_influence_defects(f: BooleanFunction, w: WeightVector) -> tuple[Fraction, ...]:
    """Per-coordinate form of the level identity; every entry is exactly 0.

    Coordinate i's rescaled influence 4 p_i q_i (plus_i + minus_i) equals
    the squared coefficient mass over subsets containing i.
    """
    _check_pair(f, w)
    w.require_interior("influence level identity")
    spectrum = transform(f, w)
    profile = influences(f, w)
    out = []
    for i in range(1, f.d + 1):
        bit = 1 << (i - 1)
        mass = Fraction(0)
        for s in range(1 << f.d):
            if s & bit:
                mass += spectrum.coeff_sq(s)
        scaled = 4 * w.p[i - 1] * (1 - w.p[i - 1]) * profile.per_coordinate[i - 1]
        out.append(scaled - mass)
    return tuple(out)


def low_degree_bound_margin(f: BooleanFunction, w: WeightVector, k: int) -> Fraction:
    """Margin of the low-level influence bound at threshold k; >= 0 for +-1 f.

    Total influence is at least k minus sum_{j<k} (k - j) * (level-j weight).
    """
    _check_pair(f, w)
    if not 1 <= k <= f.d:
        raise InputError(f"threshold {k} out of range 1..{f.d}")
    w.require_interior("low-degree bound")
    spectrum = transform(f, w)
    profile = influences(f, w)
    levels = spectrum.level_weights()
    bound = Fraction(k)
    for j in range(k):
        bound -= (k - j) * levels[j]
    return profile.total - bound
