"""Machine verification of the coordinate-weight theorems.

Four statements about union-closed families (and their simply rooted
complements) are checked here, exactly where possible:

* uniform counting: a union-closed family covering at least half the cube
  has a coordinate in at least half its members;
* weighted form: a union-closed family of weight at least q_max has a
  coordinate i with mu(F_i) >= p_i mu(F).  The q_i-weighted comparison
  that appears in print is also computed and labeled, but it is falsifiable
  (the d=1, p=1/4 full cube refutes it) and is never asserted;
* the simply rooted mirror of the weighted form;
* size bounds from minimal hitting sets, uniform and weighted, plus the
  logarithmic ratio bound, the single check in the package that uses
  high-precision floats instead of exact rationals.

Every verifier returns a report rather than raising on mathematical
failure; raising is reserved for malformed input and violated structural
preconditions.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import log2
from typing import Sequence

import mpmath

from .cube import (
    InputError,
    PreconditionError,
    SetFamily,
    WeightVector,
    complement_family,
    coords_of_mask,
    family_measure,
    family_to_text,
    format_rational,
    is_simply_rooted,
    is_union_closed,
    measure_numerators,
    subfamily_containing,
)
from .hitting import enumerate_minimal_hitting_sets
from .spectral import indicator, influences, transform

HYPOTHESIS_MET = "met"
HYPOTHESIS_NOT_MET = "not_met"
HYPOTHESIS_DEGENERATE = "degenerate"

HOLDS = "holds"
FAILS = "fails"
INDETERMINATE = "indeterminate"

RATIO_PRECISION_BITS = 120
RATIO_TOLERANCE = "1e-20"


@dataclass(frozen=True)
class Witness:
    """A coordinate satisfying a verifier's conclusion, with its exact margin.

    Margins are Fractions wherever the comparison is rational; the
    logarithmic checks report float margins derived from high-precision
    intermediates.
    """

    coordinate: int
    margin: Fraction | float


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    form: str | None
    hypothesis_status: str
    hypothesis_reasons: tuple[str, ...]
    conclusion_status: str
    witnesses: tuple[Witness, ...]
    notes: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def __post_init__(self) -> None:
        if self.conclusion_status == HOLDS and not self.witnesses:
            raise AssertionError("a holding conclusion must carry witnesses")
        if self.conclusion_status == FAILS:
            if self.witnesses:
                raise AssertionError("a failing conclusion cannot carry witnesses")
            if self.hypothesis_status != HYPOTHESIS_MET:
                raise AssertionError("a conclusion can only fail under a met hypothesis")


@dataclass(frozen=True)
class DualFormReport:
    """Both forms of the weighted union-closed comparison, printed and derived."""

    printed: VerificationReport
    derived: VerificationReport


@dataclass(frozen=True)
class FranklRatioReport:
    """Best coordinate frequency max_i |F_i| / |F| for a nonempty family."""

    ratio: Fraction
    witnesses: tuple[int, ...]
    per_coordinate: tuple[tuple[int, int], ...]
    family_size: int
    degenerate: bool
    notes: tuple[str, ...] = ()


def verify_frankl_ratio(family: SetFamily) -> FranklRatioReport:
    if family.size == 0:
        raise PreconditionError(["family is empty"])
    counts = [(i, subfamily_containing(family, i).size) for i in range(1, family.d + 1)]
    best = max(count for _, count in counts)
    ratio = Fraction(best, family.size)
    if not family.has_nonempty_member():
        return FranklRatioReport(
            ratio=Fraction(0),
            witnesses=(),
            per_coordinate=tuple(counts),
            family_size=family.size,
            degenerate=True,
            notes=("family has no nonempty member, the ratio is vacuously 0",),
        )
    witnesses = tuple(i for i, count in counts if count == best)
    return FranklRatioReport(ratio, witnesses, tuple(counts), family.size, False)


def _dictator_note(family: SetFamily) -> tuple[str, ...]:
    for i in range(1, family.d + 1):
        bit = 1 << (i - 1)
        table = 0
        for m in range(1 << family.d):
            if m & bit:
                table |= 1 << m
        if family.table == table:
            return (f"family is the dictator family of coordinate {i}",)
    return ()


def verify_karpas_uniform(family: SetFamily) -> VerificationReport:
    """Uniform counting check: |F| >= 2^(d-1) forces some 2|F_i| >= |F|."""
    if not is_union_closed(family):
        raise PreconditionError(["family is not union-closed"])
    threshold = 1 << (family.d - 1)
    met = family.size >= threshold
    reasons = (
        f"family size {family.size} {'>=' if met else '<'} half the cube ({threshold})",
    )
    notes = () if family.has_nonempty_member() else ("family has no nonempty member",)
    counts = [(i, subfamily_containing(family, i).size) for i in range(1, family.d + 1)]
    details = {
        "family_size": family.size,
        "per_coordinate": [
            {"coordinate": i, "count": c, "margin": Fraction(2 * c - family.size, 2)}
            for i, c in counts
        ],
    }
    if not met:
        return VerificationReport(
            "karpas-uniform", None, HYPOTHESIS_NOT_MET, reasons, INDETERMINATE, (), notes, details
        )
    witnesses = tuple(
        Witness(i, Fraction(2 * c - family.size, 2)) for i, c in counts if 2 * c >= family.size
    )
    if witnesses:
        return VerificationReport(
            "karpas-uniform", None, HYPOTHESIS_MET, reasons, HOLDS, witnesses, notes, details
        )
    counterexample = {"family_text": family_to_text(family), "weights": None, "details": details}
    return VerificationReport(
        "karpas-uniform", None, HYPOTHESIS_MET, reasons, FAILS, (), notes, details, counterexample
    )


def _weighted_karpas_form(
    family: SetFamily,
    w: WeightVector,
    form: str,
    hypothesis_status: str,
    reasons: tuple[str, ...],
    notes: tuple[str, ...],
    total: Fraction,
    per_coordinate: Sequence[tuple[int, Fraction]],
) -> VerificationReport:
    # printed: mu(F_i) >= q_i mu(F); derived: mu(F_i) >= p_i mu(F).
    rows = []
    witnesses = []
    for i, sub in per_coordinate:
        scale = (1 - w.p[i - 1]) if form == "printed" else w.p[i - 1]
        threshold = scale * total
        margin = sub - threshold
        rows.append(
            {"coordinate": i, "subfamily_weight": sub, "threshold": threshold, "margin": margin}
        )
        if margin >= 0:
            witnesses.append(Witness(i, margin))
    details = {"family_weight": total, "per_coordinate": rows}
    if hypothesis_status != HYPOTHESIS_MET:
        return VerificationReport(
            "karpas-weighted", form, hypothesis_status, reasons, INDETERMINATE, (), notes, details
        )
    if witnesses:
        return VerificationReport(
            "karpas-weighted", form, hypothesis_status, reasons, HOLDS, tuple(witnesses), notes, details
        )
    counterexample = {
        "family_text": family_to_text(family),
        "weights": str(w),
        "details": details,
    }
    return VerificationReport(
        "karpas-weighted", form, hypothesis_status, reasons, FAILS, (), notes, details, counterexample
    )


def verify_weighted_karpas(family: SetFamily, w: WeightVector) -> DualFormReport:
    """Weighted union-closed comparison, computed in both labeled forms.

    Hypothesis: mu(F) >= q_max.  The derived form (p_i-weighted) is the
    asserted one; the printed form (q_i-weighted) is reported for reference
    only, since it fails already on the d=1, p=(1/4) full cube.
    """
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    if not is_union_closed(family):
        raise PreconditionError(["family is not union-closed"])
    total = family_measure(family, w)
    met = total >= w.q_max
    status = HYPOTHESIS_MET if met else HYPOTHESIS_NOT_MET
    reasons = (
        f"family weight {format_rational(total)} "
        f"{'>=' if met else '<'} largest coordinate coweight {format_rational(w.q_max)}",
    )
    notes = _dictator_note(family)
    if not family.has_nonempty_member():
        notes = notes + ("family has no nonempty member",)
    notes = notes + (
        "only the derived (p_i-weighted) form is asserted; the printed (q_i-weighted) form is reported for reference",
    )
    per_coordinate = [
        (i, family_measure(subfamily_containing(family, i), w)) for i in range(1, family.d + 1)
    ]
    printed = _weighted_karpas_form(
        family, w, "printed", status, reasons, notes, total, per_coordinate
    )
    derived = _weighted_karpas_form(
        family, w, "derived", status, reasons, notes, total, per_coordinate
    )
    return DualFormReport(printed, derived)


def verify_simply_rooted(family: SetFamily, w: WeightVector) -> VerificationReport:
    """Simply rooted mirror: mu(F) <= p_min forces some mu(F_i) <= p_i mu(F)."""
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    if not is_simply_rooted(family):
        raise PreconditionError(["family is not simply rooted (its complement is not union-closed)"])
    total = family_measure(family, w)
    met = total <= w.p_min
    status = HYPOTHESIS_MET if met else HYPOTHESIS_NOT_MET
    reasons = (
        f"family weight {format_rational(total)} "
        f"{'<=' if met else '>'} smallest coordinate weight {format_rational(w.p_min)}",
    )
    notes = _dictator_note(family)
    if family.size == 0:
        notes = notes + ("family is empty, every coordinate is a witness at margin 0",)
    rows = []
    witnesses = []
    for i in range(1, family.d + 1):
        sub = family_measure(subfamily_containing(family, i), w)
        threshold = w.p[i - 1] * total
        margin = threshold - sub
        rows.append(
            {"coordinate": i, "subfamily_weight": sub, "threshold": threshold, "margin": margin}
        )
        if margin >= 0:
            witnesses.append(Witness(i, margin))
    details = {"family_weight": total, "per_coordinate": rows}
    if not met:
        return VerificationReport(
            "simply-rooted", None, status, reasons, INDETERMINATE, (), notes, details
        )
    if witnesses:
        return VerificationReport(
            "simply-rooted", None, status, reasons, HOLDS, tuple(witnesses), notes, details
        )
    counterexample = {
        "family_text": family_to_text(family),
        "weights": str(w),
        "details": details,
    }
    return VerificationReport(
        "simply-rooted", None, status, reasons, FAILS, (), notes, details, counterexample
    )


@dataclass(frozen=True)
class KarpasDiagnostic:
    """Proof-chain quantities behind the simply rooted comparison.

    ``density_gap`` is p_min - mu(F).  The one-sided influence totals are
    weighted by 4 p_i q_i per coordinate.  For a simply rooted family the
    upper bound always holds; the strict lower bound and the level-one
    comparison are the two inequalities the proof derives from assuming
    the conclusion fails, so their truth values vary.
    """

    family_weight: Fraction
    density_gap: Fraction
    influence_plus: Fraction
    influence_minus: Fraction
    influence_total: Fraction
    upper_bound: Fraction
    upper_bound_holds: bool
    lower_bound: Fraction
    lower_bound_strict: bool
    level_one_weight: Fraction
    level_one_below_influence_gap: bool
    mean_kernel: Fraction


def karpas_diagnostics(family: SetFamily, w: WeightVector) -> KarpasDiagnostic:
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    w.require_interior("diagnostics")
    f = indicator(family)
    profile = influences(f, w)
    spectrum = transform(f, w)
    total = family_measure(family, w)
    gap = w.p_min - total
    upper = 4 * w.q_max * total
    lower = 4 * (w.p_min - gap) * (w.q_max + gap)
    level_one = spectrum.level_weight(1)
    return KarpasDiagnostic(
        family_weight=total,
        density_gap=gap,
        influence_plus=profile.total_plus,
        influence_minus=profile.total_minus,
        influence_total=profile.total,
        upper_bound=upper,
        upper_bound_holds=profile.total_plus <= upper,
        lower_bound=lower,
        lower_bound_strict=profile.total_plus > lower,
        level_one_weight=level_one,
        level_one_below_influence_gap=level_one < profile.total_plus - profile.total_minus,
        mean_kernel=spectrum.kernel(0),
    )


def verify_knill_uniform(family: SetFamily) -> VerificationReport:
    """Uniform size bound: some |F_i| >= (|F| - 1) / log2 |F|.

    The comparison is decided exactly as |F|^{|F_i|} >= 2^{|F|-1} in big-int
    arithmetic; the float bound in the report is display only.
    """
    violations = []
    if not is_union_closed(family):
        violations.append("family is not union-closed")
    if 0 not in family:
        violations.append("empty set is not a member")
    if family.size < 2:
        violations.append(f"family has {family.size} member(s), need at least 2")
    if violations:
        raise PreconditionError(violations)
    n = family.size
    bound = (n - 1) / log2(n)
    reasons = (
        f"family is union-closed with the empty set and {n} members",
    )
    counts = [(i, subfamily_containing(family, i).size) for i in range(1, family.d + 1)]
    witnesses = tuple(
        Witness(i, c - bound) for i, c in counts if n ** c >= 1 << (n - 1)
    )
    hitting_sets = enumerate_minimal_hitting_sets(family)
    details = {
        "family_size": n,
        "bound_float": bound,
        "per_coordinate": [{"coordinate": i, "count": c} for i, c in counts],
        "minimal_hitting_sets": [sorted(coords_of_mask(s)) for s in hitting_sets],
    }
    if witnesses:
        return VerificationReport(
            "knill-uniform", None, HYPOTHESIS_MET, reasons, HOLDS, witnesses, (), details
        )
    counterexample = {"family_text": family_to_text(family), "weights": None, "details": details}
    return VerificationReport(
        "knill-uniform", None, HYPOTHESIS_MET, reasons, FAILS, (), (), details, counterexample
    )


def _to_mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)


def verify_weighted_knill(family: SetFamily, w: WeightVector) -> VerificationReport:
    """Logarithmic ratio bound over every minimal hitting set.

    For each minimal hitting set S, some i in S must satisfy
    (mu(F) - 1/Q) / log(Q mu(F)) <= mu(F_i) / log Q_i, where Q_i = 1/q_i
    and Q is their product.  Checked at 120-bit precision; margins within
    1e-20 of zero are reported indeterminate rather than resolved.
    """
    if family.d != w.d:
        raise InputError(f"family dimension {family.d} != weight dimension {w.d}")
    violations = []
    low = [i for i in range(1, w.d + 1) if not Fraction(1, 2) <= w.p[i - 1] < 1]
    if low:
        violations.append(f"weights outside [1/2, 1) at coordinates {low}")
    if not is_union_closed(family):
        violations.append("family is not union-closed")
    if 0 not in family:
        violations.append("empty set is not a member")
    if not family.has_nonempty_member():
        violations.append("family has no nonempty member")
    if violations:
        raise PreconditionError(violations)

    total = family_measure(family, w)
    empty_weight = Fraction(1)
    for qi in w.q:
        empty_weight *= qi  # 1/Q, exactly the weight of the empty-set point
    scaled = total / empty_weight  # Q mu(F), exact
    sub_weights = {
        i: family_measure(subfamily_containing(family, i), w) for i in range(1, family.d + 1)
    }
    hitting_sets = enumerate_minimal_hitting_sets(family)

    set_results = []
    overall = HOLDS
    witness_margins: dict[int, float] = {}
    with mpmath.workprec(RATIO_PRECISION_BITS):
        tolerance = mpmath.mpf(RATIO_TOLERANCE)
        lhs = _to_mpf(total - empty_weight) / mpmath.log(_to_mpf(scaled))
        for s in hitting_sets:
            rows = []
            best = None
            for i in sorted(coords_of_mask(s)):
                rhs = _to_mpf(sub_weights[i]) / mpmath.log(_to_mpf(1 / (1 - w.p[i - 1])))
                margin = rhs - lhs
                rows.append(
                    {
                        "coordinate": i,
                        "rhs": mpmath.nstr(rhs, 30),
                        "margin": mpmath.nstr(margin, 30),
                    }
                )
                if best is None or margin > best:
                    best = margin
                if margin > tolerance:
                    current = witness_margins.get(i)
                    if current is None or float(margin) > current:
                        witness_margins[i] = float(margin)
            if best > tolerance:
                verdict = HOLDS
            elif best < -tolerance:
                verdict = FAILS
            else:
                verdict = INDETERMINATE
            set_results.append(
                {
                    "hitting_set": sorted(coords_of_mask(s)),
                    "verdict": verdict,
                    "best_margin": mpmath.nstr(best, 30),
                    "per_coordinate": rows,
                }
            )
            if verdict == FAILS:
                overall = FAILS
            elif verdict == INDETERMINATE and overall == HOLDS:
                overall = INDETERMINATE
        lhs_str = mpmath.nstr(lhs, 30)

    reasons = (
        f"family weight {format_rational(total)}, empty-set weight {format_rational(empty_weight)}, "
        f"{len(hitting_sets)} minimal hitting set(s)",
    )
    details = {
        "family_weight": total,
        "empty_set_weight": empty_weight,
        "lhs": lhs_str,
        "precision_bits": RATIO_PRECISION_BITS,
        "tolerance": RATIO_TOLERANCE,
        "per_hitting_set": set_results,
    }
    notes = ()
    if overall == INDETERMINATE:
        notes = ("some margin is within tolerance of zero; not resolved at this precision",)
    witnesses = tuple(
        Witness(i, witness_margins[i]) for i in sorted(witness_margins)
    )
    if overall == HOLDS:
        return VerificationReport(
            "knill-weighted", None, HYPOTHESIS_MET, reasons, HOLDS, witnesses, notes, details
        )
    if overall == FAILS:
        counterexample = {
            "family_text": family_to_text(family),
            "weights": str(w),
            "details": details,
        }
        return VerificationReport(
            "knill-weighted", None, HYPOTHESIS_MET, reasons, FAILS, (), notes, details, counterexample
        )
    return VerificationReport(
        "knill-weighted", None, HYPOTHESIS_MET, reasons, INDETERMINATE, witnesses, notes, details
    )


def render_witness_text(report: VerificationReport) -> str:
    """Render a failing report as witness text: family, weights, exact values."""
    if report.counterexample is None:
        raise InputError("report has no counterexample to render")
    lines = [f"theorem: {report.theorem}" + (f" ({report.form} form)" if report.form else "")]
    weights = report.counterexample.get("weights")
    if weights:
        lines.append(f"weights: {weights}")
    lines.append("family:")
    lines.append(report.counterexample["family_text"].rstrip("\n"))
    detail = report.counterexample.get("details", {})
    if "family_weight" in detail:
        lines.append(f"family weight: {format_rational(detail['family_weight'])}")
    rows = detail.get("per_coordinate", [])
    if rows:
        lines.append("per-coordinate:")
        for row in rows:
            parts = [f"i={row['coordinate']}"]
            for key, value in row.items():
                if key == "coordinate":
                    continue
                if isinstance(value, (Fraction, int)):
                    parts.append(f"{key}={format_rational(value)}")
                else:
                    parts.append(f"{key}={value}")
            lines.append("  " + " ".join(parts))
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def write_witness_file(directory: str, report: VerificationReport) -> str:
    """Dump a failing report as a plain-text witness file; returns the path."""
    text = render_witness_text(report)
    os.makedirs(directory, exist_ok=True)
    form = f"-{report.form}" if report.form else ""
    base = f"witness-{report.theorem}{form}"
    path = os.path.join(directory, base + ".txt")
    counter = 1
    while os.path.exists(path):
        counter += 1
        path = os.path.join(directory, f"{base}-{counter}.txt")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return path


def weight_corpus(
    d: int,
    count: int,
    seed: int,
    *,
    at_least_half: bool = False,
    max_denominator: int = 12,
) -> list[WeightVector]:
    """Deterministic corpus of random rational weight vectors.

    Interior weights by default; with ``at_least_half`` every weight lies
    in [1/2, 1).  Denominators range over 2..max_denominator.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        weights = []
        for _ in range(d):
            den = rng.randrange(2, max_denominator + 1)
            if at_least_half:
                num = rng.randrange((den + 1) // 2, den)
            else:
                num = rng.randrange(1, den)
            weights.append(Fraction(num, den))
        out.append(WeightVector(tuple(weights)))
    return out


@dataclass
class CorpusOutcome:
    """Summary of one exhaustive corpus run."""

    families: int
    checked: int
    skipped_hypothesis: int
    cross_checks: int
    violations: list[dict]
    witness_paths: list[str]

    @property
    def clean(self) -> bool:
        return not self.violations


def _union_closed_corpus(d: int) -> list[SetFamily]:
    from .explore import enumerate_families

    return list(enumerate_families(d, filters=("union-closed",)))


def _family_sums(family: SetFamily, nums: Sequence[int], d: int) -> tuple[int, list[int]]:
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
    return total, per


def exhaustive_simply_rooted(
    d: int,
    weights: Sequence[WeightVector],
    witness_dir: str | None = None,
    families: Sequence[SetFamily] | None = None,
    cross_check_every: int = 311,
) -> CorpusOutcome:
    """Check the simply rooted comparison over every simply rooted family.

    Families are produced as complements of the union-closed enumeration.
    The scan runs on integer numerators over each weight vector's common
    denominator; every ``cross_check_every``-th checked pair is re-verified
    through the exact Fraction verifier to tie the fast path to the
    reference one.
    """
    corpus = families if families is not None else _union_closed_corpus(d)
    outcome = CorpusOutcome(0, 0, 0, 0, [], [])
    pair_index = 0
    for closed in corpus:
        family = complement_family(closed)
        outcome.families += 1
        for w in weights:
            nums, den = _measure_cache(w)
            total, per = _family_sums(family, nums, d)
            # hypothesis: mu(F) <= p_min, i.e. total/den <= a*/b*.
            pmin = w.p_min
            if total * pmin.denominator > pmin.numerator * den:
                outcome.skipped_hypothesis += 1
                continue
            outcome.checked += 1
            pair_index += 1
            found = False
            for i in range(d):
                pi = w.p[i]
                # mu(F_i) <= p_i mu(F) as integers.
                if per[i] * pi.denominator <= pi.numerator * total:
                    found = True
                    break
            if cross_check_every and pair_index % cross_check_every == 0:
                report = verify_simply_rooted(family, w)
                if (report.conclusion_status == HOLDS) != found:
                    raise AssertionError("fast path disagrees with reference verifier")
                outcome.cross_checks += 1
            if not found:
                report = verify_simply_rooted(family, w)
                outcome.violations.append(
                    {"family": family, "weights": str(w), "report": report}
                )
                if witness_dir and report.counterexample is not None:
                    outcome.witness_paths.append(write_witness_file(witness_dir, report))
    return outcome


def exhaustive_weighted_karpas(
    d: int,
    weights: Sequence[WeightVector],
    witness_dir: str | None = None,
    families: Sequence[SetFamily] | None = None,
    cross_check_every: int = 311,
) -> CorpusOutcome:
    """Check the derived weighted comparison over union-closed families.

    Only families with a nonempty member are in scope.  Same integer fast
    path and Fraction cross-check discipline as the simply rooted runner.
    """
    corpus = families if families is not None else _union_closed_corpus(d)
    outcome = CorpusOutcome(0, 0, 0, 0, [], [])
    pair_index = 0
    for family in corpus:
        if not family.has_nonempty_member():
            continue
        outcome.families += 1
        for w in weights:
            nums, den = _measure_cache(w)
            total, per = _family_sums(family, nums, d)
            # hypothesis: mu(F) >= q_max = (b*-a*)/b*.
            pmin = w.p_min
            if total * pmin.denominator < (pmin.denominator - pmin.numerator) * den:
                outcome.skipped_hypothesis += 1
                continue
            outcome.checked += 1
            pair_index += 1
            found = False
            for i in range(d):
                pi = w.p[i]
                if per[i] * pi.denominator >= pi.numerator * total:
                    found = True
                    break
            if cross_check_every and pair_index % cross_check_every == 0:
                report = verify_weighted_karpas(family, w).derived
                if (report.conclusion_status == HOLDS) != found:
                    raise AssertionError("fast path disagrees with reference verifier")
                outcome.cross_checks += 1
            if not found:
                report = verify_weighted_karpas(family, w).derived
                outcome.violations.append(
                    {"family": family, "weights": str(w), "report": report}
                )
                if witness_dir and report.counterexample is not None:
                    outcome.witness_paths.append(write_witness_file(witness_dir, report))
    return outcome


_MEASURE_CACHE: dict[tuple[Fraction, ...], tuple[list[int], int]] = {}


def _measure_cache(w: WeightVector) -> tuple[list[int], int]:
    key = w.p
    hit = _MEASURE_CACHE.get(key)
    if hit is None:
        hit = measure_numerators(w)
        _MEASURE_CACHE[key] = hit
    return hit


def exhaustive_weighted_size(
    d: int,
    weights: Sequence[WeightVector],
    families: Sequence[SetFamily] | None = None,
) -> CorpusOutcome:
    """Weighted size bound over union-closed families containing the empty set.

    For every minimal hitting set S: mu(F) >= prod of q_i off S, compared
    as integers over the common denominator.
    """
    from .hitting import weighted_size_margin

    corpus = families if families is not None else _union_closed_corpus(d)
    outcome = CorpusOutcome(0, 0, 0, 0, [], [])
    pair_index = 0
    for family in corpus:
        if 0 not in family:
            continue
        outcome.families += 1
        hitting_sets = enumerate_minimal_hitting_sets(family)
        for w in weights:
            nums, den = _measure_cache(w)
            total, _ = _family_sums(family, nums, d)
            for s in hitting_sets:
                outcome.checked += 1
                pair_index += 1
                rhs = 1
                for i in range(d):
                    a = w.p[i].numerator
                    b = w.p[i].denominator
                    rhs *= b if (s >> i) & 1 else b - a
                holds = total >= rhs
                if pair_index % 311 == 0:
                    reference = weighted_size_margin(family, s, w)
                    if reference.holds != holds:
                        raise AssertionError("fast path disagrees with reference bound")
                    outcome.cross_checks += 1
                if not holds:
                    outcome.violations.append(
                        {"family": family, "weights": str(w), "hitting_set": coords_of_mask(s)}
                    )
    return outcome


def exhaustive_certificates(
    d: int,
    families: Sequence[SetFamily] | None = None,
) -> CorpusOutcome:
    """Certificate construction and the injection counting over a corpus.

    For every union-closed family and every minimal hitting set: the
    certificate exists, each representative meets the hitting set in
    exactly its own coordinate, each union meets it in exactly its subset,
    the unions are pairwise distinct members, and the count of nonempty
    members is at least 2^|S| - 1.  When the empty set is a member that
    count strengthens to the full 2^|S| <= |F| size bound.
    """
    from .hitting import build_certificate, knill_size_margin

    corpus = families if families is not None else _union_closed_corpus(d)
    outcome = CorpusOutcome(0, 0, 0, 0, [], [])
    for family in corpus:
        outcome.families += 1
        nonempty = family.size - (1 if 0 in family else 0)
        for s in enumerate_minimal_hitting_sets(family):
            outcome.checked += 1
            problems = []
            certificate = build_certificate(family, s)
            for c, member in certificate.representatives:
                if member & s != 1 << (c - 1):
                    problems.append(f"representative of {c} meets the set wrongly")
                if member not in family:
                    problems.append(f"representative of {c} is not a member")
            seen = set()
            for t, member in certificate.unions:
                if member & s != t:
                    problems.append(f"union for {t} meets the set wrongly")
                if member not in family:
                    problems.append(f"union for {t} is not a member")
                if member in seen:
                    problems.append(f"union for {t} repeats a member")
                seen.add(member)
            if nonempty < (1 << s.bit_count()) - 1:
                problems.append(
                    f"injection count {nonempty} < 2^|S|-1 = {(1 << s.bit_count()) - 1}"
                )
            if 0 in family:
                bound = knill_size_margin(family, s)
                if not bound.holds:
                    problems.append(f"size bound 2^|S|={bound.power} > |F|={bound.family_size}")
            if problems:
                outcome.violations.append(
                    {"family": family, "hitting_set": coords_of_mask(s), "problems": problems}
                )
    return outcome


def exhaustive_knill_uniform(
    d: int,
    families: Sequence[SetFamily] | None = None,
) -> CorpusOutcome:
    """Uniform logarithmic size bound over union-closed families with the empty set."""
    corpus = families if families is not None else _union_closed_corpus(d)
    outcome = CorpusOutcome(0, 0, 0, 0, [], [])
    for family in corpus:
        if 0 not in family or family.size < 2:
            continue
        outcome.families += 1
        outcome.checked += 1
        report = verify_knill_uniform(family)
        if report.conclusion_status != HOLDS:
            outcome.violations.append({"family": family, "report": report})
    return outcome


def exhaustive_weighted_knill(
    d: int,
    weights: Sequence[WeightVector],
    families: Sequence[SetFamily] | None = None,
) -> tuple[CorpusOutcome, float | None]:
    """Logarithmic ratio bound over the corpus; returns the worst margin seen.

    A pair is a violation only if its best margin falls below -1e-20; the
    worst margin across the corpus is returned for reporting.
    """
    corpus = families if families is not None else _union_closed_corpus(d)
    outcome = CorpusOutcome(0, 0, 0, 0, [], [])
    worst: float | None = None
    for family in corpus:
        if 0 not in family or not family.has_nonempty_member():
            continue
        outcome.families += 1
        for w in weights:
            outcome.checked += 1
            report = verify_weighted_knill(family, w)
            for entry in report.details["per_hitting_set"]:
                margin = float(mpmath.mpf(entry["best_margin"]))
                if worst is None or margin < worst:
                    worst = margin
            if report.conclusion_status == FAILS:
                outcome.violations.append(
                    {"family": family, "weights": str(w), "report": report}
                )
    return outcome, worst
