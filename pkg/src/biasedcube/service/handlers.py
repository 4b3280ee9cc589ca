"""Handlers mapping request models to response models.

This is the single implementation behind both transports: the FastAPI app
routes straight to these functions, and the CLI builds the same request
models and calls them in-process.  Handlers raise ``InputError`` or
``PreconditionError`` for bad input; mathematical failures never raise,
they are reported in the response.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .. import verify as verify_mod
from ..cube import (
    InputError,
    PreconditionError,
    SetFamily,
    WeightVector,
    coords_of_mask,
    family_from_text,
    family_measure,
    format_rational,
    is_simply_rooted,
    is_union_closed,
    member_to_bitstring,
    subfamily_containing,
)
from ..explore import (
    enumerate_tables_parallel,
    monte_carlo_measure,
    sample_stream,
    search_min_ratio,
)
from ..hitting import (
    build_certificate,
    enumerate_minimal_hitting_sets,
    knill_size_margin,
    weighted_size_margin,
)
from ..spectral import (
    coordinate_influence_defects,
    degree_one_identities,
    indicator,
    influence_level_identity_defect,
    influences,
    low_degree_bound_margin,
    parseval_defect,
    transform,
)
from . import models

SEED_ENV_VAR = "BIASEDCUBE_SEED"
DEFAULT_SEED = 0

THEOREM_NAMES = (
    "karpas-uniform",
    "karpas-weighted",
    "simply-rooted",
    "knill-uniform",
    "knill-weighted",
)


def resolve_seed(explicit: int | None) -> int:
    """Explicit seed, else the BIASEDCUBE_SEED environment variable, else 0."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def family_from_model(model: models.FamilyModel) -> SetFamily:
    text = "\n".join([f"d={model.d}", *model.members])
    return family_from_text(text)


def family_to_model(family: SetFamily) -> models.FamilyModel:
    return models.FamilyModel(
        d=family.d,
        members=[member_to_bitstring(m, family.d) for m in family.members()],
    )


def weights_for(text: str | None, d: int) -> WeightVector:
    w = WeightVector.uniform(d) if text is None else WeightVector.parse(text)
    if w.d != d:
        raise InputError(f"weight dimension {w.d} != family dimension {d}")
    return w


def _stringify(value) -> str:
    if isinstance(value, (Fraction, int)):
        return format_rational(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _witness_models(report: verify_mod.VerificationReport) -> list[models.WitnessModel]:
    return [
        models.WitnessModel(coordinate=w.coordinate, margin=_stringify(w.margin))
        for w in report.witnesses
    ]


def _report_model(report: verify_mod.VerificationReport, asserted: bool) -> models.ReportModel:
    rows = []
    for row in report.details.get("per_coordinate", []):
        rows.append({key: _stringify(value) for key, value in row.items()})
    extra = {}
    for key, value in report.details.items():
        if key == "per_coordinate":
            continue
        if isinstance(value, (Fraction, int, float, str)):
            extra[key] = _stringify(value)
    witness_text = None
    if report.counterexample is not None:
        witness_text = verify_mod.render_witness_text(report)
    return models.ReportModel(
        theorem=report.theorem,
        form=report.form,
        asserted=asserted,
        hypothesis_status=report.hypothesis_status,
        hypothesis_reasons=list(report.hypothesis_reasons),
        conclusion_status=report.conclusion_status,
        witnesses=_witness_models(report),
        notes=list(report.notes),
        per_coordinate=rows,
        extra=extra,
        witness_text=witness_text,
    )


def check(request: models.CheckRequest) -> models.CheckResponse:
    family = family_from_model(request.family)
    notes = []
    best_ratio = None
    best_coords: list[int] = []
    if family.size:
        ratio_report = verify_mod.verify_frankl_ratio(family)
        best_ratio = format_rational(ratio_report.ratio)
        best_coords = list(ratio_report.witnesses)
        notes.extend(ratio_report.notes)
    else:
        notes.append("family is empty")
    return models.CheckResponse(
        d=family.d,
        size=family.size,
        union_closed=is_union_closed(family),
        simply_rooted=is_simply_rooted(family),
        contains_empty=0 in family,
        has_nonempty_member=family.has_nonempty_member(),
        best_ratio=best_ratio,
        best_ratio_coordinates=best_coords,
        notes=notes,
    )


def measure(request: models.MeasureRequest) -> models.MeasureResponse:
    family = family_from_model(request.family)
    w = weights_for(request.weights, family.d)
    total = family_measure(family, w)
    rows = []
    for i in range(1, family.d + 1):
        sub = family_measure(subfamily_containing(family, i), w)
        ratio = format_rational(sub / total) if total else None
        rows.append(
            models.CoordinateMeasure(
                coordinate=i,
                weight=format_rational(w.p[i - 1]),
                subfamily_weight=format_rational(sub),
                ratio=ratio,
            )
        )
    return models.MeasureResponse(weights=str(w), total=format_rational(total), per_coordinate=rows)


def spectrum(request: models.SpectrumRequest) -> models.SpectrumResponse:
    family = family_from_model(request.family)
    w = weights_for(request.weights, family.d)
    f = indicator(family)
    spec = transform(f, w)
    rows = [
        models.SpectrumRow(
            subset=list(coords_of_mask(s)),
            kernel=format_rational(spec.kernel(s)),
            coeff_sq=format_rational(spec.coeff_sq(s)),
            coeff=spec.coeff_float(s),
        )
        for s in range(1 << family.d)
    ]
    return models.SpectrumResponse(
        weights=str(w),
        rows=rows,
        level_weights=[format_rational(mass) for mass in spec.level_weights()],
        parseval_defect=format_rational(parseval_defect(f, w)),
    )


def influence(request: models.InfluenceRequest) -> models.InfluenceResponse:
    family = family_from_model(request.family)
    w = weights_for(request.weights, family.d)
    f = indicator(family)
    profile = influences(f, w)
    rows = [
        models.InfluenceRow(
            coordinate=i,
            plus=format_rational(profile.plus[i - 1]),
            minus=format_rational(profile.minus[i - 1]),
            combined=format_rational(profile.per_coordinate[i - 1]),
        )
        for i in range(1, family.d + 1)
    ]
    identities = degree_one_identities(f, w)
    pairs = [
        models.IdentityPair(
            label="mean kernel vs 2 mu(F) - 1",
            lhs=format_rational(identities.mean_pair[0]),
            rhs=format_rational(identities.mean_pair[1]),
            equal=identities.mean_pair[0] == identities.mean_pair[1],
        )
    ]
    for i, lhs, rhs in identities.singleton_pairs:
        pairs.append(
            models.IdentityPair(
                label=f"rescaled kernel {i} vs influence gap",
                lhs=format_rational(lhs),
                rhs=format_rational(rhs),
                equal=lhs == rhs,
            )
        )
    margins = [
        models.LowDegreeMargin(k=k, margin=format_rational(low_degree_bound_margin(f, w, k)))
        for k in range(1, family.d + 1)
    ]
    return models.InfluenceResponse(
        weights=str(w),
        per_coordinate=rows,
        total_plus=format_rational(profile.total_plus),
        total_minus=format_rational(profile.total_minus),
        total=format_rational(profile.total),
        degree_one=pairs,
        level_identity_defect=format_rational(influence_level_identity_defect(f, w)),
        coordinate_level_defects=[
            format_rational(defect) for defect in coordinate_influence_defects(f, w)
        ],
        low_degree_margins=margins,
    )


def hitting(request: models.HittingRequest) -> models.HittingResponse:
    family = family_from_model(request.family)
    w = None
    if request.weights is not None:
        w = weights_for(request.weights, family.d)
    entries = []
    for s in enumerate_minimal_hitting_sets(family):
        certificate = build_certificate(family, s)
        cert_model = models.CertificateModel(
            representatives=[
                models.RepresentativeModel(
                    coordinate=c, member=member_to_bitstring(m, family.d)
                )
                for c, m in certificate.representatives
            ],
            unions=[
                models.UnionModel(
                    subset=list(coords_of_mask(t)), member=member_to_bitstring(m, family.d)
                )
                for t, m in certificate.unions
            ],
        )
        size_model = None
        size_skip = None
        try:
            bound = knill_size_margin(family, s)
            size_model = models.SizeBoundModel(
                power=bound.power, family_size=bound.family_size, holds=bound.holds
            )
        except PreconditionError as exc:
            size_skip = str(exc)
        weighted_model = None
        weighted_skip = None
        if w is None:
            weighted_skip = "no weights provided"
        else:
            try:
                weighted = weighted_size_margin(family, s, w)
                weighted_model = models.WeightedBoundModel(
                    family_weight=format_rational(weighted.family_weight),
                    outside_q_product=format_rational(weighted.outside_q_product),
                    holds=weighted.holds,
                )
            except PreconditionError as exc:
                weighted_skip = str(exc)
        entries.append(
            models.HittingSetModel(
                coordinates=list(coords_of_mask(s)),
                certificate=cert_model,
                size_bound=size_model,
                size_bound_skipped=size_skip,
                weighted_bound=weighted_model,
                weighted_bound_skipped=weighted_skip,
            )
        )
    return models.HittingResponse(count=len(entries), minimal_hitting_sets=entries)


def verify(request: models.VerifyRequest) -> models.VerifyResponse:
    family = family_from_model(request.family)
    if request.theorem != "all" and request.theorem not in THEOREM_NAMES:
        raise InputError(
            f"unknown theorem {request.theorem!r}, expected one of "
            f"{', '.join(THEOREM_NAMES + ('all',))}"
        )
    w = weights_for(request.weights, family.d)
    selected = THEOREM_NAMES if request.theorem == "all" else (request.theorem,)
    reports: list[models.ReportModel] = []
    skipped: list[models.SkippedTheorem] = []
    for name in selected:
        try:
            if name == "karpas-uniform":
                reports.append(_report_model(verify_mod.verify_karpas_uniform(family), True))
            elif name == "karpas-weighted":
                dual = verify_mod.verify_weighted_karpas(family, w)
                reports.append(_report_model(dual.printed, False))
                reports.append(_report_model(dual.derived, True))
            elif name == "simply-rooted":
                reports.append(_report_model(verify_mod.verify_simply_rooted(family, w), True))
            elif name == "knill-uniform":
                reports.append(_report_model(verify_mod.verify_knill_uniform(family), True))
            elif name == "knill-weighted":
                reports.append(_report_model(verify_mod.verify_weighted_knill(family, w), True))
        except PreconditionError as exc:
            if request.theorem == "all":
                skipped.append(models.SkippedTheorem(theorem=name, reason=str(exc)))
            else:
                raise
    failed = any(r.asserted and r.conclusion_status == verify_mod.FAILS for r in reports)
    return models.VerifyResponse(
        weights=str(w),
        reports=reports,
        skipped=skipped,
        failed=failed,
    )


def enumerate_families_handler(request: models.EnumerateRequest) -> models.EnumerateResponse:
    tables = enumerate_tables_parallel(request.d, tuple(request.filters), request.jobs)
    includes_empty = bool(tables) and tables[0] == 0
    notes = []
    if includes_empty:
        notes.append("count includes the empty family (vacuously union-closed)")
    families = None
    if request.emit:
        families = [family_to_model(SetFamily(request.d, t)) for t in tables]
    return models.EnumerateResponse(
        d=request.d,
        count=len(tables),
        includes_empty_family=includes_empty,
        notes=notes,
        families=families,
    )


def search(request: models.SearchRequest) -> models.SearchResponse:
    w = weights_for(request.weights, request.d)
    seed = resolve_seed(request.seed)
    result = search_min_ratio(
        request.d,
        w,
        request.budget,
        seed,
        require_weight_hypothesis=request.require_weight_hypothesis,
        include_empty=request.include_empty,
    )
    return models.SearchResponse(
        family=family_to_model(result.family),
        objective=format_rational(result.objective),
        objective_float=float(result.objective),
        seed=result.seed,
        evaluations=result.evaluations,
        accepted=result.accepted,
        restarts=result.restarts,
    )


def sample(request: models.SampleRequest) -> models.SampleResponse:
    w = WeightVector.parse(request.weights)
    seed = resolve_seed(request.seed)
    if request.family is None:
        if request.n < 0:
            raise InputError(f"sample count must be nonnegative, got {request.n}")
        points = [
            member_to_bitstring(m, w.d) for m in sample_stream(w, request.n, seed)
        ]
        return models.SampleResponse(seed=seed, points=points)
    family = family_from_model(request.family)
    estimate = monte_carlo_measure(family, w, request.n, seed)
    exact = family_measure(family, w)
    est_float = estimate.hits / estimate.draws
    abs_error = abs(est_float - float(exact))
    return models.SampleResponse(
        seed=seed,
        estimate=models.EstimateModel(
            hits=estimate.hits,
            draws=estimate.draws,
            estimate=format_rational(estimate.estimate),
            estimate_float=est_float,
            stderr=estimate.stderr,
            exact=format_rational(exact),
            exact_float=float(exact),
            abs_error=abs_error,
            within_five_stderr=abs_error < 5 * estimate.stderr,
        ),
    )
