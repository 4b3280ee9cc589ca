"""Wire models for every operation the package exposes.

Families travel as a dimension plus member bitstrings (the same 0/1 lines
the family file format uses, leftmost character = coordinate 1).  All
rationals travel as exact ``a/b`` strings; floats appear only in fields
that are explicitly display-only or statistical.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class FamilyModel(BaseModel):
    d: int
    members: list[str]


class CheckRequest(BaseModel):
    family: FamilyModel


class CheckResponse(BaseModel):
    d: int
    size: int
    union_closed: bool
    simply_rooted: bool
    contains_empty: bool
    has_nonempty_member: bool
    best_ratio: str | None = None
    best_ratio_coordinates: list[int] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)


class MeasureRequest(BaseModel):
    family: FamilyModel
    weights: str | None = None


class CoordinateMeasure(BaseModel):
    coordinate: int
    weight: str
    subfamily_weight: str
    ratio: str | None


class MeasureResponse(BaseModel):
    weights: str
    total: str
    per_coordinate: list[CoordinateMeasure]


class SpectrumRequest(BaseModel):
    family: FamilyModel
    weights: str | None = None


class SpectrumRow(BaseModel):
    subset: list[int]
    kernel: str
    coeff_sq: str
    coeff: float


class SpectrumResponse(BaseModel):
    weights: str
    rows: list[SpectrumRow]
    level_weights: list[str]
    parseval_defect: str


class InfluenceRequest(BaseModel):
    family: FamilyModel
    weights: str | None = None


class InfluenceRow(BaseModel):
    coordinate: int
    plus: str
    minus: str
    combined: str


class IdentityPair(BaseModel):
    label: str
    lhs: str
    rhs: str
    equal: bool


class LowDegreeMargin(BaseModel):
    k: int
    margin: str


class InfluenceResponse(BaseModel):
    weights: str
    per_coordinate: list[InfluenceRow]
    total_plus: str
    total_minus: str
    total: str
    degree_one: list[IdentityPair]
    level_identity_defect: str
    coordinate_level_defects: list[str]
    low_degree_margins: list[LowDegreeMargin]


class HittingRequest(BaseModel):
    family: FamilyModel
    weights: str | None = None


class RepresentativeModel(BaseModel):
    coordinate: int
    member: str


class UnionModel(BaseModel):
    subset: list[int]
    member: str


class CertificateModel(BaseModel):
    representatives: list[RepresentativeModel]
    unions: list[UnionModel]


class SizeBoundModel(BaseModel):
    power: int
    family_size: int
    holds: bool


class WeightedBoundModel(BaseModel):
    family_weight: str
    outside_q_product: str
    holds: bool


class HittingSetModel(BaseModel):
    coordinates: list[int]
    certificate: CertificateModel
    size_bound: SizeBoundModel | None
    size_bound_skipped: str | None = None
    weighted_bound: WeightedBoundModel | None = None
    weighted_bound_skipped: str | None = None


class HittingResponse(BaseModel):
    count: int
    minimal_hitting_sets: list[HittingSetModel]


class VerifyRequest(BaseModel):
    family: FamilyModel
    weights: str | None = None
    theorem: str


class WitnessModel(BaseModel):
    coordinate: int
    margin: str


class ReportModel(BaseModel):
    theorem: str
    form: str | None = None
    asserted: bool
    hypothesis_status: str
    hypothesis_reasons: list[str]
    conclusion_status: str
    witnesses: list[WitnessModel]
    notes: list[str]
    per_coordinate: list[dict[str, str]] = Field(default_factory=list)
    extra: dict[str, str] = Field(default_factory=dict)
    witness_text: str | None = None


class SkippedTheorem(BaseModel):
    theorem: str
    reason: str


class VerifyResponse(BaseModel):
    weights: str | None
    reports: list[ReportModel]
    skipped: list[SkippedTheorem]
    failed: bool


class EnumerateRequest(BaseModel):
    d: int
    filters: list[str] = Field(default_factory=list)
    emit: bool = False
    jobs: int = 1


class EnumerateResponse(BaseModel):
    d: int
    count: int
    includes_empty_family: bool
    notes: list[str]
    families: list[FamilyModel] | None = None


class SearchRequest(BaseModel):
    d: int
    weights: str | None = None
    budget: int = 2000
    seed: int | None = None
    require_weight_hypothesis: bool = False
    include_empty: bool = True


class SearchResponse(BaseModel):
    family: FamilyModel
    objective: str
    objective_float: float
    seed: int
    evaluations: int
    accepted: int
    restarts: int


class SampleRequest(BaseModel):
    weights: str
    n: int = 1
    seed: int | None = None
    family: FamilyModel | None = None


class EstimateModel(BaseModel):
    hits: int
    draws: int
    estimate: str
    estimate_float: float
    stderr: float
    exact: str
    exact_float: float
    abs_error: float
    within_five_stderr: bool


class SampleResponse(BaseModel):
    seed: int
    points: list[str] | None = None
    estimate: EstimateModel | None = None
