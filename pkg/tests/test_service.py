"""HTTP layer: every route, plus the error mapping."""

import pytest
from fastapi.testclient import TestClient

from biasedcube.service.app import app

client = TestClient(app)

CHAIN = {"d": 2, "members": ["00", "10", "11"]}  # {empty, {1}, {1,2}}


def post(path, payload):
    return client.post(path, json=payload)


class TestHealth:
    def test_healthz(self):
        response = client.get("/healthz")
        assert response.status_code == 200


class TestCheck:
    def test_chain(self):
        response = post("/check", {"family": CHAIN})
        assert response.status_code == 200
        body = response.json()
        assert body["union_closed"] is True
        assert body["simply_rooted"] is True
        assert body["contains_empty"] is True
        assert body["best_ratio"] == "2/3"
        assert body["best_ratio_coordinates"] == [1]

    def test_empty_family(self):
        response = post("/check", {"family": {"d": 2, "members": []}})
        assert response.status_code == 200
        body = response.json()
        assert body["size"] == 0
        assert body["best_ratio"] is None
        assert "family is empty" in body["notes"]

    def test_malformed_member_maps_to_400(self):
        response = post("/check", {"family": {"d": 2, "members": ["0"]}})
        assert response.status_code == 400
        assert "detail" in response.json()

    def test_duplicate_member_maps_to_400(self):
        response = post("/check", {"family": {"d": 2, "members": ["00", "00"]}})
        assert response.status_code == 400


class TestMeasure:
    def test_weighted(self):
        response = post("/measure", {"family": CHAIN, "weights": "2/3,3/4"})
        body = response.json()
        assert body["total"] == "3/4"
        assert body["per_coordinate"][0]["subfamily_weight"] == "2/3"
        assert body["per_coordinate"][0]["ratio"] == "8/9"

    def test_uniform_default(self):
        response = post("/measure", {"family": CHAIN})
        assert response.json()["weights"] == "1/2,1/2"

    def test_dimension_mismatch_400(self):
        response = post("/measure", {"family": CHAIN, "weights": "1/2"})
        assert response.status_code == 400


class TestSpectrum:
    def test_parseval_zero(self):
        response = post("/spectrum", {"family": CHAIN, "weights": "2/3,3/4"})
        body = response.json()
        assert body["parseval_defect"] == "0"
        assert len(body["rows"]) == 4
        assert body["rows"][0]["subset"] == []

    def test_boundary_weights_400(self):
        response = post("/spectrum", {"family": CHAIN, "weights": "1,1/2"})
        assert response.status_code == 400
        assert "violations" in response.json()


class TestInfluence:
    def test_identities_reported_equal(self):
        response = post("/influence", {"family": CHAIN, "weights": "2/3,3/4"})
        body = response.json()
        assert all(pair["equal"] for pair in body["degree_one"])
        assert body["level_identity_defect"] == "0"
        assert len(body["low_degree_margins"]) == 2


class TestHitting:
    def test_chain_with_weights(self):
        response = post("/hitting", {"family": CHAIN, "weights": "2/3,3/4"})
        body = response.json()
        assert body["count"] == 1
        entry = body["minimal_hitting_sets"][0]
        assert entry["coordinates"] == [1]
        assert entry["size_bound"]["holds"] is True
        assert entry["weighted_bound"]["holds"] is True

    def test_without_weights_skips_weighted_bound(self):
        response = post("/hitting", {"family": CHAIN})
        entry = response.json()["minimal_hitting_sets"][0]
        assert entry["weighted_bound"] is None
        assert entry["weighted_bound_skipped"] == "no weights provided"

    def test_low_weights_skip_reason(self):
        response = post("/hitting", {"family": CHAIN, "weights": "1/3,1/4"})
        entry = response.json()["minimal_hitting_sets"][0]
        assert entry["weighted_bound"] is None
        assert "below 1/2" in entry["weighted_bound_skipped"]


class TestVerify:
    def test_all_reports_both_karpas_forms(self):
        response = post("/verify", {"family": CHAIN, "weights": "2/3,3/4", "theorem": "all"})
        body = response.json()
        names = [(r["theorem"], r["form"]) for r in body["reports"]]
        assert ("karpas-weighted", "printed") in names
        assert ("karpas-weighted", "derived") in names
        printed = next(r for r in body["reports"] if r["form"] == "printed")
        derived = next(r for r in body["reports"] if r["form"] == "derived")
        assert printed["asserted"] is False
        assert derived["asserted"] is True
        assert body["failed"] is False

    def test_printed_failure_does_not_fail_run(self):
        full = {"d": 1, "members": ["0", "1"]}
        response = post(
            "/verify", {"family": full, "weights": "1/4", "theorem": "karpas-weighted"}
        )
        body = response.json()
        printed = next(r for r in body["reports"] if r["form"] == "printed")
        assert printed["conclusion_status"] == "fails"
        assert printed["witness_text"] is not None
        assert body["failed"] is False

    def test_asserted_failure_sets_failed(self):
        dictator = {"d": 1, "members": ["1"]}
        response = post(
            "/verify", {"family": dictator, "weights": "1/4", "theorem": "simply-rooted"}
        )
        body = response.json()
        assert body["failed"] is True
        report = body["reports"][0]
        assert report["conclusion_status"] == "fails"
        assert report["witness_text"] is not None

    def test_all_skips_inapplicable(self):
        # {{1},{2}} is not union-closed, so the union-closed checks are
        # skipped under "all"; its complement {empty,{1,2}} is union-closed,
        # so the simply rooted check still runs
        fam = {"d": 2, "members": ["10", "01"]}
        response = post("/verify", {"family": fam, "weights": "1/2,1/2", "theorem": "all"})
        body = response.json()
        skipped = {s["theorem"] for s in body["skipped"]}
        assert skipped == {"karpas-uniform", "karpas-weighted", "knill-uniform", "knill-weighted"}
        ran = {r["theorem"] for r in body["reports"]}
        assert ran == {"simply-rooted"}
        assert body["failed"] is False

    def test_specific_precondition_maps_to_400(self):
        fam = {"d": 2, "members": ["10", "01"]}
        response = post(
            "/verify", {"family": fam, "weights": "1/2,1/2", "theorem": "karpas-uniform"}
        )
        assert response.status_code == 400
        assert "violations" in response.json()

    def test_unknown_theorem_400(self):
        response = post("/verify", {"family": CHAIN, "theorem": "frankl"})
        assert response.status_code == 400


class TestEnumerate:
    def test_count(self):
        response = post("/enumerate", {"d": 2, "filters": ["union-closed"]})
        body = response.json()
        assert body["count"] == 14
        assert body["includes_empty_family"] is True
        assert body["families"] is None

    def test_emit(self):
        response = post(
            "/enumerate", {"d": 1, "filters": ["union-closed"], "emit": True}
        )
        body = response.json()
        assert body["count"] == 4
        assert [f["members"] for f in body["families"]] == [[], ["0"], ["1"], ["0", "1"]]

    def test_bad_filter_400(self):
        response = post("/enumerate", {"d": 2, "filters": ["frankl"]})
        assert response.status_code == 400

    def test_d_cap_400(self):
        response = post("/enumerate", {"d": 9})
        assert response.status_code == 400


class TestSearch:
    def test_deterministic_for_seed(self):
        payload = {"d": 2, "weights": "2/3,3/4", "budget": 150, "seed": 21}
        a = post("/search", payload).json()
        b = post("/search", payload).json()
        assert a == b
        assert a["seed"] == 21

    def test_objective_matches_family(self):
        body = post("/search", {"d": 1, "budget": 50, "seed": 0}).json()
        assert body["objective"] == "1/2"
        assert body["family"]["members"] == ["0", "1"]


class TestSample:
    def test_points(self):
        body = post("/sample", {"weights": "2/3,3/4", "n": 3, "seed": 5}).json()
        assert len(body["points"]) == 3
        assert body["estimate"] is None
        assert all(len(p) == 2 and set(p) <= {"0", "1"} for p in body["points"])

    def test_estimate(self):
        body = post(
            "/sample",
            {"weights": "2/3,3/4", "n": 5000, "seed": 2, "family": CHAIN},
        ).json()
        est = body["estimate"]
        assert est["exact"] == "3/4"
        assert est["within_five_stderr"] is True

    def test_negative_n_400(self):
        response = post("/sample", {"weights": "1/2", "n": -1, "seed": 0})
        assert response.status_code == 400
