"""HTTP API: estimator parity with the library, error codes, statelessness."""
import pytest
from fastapi.testclient import TestClient

from citesuccess import __version__, estimate_success_index, success_index_brute, CitationDistribution
from citesuccess.service import ServiceSettings, create_app, settings_from_env


@pytest.fixture()
def client():
    return TestClient(create_app(ServiceSettings()))


def rows(journal_id, hist):
    return [
        {"journal_id": journal_id, "citations": c, "n_articles": n}
        for c, n in sorted(hist.items())
    ]


class TestHealth:
    def test_defaults(self, client):
        body = client.get("/v1/health").json()
        assert body["status"] == "ok"
        assert body["version"] == __version__
        assert body["constants"] == {"alpha": 0.94, "beta": 2.37, "q": 0.33, "k": 1.23}

    def test_env_overrides(self):
        settings = settings_from_env({"CS_K": "1.5", "CS_ALPHA": "0.9"})
        body = TestClient(create_app(settings)).get("/v1/health").json()
        assert body["constants"]["k"] == 1.5
        assert body["constants"]["alpha"] == 0.9

    def test_repeated_calls_identical(self, client):
        assert client.get("/v1/health").json() == client.get("/v1/health").json()


class TestEstimateEndpoint:
    def test_equal_ifs(self, client):
        body = client.get("/v1/estimate", params={"if_t": 5, "if_r": 5}).json()
        assert body["s_forward"] == 0.5
        assert body["s_backward"] == 0.5
        assert body["ratio_x"] == 1.0

    def test_published_pair(self, client):
        body = client.get("/v1/estimate", params={"if_t": 35.5, "if_r": 4.46}).json()
        assert body["s_forward"] == pytest.approx(0.93, abs=0.02)
        assert body["s_backward"] == pytest.approx(0.07, abs=0.02)

    def test_agrees_with_library_exactly(self, client):
        body = client.get("/v1/estimate", params={"if_t": 8.25, "if_r": 2.5}).json()
        est = estimate_success_index(8.25, 2.5)
        assert body["s_forward"] == est.index.value
        assert body["f0_reference"] == est.f0_reference
        assert body["mode"] == est.mode

    def test_missing_parameter(self, client):
        r = client.get("/v1/estimate", params={"if_t": 3})
        assert r.status_code == 400
        assert r.json()["error"] == "missing_parameter"

    def test_negative_parameter(self, client):
        r = client.get("/v1/estimate", params={"if_t": -1, "if_r": 2})
        assert r.status_code == 400
        assert r.json()["error"] == "invalid_parameter"

    def test_non_numeric_parameter(self, client):
        r = client.get("/v1/estimate", params={"if_t": "abc", "if_r": 2})
        assert r.status_code == 400
        assert r.json()["error"] == "invalid_parameter"

    def test_constant_overrides_echoed(self, client):
        base = client.get("/v1/estimate", params={"if_t": 6, "if_r": 3}).json()
        tweaked = client.get("/v1/estimate", params={"if_t": 6, "if_r": 3, "k": 2.0}).json()
        assert tweaked["constants_used"]["k"] == 2.0
        assert tweaked["s_forward"] != base["s_forward"]

    def test_request_beats_env(self):
        settings = settings_from_env({"CS_K": "1.5"})
        client = TestClient(create_app(settings))
        body = client.get("/v1/estimate", params={"if_t": 6, "if_r": 3, "k": "2.5"}).json()
        assert body["constants_used"]["k"] == 2.5

    def test_stateless_repeatability(self, client):
        a = client.get("/v1/estimate", params={"if_t": 9.9, "if_r": 1.1}).json()
        client.get("/v1/estimate", params={"if_t": 1.1, "if_r": 9.9})
        b = client.get("/v1/estimate", params={"if_t": 9.9, "if_r": 1.1}).json()
        assert a == b


class TestCompareEndpoint:
    def test_identical_histograms(self, client):
        hist = {0: 5, 2: 15, 9: 5}
        r = client.post(
            "/v1/compare", json={"target": rows("a", hist), "reference": rows("b", hist)}
        )
        assert r.status_code == 200
        body = r.json()
        assert body["s_forward"] == 0.5 and body["s_backward"] == 0.5
        assert body["target"]["n_articles"] == 25

    def test_matches_brute_oracle(self, client):
        t, r_ = {0: 2, 3: 4, 7: 1}, {1: 3, 2: 2}
        body = client.post(
            "/v1/compare", json={"target": rows("t", t), "reference": rows("r", r_)}
        ).json()
        expected = success_index_brute(
            CitationDistribution.from_histogram("t", t),
            CitationDistribution.from_histogram("r", r_),
        ).value
        assert body["s_forward"] == expected
        assert body["s_backward"] == 1 - expected

    def test_summary_fields(self, client):
        body = client.post(
            "/v1/compare",
            json={
                "target": rows("t", {0: 50, 4: 50}),
                "reference": rows("r", {1: 10}),
                "adjustment": 1.04,
            },
        ).json()
        assert body["target"]["impact_factor"] == pytest.approx(2.08)
        assert body["target"]["uncited_fraction"] == 0.5

    def test_empty_histogram_rejected(self, client):
        r = client.post("/v1/compare", json={"target": [], "reference": rows("r", {1: 1})})
        assert r.status_code == 400
        assert r.json()["error"] == "invalid_histogram"

    def test_malformed_json_rejected(self, client):
        r = client.post(
            "/v1/compare", content=b"{not json", headers={"content-type": "application/json"}
        )
        assert r.status_code == 400
        assert r.json()["error"] == "invalid_body"

    def test_negative_citations_rejected(self, client):
        r = client.post(
            "/v1/compare",
            json={
                "target": [{"journal_id": "t", "citations": -1, "n_articles": 2}],
                "reference": rows("r", {1: 1}),
            },
        )
        assert r.status_code == 400

    def test_payload_limit_413(self):
        client = TestClient(create_app(ServiceSettings(max_body_bytes=100)))
        big = {"target": rows("t", {i: 1 for i in range(200)}), "reference": rows("r", {1: 1})}
        r = client.post("/v1/compare", json=big)
        assert r.status_code == 413
        assert r.json()["error"] == "payload_too_large"


class TestStaticServing:
    def test_bundle_served_at_root(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>calculator</body></html>")
        client = TestClient(create_app(ServiceSettings(static_dir=str(tmp_path))))
        r = client.get("/")
        assert r.status_code == 200
        assert "calculator" in r.text
        # API routes still take precedence over the mount
        assert client.get("/v1/health").status_code == 200

    def test_no_static_dir_root_404(self, client):
        assert client.get("/").status_code == 404
