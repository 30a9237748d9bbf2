import time

import pytest
from fastapi.testclient import TestClient

from qratio.distributions import DistributionSpec
from qratio.service import ServiceLimits, create_app


@pytest.fixture(scope="module")
def client():
    app = create_app(limits=ServiceLimits(max_trials=5000, max_cells=16, sync_work=200_000),
                     static_dir=None)
    with TestClient(app) as c:
        yield c


EXP1 = DistributionSpec("exponential", (1.0,))
X = list(EXP1.sample(80, seed=51))
Y = list(EXP1.sample(80, seed=52))


class TestEstimateEndpoint:
    def test_same_data_point_one(self, client):
        r = client.post("/api/estimate", json={"x": X, "y": X, "method": "rq", "p": 0.5})
        assert r.status_code == 200
        body = r.json()
        assert body["point"] == pytest.approx(1.0)
        assert set(body) == {"method", "p", "alpha", "point", "lower", "upper"}

    def test_matches_cli_core(self, client):
        from qratio.intervals import ci_sq_iqr_ratio

        r = client.post("/api/estimate", json={"x": X, "y": Y, "method": "riqr", "p": 0.2})
        expect = ci_sq_iqr_ratio(X, Y, 0.2)
        assert r.json()["point"] == pytest.approx(expect.point, rel=1e-12)
        assert r.json()["lower"] == pytest.approx(expect.lower, rel=1e-12)

    def test_missing_field_is_400(self, client):
        r = client.post("/api/estimate", json={"x": X, "method": "rq", "p": 0.5})
        assert r.status_code == 400
        assert r.json()["code"] == "validation"

    def test_bad_method_is_400(self, client):
        r = client.post("/api/estimate", json={"x": X, "y": Y, "method": "nope"})
        assert r.status_code == 400

    def test_precondition_failure_is_422(self, client):
        bad = list(X)
        bad[0] = -1.0
        r = client.post("/api/estimate", json={"x": bad, "y": Y, "method": "pb"})
        assert r.status_code == 422
        body = r.json()
        assert body["code"] == "precondition"
        assert "positive" in body["message"]

    def test_malformed_json_is_400(self, client):
        r = client.post("/api/estimate", content=b"{not json",
                        headers={"content-type": "application/json"})
        assert r.status_code == 400

    def test_shoemaker_method(self, client):
        r = client.post("/api/estimate", json={"x": X, "y": Y, "method": "shoemaker", "p": 0.25})
        assert r.status_code == 200
        assert set(r.json()) == {"statistic", "p_value", "p"}


class TestSimulateEndpoint:
    def _payload(self, trials=40, sizes=((30, 30),)):
        return {
            "dist1": "exp(1)",
            "dist2": "exp(1)",
            "sizes": [list(s) for s in sizes],
            "methods": ["rq@0.5"],
            "trials": trials,
            "seed": 9,
        }

    def test_small_run_is_synchronous(self, client):
        r = client.post("/api/simulate", json=self._payload())
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "done"
        rows = body["results"]
        assert len(rows) == 1
        row = rows[0]
        assert row["method"] == "rq"
        assert row["n1"] == 30
        assert 0.0 <= row["coverage"] <= 1.0
        assert row["failures"] == 0

    def test_results_mirror_engine(self, client):
        from qratio.simulation import SimConfig, MethodSpec, results_to_rows, run_table

        r = client.post("/api/simulate", json=self._payload())
        cfg = SimConfig(dist1=EXP1, dist2=EXP1, sample_sizes=((30, 30),),
                        methods=(MethodSpec("rq", 0.5),), trials=40, master_seed=9)
        expect = results_to_rows(cfg, run_table(cfg))
        assert r.json()["results"] == expect

    def test_long_run_polls_as_job(self, client):
        payload = self._payload(trials=3000, sizes=((100, 100),))
        r = client.post("/api/simulate", json=payload)
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "running"
        job_id = body["job_id"]
        deadline = time.time() + 60
        while time.time() < deadline:
            jr = client.get(f"/api/jobs/{job_id}")
            assert jr.status_code == 200
            jbody = jr.json()
            if jbody["status"] == "done":
                assert len(jbody["results"]) == 1
                break
            time.sleep(0.1)
        else:
            pytest.fail("job did not finish")

    def test_unknown_job_is_404(self, client):
        r = client.get("/api/jobs/doesnotexist")
        assert r.status_code == 404
        assert r.json()["code"] == "not_found"

    def test_trials_cap_is_400(self, client):
        r = client.post("/api/simulate", json=self._payload(trials=999_999))
        assert r.status_code == 400
        assert "capped" in r.json()["message"]

    def test_cell_cap_is_400(self, client):
        payload = self._payload(sizes=tuple((20 + i, 20) for i in range(20)))
        assert len(payload["sizes"]) * 1 > 16
        r = client.post("/api/simulate", json=payload)
        assert r.status_code == 400

    def test_unknown_keys_are_400(self, client):
        payload = self._payload()
        payload["bogus"] = 1
        r = client.post("/api/simulate", json=payload)
        assert r.status_code == 400
        assert "bogus" in r.json()["message"]


class TestOptimalPEndpoint:
    def test_exponential(self, client):
        r = client.get("/api/optimal-p", params={"dist": "exp(1)"})
        assert r.status_code == 200
        body = r.json()
        assert body["p"] == pytest.approx(0.128, abs=0.005)
        assert body["boundary"] is False

    def test_malformed_dist_has_grammar_hint(self, client):
        r = client.get("/api/optimal-p", params={"dist": "wat"})
        assert r.status_code == 400
        assert "lognormal(0,1)" in r.json()["message"]

    def test_missing_dist_param(self, client):
        r = client.get("/api/optimal-p")
        assert r.status_code == 400


def test_distributions_catalog(client):
    r = client.get("/api/distributions")
    assert r.status_code == 200
    families = {f["family"]: f for f in r.json()["families"]}
    assert set(families) == {
        "lognormal", "exponential", "chi_squared", "pareto2", "normal",
        "uniform", "beta", "gamma", "weibull",
    }
    assert families["exponential"]["aliases"] == ["exp"]
    assert families["pareto2"]["params"] == ["scale", "shape"]
