import pytest
from fastapi.testclient import TestClient

from tripodkin.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}


class TestIkEndpoint:
    def test_pure_heave(self, client):
        resp = client.post("/ik", json={"z": 60.0, "alpha_deg": 0.0, "beta_deg": 0.0})
        assert resp.status_code == 200
        data = resp.json()
        assert data["l1"] == pytest.approx(60.0, abs=1e-9)
        assert data["l2"] == pytest.approx(60.0, abs=1e-9)
        assert data["l3"] == pytest.approx(60.0, abs=1e-9)
        assert data["x"] == 0.0 and data["y"] == 0.0 and data["gamma_deg"] == 0.0

    def test_custom_geometry(self, client):
        resp = client.post(
            "/ik",
            json={
                "geometry": {"d1": 800.0, "d2": 400.0, "d3": 300.0},
                "z": 20.0, "alpha_deg": 1.0, "beta_deg": 0.5,
            },
        )
        assert resp.status_code == 200

    def test_rejects_invalid_geometry(self, client):
        resp = client.post(
            "/ik",
            json={"geometry": {"d1": -1.0, "d2": 400.0, "d3": 300.0},
                  "z": 20.0, "alpha_deg": 0.0, "beta_deg": 0.0},
        )
        assert resp.status_code == 422

    def test_rejects_missing_fields(self, client):
        resp = client.post("/ik", json={"z": 20.0})
        assert resp.status_code == 422

    def test_degenerate_orientation_maps_to_400(self, client):
        resp = client.post("/ik", json={"z": 50.0, "alpha_deg": 90.0, "beta_deg": 0.0})
        assert resp.status_code == 400
        assert resp.json()["error"] == "DegenerateOrientation"


class TestFkEndpoint:
    def test_round_trip(self, client):
        ik = client.post("/ik", json={"z": 70.0, "alpha_deg": 2.0, "beta_deg": -1.0}).json()
        fk = client.post(
            "/fk",
            json={"l1": ik["l1"], "l2": ik["l2"], "l3": ik["l3"], "iters": 30},
        )
        assert fk.status_code == 200
        data = fk.json()
        assert data["z_hat"] == pytest.approx(70.0, abs=0.2)
        assert data["alpha_hat_deg"] == pytest.approx(2.0, abs=0.01)
        assert data["beta_hat_deg"] == pytest.approx(-1.0, abs=0.01)
        assert data["trace"] is None

    def test_trace_included_on_request(self, client):
        resp = client.post(
            "/fk", json={"l1": 60.0, "l2": 60.0, "l3": 60.0, "trace": True, "iters": 4}
        )
        data = resp.json()
        assert len(data["trace"]) == 4
        assert data["trace"][-1]["z_end"] == data["z_hat"]

    def test_solver_error_maps_to_400(self, client):
        resp = client.post(
            "/fk", json={"l1": 0.001, "l2": 60.0, "l3": 60.0, "z_init": 60.0}
        )
        assert resp.status_code == 400
        assert resp.json()["error"] == "InfeasibleJointLength"

    def test_rejects_negative_lengths(self, client):
        resp = client.post("/fk", json={"l1": -1.0, "l2": 60.0, "l3": 60.0})
        assert resp.status_code == 422


class TestTrajectoryEndpoint:
    def test_small_run_schema(self, client):
        resp = client.post(
            "/trajectory",
            json={"trajectory": {"duration": 0.5, "rate": 10.0, "f_pitch": 0.2}},
        )
        assert resp.status_code == 200
        data = resp.json()
        lines = data["csv"].splitlines()
        assert lines[0].startswith("t,Z_true,")
        assert len(lines) == 1 + 2 * 6
        assert data["summary"]["methods"]["gradient"]["z"]["rms"] >= 0.0


class TestParasiticMapEndpoint:
    def test_histogram(self, client):
        resp = client.post("/parasitic-map", json={"grid_n": 6, "bins": 8})
        assert resp.status_code == 200
        data = resp.json()
        assert data["csv"].splitlines()[0] == "ratio,bin_lo,bin_hi,count"
        assert data["summary"]["points"] == 5 * 6 * 6


class TestVerifyBoundsEndpoint:
    def test_zero_samples_gives_empty_passing_report(self, client):
        resp = client.post("/verify-bounds", json={"samples": 0, "seed": 9})
        assert resp.status_code == 200
        data = resp.json()
        assert data["passed"] is True
        assert data["report"]["checks"] == []

    def test_small_sample_run(self, client):
        resp = client.post("/verify-bounds", json={"samples": 20, "seed": 3})
        assert resp.status_code == 200
        data = resp.json()
        assert data["passed"] is True
        assert len(data["report"]["checks"]) == 8


class TestOpcountEndpoint:
    def test_report_and_table(self, client):
        resp = client.post("/opcount", json={})
        assert resp.status_code == 200
        data = resp.json()
        assert "13040" in data["table"]
        assert data["report"]["jb_over_gradient_ratio"] >= 10.0
