import json
import math

import pytest

import percolab


def test_constants():
    assert percolab.critical_probability(0.8) == pytest.approx(0.1464466094, abs=1e-10)
    assert percolab.peeling_probability(0.8, 1) == pytest.approx(0.175)
    law = percolab.step_law(0.8, 2000)
    assert law["up"] == pytest.approx(0.53950, abs=1e-5)
    assert law["up"] - sum(k * p for k, p in enumerate(law["down"], start=1)) == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(ValueError):
        percolab.critical_probability(0.5)


def test_excursion_and_cluster():
    z = percolab.sample_excursion(0.8, seed=3, min_length=20, max_length=200)
    assert z[0] == 1 and z[-1] <= 0 and len(z) - 1 >= 20
    assert all(v >= 1 for v in z[:-1])
    c = json.loads(percolab.build_cluster(z, seed=4))
    assert c["n_vertices"] >= 1
    assert len(c["adjacency"]) == c["n_vertices"]


def test_taus_are_censored():
    taus = percolab.sample_taus(0.8, seed=1, count=1000, censor=100)
    assert max(taus) <= 100 and min(taus) >= 1


def test_geometry():
    r = percolab.effective_resistance(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [(0, 1)])
    assert r[0] == pytest.approx(0.75)
    b = percolab.gh_bounds([[0, 2], [2, 0]], [[0]], exact=True)
    assert b["exact"] == pytest.approx(1.0)
    crt = percolab.sample_crt(1.0, 4, seed=2, mesh_divisions=1024)
    d = crt["distances"]
    assert len(d) == 5
    assert all(math.isclose(d[i][j], d[j][i]) for i in range(5) for j in range(5))


def test_verify_resistance_criterion():
    r = percolab.verify("A9")
    assert r["passed"]
    assert {"name", "value", "tolerance", "passed"} <= set(r["checks"][0])
