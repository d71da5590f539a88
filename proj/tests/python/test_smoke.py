import json
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate
from scipy.interpolate import BSpline

import eqtk


def test_triangle_volume_and_vertices():
    tri = [([1, 0], 0), ([0, 1], 0), ([-1, -1], -1)]
    assert eqtk.volume(2, tri) == Fraction(1, 2)
    assert sorted(map(tuple, eqtk.vertices(2, tri))) == [(0, 0), (0, 1), (1, 0)]


def test_unbounded_volume_raises():
    with pytest.raises(ValueError):
        eqtk.volume(2, [([1, 0], 0)])


def test_exterior_square_of_standard_sl3_is_dual():
    std = [([1, 0], 1), ([0, 1], 1), ([-1, -1], 1)]
    wedge2 = eqtk.exterior_power(2, std, 2)
    assert sorted((tuple(c), m) for c, m in wedge2) == [((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)]


def test_cylinder_classification():
    out = eqtk.classify(3, [[0, 0, 1], [0, 0, -1], [-1, -1, 0], [1, -1, 0], [0, 1, 0]],
                        [0, "diverges", -1, -1, -1])
    assert out["phi_inf"] == [1]
    assert out["phi1"] == [0]
    assert out["phi0"] == [2, 3, 4]
    assert out["w_basis"] == [[0, 0, 1]]


def brute_count(d, radius):
    r2 = radius * radius
    n = 0
    bound = int(radius)
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            rest = r2 - 2 * a * a - b * b
            if rest < 0:
                continue
            for c in range(-bound, bound + 1):
                if c * c <= rest and a * a + b * c == d * d:
                    n += 1
    return n


@pytest.mark.parametrize("d,radius", [(1, 20), (2, 25), (3, 17)])
def test_point_count_matches_brute_force(d, radius):
    assert eqtk.count_points(d, radius) == brute_count(d, radius)


def test_hexagonal_lattice_shortest_vector():
    basis = np.array([[1.0, 0.5], [0.0, math.sqrt(3) / 2]])
    norm, z, lower, upper = eqtk.shortest_vector(basis)
    assert lower <= 1.0 <= upper
    assert norm == pytest.approx(1.0, abs=1e-12)


def test_xi_at_two():
    assert eqtk.xi(2.0) == pytest.approx(math.pi / 6, rel=1e-12)


def test_oscillatory_integral_against_scipy():
    spline = BSpline.basis_element(np.linspace(0, 1, 5), extrapolate=False)

    def part(fn):
        return integrate.quad(lambda x: np.nan_to_num(spline(x)) * fn(2 * math.pi * 3 * math.exp(-2 * x)),
                              0, 1, limit=200, epsabs=1e-13)[0]

    expected = complex(part(math.cos), part(math.sin))
    value, err = eqtk.oscillatory_integral(1, 3)
    assert abs(value - expected) < 1e-9
    assert err <= 1e-8


def test_geodesic_flow_preserves_lorentz_form():
    g = eqtk.a_t(3, 0.7) @ eqtk.u_v(np.array([0.3, -1.2]))
    j = np.diag([1.0, 1.0, 1.0, -1.0])
    assert np.allclose(g.T @ j @ g, j, atol=1e-12)


def test_run_matches_cli_contract():
    code, out, err = eqtk.run("count sp", {"N": 1, "d": [1], "R": [128]}, seed=1)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["result"]["rows"][0]["count"] == brute_count(1, 128)
    code, _, _ = eqtk.run("count ballratio", {"N": 1, "d": [1]})
    assert code == 2
