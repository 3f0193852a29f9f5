import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau_spectra.errors import TheoremViolation
from landau_spectra.grid import Grid, Params
from landau_spectra.operators import assemble_M
from landau_spectra.swirl import (
    m_quadratic_form,
    m_spectrum_positivity_sweep,
    smooth_test_vector,
    weight_symmetry_defect,
    write_sweep_csv,
    x0a_norm_sq,
    x0a_pairing,
)


def test_zero_vector():
    r = m_quadratic_form(np.zeros(40), Params(2, 1, 1, 40))
    assert (r.re_part, r.im_part) == (0.0, 0.0)


def test_sin_profile_positive():
    g = Grid(100)
    assert m_quadratic_form(g.sin, Params(2, N=100), g).re_part > 0


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        m_quadratic_form(np.ones(5), Params(2, N=6))


@settings(max_examples=60, deadline=None)
@given(
    a=st.sampled_from([1.01, 1.1, 2.0, 10.0]),
    sigma=st.floats(min_value=0.01, max_value=10.0),
    n=st.integers(min_value=-2, max_value=2),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_positivity_lower_bound(a, sigma, n, seed):
    N = 64
    grid = Grid(N)
    params = Params(a, sigma, n, N)
    g = smooth_test_vector(grid, np.random.default_rng(seed))
    r = m_quadratic_form(g, params, grid)
    bound = params.n_sigma**2 * x0a_norm_sq(g, a, grid)
    assert r.re_part > 0
    assert r.re_part >= bound * (1 - 1e-10)


def test_real_part_matches_direct_pairing_to_second_order():
    errs = []
    for N in (160, 320, 640):
        grid = Grid(N)
        params = Params(2, 0.7, 1, N)
        g = smooth_test_vector(grid, np.random.default_rng(3))
        direct = x0a_pairing(assemble_M(params, grid).entries @ g, g, 2.0, grid).real
        errs.append(abs(m_quadratic_form(g, params, grid).re_part - direct))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 1.9)


def test_landau_weight_defect_vanishes_with_delta():
    defects = [weight_symmetry_defect("landau", 2.0, N, trials=5) for N in (160, 320, 640)]
    assert defects[-1] <= Grid(640).delta
    assert np.all(np.diff(np.log(defects)) < -np.log(2) * 0.9)


def test_unit_weight_defect_bounded_away():
    assert weight_symmetry_defect("unit", 2.0, 640, trials=5) >= 0.01


def test_unit_weight_explicit_pair():
    # the asymmetry on one explicit pair, by direct quadrature
    grid = Grid(640)
    M = assemble_M(Params(2, N=640), grid).entries
    g = np.sin(2 * grid.nodes) * grid.sin
    f = np.sin(3 * grid.nodes) * grid.sin
    w = grid.sin * grid.delta
    bgf = np.sum((M @ g) * f * w)
    bfg = np.sum((M @ f) * g * w)
    norm = np.sqrt(np.sum(g * g * w) * np.sum(f * f * w))
    assert abs(bgf - bfg) / norm >= 0.01


def test_weight_scale_is_irrelevant():
    grid = Grid(320)
    base = weight_symmetry_defect("landau", 2.0, 320, trials=4, seed=7)
    scaled = weight_symmetry_defect(2 * (2.0 - grid.cos) ** 2, 2.0, 320, trials=4, seed=7)
    assert scaled == pytest.approx(base, rel=1e-12)


def test_defect_argument_checks():
    with pytest.raises(ValueError):
        weight_symmetry_defect("landau", 2.0, 20, trials=0)
    with pytest.raises(ValueError):
        weight_symmetry_defect("square", 2.0, 20)
    with pytest.raises(ValueError):
        weight_symmetry_defect(np.ones(3), 2.0, 20)


def test_positivity_sweep_small(tmp_path):
    rows = m_spectrum_positivity_sweep([1.01, 2.0], [0.01, 1.0], [0, 1], 80)
    assert len(rows) == 8
    assert all(r.min_real > 0 and r.min_abs > 0 for r in rows)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(rows, path)
    assert path.read_text().splitlines()[0] == "a,sigma,n,min_real,min_abs"


def test_positivity_sweep_reports_violation(monkeypatch):
    import landau_spectra.swirl as swirl

    real = swirl.assemble_M

    def shifted(params, grid=None):
        m = real(params, grid)
        return type(m)(m.entries - 1e6 * np.eye(params.N), m.kind, m.params)

    monkeypatch.setattr(swirl, "assemble_M", shifted)
    with pytest.raises(TheoremViolation) as info:
        m_spectrum_positivity_sweep([2.0], [1.0], [1], 20)
    assert info.value.row.a == 2.0


def test_positivity_sweep_rejects_zero_sigma():
    with pytest.raises(ValueError):
        m_spectrum_positivity_sweep([2.0], [0.0], [1], 20)


def test_large_a_ground_state():
    rows = m_spectrum_positivity_sweep([1e6], [3.0], [0], 320)
    assert rows[0].min_real == pytest.approx(2.0, rel=0.01)
