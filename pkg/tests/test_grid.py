import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from landau_spectra.grid import Grid, Params, diff1, diff2, sigma_from_lambda


def test_sigma_from_lambda():
    assert sigma_from_lambda(math.exp(2 * math.pi)) == pytest.approx(1.0)
    assert sigma_from_lambda(math.exp(math.pi)) == pytest.approx(2.0)
    assert sigma_from_lambda(1 + 1e-9) > 1e9


@pytest.mark.parametrize("lam", [1.0, 0.5, -2.0])
def test_sigma_from_lambda_rejects(lam):
    with pytest.raises(ValueError):
        sigma_from_lambda(lam)


def test_params_validation():
    assert Params(2).n_sigma == 0.0
    assert Params(2, sigma=0.5, n=3).n_sigma == 1.5
    for bad in (dict(a=1.0), dict(a=2, sigma=-1), dict(a=2, n=1.5), dict(a=2, N=2),
                dict(a=2, N=10.5), dict(a=2, sigma=float("nan"))):
        with pytest.raises(ValueError):
            Params(**bad)


def test_params_is_hashable_and_replace():
    p = Params(2, 1.0, 1, 64)
    assert p.replace(n=0) == Params(2, 1.0, 0, 64)
    assert len({p, Params(2.0, 1, 1, 64)}) == 1


@given(st.integers(min_value=3, max_value=2000))
def test_grid_nodes(N):
    g = Grid(N)
    assert g.nodes.shape == (N,)
    assert g.delta == pytest.approx(math.pi / (N + 1))
    assert g.nodes[0] == pytest.approx(g.delta)
    assert g.nodes[-1] == pytest.approx(math.pi - g.delta)
    assert np.all(np.diff(g.z) < 0)


def test_grid_arrays_are_read_only():
    g = Grid(10)
    with pytest.raises(ValueError):
        g.nodes[0] = 1.0
    with pytest.raises(ValueError):
        g.sin[0] = 1.0


def _errors(op, f, df, Ns=(100, 200, 400)):
    out = []
    for N in Ns:
        g = Grid(N)
        out.append(np.abs(op(g) @ f(g.nodes) - df(g.nodes)).max())
    return np.array(out)


@pytest.mark.parametrize(
    "op,f,df",
    [
        (diff1, np.sin, np.cos),
        (diff1, lambda x: np.sin(2 * x), lambda x: 2 * np.cos(2 * x)),
        (diff2, np.sin, lambda x: -np.sin(x)),
        (diff2, lambda x: np.sin(2 * x), lambda x: -4 * np.sin(2 * x)),
    ],
)
def test_stencils_second_order(op, f, df):
    err = _errors(op, f, df)
    orders = np.log2(err[:-1] / err[1:])
    assert np.all(orders > 1.9)


def test_diff1_interior_rows_annihilate_constants():
    D = diff1(Grid(50))
    row_sums = D @ np.ones(50)
    assert np.all(row_sums[1:-1] == 0.0)
    assert row_sums[0] != 0.0 and row_sums[-1] != 0.0


def test_diff2_symmetric():
    D = diff2(Grid(40))
    assert np.array_equal(D, D.T)


def test_inner_slice():
    g = Grid(100)
    s = g.inner_slice(0.8)
    assert (s.start, s.stop) == (10, 90)
