"""Problem parameters, the interior grid on (0, pi) and difference matrices."""
from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from .landau import check_a


def sigma_from_lambda(lam):
    """Radial frequency ``2 pi / ln(lambda)`` of a DSS factor ``lambda > 1``."""
    lam = float(lam)
    if not lam > 1.0:
        raise ValueError(f"DSS factor must exceed 1, got {lam!r}")
    return 2.0 * math.pi / math.log(lam)


@dataclass(frozen=True)
class Params:
    """Parameters of one assembly / solve.

    Parameters
    ----------
    a : float
        Landau parameter, ``a > 1``.
    sigma : float
        Radial frequency ``2 pi / ln(lambda)``; ignored when ``n == 0``.
    n : int
        Fourier mode index.
    N : int
        Number of interior nodes, at least 3.
    """

    a: float
    sigma: float = 0.0
    n: int = 0
    N: int = 100

    def __post_init__(self):
        object.__setattr__(self, "a", check_a(self.a))
        sigma = float(self.sigma)
        if not math.isfinite(sigma) or sigma < 0.0:
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma!r}")
        object.__setattr__(self, "sigma", sigma)
        if int(self.n) != self.n:
            raise ValueError(f"mode index must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if int(self.N) != self.N or self.N < 3:
            raise ValueError(f"N must be an integer >= 3, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def delta(self):
        return math.pi / (self.N + 1)

    @property
    def n_sigma(self):
        """The product ``n * sigma``: the only way n and sigma enter the operators."""
        return self.n * self.sigma if self.n else 0.0

    def replace(self, **changes):
        fields = {"a": self.a, "sigma": self.sigma, "n": self.n, "N": self.N}
        fields.update(changes)
        return Params(**fields)

    def as_dict(self):
        return {"a": self.a, "sigma": self.sigma, "n": self.n, "N": self.N}


@dataclass(frozen=True)
class Grid:
    """Interior nodes ``phi_k = k * delta``, ``k = 1..N``, with coefficient samples."""

    N: int
    delta: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 3:
            raise ValueError(f"N must be an integer >= 3, got {self.N!r}")
        delta = math.pi / (self.N + 1)
        nodes = delta * np.arange(1, self.N + 1)
        nodes.setflags(write=False)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def from_params(cls, params):
        return cls(params.N)

    @cached_property
    def sin(self):
        return _frozen(np.sin(self.nodes))

    @cached_property
    def cos(self):
        return _frozen(np.cos(self.nodes))

    @cached_property
    def cot(self):
        return _frozen(self.cos / self.sin)

    @cached_property
    def inv_sin2(self):
        return _frozen(1.0 / self.sin**2)

    @property
    def z(self):
        """Images ``cos(phi_k)`` of the nodes; strictly decreasing."""
        return self.cos

    def inner_slice(self, fraction=0.8):
        """Index range covering the central ``fraction`` of the nodes."""
        skip = int(round(self.N * (1.0 - fraction) / 2.0))
        return slice(skip, self.N - skip)


def _frozen(arr):
    arr.setflags(write=False)
    return arr


def _tridiag(N, lower, diag, upper):
    return (
        np.diag(np.full(N - 1, lower), -1)
        + np.diag(np.full(N, diag))
        + np.diag(np.full(N - 1, upper), 1)
    )


def diff1(grid):
    """Central first difference with ``h_0 = h_{N+1} = 0`` eliminated."""
    h = 1.0 / (2.0 * grid.delta)
    return _tridiag(grid.N, -h, 0.0, h)


def diff2(grid):
    """Three-point second difference with ``h_0 = h_{N+1} = 0`` eliminated."""
    h = 1.0 / grid.delta**2
    return _tridiag(grid.N, h, -2.0 * h, h)
