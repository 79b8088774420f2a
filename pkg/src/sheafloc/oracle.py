"""Independent numerical checks.

Nothing here uses fixed-point data: the sphere integral is done by direct
quadrature, the fiber Gaussian by 2-D quadrature over a disk, and the
Duistermaat-Heckman measure by Monte-Carlo sampling of the area measure.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import InvalidInputError, SingularEvaluationError

MIN_GRID = 8


@dataclass(frozen=True)
class QuadratureSpec:
    n_theta: int = 256
    n_phi: int = 256
    scheme: str = "gauss-legendre"

    def __post_init__(self):
        if self.n_theta < MIN_GRID or self.n_phi < MIN_GRID:
            raise InvalidInputError(f"quadrature grid must be at least {MIN_GRID} x {MIN_GRID}")
        if self.scheme not in ("gauss-legendre", "midpoint"):
            raise InvalidInputError(f"unknown quadrature scheme {self.scheme!r}")


def _theta_rule(spec: QuadratureSpec):
    if spec.scheme == "gauss-legendre":
        x, w = np.polynomial.legendre.leggauss(spec.n_theta)
        return (x + 1) * (math.pi / 2), w * (math.pi / 2)
    h = math.pi / spec.n_theta
    return (np.arange(spec.n_theta) + 0.5) * h, np.full(spec.n_theta, h)


def quadrature_cp1(t, spec: QuadratureSpec | None = None) -> complex | float:
    """``int_{S^2} exp(t cos(theta)) sin(theta) dtheta dphi`` by a tensor rule.

    Gauss-Legendre (or midpoint) in theta, periodic trapezoid in phi.  The
    exact value is ``2 pi (e^t - e^-t) / t`` and ``4 pi`` at ``t = 0``.
    Complex ``t`` is accepted (the compact slice).
    """
    spec = spec or QuadratureSpec()
    theta, wt = _theta_rule(spec)
    phi = np.arange(spec.n_phi) * (2 * math.pi / spec.n_phi)
    wp = np.full(spec.n_phi, 2 * math.pi / spec.n_phi)
    T, _ = np.meshgrid(theta, phi, indexing="ij")
    f = np.exp(t * np.cos(T)) * np.sin(T)
    val = wt @ f @ wp
    return complex(val) if np.iscomplexobj(val) else float(val)


def quadrature_cp1_exact(t) -> complex | float:
    if t == 0:
        return 4 * math.pi
    if isinstance(t, complex):
        return 2 * math.pi * (cmath.exp(t) - cmath.exp(-t)) / t
    return 2 * math.pi * (math.exp(t) - math.exp(-t)) / t


def gaussian_fiber_integral(beta: complex, truncation_radius: float | None = None, grid: int = 64) -> complex:
    """``int_C exp(-|beta| |y|^2) (conj(beta)/|beta|) dy ^ dybar`` over a disk.

    With ``y = x + i v`` we have ``dy ^ dybar = -2i dx ^ dv``; the integral is
    done in polar coordinates (Gauss-Legendre in ``r``, trapezoid in angle)
    over ``|y| <= truncation_radius``.  The limit value is ``-2 pi i / beta``.
    """
    beta = complex(beta)
    a = abs(beta)
    if a == 0:
        raise SingularEvaluationError(beta, "beta = 0: the fiber Gaussian does not decay")
    min_radius = 6 / math.sqrt(a)
    R = min_radius if truncation_radius is None else float(truncation_radius)
    if R < min_radius * (1 - 1e-12):
        raise InvalidInputError(f"truncation radius {R} below 6/sqrt|beta| = {min_radius}")
    if grid < MIN_GRID:
        raise InvalidInputError(f"grid must be at least {MIN_GRID}")
    x, w = np.polynomial.legendre.leggauss(grid)
    r = (x + 1) * (R / 2)
    wr = w * (R / 2)
    ang = np.arange(grid) * (2 * math.pi / grid)
    wa = np.full(grid, 2 * math.pi / grid)
    rr, aa = np.meshgrid(r, ang, indexing="ij")
    xs, vs = rr * np.cos(aa), rr * np.sin(aa)
    density = np.exp(-a * (xs**2 + vs**2)) * (beta.conjugate() / a) * (-2j)
    return complex(wr @ (density * rr) @ wa)


@dataclass(frozen=True)
class DHHistogram:
    edges: np.ndarray
    mass: np.ndarray
    ks_distance: float
    mean: float
    samples: int
    seed: int
    total_mass: float = 4 * math.pi

    def max_bin_deviation(self) -> float:
        """Largest deviation from the uniform density, as a fraction of the total mass."""
        uniform = self.total_mass * np.diff(self.edges) / (self.edges[-1] - self.edges[0])
        return float(np.max(np.abs(self.mass - uniform)) / self.total_mass)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_lo", "bin_hi", "mass"])
        for lo, hi, m in zip(self.edges[:-1], self.edges[1:], self.mass):
            w.writerow([repr(float(lo)), repr(float(hi)), repr(float(m))])
        return buf.getvalue()


def dh_pushforward_cp1(samples: int = 1_000_000, seed: int = 0, bins: int = 20) -> DHHistogram:
    """Push the area measure of the unit sphere forward under ``H = z``.

    Points are drawn as normalized standard Gaussian vectors in ``R^3`` (a
    rotation-invariant sampler), so uniformity of ``H`` is tested rather than
    assumed.  Mass is normalized to the total area ``4 pi``.
    """
    if samples < 10_000:
        raise InvalidInputError("need at least 10^4 samples")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((samples, 3))
    h = v[:, 2] / np.linalg.norm(v, axis=1)
    edges = np.linspace(-1.0, 1.0, bins + 1)
    counts, _ = np.histogram(h, bins=edges)
    mass = counts * (4 * math.pi / samples)
    ks = stats.kstest(h, stats.uniform(loc=-1, scale=2).cdf).statistic
    return DHHistogram(edges, mass, float(ks), float(h.mean()), samples, seed)


@dataclass(frozen=True)
class InversionRow:
    t: float
    localized: float
    quadrature: float
    rel_error: float


@dataclass(frozen=True)
class InversionReport:
    rows: list = field(default_factory=list)

    @property
    def max_rel_error(self) -> float:
        return max((r.rel_error for r in self.rows), default=0.0)


def dh_inversion_check(t_values, nodes: int = 64) -> InversionReport:
    """Compare the localized DH transform on ``CP^1`` with ``int_{-1}^1 2 pi e^{t h} dh``.

    The right side integrates the uniform DH density (Archimedes) by
    Gauss-Legendre quadrature on ``[-1, 1]``.
    """
    from .localize import dh_fourier
    from .models import build_cpn
    from .sheaves import constant_sheaf
    from .weights import CartanElement

    model = build_cpn(1, [(0,), (1,)], [(-1,), (1,)])
    sheaf = constant_sheaf(model)
    x, w = np.polynomial.legendre.leggauss(nodes)
    rows = []
    for t in t_values:
        loc = dh_fourier(model, sheaf, CartanElement.real([t])).value
        quad = float(np.sum(w * 2 * math.pi * np.exp(float(t) * x)))
        rows.append(InversionRow(float(t), loc.real, quad, abs(loc - quad) / abs(quad)))
    return InversionReport(rows)
