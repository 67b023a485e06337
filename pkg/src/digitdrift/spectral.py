"""Characteristic functions of the drift law and the Gaussian comparison.

``gamma(t, theta)`` is evaluated from the 6x6 matrix product, never from the
exact distributions, so it can referee the distribution engine.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

import numpy as np

from .bitcore import block_count, msb_first
from .drift import c_dist, v_seq


class QuadratureError(RuntimeError):
    pass


def _e(theta):
    return np.exp(1j * np.asarray(theta, dtype=float))


def d_matrix(bit: int, theta) -> np.ndarray:
    """``D_0(theta)`` or ``D_1(theta)``; array input gives shape ``theta.shape + (6, 6)``."""
    th = np.asarray(theta, dtype=float)
    x = _e(th)
    xi = np.conj(x)
    one = np.ones_like(x)
    zero = np.zeros_like(x)
    if bit == 0:
        rows = [
            [one, one, zero, zero, zero, zero],
            [one, one, zero, zero, zero, zero],
            [one, x, zero, zero, zero, zero],
            [zero, zero, one, xi, zero, zero],
            [zero, zero, one, one, zero, zero],
            [zero, zero, x, xi, zero, zero],
        ]
    elif bit == 1:
        rows = [
            [zero, zero, one, one, zero, zero],
            [zero, zero, x, xi, zero, zero],
            [zero, zero, x, one, zero, zero],
            [zero, zero, zero, zero, one, xi],
            [zero, zero, zero, zero, one, one],
            [zero, zero, zero, zero, one, one],
        ]
    else:
        raise ValueError("bit must be 0 or 1")
    m = np.array(rows, dtype=complex) / 2
    # (6, 6, *shape) -> (*shape, 6, 6)
    return np.moveaxis(m, (0, 1), (-2, -1))


def s0_vector(theta) -> np.ndarray:
    """Characteristic functions of ``a_0, b_0, a_1, b_1, a_2, b_2``; shape ``(*theta.shape, 6)``."""
    x = _e(theta)
    xi = np.conj(x)
    den = 2 - xi
    one = np.ones_like(x)
    comps = [
        one,
        one,
        (x + 1) / 2,
        (x + 1) / (2 * den),
        (3 * x + 2 - xi) / (4 * den),
        (2 * x * x + x + xi) / (4 * den),
    ]
    return np.moveaxis(np.array(comps), 0, -1)


def s_vector(u: int, theta) -> np.ndarray:
    th = np.asarray(theta, dtype=float)
    vec = s0_vector(th)
    mats = {}
    for bit in msb_first(u):
        if bit not in mats:
            mats[bit] = d_matrix(bit, th)
        vec = np.einsum("...ij,...j->...i", mats[bit], vec)
    return vec


def gamma(t: int, theta):
    """Characteristic function of ``c_t`` at ``theta`` (scalar or array)."""
    vec = s_vector(t >> 1, theta)
    if t & 1:
        out = (vec[..., 2] + vec[..., 3]) / 2
    else:
        out = (vec[..., 0] + vec[..., 1]) / 2
    return complex(out) if np.ndim(out) == 0 else out


def gamma_star(t: int, theta):
    v = float(v_seq(t))
    return np.exp(-0.5 * v * np.asarray(theta, dtype=float) ** 2)


def gauss_density(v: float, k) -> float:
    if v <= 0:
        raise ValueError("variance must be positive")
    return np.exp(-np.asarray(k, dtype=float) ** 2 / (2 * v)) / math.sqrt(2 * math.pi * v)


# Gaussian comparison


@dataclass
class GaussReport:
    t: int
    N: int
    v: float
    v_exact: str
    k_min: int
    k_max: int
    sup_error: float
    k_at_sup: int
    shape: Optional[float]  # (log N)^2 / N
    ratio: Optional[float]  # sup_error / shape
    dominance_radius: float  # sqrt(N log N) / 2
    main_term_dominates: bool
    worst_relative_error: float

    def to_json(self) -> dict:
        return asdict(self)


def _report_range(c, v: float):
    # 6 standard deviations leaves the Gaussian near 1e-9, so widen until
    # both terms are below 1e-15
    k6 = math.ceil(6 * math.sqrt(v))
    lo = min(-k6, c.k_cut)
    while float(c(lo - 1)) > 1e-15 or gauss_density(v, lo - 1) > 1e-15:
        lo -= 1
    hi = max(k6, c.top - 1)
    while gauss_density(v, hi + 1) > 1e-15:
        hi += 1
    return lo, hi


def gauss_report(t: int) -> GaussReport:
    N = block_count(t)
    if N == 0:
        raise ValueError("degenerate Gaussian: t = 0 has variance 0")
    v_exact = v_seq(t)
    v = float(v_exact)
    c = c_dist(t)
    lo, hi = _report_range(c, v)
    ks = np.arange(lo, hi + 1)
    exact = np.array([float(c(int(k))) for k in ks])
    main = gauss_density(v, ks)
    err = np.abs(exact - main)
    i = int(np.argmax(err))
    shape = ratio = None
    if N >= 2:
        shape = math.log(N) ** 2 / N
        ratio = float(err[i]) / shape
    radius = math.sqrt(N * math.log(N)) / 2 if N >= 2 else 0.0
    inside = np.abs(ks) <= radius
    rel = err[inside] / main[inside]
    return GaussReport(
        t=t,
        N=N,
        v=v,
        v_exact=str(v_exact),
        k_min=lo,
        k_max=hi,
        sup_error=float(err[i]),
        k_at_sup=int(ks[i]),
        shape=shape,
        ratio=ratio,
        dominance_radius=radius,
        main_term_dominates=bool(np.all(rel < 1)),
        worst_relative_error=float(rel.max()) if rel.size else 0.0,
    )


def block_family(n_blocks: int, block: str = "10") -> int:
    """The integer whose binary expansion is ``block`` repeated ``n_blocks`` times."""
    return int(block * n_blocks, 2)


# Decay of |gamma_t|


def decay_bound(N: int, theta):
    return (1 - np.asarray(theta, dtype=float) ** 2 / 128) ** (N // 2)


@dataclass
class DecayReport:
    t: int
    N: int
    worst_margin: float
    theta_at_worst: float
    points: int

    def to_json(self) -> dict:
        return asdict(self)


def decay_check(t: int, thetas: Sequence[float]) -> DecayReport:
    """Largest ``|gamma_t(theta)| - (1 - theta^2/128)^floor(N/2)`` over the grid."""
    th = np.asarray(thetas, dtype=float)
    if np.any(np.abs(th) > math.pi + 1e-15):
        raise ValueError("grid must lie in [-pi, pi]")
    N = block_count(t)
    margin = np.abs(gamma(t, th)) - decay_bound(N, th)
    i = int(np.argmax(margin))
    return DecayReport(t, N, float(margin[i]), float(th[i]), th.size)


def charfun_rows(t: int, thetas: Sequence[float]) -> List[tuple]:
    """Plot-ready rows ``(t, N, theta, re, im, bound, margin)``."""
    th = np.asarray(thetas, dtype=float)
    N = block_count(t)
    g = gamma(t, th)
    bound = decay_bound(N, th)
    margin = np.abs(g) - bound
    return [
        (t, N, float(a), float(z.real), float(z.imag), float(b), float(m))
        for a, z, b, m in zip(th, g, bound, margin)
    ]


def cubic_error_constant(t: int, thetas: Sequence[float]) -> float:
    """Fitted ``max |gamma - gamma*| / (N |theta|^3)`` over nonzero grid points."""
    th = np.asarray([x for x in thetas if x != 0], dtype=float)
    N = max(block_count(t), 1)
    diff = np.abs(gamma(t, th) - gamma_star(t, th))
    return float(np.max(diff / (N * np.abs(th) ** 3)))


# Fourier inversion


def fourier_invert(t: int, k: int, tol: float = 1e-9, max_level: int = 16) -> float:
    """``(1/2pi) int_{-pi}^{pi} gamma_t(theta) e(-k theta) d theta``.

    Trapezoid rule on the full period with the node count doubled until two
    consecutive levels differ by less than ``tol``.  The integrand is
    analytic and periodic, so the error decays geometrically in the number
    of nodes and the successive difference is a reliable estimate.
    """
    n = 16
    prev = None
    for _ in range(max_level):
        th = -math.pi + 2 * math.pi * np.arange(n) / n
        val = complex(np.mean(gamma(t, th) * np.exp(-1j * k * th)))
        if prev is not None and abs(val - prev) < tol:
            return val.real
        prev = val
        n *= 2
    raise QuadratureError(f"inversion for t={t}, k={k} did not reach tol={tol}")


def cutoff_point(N: int) -> float:
    """Split point ``16 sqrt(log N / N)`` between the Gaussian and decay regimes."""
    return 16 * math.sqrt(math.log(N) / N)


def _gl_integrate(f, a: float, b: float, panels: int, order: int = 32) -> complex:
    if b <= a:
        return 0j
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return complex(np.sum(weights * f(nodes)))


@dataclass
class SplitInversion:
    t: int
    k: int
    N: int
    theta0: float
    I1: complex
    I2: complex
    I3: complex
    main_term: float  # sqrt(2 pi / v) exp(-k^2 / 2v), the complete Gauss integral

    @property
    def total(self) -> float:
        return (self.I1 + self.I2 + self.I3).real / (2 * math.pi)


def split_inversion(t: int, k: int, panels: int = 64) -> SplitInversion:
    """Inversion integral cut at ``theta0`` into Gaussian, error and decay pieces."""
    N = block_count(t)
    if N < 2:
        raise ValueError("the cutoff point needs at least two blocks")
    theta0 = min(cutoff_point(N), math.pi)
    v = float(v_seq(t))
    ek = lambda th: np.exp(-1j * k * th)
    I1 = _gl_integrate(lambda th: gamma_star(t, th) * ek(th), -theta0, theta0, panels)
    I2 = _gl_integrate(
        lambda th: (gamma(t, th) - gamma_star(t, th)) * ek(th), -theta0, theta0, panels
    )
    outer = lambda th: gamma(t, th) * ek(th)
    I3 = _gl_integrate(outer, theta0, math.pi, panels) + _gl_integrate(
        outer, -math.pi, -theta0, panels
    )
    main = math.sqrt(2 * math.pi / v) * math.exp(-k * k / (2 * v))
    return SplitInversion(t, k, N, theta0, I1, I2, I3, main)
