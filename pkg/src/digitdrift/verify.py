"""Invariant suites behind ``digitdrift verify``.

Each suite returns a :class:`SuiteResult`; the first violation found is
kept as a minimal reproduction (the offending ``t``, ``k`` and values).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, Optional, Tuple

import numpy as np

from .bitcore import block_count, carries, drift_s, s
from .digitsum import kappa, sigma_dist
from .drift import (
    MEANS,
    V0,
    ab_from_vector,
    apply_moment_op,
    c_dist,
    c_from_vector,
    v_seq,
    variance_from_moments,
    walk_dist_vectors,
)
from .dyadic import ONE, Dyadic, pmf_cf, pmf_mass, pmf_mean, pmf_variance
from .oracle import oracle_ab_table, oracle_sigma_table
from .spectral import decay_check, gamma


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failure: Optional[dict] = None
    stats: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure is None

    def check(self, ok: bool, **repro) -> bool:
        self.checks += 1
        if not ok and self.failure is None:
            self.failure = {k: _plain(v) for k, v in repro.items()}
        return ok

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "stats": {k: _plain(v) for k, v in self.stats.items()},
            "failure": self.failure,
        }


def _plain(v):
    if isinstance(v, Dyadic):
        return str(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _depth_for(tmax: int) -> int:
    """Walk depth covering every ``t < tmax`` (``u = t // 2``)."""
    return max(((tmax - 1) >> 1).bit_length(), 1)


def walk_moment_vectors(depth: int) -> Iterator[Tuple[int, tuple]]:
    """``(u, V_u)`` for ``u < 2^depth`` in ascending order."""

    def visit(u, var, level):
        if level == depth:
            yield u, var
            return
        for bit in (0, 1):
            yield from visit(2 * u + bit, apply_moment_op(bit, var), level + 1)

    yield from visit(0, V0, 0)


def suite_oracle(tmax: int = 1024, kmax: int = 12) -> SuiteResult:
    res = SuiteResult("oracle")
    for u, vec in walk_dist_vectors(_depth_for(tmax)):
        for t in (2 * u, 2 * u + 1):
            if t >= tmax:
                continue
            a, b = ab_from_vector(t, vec)
            for k, (oa, ob) in oracle_ab_table(t, kmax).items():
                res.check(a(k) == oa, t=t, k=k, component="a", engine=a(k), oracle=oa)
                res.check(b(k) == ob, t=t, k=k, component="b", engine=b(k), oracle=ob)
                c = (a(k) + b(k)).ldexp(-1)
                oc = (oa + ob).ldexp(-1)
                res.check(c == oc, t=t, k=k, component="c", engine=c, oracle=oc)
            if res.failure:
                return res
    return res


def suite_moments(tmax: int = 1 << 14) -> SuiteResult:
    """Exact mass, mean, variance of c_t and both routes to the a/b variances."""
    res = SuiteResult("moments")
    depth = _depth_for(tmax)
    for (u, vec), (u2, var) in zip(walk_dist_vectors(depth), walk_moment_vectors(depth)):
        assert u == u2
        for i, comp in enumerate(vec):
            res.check(pmf_mass(comp) == ONE, u=u, component=i, mass=pmf_mass(comp))
            res.check(pmf_mean(comp) == MEANS[i], u=u, component=i, mean=pmf_mean(comp))
            pv = pmf_variance(comp)
            res.check(pv == var[i], u=u, component=i, distribution=pv, recursion=var[i])
        for t in (2 * u, 2 * u + 1):
            if t >= tmax:
                continue
            c = c_from_vector(t, vec)
            v = v_seq(t)
            res.check(pmf_mass(c) == ONE, t=t, mass=pmf_mass(c))
            res.check(pmf_mean(c) == 0, t=t, mean=pmf_mean(c))
            res.check(pmf_variance(c) == v, t=t, variance=pmf_variance(c), v_seq=v)
            res.check(
                variance_from_moments(t, var) == v,
                t=t,
                from_moments=variance_from_moments(t, var),
                v_seq=v,
            )
        if res.failure:
            break
    return res


def suite_bounds(tmax: int = 1 << 16) -> SuiteResult:
    """3N/4 <= v_t <= 5N, |v_{t+1} - v_t| <= 3/2, |v^a_t - v^b_t| <= 48."""
    res = SuiteResult("bounds")
    worst_ab = Dyadic(0)
    worst_step = Dyadic(0)
    prev = None
    for u, var in walk_moment_vectors(_depth_for(tmax)):
        for t in (2 * u, 2 * u + 1):
            if t >= tmax:
                continue
            v = v_seq(t)
            N = block_count(t)
            res.check(Dyadic(3 * N, 2) <= v <= 5 * N, t=t, N=N, v=v)
            if prev is not None:
                step = abs(v - prev)
                worst_step = max(worst_step, step)
                res.check(step <= Dyadic(3, 1), t=t, v_prev=prev, v=v)
            prev = v
            va, vb = (var[2], var[3]) if t & 1 else (var[0], var[1])
            diff = abs(va - vb)
            worst_ab = max(worst_ab, diff)
            res.check(diff <= 48, t=t, v_alpha=va, v_beta=vb)
    res.stats["max_abs_valpha_minus_vbeta"] = worst_ab
    res.stats["max_abs_v_step"] = worst_step
    return res


def random_ts(seed: int, count: int = 100, bits: int = 30):
    rng = random.Random(seed)
    return [rng.randrange(1 << bits) for _ in range(count)]


def suite_spectral(
    seed: int = 7, count: int = 100, bits: int = 30, points: int = 64
) -> SuiteResult:
    """Matrix product against the closed-form series, symmetry, and decay."""
    res = SuiteResult("spectral")
    grid = np.linspace(-math.pi, math.pi, points)
    worst_diff = worst_sym = 0.0
    worst_margin = -math.inf
    for t in random_ts(seed, count, bits):
        g = gamma(t, grid)
        series = pmf_cf(c_dist(t), grid)
        diff = float(np.max(np.abs(g - series)))
        worst_diff = max(worst_diff, diff)
        res.check(diff < 1e-10, t=t, max_abs_difference=diff)
        sym = float(np.max(np.abs(gamma(t, -grid) - np.conj(g))))
        worst_sym = max(worst_sym, sym)
        res.check(sym < 1e-12, t=t, hermitian_defect=sym)
        rep = decay_check(t, grid)
        worst_margin = max(worst_margin, rep.worst_margin)
        res.check(rep.worst_margin <= 1e-12, t=t, theta=rep.theta_at_worst, margin=rep.worst_margin)
    res.stats.update(
        max_matrix_vs_series=worst_diff,
        max_decay_margin=worst_margin,
        max_hermitian_defect=worst_sym,
    )
    return res


def suite_digitsum(tmax: int = 1024, jmax: int = 12, legendre_max: Optional[int] = None) -> SuiteResult:
    """sigma_s against counting for 1 <= t <= tmax, its moments, and Legendre's identity."""
    res = SuiteResult("digitsum")
    for t in range(1, tmax + 1):
        sig = sigma_dist(t)
        res.check(pmf_mass(sig) == ONE, t=t, mass=pmf_mass(sig))
        res.check(pmf_mean(sig) == 0, t=t, mean=pmf_mean(sig))
        res.check(pmf_variance(sig) == kappa(t), t=t, variance=pmf_variance(sig), kappa=kappa(t))
        for j, dens in oracle_sigma_table(t, jmax).items():
            res.check(sig(j) == dens, t=t, j=j, engine=sig(j), oracle=dens)
        if res.failure:
            return res
    lim = tmax if legendre_max is None else legendre_max
    for t in range(lim):
        st = s(t)
        for n in range(lim):
            if drift_s(t, n) != st - carries(t, n):
                res.check(False, t=t, n=n, lhs=drift_s(t, n), rhs=st - carries(t, n))
                return res
        res.checks += lim
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "oracle": suite_oracle,
    "moments": suite_moments,
    "bounds": suite_bounds,
    "spectral": suite_spectral,
    "digitsum": suite_digitsum,
}
