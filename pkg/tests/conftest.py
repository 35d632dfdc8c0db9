"""Shared helpers: finite-difference oracles for jet derivatives."""

from __future__ import annotations

import mpmath as mp
import numpy as np


def fd_partial(f, x: float, lam: float, i: int, j: int, h: float = 1e-4) -> float:
    """Central finite-difference estimate of d^(i+j) f / dx^i dlam^j.

    Uses tensor-product central-difference stencils of orders 0..3 in
    each variable, which is enough for every partial a degree-3 jet can
    report.
    """

    def stencil(order: int, step: float):
        # (offsets, weights) for d^order/dt^order, central differences
        if order == 0:
            return [0.0], [1.0]
        if order == 1:
            return [-step, step], [-0.5 / step, 0.5 / step]
        if order == 2:
            return [-step, 0.0, step], [1 / step**2, -2 / step**2, 1 / step**2]
        if order == 3:
            return (
                [-2 * step, -step, step, 2 * step],
                [-0.5 / step**3, 1 / step**3, -1 / step**3, 0.5 / step**3],
            )
        raise ValueError(order)

    ox, wx = stencil(i, h)
    ol, wl = stencil(j, h)
    total = 0.0
    for dx, cx in zip(ox, wx):
        for dl, cl in zip(ol, wl):
            total += cx * cl * f(x + dx, lam + dl)
    return total


def fd_partial_mp(f, x: float, lam: float, i: int, j: int, h: float = 1e-4) -> float:
    """Like fd_partial but with 50-digit arithmetic throughout.

    `f` must accept and return mpmath numbers.  Removes the roundoff
    floor that double precision puts under third-order stencils, leaving
    only the O(h^2) truncation error of the central differences.
    """
    with mp.workdps(50):
        hs = mp.mpf(h)
        out = fd_partial(f, mp.mpf(x), mp.mpf(lam), i, j, h=hs)
        return float(out)


def mp_model_value(name: str, setting: dict):
    """Independent high-precision reimplementation of the built-in models.

    Written directly from the closed-form expressions, not from the jet
    code, so it can serve as an oracle for it.
    """
    if name in ("sh", "sh_caseB"):
        a = mp.mpf(setting.get("a", 0.05))
        b = mp.mpf(setting.get("b", 0.95))
        p = mp.mpf(setting.get("p", -1.0 if name == "sh_caseB" else -1.5))
        d_a = mp.mpf(setting.get("d_a", 1.0))
        alpha = mp.mpf(setting.get("alpha", 0.0))

        def f(u, q):
            return (q * d_a * u**-2 - 1) * (-q + b * u ** (1 + p) + a * u**2) + alpha

        return f
    d_tilde = mp.mpf(setting.get("d_tilde", 0.1))
    d_tilde_m = mp.mpf(setting.get("d_tilde_m", 0.05))
    mu = mp.mpf(setting.get("mu", 0.25))
    gamma = mp.mpf(setting.get("gamma", 5.0))
    alpha_prime = mp.mpf(setting.get("alpha_prime", 0.0))
    if name == "ldgc_b":

        def f(p, phi):
            return gamma * (phi - d_tilde * mu * p) * (p - 1) / (
                p * (d_tilde - d_tilde_m)
            ) + alpha_prime

        return f
    if name == "ldgc_c":

        def f(p, phi):
            return gamma * (p**2 * d_tilde - phi) * (p - 1) / (p * d_tilde_m) + alpha_prime

        return f
    raise KeyError(name)


def rel_err(got: float, want: float, floor: float = 1.0) -> float:
    return abs(got - want) / max(abs(want), floor)


def sweep_root_count(germ, window, lam: float, n: int = 2000) -> int:
    """Count sign changes of g(., lam) on a dense x grid (bisection oracle)."""
    from unfolder.errors import DomainError

    xs = np.linspace(window.x_min, window.x_max, n)
    vals = []
    for x in xs:
        try:
            vals.append(germ.value(float(x), float(lam)))
        except DomainError:
            vals.append(np.nan)
    vals = np.asarray(vals)
    ok = np.isfinite(vals)
    return int(
        sum(
            1
            for k in range(n - 1)
            if ok[k] and ok[k + 1] and vals[k] * vals[k + 1] < 0
        )
    )


def polyline_crossing_count(diagram, lam: float) -> int:
    """Count intersections of traced branches with the vertical line lambda=lam."""
    count = 0
    for branch in diagram:
        pts = branch.points
        for k in range(len(pts) - 1):
            if (pts[k].lam - lam) * (pts[k + 1].lam - lam) < 0:
                count += 1
    return count
