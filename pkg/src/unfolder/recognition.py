"""Singular point location and classification.

The classifier evaluates the degree-3 jet of a germ at a candidate point
and tests the defining and non-degeneracy conditions of the catalogued
normal forms, most degenerate first:

    pitchfork      g = g_x = g_xx = g_l = 0,  g_xxx != 0, g_lx != 0
    transcritical  g = g_x = g_l  = 0,  g_xx != 0, g_xx*g_ll - g_lx^2 < 0
    limit point    g = g_x = 0,  g_xx != 0, g_l != 0

All conditions are exact-zero statements in the theory; numerically they
are tested against a tolerance after normalizing by the largest
derivative magnitude at the point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace as dc_replace
from typing import Optional

import numpy as np

from .errors import (
    NoConvergence,
    NotOnSolutionSet,
    NotUnfoldable,
    SingularJacobian,
    WrongRegime,
)
from .jet import partial
from .models import Germ, ShParams, sh_germ

__all__ = [
    "SingularityReport",
    "UnfoldingDescriptor",
    "derivatives_at",
    "classify_point",
    "locate_crossing",
    "locate_pitchfork",
    "unfolding_template",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-8

DERIV_NAMES = ("g", "g_x", "g_l", "g_xx", "g_lx", "g_ll", "g_xxx")

CODIMENSION = {"Regular": 0, "LimitPoint": 0, "Transcritical": 1, "Pitchfork": 2, "Degenerate": 3}


def derivatives_at(germ: Germ, x: float, lam: float) -> dict[str, float]:
    """The seven derivatives used by the recognition conditions."""
    j = germ.jet(x, lam)
    return {
        "g": partial(j, 0, 0),
        "g_x": partial(j, 1, 0),
        "g_l": partial(j, 0, 1),
        "g_xx": partial(j, 2, 0),
        "g_lx": partial(j, 1, 1),
        "g_ll": partial(j, 0, 2),
        "g_xxx": partial(j, 3, 0),
    }


@dataclass(frozen=True)
class SingularityReport:
    """Outcome of classifying one candidate singular point."""

    location: tuple[float, float]
    classification: str
    codimension: int
    derivatives: dict[str, float]
    residuals: dict[str, float]
    epsilon: Optional[int] = None
    delta: Optional[int] = None
    extra_param: Optional[tuple[str, float]] = None
    germ_name: str = ""

    def to_dict(self) -> dict:
        return {
            "location": list(self.location),
            "extra_param": list(self.extra_param) if self.extra_param else None,
            "class": self.classification,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "codimension": self.codimension,
            "derivatives": self.derivatives,
            "residuals": self.residuals,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def classify_point(germ: Germ, x0: float, lam0: float, tol: float = DEFAULT_TOL) -> SingularityReport:
    """Classify the point (x0, lam0) on the solution set of the germ.

    Raises NotOnSolutionSet when g itself is not (normalized) below tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = derivatives_at(germ, x0, lam0)
    scale = max(abs(v) for v in d.values())
    if scale == 0.0:
        scale = 1.0
    n = {k: v / scale for k, v in d.items()}

    if abs(n["g"]) >= tol:
        raise NotOnSolutionSet(
            f"|g|={abs(d['g']):.3e} at ({x0}, {lam0}) is not below tolerance"
        )

    common = dict(location=(x0, lam0), derivatives=d, germ_name=germ.name)

    # Pitchfork: four defining zeros, two non-degeneracy conditions.
    if (
        abs(n["g_x"]) < tol
        and abs(n["g_xx"]) < tol
        and abs(n["g_l"]) < tol
        and abs(n["g_xxx"]) > tol
        and abs(n["g_lx"]) > tol
    ):
        return SingularityReport(
            classification="Pitchfork",
            codimension=CODIMENSION["Pitchfork"],
            epsilon=int(np.sign(d["g_xxx"])),
            delta=int(np.sign(d["g_lx"])),
            residuals={k: abs(n[k]) for k in ("g", "g_x", "g_xx", "g_l")},
            **common,
        )

    det = n["g_xx"] * n["g_ll"] - n["g_lx"] ** 2
    if (
        abs(n["g_x"]) < tol
        and abs(n["g_l"]) < tol
        and abs(n["g_xx"]) > tol
        and det < -tol * tol
    ):
        return SingularityReport(
            classification="Transcritical",
            codimension=CODIMENSION["Transcritical"],
            epsilon=int(np.sign(d["g_xx"])),
            residuals={k: abs(n[k]) for k in ("g", "g_x", "g_l")},
            **common,
        )

    if abs(n["g_x"]) < tol and abs(n["g_xx"]) > tol and abs(n["g_l"]) > tol:
        return SingularityReport(
            classification="LimitPoint",
            codimension=CODIMENSION["LimitPoint"],
            epsilon=int(np.sign(d["g_xx"])),
            residuals={k: abs(n[k]) for k in ("g", "g_x")},
            **common,
        )

    if abs(n["g_x"]) > tol or abs(n["g_l"]) > tol:
        return SingularityReport(
            classification="Regular",
            codimension=CODIMENSION["Regular"],
            residuals={"g": abs(n["g"])},
            **common,
        )

    return SingularityReport(
        classification="Degenerate",
        codimension=CODIMENSION["Degenerate"],
        residuals={k: abs(n[k]) for k in DERIV_NAMES},
        **common,
    )


def locate_crossing(
    germ: Germ,
    x_guess: float,
    lam_guess: float,
    tol: float = 1e-11,
    max_iter: int = 50,
) -> tuple[float, float]:
    """Newton-refine a candidate singular point, solving g = g_x = 0.

    The vanilla 2x2 Newton system (rows g, g_x) has a singular Jacobian
    exactly at branch crossings, where the full gradient of g vanishes
    and convergence degrades to linear.  When the iterate enters that
    regime the solver switches to Newton on the gradient (g_x, g_l) with
    the (nondegenerate, saddle) Hessian, restoring quadratic convergence;
    the g residual is still required to pass, so spurious extrema of g
    off the solution set are rejected.  Folds never trigger the switch.
    """
    x, lam = float(x_guess), float(lam_guess)
    for _ in range(max_iter):
        d = derivatives_at(germ, x, lam)
        if abs(d["g"]) < tol and abs(d["g_x"]) < tol:
            return float(x), float(lam)
        scale = max(abs(v) for v in d.values()) or 1.0
        near_gradient_zero = abs(d["g_x"]) < 1e-3 * scale and abs(d["g_l"]) < 1e-3 * scale
        if near_gradient_zero:
            jac = np.array([[d["g_xx"], d["g_lx"]], [d["g_lx"], d["g_ll"]]])
            rhs = np.array([d["g_x"], d["g_l"]])
        else:
            jac = np.array([[d["g_x"], d["g_l"]], [d["g_xx"], d["g_lx"]]])
            rhs = np.array([d["g"], d["g_x"]])
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if abs(det) < 1e-14:
            raise SingularJacobian(f"Newton matrix singular near ({x}, {lam}), |det|={abs(det):.2e}")
        step = np.linalg.solve(jac, rhs)
        damp = 1.0
        while not germ.in_domain(x - damp * step[0], lam - damp * step[1]):
            damp *= 0.5
            if damp < 1e-8:
                raise NoConvergence(
                    f"locate_crossing: step from ({x}, {lam}) cannot stay in domain"
                )
        x -= damp * step[0]
        lam -= damp * step[1]
    raise NoConvergence(f"locate_crossing: no convergence after {max_iter} iterations")


def locate_pitchfork(
    params: ShParams,
    guesses: tuple[float, float, float] = (2.0, 1.0, 3.0),
    max_iter: int = 60,
) -> tuple[float, float, float, float]:
    """Solve for the SH pitchfork point and critical d_a, for p < -1.

    Solves the three defining conditions g = g_x = g_xx = 0 in the
    unknowns (u, q, d_a) and then evaluates the fourth defining condition
    g_l at the solution, returning its residual: four conditions are met
    by a three-unknown solve, exhibiting the overdetermination of the
    unperturbed model.

    Newton on (g, g_x, g_xx) directly has a singular Jacobian at the
    root (the product structure makes the first row's gradient vanish
    there), so the solve uses the equivalent nondegenerate system
    (factor1, factor2, g_xx) built from the two solution curves
    q = u^2/d_a and q = u*m(u), whose simultaneous zero is exactly the
    point where g = g_x = g_xx = 0.
    """
    if params.p >= -1:
        raise WrongRegime(f"pitchfork location requires p < -1, got p={params.p}")
    if params.alpha != 0.0:
        raise WrongRegime("pitchfork location requires alpha = 0")

    a, b, p = params.a, params.b, params.p

    def factored(v: np.ndarray) -> np.ndarray:
        u, q, d_a = v
        if u <= 0 or q <= 0 or d_a <= 0:
            return np.full(3, np.nan)
        f1 = q * d_a / u**2 - 1.0  # zero on the curve q = u^2/d_a
        f2 = b * u ** (1.0 + p) + a * u * u - q  # zero on q = u*m(u)
        germ = sh_germ(dc_replace(params, d_a=float(d_a)))
        g_xx = derivatives_at(germ, float(u), float(q))["g_xx"]
        return np.array([f1, f2, g_xx])

    if any(w <= 0 for w in guesses):
        raise ValueError("guesses (u, q, d_a) must be positive")

    def crossing_estimate(d: float) -> tuple[float, float, float]:
        # crossing of q = u^2/d with q = u*m(u); exists for d < 1/a
        u = (b * d / (1.0 - a * d)) ** (1.0 / (1.0 - p))
        return u, u * u / d, d

    # retry ladder: user guess first, then crossings at a spread of d_a
    # values below the existence bound 1/a
    candidates = [np.array(guesses, dtype=float)]
    candidates += [np.array(crossing_estimate(frac / a)) for frac in (0.2, 0.4, 0.6, 0.8)]

    v = None
    for start in candidates:
        w = start.copy()
        ok = False
        for _ in range(max_iter):
            f = factored(w)
            if not np.all(np.isfinite(f)):
                break
            if np.max(np.abs(f)) < 1e-12:
                ok = True
                break
            jac = _fd_jacobian(factored, w)
            if not np.all(np.isfinite(jac)):
                break
            try:
                step = np.linalg.solve(jac, f)
            except np.linalg.LinAlgError:
                break
            # damp steps so no unknown leaves the positive octant or
            # collapses by more than 10x in one iteration
            lam = 1.0
            while np.any(w - lam * step < 0.1 * w) and lam > 1e-6:
                lam *= 0.5
            w = w - lam * step
        if ok:
            v = w
            break
    if v is None:
        raise NoConvergence(f"locate_pitchfork: no convergence after {max_iter} iterations")

    u0, q0, d_a0 = (float(w) for w in v)
    germ = sh_germ(dc_replace(params, d_a=d_a0))
    d = derivatives_at(germ, u0, q0)
    residual_gl = abs(d["g_l"])
    return u0, q0, d_a0, residual_gl


def _fd_jacobian(fun, v: np.ndarray, rel_h: float = 1e-7) -> np.ndarray:
    """Central finite-difference Jacobian of a small vector function."""
    n = len(v)
    f0 = fun(v)
    jac = np.zeros((len(f0), n))
    for k in range(n):
        h = rel_h * max(1.0, abs(v[k]))
        vp, vm = v.copy(), v.copy()
        vp[k] += h
        vm[k] -= h
        jac[:, k] = (fun(vp) - fun(vm)) / (2.0 * h)
    return jac


@dataclass(frozen=True)
class UnfoldingDescriptor:
    """Universal unfolding of a recognized normal form."""

    normal_form: str
    n_parameters: int
    directions: tuple[str, ...]


def unfolding_template(report: SingularityReport) -> UnfoldingDescriptor:
    """Normal-form universal unfolding for a classified singular point.

    Parameter directions are named after the model parameters that
    realize them when the germ is one of the built-in models.
    """
    cls = report.classification
    if cls == "Pitchfork":
        eps = "-" if report.epsilon < 0 else "+"
        dlt = "-" if report.delta < 0 else "+"
        nf = f"{eps}x^3 + beta*x^2 {dlt} lambda*x + alpha"
        if report.germ_name.startswith("sh"):
            directions = ("alpha", "d_a")
        else:
            directions = ("alpha", "beta")
        return UnfoldingDescriptor(normal_form=nf, n_parameters=2, directions=directions)
    if cls == "Transcritical":
        eps = "-" if report.epsilon < 0 else "+"
        nf = f"{eps}(x^2 - lambda^2) + alpha"
        if report.germ_name.startswith("ldgc"):
            directions = ("alpha_prime",)
        elif report.germ_name.startswith("sh"):
            directions = ("alpha",)
        else:
            directions = ("alpha",)
        return UnfoldingDescriptor(normal_form=nf, n_parameters=1, directions=directions)
    if cls == "LimitPoint":
        eps = "-" if report.epsilon < 0 else "+"
        # a limit point is its own universal unfolding
        return UnfoldingDescriptor(
            normal_form=f"{eps}x^2 + lambda", n_parameters=0, directions=()
        )
    raise NotUnfoldable(f"no unfolding template for class {cls}")
