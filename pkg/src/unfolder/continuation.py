"""Pseudo-arclength continuation of stationary branches.

Branches of g(x, lam) = 0 are traced with a secant predictor (tangent on
the first step) and a Newton corrector constrained to the hyperplane
orthogonal to the predictor direction, so folds are passed without
parameter switching.  Special points (folds and branch crossings) are
detected from sign changes of g_x along the polyline and refined with
the recognition module's Newton solver.

Stability is assigned from the scalar reduced dynamics xdot = g(x, lam):
a point is stable iff g_x < 0.  The original models' full dynamics
contain Hopf bifurcations that a scalar reduction cannot represent, so
stability here describes the reduced problem only; branch geometry is
exact either way.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DegenerateQuadratic,
    DomainError,
    NoConvergence,
    NotACrossing,
    StartNotOnBranch,
    StepUnderflow,
)
from .models import Germ
from .recognition import derivatives_at, locate_crossing

__all__ = [
    "StepControl",
    "Window",
    "BranchPoint",
    "SpecialPoint",
    "Branch",
    "trace_branch",
    "detect_special_points",
    "switch_branch",
    "full_diagram",
    "branches_to_csv",
]

CROSSING_TOL = 1e-6  # normalized |g_l| below this at a refined point => crossing
MAX_POINTS = 20000


@dataclass(frozen=True)
class StepControl:
    min_step: float = 1e-6
    max_step: float = 0.05
    initial: float = 0.01
    corrector_tol: float = 1e-10
    max_corrector_iters: int = 10
    grow_after: int = 2  # consecutive easy correctors before doubling the step


@dataclass(frozen=True)
class Window:
    """Rectangular tracing window (lam_min, lam_max, x_min, x_max)."""

    lam_min: float
    lam_max: float
    x_min: float
    x_max: float

    def __post_init__(self):
        if not (self.lam_min < self.lam_max and self.x_min < self.x_max):
            raise ValueError("window must be nonempty")

    def contains(self, x: float, lam: float) -> bool:
        return self.x_min <= x <= self.x_max and self.lam_min <= lam <= self.lam_max

    @property
    def scale(self) -> float:
        return max(self.lam_max - self.lam_min, self.x_max - self.x_min)


@dataclass(frozen=True)
class BranchPoint:
    lam: float
    x: float
    g_x: float
    stability: str  # 'stable' iff g_x < 0
    physical: bool | None = None  # SH only: shear energy f >= 0


@dataclass(frozen=True)
class SpecialPoint:
    index: int  # bracket starts at points[index]
    kind: str  # 'fold' or 'crossing'
    x: float
    lam: float


@dataclass
class Branch:
    points: list[BranchPoint] = field(default_factory=list)
    special_points: list[SpecialPoint] = field(default_factory=list)
    closed: bool = False


def _make_point(germ: Germ, x: float, lam: float) -> BranchPoint:
    d = derivatives_at(germ, x, lam)
    phys = None
    if germ.physicality is not None:
        # Negative slack slightly above the corrector tolerance so points
        # lying on a zero-shear branch are not flagged unphysical by the
        # residual left in the corrected position.
        f = germ.physicality(x, lam)
        phys = bool(f >= -1e-9 * (1.0 + abs(x) + abs(lam)))
    return BranchPoint(
        lam=lam,
        x=x,
        g_x=d["g_x"],
        stability="stable" if d["g_x"] < 0.0 else "unstable",
        physical=phys,
    )


def _correct(germ: Germ, y_pred: np.ndarray, tangent: np.ndarray, step: StepControl):
    """Newton-correct a predicted point onto the branch.

    Solves g(y) = 0 together with tangent . (y - y_pred) = 0.  Returns
    (y, iterations) or None on failure (divergence, domain exit,
    singular corrector matrix).
    """
    y = y_pred.copy()
    for it in range(step.max_corrector_iters):
        try:
            d = derivatives_at(germ, y[0], y[1])
        except DomainError:
            return None
        if abs(d["g"]) < step.corrector_tol:
            return y, it
        jac = np.array([[d["g_x"], d["g_l"]], [tangent[0], tangent[1]]])
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if abs(det) < 1e-14:
            return None
        rhs = np.array([d["g"], tangent @ (y - y_pred)])
        y = y - np.linalg.solve(jac, rhs)
    return None


def _clamp_to_boundary(
    germ: Germ, y_in: np.ndarray, y_out: np.ndarray, window: Window, step: StepControl
):
    """Branch point exactly on the window edge crossed by y_in -> y_out.

    Pins the coordinate that left the window to its bound and 1D-Newton
    solves the other coordinate, starting from the linear interpolant.
    Returns None when the pinned solve fails or drifts out of the window.
    """
    bounds = (
        (0, window.x_min),
        (0, window.x_max),
        (1, window.lam_min),
        (1, window.lam_max),
    )
    # earliest boundary crossing along the segment
    best = None
    for coord, bound in bounds:
        a, b = y_in[coord], y_out[coord]
        if (a - bound) * (b - bound) < 0.0:
            frac = (bound - a) / (b - a)
            if best is None or frac < best[0]:
                best = (frac, coord, bound)
    if best is None:
        return None
    frac, coord, bound = best
    y = y_in + frac * (y_out - y_in)
    y[coord] = bound
    free = 1 - coord
    for _ in range(step.max_corrector_iters):
        try:
            d = derivatives_at(germ, y[0], y[1])
        except DomainError:
            return None
        if abs(d["g"]) < step.corrector_tol:
            eps = 1e-9 * window.scale
            inside = (
                window.x_min - eps <= y[0] <= window.x_max + eps
                and window.lam_min - eps <= y[1] <= window.lam_max + eps
            )
            if not inside:
                return None
            y[0] = min(max(y[0], window.x_min), window.x_max)
            y[1] = min(max(y[1], window.lam_min), window.lam_max)
            return y
        slope = d["g_x"] if free == 0 else d["g_l"]
        if abs(slope) < 1e-14:
            return None
        y[free] -= d["g"] / slope
    return None


def _initial_tangent(germ: Germ, x: float, lam: float) -> np.ndarray:
    d = derivatives_at(germ, x, lam)
    t = np.array([-d["g_l"], d["g_x"]])  # (dx, dlam) annihilating the gradient
    nrm = np.linalg.norm(t)
    if nrm == 0.0:
        # singular point: no unique tangent; fall back to the lam direction
        t = np.array([0.0, 1.0])
        nrm = 1.0
    return t / nrm


def _trace_one_direction(
    germ: Germ,
    y0: np.ndarray,
    t0: np.ndarray,
    window: Window,
    step: StepControl,
) -> tuple[list[BranchPoint], bool]:
    """March from y0 along t0; returns (points beyond y0, closed_loop)."""
    points: list[BranchPoint] = []
    y = y0.copy()
    t = t0.copy()
    h = step.initial
    easy = 0
    arclength = 0.0
    while len(points) < MAX_POINTS:
        y_pred = y + h * t
        result = _correct(germ, y_pred, t, step)
        accepted = result is not None and np.linalg.norm(result[0] - y) <= 5.0 * h
        if not accepted:
            h *= 0.5
            if h < step.min_step:
                last = points[-1] if points else None
                raise StepUnderflow(
                    f"corrector failed at minimum step near (x, lam)=({y[0]:.6g}, {y[1]:.6g})",
                    last_point=last,
                )
            continue
        y_new, iters = result
        if not window.contains(y_new[0], y_new[1]):
            # close the gap to the window boundary so vertical-line
            # solution counts inside the window stay exact
            edge = _clamp_to_boundary(germ, y, y_new, window, step)
            if edge is not None and np.linalg.norm(edge - y) > 1e-12:
                points.append(_make_point(germ, edge[0], edge[1]))
            break
        ds = np.linalg.norm(y_new - y)
        if ds > 0:
            t = (y_new - y) / ds
        points.append(_make_point(germ, y_new[0], y_new[1]))
        arclength += ds
        y = y_new
        # loop closure: back to the start after a nontrivial excursion
        if arclength > 3.0 * step.max_step and np.linalg.norm(y - y0) < max(h, step.initial):
            return points, True
        if iters <= 3:
            easy += 1
            if easy >= step.grow_after:
                h = min(2.0 * h, step.max_step)
                easy = 0
        else:
            easy = 0
            h = max(h * 0.75, step.min_step)
    return points, False


def trace_branch(
    germ: Germ,
    start: tuple[float, float],
    window: Window,
    step: StepControl | None = None,
    tangent: np.ndarray | None = None,
) -> Branch:
    """Trace the branch through ``start`` in both directions.

    ``start`` must satisfy |g| < 1e-8 and lie inside the window.  An
    explicit ``tangent`` overrides the jet-computed one (used when
    starting from a crossing, where the gradient of g vanishes).
    """
    step = step or StepControl()
    x0, lam0 = start
    if not window.contains(x0, lam0):
        raise StartNotOnBranch(f"start ({x0}, {lam0}) outside window")
    try:
        g0 = germ.value(x0, lam0)
    except DomainError as exc:
        raise StartNotOnBranch(str(exc)) from exc
    if abs(g0) >= 1e-8:
        raise StartNotOnBranch(f"|g(start)| = {abs(g0):.3e} >= 1e-8")

    y0 = np.array([x0, lam0], dtype=float)
    t0 = np.asarray(tangent, dtype=float) if tangent is not None else _initial_tangent(germ, x0, lam0)
    t0 = t0 / np.linalg.norm(t0)

    forward, closed = _trace_one_direction(germ, y0, t0, window, step)
    if closed:
        backward: list[BranchPoint] = []
    else:
        backward, _ = _trace_one_direction(germ, y0, -t0, window, step)

    points = list(reversed(backward)) + [_make_point(germ, x0, lam0)] + forward
    return Branch(points=points, closed=closed)


def detect_special_points(germ: Germ, branch: Branch, cross_tol: float = CROSSING_TOL) -> Branch:
    """Locate folds and crossings from sign changes of g_x along the branch.

    Each bracketing pair is refined with locate_crossing; the refined
    point is a crossing when the normalized |g_l| is below cross_tol
    (exact for the product-structure models) and a fold otherwise.
    """
    if len(branch.points) < 2:
        raise ValueError("branch must contain at least 2 points")
    specials: list[SpecialPoint] = []
    pts = branch.points
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if a.g_x == 0.0 or a.g_x * b.g_x >= 0.0:
            continue
        guess = (0.5 * (a.x + b.x), 0.5 * (a.lam + b.lam))
        try:
            x0, lam0 = locate_crossing(germ, *guess)
        except (NoConvergence, DomainError):
            continue
        d = derivatives_at(germ, x0, lam0)
        scale = max(abs(v) for v in d.values()) or 1.0
        kind = "crossing" if abs(d["g_l"]) / scale <= cross_tol else "fold"
        if any(abs(s.x - x0) < 1e-9 and abs(s.lam - lam0) < 1e-9 for s in specials):
            continue
        specials.append(SpecialPoint(index=i, kind=kind, x=x0, lam=lam0))
    return replace_specials(branch, specials)


def replace_specials(branch: Branch, specials: list[SpecialPoint]) -> Branch:
    return Branch(points=branch.points, special_points=specials, closed=branch.closed)


def switch_branch(germ: Germ, crossing: tuple[float, float], tol: float = 1e-6):
    """Unit tangents of the two solution curves through a simple crossing.

    The directions (dx, dlam) are the two root lines of the quadratic
    form g_xx*dx^2 + 2*g_lx*dx*dlam + g_ll*dlam^2, whose discriminant is
    positive exactly when the transcritical determinant condition holds.
    """
    x0, lam0 = crossing
    d = derivatives_at(germ, x0, lam0)
    scale = max(abs(v) for v in d.values()) or 1.0
    n = {k: v / scale for k, v in d.items()}
    if abs(n["g"]) > tol or abs(n["g_x"]) > tol or abs(n["g_l"]) > tol:
        raise NotACrossing(f"({x0}, {lam0}) does not satisfy g = g_x = g_l = 0")
    A, B, C = d["g_xx"], d["g_lx"], d["g_ll"]
    if abs(n["g_xx"]) < tol and abs(n["g_lx"]) < tol:
        raise DegenerateQuadratic("second derivatives too small to define crossing tangents")
    disc = B * B - A * C
    if disc <= 0.0:
        raise NotACrossing("crossing tangent quadratic has no real root pair")
    root = np.sqrt(disc)
    # factor the conic through whichever end coefficient dominates
    if abs(A) >= abs(C):
        dirs = [np.array([-B + root, A]), np.array([-B - root, A])]
    else:
        dirs = [np.array([C, -B + root]), np.array([C, -B - root])]
    return tuple(v / np.linalg.norm(v) for v in dirs)


def _seed_points(germ: Germ, window: Window, n_seeds: int, n_scan: int = 400):
    """Deterministic seeds: bisection roots of g(., lam) on vertical lines."""
    seeds: list[tuple[float, float]] = []
    xs = np.linspace(window.x_min, window.x_max, n_scan)
    for k in range(n_seeds):
        lam = window.lam_min + (k + 0.5) / n_seeds * (window.lam_max - window.lam_min)
        vals = np.full(n_scan, np.nan)
        for i, x in enumerate(xs):
            try:
                vals[i] = germ.value(float(x), float(lam))
            except DomainError:
                pass
        for i in range(n_scan - 1):
            v0, v1 = vals[i], vals[i + 1]
            if not (np.isfinite(v0) and np.isfinite(v1)) or v0 * v1 > 0.0:
                continue
            root = brentq(lambda x: germ.value(float(x), float(lam)), xs[i], xs[i + 1], xtol=1e-13)
            seeds.append((float(root), float(lam)))
    return seeds


def _near_any_branch(x: float, lam: float, branches: list[Branch], dist: float) -> bool:
    for br in branches:
        for pt in br.points:
            if abs(pt.x - x) < dist and abs(pt.lam - lam) < dist:
                return True
    return False


def _is_duplicate_branch(candidate: Branch, branches: list[Branch], dist: float) -> bool:
    pts = candidate.points
    if not pts:
        return True
    probe = pts[:: max(1, len(pts) // 7)]
    return all(_near_any_branch(p.x, p.lam, branches, dist) for p in probe)


def full_diagram(
    germ: Germ,
    window: Window,
    n_seeds: int = 9,
    step: StepControl | None = None,
) -> list[Branch]:
    """Assemble the complete stationary diagram inside a window.

    Seeds solutions by bisection on vertical lines, traces every branch,
    annotates special points, and switches / retraces at every crossing.
    Deterministic: identical inputs give identical diagrams.
    """
    step = step or StepControl()
    branches: list[Branch] = []
    dedup_dist = step.max_step

    for x, lam in _seed_points(germ, window, n_seeds):
        if _near_any_branch(x, lam, branches, dedup_dist):
            continue
        try:
            br = trace_branch(germ, (x, lam), window, step)
            br = detect_special_points(germ, br)
        except (StepUnderflow, StartNotOnBranch, NoConvergence):
            continue
        branches.append(br)

    # branch switching at crossings
    handled: list[tuple[float, float]] = []
    queue = [s for br in branches for s in br.special_points if s.kind == "crossing"]
    while queue:
        s = queue.pop(0)
        if any(abs(s.x - hx) < 1e-7 and abs(s.lam - hl) < 1e-7 for hx, hl in handled):
            continue
        handled.append((s.x, s.lam))
        try:
            directions = switch_branch(germ, (s.x, s.lam))
        except (NotACrossing, DegenerateQuadratic):
            continue
        for direction in directions:
            probe = np.array([s.x, s.lam]) + 2.0 * step.max_step * direction
            if _near_any_branch(probe[0], probe[1], branches, dedup_dist):
                continue
            try:
                br = trace_branch(germ, (s.x, s.lam), window, step, tangent=direction)
                br = detect_special_points(germ, br)
            except (StepUnderflow, StartNotOnBranch, NoConvergence):
                continue
            if _is_duplicate_branch(br, branches, dedup_dist):
                continue
            branches.append(br)
            queue.extend(sp for sp in br.special_points if sp.kind == "crossing")
    return branches


def branches_to_csv(branches: list[Branch]) -> str:
    """Serialize a diagram to CSV.

    Header: branch_id,lambda,x,g_x,stability,physical,special.  The
    special column marks the branch point nearest each refined special
    point.
    """
    buf = io.StringIO()
    buf.write("branch_id,lambda,x,g_x,stability,physical,special\n")
    for bid, br in enumerate(branches):
        labels = [""] * len(br.points)
        for s in br.special_points:
            nearest = min(
                range(len(br.points)),
                key=lambda i: (br.points[i].x - s.x) ** 2 + (br.points[i].lam - s.lam) ** 2,
            )
            labels[nearest] = s.kind
        for pt, label in zip(br.points, labels):
            phys = "" if pt.physical is None else str(pt.physical).lower()
            buf.write(
                f"{bid},{pt.lam:.12g},{pt.x:.12g},{pt.g_x:.12g},{pt.stability},{phys},{label}\n"
            )
    return buf.getvalue()
