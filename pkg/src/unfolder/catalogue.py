"""Qualitative catalogues of perturbed bifurcation diagrams.

A diagram is reduced to a :class:`QualSignature` (component, fold and
crossing counts, hysteresis flag, stable-segment count); two parameter
settings are qualitatively equivalent when their signatures over a fixed
window are equal.  Sweeping the sign quadrants of the unfolding
parameters and counting distinct signatures reproduces the catalogue
sizes of the built-in models: 4 for the general SH family, 2 for the SH
p = -1 case, 2 for each local LDGC germ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .continuation import Branch, StepControl, Window, full_diagram
from .errors import NoConvergence, NotOnSolutionSet, SingularJacobian, UnfolderError
from .models import (
    Germ,
    LdgcParams,
    ShParams,
    ldgc_germ_B,
    ldgc_germ_C,
    ldgc_params_from,
    sh_germ,
    sh_params_from,
)
from .recognition import classify_point, locate_crossing

__all__ = [
    "QualSignature",
    "GermFamily",
    "FAMILIES",
    "CatalogueEntry",
    "signature_of",
    "enumerate_catalogue",
    "distinct_signatures",
    "persistence_check",
]


@dataclass(frozen=True)
class QualSignature:
    """Qualitative fingerprint of a bifurcation diagram over a window.

    ``physical_folds`` counts the folds sitting on a physical branch
    segment and is None for models without a physicality diagnostic.
    Mirror-image perturbed diagrams (unfolding parameters with all signs
    flipped) have identical counts in every other field; the physical /
    unphysical assignment of the limit points is what tells them apart,
    which is also the distinction the physicality condition f >= 0 draws
    between the perturbation sign choices.
    """

    n_branches: int
    n_folds: int
    n_crossings: int
    hysteresis: bool
    stable_components: int
    physical_folds: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "n_branches": self.n_branches,
            "n_folds": self.n_folds,
            "n_crossings": self.n_crossings,
            "hysteresis": self.hysteresis,
            "stable_components": self.stable_components,
            "physical_folds": self.physical_folds,
        }


def _count_lambda_crossings(branch: Branch, lam: float) -> int:
    """How many times the branch polyline passes the vertical line at lam."""
    count = 0
    pts = branch.points
    for i in range(len(pts) - 1):
        a, b = pts[i].lam, pts[i + 1].lam
        if (a - lam) * (b - lam) < 0.0 or b == lam:
            count += 1
    return count


def _has_hysteresis(branch: Branch) -> bool:
    """True iff two folds bound a lam interval on which the branch is multivalued."""
    folds = [s for s in branch.special_points if s.kind == "fold"]
    for i in range(len(folds)):
        for j in range(i + 1, len(folds)):
            lo, hi = sorted((folds[i].lam, folds[j].lam))
            if hi - lo < 1e-12:
                continue
            mid = 0.5 * (lo + hi)
            if _count_lambda_crossings(branch, mid) >= 3:
                return True
    return False


def _dedup_specials(diagram: list[Branch], kind: str, tol: float = 1e-5):
    """Distinct special points of one kind across all branches.

    Returns a list of (x, lam, physical) with the physicality flag taken
    from the nearest stored branch point (None when unannotated).
    """
    found: list[tuple[float, float, Optional[bool]]] = []
    for br in diagram:
        for s in br.special_points:
            if s.kind != kind:
                continue
            if any(abs(s.x - x) < tol and abs(s.lam - lam) < tol for x, lam, _ in found):
                continue
            nearest = min(
                br.points, key=lambda p: (p.x - s.x) ** 2 + (p.lam - s.lam) ** 2
            )
            found.append((s.x, s.lam, nearest.physical))
    return found


def signature_of(diagram: list[Branch]) -> QualSignature:
    """Compute the qualitative signature of a traced diagram."""
    folds = _dedup_specials(diagram, "fold")
    n_folds = len(folds)
    n_crossings = len(_dedup_specials(diagram, "crossing"))
    annotated = any(pt.physical is not None for br in diagram for pt in br.points)
    physical_folds = sum(1 for _, _, phys in folds if phys) if annotated else None
    hysteresis = any(_has_hysteresis(br) for br in diagram)
    stable_components = 0
    for br in diagram:
        prev = None
        for pt in br.points:
            if pt.stability == "stable" and prev != "stable":
                stable_components += 1
            prev = pt.stability
    return QualSignature(
        n_branches=len(diagram),
        n_folds=n_folds,
        n_crossings=n_crossings,
        hysteresis=hysteresis,
        stable_components=stable_components,
        physical_folds=physical_folds,
    )


@dataclass(frozen=True)
class GermFamily:
    """A parameterized germ family with its default catalogue sweep."""

    name: str
    make: Callable[[dict], Germ]
    window: Window
    quadrants: tuple[dict, ...]
    perturbation_key: str


def _make_sh(setting: dict) -> Germ:
    base = ShParams(p=-1.5)
    return sh_germ(sh_params_from(dict(setting), base))


def _make_sh_case_b(setting: dict) -> Germ:
    base = ShParams(p=-1.0, d_a=1.0)
    return sh_germ(sh_params_from(dict(setting), base))


def _make_ldgc_b(setting: dict) -> Germ:
    return ldgc_germ_B(ldgc_params_from(dict(setting)))


def _make_ldgc_c(setting: dict) -> Germ:
    return ldgc_germ_C(ldgc_params_from(dict(setting)))


# Windows sized to contain all special points of the built-in models at
# their default parameter values (state lower bounds kept strictly
# positive: the germs contain negative powers of the state).
SH_WINDOW = Window(lam_min=0.02, lam_max=3.0, x_min=0.05, x_max=6.0)
LDGC_WINDOW = Window(lam_min=0.005, lam_max=0.4, x_min=0.05, x_max=3.0)

FAMILIES: dict[str, GermFamily] = {
    "sh": GermFamily(
        name="sh",
        make=_make_sh,
        window=SH_WINDOW,
        quadrants=(
            {"alpha": 0.01, "d_a": 1.0},
            {"alpha": 0.01, "d_a": 10.0},
            {"alpha": -0.01, "d_a": 1.0},
            {"alpha": -0.01, "d_a": 10.0},
        ),
        perturbation_key="alpha",
    ),
    "sh_caseB": GermFamily(
        name="sh_caseB",
        make=_make_sh_case_b,
        window=SH_WINDOW,
        quadrants=({"alpha": 0.01}, {"alpha": -0.01}),
        perturbation_key="alpha",
    ),
    "ldgc_b": GermFamily(
        name="ldgc_b",
        make=_make_ldgc_b,
        window=LDGC_WINDOW,
        quadrants=({"alpha_prime": 0.01}, {"alpha_prime": -0.01}),
        perturbation_key="alpha_prime",
    ),
    "ldgc_c": GermFamily(
        name="ldgc_c",
        make=_make_ldgc_c,
        window=LDGC_WINDOW,
        quadrants=({"alpha_prime": 0.01}, {"alpha_prime": -0.01}),
        perturbation_key="alpha_prime",
    ),
}


@dataclass
class CatalogueEntry:
    setting: dict
    signature: Optional[QualSignature]
    diagram: list[Branch] = field(default_factory=list)
    error: Optional[str] = None

    def to_dict(self, diagram_csv_path: Optional[str] = None) -> dict:
        return {
            "setting": self.setting,
            "signature": self.signature.to_dict() if self.signature else None,
            "diagram_csv_path": diagram_csv_path,
            **({"error": self.error} if self.error else {}),
        }


def enumerate_catalogue(
    family: GermFamily,
    param_samples: Optional[list[dict]] = None,
    window: Optional[Window] = None,
    step: StepControl | None = None,
    n_seeds: int = 9,
) -> list[CatalogueEntry]:
    """Trace a diagram per setting and pair it with its signature.

    Per-setting failures are recorded in the entry without aborting the
    sweep; result order follows the input order.
    """
    window = window or family.window
    settings = param_samples if param_samples is not None else list(family.quadrants)
    entries: list[CatalogueEntry] = []
    for setting in settings:
        try:
            germ = family.make(setting)
            diagram = full_diagram(germ, window, n_seeds=n_seeds, step=step)
            entries.append(
                CatalogueEntry(setting=dict(setting), signature=signature_of(diagram), diagram=diagram)
            )
        except UnfolderError as exc:
            entries.append(CatalogueEntry(setting=dict(setting), signature=None, error=str(exc)))
    return entries


def distinct_signatures(entries: list[CatalogueEntry]) -> list[QualSignature]:
    """The distinct signatures among successful entries, in first-seen order."""
    seen: list[QualSignature] = []
    for e in entries:
        if e.signature is not None and e.signature not in seen:
            seen.append(e.signature)
    return seen


def catalogue_to_json(entries: list[CatalogueEntry], csv_paths: Optional[list[str]] = None) -> str:
    paths = csv_paths or [None] * len(entries)
    return json.dumps([e.to_dict(p) for e, p in zip(entries, paths)], indent=2)


def persistence_check(
    family: GermFamily,
    singularity_class: str,
    perturbation_size: float,
    region: Optional[Window] = None,
    setting: Optional[dict] = None,
    tol: float = 1e-6,
    grid: tuple[int, int] = (10, 8),
) -> bool:
    """Does a point of the given class survive the perturbation?

    Applies the family's unfolding parameter at the given size, then
    Newton-polishes a deterministic grid of guesses and classifies every
    converged singular point in the region.  Returns True iff one lands
    in the requested class at the classification tolerance.
    """
    if perturbation_size <= 0:
        raise ValueError("perturbation_size must be positive")
    region = region or family.window
    # an explicit setting may override the perturbation (e.g. to flip its sign)
    full_setting = {family.perturbation_key: perturbation_size}
    full_setting.update(setting or {})
    germ = family.make(full_setting)

    found: list[tuple[float, float]] = []
    nx, nl = grid
    for i in range(nx):
        x_guess = region.x_min + (i + 0.5) / nx * (region.x_max - region.x_min)
        for j in range(nl):
            lam_guess = region.lam_min + (j + 0.5) / nl * (region.lam_max - region.lam_min)
            try:
                x0, lam0 = locate_crossing(germ, x_guess, lam_guess)
            except UnfolderError:
                continue
            if not region.contains(x0, lam0):
                continue
            if any(abs(x0 - x) < 1e-8 and abs(lam0 - lam) < 1e-8 for x, lam in found):
                continue
            found.append((x0, lam0))

    for x0, lam0 in found:
        try:
            report = classify_point(germ, x0, lam0, tol=tol)
        except (NotOnSolutionSet, NoConvergence, SingularJacobian):
            continue
        if report.classification == singularity_class:
            return True
    return False
