"""Acceptance suite: eight end-to-end criteria, one pass/fail line each.

Each test prints `criterion N (<name>): PASS|FAIL` on the real stdout
(bypassing capture) so the verdicts are visible in any pytest run.
"""

import math
import time

import numpy as np
import pytest

from unfolder.catalogue import (
    FAMILIES,
    distinct_signatures,
    enumerate_catalogue,
    persistence_check,
    signature_of,
)
from unfolder.continuation import full_diagram
from unfolder.jet import partial, seed_variables
from unfolder.models import LdgcParams, ShParams, sh_germ, sh_shear_energy
from unfolder.recognition import (
    classify_point,
    derivatives_at,
    locate_crossing,
    locate_pitchfork,
)

from conftest import (
    fd_partial_mp,
    mp_model_value,
    polyline_crossing_count,
    sweep_root_count,
)


def verdict(capsys, number, name, ok, detail=""):
    with capsys.disabled():
        tail = f"  [{detail}]" if detail else ""
        print(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"criterion {number} ({name}) failed: {detail}"


def test_criterion_1_pitchfork_critical_parameter(capsys):
    t0 = time.perf_counter()
    detail = ""
    try:
        _, _, d_a0, _ = locate_pitchfork(ShParams())
        ok = abs(d_a0 - 4.0) < 1e-8
        rng = np.random.default_rng(42)
        worst = 0.0
        for _ in range(20):
            a = rng.uniform(0.02, 0.3)
            p = rng.uniform(-3.0, -1.05)
            _, _, got, _ = locate_pitchfork(ShParams(a=a, p=p))
            worst = max(worst, abs(got - (1 + p) / (a * (-1 + p))))
        elapsed = time.perf_counter() - t0
        ok = ok and worst < 1e-8 and elapsed < 1.0
        detail = f"d_a0={d_a0!r}, worst dev {worst:.2e}, {elapsed:.2f}s"
    except Exception as exc:  # pragma: no cover - failure reporting
        ok, detail = False, repr(exc)
    verdict(capsys, 1, "pitchfork critical parameter", ok, detail)


def test_criterion_2_recognition_derivative_identities(capsys):
    detail = ""
    try:
        worst_general = 0.0
        for a in (0.03, 0.05, 0.1, 0.2):
            for p in (-1.25, -1.5, -2.0, -2.75):
                for d_a in (0.8, 1.0, 2.0):
                    prm = ShParams(a=a, p=p, d_a=d_a)
                    g = sh_germ(prm)
                    u0 = (prm.b * d_a / (1 - a * d_a)) ** (1 / (1 - p))
                    u, q = locate_crossing(g, u0, u0 * u0 / d_a)
                    d = derivatives_at(g, u, q)
                    want = 4 * a * (-1 + p) - 4 * (1 + p) / d_a
                    worst_general = max(worst_general, abs(d["g_xx"] - want))
        rng = np.random.default_rng(7)
        worst_gxx = worst_det = 0.0
        n = 0
        while n < 20:
            a = rng.uniform(0.02, 0.2)
            b = rng.uniform(0.6, 1.6)
            d_a = rng.uniform(0.5, 2.5)
            if a * d_a > 0.8:  # keep the crossing well inside the domain
                continue
            g = sh_germ(ShParams(a=a, b=b, p=-1.0, d_a=d_a))
            u0 = math.sqrt(b * d_a / (1 - a * d_a))
            u, q = locate_crossing(g, u0, u0 * u0 / d_a)
            d = derivatives_at(g, u, q)
            worst_gxx = max(worst_gxx, abs(d["g_xx"] + 8 * a))
            det = d["g_xx"] * d["g_ll"] - d["g_lx"] ** 2
            worst_det = max(worst_det, abs(det + 4 * (a * d_a - 1) ** 2 / u0**2))
            n += 1
        ok = worst_general < 1e-9 and worst_gxx < 1e-9 and worst_det < 1e-9
        detail = (
            f"general-p dev {worst_general:.1e}, "
            f"g_xx dev {worst_gxx:.1e}, det dev {worst_det:.1e}"
        )
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 2, "recognition derivative identities", ok, detail)


def test_criterion_3_normal_form_signs(capsys):
    detail = ""
    try:
        u0, q0, d_a0, _ = locate_pitchfork(ShParams())
        pf = classify_point(sh_germ(ShParams(d_a=d_a0)), u0, q0)
        g = sh_germ(ShParams(p=-1.0))
        tc = classify_point(g, *locate_crossing(g, 1.0, 1.0))
        ok = (
            pf.classification == "Pitchfork"
            and pf.epsilon == -1
            and pf.delta == +1
            and tc.classification == "Transcritical"
            and tc.epsilon == -1
        )
        detail = (
            f"pitchfork (eps, delta)=({pf.epsilon}, {pf.delta}); "
            f"transcritical eps={tc.epsilon}"
        )
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 3, "normal-form signs", ok, detail)


def test_criterion_4_catalogue_counts(capsys):
    detail = ""
    try:
        t0 = time.perf_counter()
        counts = {}
        for name in ("sh", "sh_caseB", "ldgc_b", "ldgc_c"):
            entries = enumerate_catalogue(FAMILIES[name])
            assert all(e.error is None for e in entries), name
            counts[name] = len(distinct_signatures(entries))
        elapsed = time.perf_counter() - t0
        want = {"sh": 4, "sh_caseB": 2, "ldgc_b": 2, "ldgc_c": 2}
        ok = counts == want and elapsed < 30.0
        detail = f"{counts}, {elapsed:.1f}s"
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 4, "catalogue counts", ok, detail)


def test_criterion_5_persistence_suite(capsys):
    detail = ""
    try:
        fam = FAMILIES["sh"]
        pitchfork_gone = not persistence_check(
            fam, "Pitchfork", 0.01, tol=1e-6
        ) and not persistence_check(
            fam, "Pitchfork", 0.01, setting={"alpha": -0.01}, tol=1e-6
        )
        # Both folds of the hysteretic quadrant persist and refine sharply.
        g = sh_germ(ShParams(alpha=0.01))
        diagram = full_diagram(g, fam.window)
        folds = [
            (s.x, s.lam)
            for br in diagram
            for s in br.special_points
            if s.kind == "fold"
        ]
        fold_ok = len(folds) >= 2
        for x, lam in folds:
            xr, lr = locate_crossing(g, x, lam)
            d = derivatives_at(g, xr, lr)
            fold_ok = fold_ok and abs(d["g"]) < 1e-10 and abs(d["g_x"]) < 1e-10
            fold_ok = fold_ok and abs(d["g_l"]) > 1e-3
        ok = pitchfork_gone and fold_ok
        detail = f"pitchfork absent: {pitchfork_gone}, {len(folds)} folds refined"
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 5, "persistence suite", ok, detail)


def test_criterion_6_hysteresis_property(capsys):
    detail = ""
    try:
        fam = FAMILIES["sh"]
        g = fam.make({"alpha": 0.01, "d_a": 1.0})
        diagram = full_diagram(g, fam.window)
        sig = signature_of(diagram)
        # Fold-overlap interval: between the two hysteresis fold lambdas
        # the equation has >= 3 solutions on a vertical line.
        fold_lams = sorted(
            s.lam for br in diagram for s in br.special_points if s.kind == "fold"
        )
        overlap_ok = False
        for i in range(len(fold_lams) - 1):
            mid = 0.5 * (fold_lams[i] + fold_lams[i + 1])
            if (
                fold_lams[i + 1] - fold_lams[i] > 1e-6
                and sweep_root_count(g, fam.window, mid) >= 3
            ):
                overlap_ok = True
        case_b = FAMILIES["sh_caseB"]
        case_b_flags = [
            signature_of(full_diagram(case_b.make(s), case_b.window)).hysteresis
            for s in ({"alpha": 0.01}, {"alpha": -0.01})
        ]
        ok = sig.hysteresis is True and overlap_ok and not any(case_b_flags)
        detail = (
            f"hysteresis={sig.hysteresis}, overlap interval nonempty: {overlap_ok}, "
            f"case-B flags {case_b_flags}"
        )
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 6, "hysteresis property", ok, detail)


DEFAULT_SETTINGS = [
    ("sh", {"alpha": 0.0, "d_a": 1.0}),
    ("sh_caseB", {"alpha": 0.0}),
    ("ldgc_b", {}),
    ("ldgc_c", {}),
]

SAMPLE_BOXES = {
    "sh": (0.5, 3.0, 0.3, 2.0),  # x_lo, x_hi, lam_lo, lam_hi
    "sh_caseB": (0.5, 3.0, 0.3, 2.0),
    "ldgc_b": (0.5, 2.5, 0.05, 0.35),
    "ldgc_c": (0.5, 2.5, 0.05, 0.35),
}


def test_criterion_7_oracle_equivalence(capsys):
    detail = ""
    try:
        rng = np.random.default_rng(42)
        mismatches = 0
        for name, setting in DEFAULT_SETTINGS:
            fam = FAMILIES[name]
            g = fam.make(setting)
            w = fam.window
            diagram = full_diagram(g, w)
            special_lams = [s.lam for br in diagram for s in br.special_points]
            margin = 0.02 * (w.lam_max - w.lam_min)
            tested = 0
            while tested < 50:
                lam = float(rng.uniform(w.lam_min + margin, w.lam_max - margin))
                # Exclude lines tangent to the diagram at special points,
                # where root counting by sign change is ill-posed.
                if any(abs(lam - s) < 0.5 * margin for s in special_lams):
                    continue
                tested += 1
                if polyline_crossing_count(diagram, lam) != sweep_root_count(g, w, lam):
                    mismatches += 1
        # Jet partials vs finite differences at h=1e-4 on 200 random
        # domain points.  The oracle reimplements the model formulas and
        # runs the stencils in 50-digit arithmetic, so the comparison is
        # not limited by double-precision roundoff under h^3.
        worst = 0.0
        per_model = 50
        for name, setting in DEFAULT_SETTINGS:
            fam = FAMILIES[name]
            g = fam.make(setting)
            oracle = mp_model_value(name, setting)
            x_lo, x_hi, l_lo, l_hi = SAMPLE_BOXES[name]
            for _ in range(per_model):
                x0 = float(rng.uniform(x_lo, x_hi))
                l0 = float(rng.uniform(l_lo, l_hi))
                jet = g.jet(x0, l0)
                scale = max(1.0, abs(g.value(x0, l0)))
                for i in range(4):
                    for j in range(4 - i):
                        want = fd_partial_mp(oracle, x0, l0, i, j)
                        tol = 1e-3 if i + j == 3 else 1e-5
                        err = abs(partial(jet, i, j) - want) / max(abs(want), scale)
                        worst = max(worst, err / tol)
        ok = mismatches == 0 and worst < 1.0
        detail = (
            f"0/200 vertical-line mismatches: {mismatches == 0}, "
            f"worst FD error at {worst:.2f} of tolerance"
        )
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 7, "oracle equivalence", ok, detail)


def test_criterion_8_physicality_labeling(capsys):
    detail = ""
    try:
        prm = ShParams()
        fam = FAMILIES["sh"]
        g = fam.make({"alpha": 0.0, "d_a": 1.0})
        diagram = full_diagram(g, fam.window)
        # Identify the branch lying on q = u^2/d_a: zero shear everywhere.
        parabola = [
            br
            for br in diagram
            if all(abs(pt.x**2 - prm.d_a * pt.lam) < 1e-6 for pt in br.points)
        ]
        zero_shear = bool(parabola) and all(
            abs(sh_shear_energy(pt.x, pt.lam, prm)) < 1e-8 and pt.physical
            for br in parabola
            for pt in br.points
        )
        # Every sampled diagram point with u^2 < d_a q must be flagged.
        flagged = labeled = 0
        for br in diagram:
            for pt in br.points:
                if pt.x**2 < prm.d_a * pt.lam - 1e-6:
                    labeled += 1
                    flagged += not pt.physical
        ok = zero_shear and labeled > 0 and flagged == labeled
        detail = (
            f"zero-shear branch found: {bool(parabola)}, "
            f"{flagged}/{labeled} unphysical samples flagged"
        )
    except Exception as exc:
        ok, detail = False, repr(exc)
    verdict(capsys, 8, "physicality labeling", ok, detail)
