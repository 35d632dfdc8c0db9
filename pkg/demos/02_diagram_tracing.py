"""Branch tracing and diagram export.

Traces the full bifurcation diagram of the perturbed anomalous-transport
model (alpha = 0.01, the hysteretic quadrant), prints the special points,
and writes CSV + SVG renderings next to this script.
"""

from pathlib import Path

from unfolder import (
    ShParams,
    Window,
    branches_to_csv,
    full_diagram,
    render_diagram,
    sh_germ,
    signature_of,
)

window = Window(lam_min=0.02, lam_max=3.0, x_min=0.05, x_max=6.0)
germ = sh_germ(ShParams(alpha=0.01))

diagram = full_diagram(germ, window)
print(f"traced {len(diagram)} branches:")
for k, branch in enumerate(diagram):
    n_stable = sum(pt.stability == "stable" for pt in branch.points)
    print(
        f"  branch {k}: {len(branch.points)} points, "
        f"{n_stable} stable, {len(branch.special_points)} special"
    )
    for sp in branch.special_points:
        print(f"    {sp.kind} at (u, q) = ({sp.x:.6g}, {sp.lam:.6g})")

sig = signature_of(diagram)
print(f"\nqualitative signature: {sig}")
print("hysteresis loop present:", sig.hysteresis)

out = Path(__file__).resolve().parent
(out / "hysteretic_diagram.csv").write_text(branches_to_csv(diagram))
(out / "hysteretic_diagram.svg").write_text(
    render_diagram(diagram, window, state_name="u", control_name="q")
)
print(f"\nwrote {out / 'hysteretic_diagram.csv'}")
print(f"wrote {out / 'hysteretic_diagram.svg'}")
