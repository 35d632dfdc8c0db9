"""Branch switching at a transcritical crossing.

At a crossing two solution curves intersect transversally.  The quadratic
terms of the jet give the two tangent directions; seeding the tracer with
each direction recovers both curves.
"""

from unfolder import (
    LdgcParams,
    Window,
    ldgc_germ_B,
    locate_crossing,
    switch_branch,
    trace_branch,
)

params = LdgcParams()
germ = ldgc_germ_B(params)
window = Window(lam_min=0.005, lam_max=0.4, x_min=0.05, x_max=3.0)

# The crossing of the two local solution curves at point B.
p0, phi0 = locate_crossing(germ, 1.0, 0.03)
print(f"crossing at (p, phi) = ({p0:.10g}, {phi0:.10g})")

directions = switch_branch(germ, (p0, phi0))
print("tangent directions (dp, dphi):")
for d in directions:
    print(f"  ({d[0]:+.6g}, {d[1]:+.6g})")

for k, tangent in enumerate(directions):
    branch = trace_branch(germ, (p0, phi0), window, tangent=tangent)
    ps = [pt.x for pt in branch.points]
    phis = [pt.lam for pt in branch.points]
    print(
        f"branch {k}: {len(branch.points)} points, "
        f"p in [{min(ps):.3g}, {max(ps):.3g}], "
        f"phi in [{min(phis):.3g}, {max(phis):.3g}]"
    )
