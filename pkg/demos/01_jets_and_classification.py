"""Jets and point classification.

Builds the anomalous-transport model germ, evaluates its degree-3 jet at a
few points on the solution set, and classifies them: regular points, the
branch crossing, and the degenerate organizing center.
"""

from unfolder import (
    ShParams,
    classify_point,
    locate_crossing,
    locate_pitchfork,
    partial,
    sh_germ,
    unfolding_template,
)

params = ShParams()  # a=0.05, b=0.95, p=-3/2, d_a=1, alpha=0
germ = sh_germ(params)

print("== A jet at a regular point ==")
jet = germ.jet(2.0, 4.0 / params.d_a)  # on the zero-shear branch q = u^2/d_a
print(f"g(2, 4)      = {jet.value:.6g}")
print(f"g_u          = {partial(jet, 1, 0):.6g}")
print(f"g_q          = {partial(jet, 0, 1):.6g}")
print(f"g_uuu        = {partial(jet, 3, 0):.6g}")
report = classify_point(germ, 2.0, 4.0 / params.d_a)
print(f"classified as {report.classification} (codimension {report.codimension})")

print()
print("== The branch crossing ==")
u, q = locate_crossing(germ, 1.2, 0.8)
print(f"crossing refined to (u, q) = ({u:.12g}, {q:.12g})")
report = classify_point(germ, u, q)
print(f"classified as {report.classification}, residuals {report.residuals}")

print()
print("== The organizing center ==")
# Solving g = g_u = g_uu = 0 in (u, q, d_a) finds the critical diffusivity
# ratio at which the crossing degenerates into a pitchfork.
u0, q0, d_a0, res_gl = locate_pitchfork(params)
print(f"pitchfork at (u, q) = ({u0:.10g}, {q0:.10g}) for d_a = {d_a0:.10g}")
print(f"g_q residual there: {res_gl:.2e}  (vanishes too: overdetermined)")
report = classify_point(sh_germ(ShParams(d_a=d_a0)), u0, q0)
print(
    f"classified as {report.classification}: "
    f"normal form sign eps={report.epsilon}, delta={report.delta}"
)
template = unfolding_template(report)
print(f"universal unfolding: {template.normal_form}")
print(f"unfolding directions: {template.directions}")
