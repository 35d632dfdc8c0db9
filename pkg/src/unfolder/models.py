"""Built-in bifurcation germs: the SH and LDGC plasma transition models.

Both models reduce, at steady state, to a scalar bifurcation problem
g(x, lam) = 0 with a product structure: two solution curves whose
intersection is the degenerate singular point of interest.  An additive
unfolding parameter (``alpha`` for SH, ``alpha_prime`` for LDGC) breaks
the product structure and perturbs the diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional

from .errors import DomainError
from .jet import Jet, jet_pow, seed_variables

__all__ = [
    "ShParams",
    "LdgcParams",
    "Germ",
    "sh_germ",
    "sh_shear_energy",
    "ldgc_germ_B",
    "ldgc_germ_C",
    "load_params_file",
    "PARAM_KEYS",
]

# Keys accepted in plain-text key=value parameter files.
PARAM_KEYS = (
    "a",
    "b",
    "p",
    "d_a",
    "c",
    "alpha",
    "d_tilde",
    "d_tilde_m",
    "mu",
    "gamma",
    "alpha_prime",
)


@dataclass(frozen=True)
class ShParams:
    """Parameters of the SH bifurcation equation.

    a, b: positive viscosity coefficients; p <= -1 is the viscosity
    exponent; d_a > 0 the reciprocal anomalous diffusivity; c > 0 enters
    only the shear-energy diagnostic; alpha is the additive
    symmetry-breaking unfolding parameter (0 = unperturbed model).
    """

    a: float = 0.05
    b: float = 0.95
    p: float = -1.5
    d_a: float = 1.0
    c: float = 5.0
    alpha: float = 0.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.d_a > 0 and self.c > 0):
            raise ValueError("ShParams requires a, b, d_a, c all positive")
        if not self.p <= -1:
            raise ValueError(f"ShParams requires p <= -1, got p={self.p}")


@dataclass(frozen=True)
class LdgcParams:
    """Parameters of the local LDGC germs at points B and C."""

    d_tilde: float = 0.1
    d_tilde_m: float = 0.05
    mu: float = 0.25
    gamma: float = 5.0
    alpha_prime: float = 0.0

    def __post_init__(self):
        if not (self.d_tilde > 0 and self.d_tilde_m > 0 and self.mu > 0 and self.gamma > 0):
            raise ValueError("LdgcParams requires d_tilde, d_tilde_m, mu, gamma positive")
        if self.d_tilde == self.d_tilde_m:
            raise ValueError("LdgcParams requires d_tilde != d_tilde_m")


@dataclass(frozen=True)
class Germ:
    """An evaluatable scalar bifurcation function with a validity domain.

    ``jet_at(x, lam)`` must be deterministic and is only called after the
    domain predicate has passed; :meth:`jet` enforces the domain check and
    is the public entry point.
    """

    name: str
    state_name: str
    control_name: str
    jet_at: Callable[[float, float], Jet]
    in_domain: Callable[[float, float], bool]
    physicality: Optional[Callable[[float, float], float]] = field(default=None)

    def jet(self, x: float, lam: float) -> Jet:
        if not self.in_domain(x, lam):
            raise DomainError(
                f"{self.name}: ({self.state_name}, {self.control_name})=({x}, {lam}) "
                "outside validity domain"
            )
        j = self.jet_at(x, lam)
        if not j.is_finite():
            raise DomainError(f"{self.name}: non-finite jet at ({x}, {lam})")
        return j

    def value(self, x: float, lam: float) -> float:
        return self.jet(x, lam).value


def sh_germ(params: ShParams) -> Germ:
    """SH bifurcation germ G(u, q) = (q*d_a/u^2 - 1)*(-q + u*m(u)) + alpha.

    The anomalous viscosity is m(u) = u**p * (b + a*u**(1-p)), so
    u*m(u) = b*u**(1+p) + a*u**2.  State variable u (pressure-gradient
    potential energy), control q (power input); valid for u > 0, q > 0.
    """
    a, b, p, d_a, alpha = params.a, params.b, params.p, params.d_a, params.alpha

    def jet_at(u: float, q: float) -> Jet:
        U, Q = seed_variables(u, q)
        u_m = b * jet_pow(U, 1.0 + p) + a * (U * U)
        diffusive = d_a * (Q * jet_pow(U, -2.0)) - 1.0
        return diffusive * (u_m - Q) + alpha

    return Germ(
        name="sh",
        state_name="u",
        control_name="q",
        jet_at=jet_at,
        in_domain=lambda u, q: u > 0.0 and q > 0.0,
        physicality=lambda u, q: sh_shear_energy(u, q, params),
    )


def sh_shear_energy(u: float, q: float, params: ShParams) -> float:
    """Steady-state shear flow kinetic energy f = (u^2 - d_a*q) / (c*u).

    Branches with f < 0 are unphysical; f >= 0 labels a physical branch.
    """
    if u <= 0.0:
        raise DomainError(f"shear energy requires u > 0, got u={u}")
    return (u * u - params.d_a * q) / (params.c * u)


def ldgc_germ_B(params: LdgcParams) -> Germ:
    """LDGC local germ at point B:

    g_B(p, phi) = gamma*(phi - d~*mu*p)*(p - 1) / (p*(d~ - d~_m)) + alpha'.

    State p (pressure gradient), control phi (particle flux); valid p > 0.
    """
    d, dm, mu, gamma, ap = (
        params.d_tilde,
        params.d_tilde_m,
        params.mu,
        params.gamma,
        params.alpha_prime,
    )

    def jet_at(p: float, phi: float) -> Jet:
        P, PHI = seed_variables(p, phi)
        return (gamma / (d - dm)) * (PHI - d * mu * P) * (P - 1.0) * jet_pow(P, -1.0) + ap

    return Germ(
        name="ldgc_b",
        state_name="p",
        control_name="phi",
        jet_at=jet_at,
        in_domain=lambda p, phi: p > 0.0,
    )


def ldgc_germ_C(params: LdgcParams) -> Germ:
    """LDGC local germ at point C:

    g_C(p, phi) = gamma*(p^2*d~ - phi)*(p - 1) / (p*d~_m) + alpha'.
    """
    d, dm, gamma, ap = params.d_tilde, params.d_tilde_m, params.gamma, params.alpha_prime

    def jet_at(p: float, phi: float) -> Jet:
        P, PHI = seed_variables(p, phi)
        return (gamma / dm) * (d * (P * P) - PHI) * (P - 1.0) * jet_pow(P, -1.0) + ap

    return Germ(
        name="ldgc_c",
        state_name="p",
        control_name="phi",
        jet_at=jet_at,
        in_domain=lambda p, phi: p > 0.0,
    )


def load_params_file(path) -> dict[str, float]:
    """Read a plain-text key=value parameter file.

    One assignment per line; '#' starts a comment; blank lines ignored.
    Keys outside :data:`PARAM_KEYS` are rejected.
    """
    values: dict[str, float] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in PARAM_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown parameter key {key!r}")
        values[key] = parse_number(val.strip())
    return values


def parse_number(text: str) -> float:
    """Parse a float, also accepting simple fractions like '-3/2'."""
    try:
        return float(text)
    except ValueError:
        num, sep, den = text.partition("/")
        if sep:
            return float(num) / float(den)
        raise


def sh_params_from(overrides: dict[str, float], base: ShParams = ShParams()) -> ShParams:
    """Apply key=value overrides to an ShParams record, rejecting unknown keys."""
    fields = {"a", "b", "p", "d_a", "c", "alpha"}
    bad = set(overrides) - fields
    if bad:
        raise ValueError(f"unknown SH parameter keys: {sorted(bad)}")
    return replace(base, **overrides)


def ldgc_params_from(overrides: dict[str, float], base: LdgcParams = LdgcParams()) -> LdgcParams:
    """Apply key=value overrides to an LdgcParams record, rejecting unknown keys."""
    fields = {"d_tilde", "d_tilde_m", "mu", "gamma", "alpha_prime"}
    bad = set(overrides) - fields
    if bad:
        raise ValueError(f"unknown LDGC parameter keys: {sorted(bad)}")
    return replace(base, **overrides)
