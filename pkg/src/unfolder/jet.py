"""Truncated bivariate Taylor (jet) arithmetic to total degree 3.

A :class:`Jet` stores the coefficients ``c[i, j]`` of

    sum_{i+j<=3} c[i, j] * (x - x0)**i * (lam - lam0)**j

for a scalar function of a state variable ``x`` and a control parameter
``lam``, expanded at ``(x0, lam0)``.  Propagating jets through the
elementary operations (+, -, *, real powers) yields every mixed partial
derivative up to total order 3 exactly, to machine precision, without
symbolic differentiation or finite-difference error.

Degree 3 is the highest order any recognition condition in this package
needs (the cubic non-degeneracy of the pitchfork).  Internally the ten
coefficients live in a flat tuple with an unrolled product table; this
sits on the hot path of every continuation step.
"""

from __future__ import annotations

from math import factorial, isfinite

import numpy as np

from .errors import NonpositiveBase, OrderExceeded

ORDER = 3

# flat layout of the ten (i, j) monomials with i + j <= 3
_MONOMIALS = [(i, j) for total in range(ORDER + 1) for i in range(total, -1, -1) for j in [total - i]]
_IDX = {ij: k for k, ij in enumerate(_MONOMIALS)}
_N = len(_MONOMIALS)

# out[k] = sum over (ka, kb) of a[ka] * b[kb], truncating degree > 3
_PRODUCT_TABLE: list[list[tuple[int, int]]] = [[] for _ in range(_N)]
for (i1, j1), k1 in _IDX.items():
    for (i2, j2), k2 in _IDX.items():
        if i1 + i2 + j1 + j2 <= ORDER:
            _PRODUCT_TABLE[_IDX[(i1 + i2, j1 + j2)]].append((k1, k2))

_ZEROS = (0.0,) * _N


class Jet:
    """Immutable degree-3 bivariate Taylor polynomial."""

    __slots__ = ("_t",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (ORDER + 1, ORDER + 1):
            raise ValueError(f"jet coefficients must be {ORDER + 1}x{ORDER + 1}, got {c.shape}")
        self._t = tuple(float(c[i, j]) for i, j in _MONOMIALS)

    @classmethod
    def _from_flat(cls, flat) -> "Jet":
        j = object.__new__(cls)
        j._t = tuple(flat)
        return j

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(value: float) -> "Jet":
        return Jet._from_flat((float(value),) + _ZEROS[1:])

    # -- inspection ---------------------------------------------------

    @property
    def c(self) -> np.ndarray:
        """Coefficients as a (4, 4) array; entries with i + j > 3 are zero."""
        out = np.zeros((ORDER + 1, ORDER + 1))
        for k, (i, j) in enumerate(_MONOMIALS):
            out[i, j] = self._t[k]
        out.flags.writeable = False
        return out

    @property
    def value(self) -> float:
        """Function value at the expansion point."""
        return self._t[0]

    def __repr__(self):
        terms = [
            f"{self._t[k]:g}*dx^{i}*dl^{j}" for k, (i, j) in enumerate(_MONOMIALS) if self._t[k]
        ]
        return "Jet(" + (" + ".join(terms) if terms else "0") + ")"

    def is_finite(self) -> bool:
        return all(isfinite(v) for v in self._t)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b = self._t, other._t
            return Jet._from_flat(tuple(a[k] + b[k] for k in range(_N)))
        return Jet._from_flat((self._t[0] + float(other),) + self._t[1:])

    __radd__ = __add__

    def __neg__(self):
        return Jet._from_flat(tuple(-v for v in self._t))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -float(other))

    def __rsub__(self, other):
        return (-self) + float(other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        s = float(other)
        return Jet._from_flat(tuple(v * s for v in self._t))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return jet_div(self, other)
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return jet_pow(self, -1.0) * float(other)

    def __pow__(self, r):
        return jet_pow(self, r)


def seed_variables(x0: float, lam0: float) -> tuple[Jet, Jet]:
    """Jets of the two coordinate functions x and lam at (x0, lam0)."""
    x = [0.0] * _N
    x[0] = float(x0)
    x[_IDX[(1, 0)]] = 1.0
    lam = [0.0] * _N
    lam[0] = float(lam0)
    lam[_IDX[(0, 1)]] = 1.0
    return Jet._from_flat(x), Jet._from_flat(lam)


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Cauchy product truncated to total degree 3."""
    ta, tb = a._t, b._t
    return Jet._from_flat(
        tuple(sum(ta[ka] * tb[kb] for ka, kb in pairs) for pairs in _PRODUCT_TABLE)
    )


def jet_pow(a: Jet, r: float) -> Jet:
    """Jet of a(x, lam)**r for real r, by composing with t -> t**r.

    The expansion of t**r around the base value c00 uses generalized
    binomial coefficients, so one code path covers integer and fractional
    exponents alike (p = -3/2, -1, 1/2, ...).  Requires c00 > 0.
    """
    r = float(r)
    c0 = a._t[0]
    if not (c0 > 0.0 and isfinite(c0)):
        raise NonpositiveBase(f"jet_pow base value must be positive, got {c0}")
    if r == 1.0:
        return a
    # a = c0 * (1 + w) with w a jet of zero constant term; powers of w
    # raise the minimum total degree, so three terms suffice.
    w = Jet._from_flat((0.0,) + tuple(v / c0 for v in a._t[1:]))
    result = Jet.constant(1.0)
    term = Jet.constant(1.0)
    coeff = 1.0
    for k in range(1, ORDER + 1):
        coeff *= (r - (k - 1)) / k
        term = jet_mul(term, w)
        result = result + coeff * term
    return result * (c0**r)


def jet_div(a: Jet, b: Jet) -> Jet:
    """Quotient a / b, defined as a * b**(-1)."""
    return jet_mul(a, jet_pow(b, -1.0))


def partial(a: Jet, i: int, j: int) -> float:
    """Mixed partial derivative d^{i+j} g / dx^i dlam^j at the expansion point."""
    if i < 0 or j < 0:
        raise OrderExceeded(f"derivative orders must be nonnegative, got ({i}, {j})")
    if i + j > ORDER:
        raise OrderExceeded(f"total order {i + j} exceeds jet order {ORDER}")
    return factorial(i) * factorial(j) * a._t[_IDX[(i, j)]]
