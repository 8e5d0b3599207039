"""Series building blocks for the trigonometric multipole expansion of the
two-electron Coulomb kernel.

The kernel (1 - 2tx + t^2)^(-1/2) admits, besides the classical Legendre
expansion in powers of t, a regrouping of its binomial expansion in powers
of x into Legendre orders.  The pieces needed for that regrouping live
here: double factorials, Legendre polynomials, the coupling coefficients
that redistribute x^(2s+l) over P_l, and the resulting sine-power radial
series together with an independent quadrature oracle for its exact limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "MAX_RADIAL_TERMS",
    "SeriesTruncation",
    "BesselCoefficientTable",
    "double_factorial",
    "legendre",
    "beta",
    "bessel_coefficients",
    "bessel_eval",
    "bessel_projection_oracle",
    "kernel_sum_by_powers",
    "kernel_sum_by_multipoles",
]

# Beyond this many radial terms the coefficient magnitudes would overflow a
# naive factorial evaluation; the ratio recurrence below stays finite, but
# truncation requests are capped here to keep configurations honest.
MAX_RADIAL_TERMS = 200


@dataclass(frozen=True)
class SeriesTruncation:
    """Truncation orders for the double series: radial index s and multipole l."""

    s_max: int
    l_max: int

    def __post_init__(self) -> None:
        if self.s_max < 0 or self.l_max < 0:
            raise DomainError("truncation orders must be nonnegative")
        if self.s_max > MAX_RADIAL_TERMS:
            raise DomainError(f"s_max capped at {MAX_RADIAL_TERMS}, got {self.s_max}")


def double_factorial(n: int) -> int:
    """n!! as an exact integer, with the conventions (-1)!! = 0!! = 1.

    Arguments below -1 are rejected: the series code must never request
    them (negative upper factors only arise from a miswritten closed form).
    """
    if n < -1:
        raise DomainError(f"double factorial undefined for n = {n}")
    out = 1
    for m in range(n, 1, -2):
        out *= m
    return out


def legendre(l: int, x):
    """Legendre polynomial P_l(x) by the Bonnet three-term recurrence.

    Accepts a scalar or an ndarray; requires |x| <= 1.
    """
    if l < 0:
        raise DomainError("Legendre order must be nonnegative")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("Legendre argument must lie in [-1, 1]")
    if l == 0:
        result = np.ones_like(arr)
    elif l == 1:
        result = arr
    else:
        p_prev = np.ones_like(arr)
        p_cur = arr
        for m in range(2, l + 1):
            p_prev, p_cur = p_cur, ((2 * m - 1) * arr * p_cur - (m - 1) * p_prev) / m
        result = p_cur
    if arr.ndim == 0:
        return float(result)
    return result


def beta(k: int, l: int, s: int, exact: bool = False):
    """Coupling coefficient that redistributes the power x^(2s+l) over P_l.

    beta = (2l+1) 2^k (s+k)!/s! / prod_{j=0..k} (2l+2s+1-2j), with k the
    half of l rounded down.  For k = 0, 1, 2 this reduces to
    (2l+1)/(2l+2s+1), (2l+1) 2 (s+1)/((2l+2s+1)(2l+2s-1)) and
    (2l+1) 4 (s+1)(s+2)/((2l+2s+1)(2l+2s-1)(2l+2s-3)).
    """
    if k < 0 or l < 0 or s < 0:
        raise DomainError("beta indices must be nonnegative")
    factors = [2 * l + 2 * s + 1 - 2 * j for j in range(k + 1)]
    if factors[-1] <= 0:
        raise DomainError(
            f"nonpositive denominator factor in beta(k={k}, l={l}, s={s})"
        )
    value = Fraction(
        (2 * l + 1) * 2**k * math.perm(s + k, k),
        math.prod(factors),
    )
    return value if exact else float(value)


@dataclass(frozen=True)
class BesselCoefficientTable:
    """Coefficients of sin^(2s+l)(2a) in the order-l sine-power series.

    `coeffs[s]` is the float value, `exact[s]` the underlying rational.
    """

    l: int
    coeffs: tuple[float, ...]
    exact: tuple[Fraction, ...]

    def power(self, s: int) -> int:
        return 2 * s + self.l


def bessel_coefficients(l: int, n_terms: int) -> BesselCoefficientTable:
    """First n_terms sine-power coefficients of the order-l radial series.

    Entry s equals beta * (2l+4s+1)!! / ((2s+l)! (2l+1) 2^(2s+l)), carried
    out in exact rational arithmetic and converted at the end.
    """
    if l < 0:
        raise DomainError("order must be nonnegative")
    if n_terms < 1:
        raise DomainError("n_terms must be at least 1")
    k = l // 2
    exact = []
    for s in range(n_terms):
        c = (
            beta(k, l, s, exact=True)
            * double_factorial(2 * l + 4 * s + 1)
            / (math.factorial(2 * s + l) * (2 * l + 1) * 2 ** (2 * s + l))
        )
        exact.append(c)
    return BesselCoefficientTable(
        l=l,
        coeffs=tuple(float(c) for c in exact),
        exact=tuple(exact),
    )


def _prefactor_ratio(l: int, k: int, s: int) -> float:
    # d_{s+1}/d_s for d_s = beta(k,l,s) (2l+4s+1)!!/(2s+l)!; keeps the
    # partial sums in double precision for any s (no factorial overflow).
    return (
        (s + k + 1)
        / (s + 1)
        * (2 * l + 2 * s + 1 - 2 * k)
        / (2 * l + 2 * s + 3)
        * (2 * l + 4 * s + 5)
        * (2 * l + 4 * s + 3)
        / ((2 * s + l + 1) * (2 * s + l + 2))
    )


def bessel_eval(l: int, arg: float, mode: str = "t", s_max: int = 40) -> float:
    """Partial sum of the order-l radial series through radial index s_max.

    mode "t" sums in powers of t/(1+t^2) for a radius ratio t in [0, 1];
    mode "alpha" sums in powers of sin(2a)/2 for a in [0, pi/4].  The two
    agree when a = arctan t.  At t = 1 the terms decay too slowly for the
    sum to settle; the value returned is a partial sum, not a limit.
    """
    if l < 0:
        raise DomainError("order must be nonnegative")
    if s_max < 0:
        raise DomainError("s_max must be nonnegative")
    if mode == "t":
        if not 0.0 <= arg <= 1.0:
            raise DomainError("radius ratio must lie in [0, 1]")
        u = arg / (1.0 + arg * arg)
    elif mode == "alpha":
        if not 0.0 <= arg <= math.pi / 4:
            raise DomainError("hyperangle must lie in [0, pi/4]")
        u = 0.5 * math.sin(2.0 * arg)
    else:
        raise DomainError(f"mode must be 't' or 'alpha', got {mode!r}")
    k = l // 2
    term = (2 * l + 1) * u**l
    total = term
    u2 = u * u
    for s in range(s_max):
        term *= u2 * _prefactor_ratio(l, k, s)
        total += term
    return total / (2 * l + 1)


@lru_cache(maxsize=32)
def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def bessel_projection_oracle(l: int, t: float, n_quad: int = 200) -> float:
    """Exact order-l multipole coefficient of the kernel, by quadrature.

    Returns sqrt(1+t^2)/2 * integral of (1-2tx+t^2)^(-1/2) P_l(x) over
    [-1, 1].  This is the unique coefficient that makes the multipole
    resolution of the kernel exact; analytically it equals
    sqrt(1+t^2) t^l / (2l+1).  Serves as the independent reference the
    sine-power series is measured against.
    """
    if l < 0:
        raise DomainError("order must be nonnegative")
    if not 0.0 <= t < 1.0:
        raise DomainError("radius ratio must lie in [0, 1) for the projection")
    if n_quad < 64:
        raise DomainError("n_quad must be at least 64")
    x, w = _gauss_legendre(n_quad)
    f = (1.0 - 2.0 * t * x + t * t) ** -0.5 * legendre(l, x)
    return math.sqrt(1.0 + t * t) / 2.0 * float(np.dot(w, f))


def _gen_binomials(order: int) -> list[float]:
    # C(-1/2, m) for m = 0..order
    out = [1.0]
    for m in range(1, order + 1):
        out.append(out[-1] * (-0.5 - m + 1) / m)
    return out


def kernel_sum_by_powers(t: float, x: float, order: int) -> float:
    """Binomial partial sum of (1-2tx+t^2)^(-1/2) in powers of x, through x^order."""
    y0 = 1.0 + t * t
    z = -2.0 * t * x / y0
    binom = _gen_binomials(order)
    total = 0.0
    zs = 1.0
    for s in range(order + 1):
        total += binom[s] * zs
        zs *= z
    return total / math.sqrt(y0)


def kernel_sum_by_multipoles(t: float, x: float, order: int) -> float:
    """The same partial sum regrouped over Legendre orders via beta().

    Truncated at total power 2s+l <= order, so it must agree with
    kernel_sum_by_powers term for term; any daylight between the two is a
    defect in the beta coefficients.
    """
    y0 = 1.0 + t * t
    wfac = -2.0 * t / y0
    binom = _gen_binomials(order)
    wpow = [1.0]
    for _ in range(order):
        wpow.append(wpow[-1] * wfac)
    total = 0.0
    for l in range(order + 1):
        radial = 0.0
        for s in range((order - l) // 2 + 1):
            m = 2 * s + l
            radial += beta(l // 2, l, s) * binom[m] * wpow[m]
        total += radial * legendre(l, x)
    return total / math.sqrt(y0)
