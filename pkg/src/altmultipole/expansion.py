"""Evaluation routes for the electron-electron repulsion 1/|r1 - r2| and
grid diagnostics that measure each route against direct evaluation.

Four routes are provided: the classical Legendre expansion in powers of
the radius ratio, the regrouped sine-power multipole series, its leading
(s = 0) slice, and the closed exponential form.  None of the approximate
routes is assumed to converge to the direct value; `error_scan` records
the discrepancies and leaves the verdict to the numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError, DomainError, SingularityError
from .specfun import SeriesTruncation, bessel_eval, bessel_projection_oracle

__all__ = [
    "Geometry",
    "direct_coulomb",
    "classical_multipole",
    "alternative_multipole",
    "exponential_form",
    "first_term_series",
    "hyperradial",
    "MethodErrorRow",
    "BesselDiscrepancyRow",
    "ErrorScanReport",
    "error_scan",
]


@dataclass(frozen=True)
class Geometry:
    """Two-electron radial and angular configuration (bohr, dimensionless).

    Derived quantities use the lesser/greater radius convention, so every
    evaluation route is invariant under swapping r1 and r2.
    """

    r1: float
    r2: float
    cos_theta: float

    def __post_init__(self) -> None:
        if self.r1 <= 0.0 or self.r2 <= 0.0:
            raise DomainError("radii must be positive")
        if abs(self.cos_theta) > 1.0:
            raise DomainError("cos(theta) must lie in [-1, 1]")

    @property
    def r_less(self) -> float:
        return min(self.r1, self.r2)

    @property
    def r_greater(self) -> float:
        return max(self.r1, self.r2)

    @property
    def t(self) -> float:
        return self.r_less / self.r_greater

    @property
    def alpha(self) -> float:
        return math.atan(self.t)


def _legendre_values(x: float, l_max: int) -> list[float]:
    # P_0..P_lmax at a scalar x, by the Bonnet recurrence.
    vals = [1.0]
    if l_max >= 1:
        vals.append(x)
    for l in range(2, l_max + 1):
        vals.append(((2 * l - 1) * x * vals[l - 1] - (l - 1) * vals[l - 2]) / l)
    return vals


def direct_coulomb(g: Geometry) -> float:
    """1/|r1 - r2| from the law of cosines; singular at coalescence."""
    d2 = g.r1 * g.r1 + g.r2 * g.r2 - 2.0 * g.r1 * g.r2 * g.cos_theta
    if d2 <= 0.0:
        raise SingularityError("electrons coalesce: direct evaluation is singular")
    return 1.0 / math.sqrt(d2)


def classical_multipole(g: Geometry, l_max: int) -> float:
    """Legendre expansion (1/r_greater) sum_l t^l P_l(cos theta), truncated at l_max."""
    if l_max < 0:
        raise DomainError("l_max must be nonnegative")
    t, x = g.t, g.cos_theta
    if t == 1.0 and x == 1.0:
        raise SingularityError("electrons coalesce: expansion point is singular")
    pl = _legendre_values(x, l_max)
    total = 0.0
    tl = 1.0
    for l in range(l_max + 1):
        total += tl * pl[l]
        tl *= t
    return total / g.r_greater


def alternative_multipole(g: Geometry, trunc: SeriesTruncation) -> float:
    """Sine-power multipole series truncated at (l_max, s_max).

    (1/(r_greater sqrt(1+t^2))) sum_l (2l+1) j_l(t) P_l(cos theta), with
    j_l the partial radial sums from `bessel_eval`.  The value is recorded
    as a partial sum; whether the full series reaches the direct value is
    what `error_scan` measures.
    """
    t, x = g.t, g.cos_theta
    pl = _legendre_values(x, trunc.l_max)
    total = 0.0
    for l in range(trunc.l_max + 1):
        total += (2 * l + 1) * bessel_eval(l, t, "t", trunc.s_max) * pl[l]
    return total / (g.r_greater * math.sqrt(1.0 + t * t))


def exponential_form(g: Geometry) -> float:
    """Closed form (1/sqrt(r1^2+r2^2)) exp(r1 r2 cos theta / (r1^2+r2^2)).

    Coincides with the direct value exactly when cos theta = 0 and stays
    finite even at coalescence, where the direct value diverges.
    """
    h2 = g.r1 * g.r1 + g.r2 * g.r2
    return math.exp(g.r1 * g.r2 * g.cos_theta / h2) / math.sqrt(h2)


def first_term_series(g: Geometry, l_max: int) -> float:
    """Leading radial slice: (1/sqrt(r1^2+r2^2)) sum_l (2l+1) q^l P_l, q = r1 r2/(r1^2+r2^2).

    Identical to `alternative_multipole` with s_max = 0.
    """
    if l_max < 0:
        raise DomainError("l_max must be nonnegative")
    h2 = g.r1 * g.r1 + g.r2 * g.r2
    q = g.r1 * g.r2 / h2
    pl = _legendre_values(g.cos_theta, l_max)
    total = 0.0
    ql = 1.0
    for l in range(l_max + 1):
        total += (2 * l + 1) * ql * pl[l]
        ql *= q
    return total / math.sqrt(h2)


def hyperradial(r1: float, r2: float) -> float:
    """1/sqrt(r1^2 + r2^2), the collective-radius form of the repulsion."""
    if r1 <= 0.0 or r2 <= 0.0:
        raise DomainError("radii must be positive")
    return 1.0 / math.sqrt(r1 * r1 + r2 * r2)


@dataclass(frozen=True)
class MethodErrorRow:
    """Relative error of one evaluation route at one grid point."""

    t: float
    cos_theta: float
    method: str
    l_max: int | None
    s_max: int | None
    value: float
    direct: float
    rel_error: float


@dataclass(frozen=True)
class BesselDiscrepancyRow:
    """Partial radial sum against the projection oracle at one (l, t)."""

    l: int
    t: float
    s_max: int
    series: float
    oracle: float
    abs_error: float


def _fmt(v: float) -> str:
    return f"{v:.12g}"


@dataclass(frozen=True)
class ErrorScanReport:
    """All route errors over a (t, cos theta) grid plus the oracle table.

    Row order follows the grid order regardless of how the evaluation was
    scheduled, so serialized output is reproducible byte for byte.
    """

    t_values: tuple[float, ...]
    cos_theta_values: tuple[float, ...]
    truncations: tuple[SeriesTruncation, ...]
    method_rows: tuple[MethodErrorRow, ...]
    bessel_rows: tuple[BesselDiscrepancyRow, ...]

    def to_csv(self) -> str:
        lines = ["t,cos_theta,method,l_max,s_max,value,direct,rel_error"]
        for r in self.method_rows:
            lmax = "" if r.l_max is None else str(r.l_max)
            smax = "" if r.s_max is None else str(r.s_max)
            lines.append(
                f"{_fmt(r.t)},{_fmt(r.cos_theta)},{r.method},{lmax},{smax},"
                f"{_fmt(r.value)},{_fmt(r.direct)},{_fmt(r.rel_error)}"
            )
        return "\n".join(lines) + "\n"

    def bessel_csv(self) -> str:
        lines = ["l,t,s_max,series,oracle,abs_error"]
        for r in self.bessel_rows:
            lines.append(
                f"{r.l},{_fmt(r.t)},{r.s_max},{_fmt(r.series)},"
                f"{_fmt(r.oracle)},{_fmt(r.abs_error)}"
            )
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "grid": {
                "t": list(self.t_values),
                "cos_theta": list(self.cos_theta_values),
            },
            "truncations": [
                {"l_max": tr.l_max, "s_max": tr.s_max} for tr in self.truncations
            ],
            "method_rows": [
                {
                    "t": r.t,
                    "cos_theta": r.cos_theta,
                    "method": r.method,
                    "l_max": r.l_max,
                    "s_max": r.s_max,
                    "value": r.value,
                    "direct": r.direct,
                    "rel_error": r.rel_error,
                }
                for r in self.method_rows
            ],
            "bessel_rows": [
                {
                    "l": r.l,
                    "t": r.t,
                    "s_max": r.s_max,
                    "series": r.series,
                    "oracle": r.oracle,
                    "abs_error": r.abs_error,
                }
                for r in self.bessel_rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def error_scan(
    t_values: Sequence[float],
    cos_theta_values: Sequence[float],
    truncations: Sequence[SeriesTruncation],
    n_quad: int = 200,
) -> ErrorScanReport:
    """Relative error of every route against direct evaluation on a grid.

    The grid is the Cartesian product of t_values and cos_theta_values with
    the coalescence point (t = 1, cos theta = 1) dropped.  Radii are fixed
    at r_greater = 1; relative errors are scale invariant so nothing is
    lost.  A second table compares the partial radial sums with the
    projection oracle for every l up to the largest requested order (the
    oracle needs t < 1, so t = 1 columns appear only in the method table).
    """
    if not truncations:
        raise ConfigurationError("at least one truncation is required")
    for t in t_values:
        if not 0.0 < t <= 1.0:
            raise ConfigurationError("grid t values must lie in (0, 1]")
    for x in cos_theta_values:
        if abs(x) > 1.0:
            raise ConfigurationError("grid cos(theta) values must lie in [-1, 1]")

    method_rows: list[MethodErrorRow] = []
    for t in t_values:
        for x in cos_theta_values:
            if t == 1.0 and x == 1.0:
                continue
            g = Geometry(1.0, t, x)
            d = direct_coulomb(g)
            for tr in truncations:
                for method, value, lmax, smax in (
                    ("classical", classical_multipole(g, tr.l_max), tr.l_max, None),
                    ("alternative", alternative_multipole(g, tr), tr.l_max, tr.s_max),
                    ("first_term", first_term_series(g, tr.l_max), tr.l_max, None),
                ):
                    method_rows.append(
                        MethodErrorRow(
                            t=t,
                            cos_theta=x,
                            method=method,
                            l_max=lmax,
                            s_max=smax,
                            value=value,
                            direct=d,
                            rel_error=abs(value - d) / abs(d),
                        )
                    )
            value = exponential_form(g)
            method_rows.append(
                MethodErrorRow(
                    t=t,
                    cos_theta=x,
                    method="exponential",
                    l_max=None,
                    s_max=None,
                    value=value,
                    direct=d,
                    rel_error=abs(value - d) / abs(d),
                )
            )

    l_top = max(tr.l_max for tr in truncations)
    s_top = max(tr.s_max for tr in truncations)
    bessel_rows: list[BesselDiscrepancyRow] = []
    for t in t_values:
        if t >= 1.0:
            continue
        for l in range(l_top + 1):
            series = bessel_eval(l, t, "t", s_top)
            oracle = bessel_projection_oracle(l, t, n_quad)
            bessel_rows.append(
                BesselDiscrepancyRow(
                    l=l,
                    t=t,
                    s_max=s_top,
                    series=series,
                    oracle=oracle,
                    abs_error=abs(series - oracle),
                )
            )

    return ErrorScanReport(
        t_values=tuple(t_values),
        cos_theta_values=tuple(cos_theta_values),
        truncations=tuple(truncations),
        method_rows=tuple(method_rows),
        bessel_rows=tuple(bessel_rows),
    )
