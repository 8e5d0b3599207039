"""B-spline radial basis, Galerkin assembly, and the symmetric-definite
generalized eigensolver.

Conventions: spline order k counts coefficients per polynomial piece
(degree k - 1).  Knot sequences carry k-fold end multiplicity, and the
first and last spline are always dropped when assembling operators so the
retained basis satisfies u(0) = u(R) = 0.  All bilinear forms are built by
per-interval Gauss-Legendre quadrature whose nodes are strictly interior,
so integrands with inverse powers of r are evaluated but never at r = 0;
for integrands that diverge in the continuum limit (1/r^3 against s-wave
behaviour) the assembled numbers are knot-dependent by construction and
are reported as such downstream.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import LinAlgError, eigh

from .errors import ConfigurationError, DomainError, OverlapNotPositiveDefiniteError

__all__ = [
    "Linear",
    "Geometric",
    "GeometricThenLinear",
    "BasisSpec",
    "KnotSequence",
    "build_knots",
    "bspline_eval",
    "Overlap",
    "Kinetic",
    "InversePower",
    "InvRKinetic",
    "OperatorMatrix",
    "assemble",
    "combine",
    "solve",
    "load_banded",
]


# ---------------------------------------------------------------------------
# knot schemes and basis specification


@dataclass(frozen=True)
class Linear:
    """Uniform breakpoints from 0 to the box radius."""


@dataclass(frozen=True)
class Geometric:
    """Breakpoints 0, r_first, r_first*ratio, ...; the last is clipped to the box."""

    r_first: float
    ratio: float


@dataclass(frozen=True)
class GeometricThenLinear:
    """Geometric spacing near the origin switching to uniform further out.

    Defaults (resolved against the box radius at build time): r_first is
    1e-4 of the box, the switch radius one tenth of it.  The breakpoint
    budget is split so the last geometric gap matches the uniform gap.
    """

    r_first: float | None = None
    switch_radius: float | None = None


KnotScheme = Linear | Geometric | GeometricThenLinear


@dataclass(frozen=True)
class BasisSpec:
    """Radial basis definition: order, spline count, box radius, knot scheme."""

    order: int
    n_splines: int
    r_box: float
    scheme: KnotScheme

    def __post_init__(self) -> None:
        if self.order < 4:
            raise ConfigurationError("spline order must be at least 4")
        if self.n_splines < self.order + 2:
            raise ConfigurationError("n_splines too small for the requested order")
        if self.r_box <= 0.0:
            raise ConfigurationError("box radius must be positive")

    @property
    def n_retained(self) -> int:
        return self.n_splines - 2

    def tag(self) -> str:
        scheme = {
            Linear: "lin",
            Geometric: "geo",
            GeometricThenLinear: "geolin",
        }[type(self.scheme)]
        extra = ""
        if isinstance(self.scheme, Geometric):
            extra = f"rf{self.scheme.r_first:g}"
        elif isinstance(self.scheme, GeometricThenLinear):
            rf = self.scheme.r_first
            extra = f"rf{rf:g}" if rf is not None else ""
        return f"k{self.order}n{self.n_splines}R{self.r_box:g}{scheme}{extra}"


@dataclass(frozen=True)
class KnotSequence:
    """Breakpoints plus the full knot list with k-fold end multiplicity."""

    breakpoints: tuple[float, ...]
    order: int

    def __post_init__(self) -> None:
        bp = self.breakpoints
        if len(bp) < 2:
            raise ConfigurationError("at least two breakpoints are required")
        if any(b >= a for b, a in zip(bp[1:], bp[2:])) or bp[0] >= bp[1]:
            raise ConfigurationError("breakpoints must be strictly ascending")
        if bp[0] != 0.0:
            raise ConfigurationError("the first breakpoint must be 0")
        if self.order < 1:
            raise ConfigurationError("order must be at least 1")

    @property
    def knots(self) -> tuple[float, ...]:
        bp = self.breakpoints
        k = self.order
        return (bp[0],) * k + bp[1:-1] + (bp[-1],) * k

    @property
    def n_splines(self) -> int:
        return len(self.breakpoints) - 2 + self.order

    @property
    def n_retained(self) -> int:
        return self.n_splines - 2

    @property
    def r_box(self) -> float:
        return self.breakpoints[-1]


def build_knots(spec: BasisSpec) -> KnotSequence:
    """Breakpoint sequence realizing the spec; n_splines = (#breakpoints - 2) + order."""
    n_bp = spec.n_splines - spec.order + 2
    r = spec.r_box
    scheme = spec.scheme
    if isinstance(scheme, Linear):
        bp = np.linspace(0.0, r, n_bp)
    elif isinstance(scheme, Geometric):
        if scheme.r_first <= 0.0 or scheme.ratio <= 1.0:
            raise ConfigurationError("geometric scheme needs r_first > 0 and ratio > 1")
        pts = [0.0] + [scheme.r_first * scheme.ratio**j for j in range(n_bp - 2)]
        if pts[-1] >= r:
            raise ConfigurationError(
                "geometric sequence reaches the box before the final breakpoint"
            )
        bp = np.array(pts + [r])
    elif isinstance(scheme, GeometricThenLinear):
        r_first = scheme.r_first if scheme.r_first is not None else 1e-4 * r
        switch = (
            scheme.switch_radius if scheme.switch_radius is not None else 0.1 * r
        )
        if not 0.0 < r_first < switch < r:
            raise ConfigurationError("need 0 < r_first < switch_radius < box radius")
        bp = _geometric_then_linear(r_first, switch, r, n_bp)
    else:
        raise ConfigurationError(f"unknown knot scheme {scheme!r}")
    return KnotSequence(breakpoints=tuple(float(b) for b in bp), order=spec.order)


def _geometric_then_linear(
    r_first: float, switch: float, r_box: float, n_bp: int
) -> np.ndarray:
    # Split the interior budget so the last geometric gap matches the
    # uniform gap as closely as possible.
    n_free = n_bp - 1
    if n_free < 3:
        raise ConfigurationError("too few breakpoints for a two-region scheme")
    best = None
    for n_geo in range(2, n_free):
        n_lin = n_free - n_geo  # points in (switch, r_box]
        q = (switch / r_first) ** (1.0 / (n_geo - 1))
        gap_geo = switch * (1.0 - 1.0 / q)
        gap_lin = (r_box - switch) / n_lin
        mismatch = abs(np.log(gap_geo / gap_lin))
        if best is None or mismatch < best[0]:
            best = (mismatch, n_geo, n_lin, q)
    _, n_geo, n_lin, q = best
    geo = r_first * q ** np.arange(n_geo)
    geo[-1] = switch  # the run ends on the switch radius; remove rounding
    lin = np.linspace(switch, r_box, n_lin + 1)[1:]
    return np.concatenate(([0.0], geo, lin))


# ---------------------------------------------------------------------------
# spline evaluation (Cox-de Boor with derivatives)


def _nonzero_bsplines(
    knots: np.ndarray, k: int, m: int, x: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Values and first two derivatives of the k splines alive on interval m.

    `m` indexes the knot span [knots[m], knots[m+1]); column j of each
    returned (len(x), k) array belongs to spline m - k + 1 + j.
    """
    q = x.shape[0]
    biatx = np.zeros((q, k))
    biatx[:, 0] = 1.0
    deltar = np.empty((q, k))
    deltal = np.empty((q, k))
    row_km2 = None
    row_km1 = None
    for j in range(1, k):
        deltar[:, j - 1] = knots[m + j] - x
        deltal[:, j - 1] = x - knots[m + 1 - j]
        saved = np.zeros(q)
        for rr in range(j):
            term = biatx[:, rr] / (deltar[:, rr] + deltal[:, j - 1 - rr])
            biatx[:, rr] = saved + deltar[:, rr] * term
            saved = deltal[:, j - 1 - rr] * term
        biatx[:, j] = saved
        if j == k - 3:
            row_km2 = biatx[:, : j + 1].copy()
        if j == k - 2:
            row_km1 = biatx[:, : j + 1].copy()
    if k == 1:
        return biatx.copy(), np.zeros((q, 1)), np.zeros((q, 1))
    if k == 2:
        row_km1 = np.ones((q, 1))
    if k == 3:
        row_km2 = np.ones((q, 1))

    def span(i: int, width: int) -> float:
        return knots[i + width] - knots[i]

    def val(row: np.ndarray, first: int, i: int) -> np.ndarray:
        p = i - first
        if 0 <= p < row.shape[1]:
            return row[:, p]
        return np.zeros(q)

    first_km1 = m - k + 2
    d1 = np.zeros((q, k))
    for j in range(k):
        i = m - k + 1 + j
        acc = np.zeros(q)
        s_i = span(i, k - 1)
        if s_i > 0.0:
            acc = acc + val(row_km1, first_km1, i) / s_i
        s_ip = span(i + 1, k - 1)
        if s_ip > 0.0:
            acc = acc - val(row_km1, first_km1, i + 1) / s_ip
        d1[:, j] = (k - 1) * acc

    d2 = np.zeros((q, k))
    if k >= 3:
        first_km2 = m - k + 3

        def dval_km1(i: int) -> np.ndarray:
            # first derivative of the order k-1 spline i
            acc = np.zeros(q)
            s_i = span(i, k - 2)
            if s_i > 0.0:
                acc = acc + val(row_km2, first_km2, i) / s_i
            s_ip = span(i + 1, k - 2)
            if s_ip > 0.0:
                acc = acc - val(row_km2, first_km2, i + 1) / s_ip
            return (k - 2) * acc

        for j in range(k):
            i = m - k + 1 + j
            acc = np.zeros(q)
            s_i = span(i, k - 1)
            if s_i > 0.0:
                acc = acc + dval_km1(i) / s_i
            s_ip = span(i + 1, k - 1)
            if s_ip > 0.0:
                acc = acc - dval_km1(i + 1) / s_ip
            d2[:, j] = (k - 1) * acc

    return biatx, d1, d2


def _interval_index(seq: KnotSequence, r: float) -> int:
    bp = seq.breakpoints
    if r >= bp[-1]:
        return len(bp) - 2
    j = int(np.searchsorted(np.asarray(bp), r, side="right")) - 1
    return max(j, 0)


def bspline_eval(seq: KnotSequence, i: int, r: float) -> float:
    """Value of the i-th order-k B-spline of the sequence at radius r."""
    if not 0 <= i < seq.n_splines:
        raise DomainError(f"spline index {i} out of range")
    if not 0.0 <= r <= seq.r_box:
        raise DomainError("evaluation point outside the box")
    k = seq.order
    j = _interval_index(seq, r)
    m = k - 1 + j
    knots = np.asarray(seq.knots)
    vals, _, _ = _nonzero_bsplines(knots, k, m, np.array([r]))
    local = i - (m - k + 1)
    if 0 <= local < k:
        return float(vals[0, local])
    return 0.0


# ---------------------------------------------------------------------------
# Galerkin assembly


@dataclass(frozen=True)
class Overlap:
    """Identity weight: entries are plain products of basis functions."""


@dataclass(frozen=True)
class Kinetic:
    """Radial kinetic energy -1/2 d^2/dr^2 + l(l+1)/(2 r^2), in weak form."""

    l: int


@dataclass(frozen=True)
class InversePower:
    """Multiplication by r^(-p) for p in {1, 2, 3}."""

    p: int

    def __post_init__(self) -> None:
        if self.p not in (1, 2, 3):
            raise ConfigurationError("inverse power must be 1, 2 or 3")


@dataclass(frozen=True)
class InvRKinetic:
    """Symmetrized (1/r) p^2: blocks of -B_i (1/r) B_j'' averaged with their
    transpose, plus the centrifugal l(l+1)/r^3 part."""

    l: int


RadialOperator = Overlap | Kinetic | InversePower | InvRKinetic


@dataclass(frozen=True)
class _QuadTables:
    nodes: tuple
    weights: tuple
    values: tuple
    d1: tuple
    d2: tuple


@lru_cache(maxsize=64)
def _basis_tables(seq: KnotSequence, n_nodes: int) -> _QuadTables:
    bp = np.asarray(seq.breakpoints)
    knots = np.asarray(seq.knots)
    k = seq.order
    xg, wg = np.polynomial.legendre.leggauss(n_nodes)
    nodes, weights, values, d1s, d2s = [], [], [], [], []
    for j in range(len(bp) - 1):
        a, b = bp[j], bp[j + 1]
        x = 0.5 * (a + b) + 0.5 * (b - a) * xg
        w = 0.5 * (b - a) * wg
        vals, d1, d2 = _nonzero_bsplines(knots, k, k - 1 + j, x)
        nodes.append(x)
        weights.append(w)
        values.append(vals)
        d1s.append(d1)
        d2s.append(d2)
    return _QuadTables(
        nodes=tuple(nodes),
        weights=tuple(weights),
        values=tuple(values),
        d1=tuple(d1s),
        d2=tuple(d2s),
    )


@dataclass(frozen=True)
class OperatorMatrix:
    """Symmetric banded Galerkin matrix over the retained basis.

    `bands[d, j]` holds entry (j + d, j); the half-bandwidth is order - 1.
    """

    bands: np.ndarray
    order: int

    @property
    def dim(self) -> int:
        return self.bands.shape[1]

    @property
    def half_bandwidth(self) -> int:
        return self.bands.shape[0] - 1

    def to_dense(self) -> np.ndarray:
        n = self.dim
        a = np.zeros((n, n))
        for d in range(self.bands.shape[0]):
            idx = np.arange(n - d)
            a[idx + d, idx] = self.bands[d, : n - d]
            if d:
                a[idx, idx + d] = self.bands[d, : n - d]
        return a

    def expectation(self, c: np.ndarray) -> float:
        """Quadratic form c^T A c for a coefficient vector c."""
        c = np.asarray(c, dtype=float)
        total = float(np.dot(self.bands[0] * c, c))
        n = self.dim
        for d in range(1, self.bands.shape[0]):
            total += 2.0 * float(np.dot(self.bands[d, : n - d] * c[d:], c[: n - d]))
        return total

    def dump_banded(self, path) -> None:
        """Binary layout: int64 dimension, int64 half-bandwidth, then the
        band rows as little-endian float64, diagonal by diagonal (main
        diagonal first), each padded with zeros to the full dimension."""
        with open(path, "wb") as fh:
            fh.write(struct.pack("<qq", self.dim, self.half_bandwidth))
            fh.write(self.bands.astype("<f8").tobytes(order="C"))

    def to_csv(self) -> str:
        """Dense comma-separated rows; intended for small matrices."""
        dense = self.to_dense()
        lines = [",".join(f"{v:.17g}" for v in row) for row in dense]
        return "\n".join(lines) + "\n"


def load_banded(path) -> OperatorMatrix:
    """Inverse of OperatorMatrix.dump_banded."""
    with open(path, "rb") as fh:
        dim, hbw = struct.unpack("<qq", fh.read(16))
        bands = np.frombuffer(fh.read(), dtype="<f8").reshape(hbw + 1, dim).copy()
    return OperatorMatrix(bands=bands, order=hbw + 1)


def _accumulate_block(bands: np.ndarray, block: np.ndarray, offset: int, k: int) -> None:
    for d in range(k):
        bands[d, offset : offset + k - d] += np.diagonal(block, -d)


def assemble(
    op: RadialOperator, seq: KnotSequence, n_nodes: int | None = None
) -> OperatorMatrix:
    """Galerkin matrix <B_i| op |B_j> over the retained basis.

    Entries come from per-interval Gauss-Legendre quadrature with at least
    order + 2 nodes, exact for the polynomial integrands of the overlap.
    Kinetic uses the integrated-by-parts first-derivative form.  The
    (1/r) p^2 operator is not self-adjoint as written, so its blocks are
    symmetrized; its value on smooth states then matches the strong-form
    expectation (for a hydrogenic ground state, 3 Z^3).
    """
    k = seq.order
    n = seq.n_splines
    if n_nodes is None:
        n_nodes = k + 2
    if n_nodes < k + 2:
        raise ConfigurationError("quadrature needs at least order + 2 nodes")
    tab = _basis_tables(seq, n_nodes)
    bands = np.zeros((k, n))
    for j in range(len(seq.breakpoints) - 1):
        r = tab.nodes[j]
        w = tab.weights[j]
        bv = tab.values[j]
        bd1 = tab.d1[j]
        bd2 = tab.d2[j]
        if isinstance(op, Overlap):
            block = bv.T @ (w[:, None] * bv)
        elif isinstance(op, InversePower):
            block = bv.T @ ((w * r ** float(-op.p))[:, None] * bv)
        elif isinstance(op, Kinetic):
            block = 0.5 * (bd1.T @ (w[:, None] * bd1))
            if op.l:
                cf = 0.5 * op.l * (op.l + 1)
                block = block + cf * (bv.T @ ((w / (r * r))[:, None] * bv))
        elif isinstance(op, InvRKinetic):
            m_block = -(bv.T @ ((w / r)[:, None] * bd2))
            block = 0.5 * (m_block + m_block.T)
            if op.l:
                cf = op.l * (op.l + 1)
                block = block + cf * (bv.T @ ((w / r**3)[:, None] * bv))
        else:
            raise ConfigurationError(f"unknown operator {op!r}")
        _accumulate_block(bands, block, j, k)

    n_ret = n - 2
    retained = bands[:, 1 : n - 1].copy()
    for d in range(1, k):
        retained[d, n_ret - d :] = 0.0
    retained.flags.writeable = False
    return OperatorMatrix(bands=retained, order=k)


def combine(terms: Sequence[tuple[float, OperatorMatrix]]) -> OperatorMatrix:
    """Linear combination sum_i c_i A_i of banded matrices on one basis."""
    if not terms:
        raise ConfigurationError("empty combination")
    first = terms[0][1]
    bands = np.zeros_like(first.bands)
    for coef, mat in terms:
        if mat.bands.shape != first.bands.shape:
            raise ConfigurationError("operator matrices live on different bases")
        bands += coef * mat.bands
    bands.flags.writeable = False
    return OperatorMatrix(bands=bands, order=first.order)


def solve(
    h: OperatorMatrix, s: OperatorMatrix, n_states: int
) -> list[tuple[float, np.ndarray]]:
    """Lowest n_states eigenpairs of H c = E S c, ascending.

    Reduces to a standard symmetric problem through the Cholesky factor of
    the overlap and diagonalizes with the LAPACK symmetric drivers; the
    returned eigenvectors are S-orthonormal.
    """
    if h.dim != s.dim:
        raise ConfigurationError("H and S have different dimensions")
    if not 1 <= n_states <= h.dim:
        raise ConfigurationError("n_states out of range")
    try:
        w, v = eigh(h.to_dense(), s.to_dense(), subset_by_index=(0, n_states - 1))
    except LinAlgError as exc:
        raise OverlapNotPositiveDefiniteError(
            "overlap matrix is not positive definite"
        ) from exc
    return [(float(w[i]), v[:, i].copy()) for i in range(n_states)]
