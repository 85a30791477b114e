"""Truncated Fourier calculus on the unit circle.

A function on the circle is carried as coefficients on the symmetric index
window [-N, N].  Analytic vectors live on [0, N], antianalytic vectors on
[-N, -1].  Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import dataclasses
from typing import NamedTuple

import numpy as np

from .config import TOL, Tolerances, default_grid_size, minimum_grid_size
from .errors import DomainError, GridSizeError, TruncationOverflowError

__all__ = [
    "FourierSeries",
    "Grid",
    "BandLimited",
    "samples_from_fourier",
    "fourier_from_samples",
    "project_plus",
    "project_minus",
    "shift_apply",
    "costar_apply",
    "j_map",
    "tilde",
    "conjugate_boundary",
    "boundary_product",
]


@dataclasses.dataclass(frozen=True)
class FourierSeries:
    """Coefficients c_n for n = -order..order, stored in ascending index order.

    The squared norm is the plain l2 norm of the coefficients; by Parseval it
    agrees with the quadrature norm of grid samples for band-limited data.
    """

    coeffs: np.ndarray = dataclasses.field(repr=False)
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("truncation order must be at least 1")
        c = np.asarray(self.coeffs, dtype=np.complex128).copy()
        if c.shape != (2 * self.order + 1,):
            raise DomainError(
                f"expected {2 * self.order + 1} coefficients, got {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "FourierSeries":
        return cls(np.zeros(2 * order + 1, dtype=np.complex128), order)

    @classmethod
    def monomial(cls, n: int, order: int, scale: complex = 1.0) -> "FourierSeries":
        if abs(n) > order:
            raise DomainError(f"index {n} outside window [-{order}, {order}]")
        c = np.zeros(2 * order + 1, dtype=np.complex128)
        c[n + order] = scale
        return cls(c, order)

    @classmethod
    def from_plus_block(cls, block: np.ndarray, order: int) -> "FourierSeries":
        """Series supported on [0, order] from a block of order+1 coefficients."""
        block = np.asarray(block, dtype=np.complex128)
        if block.shape != (order + 1,):
            raise DomainError("plus block must have order+1 entries")
        c = np.zeros(2 * order + 1, dtype=np.complex128)
        c[order:] = block
        return cls(c, order)

    @classmethod
    def from_minus_block(cls, block: np.ndarray, order: int) -> "FourierSeries":
        """Series supported on [-order, -1]; block ascends from index -order."""
        block = np.asarray(block, dtype=np.complex128)
        if block.shape != (order,):
            raise DomainError("minus block must have order entries")
        c = np.zeros(2 * order + 1, dtype=np.complex128)
        c[:order] = block
        return cls(c, order)

    # -- accessors -----------------------------------------------------------

    def coeff(self, n: int) -> complex:
        if abs(n) > self.order:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + self.order])

    def plus_block(self) -> np.ndarray:
        """Coefficients at indices 0..order."""
        return np.array(self.coeffs[self.order :])

    def minus_block(self) -> np.ndarray:
        """Coefficients at indices -order..-1, ascending."""
        return np.array(self.coeffs[: self.order])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def eval_at(self, z: complex) -> complex:
        """Value at a point of the punctured plane (both index blocks summed)."""
        n = np.arange(-self.order, self.order + 1)
        return complex(np.sum(self.coeffs * np.asarray(z, dtype=complex) ** n))

    # -- light arithmetic ----------------------------------------------------

    def scaled(self, factor: complex) -> "FourierSeries":
        return FourierSeries(self.coeffs * factor, self.order)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        self._check_same_order(other)
        return FourierSeries(self.coeffs + other.coeffs, self.order)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        self._check_same_order(other)
        return FourierSeries(self.coeffs - other.coeffs, self.order)

    def _check_same_order(self, other: "FourierSeries") -> None:
        if self.order != other.order:
            raise DomainError("series orders differ")

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "N": self.order,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FourierSeries":
        order = int(data["N"])
        pairs = data["coeffs"]
        c = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
        return cls(c, order)


@dataclasses.dataclass(frozen=True)
class Grid:
    """The size-th roots of unity, size a power of two."""

    size: int

    def __post_init__(self):
        m = int(self.size)
        if m < 4 or (m & (m - 1)) != 0:
            raise GridSizeError(f"grid size must be a power of two >= 4, got {m}")
        object.__setattr__(self, "size", m)
        pts = np.exp(2j * np.pi * np.arange(m) / m)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    points: np.ndarray = dataclasses.field(init=False, repr=False)

    @classmethod
    def for_order(cls, order: int) -> "Grid":
        return cls(default_grid_size(order))


class BandLimited(NamedTuple):
    """A truncated series together with the discarded out-of-band l2 mass."""

    series: FourierSeries
    out_of_band: float


def _require_capacity(grid: Grid, order: int) -> None:
    need = minimum_grid_size(order)
    if grid.size < need:
        raise GridSizeError(
            f"grid of size {grid.size} too small for order {order} (need >= {need})"
        )


def samples_from_fourier(f: FourierSeries, grid: Grid) -> np.ndarray:
    """Evaluate the series at every grid point (entry j at the j-th root)."""
    _require_capacity(grid, f.order)
    m = grid.size
    a = np.zeros(m, dtype=np.complex128)
    a[: f.order + 1] = f.coeffs[f.order :]
    a[m - f.order :] = f.coeffs[: f.order]
    return np.fft.ifft(a) * m


def fourier_from_samples(samples: np.ndarray, grid: Grid, order: int) -> BandLimited:
    """Recover the window coefficients; out-of-band content is measured, not assumed."""
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.shape != (grid.size,):
        raise GridSizeError(
            f"expected {grid.size} samples, got {samples.shape}"
        )
    _require_capacity(grid, order)
    m = grid.size
    hat = np.fft.fft(samples) / m
    c = np.zeros(2 * order + 1, dtype=np.complex128)
    c[order:] = hat[: order + 1]
    c[:order] = hat[m - order :]
    inband = np.linalg.norm(c)
    total = np.linalg.norm(hat)
    oob = float(np.sqrt(max(0.0, total * total - inband * inband)))
    return BandLimited(FourierSeries(c, order), oob)


def project_plus(f: FourierSeries) -> FourierSeries:
    """Zero every coefficient with negative index."""
    c = f.coeffs.copy()
    c[: f.order] = 0.0
    return FourierSeries(c, f.order)


def project_minus(f: FourierSeries) -> FourierSeries:
    """Zero every coefficient with index >= 0."""
    c = f.coeffs.copy()
    c[f.order :] = 0.0
    return FourierSeries(c, f.order)


def _support_mass(f: FourierSeries, lo: int, hi: int) -> float:
    """l2 mass of coefficients outside the index range [lo, hi]."""
    keep = np.zeros_like(f.coeffs)
    keep[lo + f.order : hi + f.order + 1] = f.coeffs[lo + f.order : hi + f.order + 1]
    return float(np.linalg.norm(f.coeffs - keep))


def _require_support(f: FourierSeries, lo: int, hi: int, what: str, tol: Tolerances) -> None:
    nrm = f.norm()
    if nrm == 0.0:
        return
    if _support_mass(f, lo, hi) > tol.support_slop * nrm:
        raise DomainError(f"{what} requires support inside [{lo}, {hi}]")


def shift_apply(f: FourierSeries, tol: Tolerances = TOL) -> FourierSeries:
    """Multiply an analytic vector by z; the top coefficient leaves the window.

    Raises when the departing mass exceeds the tail budget.
    """
    _require_support(f, 0, f.order, "shift_apply", tol)
    nrm = f.norm()
    lost = abs(f.coeffs[-1])
    if nrm > 0.0 and lost > tol.tail_budget * nrm:
        raise TruncationOverflowError(
            f"shift would discard relative mass {lost / nrm:.3e}", lost / nrm
        )
    c = np.zeros_like(f.coeffs)
    c[f.order + 1 :] = f.coeffs[f.order : -1]
    return FourierSeries(c, f.order)


def costar_apply(g: FourierSeries, tol: Tolerances = TOL) -> FourierSeries:
    """Multiply an antianalytic vector by z, then project back; exact bookkeeping.

    The coefficient at index -1 moves to index 0 and is discarded by the
    projection; nothing ever crosses the lower window edge.
    """
    _require_support(g, -g.order, -1, "costar_apply", tol)
    c = np.zeros_like(g.coeffs)
    c[1 : g.order] = g.coeffs[: g.order - 1]
    return FourierSeries(c, g.order)


def j_map(f: FourierSeries, tol: Tolerances = TOL) -> FourierSeries:
    """Isometry from analytic to antianalytic coefficients: a_n goes to index -(n+1).

    The image of the top index falls outside the window; its mass is held to
    the tail budget.
    """
    _require_support(f, 0, f.order, "j_map", tol)
    nrm = f.norm()
    lost = abs(f.coeffs[-1])
    if nrm > 0.0 and lost > tol.tail_budget * nrm:
        raise TruncationOverflowError(
            f"top coefficient would leave the window, relative mass {lost / nrm:.3e}",
            lost / nrm,
        )
    c = np.zeros_like(f.coeffs)
    # a_n at position order+n lands at index -(n+1), position order-1-n.
    for n in range(f.order):
        c[f.order - 1 - n] = f.coeffs[f.order + n]
    return FourierSeries(c, f.order)


def tilde(f: FourierSeries) -> FourierSeries:
    """Conjugate every coefficient in place: realizes conj(f(conj z))."""
    return FourierSeries(np.conj(f.coeffs), f.order)


def conjugate_boundary(f: FourierSeries) -> FourierSeries:
    """Pointwise complex conjugate on the circle: c_n goes to conj(c_{-n})."""
    return FourierSeries(np.conj(f.coeffs[::-1]), f.order)


def boundary_product(
    f: FourierSeries,
    g: FourierSeries,
    grid: Grid | None = None,
    return_loss: bool = False,
):
    """Pointwise product on the circle, truncated back to the window.

    Computed by sampling on an oversampled grid so the convolution is
    alias-free; with ``return_loss=True`` the discarded out-of-band l2 mass
    is returned alongside the series.
    """
    if f.order != g.order:
        raise DomainError("cannot multiply series of different orders")
    if grid is None:
        grid = Grid.for_order(f.order)
    _require_capacity(grid, f.order)
    fs = samples_from_fourier(f, grid)
    gs = samples_from_fourier(g, grid)
    series, oob = fourier_from_samples(fs * gs, grid, f.order)
    if return_loss:
        return series, oob
    return series
