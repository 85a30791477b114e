"""Concrete inner functions (finite Blaschke products) and outer functions.

Outer functions are recovered from boundary modulus data by completing the
log-modulus analytically (fold the negative spectrum onto the positive one
and exponentiate).
"""

from __future__ import annotations

import dataclasses
from typing import NamedTuple

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    DomainError,
    ExtremePointError,
    ModulusFloorError,
    TruncationOverflowError,
)
from .fourier import (
    FourierSeries,
    Grid,
    fourier_from_samples,
    samples_from_fourier,
)

__all__ = [
    "BlaschkeSpec",
    "OuterFunction",
    "NonExtremeReport",
    "blaschke_series",
    "blaschke_samples",
    "blaschke_from_series",
    "outer_from_modulus",
    "complementary_outer",
    "check_nonextreme",
    "is_coprime",
]


@dataclasses.dataclass(frozen=True)
class BlaschkeSpec:
    """A finite Blaschke product: zeros in the open disk plus a unimodular constant."""

    zeros: tuple[complex, ...] = ()
    const: complex = 1.0 + 0.0j

    def __post_init__(self):
        zs = tuple(complex(z) for z in self.zeros)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "const", complex(self.const))
        margin = TOL.blaschke_margin
        for z in zs:
            if abs(z) >= 1.0 - margin:
                raise DomainError(
                    f"zero {z} violates the disk margin |z| < 1 - {margin:g}"
                )
        if abs(abs(self.const) - 1.0) > TOL.unimodular:
            raise DomainError(f"constant {self.const} is not unimodular")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def conjugated(self) -> "BlaschkeSpec":
        return BlaschkeSpec(tuple(np.conj(z) for z in self.zeros), np.conj(self.const))

    def to_json_dict(self) -> dict:
        return {
            "zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "const": [float(self.const.real), float(self.const.imag)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BlaschkeSpec":
        zeros = tuple(complex(re, im) for re, im in data.get("zeros", []))
        cr, ci = data.get("const", [1.0, 0.0])
        return cls(zeros, complex(cr, ci))


def blaschke_samples(spec: BlaschkeSpec, grid: Grid) -> np.ndarray:
    """Exact boundary values of the product at every grid point."""
    pts = grid.points
    vals = np.full(grid.size, spec.const, dtype=np.complex128)
    for a in spec.zeros:
        vals *= (pts - a) / (1.0 - np.conj(a) * pts)
    return vals


def blaschke_series(spec: BlaschkeSpec, order: int, tol: Tolerances = TOL) -> FourierSeries:
    """Taylor coefficients of the product, truncated at the window top.

    A single factor with zero a expands as -a + (1-|a|^2) sum_k conj(a)^(k-1) z^k.
    The discarded tail mass is known exactly (the full product has unit norm)
    and must stay inside the tail budget.
    """
    c = np.zeros(order + 1, dtype=np.complex128)
    c[0] = spec.const
    for a in spec.zeros:
        f = np.zeros(order + 1, dtype=np.complex128)
        f[0] = -a
        if order >= 1:
            f[1:] = (1.0 - abs(a) ** 2) * np.conj(a) ** np.arange(order)
        c = np.convolve(c, f)[: order + 1]
    tail = float(np.sqrt(max(0.0, 1.0 - float(np.vdot(c, c).real))))
    if tail > tol.tail_budget:
        raise TruncationOverflowError(
            f"Blaschke tail mass {tail:.3e} exceeds the budget at order {order}", tail
        )
    return FourierSeries.from_plus_block(c, order)


def blaschke_from_series(
    f: FourierSeries, grid: Grid | None = None, tol: Tolerances = TOL
) -> BlaschkeSpec:
    """Recover zeros and constant from the series of a finite Blaschke product.

    The degree comes from the winding number on the grid, the zeros from the
    roots of the (effective-degree) coefficient polynomial inside the disk.
    The reconstruction is validated against the input samples.
    """
    if grid is None:
        grid = Grid.for_order(f.order)
    vals = samples_from_fourier(f, grid)
    mods = np.abs(vals)
    if np.max(np.abs(mods - 1.0)) > 1e-6:
        raise DomainError("series is not unimodular on the grid; not inner")
    phases = np.unwrap(np.angle(np.concatenate([vals, vals[:1]])))
    degree = int(round((phases[-1] - phases[0]) / (2 * np.pi)))
    if degree < 0:
        raise DomainError(f"negative winding number {degree}; not analytic inner data")

    block = f.plus_block()
    scale = float(np.max(np.abs(block)))
    if scale == 0.0:
        raise DomainError("zero series cannot be inner")
    eff = int(np.max(np.nonzero(np.abs(block) > 1e-12 * scale)[0]))
    zeros: list[complex] = []
    if degree > 0:
        roots = np.roots(block[: eff + 1][::-1])
        inside = [complex(r) for r in roots if abs(r) < 1.0 - TOL.blaschke_margin / 2]
        inside.sort(key=lambda z: (round(abs(z), 12), round(np.angle(z), 12)))
        if len(inside) != degree:
            raise DomainError(
                f"found {len(inside)} disk roots but winding number {degree}"
            )
        zeros = inside
    probe = np.full(grid.size, 1.0 + 0.0j)
    for a in zeros:
        probe *= (grid.points - a) / (1.0 - np.conj(a) * grid.points)
    ratios = vals / probe
    const = complex(np.mean(ratios))
    const /= abs(const)
    spec = BlaschkeSpec(tuple(zeros), const)
    recon = blaschke_samples(spec, grid)
    dev = float(np.max(np.abs(recon - vals)))
    if dev > 1e-7:
        raise DomainError(f"inner reconstruction deviates by {dev:.3e}")
    return spec


@dataclasses.dataclass(frozen=True)
class OuterFunction:
    """An outer function as a truncated analytic series plus its boundary modulus.

    Canonically normalized: the value at the origin is real and positive.
    """

    series: FourierSeries
    modulus_samples: np.ndarray = dataclasses.field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.modulus_samples, dtype=np.float64).copy()
        w.setflags(write=False)
        object.__setattr__(self, "modulus_samples", w)
        grid = Grid(len(w))
        got = np.abs(samples_from_fourier(self.series, grid))
        dev = float(np.max(np.abs(got - w)))
        if dev > TOL.outer_modulus:
            raise DomainError(
                f"series modulus deviates from stored samples by {dev:.3e}"
            )
        c0 = self.series.coeff(0)
        if not (c0.real > 0.0 and abs(c0.imag) <= 1e-9 * max(1.0, abs(c0))):
            raise DomainError("outer normalization requires a positive value at 0")

    @property
    def grid(self) -> Grid:
        return Grid(len(self.modulus_samples))

    def boundary_samples(self) -> np.ndarray:
        return samples_from_fourier(self.series, self.grid)

    def to_json_dict(self) -> dict:
        return {
            "series": self.series.to_json_dict(),
            "modulus_samples": [float(x) for x in self.modulus_samples],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "OuterFunction":
        return cls(
            FourierSeries.from_json_dict(data["series"]),
            np.asarray(data["modulus_samples"], dtype=np.float64),
        )


def outer_from_modulus(
    w: np.ndarray, order: int, tol: Tolerances = TOL, grid: Grid | None = None
) -> OuterFunction:
    """The analytic completion of log w, exponentiated and truncated.

    Keeps |g| = w on the grid to machine precision and normalizes g(0) > 0.
    Samples below the modulus floor are rejected; callers clamp explicitly.
    """
    w = np.asarray(w, dtype=np.float64)
    if grid is None:
        grid = Grid(len(w))
    if w.shape != (grid.size,):
        raise DomainError("modulus sample count must match the grid size")
    if np.min(w) < tol.modulus_floor:
        raise ModulusFloorError(
            f"modulus sample {np.min(w):.3e} below floor {tol.modulus_floor:g}"
        )
    m = grid.size
    cep = np.fft.fft(np.log(w)) / m
    folded = np.zeros(m, dtype=np.complex128)
    folded[0] = cep[0]
    folded[1 : m // 2] = 2.0 * cep[1 : m // 2]
    folded[m // 2] = cep[m // 2]
    log_g = np.fft.ifft(folded) * m
    g_samples = np.exp(log_g)
    series, _ = fourier_from_samples(g_samples, grid, order)
    c0 = series.coeff(0)
    if abs(c0) == 0.0:
        raise DomainError("outer construction produced a vanishing value at 0")
    series = series.scaled(np.conj(c0) / abs(c0))
    return OuterFunction(series, w)


def complementary_outer(g1: OuterFunction, tol: Tolerances = TOL) -> OuterFunction:
    """The outer function whose squared modulus completes |g1|^2 to one."""
    s = np.abs(g1.boundary_samples())
    head = 1.0 - s * s
    if float(np.min(head)) < tol.extremality_floor:
        raise ExtremePointError(
            f"1 - |g|^2 dips to {float(np.min(head)):.3e}; outer data is "
            "numerically extreme"
        )
    g2 = outer_from_modulus(np.sqrt(head), g1.series.order, tol, g1.grid)
    check = s * s + np.abs(g2.boundary_samples()) ** 2
    dev = float(np.max(np.abs(check - 1.0)))
    if dev > tol.outer_modulus:
        raise DomainError(f"complementary pair misses the unit identity by {dev:.3e}")
    return g2


class NonExtremeReport(NamedTuple):
    passes: bool
    margin: float


def check_nonextreme(g1: OuterFunction, tol: Tolerances = TOL) -> NonExtremeReport:
    """Margin by which the boundary modulus stays away from one."""
    s = np.abs(g1.boundary_samples())
    margin = float(np.min(1.0 - s * s))
    return NonExtremeReport(margin >= tol.extremality_floor, margin)


def is_coprime(b1: BlaschkeSpec, b2: BlaschkeSpec, tol: Tolerances = TOL) -> bool:
    """No zero of one product within the merge tolerance of a zero of the other."""
    for za in b1.zeros:
        for zb in b2.zeros:
            if abs(za - zb) < tol.zero_merge:
                return False
    return True
