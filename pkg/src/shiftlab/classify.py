"""Construction and classification of invariant subspaces.

Every invariant subspace of the truncated model is produced here from its
defining data: a splitting choice (Beurling factor and/or conjugate model
part), or a 2x2 boundary-unitary coefficient matrix, whose nonproportional
first column yields the nonsplitting family.  Generator ladders are closed
under the shift action (exact index arithmetic), so the constructed spans are
stable in the seed degree and independent of the construction route.
"""

from __future__ import annotations

import dataclasses
from typing import NamedTuple

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    CoprimalityError,
    DomainError,
    ExtremePointError,
    ShiftlabError,
    TruncationOverflowError,
)
from .fourier import (
    FourierSeries,
    Grid,
    fourier_from_samples,
    samples_from_fourier,
    boundary_product,
)
from .inner_outer import (
    BlaschkeSpec,
    OuterFunction,
    blaschke_from_series,
    blaschke_series,
    check_nonextreme,
    is_coprime,
)
from .subspaces import (
    Subspace,
    ambient_dim,
    orthonormalize,
    pminus_model_space,
    gap,
    _beurling_ladder,
    _minus_rows,
    _plus_rows,
)

__all__ = [
    "ThetaMatrix",
    "SplittingSpec",
    "Lambda",
    "ExampleResult",
    "ProportionalityVerdict",
    "theta_unitarity_defect",
    "construct_splitting",
    "construct_nonsplitting",
    "parametrize_theta",
    "example_subspace",
    "apply_omega",
    "proportionality_test",
    "best_fit_omega",
]


def _effective_support(block: np.ndarray) -> int:
    mags = np.abs(block)
    top = float(np.max(mags))
    if top == 0.0:
        return 0
    return int(np.max(np.nonzero(mags > 1e-13 * top)[0]))


@dataclasses.dataclass(frozen=True)
class ThetaMatrix:
    """Four analytic series assembling a boundary-unitary 2x2 matrix.

    The matrix with columns (theta11, theta12) and (conj theta21, conj
    theta22) must be unitary on the grid; equivalently both rows have unit
    pointwise norm and theta11*theta21 + theta12*theta22 vanishes.
    """

    theta11: FourierSeries
    theta12: FourierSeries
    theta21: FourierSeries
    theta22: FourierSeries
    provenance: dict | None = None

    def __post_init__(self):
        order = self.theta11.order
        for name in ("theta12", "theta21", "theta22"):
            if getattr(self, name).order != order:
                raise DomainError("all four series must share one order")
        for name in ("theta11", "theta12", "theta21", "theta22"):
            s = getattr(self, name)
            if s.norm() > 0 and float(np.linalg.norm(s.minus_block())) > TOL.support_slop * s.norm():
                raise DomainError(f"{name} must be analytic (support in [0, N])")
        defect = theta_unitarity_defect(self)
        if defect > TOL.unitarity:
            raise DomainError(
                f"matrix is not boundary-unitary (defect {defect:.3e})"
            )

    @property
    def order(self) -> int:
        return self.theta11.order

    def entries_sampled(self, grid: Grid) -> tuple[np.ndarray, ...]:
        return tuple(
            samples_from_fourier(getattr(self, n), grid)
            for n in ("theta11", "theta12", "theta21", "theta22")
        )

    def to_json_dict(self) -> dict:
        out = {
            name: getattr(self, name).to_json_dict()
            for name in ("theta11", "theta12", "theta21", "theta22")
        }
        out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "ThetaMatrix":
        return cls(
            FourierSeries.from_json_dict(data["theta11"]),
            FourierSeries.from_json_dict(data["theta12"]),
            FourierSeries.from_json_dict(data["theta21"]),
            FourierSeries.from_json_dict(data["theta22"]),
            data.get("provenance"),
        )


@dataclasses.dataclass(frozen=True)
class SplittingSpec:
    """Menu for a splitting subspace: the analytic part is zero or a Beurling
    image; the antianalytic part is the full block or a conjugate model space."""

    x: BlaschkeSpec | None = None
    xprime: BlaschkeSpec | None = None
    xprime_full: bool = False

    def to_json_dict(self) -> dict:
        return {
            "x": None if self.x is None else {"theta": self.x.to_json_dict()},
            "xprime": "full"
            if self.xprime_full
            else (None if self.xprime is None else {"theta": self.xprime.to_json_dict()}),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SplittingSpec":
        xd = data.get("x")
        x = None
        if isinstance(xd, dict):
            x = BlaschkeSpec.from_json_dict(xd["theta"])
        elif xd not in (None, "zero"):
            raise DomainError("x must be null, 'zero', or {'theta': ...}")
        xp = data.get("xprime")
        if xp == "full":
            return cls(x, None, True)
        if xp is None:
            return cls(x, None, False)
        if isinstance(xp, dict):
            return cls(x, BlaschkeSpec.from_json_dict(xp["theta"]), False)
        raise DomainError("xprime must be 'full', null, or {'theta': ...}")


@dataclasses.dataclass(frozen=True)
class Lambda:
    """A complex number of modulus one."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if abs(abs(v) - 1.0) > TOL.unimodular:
            raise DomainError(f"{v} is not unimodular")
        object.__setattr__(self, "value", v)


def theta_unitarity_defect(t: ThetaMatrix, grid: Grid | None = None) -> float:
    """Largest pointwise deviation of the 2x2 matrix from unitarity."""
    if grid is None:
        grid = Grid.for_order(t.order)
    s11, s12, s21, s22 = t.entries_sampled(grid)
    g11 = np.abs(s11) ** 2 + np.abs(s12) ** 2 - 1.0
    g22 = np.abs(s21) ** 2 + np.abs(s22) ** 2 - 1.0
    g12 = np.conj(s11 * s21 + s12 * s22)
    half_sum = (g11 + g22) / 2.0
    radius = np.sqrt(((g11 - g22) / 2.0) ** 2 + np.abs(g12) ** 2)
    return float(np.max(np.abs(half_sum) + radius))


def construct_splitting(
    spec: SplittingSpec, order: int, tol: Tolerances = TOL
) -> Subspace:
    """Direct sum of a Beurling image (or zero) and the full antianalytic
    block (or a conjugate model space)."""
    d = ambient_dim(order)
    cols: list[np.ndarray] = []
    if spec.x is not None:
        ladder = _beurling_ladder(spec.x, order, tol)
        for k in range(ladder.shape[1]):
            v = np.zeros(d, dtype=np.complex128)
            v[_plus_rows(order)] = ladder[:, k]
            cols.append(v)
    if spec.xprime_full:
        for p in range(order + 1, 2 * order + 1):
            v = np.zeros(d, dtype=np.complex128)
            v[p] = 1.0
            cols.append(v)
    elif spec.xprime is not None:
        sub = pminus_model_space(spec.xprime, order, tol)
        cols.extend(sub.basis[:, j] for j in range(sub.dim))
    meta = {"kind": "splitting", "spec": spec.to_json_dict()}
    return orthonormalize(cols, order, tol, meta)


def _route_coefficients(t: ThetaMatrix, order: int) -> list[np.ndarray]:
    """Shift-closed generator ladder by exact coefficient bookkeeping."""
    d = ambient_dim(order)
    blocks = {
        name: getattr(t, name).plus_block()
        for name in ("theta11", "theta12", "theta21", "theta22")
    }
    cols: list[np.ndarray] = []
    for plus_name, minus_name in (("theta21", "theta11"), ("theta22", "theta12")):
        tp = blocks[plus_name]
        tm = np.conj(blocks[minus_name])
        for k in range(order + 1):
            v = np.zeros(d, dtype=np.complex128)
            v[k : order + 1] = tp[: order + 1 - k]
            qs = np.arange(1, order - k + 1)
            if qs.size:
                # index -q holds the conjugate of coefficient k+q
                v[order + 1 + (order - qs)] = tm[k + qs]
            cols.append(v)
    return cols


def _route_samples(t: ThetaMatrix, order: int, grid: Grid) -> list[np.ndarray]:
    """The same ladder through the compact route: apply the pointwise adjoint
    of the boundary matrix to monomial pairs, then project each slot."""
    s11, s12, s21, s22 = t.entries_sampled(grid)
    m = grid.size
    d = ambient_dim(order)
    cols: list[np.ndarray] = []
    power = np.ones(m, dtype=np.complex128)
    for k in range(order + 1):
        for plus_s, minus_s in ((s21, np.conj(s11)), (s22, np.conj(s12))):
            plus_hat = np.fft.fft(plus_s * power) / m
            minus_hat = np.fft.fft(minus_s * power) / m
            v = np.zeros(d, dtype=np.complex128)
            v[_plus_rows(order)] = plus_hat[: order + 1]
            v[_minus_rows(order)] = minus_hat[m - order :]
            cols.append(v)
        power = power * grid.points
    return cols


class ProportionalityVerdict(NamedTuple):
    proportional: bool
    theta: BlaschkeSpec | None
    theta_prime: BlaschkeSpec | None
    omega: np.ndarray | None


def proportionality_test(
    t: ThetaMatrix, tol: Tolerances = TOL, grid: Grid | None = None
) -> ProportionalityVerdict:
    """Decide whether the first-column entries are scalar multiples of one
    inner function, and if so return the normalizing data.

    Decided on boundary samples by singular values, so unimodular-constant
    ambiguity and near-zero coefficients cannot fool the test.
    """
    if grid is None:
        grid = Grid.for_order(t.order)
    s11, s12, _, _ = t.entries_sampled(grid)
    stack = np.vstack([s11, s12])
    u, s, _ = np.linalg.svd(stack, full_matrices=False)
    if s[0] == 0.0 or s[1] > tol.rank_rel * s[0]:
        return ProportionalityVerdict(False, None, None, None)
    alpha = u[:, 0]
    pivot = int(np.argmax(np.abs(alpha)))
    phase = alpha[pivot] / abs(alpha[pivot])
    alpha = alpha / phase
    a1, a2 = complex(alpha[0]), complex(alpha[1])
    theta_vals = np.conj(a1) * s11 + np.conj(a2) * s12
    theta_series = fourier_from_samples(theta_vals, grid, t.order).series
    theta = blaschke_from_series(theta_series, grid, tol)
    prime_series = t.theta21.scaled(np.conj(a2)) - t.theta22.scaled(np.conj(a1))
    theta_prime = blaschke_from_series(prime_series, grid, tol)
    omega = np.array([[np.conj(a1), np.conj(a2)], [a2, -a1]], dtype=np.complex128)
    return ProportionalityVerdict(True, theta, theta_prime, omega)


def construct_nonsplitting(
    t: ThetaMatrix,
    gen_degree: int | None = None,
    tol: Tolerances = TOL,
    check_routes: bool = True,
) -> Subspace:
    """Invariant subspace generated by pushing monomial pairs through the
    boundary matrix, closed under the shift action.

    When the first-column entries are proportional, the data is normalized to
    its splitting form instead of keeping the 2x2 description.  Otherwise both
    the coefficient route and the sampled compact route are computed and must
    agree.
    """
    order = t.order
    if gen_degree is None:
        gen_degree = order // 4
    defect = theta_unitarity_defect(t)
    if defect > tol.unitarity:
        raise DomainError(f"unitarity defect {defect:.3e} above tolerance")
    max_sup = max(
        _effective_support(getattr(t, n).plus_block())
        for n in ("theta11", "theta12", "theta21", "theta22")
    )
    if gen_degree + max_sup > order:
        raise TruncationOverflowError(
            f"generator degree {gen_degree} plus entry support {max_sup} "
            f"exceeds the window at order {order}",
            0.0,
        )

    verdict = proportionality_test(t, tol)
    if verdict.proportional:
        sub = construct_splitting(
            SplittingSpec(x=verdict.theta_prime, xprime=verdict.theta), order, tol
        )
        meta = {
            "kind": "nonsplitting-normalized",
            "theta": verdict.theta.to_json_dict(),
            "theta_prime": verdict.theta_prime.to_json_dict(),
            "gen_degree": gen_degree,
        }
        return Subspace(sub.basis, order, meta)

    cols = _route_coefficients(t, order)
    sub = orthonormalize(
        cols,
        order,
        tol,
        meta={"kind": "nonsplitting", "gen_degree": gen_degree},
    )
    if check_routes:
        grid = Grid.for_order(order)
        alt = orthonormalize(_route_samples(t, order, grid), order, tol)
        route_gap = gap(sub, alt)
        if route_gap > tol.route_gap:
            raise ShiftlabError(
                f"construction routes disagree (gap {route_gap:.3e})"
            )
        meta = dict(sub.meta or {})
        meta["route_gap"] = route_gap
        sub = Subspace(sub.basis, order, meta)
    return sub


def parametrize_theta(
    g1: OuterFunction,
    a1: BlaschkeSpec,
    a2: BlaschkeSpec,
    b1: BlaschkeSpec,
    b2: BlaschkeSpec,
    lam: Lambda,
    tol: Tolerances = TOL,
) -> ThetaMatrix:
    """Assemble the boundary matrix from free data: bounded-away-from-extreme
    outer data, two arbitrary inner factors, two coprime inner factors and a
    unimodular constant."""
    report = check_nonextreme(g1, tol)
    if not report.passes:
        raise ExtremePointError(
            f"outer data is extreme within tolerance (margin {report.margin:.3e})"
        )
    if not is_coprime(b1, b2, tol):
        raise CoprimalityError("the two designated inner factors share a zero")
    order = g1.series.order
    from .inner_outer import complementary_outer

    g2 = complementary_outer(g1, tol)
    grid = Grid.for_order(order)
    sa1 = blaschke_series(a1, order, tol)
    sa2 = blaschke_series(a2, order, tol)
    sb1 = blaschke_series(b1, order, tol)
    sb2 = blaschke_series(b2, order, tol)

    def triple(x: FourierSeries, y: FourierSeries, z: FourierSeries) -> FourierSeries:
        return boundary_product(boundary_product(x, y, grid), z, grid)

    t11 = triple(sa1, sb1, g1.series)
    t12 = triple(sa1, sb2, g2.series)
    t21 = triple(sa2, sb2, g2.series).scaled(-lam.value)
    t22 = triple(sa2, sb1, g1.series).scaled(lam.value)
    provenance = {
        "g1_modulus_samples": [float(x) for x in g1.modulus_samples],
        "alpha1": a1.to_json_dict(),
        "alpha2": a2.to_json_dict(),
        "beta1": b1.to_json_dict(),
        "beta2": b2.to_json_dict(),
        "lambda": [float(lam.value.real), float(lam.value.imag)],
    }
    return ThetaMatrix(t11, t12, t21, t22, provenance)


class ExampleResult(NamedTuple):
    subspace: Subspace
    beta: complex
    theta: ThetaMatrix


def example_subspace(
    a: complex, alpha: complex, order: int, tol: Tolerances = TOL
) -> ExampleResult:
    """The graph family: analytic vectors paired with their value at an
    interior point, scaled onto a one-dimensional antianalytic kernel.

    Returns the explicit subspace, the pairing coefficient, and the boundary
    matrix whose general construction must reproduce the same span.
    """
    a = complex(a)
    alpha = complex(alpha)
    if abs(alpha) == 0.0:
        raise DomainError(
            "alpha = 0 degenerates the family: the first-column entries "
            "become proportional"
        )
    if abs(alpha) >= 1.0:
        raise DomainError("alpha must lie in the open unit disk")
    b = BlaschkeSpec((a,))  # validates the disk margin
    beta = np.conj(alpha) * (1.0 - abs(a) ** 2) / np.sqrt(1.0 - abs(alpha) ** 2)

    d = ambient_dim(order)
    cols = []
    qs = np.arange(1, order + 1)
    kernel = a ** (qs - 1.0)  # coefficient at index -q of the antianalytic kernel
    for k in range(order + 1):
        v = np.zeros(d, dtype=np.complex128)
        v[k] = 1.0
        v[order + 1 + (order - qs)] = beta * (a**k) * kernel
        cols.append(v)
    sub = orthonormalize(
        cols,
        order,
        tol,
        meta={
            "kind": "example",
            "a": [a.real, a.imag],
            "alpha": [alpha.real, alpha.imag],
            "beta": [float(beta.real), float(beta.imag)],
        },
    )

    s = blaschke_series(b, order, tol).scaled(alpha)
    c = float(np.sqrt(1.0 - abs(alpha) ** 2))
    t12 = FourierSeries.monomial(0, order, -c)
    t21 = FourierSeries.monomial(0, order, c)
    theta = ThetaMatrix(
        s,
        t12,
        t21,
        s,
        provenance={
            "example": {
                "a": [a.real, a.imag],
                "alpha": [alpha.real, alpha.imag],
                "beta": [float(beta.real), float(beta.imag)],
            }
        },
    )
    return ExampleResult(sub, complex(beta), theta)


def apply_omega(t: ThetaMatrix, omega: np.ndarray, tol: Tolerances = TOL) -> ThetaMatrix:
    """Recombine the factorization by a constant unitary acting on the
    intermediate coordinates; the generated subspace is unchanged."""
    omega = np.asarray(omega, dtype=np.complex128)
    if omega.shape != (2, 2):
        raise DomainError("omega must be a 2x2 matrix")
    if float(np.linalg.norm(omega.conj().T @ omega - np.eye(2), 2)) > 1e-12:
        raise DomainError("omega is not unitary")
    w = omega
    t11 = t.theta11.scaled(w[0, 0]) + t.theta12.scaled(w[0, 1])
    t12 = t.theta11.scaled(w[1, 0]) + t.theta12.scaled(w[1, 1])
    t21 = t.theta21.scaled(np.conj(w[0, 0])) + t.theta22.scaled(np.conj(w[0, 1]))
    t22 = t.theta21.scaled(np.conj(w[1, 0])) + t.theta22.scaled(np.conj(w[1, 1]))
    prov = dict(t.provenance or {})
    prov["omega"] = [[[float(x.real), float(x.imag)] for x in row] for row in omega]
    return ThetaMatrix(t11, t12, t21, t22, prov)


def _stacked_matrices(t: ThetaMatrix, grid: Grid) -> np.ndarray:
    s11, s12, s21, s22 = t.entries_sampled(grid)
    out = np.empty((grid.size, 2, 2), dtype=np.complex128)
    out[:, 0, 0] = s11
    out[:, 0, 1] = np.conj(s21)
    out[:, 1, 0] = s12
    out[:, 1, 1] = np.conj(s22)
    return out


def best_fit_omega(
    t1: ThetaMatrix, t2: ThetaMatrix, grid: Grid | None = None
) -> tuple[np.ndarray, float]:
    """Best constant unitary aligning the two boundary matrices, and the
    sup-norm residual it leaves."""
    if grid is None:
        grid = Grid.for_order(max(t1.order, t2.order))
    m1 = _stacked_matrices(t1, grid)
    m2 = _stacked_matrices(t2, grid)
    # least-squares recombination; the first factor is unitary pointwise
    accum = np.einsum("kij,klj->il", m2, np.conj(m1)) / grid.size
    u, _, vh = np.linalg.svd(accum)
    omega = u @ vh
    residual_mats = m2 - np.einsum("ij,kjl->kil", omega, m1)
    sv = np.linalg.svd(residual_mats, compute_uv=False)
    return omega, float(np.max(sv[:, 0]))
