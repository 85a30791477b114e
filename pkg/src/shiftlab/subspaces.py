"""Finite-dimensional subspaces of the truncated analytic-plus-antianalytic space.

The ambient space at order N has dimension (N+1) + N: coefficients 0..N of the
analytic block stacked over coefficients -N..-1 (ascending) of the antianalytic
block.  The verification engine (invariance, gap, splitting, reducing, defect)
operates on orthonormal coefficient bases.
"""

from __future__ import annotations

import dataclasses
from typing import NamedTuple

import numpy as np

from .config import TOL, Tolerances
from .errors import (
    AmbientMismatchError,
    DomainError,
    EdgeContaminationError,
)
from .fourier import (
    FourierSeries,
    boundary_product,
    conjugate_boundary,
)
from .inner_outer import BlaschkeSpec, blaschke_series

__all__ = [
    "ambient_dim",
    "series_to_ambient",
    "ambient_to_series",
    "Subspace",
    "AmbientOperator",
    "orthonormalize",
    "model_space",
    "conjugation_apply",
    "pminus_model_space",
    "gap",
    "containment_gap",
    "embed_subspace",
    "invariance_residual",
    "SplitVerdict",
    "splitting_test",
    "ReducingVerdict",
    "reducing_test",
    "defect_dimension",
    "edge_zone",
]


def ambient_dim(order: int) -> int:
    return 2 * order + 1


def series_to_ambient(f: FourierSeries) -> np.ndarray:
    """Stack the analytic block over the antianalytic block."""
    return np.concatenate([f.coeffs[f.order :], f.coeffs[: f.order]])


def ambient_to_series(v: np.ndarray, order: int) -> FourierSeries:
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (ambient_dim(order),):
        raise DomainError("ambient vector has the wrong dimension")
    c = np.concatenate([v[order + 1 :], v[: order + 1]])
    return FourierSeries(c, order)


def _plus_rows(order: int) -> slice:
    return slice(0, order + 1)


def _minus_rows(order: int) -> slice:
    return slice(order + 1, 2 * order + 1)


def edge_zone(order: int) -> np.ndarray:
    """Ambient positions of the top decile of analytic Fourier indices."""
    width = max(1, (order + 1) // 10)
    return np.arange(order - width + 1, order + 1)


@dataclasses.dataclass(frozen=True)
class Subspace:
    """Orthonormal coefficient basis (columns) plus construction metadata."""

    basis: np.ndarray = dataclasses.field(repr=False)
    order: int
    meta: dict | None = None

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128).copy()
        d = ambient_dim(self.order)
        if b.ndim != 2 or b.shape[0] != d:
            raise DomainError(f"basis must be a {d}-row matrix")
        if b.shape[1] > d:
            raise DomainError("more columns than the ambient dimension")
        if b.shape[1] > 0:
            gram = b.conj().T @ b
            dev = float(np.linalg.norm(gram - np.eye(b.shape[1]), 2))
            if dev > TOL.orthonormal:
                raise DomainError(f"basis is not orthonormal (defect {dev:.3e})")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def empty(cls, order: int, meta: dict | None = None) -> "Subspace":
        return cls(np.zeros((ambient_dim(order), 0), dtype=np.complex128), order, meta)

    def project(self, v: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros_like(v)
        return self.basis @ (self.basis.conj().T @ v)

    def distance(self, v: np.ndarray) -> float:
        """l2 distance from an ambient vector to the span."""
        return float(np.linalg.norm(v - self.project(v)))

    def complement(self) -> "Subspace":
        """Orthocomplement within the ambient space."""
        d = ambient_dim(self.order)
        if self.dim == 0:
            return Subspace(np.eye(d, dtype=np.complex128), self.order)
        u, _, _ = np.linalg.svd(self.basis, full_matrices=True)
        return Subspace(u[:, self.dim :], self.order, meta={"kind": "complement"})

    def to_json_dict(self) -> dict:
        cols = []
        for j in range(self.dim):
            cols.append(
                [[float(x.real), float(x.imag)] for x in self.basis[:, j]]
            )
        return {"ambient_N": self.order, "basis": cols, "meta": self.meta}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Subspace":
        order = int(data["ambient_N"])
        cols = data["basis"]
        d = ambient_dim(order)
        b = np.zeros((d, len(cols)), dtype=np.complex128)
        for j, col in enumerate(cols):
            b[:, j] = [complex(re, im) for re, im in col]
        return cls(b, order, data.get("meta"))


@dataclasses.dataclass(frozen=True)
class AmbientOperator:
    """Block truncation of the shift on the analytic block and of the
    compressed shift on the antianalytic block.

    Off the domain mask (the top analytic index, where shifted mass leaves
    the window) the matrix is an exact partial isometry in coefficient
    arithmetic.
    """

    order: int
    matrix: np.ndarray = dataclasses.field(repr=False)
    domain_mask: tuple[int, ...]

    @classmethod
    def for_order(cls, order: int) -> "AmbientOperator":
        d = ambient_dim(order)
        m = np.zeros((d, d), dtype=np.complex128)
        for p in range(order):  # analytic block: index p -> p + 1
            m[p + 1, p] = 1.0
        for p in range(order + 1, 2 * order):  # antianalytic block, ascending
            m[p + 1, p] = 1.0
        # position 2*order holds index -1; its image (index 0) is projected out
        m.setflags(write=False)
        return cls(order, m, (order,))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v


def orthonormalize(
    vectors, order: int, tol: Tolerances = TOL, meta: dict | None = None
) -> Subspace:
    """Numerically stable span with a rank decision relative to the largest
    singular value.  All-zero input yields the empty subspace."""
    cols = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
    if not cols:
        return Subspace.empty(order, meta)
    a = np.column_stack(cols)
    if a.shape[0] != ambient_dim(order):
        raise DomainError("vectors do not match the ambient dimension")
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Subspace.empty(order, meta)
    rank = int(np.sum(s > tol.rank_rel * s[0]))
    return Subspace(u[:, :rank], order, meta)


def _beurling_ladder(theta: BlaschkeSpec, order: int, tol: Tolerances) -> np.ndarray:
    """Analytic-block columns spanning the truncated image of multiplication
    by the inner function: every admissible monomial shift of its series."""
    t = blaschke_series(theta, order, tol).plus_block()
    top = order - theta.degree
    cols = np.zeros((order + 1, top + 1), dtype=np.complex128)
    for k in range(top + 1):
        cols[k:, k] = t[: order + 1 - k]
    return cols


def model_space(theta: BlaschkeSpec, order: int, tol: Tolerances = TOL) -> Subspace:
    """Orthocomplement of the shifted-series ladder inside the analytic block.

    Dimension equals the number of zeros, counted with multiplicity.
    """
    ladder = _beurling_ladder(theta, order, tol)
    u, s, _ = np.linalg.svd(ladder, full_matrices=True)
    rank = int(np.sum(s > tol.rank_rel * s[0])) if s.size else 0
    comp = u[:, rank:]
    d = ambient_dim(order)
    basis = np.zeros((d, comp.shape[1]), dtype=np.complex128)
    basis[_plus_rows(order), :] = comp
    return Subspace(
        basis, order, meta={"kind": "model-space", "theta": theta.to_json_dict()}
    )


def _downshift(f: FourierSeries) -> FourierSeries:
    """Multiply by the reciprocal coordinate: every index drops by one.

    Content at the bottom window index is discarded (callers keep it tiny).
    """
    c = np.zeros_like(f.coeffs)
    c[:-1] = f.coeffs[1:]
    return FourierSeries(c, f.order)


def conjugation_apply(
    theta: BlaschkeSpec, f: FourierSeries, tol: Tolerances = TOL
) -> FourierSeries:
    """The conjugate-linear involution of the model space: multiply the
    boundary conjugate of f by the inner function and by the reciprocal
    coordinate."""
    space = model_space(theta, f.order, tol)
    v = series_to_ambient(f)
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        return f
    if space.distance(v) > tol.membership * nrm:
        raise DomainError("vector does not lie in the model space")
    t = blaschke_series(theta, f.order, tol)
    prod = boundary_product(t, conjugate_boundary(f))
    return _downshift(prod)


def pminus_model_space(
    theta: BlaschkeSpec, order: int, tol: Tolerances = TOL
) -> Subspace:
    """Antianalytic image of the conjugated inner ladder: the span of the
    negative-index parts of conj(theta) times the first deg monomials."""
    t = blaschke_series(theta, order, tol).plus_block()
    deg = theta.degree
    d = ambient_dim(order)
    cols = np.zeros((d, deg), dtype=np.complex128)
    for k in range(deg):
        # coefficient at index -q of conj(theta) * z^k is conj(t[k + q])
        for q in range(1, order + 1):
            if k + q <= order:
                cols[order + 1 + (order - q), k] = np.conj(t[k + q])
    return orthonormalize(
        [cols[:, k] for k in range(deg)],
        order,
        tol,
        meta={"kind": "conjugate-model", "theta": theta.to_json_dict()},
    )


def gap(y1: Subspace, y2: Subspace) -> float:
    """Operator-norm distance between the orthogonal projections."""
    if y1.order != y2.order:
        raise AmbientMismatchError("subspaces live at different orders")
    d = ambient_dim(y1.order)
    p1 = y1.basis @ y1.basis.conj().T if y1.dim else np.zeros((d, d), complex)
    p2 = y2.basis @ y2.basis.conj().T if y2.dim else np.zeros((d, d), complex)
    return float(np.linalg.norm(p1 - p2, 2))


def containment_gap(inner: Subspace, outer: Subspace) -> float:
    """Directed gap: how far the first subspace sticks out of the second.

    Zero when the first is contained in the second; insensitive to extra
    directions of the second.
    """
    if inner.order != outer.order:
        raise AmbientMismatchError("subspaces live at different orders")
    if inner.dim == 0:
        return 0.0
    defect = inner.basis - outer.project(inner.basis)
    return float(np.linalg.norm(defect, 2))


def embed_subspace(y: Subspace, order: int) -> Subspace:
    """Re-express a subspace inside a wider coefficient window."""
    if order < y.order:
        raise AmbientMismatchError("target order must not shrink the window")
    if order == y.order:
        return y
    d = ambient_dim(order)
    b = np.zeros((d, y.dim), dtype=np.complex128)
    b[: y.order + 1, :] = y.basis[_plus_rows(y.order), :]
    # antianalytic index n sits at position n + 2*order + 1
    src = y.basis[_minus_rows(y.order), :]
    for i, n in enumerate(range(-y.order, 0)):
        b[n + 2 * order + 1, :] = src[i, :]
    return Subspace(b, order, meta=y.meta)


def _edge_orphan_check(y: Subspace, a: AmbientOperator, tol: Tolerances) -> None:
    """Reject subspaces whose window-edge content is not fed from within.

    A vector concentrated at the top analytic index is annihilated by the
    truncated shift, which fakes invariance; genuine truncations of invariant
    subspaces also contain the backward image of their edge content.
    """
    for p in a.domain_mask:
        e = np.zeros(ambient_dim(y.order), dtype=np.complex128)
        e[p] = 1.0
        u = y.project(e)
        mass = float(np.linalg.norm(u))
        if mass * mass <= tol.mask:
            continue
        w = a.matrix.conj().T @ (u / mass)
        if y.distance(w) > 0.5:
            raise EdgeContaminationError(
                "subspace holds orphaned mass at the truncation edge; "
                "raise the truncation order and rebuild"
            )


def invariance_residual(
    y: Subspace, a: AmbientOperator, tol: Tolerances = TOL
) -> float:
    """Largest distance from the image of a basis column back to the span."""
    if y.order != a.order:
        raise AmbientMismatchError("subspace and operator orders differ")
    if y.dim == 0:
        return 0.0
    _edge_orphan_check(y, a, tol)
    img = a.matrix @ y.basis
    defect = img - y.basis @ (y.basis.conj().T @ img)
    return float(np.max(np.linalg.norm(defect, axis=0)))


class SplitVerdict(NamedTuple):
    splits: bool
    x_part: Subspace
    xprime_part: Subspace


def splitting_test(y: Subspace, tol: Tolerances = TOL) -> SplitVerdict:
    """A subspace splits when its block projections account for its whole
    dimension."""
    order = y.order
    bp = np.zeros_like(y.basis)
    bp[_plus_rows(order), :] = y.basis[_plus_rows(order), :]
    bm = np.zeros_like(y.basis)
    bm[_minus_rows(order), :] = y.basis[_minus_rows(order), :]

    def _rank_and_span(mat: np.ndarray, kind: str) -> tuple[int, Subspace]:
        if mat.shape[1] == 0 or not np.any(mat):
            return 0, Subspace.empty(order, {"kind": kind})
        u, s, _ = np.linalg.svd(mat, full_matrices=False)
        # columns are block projections of unit vectors; threshold on the
        # unit scale so a vanishing block does not promote noise to rank
        rank = int(np.sum(s > tol.rank_rel * max(1.0, s[0])))
        return rank, Subspace(u[:, :rank], order, {"kind": kind})

    rank_p, x_part = _rank_and_span(bp, "block-plus")
    rank_m, xprime_part = _rank_and_span(bm, "block-minus")
    return SplitVerdict(rank_p + rank_m == y.dim, x_part, xprime_part)


class ReducingVerdict(NamedTuple):
    reducing: bool
    residual: float
    residual_complement: float


def reducing_test(
    y: Subspace, a: AmbientOperator, tol: Tolerances = TOL
) -> ReducingVerdict:
    """Both the subspace and its orthocomplement must be invariant."""
    r1 = invariance_residual(y, a, tol)
    r2 = invariance_residual(y.complement(), a, tol)
    return ReducingVerdict(r1 < tol.reducing and r2 < tol.reducing, r1, r2)


def defect_dimension(y: Subspace, a: AmbientOperator, tol: Tolerances = TOL) -> int:
    """Count of genuine defect directions of the compression to the subspace.

    Directions of the defect eigenspace that live (majority of their mass)
    on the top decile of analytic indices are artifacts of the truncated
    shift and are excluded from the count.
    """
    if y.dim == 0:
        return 0
    res = invariance_residual(y, a, tol)
    if res >= tol.invariance:
        raise DomainError(
            f"subspace is not invariant (residual {res:.3e}); defect undefined"
        )
    t = y.basis.conj().T @ (a.matrix @ y.basis)
    dmat = np.eye(y.dim) - t.conj().T @ t
    vals, vecs = np.linalg.eigh(dmat)
    keep = vals > tol.defect
    k = int(np.sum(keep))
    if k == 0:
        return 0
    ambient = y.basis @ vecs[:, keep]
    zone = edge_zone(y.order)
    zd = ambient[zone, :]
    # rotation-invariant exclusion: each near-unit eigenvalue of the zone
    # Gramian is one defect direction supported on the edge zone
    overlap = np.linalg.eigvalsh(zd.conj().T @ zd)
    excluded = int(np.sum(overlap > tol.edge_share))
    return k - excluded
