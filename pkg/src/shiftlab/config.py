"""Central numeric configuration: truncation defaults and every tolerance.

All tolerances used anywhere in the package live in one frozen record so
verification suites can sweep or override them coherently.
"""

from __future__ import annotations

import dataclasses

DEFAULT_ORDER = 128


def next_power_of_two(m: int) -> int:
    return 1 << (int(m) - 1).bit_length()


def default_grid_size(order: int) -> int:
    """Power-of-two grid large enough for alias-free products of band-limited
    factors: at least four times the coefficient window length."""
    return next_power_of_two(4 * (2 * order + 1))


def minimum_grid_size(order: int) -> int:
    return 2 * (2 * order + 1)


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Every tolerance in the package, by name."""

    grid_roundtrip: float = 1e-12     # sample/transform round trip, relative
    tail_budget: float = 1e-9         # relative mass an op may push past the window
    support_slop: float = 1e-12       # relative mass tolerated off the declared support
    blaschke_margin: float = 1e-6     # zeros must satisfy |a| < 1 - margin
    unimodular: float = 1e-14         # | |c| - 1 | bound for unimodular constants
    inner_boundary: float = 1e-10     # | |series| - 1 | on the grid for inner functions
    modulus_floor: float = 1e-6       # smallest admissible boundary-modulus sample
    extremality_floor: float = 1e-6   # min over grid of 1 - |g|^2 required of outer data
    outer_modulus: float = 1e-8       # sup-norm agreement of outer series with its modulus
    zero_merge: float = 1e-9          # zeros closer than this count as shared
    rank_rel: float = 1e-10           # singular-value threshold, relative to the largest
    orthonormal: float = 1e-12        # ||B*B - I|| allowed for a stored basis
    model_orthogonality: float = 1e-10
    membership: float = 1e-10         # relative distance allowed for "f lies in K"
    lemma_gap: float = 1e-10          # agreement of independently computed subspaces
    invariance: float = 1e-7          # residual below which a subspace counts invariant
    mask: float = 1e-9                # edge-mass threshold triggering the orphan check
    defect: float = 1e-6              # eigenvalue threshold for defect counting
    edge_share: float = 0.5           # mass fraction on the edge zone that disqualifies
    unitarity: float = 1e-8           # boundary-unitarity defect allowed for a matrix
    route_gap: float = 1e-9           # agreement of the two construction routes
    cross_gap: float = 1e-8           # explicit vs general construction agreement
    omega_gap: float = 1e-9           # gap under a constant unitary recombination
    distinct_gap: float = 0.1         # gap above which subspaces count as different
    omega_fit: float = 0.05           # best-fit recombination residual threshold
    reducing: float = 1e-7            # residual bound for a reducing verdict
    reducing_fail: float = 1e-2       # complement residual expected of non-reducing data

    def replace(self, **overrides: float) -> "Tolerances":
        return dataclasses.replace(self, **overrides)

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in dataclasses.fields(cls))


TOL = Tolerances()
