"""Mode entanglement and separability of decomposed Gaussian states.

For pure states the entanglement of modes is the sum of the binary entropies
of the pair Schmidt weights cos^2(theta), sin^2(theta).  For isotropic mixed
states each pair reduces to an effective two-qubit problem whose partial
transpose is negative exactly when kappa > (1 - lambda0^2) / 2, which makes
the per-pair test necessary and sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from .decompose import ModewiseDecomposition
from .errors import InvalidInputError

_LN2 = float(np.log(2.0))
_PURITY_TOL = 1e-9
_PAIR_CONSTRAINT_TOL = 1e-9


@dataclass
class EntanglementReport:
    """Per-pair and aggregate entanglement data for one decomposition.

    ``pair_entropies`` and ``total_modes_entropy`` (bits) are populated for
    pure decompositions only.  ``negativity_sum`` adds up |min PT eigenvalue|
    over NPT pairs; it is a convenience magnitude for mixed states, not a
    measure with an operational definition here.
    """

    pair_entropies: list[float] = field(default_factory=list)
    total_modes_entropy: float = 0.0
    pair_npt_flags: list[bool] = field(default_factory=list)
    separable: bool = True
    negativity_sum: float = 0.0


def binary_entropy(p: float) -> float:
    """Binary entropy -p log2 p - (1-p) log2 (1-p) in bits, with 0 log 0 = 0."""
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise InvalidInputError(f"probability must lie in [0, 1], got {p!r}")
    p = min(max(p, 0.0), 1.0)
    return float(-(xlogy(p, p) + xlogy(1.0 - p, 1.0 - p)) / _LN2)


def _clamped_lambda0(lambda0: float) -> float:
    if not -1e-9 <= lambda0 <= 1.0 + 1e-9:
        raise InvalidInputError(f"lambda0 must lie in [0, 1], got {lambda0!r}")
    return min(max(lambda0, 0.0), 1.0)


def ppt_pair_entangled(lambda0: float, kappa: float) -> bool:
    """Partial-transpose test for one pair: entangled iff kappa > (1 - lambda0^2)/2.

    The bound is strict: kappa at the threshold counts as separable.  A 2e-12
    guard absorbs float rounding of the threshold and keeps the verdict
    equivalent to ``ppt_min_eigenvalue(...) < -1e-12``.
    """
    lambda0 = _clamped_lambda0(lambda0)
    if kappa < -1e-12 or kappa > lambda0 + 1e-9:
        raise InvalidInputError(
            f"kappa must satisfy 0 <= kappa <= lambda0, got kappa={kappa!r}, lambda0={lambda0!r}"
        )
    return kappa > 0.5 * (1.0 - lambda0**2) + 2e-12


def _check_pair_constraint(lambda0: float, lam: float, kappa: float):
    lambda0 = _clamped_lambda0(lambda0)
    if lam < -1e-12 or kappa < -1e-12:
        raise InvalidInputError(f"lambda and kappa must be nonnegative, got {lam!r}, {kappa!r}")
    gap = abs(kappa**2 + lam**2 - lambda0**2)
    if gap > _PAIR_CONSTRAINT_TOL:
        raise InvalidInputError(
            f"pair parameters violate kappa^2 + lambda^2 = lambda0^2 by {gap:.3e}"
        )
    return lambda0


def two_mode_block_matrix(lambda0: float, lam: float, kappa: float) -> np.ndarray:
    """Density matrix of one pair, block diagonal on {|00>,|11>} + {|01>,|10>}.

    Basis order is [|00>, |11>, |01>, |10>]; the matrix has unit trace.
    """
    lambda0 = _check_pair_constraint(lambda0, lam, kappa)
    out = np.zeros((4, 4))
    out[0, 0] = 0.25 * ((1.0 + lam) ** 2 + kappa**2)
    out[1, 1] = 0.25 * ((1.0 - lam) ** 2 + kappa**2)
    out[0, 1] = out[1, 0] = 0.5 * kappa
    out[2, 2] = out[3, 3] = 0.25 * (1.0 - lambda0**2)
    return out


def ppt_min_eigenvalue(lambda0: float, lam: float, kappa: float) -> float:
    """Minimum eigenvalue of the partially transposed pair density matrix.

    Partial transposition swaps the off-diagonal elements between the two
    2x2 blocks; the result is negative exactly when the pair is entangled.
    """
    rho = two_mode_block_matrix(lambda0, lam, kappa)
    swapped = rho.copy()
    swapped[0, 1] = swapped[1, 0] = 0.0
    swapped[2, 3] = swapped[3, 2] = 0.5 * kappa
    return float(np.linalg.eigvalsh(swapped)[0])


def pure_mode_entanglement(decomp: ModewiseDecomposition) -> EntanglementReport:
    """Entanglement of modes of a pure decomposition, in bits.

    Each pair contributes the binary entropy of its Schmidt weight
    cos^2(theta); decoupled modes are local vacua and contribute nothing.
    """
    if abs(decomp.lambda0 - 1.0) > _PURITY_TOL:
        raise InvalidInputError(
            f"entanglement of modes needs a pure decomposition, lambda0 = {decomp.lambda0!r}"
        )
    report = _pair_report(decomp)
    report.pair_entropies = [binary_entropy(np.cos(p.theta) ** 2) for p in decomp.pairs]
    report.total_modes_entropy = float(sum(report.pair_entropies))
    return report


def isotropic_separability(decomp: ModewiseDecomposition) -> EntanglementReport:
    """Separability verdict for an isotropic decomposition.

    The state is separable across the bipartition iff every pair passes the
    partial-transpose test.  Entropy fields are filled when the input happens
    to be pure.
    """
    report = _pair_report(decomp)
    if abs(decomp.lambda0 - 1.0) <= _PURITY_TOL:
        report.pair_entropies = [binary_entropy(np.cos(p.theta) ** 2) for p in decomp.pairs]
        report.total_modes_entropy = float(sum(report.pair_entropies))
    return report


def _pair_report(decomp: ModewiseDecomposition) -> EntanglementReport:
    lambda0 = _clamped_lambda0(decomp.lambda0)
    flags = [ppt_pair_entangled(lambda0, min(p.kappa, lambda0)) for p in decomp.pairs]
    negativity = 0.0
    for pair in decomp.pairs:
        kappa = min(pair.kappa, lambda0)
        lam = float(np.sqrt(max(lambda0**2 - kappa**2, 0.0)))
        negativity += max(0.0, -ppt_min_eigenvalue(lambda0, lam, kappa))
    return EntanglementReport(
        pair_npt_flags=flags,
        separable=not any(flags),
        negativity_sum=float(negativity),
    )
