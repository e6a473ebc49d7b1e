"""Modewise decomposition of isotropic fermion Gaussian states.

Given an isotropic covariance matrix (M^2 = -l0^2, pure states being l0 = 1)
and a bipartition of the modes, local orthogonal transforms on each side bring
the state to a direct sum of entangled two-mode blocks

    [[0, -l, 0,  k],
     [l,  0, k,  0],          k^2 + l^2 = l0^2,  tan(2 theta) = k / l,
     [0, -k, 0, -l],
     [-k, 0, l,  0]]

plus decoupled single modes with eigenvalue l0 on either side.  The algorithm
follows the constructive route: Williamson-transform each side, group local
modes into degeneracy classes, factor each class's cross-correlation block
into an orthogonal symplectic transform, and absorb it into the A-side
transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .canonical import (
    beta_blocks,
    is_orthogonal_symplectic,
    lambda_blocks,
    williamson_form,
)
from .errors import InvalidInputError, NotIsotropicError, NumericalConsistencyError
from .gaussian import (
    Bipartition,
    CovarianceMatrix,
    isotropy_deviation,
    isotropy_parameter,
    quadrature_indices,
    restrict,
)


@dataclass(frozen=True)
class DecompositionTolerances:
    """Numerical thresholds of the decomposition.

    iso         isotropy check on M^2
    deg         degeneracy clustering width, relative to lambda0
    cross       allowed residual cross-correlation between decoupled classes
    pair        smallest kappa treated as a genuine pair
    symplectic  orthogonal-symplectic check on extracted class transforms
    """

    iso: float = 1e-8
    deg: float = 1e-8
    cross: float = 1e-7
    pair: float = 1e-8
    symplectic: float = 1e-7


class EntangledPair(NamedTuple):
    """One two-mode squeezed pair linking transformed modes of A and B."""

    lam: float
    kappa: float
    theta: float
    a_mode: int
    b_mode: int


class ResidualMode(NamedTuple):
    """Decoupled transformed mode with its Williamson eigenvalue (= lambda0)."""

    mode: int
    lam: float


@dataclass
class ModewiseDecomposition:
    """Local transforms and block structure of a decomposed state.

    ``transform_a`` / ``transform_b`` act on the quadratures of the A / B
    modes (in partition order); ``pairs`` are sorted by descending squeezing
    angle.  Mode indices in pairs and residuals refer to the transformed local
    bases, 0-based.
    """

    transform_a: np.ndarray
    transform_b: np.ndarray
    pairs: list[EntangledPair]
    residual_a: list[ResidualMode]
    residual_b: list[ResidualMode]
    lambda0: float
    partition: Bipartition = field(repr=False)

    @property
    def n_modes(self) -> int:
        return self.partition.n_modes

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)


class _EigenClass(NamedTuple):
    value: float
    a_local: list[int]
    b_local: list[int]


def _cluster_classes(lams_a, lams_b, width: float) -> list[_EigenClass]:
    """Group local eigenvalues of both sides into shared degeneracy classes.

    Values within ``width`` of a class anchor (its first, largest member)
    belong to that class.  Both spectra are descending, so one merged sweep
    suffices.
    """
    entries = [(lam, 0, i) for i, lam in enumerate(lams_a)]
    entries += [(lam, 1, i) for i, lam in enumerate(lams_b)]
    entries.sort(key=lambda e: (-e[0], e[1], e[2]))
    classes: list[_EigenClass] = []
    anchor = None
    for lam, side, local in entries:
        if anchor is None or anchor - lam > width:
            classes.append(_EigenClass(lam, [], []))
            anchor = lam
        cls = classes[-1]
        (cls.a_local if side == 0 else cls.b_local).append(local)
    # Recompute each class value as the mean of its members.
    return [
        _EigenClass(float(np.mean([lams_a[i] for i in c.a_local] + [lams_b[i] for i in c.b_local])),
                    c.a_local, c.b_local)
        for c in classes
    ]


def modewise_decompose(
    state: CovarianceMatrix,
    partition: Bipartition,
    tol: DecompositionTolerances = DecompositionTolerances(),
) -> ModewiseDecomposition:
    """Decompose an isotropic covariance matrix across a bipartition.

    Raises NotIsotropicError when M^2 is not proportional to the identity, and
    NumericalConsistencyError when the block structure demanded by isotropy
    (vanishing cross-class correlations, equal degeneracies, orthogonal
    symplectic class transforms) fails to emerge, which signals inconsistent
    input rather than a representation choice.
    """
    if partition.n_modes != state.n_modes:
        raise InvalidInputError(
            f"partition covers {partition.n_modes} modes but the state has {state.n_modes}"
        )
    lambda0 = isotropy_parameter(state, tol.iso)
    if lambda0 is None:
        raise NotIsotropicError(isotropy_deviation(state), tol.iso)

    n_a, n_b = len(partition.a_modes), len(partition.b_modes)
    form_a = williamson_form(restrict(state, partition.a_modes).matrix)
    form_b = williamson_form(restrict(state, partition.b_modes).matrix)
    transform_a = form_a.orthogonal.copy()
    transform_b = form_b.orthogonal

    perm = quadrature_indices(tuple(partition.a_modes) + tuple(partition.b_modes))
    permuted = state.matrix[np.ix_(perm, perm)]
    cross = transform_a @ permuted[: 2 * n_a, 2 * n_a :] @ transform_b.T

    width = tol.deg * lambda0 if lambda0 > 0 else tol.deg
    classes = _cluster_classes(form_a.lambdas, form_b.lambdas, width)

    # Cross-correlations between different classes must vanish.
    for i, ci in enumerate(classes):
        rows = quadrature_indices(ci.a_local)
        for j, cj in enumerate(classes):
            if i == j or not (len(ci.a_local) and len(cj.b_local)):
                continue
            block = cross[np.ix_(rows, quadrature_indices(cj.b_local))]
            worst = float(np.max(np.abs(block)))
            if worst > tol.cross:
                raise NumericalConsistencyError(
                    f"modes with distinct eigenvalues ({ci.value!r}, {cj.value!r}) remain "
                    f"correlated: max|K| = {worst:.3e} > {tol.cross:.3e}"
                )

    pairs: list[EntangledPair] = []
    residual_a: list[ResidualMode] = []
    residual_b: list[ResidualMode] = []
    for cls in classes:
        kappa_sq = lambda0**2 - cls.value**2
        kappa = float(np.sqrt(kappa_sq)) if kappa_sq > 0.0 else 0.0
        decoupled = cls.value >= lambda0 - width or kappa <= tol.pair
        if decoupled:
            if cls.a_local and cls.b_local:
                block = cross[np.ix_(quadrature_indices(cls.a_local),
                                     quadrature_indices(cls.b_local))]
                worst = float(np.max(np.abs(block)))
                if worst > tol.cross:
                    raise NumericalConsistencyError(
                        f"decoupled class at eigenvalue {cls.value!r} retains "
                        f"correlations: max|K| = {worst:.3e} > {tol.cross:.3e}"
                    )
            residual_a += [ResidualMode(i, float(form_a.lambdas[i])) for i in cls.a_local]
            residual_b += [ResidualMode(i, float(form_b.lambdas[i])) for i in cls.b_local]
            continue

        if len(cls.a_local) != len(cls.b_local):
            raise NumericalConsistencyError(
                f"entangled class at eigenvalue {cls.value!r} has unequal degeneracies "
                f"({len(cls.a_local)} on A, {len(cls.b_local)} on B)"
            )
        g = len(cls.a_local)
        rows = quadrature_indices(cls.a_local)
        cols = quadrature_indices(cls.b_local)
        class_transform = cross[np.ix_(rows, cols)] @ beta_blocks(g) / kappa
        if not is_orthogonal_symplectic(class_transform, tol.symplectic):
            raise NumericalConsistencyError(
                f"class at eigenvalue {cls.value!r} does not factor into an orthogonal "
                "symplectic transform; the input is not isotropic to working precision"
            )
        transform_a[rows] = class_transform.T @ transform_a[rows]
        theta = 0.5 * np.arctan2(kappa, cls.value)
        pairs += [
            EntangledPair(cls.value, kappa, float(theta), cls.a_local[k], cls.b_local[k])
            for k in range(g)
        ]

    pairs.sort(key=lambda p: (-p.theta, p.a_mode))
    residual_a.sort(key=lambda r: r.mode)
    residual_b.sort(key=lambda r: r.mode)
    return ModewiseDecomposition(
        transform_a=transform_a,
        transform_b=transform_b,
        pairs=pairs,
        residual_a=residual_a,
        residual_b=residual_b,
        lambda0=float(lambda0),
        partition=partition,
    )


def pair_block(lam: float, kappa: float) -> np.ndarray:
    """The 4x4 covariance block of one entangled pair."""
    return np.array(
        [
            [0.0, -lam, 0.0, kappa],
            [lam, 0.0, kappa, 0.0],
            [0.0, -kappa, 0.0, -lam],
            [-kappa, 0.0, lam, 0.0],
        ]
    )


def decomposition_mode_order(decomp: ModewiseDecomposition) -> list[int]:
    """Joint transformed-mode order of the block form.

    Modes 0..m-1 are the transformed A modes, m..m+n-1 the transformed B
    modes; pairs come first (A then B member), then residual A, then
    residual B.
    """
    m = len(decomp.partition.a_modes)
    order: list[int] = []
    for pair in decomp.pairs:
        order += [pair.a_mode, m + pair.b_mode]
    order += [r.mode for r in decomp.residual_a]
    order += [m + r.mode for r in decomp.residual_b]
    return order


def transformed_fcm(decomp: ModewiseDecomposition, state: CovarianceMatrix) -> np.ndarray:
    """Apply the local transforms and block reordering to the original matrix."""
    part = decomp.partition
    m = len(part.a_modes)
    perm = quadrature_indices(tuple(part.a_modes) + tuple(part.b_modes))
    permuted = state.matrix[np.ix_(perm, perm)]
    joint = np.zeros_like(permuted)
    joint[: 2 * m, : 2 * m] = decomp.transform_a
    joint[2 * m :, 2 * m :] = decomp.transform_b
    rotated = joint @ permuted @ joint.T
    q = quadrature_indices(decomposition_mode_order(decomp))
    return rotated[np.ix_(q, q)]


def assemble_block_fcm(decomp: ModewiseDecomposition) -> CovarianceMatrix:
    """Direct-sum covariance matrix built from the decomposition parameters."""
    n = decomp.n_modes
    out = np.zeros((2 * n, 2 * n))
    offset = 0
    for pair in decomp.pairs:
        out[offset : offset + 4, offset : offset + 4] = pair_block(pair.lam, pair.kappa)
        offset += 4
    for residual in decomp.residual_a + decomp.residual_b:
        out[offset : offset + 2, offset : offset + 2] = lambda_blocks([residual.lam])
        offset += 2
    return CovarianceMatrix(out)


def reconstruction_residual(decomp: ModewiseDecomposition, state: CovarianceMatrix) -> float:
    """max|transformed original - assembled block form|; the self-check."""
    delta = transformed_fcm(decomp, state) - assemble_block_fcm(decomp).matrix
    return float(np.max(np.abs(delta))) if delta.size else 0.0
