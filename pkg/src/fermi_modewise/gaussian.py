"""Covariance-matrix representation of fermionic Gaussian states.

A state of N fermion modes is represented by the real antisymmetric 2N x 2N
matrix M with M_ab = Im<g_a g_b>, where the quadratures of mode i occupy
rows/columns 2i and 2i+1 (0-based): g_{2i} = b_i + b_i^dag and
g_{2i+1} = i(b_i - b_i^dag).  Physical states have all Williamson eigenvalues
in [0, 1]; pure states satisfy M^2 = -1 and isotropic states M^2 = -l0^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canonical import J2, antisymmetrize, j_blocks, lambda_blocks, williamson_form
from .errors import InvalidInputError

PHYSICALITY_TOL = 1e-9


@dataclass
class CovarianceMatrix:
    """Fermion covariance matrix of ``n_modes`` modes.

    The constructor antisymmetrizes the input (rejecting deviations beyond
    1e-12) and rejects unphysical matrices whose Williamson eigenvalues exceed
    1 + 1e-9.
    """

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = antisymmetrize(self.matrix)
        if self.matrix.shape[0] % 2:
            raise InvalidInputError(
                f"covariance matrix dimension must be even, got {self.matrix.shape[0]}"
            )
        # Singular values of an antisymmetric matrix are the Williamson
        # eigenvalues, each appearing twice.
        if self.matrix.size:
            sigma = np.linalg.svd(self.matrix, compute_uv=False)
            bad = sigma[sigma > 1.0 + PHYSICALITY_TOL]
            if bad.size:
                raise InvalidInputError(
                    "unphysical covariance matrix: Williamson eigenvalues "
                    f"{np.unique(np.round(bad, 12)).tolist()} exceed 1 + {PHYSICALITY_TOL}"
                )

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def williamson_eigenvalues(self) -> np.ndarray:
        """Williamson eigenvalues in descending order."""
        return williamson_form(self.matrix).lambdas


@dataclass
class QuadraticHamiltonian:
    """Quadratic fermion Hamiltonian sum_ij C_ij b_i^dag b_j + (A_ij b_i^dag b_j^dag + h.c.).

    ``hopping`` is the hermitian matrix C, ``pairing`` the antisymmetric
    matrix A, both N x N complex.
    """

    hopping: np.ndarray
    pairing: np.ndarray

    def __post_init__(self):
        self.hopping = np.asarray(self.hopping, dtype=complex)
        self.pairing = np.asarray(self.pairing, dtype=complex)
        for name, mat in (("hopping", self.hopping), ("pairing", self.pairing)):
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise InvalidInputError(f"{name} matrix must be square, got {mat.shape}")
        if self.hopping.shape != self.pairing.shape:
            raise InvalidInputError(
                f"hopping {self.hopping.shape} and pairing {self.pairing.shape} differ"
            )
        herm = np.max(np.abs(self.hopping - self.hopping.conj().T)) if self.hopping.size else 0.0
        if herm > 1e-12:
            raise InvalidInputError(f"hopping matrix is not hermitian: max|C - C^dag| = {herm:.3e}")
        anti = np.max(np.abs(self.pairing + self.pairing.T)) if self.pairing.size else 0.0
        if anti > 1e-12:
            raise InvalidInputError(f"pairing matrix is not antisymmetric: max|A + A^T| = {anti:.3e}")

    @property
    def n_modes(self) -> int:
        return self.hopping.shape[0]


@dataclass
class MajoranaHamiltonian:
    """Quadrature form (i/4) g^T h g + offset of a quadratic Hamiltonian."""

    coupling: np.ndarray
    offset: float

    def __post_init__(self):
        self.coupling = antisymmetrize(self.coupling)


@dataclass
class Bipartition:
    """Split of modes {0..N-1} into two disjoint ordered groups."""

    a_modes: tuple[int, ...]
    b_modes: tuple[int, ...]

    def __post_init__(self):
        self.a_modes = tuple(int(i) for i in self.a_modes)
        self.b_modes = tuple(int(i) for i in self.b_modes)
        n = len(self.a_modes) + len(self.b_modes)
        seen = set(self.a_modes) | set(self.b_modes)
        if len(seen) != n:
            raise InvalidInputError("bipartition contains repeated mode indices")
        if seen and (min(seen) < 0 or max(seen) >= n):
            raise InvalidInputError(
                f"bipartition indices must cover 0..{n - 1}, got {sorted(seen)}"
            )

    @property
    def n_modes(self) -> int:
        return len(self.a_modes) + len(self.b_modes)


def quadrature_indices(modes) -> np.ndarray:
    """Row/column indices of the quadratures of the given modes, in order."""
    modes = np.asarray(list(modes), dtype=int)
    if modes.size == 0:
        return np.zeros(0, dtype=int)
    return np.column_stack((2 * modes, 2 * modes + 1)).reshape(-1)


def hamiltonian_to_majorana(ham: QuadraticHamiltonian) -> MajoranaHamiltonian:
    """Rewrite a quadratic Hamiltonian as (i/4) g^T h g + offset.

    Uses b_i = (g_{2i} - i g_{2i+1}) / 2; ``h`` is real antisymmetric and the
    offset collects the normal-ordering constant.
    """
    n = ham.n_modes
    # Row i of ``ann``/``cre`` holds the quadrature coefficients of b_i / b_i^dag.
    ann = np.zeros((n, 2 * n), dtype=complex)
    ann[np.arange(n), 2 * np.arange(n)] = 0.5
    ann[np.arange(n), 2 * np.arange(n) + 1] = -0.5j
    cre = ann.conj()

    quad = cre.T @ ham.hopping @ ann + cre.T @ ham.pairing @ cre - ann.T @ ham.pairing.conj() @ ann
    offset = float(np.trace(quad).real)
    anti = 0.5 * (quad - quad.T)
    residual = np.max(np.abs(anti.real)) if anti.size else 0.0
    if residual > 1e-10:
        raise InvalidInputError(
            f"hamiltonian does not reduce to a real quadrature form (residual {residual:.3e})"
        )
    return MajoranaHamiltonian(4.0 * anti.imag, offset)


@dataclass
class GroundStateFCM:
    """Ground-state covariance matrix with its energy and degeneracy flag."""

    fcm: CovarianceMatrix
    energy: float
    degenerate: bool = field(default=False)


def ground_state_fcm(ham: QuadraticHamiltonian, degeneracy_tol: float = 1e-8) -> GroundStateFCM:
    """Ground-state covariance matrix of a quadratic Hamiltonian.

    With O h O^T = diag(e_k J2), e_k >= 0, the minimizing pure state is the
    vacuum of the transformed modes: M = O^T diag(J2) O, with ground energy
    offset - sum(e_k) / 2.  Any e_k <= ``degeneracy_tol`` flags a (nearly)
    degenerate ground manifold; the returned M is still deterministic.
    """
    maj = hamiltonian_to_majorana(ham)
    form = williamson_form(maj.coupling)
    n = ham.n_modes
    fcm = CovarianceMatrix(form.orthogonal.T @ j_blocks(n) @ form.orthogonal)
    energy = maj.offset - 0.5 * float(np.sum(form.lambdas))
    degenerate = bool(np.any(form.lambdas <= degeneracy_tol))
    return GroundStateFCM(fcm, energy, degenerate)


def is_pure(state: CovarianceMatrix, tol: float = 1e-9) -> bool:
    """True iff M^2 = -1 within ``tol`` (all Williamson eigenvalues 1)."""
    m = state.matrix
    return bool(np.max(np.abs(m @ m + np.eye(m.shape[0]))) <= tol)


def isotropy_parameter(state: CovarianceMatrix, tol: float = 1e-8):
    """Return l0 >= 0 with M^2 = -l0^2 within ``tol``, or None if not isotropic."""
    m = state.matrix
    if m.size == 0:
        return 0.0
    msq = m @ m
    lam0_sq = -float(np.trace(msq)) / m.shape[0]
    deviation = float(np.max(np.abs(msq + lam0_sq * np.eye(m.shape[0]))))
    if deviation > tol:
        return None
    return abs(float(np.sqrt(max(lam0_sq, 0.0))))


def isotropy_deviation(state: CovarianceMatrix) -> float:
    """Measured max|M^2 + l0^2| for the best-fit l0 (diagnostic companion)."""
    m = state.matrix
    if m.size == 0:
        return 0.0
    msq = m @ m
    lam0_sq = -float(np.trace(msq)) / m.shape[0]
    return float(np.max(np.abs(msq + lam0_sq * np.eye(m.shape[0]))))


def restrict(state: CovarianceMatrix, modes) -> CovarianceMatrix:
    """Reduced covariance matrix on a subset of modes, in the given order."""
    modes = list(modes)
    if len(set(modes)) != len(modes):
        raise InvalidInputError(f"repeated mode index in {modes}")
    for i in modes:
        if not 0 <= int(i) < state.n_modes:
            raise InvalidInputError(f"mode index {i} out of range for {state.n_modes} modes")
    q = quadrature_indices(modes)
    return CovarianceMatrix(state.matrix[np.ix_(q, q)])


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_orthogonal(dim: int, seed) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian matrix, sign-fixed."""
    rng = _as_generator(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def random_pure_fcm(n_modes: int, seed) -> CovarianceMatrix:
    """Random pure-state covariance matrix R diag(J2) R^T, R Haar orthogonal."""
    if n_modes < 1:
        raise InvalidInputError(f"n_modes must be >= 1, got {n_modes}")
    r = haar_orthogonal(2 * n_modes, seed)
    return CovarianceMatrix(r @ j_blocks(n_modes) @ r.T)


def isotropic_fcm(n_modes: int, lambda0: float, seed) -> CovarianceMatrix:
    """Random isotropic covariance matrix with M^2 = -lambda0^2."""
    if not 0.0 <= lambda0 <= 1.0:
        raise InvalidInputError(f"lambda0 must lie in [0, 1], got {lambda0}")
    return CovarianceMatrix(lambda0 * random_pure_fcm(n_modes, seed).matrix)


def diagonal_fcm(lambdas) -> CovarianceMatrix:
    """Covariance matrix diag(l_1 J2, ..., l_N J2) from per-mode eigenvalues.

    Covers product mixed states, e.g. thermal occupations l_i = tanh(beta e_i / 2).
    """
    lambdas = np.asarray(list(lambdas), dtype=float)
    if np.any(lambdas < 0.0) or np.any(lambdas > 1.0 + PHYSICALITY_TOL):
        raise InvalidInputError(f"per-mode eigenvalues must lie in [0, 1], got {lambdas.tolist()}")
    return CovarianceMatrix(lambda_blocks(lambdas))
