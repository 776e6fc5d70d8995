"""The 8x8 Yang-Baxter Hamiltonian ``H = R^dagger H0 R`` and its eigenpairs.

Basis states ``|1>, ..., |8>`` are three-qubit product states with site 1
most significant and spin-up first, so ``|k>`` and ``|9-k>`` are related by
a global spin flip. Code uses 0-based indices throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .entangle import PureState
from .linalg import DimensionError, as_matrix, dagger, identity, kron_all, max_abs
from .xform import PHASE_TOL, PhaseConstraintError, RMatrix, build_m, build_r, family_8x8, wrap_phase

PAIRS = ((0, 7), (1, 6), (2, 5), (3, 4))
SIGNS = ("+", "-")
EIGEN_TOL = 1e-10


def build_h0() -> np.ndarray:
    """``s^3 (x) I (x) I`` with ``s^3 = diag(1/2, -1/2)``."""
    s3 = np.diag([0.5, -0.5]).astype(np.complex128)
    return kron_all([s3, identity(2), identity(2)])


def conjugate_h(r: RMatrix) -> np.ndarray:
    mat = as_matrix(r.matrix)
    if mat.shape != (8, 8):
        raise DimensionError(f"expected an 8x8 R-matrix, got {mat.shape[0]}x{mat.shape[1]}")
    h = dagger(mat) @ build_h0() @ mat
    return 0.5 * (h + dagger(h))


def _check_phis(phis: Sequence[float]) -> tuple[float, float, float, float]:
    if len(phis) != 4:
        raise ValueError(f"expected four phases, got {len(phis)}")
    p1, p2, p3, p4 = (float(p) for p in phis)
    gap = wrap_phase(p1 + p4 - p2 - p3)
    if gap > PHASE_TOL:
        raise PhaseConstraintError(
            f"phases violate phi1 + phi4 = phi2 + phi3 (mod 2pi): off by {gap:.3e}"
        )
    return p1, p2, p3, p4


def hamiltonian(theta: float, phis: Sequence[float]) -> np.ndarray:
    """Convenience: ``H`` for the 8x8 family at ``(theta, phis)``."""
    r = build_r(build_m(family_8x8(*_check_phis(phis))), theta)
    return conjugate_h(r)


def pseudo_spin(i: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(S+, S-, S3)`` on the i-th flip pair (``i`` in 1..4)."""
    top, bottom = PAIRS[i - 1]
    e = identity(8)
    up = np.outer(e[:, top], e[:, bottom])
    s3 = 0.5 * (np.outer(e[:, top], e[:, top]) - np.outer(e[:, bottom], e[:, bottom]))
    return up, up.T.copy(), s3


@dataclass(frozen=True)
class FieldDecomposition:
    """Unit field vectors ``B_i`` coupling to the pseudo-spins ``S_i``."""

    b_vectors: tuple[tuple[float, float, float], ...]
    pair_map: tuple[tuple[int, int], ...] = ((1, 8), (2, 7), (3, 6), (4, 5))

    def reconstruct(self) -> np.ndarray:
        h = np.zeros((8, 8), dtype=np.complex128)
        for i, (bx, by, bz) in enumerate(self.b_vectors, start=1):
            up, down, s3 = pseudo_spin(i)
            sx = (up + down) / 2
            sy = (up - down) / 2j
            h += bx * sx + by * sy + bz * s3
        return h


def field_decomposition(theta: float, phis: Sequence[float]) -> FieldDecomposition:
    phis = _check_phis(phis)
    st, ct = math.sin(theta), math.cos(theta)
    return FieldDecomposition(tuple((st * math.cos(p), st * math.sin(p), ct) for p in phis))


@dataclass(frozen=True)
class Eigenpair:
    energy: float
    state: PureState = field(repr=False)


@dataclass(frozen=True)
class LabeledEigenpairs:
    """Eigenpairs keyed by ``(i, sign)`` with ``i`` in 1..4 and sign ``'+'`` or ``'-'``."""

    theta: float
    phis: tuple[float, float, float, float]
    pairs: dict = field(repr=False)

    def __getitem__(self, key) -> Eigenpair:
        return self.pairs[key]

    def keys(self) -> list[tuple[int, str]]:
        """Node order: by index, then ``+`` before ``-``."""
        return [(i, s) for i in range(1, 5) for s in SIGNS]

    def vector(self, i: int, sign: str) -> np.ndarray:
        return self.pairs[i, sign].state.amplitudes

    def projector(self, i: int, sign: str) -> np.ndarray:
        v = self.vector(i, sign)
        return np.outer(v, v.conj())


def labeled_eigenpairs(theta: float, phis: Sequence[float], *, tol: float = EIGEN_TOL) -> LabeledEigenpairs:
    """Closed-form eigenvectors, checked against ``H`` to ``tol``.

    ``|e_i^+> = cos(t/2)|i> + sin(t/2) e^{i phi_i}|9-i>`` with energy +1/2 and
    ``|e_i^-> = -sin(t/2) e^{-i phi_i}|i> + cos(t/2)|9-i>`` with energy -1/2.
    """
    phis = _check_phis(phis)
    h = hamiltonian(theta, phis)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    pairs = {}
    for i, ((top, bottom), phi) in enumerate(zip(PAIRS, phis), start=1):
        plus = np.zeros(8, dtype=np.complex128)
        plus[top], plus[bottom] = c, s * np.exp(1j * phi)
        minus = np.zeros(8, dtype=np.complex128)
        minus[top], minus[bottom] = -s * np.exp(-1j * phi), c
        for sign, vec, energy in (("+", plus, 0.5), ("-", minus, -0.5)):
            defect = max_abs(h @ vec - energy * vec)
            if defect > tol:
                raise RuntimeError(f"e_{i}^{sign} fails H e = E e by {defect:.3e}")
            pairs[i, sign] = Eigenpair(energy, PureState(vec, (2, 2, 2)))
    return LabeledEigenpairs(float(theta), phis, pairs)


def recast_sum(pairs: LabeledEigenpairs) -> np.ndarray:
    """``sum_i (|e_i^+><e_i^+| - |e_i^-><e_i^-|)``, which equals ``2 H``."""
    return sum(pairs.projector(i, "+") - pairs.projector(i, "-") for i in range(1, 5))


def pair_blocks(h: np.ndarray) -> list[np.ndarray]:
    """The four 2x2 blocks of ``h`` on the flip pairs."""
    return [h[np.ix_(p, p)] for p in PAIRS]


def off_block_weight(h: np.ndarray) -> float:
    """Largest entry of ``h`` outside the four flip-pair blocks."""
    mask = np.ones((8, 8), dtype=bool)
    for p in PAIRS:
        mask[np.ix_(p, p)] = False
    return max_abs(h[mask])


def analytic_block_eigenvalues(block: np.ndarray) -> tuple[float, float]:
    """Closed-form ascending eigenvalues of a 2x2 Hermitian block."""
    a, d = block[0, 0].real, block[1, 1].real
    mid = (a + d) / 2
    rad = math.hypot((a - d) / 2, abs(block[0, 1]))
    return mid - rad, mid + rad
