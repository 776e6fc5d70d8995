"""Entanglement measures for the states produced by X-form R-matrices."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .linalg import (
    DimensionError,
    as_matrix,
    hermitian_eig,
    is_hermitian,
    kron,
    partial_trace,
    partial_transpose,
    sqrt_psd,
    trace_norm_hermitian,
)
from .xform import RMatrix

STATE_TOL = 1e-10
XFORM_TOL = 1e-10
ROUNDING_FLOOR = 8 * np.finfo(float).eps

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_YY = kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray = field(repr=False)
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)
        if amps.size != int(np.prod(dims)):
            raise DimensionError(f"{amps.size} amplitudes do not match dimensions {dims}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > STATE_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm:.12f})")

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray = field(repr=False)
    dims: tuple[int, ...]

    def __post_init__(self):
        m = as_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)
        n = int(np.prod(dims))
        if m.shape != (n, n):
            raise DimensionError(f"density matrix of shape {m.shape} does not match dimensions {dims}")
        if not is_hermitian(m, STATE_TOL):
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > STATE_TOL:
            raise ValueError(f"density matrix trace is {tr.real:.12f}, expected 1")


State = Union[PureState, DensityMatrix]


def _as_density(state: State) -> DensityMatrix:
    return state.density() if isinstance(state, PureState) else state


def _require_dims(dims: Sequence[int], expected: tuple[int, ...], what: str) -> None:
    if tuple(dims) != expected:
        raise DimensionError(f"{what} needs dimensions {expected}, got {tuple(dims)}")


def entangle_basis(r: RMatrix) -> list[PureState]:
    """States ``|e_i> = sum_j R[i, j] |j>``, one per product basis label.

    This is R applied to the column of basis kets, so ``|e_i>`` is row ``i``
    of R. (Columns of R differ only by conjugated phases, and give the same
    entanglement.)
    """
    dims = r.dims
    return [PureState(r.matrix[k, :], dims) for k in range(r.matrix.shape[0])]


def negativity(state: State) -> float:
    """``(||rho^T_B||_1 - 1) / (d - 1)`` with ``d`` the smaller subsystem dimension."""
    rho = _as_density(state)
    if len(rho.dims) != 2:
        raise DimensionError(f"negativity needs a bipartite state, got dimensions {rho.dims}")
    da, db = rho.dims
    pt = partial_transpose(rho.matrix, da, db)
    return (trace_norm_hermitian(pt) - 1.0) / (min(da, db) - 1)


def concurrence_pure(psi: PureState) -> float:
    """``|<psi| sigma_y sigma_y |psi*>|``, i.e. ``2|ad - bc|``."""
    _require_dims(psi.dims, (2, 2), "concurrence_pure")
    a = psi.amplitudes
    return float(abs(a @ SIGMA_YY @ a))


def concurrence_mixed(state: State) -> float:
    """Wootters concurrence from the spectrum of ``sqrt(rho) rho~ sqrt(rho)``."""
    rho = _as_density(state)
    _require_dims(rho.dims, (2, 2), "concurrence_mixed")
    root = sqrt_psd(rho.matrix)
    flipped = SIGMA_YY @ rho.matrix.conj() @ SIGMA_YY
    r = root @ flipped @ root
    r = 0.5 * (r + r.conj().T)
    values, _ = hermitian_eig(r)
    # Eigenvalues at rounding level are zero; their square roots would not be.
    floor = ROUNDING_FLOOR * max(1.0, float(np.abs(values).max()))
    lam = np.sqrt(np.where(values > floor, values, 0.0))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def is_xform(m: np.ndarray, tol: float = XFORM_TOL) -> bool:
    n = m.shape[0]
    mask = np.ones((n, n), dtype=bool)
    idx = np.arange(n)
    mask[idx, idx] = False
    mask[idx, n - 1 - idx] = False
    return bool(np.all(np.abs(m[mask]) <= tol))


def concurrence_xstate(state: State) -> float:
    """Closed-form concurrence of a two-qubit X state."""
    rho = _as_density(state)
    _require_dims(rho.dims, (2, 2), "concurrence_xstate")
    m = rho.matrix
    if not is_xform(m):
        raise ValueError("density matrix is not X-form")
    p = m.diagonal().real.clip(0.0)
    outer = abs(m[0, 3]) - math.sqrt(p[1] * p[2])
    inner = abs(m[1, 2]) - math.sqrt(p[0] * p[3])
    return 2.0 * max(0.0, outer, inner)


def three_tangle(psi: PureState) -> float:
    """Residual tangle ``4|d1 - 2 d2 + 4 d3|`` of a three-qubit pure state.

    Amplitude ``k`` (0-based) is the basis state whose binary digits read
    A, B, C from most to least significant.
    """
    _require_dims(psi.dims, (2, 2, 2), "three_tangle")
    # 1-based names so the polynomial reads like the usual tabulation.
    p1, p2, p3, p4, p5, p6, p7, p8 = psi.amplitudes
    d1 = p1**2 * p8**2 + p2**2 * p7**2 + p3**2 * p6**2 + p5**2 * p4**2
    d2 = (p1 * p8 * p4 * p5 + p1 * p8 * p6 * p3 + p1 * p8 * p7 * p2
          + p4 * p5 * p6 * p3 + p4 * p5 * p7 * p2 + p6 * p3 * p7 * p2)
    d3 = p1 * p7 * p6 * p4 + p8 * p2 * p3 * p5
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def pairwise_concurrences(psi: PureState) -> tuple[float, float, float]:
    """Concurrences of the reduced states on AB, AC and BC."""
    _require_dims(psi.dims, (2, 2, 2), "pairwise_concurrences")
    rho = psi.density().matrix
    out = []
    for keep in ((0, 1), (0, 2), (1, 2)):
        reduced = partial_trace(rho, (2, 2, 2), keep)
        reduced = 0.5 * (reduced + reduced.conj().T)
        out.append(concurrence_mixed(DensityMatrix(reduced, (2, 2))))
    return tuple(out)


def ghz_state() -> PureState:
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = amps[7] = 1 / math.sqrt(2)
    return PureState(amps, (2, 2, 2))


def w_state() -> PureState:
    amps = np.zeros(8, dtype=np.complex128)
    amps[[1, 2, 4]] = 1 / math.sqrt(3)
    return PureState(amps, (2, 2, 2))
