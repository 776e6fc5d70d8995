"""Dense complex linear algebra used by the rest of the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Products and
Kronecker products defer to numpy; the Hermitian eigensolver is a cyclic
Jacobi iteration written out here so that every spectrum in the package
comes from the same small, auditable routine.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 100
PSD_CLAMP = 1e-10


class DimensionError(ValueError):
    """Raised when operand shapes are incompatible."""


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and the matching eigenvectors (as columns)."""

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a 2-D complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def max_abs(a) -> float:
    """Largest entry magnitude; 0.0 for an empty array."""
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def commutator(a, b) -> np.ndarray:
    return matmul(a, b) - matmul(b, a)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(ops: Iterable) -> np.ndarray:
    out = identity(1)
    for op in ops:
        out = kron(out, op)
    return out


def embed_pair(op, site_dims: Sequence[int], position: int) -> np.ndarray:
    """Place a two-site operator on sites ``position`` and ``position + 1``.

    Every other site carries the identity, so the result acts on the full
    product space of dimension ``prod(site_dims)``.
    """
    op = as_matrix(op)
    dims = [int(d) for d in site_dims]
    if any(d < 1 for d in dims):
        raise DimensionError(f"site dimensions must be positive, got {dims}")
    if not 0 <= position < len(dims) - 1:
        raise DimensionError(
            f"position {position} does not name an adjacent pair in {len(dims)} sites"
        )
    pair = dims[position] * dims[position + 1]
    if op.shape != (pair, pair):
        raise DimensionError(
            f"operator of shape {op.shape} does not fit sites {position},{position + 1} "
            f"with dimensions {dims[position]}x{dims[position + 1]}"
        )
    left = int(np.prod(dims[:position], dtype=int))
    right = int(np.prod(dims[position + 2:], dtype=int))
    return kron(kron(identity(left), op), identity(right))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and max_abs(a - a.conj().T) <= tol


def _require_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got {a.shape[0]}x{a.shape[1]}")
    dev = max_abs(a - a.conj().T)
    if dev > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max |A - A^dagger| = {dev:.3e})")
    return a


def _off_diagonal_max(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return max_abs(off)


def hermitian_eig(a, *, threshold: float = JACOBI_THRESHOLD,
                  max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenSystem:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classical real Jacobi rotation to the resulting real
    symmetric 2x2 block, so the update ``A <- U^dagger A U`` zeroes the pair.
    Sweeps repeat until the largest off-diagonal magnitude drops below
    ``threshold`` (relative to the matrix scale when that exceeds one).

    Returns
    -------
    EigenSystem
        Eigenvalues in ascending order (stable with respect to column order
        on ties) and the unitary whose columns are the eigenvectors.
    """
    a = _require_hermitian(a).copy()
    # Exact Hermitian symmetrisation so rounding in the input cannot drift.
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = identity(n)
    limit = threshold * max(1.0, max_abs(a))

    for _ in range(max_sweeps + 1):
        if _off_diagonal_max(a) <= limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= limit * 1e-3:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane.
                u_pp, u_pq = c, s
                u_qp, u_qq = -s * np.conj(phase), c * np.conj(phase)

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * u_pp + col_q * u_qp
                a[:, q] = col_p * u_pq + col_q * u_qq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(u_pp) * row_p + np.conj(u_qp) * row_q
                a[q, :] = np.conj(u_pq) * row_p + np.conj(u_qq) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * u_pp + vq * u_qp
                v[:, q] = vp * u_pq + vq * u_qq
    else:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {max_sweeps} sweeps "
            f"(off-diagonal {_off_diagonal_max(a):.3e})"
        )

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], v[:, order])


def sqrt_psd(a) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix."""
    values, vectors = hermitian_eig(a)
    if values.size and values[0] < -PSD_CLAMP:
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {values[0]:.3e})")
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


def partial_transpose(rho, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the second tensor factor of a bipartite operator."""
    rho = as_matrix(rho)
    n = dim_a * dim_b
    if rho.shape != (n, n):
        raise DimensionError(
            f"matrix of shape {rho.shape} does not match subsystem dimensions {dim_a}x{dim_b}"
        )
    t = rho.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1)
    return t.reshape(n, n)


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Reduced operator on the sites listed in ``keep`` (returned in site order)."""
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    n = int(np.prod(dims, dtype=int))
    if rho.shape != (n, n):
        raise DimensionError(f"matrix of shape {rho.shape} does not match dimensions {dims}")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one site")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"site indices {keep} out of range for {len(dims)} sites")

    k = len(dims)
    row = list(range(k))
    col = [k + i if i in keep else i for i in range(k)]
    out = [i for i in keep] + [k + i for i in keep]
    reduced = np.einsum(rho.reshape(dims + dims), row + col, out)
    m = int(np.prod([dims[i] for i in keep], dtype=int))
    return reduced.reshape(m, m)


def trace_norm_hermitian(a) -> float:
    values, _ = hermitian_eig(a)
    return float(np.abs(values).sum())
