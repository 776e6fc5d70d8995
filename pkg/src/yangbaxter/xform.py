"""X-form M matrices and their exponential Yang-Baxter R-matrices.

Spin and magnetic labels are half-integers stored as doubled integers.
A :class:`PhaseTable` assigns a phase ``phi[a, alpha]`` to every product
basis label; the M matrix has the single nonzero entry
``exp(-i phi[a, alpha])`` in row ``(a, alpha)``, column ``(-a, -alpha)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .linalg import as_matrix, dagger, identity, max_abs

TWO_PI = 2.0 * math.pi
PHASE_TOL = 1e-9


class PhaseConstraintError(ValueError):
    """A phase table or phase quadruple violates the commutation constraints."""


@dataclass(frozen=True, order=True)
class HalfInt:
    """A half-integer, stored exactly as ``twice`` its value."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        doubled = 2 * Fraction(value.strip() if isinstance(value, str) else value)
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not a half-integer")
        return cls(int(doubled))

    def __float__(self) -> float:
        return self.twice / 2

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"

    @property
    def dim(self) -> int:
        """Dimension ``2j + 1`` of the spin-j representation."""
        return self.twice + 1


def spin(value) -> HalfInt:
    j = HalfInt.of(value)
    if j.twice < 1:
        raise ValueError(f"spin label must be at least 1/2, got {j}")
    return j


def magnetic_labels(j: HalfInt) -> list[HalfInt]:
    """Labels ``j, j-1, ..., -j`` in descending order."""
    return [HalfInt(t) for t in range(j.twice, -j.twice - 1, -2)]


def _check_label(j: HalfInt, a: HalfInt) -> None:
    if abs(a.twice) > j.twice or (a.twice - j.twice) % 2:
        raise ValueError(f"{a} is not a magnetic label of spin {j}")


def basis_index(j1, j2, a, alpha) -> int:
    """Position of ``|a, alpha>`` with ``a`` descending, then ``alpha`` descending."""
    j1, j2 = spin(j1), spin(j2)
    a, alpha = HalfInt.of(a), HalfInt.of(alpha)
    _check_label(j1, a)
    _check_label(j2, alpha)
    return ((j1.twice - a.twice) // 2) * j2.dim + (j2.twice - alpha.twice) // 2


def wrap_phase(x: float) -> float:
    """Distance of ``x`` from the nearest multiple of 2*pi."""
    return abs(math.remainder(x, TWO_PI))


@dataclass(frozen=True)
class PhaseTable:
    j1: HalfInt
    j2: HalfInt
    phi: Mapping[tuple[HalfInt, HalfInt], float] = field(repr=False)

    def __post_init__(self):
        missing = [
            (a, al) for a in magnetic_labels(self.j1) for al in magnetic_labels(self.j2)
            if (a, al) not in self.phi
        ]
        if missing:
            raise ValueError(f"phase table is missing labels {[(str(a), str(b)) for a, b in missing]}")

    @property
    def dims(self) -> tuple[int, int]:
        return self.j1.dim, self.j2.dim

    def __getitem__(self, key) -> float:
        a, alpha = key
        return self.phi[HalfInt.of(a), HalfInt.of(alpha)]

    def labels(self) -> list[tuple[HalfInt, HalfInt]]:
        """All label pairs in basis order."""
        return [(a, al) for a in magnetic_labels(self.j1) for al in magnetic_labels(self.j2)]

    def values(self) -> list[float]:
        return [self.phi[k] for k in self.labels()]

    def with_phase(self, a, alpha, value: float) -> "PhaseTable":
        """Copy of the table with one entry replaced (no validation)."""
        phi = dict(self.phi)
        phi[HalfInt.of(a), HalfInt.of(alpha)] = float(value)
        return PhaseTable(self.j1, self.j2, phi)

    @classmethod
    def from_values(cls, j1, j2, values: Sequence[float]) -> "PhaseTable":
        """Build a table from phases listed in basis order."""
        j1, j2 = spin(j1), spin(j2)
        labels = [(a, al) for a in magnetic_labels(j1) for al in magnetic_labels(j2)]
        if len(values) != len(labels):
            raise ValueError(f"expected {len(labels)} phases for ({j1}, {j2}), got {len(values)}")
        return cls(j1, j2, {k: float(v) for k, v in zip(labels, values)})


@dataclass(frozen=True)
class PhaseReport:
    """Worst violation (mod 2*pi) of each constraint family."""

    antisymmetry: float
    row: float
    column: float

    @property
    def worst(self) -> float:
        return max(self.antisymmetry, self.row, self.column)

    def ok(self, tol: float = PHASE_TOL) -> bool:
        return self.worst <= tol


def _extend_odd(j: HalfInt, values: Mapping, name: str) -> dict[HalfInt, float]:
    given = {HalfInt.of(k): float(v) for k, v in values.items()}
    out: dict[HalfInt, float] = {}
    for m in magnetic_labels(j):
        if m.twice > 0:
            if m not in given:
                raise ValueError(f"{name} has no value for label {m} of spin {j}")
            out[m] = given[m]
            out[-m] = -given[m]
        elif m.twice == 0:
            out[m] = 0.0
    return out


def make_phase_table(j1, j2, f: Mapping, g: Mapping) -> PhaseTable:
    """Additive table ``phi[a, alpha] = f[a] + g[alpha]``.

    ``f`` and ``g`` give values for the positive labels only; they are
    extended as odd functions (``f[-a] = -f[a]``, ``f[0] = 0``), which makes
    the table antisymmetric and satisfies both commutation conditions.
    """
    j1, j2 = spin(j1), spin(j2)
    ff = _extend_odd(j1, f, "f")
    gg = _extend_odd(j2, g, "g")
    phi = {(a, al): ff[a] + gg[al] for a in magnetic_labels(j1) for al in magnetic_labels(j2)}
    return PhaseTable(j1, j2, phi)


def validate_phase_table(t: PhaseTable) -> PhaseReport:
    la, lal = magnetic_labels(t.j1), magnetic_labels(t.j2)
    phi = t.phi
    anti = max(wrap_phase(phi[a, al] + phi[-a, -al]) for a in la for al in lal)
    row = 0.0
    for al in lal:
        sums = [phi[a, al] + phi[-a, al] for a in la]
        row = max(row, max(wrap_phase(s - sums[0]) for s in sums))
    column = 0.0
    for a in la:
        sums = [phi[a, al] + phi[a, -al] for al in lal]
        column = max(column, max(wrap_phase(s - sums[0]) for s in sums))
    return PhaseReport(anti, row, column)


@dataclass(frozen=True)
class XFormM:
    matrix: np.ndarray = field(repr=False)
    source: PhaseTable
    ordering: str  # "j1j2" acts on V^j1 (x) V^j2, "j2j1" on the swapped space


@dataclass(frozen=True)
class RMatrix:
    matrix: np.ndarray = field(repr=False)
    theta: float
    source: XFormM

    @property
    def dims(self) -> tuple[int, int]:
        d1, d2 = self.source.source.dims
        return (d1, d2) if self.source.ordering == "j1j2" else (d2, d1)


def _checked(t: PhaseTable, check: bool) -> None:
    if not check:
        return
    report = validate_phase_table(t)
    if not report.ok():
        raise PhaseConstraintError(
            "phase table violates the M-matrix constraints "
            f"(antisymmetry {report.antisymmetry:.3e}, row {report.row:.3e}, "
            f"column {report.column:.3e})"
        )


def _build(t: PhaseTable, index: Callable[[HalfInt, HalfInt], int], n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.complex128)
    for a, al in t.labels():
        m[index(a, al), index(-a, -al)] = np.exp(-1j * t.phi[a, al])
    return m


def build_m(t: PhaseTable, *, check: bool = True) -> XFormM:
    """M on ``V^j1 (x) V^j2``. ``check=False`` skips constraint validation."""
    _checked(t, check)
    n = t.j1.dim * t.j2.dim
    m = _build(t, lambda a, al: basis_index(t.j1, t.j2, a, al), n)
    return XFormM(m, t, "j1j2")


def build_m_partner(t: PhaseTable, *, check: bool = True) -> XFormM:
    """Partner M on ``V^j2 (x) V^j1`` with entries transported by label swap."""
    _checked(t, check)
    n = t.j1.dim * t.j2.dim
    m = _build(t, lambda a, al: basis_index(t.j2, t.j1, al, a), n)
    return XFormM(m, t, "j2j1")


def build_r(m: XFormM, theta: float) -> RMatrix:
    """``exp(-i theta/2 M) = cos(theta/2) I - i sin(theta/2) M`` (valid since M^2 = I)."""
    mat = as_matrix(m.matrix)
    r = math.cos(theta / 2) * identity(mat.shape[0]) - 1j * math.sin(theta / 2) * mat
    return RMatrix(r, float(theta), m)


def m_defects(m: XFormM) -> dict[str, float]:
    """Involution and Hermiticity defects of an M matrix."""
    mat = m.matrix
    return {
        "involution": max_abs(mat @ mat - identity(mat.shape[0])),
        "hermitian": max_abs(mat - dagger(mat)),
    }


def unitarity_defect(r: RMatrix) -> float:
    mat = r.matrix
    n = mat.shape[0]
    return max(max_abs(dagger(mat) @ mat - identity(n)), max_abs(mat @ dagger(mat) - identity(n)))


HALF = HalfInt(1)
ONE = HalfInt(2)
THREE_HALVES = HalfInt(3)


def family_4x4(phi: float) -> PhaseTable:
    """Two-qubit family: corner phase ``phi + pi/2``, middle phase 0."""
    half_corner = (phi + math.pi / 2) / 2
    return make_phase_table(HALF, HALF, {HALF: half_corner}, {HALF: half_corner})


def family_6x6(phi1: float, phi2: float) -> PhaseTable:
    """Spin-1 (x) spin-1/2 family with ``phi[0, 1/2] = (phi1 - phi2) / 2``."""
    return make_phase_table(ONE, HALF, {ONE: (phi1 + phi2) / 2}, {HALF: (phi1 - phi2) / 2})


def family_8x8(phi1: float, phi2: float, phi3: float, phi4: float) -> PhaseTable:
    """Spin-3/2 (x) spin-1/2 family; needs ``phi1 + phi4 = phi2 + phi3`` (mod 2*pi).

    The explicit ``i`` prefactor of the upper entries is absorbed as a
    ``-pi/2`` shift: ``i exp(-i x) = exp(-i (x - pi/2))``.
    """
    gap = wrap_phase(phi1 + phi4 - phi2 - phi3)
    if gap > PHASE_TOL:
        raise PhaseConstraintError(
            f"phases violate phi1 + phi4 = phi2 + phi3 (mod 2pi): off by {gap:.3e}"
        )
    shift = -math.pi / 2
    values = [phi1 + shift, phi2 + shift, phi3 + shift, phi4 + shift]
    values += [-v for v in reversed(values)]
    return PhaseTable.from_values(THREE_HALVES, HALF, values)


def random_family_table(family: str, rng: np.random.Generator) -> PhaseTable:
    """Draw a valid table of the named family with phases uniform in [-pi, pi)."""
    if family == "4x4":
        return family_4x4(rng.uniform(-math.pi, math.pi))
    if family == "6x6":
        return family_6x6(*rng.uniform(-math.pi, math.pi, 2))
    if family == "8x8":
        p1, p2, p3 = rng.uniform(-math.pi, math.pi, 3)
        return family_8x8(p1, p2, p3, p2 + p3 - p1)
    raise ValueError(f"unknown family {family!r}")
