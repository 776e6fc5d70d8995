"""Numerical checks of the M-matrix commutation relations and the braided YBE."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import commutator, embed_pair, max_abs
from .xform import PhaseTable, XFormM, build_m, build_m_partner, build_r


@dataclass(frozen=True)
class YbeReport:
    residual_line1: float
    residual_line2: float
    residual_m_comm_121: float
    residual_m_comm_212: float
    theta1: float
    theta2: float

    @property
    def worst(self) -> float:
        return max(self.residual_line1, self.residual_line2)


def chain_dims(t: PhaseTable) -> tuple[list[int], list[int]]:
    """Three-site spaces ``V^j1 V^j2 V^j1`` and ``V^j2 V^j1 V^j2``."""
    d1, d2 = t.dims
    return [d1, d2, d1], [d2, d1, d2]


def m_commutation_residuals(m: XFormM, partner: XFormM) -> tuple[float, float]:
    """``|[M12^(j1j2), M23^(j2j1)]|`` and ``|[M12^(j2j1), M23^(j1j2)]|`` (max entry)."""
    if m.ordering != "j1j2" or partner.ordering != "j2j1":
        raise ValueError("expected an M matrix and its partner, in that order")
    chain1, chain2 = chain_dims(m.source)
    first = commutator(embed_pair(m.matrix, chain1, 0), embed_pair(partner.matrix, chain1, 1))
    second = commutator(embed_pair(partner.matrix, chain2, 0), embed_pair(m.matrix, chain2, 1))
    return max_abs(first), max_abs(second)


def _braid_residual(left: XFormM, right: XFormM, dims: list[int], th1: float, th2: float) -> float:
    def r12(th):
        return embed_pair(build_r(left, th).matrix, dims, 0)

    def r23(th):
        return embed_pair(build_r(right, th).matrix, dims, 1)

    lhs = r12(th1) @ r23(th1 + th2) @ r12(th2)
    rhs = r23(th2) @ r12(th1 + th2) @ r23(th1)
    return max_abs(lhs - rhs)


def ybe_residual(table: PhaseTable, theta1: float, theta2: float, *, check: bool = True) -> YbeReport:
    """Max-entry mismatch of both braided Yang-Baxter lines at ``(theta1, theta2)``."""
    m = build_m(table, check=check)
    partner = build_m_partner(table, check=check)
    chain1, chain2 = chain_dims(table)
    comm = m_commutation_residuals(m, partner)
    return YbeReport(
        residual_line1=_braid_residual(m, partner, chain1, theta1, theta2),
        residual_line2=_braid_residual(partner, m, chain2, theta1, theta2),
        residual_m_comm_121=comm[0],
        residual_m_comm_212=comm[1],
        theta1=float(theta1),
        theta2=float(theta2),
    )


def random_ybe_trials(table: PhaseTable, n: int = 100, seed: int = 42, *,
                      check: bool = True) -> list[YbeReport]:
    """Evaluate the YBE at ``n`` seeded spectral-parameter pairs in [-pi, pi)."""
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(-math.pi, math.pi, size=(n, 2))
    return [ybe_residual(table, t1, t2, check=check) for t1, t2 in thetas]
