"""Yangian Y(sl(2)) generators built on the labeled eigenstates of H.

The generators only ever join eigenstates of equal energy, so they commute
with ``H`` and act as shift operators inside each energy sector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import SIGNS, LabeledEigenpairs
from .linalg import as_matrix, commutator, dagger, max_abs

GENERATOR_NAMES = ("I+", "I-", "I3", "F+", "F-", "F3")
GRAPH_TOL = 1e-9


@dataclass(frozen=True)
class YangianParams:
    alpha: complex = 1.0
    beta: complex = 1.0
    gamma: complex = 1.0
    delta: complex = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            value = complex(getattr(self, name))
            if abs(value) <= 1e-12:
                raise ValueError(f"Yangian parameter {name} must be nonzero")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class GeneratorSet:
    i_plus: np.ndarray = field(repr=False)
    i_minus: np.ndarray = field(repr=False)
    i_3: np.ndarray = field(repr=False)
    f_plus: np.ndarray = field(repr=False)
    f_minus: np.ndarray = field(repr=False)
    f_3: np.ndarray = field(repr=False)

    def items(self) -> list[tuple[str, np.ndarray]]:
        mats = (self.i_plus, self.i_minus, self.i_3, self.f_plus, self.f_minus, self.f_3)
        return list(zip(GENERATOR_NAMES, mats))


def build_generators(pairs: LabeledEigenpairs, params: YangianParams | None = None) -> GeneratorSet:
    params = params or YangianParams()

    def ket_bra(i: int, j: int, sign: str) -> np.ndarray:
        return np.outer(pairs.vector(i, sign), pairs.vector(j, sign).conj())

    i_plus = sum(ket_bra(1, 2, s) + ket_bra(3, 4, s) for s in SIGNS)
    i_minus = sum(ket_bra(2, 1, s) + ket_bra(4, 3, s) for s in SIGNS)
    i_3 = 0.5 * sum(ket_bra(1, 1, s) + ket_bra(3, 3, s) - ket_bra(2, 2, s) - ket_bra(4, 4, s)
                    for s in SIGNS)

    f_plus = np.zeros((8, 8), dtype=np.complex128)
    f_minus = np.zeros_like(f_plus)
    f_3 = np.zeros_like(f_plus)
    # (scale, twist) is (alpha, beta) on the + sector and (gamma, delta) on the - sector.
    for s, scale, twist in (("+", params.alpha, params.beta), ("-", params.gamma, params.delta)):
        f_plus += 2 * scale * (ket_bra(1, 4, s) + twist * ket_bra(3, 2, s))
        f_minus += 2 * scale * (twist * ket_bra(4, 1, s) + ket_bra(2, 3, s))
        f_3 += scale * (ket_bra(1, 3, s) - ket_bra(2, 4, s)
                        + twist * ket_bra(3, 1, s) - twist * ket_bra(4, 2, s))
    return GeneratorSet(i_plus, i_minus, i_3, f_plus, f_minus, f_3)


def _c(a, b):
    return commutator(a, b)


def verify_sl2(g: GeneratorSet) -> dict[str, float]:
    return {
        "[I3,I+] = +I+": max_abs(_c(g.i_3, g.i_plus) - g.i_plus),
        "[I3,I-] = -I-": max_abs(_c(g.i_3, g.i_minus) + g.i_minus),
        "[I+,I-] = 2 I3": max_abs(_c(g.i_plus, g.i_minus) - 2 * g.i_3),
    }


def verify_mixed(g: GeneratorSet) -> dict[str, float]:
    return {
        "[I3,F+] = +F+": max_abs(_c(g.i_3, g.f_plus) - g.f_plus),
        "[I3,F-] = -F-": max_abs(_c(g.i_3, g.f_minus) + g.f_minus),
        "[F3,I+] = +F+": max_abs(_c(g.f_3, g.i_plus) - g.f_plus),
        "[F3,I-] = -F-": max_abs(_c(g.f_3, g.i_minus) + g.f_minus),
        "[I+,F-] = +2 F3": max_abs(_c(g.i_plus, g.f_minus) - 2 * g.f_3),
        "[I-,F+] = -2 F3": max_abs(_c(g.i_minus, g.f_plus) + 2 * g.f_3),
        "[I3,F3] = 0": max_abs(_c(g.i_3, g.f_3)),
        "[I+,F+] = 0": max_abs(_c(g.i_plus, g.f_plus)),
        "[I-,F-] = 0": max_abs(_c(g.i_minus, g.f_minus)),
    }


def verify_serre(g: GeneratorSet) -> dict[str, float]:
    """The five nested-commutator relations with signs exactly as usually quoted.

    The last entry, ``[F-,[F-,F+]] - 2[F3,[F3,F-]]``, does not vanish for
    these generators; see :func:`serre_sign_check`.
    """
    fp, fm, f3 = g.f_plus, g.f_minus, g.f_3
    return {
        "[F3,[F+,F-]] = 0": max_abs(_c(f3, _c(fp, fm))),
        "[F+,[F3,F+]] = 0": max_abs(_c(fp, _c(f3, fp))),
        "[F-,[F3,F-]] = 0": max_abs(_c(fm, _c(f3, fm))),
        "[F+,[F+,F-]] + 2[F3,[F3,F+]] = 0": max_abs(_c(fp, _c(fp, fm)) + 2 * _c(f3, _c(f3, fp))),
        "[F-,[F-,F+]] - 2[F3,[F3,F-]] = 0": max_abs(_c(fm, _c(fm, fp)) - 2 * _c(f3, _c(f3, fm))),
    }


def serre_sign_check(g: GeneratorSet) -> dict[str, float]:
    """Both sign choices for the lowering Serre-type relation.

    Transposition maps ``F+ <-> F-`` (up to parameters) and fixes ``F3``, so
    the relation mirrored from the raising one carries a ``+`` sign.
    """
    fp, fm, f3 = g.f_plus, g.f_minus, g.f_3
    lhs = _c(fm, _c(fm, fp))
    rhs = _c(f3, _c(f3, fm))
    return {
        "[F-,[F-,F+]] - 2[F3,[F3,F-]]": max_abs(lhs - 2 * rhs),
        "[F-,[F-,F+]] + 2[F3,[F3,F-]]": max_abs(lhs + 2 * rhs),
    }


SWEEP_VALUES = (0.5, 1.0, 2.0, complex(np.exp(1j * np.pi / 4)))


def serre_sweep(pairs: LabeledEigenpairs, values=SWEEP_VALUES) -> list[tuple[YangianParams, dict[str, float]]]:
    """Serre residuals for every (alpha, beta, gamma, delta) drawn from ``values``."""
    out = []
    for combo in itertools.product(values, repeat=4):
        params = YangianParams(*combo)
        out.append((params, verify_serre(build_generators(pairs, params))))
    return out


def verify_symmetry(h, g: GeneratorSet) -> dict[str, float]:
    h = as_matrix(h)
    if h.shape != (8, 8) or max_abs(h - dagger(h)) > 1e-10:
        raise ValueError("expected a Hermitian 8x8 Hamiltonian")
    return {f"[H,{name}] = 0": max_abs(_c(h, y)) for name, y in g.items()}


def casimir(g: GeneratorSet) -> np.ndarray:
    """``I+ I- + I- I+ + 2 I3^2``."""
    return g.i_plus @ g.i_minus + g.i_minus @ g.i_plus + 2 * g.i_3 @ g.i_3


@dataclass(frozen=True)
class Edge:
    generator: str
    source: tuple[int, str]
    target: tuple[int, str]
    coefficient: complex


@dataclass(frozen=True)
class TransferGraph:
    nodes: tuple[tuple[int, str], ...]
    edges: tuple[Edge, ...]


def node_name(node: tuple[int, str]) -> str:
    i, sign = node
    return f"e{i}{'p' if sign == '+' else 'm'}"


def transfer_graph(g: GeneratorSet, pairs: LabeledEigenpairs, tol: float = GRAPH_TOL) -> TransferGraph:
    """Record every ``Y|e> = c|e'>`` among the labeled eigenstates."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    nodes = tuple(pairs.keys())
    basis = np.column_stack([pairs.vector(*n) for n in nodes])
    edges = []
    for name, y in g.items():
        for src_idx, src in enumerate(nodes):
            image = y @ basis[:, src_idx]
            if np.linalg.norm(image) < tol:
                continue
            overlaps = basis.conj().T @ image
            hits = np.flatnonzero(np.abs(overlaps) > tol)
            if len(hits) != 1:
                raise ValueError(
                    f"{name} maps {node_name(src)} onto {len(hits)} eigenstates; "
                    "generators or eigenpairs are inconsistent"
                )
            k = int(hits[0])
            coeff = complex(overlaps[k])
            if max_abs(image - coeff * basis[:, k]) > tol:
                raise ValueError(f"{name} image of {node_name(src)} is not proportional to an eigenstate")
            if nodes[k][1] != src[1]:
                raise ValueError(f"{name} connects different energy sectors")
            edges.append(Edge(name, src, nodes[k], coeff))
    return TransferGraph(nodes, tuple(edges))


def _fmt(x: float) -> str:
    return f"{round(x, 6) + 0.0:.6f}"


def coefficient_label(c: complex) -> str:
    return f"{_fmt(c.real)}{'-' if round(c.imag, 6) < 0 else '+'}{_fmt(abs(c.imag))}i"


def emit_dot(graph: TransferGraph) -> str:
    """Deterministic graphviz ``digraph`` text for a transfer graph."""
    order = {n: k for k, n in enumerate(sorted(graph.nodes, key=lambda n: (n[0], n[1] != "+")))}
    lines = [
        "digraph transfer {",
        "  // edges derived from the generator definitions",
    ]
    for node in sorted(graph.nodes, key=order.get):
        i, sign = node
        lines.append(f'  {node_name(node)} [label="e{i}{sign}"];')
    for e in sorted(graph.edges, key=lambda e: (e.generator, order[e.source], order[e.target])):
        lines.append(
            f'  {node_name(e.source)} -> {node_name(e.target)} '
            f'[label="{e.generator} {coefficient_label(e.coefficient)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: TransferGraph) -> dict:
    """JSON-ready form with the same node and edge ordering as :func:`emit_dot`."""
    order = {n: k for k, n in enumerate(graph.nodes)}
    edges = sorted(graph.edges, key=lambda e: (e.generator, order[e.source], order[e.target]))
    return {
        "nodes": [node_name(n) for n in graph.nodes],
        "edges": [
            {
                "generator": e.generator,
                "source": node_name(e.source),
                "target": node_name(e.target),
                "coefficient": [round(e.coefficient.real, 12) + 0.0, round(e.coefficient.imag, 12) + 0.0],
            }
            for e in edges
        ],
    }
