"""Command-line interface: ``yangbaxter {build-r,verify,sweep,spectrum,transfer-graph}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import entangle, hamiltonian, linalg, xform, yangian, ybe

FAMILIES = ("4x4", "6x6", "8x8", "general")
DEFAULT_THETA = math.pi / 3
SWEEP_HEADER = ["theta", "state_label", "measure", "value", "analytic", "abs_error"]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "4x4"
    theta: float = DEFAULT_THETA
    phases: list[float] | None = None
    phases_raw: list[float] | None = None
    j1: str | None = None
    j2: str | None = None
    f: list[float] = field(default_factory=list)
    g: list[float] = field(default_factory=list)
    partner: bool = False
    start: float = 0.0
    stop: float = math.pi
    count: int = 5
    measure: str = "all"
    trials: int = 100
    seed: int = 42
    params: tuple[complex, complex, complex, complex] = (1, 1, 1, 1)
    output: str | None = None
    format: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        known = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__ and v is not None}
        return cls(**known)


# -- argument parsing -------------------------------------------------------

def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {exc}") from None


def _complexes(text: str) -> tuple[complex, ...]:
    try:
        values = tuple(complex(x.strip().replace(" ", "")) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers: {exc}") from None
    if len(values) != 4:
        raise argparse.ArgumentTypeError("expected four values alpha,beta,gamma,delta")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yangbaxter",
        description="X-form Yang-Baxter R-matrices, entanglement and Yangian checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--family", choices=FAMILIES, default="4x4")
    table.add_argument("--phases", type=_floats,
                       help="family phases, comma separated (4x4: phi; 6x6: phi1,phi2; 8x8: phi1..phi4)")
    table.add_argument("--phases-raw", type=_floats,
                       help="full phase table in basis order, used without constraint checks")
    table.add_argument("--j1", help="first spin for --family general, e.g. 1 or 3/2")
    table.add_argument("--j2", help="second spin for --family general")
    table.add_argument("--f", type=_floats, default=[], help="f values for positive j1 labels, descending")
    table.add_argument("--g", type=_floats, default=[], help="g values for positive j2 labels, descending")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="output path (default: stdout)")

    p = sub.add_parser("build-r", parents=[table, common], help="print R(theta) as matrix JSON")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--partner", action="store_true", help="build the swapped-space partner R")

    p = sub.add_parser("verify", parents=[table, common], help="run the numerical verification suite")
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--params", type=_complexes, default=(1, 1, 1, 1))
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("sweep", parents=[table, common], help="entanglement measures over a theta grid (CSV)")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=math.pi)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--measure", choices=("all", "negativity", "concurrence", "tangle", "pairwise"),
                   default="all")

    p = sub.add_parser("spectrum", parents=[table, common], help="spectrum of the 8x8 Hamiltonian")
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--format", choices=("text", "json"), default="json")

    p = sub.add_parser("transfer-graph", parents=[table, common], help="Yangian shift-operator graph")
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--params", type=_complexes, default=(1, 1, 1, 1))
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    return parser


# -- shared helpers ---------------------------------------------------------

_FAMILY_ARITY = {"4x4": 1, "6x6": 2, "8x8": 4}


def family_phases(config: RunConfig) -> list[float]:
    n = _FAMILY_ARITY[config.family]
    phases = config.phases if config.phases is not None else [0.0] * n
    if len(phases) != n:
        raise ConfigError(f"--family {config.family} takes {n} phase(s), got {len(phases)}")
    return list(phases)


def resolve_table(config: RunConfig) -> tuple[xform.PhaseTable, bool]:
    """Phase table named by the config, and whether constraints should be enforced."""
    if config.family == "general":
        if not (config.j1 and config.j2):
            raise ConfigError("--family general needs --j1 and --j2")
        j1, j2 = xform.spin(config.j1), xform.spin(config.j2)
    else:
        j1, j2 = {"4x4": (xform.HALF, xform.HALF), "6x6": (xform.ONE, xform.HALF),
                  "8x8": (xform.THREE_HALVES, xform.HALF)}[config.family]
    if config.phases_raw is not None:
        return xform.PhaseTable.from_values(j1, j2, config.phases_raw), False
    if config.family == "general":
        pos1 = [m for m in xform.magnetic_labels(j1) if m.twice > 0]
        pos2 = [m for m in xform.magnetic_labels(j2) if m.twice > 0]
        if len(config.f) != len(pos1) or len(config.g) != len(pos2):
            raise ConfigError(f"--f needs {len(pos1)} value(s) and --g needs {len(pos2)} value(s)")
        return xform.make_phase_table(j1, j2, dict(zip(pos1, config.f)), dict(zip(pos2, config.g))), True
    phases = family_phases(config)
    builder = {"4x4": xform.family_4x4, "6x6": xform.family_6x6, "8x8": xform.family_8x8}[config.family]
    return builder(*phases), True


def _num(x: float) -> float:
    return float(x) + 0.0


def matrix_to_json(m) -> dict:
    m = linalg.as_matrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[_num(z.real), _num(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_json(doc: dict) -> np.ndarray:
    rows, cols = int(doc["rows"]), int(doc["cols"])
    entries = doc["entries"]
    if len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
    return np.array([complex(re, im) for re, im in entries], dtype=np.complex128).reshape(rows, cols)


def _fmt12(x: float) -> str:
    return f"{_num(x):.12g}"


# -- commands ---------------------------------------------------------------

def cmd_build_r(config: RunConfig) -> tuple[str, int]:
    table, check = resolve_table(config)
    m = xform.build_m_partner(table, check=check) if config.partner else xform.build_m(table, check=check)
    r = xform.build_r(m, config.theta)
    return json.dumps(matrix_to_json(r.matrix)) + "\n", 0


@dataclass
class Check:
    name: str
    residual: float
    tol: float | None  # None marks an informational line

    @property
    def passed(self) -> bool:
        return self.tol is None or self.residual <= self.tol

    def line(self) -> str:
        if self.tol is None:
            return f"{self.name}: INFO (residual {self.residual:.3e})"
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} (residual {self.residual:.3e}, tol {self.tol:.0e})"


def run_checks(config: RunConfig) -> list[Check]:
    table, check = resolve_table(config)
    m = xform.build_m(table, check=check)
    partner = xform.build_m_partner(table, check=check)
    checks = [Check("phase constraints", xform.validate_phase_table(table).worst, 1e-9)]
    for label, mm in (("M", m), ("M partner", partner)):
        defects = xform.m_defects(mm)
        checks.append(Check(f"{label} involution", defects["involution"], 1e-12))
        checks.append(Check(f"{label} Hermitian", defects["hermitian"], 1e-12))
        checks.append(Check(f"{label} R(theta) unitarity",
                            xform.unitarity_defect(xform.build_r(mm, config.theta)), 1e-12))
    comm = ybe.m_commutation_residuals(m, partner)
    checks.append(Check("M commutation, chain j1 j2 j1", comm[0], 1e-12))
    checks.append(Check("M commutation, chain j2 j1 j2", comm[1], 1e-12))
    trials = ybe.random_ybe_trials(table, config.trials, config.seed, check=check)
    checks.append(Check(f"YBE line 1 ({config.trials} trials)", max(t.residual_line1 for t in trials), 1e-10))
    checks.append(Check(f"YBE line 2 ({config.trials} trials)", max(t.residual_line2 for t in trials), 1e-10))

    if config.family == "8x8" and config.phases_raw is None:
        checks.extend(_hamiltonian_checks(config))
    return checks


def _hamiltonian_checks(config: RunConfig) -> list[Check]:
    phis = family_phases(config)
    theta = config.theta
    h = hamiltonian.hamiltonian(theta, phis)
    values = linalg.hermitian_eig(h).values
    expected = np.array([-0.5] * 4 + [0.5] * 4)
    out = [Check("spectrum {±1/2} ×4", linalg.max_abs(values - expected), 1e-10)]

    fields = hamiltonian.field_decomposition(theta, phis)
    out.append(Check("field decomposition sum B_i.S_i = H", linalg.max_abs(fields.reconstruct() - h), 1e-10))

    pairs = hamiltonian.labeled_eigenpairs(theta, phis)
    defect = max(linalg.max_abs(h @ pairs.vector(*k) - pairs[k].energy * pairs.vector(*k)) for k in pairs.keys())
    out.append(Check("analytic eigenpairs H e = E e", defect, 1e-10))

    recast = hamiltonian.recast_sum(pairs)
    out.append(Check("projector recast sum(P+ - P-) = 2H", linalg.max_abs(recast - 2 * h), 1e-10))
    out.append(Check("projector recast sum(P+ - P-) vs H as written", linalg.max_abs(recast - h), None))

    block_gap = 0.0
    for block in hamiltonian.pair_blocks(h):
        block_gap = max(block_gap, linalg.max_abs(
            linalg.hermitian_eig(block).values - np.array(hamiltonian.analytic_block_eigenvalues(block))))
    out.append(Check("Jacobi vs analytic 2x2 blocks", block_gap, 1e-10))

    gens = yangian.build_generators(pairs, yangian.YangianParams(*config.params))
    for suite in (yangian.verify_sl2(gens), yangian.verify_mixed(gens), yangian.verify_serre(gens)):
        out.extend(Check(name, res, 1e-10) for name, res in suite.items())
    corrected = yangian.serre_sign_check(gens)["[F-,[F-,F+]] + 2[F3,[F3,F-]]"]
    out.append(Check("[F-,[F-,F+]] + 2[F3,[F3,F-]] = 0 (sign mirrored from F+)", corrected, None))
    sym = yangian.verify_symmetry(h, gens)
    out.append(Check("[H,Y]=0 (6 generators)", max(sym.values()), 1e-10))
    return out


def cmd_verify(config: RunConfig) -> tuple[str, int]:
    checks = run_checks(config)
    ok = all(c.passed for c in checks)
    if config.format == "json":
        doc = {
            "family": config.family,
            "theta": config.theta,
            "seed": config.seed,
            "checks": [
                {"name": c.name, "residual": c.residual, "tol": c.tol,
                 "status": "INFO" if c.tol is None else ("PASS" if c.passed else "FAIL")}
                for c in checks
            ],
            "all_passed": ok,
        }
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        lines = [c.line() for c in checks]
        lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    return text, 0 if ok else 1


def sweep_rows(config: RunConfig) -> list[list[str]]:
    if config.count < 2:
        raise ConfigError("sweep --count must be at least 2")
    if not (math.isfinite(config.start) and math.isfinite(config.stop)):
        raise ConfigError("sweep range must be finite")
    table, check = resolve_table(config)
    wanted = config.measure
    rows: list[list[str]] = []

    def emit(theta, label, measure, value, analytic):
        err = "" if analytic is None else _fmt12(abs(value - analytic))
        rows.append([_fmt12(theta), label, measure, _fmt12(value),
                     "" if analytic is None else _fmt12(analytic), err])

    for theta in np.linspace(config.start, config.stop, config.count):
        theta = float(theta)
        if config.family == "8x8" and config.phases_raw is None:
            pairs = hamiltonian.labeled_eigenpairs(theta, family_phases(config))
            for key in pairs.keys():
                label = f"e{key[0]}{key[1]}"
                psi = pairs[key].state
                if wanted in ("all", "tangle"):
                    emit(theta, label, "three_tangle", entangle.three_tangle(psi), math.sin(theta) ** 2)
                if wanted in ("all", "pairwise", "concurrence"):
                    for name, value in zip(("C_AB", "C_AC", "C_BC"), entangle.pairwise_concurrences(psi)):
                        emit(theta, label, f"concurrence_{name[2:]}", value, 0.0)
            continue
        r = xform.build_r(xform.build_m(table, check=check), theta)
        analytic = abs(math.sin(theta)) if config.family in ("4x4", "6x6") and check else None
        for k, psi in enumerate(entangle.entangle_basis(r), start=1):
            label = f"e{k}"
            if wanted in ("all", "negativity"):
                emit(theta, label, "negativity", entangle.negativity(psi), analytic)
            if wanted in ("all", "concurrence") and psi.dims == (2, 2):
                emit(theta, label, "concurrence", entangle.concurrence_pure(psi), analytic)
    return rows


def cmd_sweep(config: RunConfig) -> tuple[str, int]:
    rows = sweep_rows(config)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    writer.writerows(rows)
    return buf.getvalue(), 0


def _require_8x8(config: RunConfig) -> list[float]:
    if config.family != "8x8" or config.phases_raw is not None:
        raise ConfigError("this command needs --family 8x8 with --phases")
    return family_phases(config)


def cmd_spectrum(config: RunConfig) -> tuple[str, int]:
    phis = _require_8x8(config)
    h = hamiltonian.hamiltonian(config.theta, phis)
    values = [_num(v) for v in linalg.hermitian_eig(h).values]
    pairs = hamiltonian.labeled_eigenpairs(config.theta, phis)
    labeled = {f"e{i}{s}": pairs[i, s].energy for i, s in pairs.keys()}
    if config.format == "text":
        lines = [f"theta = {config.theta!r}", "eigenvalues: " + " ".join(f"{v:+.12f}" for v in values)]
        lines += [f"{k}: {v:+.1f}" for k, v in labeled.items()]
        return "\n".join(lines) + "\n", 0
    doc = {"theta": config.theta, "phases": phis, "eigenvalues": values, "labeled": labeled}
    return json.dumps(doc, indent=2) + "\n", 0


def cmd_transfer_graph(config: RunConfig) -> tuple[str, int]:
    phis = _require_8x8(config)
    pairs = hamiltonian.labeled_eigenpairs(config.theta, phis)
    gens = yangian.build_generators(pairs, yangian.YangianParams(*config.params))
    graph = yangian.transfer_graph(gens, pairs)
    if config.format == "json":
        return json.dumps(yangian.graph_to_dict(graph), indent=2) + "\n", 0
    return yangian.emit_dot(graph), 0


COMMANDS = {
    "build-r": cmd_build_r,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "spectrum": cmd_spectrum,
    "transfer-graph": cmd_transfer_graph,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    config = RunConfig.from_args(ns)
    try:
        text, code = COMMANDS[config.command](config)
    except (ConfigError, xform.PhaseConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
