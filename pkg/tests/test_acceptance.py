"""Acceptance criteria, each run at its stated tolerance.

Every test records one PASS/FAIL line, printed in the pytest terminal
summary under "acceptance criteria", then asserts the same condition.
"""
import math

import numpy as np

from yangbaxter.cli import main
from yangbaxter.entangle import (
    DensityMatrix,
    concurrence_mixed,
    concurrence_pure,
    concurrence_xstate,
    entangle_basis,
    ghz_state,
    negativity,
    pairwise_concurrences,
    three_tangle,
    w_state,
)
from yangbaxter.hamiltonian import (
    analytic_block_eigenvalues,
    field_decomposition,
    hamiltonian,
    labeled_eigenpairs,
    pair_blocks,
    recast_sum,
)
from yangbaxter.linalg import hermitian_eig, max_abs, partial_transpose
from yangbaxter.xform import build_m, build_m_partner, build_r, m_defects, random_family_table, unitarity_defect
from yangbaxter.yangian import (
    build_generators,
    transfer_graph,
    verify_mixed,
    verify_serre,
    verify_sl2,
    verify_symmetry,
)
from yangbaxter.ybe import random_ybe_trials

FAMILIES = ("4x4", "6x6", "8x8")
THETA_SWEEP = np.linspace(0, 2 * math.pi, 100, endpoint=False)


def random_phis(rng):
    p1, p2, p3 = rng.uniform(-math.pi, math.pi, size=3)
    return [p1, p2, p3, p2 + p3 - p1]


def random_xstate(rng) -> DensityMatrix:
    p = rng.dirichlet(np.ones(4))
    c14 = rng.uniform(0, 1) * math.sqrt(p[0] * p[3]) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    c23 = rng.uniform(0, 1) * math.sqrt(p[1] * p[2]) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    rho = np.diag(p).astype(complex)
    rho[0, 3], rho[3, 0] = c14, np.conj(c14)
    rho[1, 2], rho[2, 1] = c23, np.conj(c23)
    return DensityMatrix(rho, (2, 2))


def test_criterion_01_unitarity_and_involution(acceptance):
    rng = np.random.default_rng(101)
    worst_inv = worst_unit = 0.0
    for family in FAMILIES:
        for _ in range(50):
            table = random_family_table(family, rng)
            theta = rng.uniform(-2 * math.pi, 2 * math.pi)
            for m in (build_m(table), build_m_partner(table)):
                worst_inv = max(worst_inv, m_defects(m)["involution"])
                worst_unit = max(worst_unit, unitarity_defect(build_r(m, theta)))
    ok = worst_inv <= 1e-12 and worst_unit <= 1e-12
    acceptance.record("1 unitarity & involution", ok,
                      f"max |M^2-I| = {worst_inv:.2e}, max |R^dag R-I| = {worst_unit:.2e} (tol 1e-12)")
    assert ok


def test_criterion_02_yang_baxter(acceptance):
    rng = np.random.default_rng(102)
    worst = {}
    for family in FAMILIES:
        trials = random_ybe_trials(random_family_table(family, rng), n=100, seed=42)
        worst[family] = max(r.worst for r in trials)
    ok = max(worst.values()) <= 1e-10
    detail = ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    acceptance.record("2 YBE both lines, 100 pairs per family", ok, f"{detail} (tol 1e-10)")
    assert ok


def test_criterion_03_negativity_law(acceptance):
    rng = np.random.default_rng(103)
    worst = {}
    misses = {}
    for family in ("4x4", "6x6"):
        table = random_family_table(family, rng)
        worst[family] = 0.0
        misses[family] = set()
        for theta in THETA_SWEEP:
            states = entangle_basis(build_r(build_m(table), theta))
            for k, psi in enumerate(states, start=1):
                err = abs(negativity(psi) - abs(math.sin(theta)))
                worst[family] = max(worst[family], err)
                if err > 1e-9:
                    misses[family].add(k)
    ok = max(worst.values()) <= 1e-9
    detail = "; ".join(
        f"{f} max err {worst[f]:.2e}" + (f" on states {sorted(misses[f])}" if misses[f] else "")
        for f in worst
    )
    acceptance.record("3 negativity = |sin theta|", ok, f"{detail} (tol 1e-9)")
    assert ok


def test_criterion_04_concurrence_consistency(acceptance):
    rng = np.random.default_rng(104)
    table = random_family_table("4x4", rng)
    pure_gap = 0.0
    for theta in THETA_SWEEP:
        for psi in entangle_basis(build_r(build_m(table), theta)):
            pure_gap = max(pure_gap, abs(concurrence_pure(psi) - negativity(psi)))
    x_gap = max(abs(concurrence_mixed(rho) - concurrence_xstate(rho))
                for rho in (random_xstate(rng) for _ in range(50)))
    ok = pure_gap <= 1e-9 and x_gap <= 1e-8
    acceptance.record("4 concurrence consistency", ok,
                      f"|C_pure - N| = {pure_gap:.2e} (tol 1e-9), |C_mixed - C_X| = {x_gap:.2e} (tol 1e-8)")
    assert ok


def test_criterion_05_three_tangle_law(acceptance):
    rng = np.random.default_rng(105)
    tangle_gap = pair_max = 0.0
    for _ in range(10):
        phis = random_phis(rng)
        for theta in THETA_SWEEP:
            pairs = labeled_eigenpairs(theta, phis)
            for key in pairs.keys():
                psi = pairs[key].state
                tangle_gap = max(tangle_gap, abs(three_tangle(psi) - math.sin(theta) ** 2))
                pair_max = max(pair_max, *pairwise_concurrences(psi))
    ghz = abs(three_tangle(ghz_state()) - 1)
    ghz_eig = abs(three_tangle(labeled_eigenpairs(math.pi / 2, [0.0] * 4)[1, "+"].state) - 1)
    w = three_tangle(w_state())
    ok = tangle_gap <= 1e-9 and pair_max <= 1e-9 and max(ghz, ghz_eig, w) <= 1e-9
    acceptance.record("5 three-tangle = sin^2 theta", ok,
                      f"max err {tangle_gap:.2e}, max pairwise C {pair_max:.2e}, "
                      f"GHZ err {max(ghz, ghz_eig):.1e}, W tangle {w:.1e} (tol 1e-9)")
    assert ok


def test_criterion_06_spectrum_and_fields(acceptance):
    rng = np.random.default_rng(106)
    expected = np.array([-0.5] * 4 + [0.5] * 4)
    spec_gap = field_gap = 0.0
    for _ in range(10):
        phis = random_phis(rng)
        for theta in THETA_SWEEP:
            h = hamiltonian(theta, phis)
            spec_gap = max(spec_gap, max_abs(hermitian_eig(h).values - expected))
            field_gap = max(field_gap, max_abs(field_decomposition(theta, phis).reconstruct() - h))
    ok = spec_gap <= 1e-10 and field_gap <= 1e-10
    acceptance.record("6 spectrum {+-1/2}x4 and field decomposition", ok,
                      f"spectrum err {spec_gap:.2e}, reconstruction err {field_gap:.2e} (tol 1e-10)")
    assert ok


def test_criterion_07_recast_factor(acceptance):
    rng = np.random.default_rng(107)
    gap_2h = gap_h = 0.0
    for _ in range(20):
        theta, phis = rng.uniform(-math.pi, math.pi), random_phis(rng)
        h = hamiltonian(theta, phis)
        recast = recast_sum(labeled_eigenpairs(theta, phis))
        gap_2h = max(gap_2h, max_abs(recast - 2 * h))
        gap_h = max(gap_h, max_abs(recast - h))
    ok = gap_2h <= 1e-10
    acceptance.record("7 projector recast equals 2H", ok,
                      f"|sum(P+ - P-) - 2H| = {gap_2h:.2e} (tol 1e-10); against H as written {gap_h:.2e}")
    assert ok


def test_criterion_08_yangian_algebra(acceptance):
    rng = np.random.default_rng(108)
    worst: dict[str, float] = {}
    for _ in range(20):
        theta, phis = rng.uniform(-math.pi, math.pi), random_phis(rng)
        g = build_generators(labeled_eigenpairs(theta, phis))
        reports = (verify_sl2(g), verify_mixed(g), verify_serre(g), verify_symmetry(hamiltonian(theta, phis), g))
        for report in reports:
            for name, residual in report.items():
                worst[name] = max(worst.get(name, 0.0), residual)
    failing = {k: v for k, v in worst.items() if v > 1e-10}
    ok = not failing
    detail = f"{len(worst)} relations, max residual among passing " \
             f"{max(v for k, v in worst.items() if k not in failing):.2e}"
    if failing:
        detail += "; failing: " + ", ".join(f"{k} ({v:.3g})" for k, v in failing.items())
    acceptance.record("8 Yangian relations and [H,Y] = 0", ok, f"{detail} (tol 1e-10)")
    assert ok


def test_criterion_09_transfer_graph(acceptance, tmp_path, capsys):
    pairs = labeled_eigenpairs(0.9, [0.1, 0.2, 0.3, 0.4])
    graph = transfer_graph(build_generators(pairs), pairs)
    got = {(e.generator, e.source, e.target): e.coefficient for e in graph.edges}
    expected = {}
    for s in "+-":
        expected.update({
            ("I+", (2, s), (1, s)): 1, ("I+", (4, s), (3, s)): 1,
            ("I-", (1, s), (2, s)): 1, ("I-", (3, s), (4, s)): 1,
            ("I3", (1, s), (1, s)): 0.5, ("I3", (3, s), (3, s)): 0.5,
            ("I3", (2, s), (2, s)): -0.5, ("I3", (4, s), (4, s)): -0.5,
            ("F+", (4, s), (1, s)): 2, ("F+", (2, s), (3, s)): 2,
            ("F-", (1, s), (4, s)): 2, ("F-", (3, s), (2, s)): 2,
            ("F3", (3, s), (1, s)): 1, ("F3", (4, s), (2, s)): -1,
            ("F3", (1, s), (3, s)): 1, ("F3", (2, s), (4, s)): -1,
        })
    same_edges = set(got) == set(expected)
    coeff_gap = max(abs(got[k] - expected[k]) for k in expected) if same_edges else math.inf
    outputs = []
    for name in ("a.dot", "b.dot"):
        path = tmp_path / name
        main(["transfer-graph", "--family", "8x8", "--phases", "0.1,0.2,0.3,0.4", "--output", str(path)])
        outputs.append(path.read_bytes())
    stable = outputs[0] == outputs[1]
    ok = same_edges and coeff_gap <= 1e-9 and stable
    acceptance.record("9 transfer graph", ok,
                      f"{len(got)} edges, edge set matches: {same_edges}, coefficient err {coeff_gap:.1e}, "
                      f"byte-stable: {stable}")
    assert ok


def test_criterion_10_oracle_cross_checks(acceptance):
    rng = np.random.default_rng(110)
    block_gap = 0.0
    for _ in range(20):
        h = hamiltonian(rng.uniform(-math.pi, math.pi), random_phis(rng))
        for block in pair_blocks(h):
            block_gap = max(block_gap, max_abs(hermitian_eig(block).values
                                               - np.array(analytic_block_eigenvalues(block))))
    bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
    pt_values = hermitian_eig(partial_transpose(np.outer(bell, bell), 2, 2)).values
    bell_gap = max_abs(pt_values - np.array([-0.5, 0.5, 0.5, 0.5]))
    ok = block_gap <= 1e-10 and bell_gap <= 1e-10
    acceptance.record("10 oracle cross-checks", ok,
                      f"Jacobi vs 2x2 analytic {block_gap:.2e}, Bell partial transpose {bell_gap:.2e} (tol 1e-10)")
    assert ok
