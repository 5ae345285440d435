"""Acceptance criteria 1-9, each printed as one PASS/FAIL line.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""
from __future__ import annotations

import time
from math import comb

import numpy as np
import pytest

from qball.algebra.poly import z
from qball.algebra.rewrite import HOLOMORPHIC, POL, SL, check_confluence, graded_dimension, rewrite_system
from qball.rep.fock import FockRepresentation
from qball.rep.operators import TruncationConfig
from qball.rep.paths import brute_force_generator, enumerate_paths, fock_generator
from qball.rep.reps import reconstruct_z11, split_A_B
from qball.verify.suites import SuiteConfig, max_modulus_check, run_suite


def _suite(name, **kw):
    return run_suite(SuiteConfig(suites=(name,), **kw))


def _fails(rep) -> str:
    bad = rep.failures()
    return ", ".join(f"{c.name}={c.residual:.2e}" for c in bad[:4])


def criterion_1():
    problems = []
    for n in (1, 2, 3):
        for d in range(5):
            got = graded_dimension(HOLOMORPHIC, n, d)
            if got != comb(n * n + d - 1, d):
                problems.append(f"dim(n={n},d={d})={got}")
        kinds = (HOLOMORPHIC, POL) if n == 1 else (HOLOMORPHIC, POL, SL)
        for kind in kinds:
            rep = check_confluence(rewrite_system(kind, n), 3)
            if not rep.passed:
                problems.append(f"confluence({kind},n={n})")
    return not problems, "; ".join(problems) or "dimensions and confluence ok for n<=3", 30


def criterion_2():
    problems = []
    for n, N in ((2, 6), (3, 3)):
        cfg = TruncationConfig(0.5, N)
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if not fock_generator(n, j, k, cfg).allclose(brute_force_generator(n, j, k, cfg)):
                    problems.append(f"T(z[{k},{j}]) n={n}")
    rep = _suite("fock-oracle", n=2, N=6)
    if not rep.passed:
        problems.append("dense oracle: " + _fails(rep))
    paths = enumerate_paths(3, 1, 1)
    if len(paths) != 6:
        problems.append(f"{len(paths)} diagrams")
    first = paths[0]
    if first.factors != ("Dq", "Dq", "CqS", "I", "I", "Dq", "I", "I", "Dq") or first.coeff != 1:
        problems.append(f"first diagram {first.factors} coeff {first.coeff}")
    return not problems, "; ".join(problems) or "path calculus equals brute force; 6 diagrams", 60


def criterion_3():
    details, ok = [], True
    for n, N in ((2, 12), (3, 4)):
        rep = _suite("relations", n=n, N=N)
        fock = [c for c in rep.checks if c.name.startswith("relations:fock:")]
        worst = max(c.residual for c in fock)
        ok &= all(c.residual <= 1e-10 for c in fock)
        details.append(f"n={n} N={N} max residual {worst:.1e}")
    return ok, "; ".join(details), 300


def criterion_4():
    vac = _suite("vacuum", n=2)
    zero = all(c.residual == 0 for c in vac.checks)
    gram = _suite("basis", n=2, degree=3)
    off = next(c for c in gram.checks if c.name.endswith("gram-offdiagonal"))
    ok = zero and gram.passed and off.residual <= 1e-12
    return ok, f"vacuum exact={zero}; gram off-diagonal {off.residual:.1e}", None


def criterion_5():
    problems, notes = [], []
    rep = _suite("character", n=2, samples=100)
    agree = next(c for c in rep.checks if c.name.endswith("direct-vs-paths"))
    dom = next(c for c in rep.checks if c.name.endswith("domination"))
    notes.append(f"character gap {agree.residual:.1e}; domination violations {int(dom.residual)}")
    if agree.residual > 1e-12 or dom.residual != 0:
        problems.append("characters")
    for n in (1, 2, 3):
        rep = _suite("coherent", n=n)
        if not rep.passed:
            problems.append(f"coherent n={n}: " + _fails(rep))
    cfg = TruncationConfig(0.5, 6)
    if not reconstruct_z11(split_A_B(2, cfg), 2).allclose(FockRepresentation(2, cfg).letter(z(1, 1))):
        problems.append("split reconstruction")
    return not problems, "; ".join(problems + notes), None


def criterion_6():
    rep = _suite("boundary-ideal", n=2)
    gens = [c for c in rep.checks if ":generators:" in c.name]
    worst = max(c.residual for c in gens)
    ok = len(gens) == 3 and all(c.residual <= 1e-10 for c in gens)
    return ok, f"3 words x 64 angle vectors x 4 generators, max norm {worst:.1e}", None


def criterion_7():
    notes, ok = [], True
    rep1 = max_modulus_check(SuiteConfig(n=1, q=0.5, degree=5), samples=20)
    for c in rep1.checks:
        ok &= c.passed
        notes.append(f"n=1 {c.name} {c.residual:.2e}")
    for n in (1, 2):
        rep = max_modulus_check(SuiteConfig(n=n, q=0.5, seed=1000), samples=50)
        c = next(c for c in rep.checks if c.name == "one-sided")
        ok &= c.residual == 0
        notes.append(f"n={n} one-sided violations {int(c.residual)}/50")
    return ok, "; ".join(notes), None


def criterion_8():
    rep = _suite("dilation", n=2)
    cqs = [c for c in rep.checks if c.name.startswith("dilation:CqS:")]
    worst = max(c.residual for c in cqs)
    ok = rep.passed and worst < 1e-12
    return ok, f"C_qS steps=4 residual {worst:.1e}; Fock compression {rep.max_residual():.1e}", None


def criterion_9():
    rep = _suite("hopf", n=2)
    return rep.passed, "coassociativity, counit, antipode, S^2, coaction on relations" if rep.passed \
        else _fails(rep), 60


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def run_criterion(k: int):
    t0 = time.perf_counter()
    ok, detail, budget = CRITERIA[k - 1]()
    secs = time.perf_counter() - t0
    if budget is not None and secs > budget:
        ok = False
        detail += f"; runtime {secs:.1f}s over {budget}s budget"
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, capsys):
    ok, line = run_criterion(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in range(1, 10)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
