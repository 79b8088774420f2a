"""Acceptance criteria, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line straight to the terminal.
Run ``python3 tests/test_acceptance.py`` for the summary alone.
"""

import math
import random
import sys
import time
from fractions import Fraction

import pytest

from sheafloc import (
    CALIBRATION,
    CartanElement,
    add,
    build_cpn,
    build_flag3,
    build_product,
    bv_localize,
    constant_sheaf,
    enumerate_chambers,
    euler_characteristic,
    exp_hamiltonian_class,
    gauss_bonnet,
    inverse_den_sum,
    is_regular,
    multiplicities,
    multiplicities_local,
    orbit_sheaf,
    preset,
    shift,
)
from sheafloc.oracle import QuadratureSpec, dh_inversion_check, dh_pushforward_cp1, gaussian_fiber_integral, quadrature_cp1
from sheafloc.sheaves import PRESETS, ConstructibleSheaf, Stratum, torus_orbits
from sheafloc.weights import ZERO, chamber_label


def _regular(model, rng, k=20, lo=-50, hi=50):
    out = []
    while len(out) < k:
        X = CartanElement.real([Fraction(rng.randint(lo, hi), rng.randint(1, 7)) for _ in range(model.rank)])
        if is_regular(model.delta, X):
            out.append(X)
    return out


def criterion_1():
    rng = random.Random(1)
    cases = {n: (build_cpn(n), _regular(build_cpn(n), rng)) for n in range(1, 5)}
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for n, (m, xs) in cases.items():
        F = constant_sheaf(m)
        for X in xs:
            gb = gauss_bonnet(m, F, X)
            worst = max(worst, abs(gb.localized - gb.combinatorial))
            ok &= gb.match and gb.combinatorial == n + 1
    dt = time.perf_counter() - t0
    ok &= worst < 1e-9 and dt < 1.0
    return ok, f"CP^1..4 x 20 X: max |loc - chi| = {worst:.1e}, {dt:.3f} s"


def criterion_2():
    rng = random.Random(2)
    m = build_flag3()
    xs = _regular(m, rng)
    t0 = time.perf_counter()
    F = constant_sheaf(m)
    ok = True
    worst = 0.0
    for X in xs:
        gb = gauss_bonnet(m, F, X)
        worst = max(worst, abs(gb.localized - 6))
        ok &= gb.match and gb.combinatorial == 6
        ok &= inverse_den_sum(m, X) == ZERO
    dt = time.perf_counter() - t0
    ok &= dt < 1.0
    return ok, f"flag3 x 20 X: chi = 6 (max dev {worst:.1e}), sum 1/Den = 0 exactly, {dt:.3f} s"


def criterion_3():
    m, F = preset("cp1-upper-halfplane")
    seen = {}
    ok = True
    for ch in enumerate_chambers(m.delta):
        mv = multiplicities(m, F, ch.representative)
        gb = gauss_bonnet(m, F, ch.representative)
        seen[ch.label] = tuple(mv.m[p] for p in m.names)
        ok &= mv.total == 1 and all(isinstance(v, int) for v in mv.m.values())
        ok &= gb.combinatorial == 1 and gb.match
    ok &= seen == {"+": (1, 0), "-": (0, 1)}
    return ok, f"half-plane multiplicities {seen}, sum 1 and Gauss-Bonnet 1 in both chambers"


def criterion_4():
    model = build_cpn(1, [(0,), (1,)], [(-1,), (1,)])
    cls = exp_hamiltonian_class(model)
    spec = QuadratureSpec(256, 256)
    t0 = time.perf_counter()
    bvs = {t: bv_localize(model, cls, CartanElement.real((t,)), slice_="split").value for t in (0.5, 1.0, 2.0)}
    quads = {t: quadrature_cp1(t, spec) for t in bvs}
    dt = time.perf_counter() - t0
    errs = {t: abs(CALIBRATION * bvs[t] - quads[t]) / abs(quads[t]) for t in bvs}
    winners = [c for c in (1, -1, 1j, -1j) if all(abs(c * bvs[t] - quads[t]) / abs(quads[t]) < 1e-5 for t in bvs)]
    ok = max(errs.values()) < 1e-5 and dt < 2.0 and winners == [CALIBRATION]
    return ok, f"max rel err {max(errs.values()):.1e}, calibration candidates matching: {winners}, {dt:.3f} s"


def criterion_5():
    t0 = time.perf_counter()
    errs = {b: abs(gaussian_fiber_integral(b) - (-2j * math.pi / b)) for b in (1, 2, 1j, 1 + 1j)}
    dt = time.perf_counter() - t0
    ok = max(errs.values()) < 1e-4 and dt < 2.0
    return ok, f"max |I(beta) + 2 pi i / beta| = {max(errs.values()):.1e}, {dt:.3f} s"


def criterion_6():
    h = dh_pushforward_cp1(10**6, seed=0)
    rep = dh_inversion_check([0.5, 1.0, 2.0])
    ok = h.ks_distance < 0.01 and rep.max_rel_error < 1e-6 and len(rep.rows) == 3
    return ok, f"KS = {h.ks_distance:.5f}, inversion max rel err {rep.max_rel_error:.1e}"


def criterion_7():
    rng = random.Random(7)
    ok = True
    # global vs local multiplicities wherever costalk data exists
    cases = [preset(name) for name in PRESETS]
    for model in (build_cpn(1), build_cpn(2), build_flag3()):
        cases.append((model, constant_sheaf(model)))
    cp2 = build_cpn(2)
    cases.append((cp2, orbit_sheaf(cp2, {o: rng.randint(-3, 3) for o in torus_orbits(cp2)})))
    m12 = 0
    for model, F in cases:
        for ch in enumerate_chambers(model.delta):
            m12 += 1
            ok &= multiplicities(model, F, ch.representative).m == multiplicities_local(model, F, ch.representative).m

    # linearity and shift on randomized Euler data
    hm, hF = preset("cp1-upper-halfplane")
    prod = build_product(build_cpn(1), build_cpn(1))
    orbits = torus_orbits(prod)
    for _ in range(100):
        e1 = [rng.randint(-6, 6) for _ in hF.strata]
        e2 = [rng.randint(-6, 6) for _ in hF.strata]
        k = rng.randint(-4, 4)
        F1 = ConstructibleSheaf(tuple(Stratum(s.name, s.chi_c, e) for s, e in zip(hF.strata, e1)), "preset", hF.cell_tables)
        F2 = ConstructibleSheaf(tuple(Stratum(s.name, s.chi_c, e) for s, e in zip(hF.strata, e2)), "preset", hF.cell_tables)
        G1 = orbit_sheaf(prod, {o: rng.randint(-4, 4) for o in orbits})
        G2 = orbit_sheaf(prod, {o: rng.randint(-4, 4) for o in orbits})
        for model, A, B in ((hm, F1, F2), (prod, G1, G2)):
            for ch in enumerate_chambers(model.delta):
                X = ch.representative
                ma, mb = multiplicities(model, A, X).m, multiplicities(model, B, X).m
                ok &= multiplicities(model, add(A, B), X).m == {p: ma[p] + mb[p] for p in ma}
                ok &= multiplicities(model, shift(A, k), X).m == {p: (-1) ** k * ma[p] for p in ma}
            ok &= euler_characteristic(add(A, B)) == euler_characteristic(A) + euler_characteristic(B)
            ok &= euler_characteristic(shift(A, k)) == (-1) ** k * euler_characteristic(A)

    # chamber constancy: 10 random X per chamber
    counted = 0
    for model, F in [(hm, hF), (cp2, cases[-1][1]), (build_flag3(), constant_sheaf(build_flag3()))]:
        ref = {ch.label: multiplicities(model, F, ch.representative).m for ch in enumerate_chambers(model.delta)}
        seen = dict.fromkeys(ref, 0)
        while min(seen.values()) < 10:
            X = CartanElement.real([rng.randint(-500, 500) for _ in range(model.rank)])
            if not is_regular(model.delta, X):
                continue
            label = chamber_label(model.delta, X)
            if seen[label] >= 10:
                continue
            ok &= multiplicities(model, F, X).m == ref[label]
            seen[label] += 1
            counted += 1
    return ok, f"global = local on {m12} (sheaf, chamber) pairs, 100 linearity/shift trials, {counted} constancy samples"


CRITERIA = [
    ("1 Gauss-Bonnet on CP^n", criterion_1),
    ("2 flag variety", criterion_2),
    ("3 chamber-dependent multiplicities", criterion_3),
    ("4 oracle agreement and calibration", criterion_4),
    ("5 Gaussian fiber endpoint", criterion_5),
    ("6 Duistermaat-Heckman measure", criterion_6),
    ("7 property suites", criterion_7),
]


def _line(name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(name, *fn()) for name, fn in CRITERIA]
    for name, ok, detail in results:
        print(_line(name, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
