"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

import oracles
from drycert.atlas import emit, exception_census
from drycert.dry import CandidateClass, b_max, dry_threshold, is_dry, q_value
from drycert.extension import STANDARD, index_IX, nonsplit_ok, required_c2E
from drycert.picard import BaseSurface, DivClass, neg_one_curves
from drycert.spectral import SpectralData, c2_W
from drycert.witness import Realized, case_table, realize, select_alpha, verify_witness

F0 = BaseSurface.parse("F0")
HIRZEBRUCH = {0: F0, 1: BaseSurface.parse("F1")}
DP = {k: BaseSurface.parse(f"dP{k}") for k in range(9)}


def random_ample_shift_phi(rng, base, N, spread=6):
    """Integral phi with ``phi - (N/2) c1`` ample, drawn near multiples of c1."""
    half = Fraction(N, 2) * base.c1
    while True:
        t = rng.randint(1, spread)
        guess = half + t * base.c1
        phi = DivClass(tuple(int(c) + rng.randint(-spread, spread) for c in guess))
        if base.is_ample(phi - half):
            return phi


def test_convention_cross_validation(criterion):
    criterion["name"] = "convention cross-validation (alpha.(eta - n c1) identities)"
    rng = random.Random(101)
    start = time.perf_counter()
    for _ in range(200):
        g, a, b, n = rng.randint(0, 1), rng.randint(-100, 100), rng.randint(-100, 100), rng.randint(-20, 20)
        base = HIRZEBRUCH[g]
        assert base.intersect(DivClass((-1, 1)), DivClass((a, b)) - n * base.c1) == (g + 1) * a - b - g * n
    for _ in range(200):
        k = rng.randint(1, 8)
        a, bs, n = rng.randint(-100, 100), [rng.randint(-100, 100) for _ in range(k)], rng.randint(-20, 20)
        base = DP[k]
        alpha = DivClass((k,) + (-3,) * k)
        assert base.intersect(alpha, DivClass((a, *bs)) - n * base.c1) == k * a + 3 * sum(bs)
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"400 cases, {elapsed:.2f}s"
    assert elapsed < 1


def test_minus_one_curve_counts(criterion):
    criterion["name"] = "(-1)-curve counts on dP1..dP8"
    neg_one_curves.cache_clear()
    start = time.perf_counter()
    counts = [len(neg_one_curves(k)) for k in range(1, 9)]
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{counts}, {elapsed:.2f}s"
    assert counts == [1, 3, 6, 10, 16, 27, 56, 240]
    assert elapsed < 10


def test_dry_oracle_agreement(criterion):
    criterion["name"] = "closed-form DRY test vs denominator-bounded grid oracle"
    rng = random.Random(202)
    start = time.perf_counter()
    contradictions, witnessed, total = 0, 0, 0
    while total < 600:
        base = rng.choice([F0, HIRZEBRUCH[1], DP[3]])
        N = rng.choice([4, 6, 8, 10])
        phi = random_ample_shift_phi(rng, base, N)
        thr = dry_threshold(phi, N, base)
        omega = int(thr) + rng.randint(-3, 3)
        dry = is_dry(CandidateClass(phi, omega, N), base)
        grid = oracles.dry_grid(base.name, phi.int_tuple(), omega, N)
        total += 1
        witnessed += grid is not None
        if (grid is not None and not dry) or (dry and omega >= thr + 1 and grid is None):
            contradictions += 1
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{total} candidates, {witnessed} grid witnesses, {contradictions} contradictions, {elapsed:.1f}s"
    assert contradictions == 0
    assert elapsed < 30


def test_bmax_squared_at_most_q(criterion):
    criterion["name"] = "b_max^2 <= q, equality only for shifts proportional to c1"
    rng = random.Random(303)
    names = ["F0", "F1"] + [f"dP{k}" for k in range(1, 9)]
    equalities = 0
    for i in range(1000):
        base = BaseSurface.parse(rng.choice(names))
        N = rng.randint(1, 12)
        if i % 10 == 0:
            # proportional shifts, scaled to stay integral
            phi = Fraction(N, 2) * base.c1 + rng.randint(1, 4) * base.c1
            if not phi.is_integral():
                phi = phi + Fraction(1, 2) * base.c1
        else:
            phi = random_ample_shift_phi(rng, base, N)
        bm, q = b_max(phi, N, base), q_value(phi, N, base)
        shift = phi - Fraction(N, 2) * base.c1
        proportional = base.square(shift) * base.square(base.c1) == base.intersect(shift, base.c1) ** 2
        assert bm * bm <= q
        assert (bm * bm == q) == proportional
        equalities += bm * bm == q
    criterion["detail"] = f"1000 instances, {equalities} proportional equalities"
    assert equalities > 0


def test_worked_instance(criterion):
    criterion["name"] = "worked instance F0, N=6, phi=(7,8)"
    phi = DivClass((7, 8))
    assert dry_threshold(phi, 6, F0) == 29
    v = realize(CandidateClass(phi, 30, 6), F0)
    assert isinstance(v, Realized) and v.witness.cfg.twist == "balanced" and v.witness.c2E == 36
    std = next(t for t in case_table(6, F0) if t.twist == STANDARD)
    cfg = std.with_alpha(select_alpha(F0, phi, std))
    assert cfg.alpha == DivClass((-1, 1))
    c2E = required_c2E(cfg, SpectralData(3, phi, 1), 51, F0)
    assert c2E == 5 == cfg.r + 2
    assert index_IX(cfg, phi, F0) == -51
    criterion["detail"] = "threshold 29, balanced c2E 36, standard c2E 5, index -51"


NO_EXCEPTION_CASES = [("F0", N) for N in (4, 6, 8, 10, 12)] + [(f"dP{k}", 6) for k in range(1, 7)]


@pytest.mark.parametrize("name,N", NO_EXCEPTION_CASES)
def test_no_exception_census(criterion, name, N):
    criterion["name"] = f"empty exception census on {name}, N={N}"
    start = time.perf_counter()
    report = exception_census(N, BaseSurface.parse(name))
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"{len(report)} entries, complete={report.complete}, {elapsed:.2f}s"
    assert report.entries == () and report.complete
    assert elapsed < 60


@pytest.mark.parametrize("name", ["dP7", "dP8"])
def test_census_terminates_deterministically(criterion, name):
    criterion["name"] = f"finite deterministic exception census on {name}, N=6"
    base = BaseSurface.parse(name)
    start = time.perf_counter()
    first = exception_census(6, base)
    elapsed = time.perf_counter() - start
    second = exception_census(6, base)
    assert emit(first, "json") == emit(second, "json")
    assert emit(first, "csv") == emit(second, "csv")
    assert first.complete
    phis = [e.phi.coeffs for e in first.entries]
    assert phis == sorted(phis) and len(set(phis)) == len(phis)
    assert all(list(e.omegas) == sorted(e.omegas) for e in first.entries)
    rng = random.Random(404)
    for e in rng.sample(first.entries, min(40, len(first.entries))):
        for omega in e.omegas:
            c = CandidateClass(e.phi, omega, 6)
            assert is_dry(c, base) and not isinstance(realize(c, base), Realized)
    criterion["detail"] = f"{len(first.entries)} classes phi, {len(first)} (phi, omega) pairs, {elapsed:.1f}s per run"


def test_witness_soundness(criterion):
    criterion["name"] = "witness soundness on random DRY classes"
    rng = random.Random(505)
    supported = [(b, N) for b in ("F0", "F1", "dP1", "dP3", "dP5", "dP6", "dP7", "dP8") for N in (4, 5, 6, 7, 8, 10)]
    supported = [(BaseSurface.parse(b), N) for b, N in supported if case_table(N, BaseSurface.parse(b))]
    realized = 0
    for _ in range(200):
        base, N = rng.choice(supported)
        phi = random_ample_shift_phi(rng, base, N)
        omega = int(dry_threshold(phi, N, base)) + rng.randint(1, 40)
        c = CandidateClass(phi, omega, N)
        assert is_dry(c, base)
        v = realize(c, base)
        if isinstance(v, Realized):
            realized += 1
            assert verify_witness(v.witness, c, base)
            assert v.witness.recomputed_c2V == (phi, omega)
    criterion["detail"] = f"200 DRY classes, {realized} realized and verified"
    assert realized > 0


def test_diagnostics_integrality(criterion):
    criterion["name"] = "index_IX integrality and sign, c2(W) integrality"
    rng = random.Random(606)
    names = ["F0", "F1"] + [f"dP{k}" for k in range(1, 9)]
    configs = checked = 0
    while configs < 300:
        base = BaseSurface.parse(rng.choice(names))
        N = rng.choice([4, 5, 6, 7, 8, 10])
        for template in case_table(N, base):
            eta = random_ample_shift_phi(rng, base, N)
            if not base.parity_admissible(template.n, eta, template.two_lambda):
                continue
            for sign in (1, -1):
                cfg = template.with_alpha(sign * select_alpha(base, eta, template))
                ix = index_IX(cfg, eta, base)
                assert ix.denominator == 1
                assert (ix < 0) == nonsplit_ok(cfg, eta, base)
                configs += 1
    while checked < 1000:
        base = BaseSurface.parse(rng.choice(names + ["P2"]))
        n, two_lambda = rng.randint(1, 9), rng.randint(-5, 5)
        eta = DivClass(tuple(rng.randint(-20, 20) for _ in base.c1))
        if not base.parity_admissible(n, eta, two_lambda):
            continue
        assert c2_W(SpectralData(n, eta, two_lambda), base)[1].denominator == 1
        checked += 1
    criterion["detail"] = f"{configs} extension configurations, {checked} spectral data"


def test_rank_inequalities(criterion):
    criterion["name"] = "rank inequalities behind the no-exception branches"
    for m in range(4, 2001):
        for g in (0, 1):
            assert Fraction(11, 6) * m > Fraction(m, 2) - 4 + g
        assert Fraction(11, 6) * m > Fraction(1, 2) * m - 4
        if m >= 6:
            for k in range(0, 7):
                assert Fraction(5, 12) * (9 - k) * m > k + 1
    criterion["detail"] = "m = 4..2000"
