"""Acceptance suite: the eleven headline criteria, one test (line) each.

Each test states its tolerance inline and prints the measured quantity, so a
verbose run doubles as a numeric report.  Criterion 4 is parametrized over
its four weight exponents; see notes in the repository for the two exponents
where the candidate-beats-bound inequality does not hold numerically.
"""

import math
import time

import numpy as np
import pytest

import weighted_moser as wm

E = math.e


def _report(name, detail):
    print(f"[acceptance] {name}: {detail}")


def test_criterion_01_candidate_norm():
    t0 = time.time()
    norm = wm.dirichlet_norm_halfline(wm.carleson_chang_candidate())
    _report("criterion 1", f"candidate norm^2 = {norm:.9f} (target 1 +/- 1e-6)")
    assert abs(norm - 1.0) < 1e-6
    assert time.time() - t0 < 1.0


def test_criterion_02_gauss_integral():
    t0 = time.time()
    g = wm.gauss_integral()
    series = sum(2.0 / (math.factorial(k) * (2 * k + 1)) for k in range(30))
    _report("criterion 2", f"2 int exp(s^2) = {g:.7f}, series oracle {series:.7f}")
    assert g > 2.906
    assert g > 2.723
    assert abs(g - series) < 1e-5
    assert time.time() - t0 < 1.0


def test_criterion_03_closed_form_limits():
    t0 = time.time()
    a_val = wm.a_alpha(wm.WeightExponent(1e-4))
    b_ratio = wm.b_alpha(wm.WeightExponent(1e-3)) / 1e-3
    _report("criterion 3", f"|A(1e-4) - e| = {abs(a_val - E):.2e}, B(1e-3)/1e-3 = {b_ratio:.4f}")
    assert abs(a_val - E) < 0.02
    assert 0.45 <= b_ratio <= 0.55
    assert time.time() - t0 < 1.0


@pytest.mark.parametrize("alpha", [0.0, 0.01, 0.02, 0.05])
def test_criterion_04_candidate_beats_bound(alpha):
    w = wm.WeightExponent(alpha)
    value = wm.candidate_value(w).functional
    bound = wm.concentration_upper_bound(w)
    _report(
        "criterion 4",
        f"alpha={alpha}: candidate {value:.6f} vs bound {bound:.6f} "
        f"(margin {value - bound:+.6f})",
    )
    assert value > bound


def test_criterion_04_margin_at_zero():
    margin = (
        wm.candidate_value(wm.WeightExponent(0.0)).functional
        - wm.concentration_upper_bound(wm.WeightExponent(0.0))
    )
    expected = math.pi * (wm.gauss_integral() / E - 1.0)
    _report("criterion 4", f"margin at 0 = {margin:.6f}, expected {expected:.6f}")
    assert abs(margin - expected) < 1e-4


def test_criterion_05_pipeline_identity():
    t0 = time.time()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        interior = np.sort(rng.uniform(0.02, 0.98, 62))
        grid = np.concatenate([[0.0], interior, [1.0]])
        values = np.concatenate([rng.uniform(0.0, 0.6, 63), [0.0]])
        u = wm.RadialProfile(grid, values)
        for alpha in (0.0, 0.5, 2.0):
            rep = wm.full_pipeline_identity(u, wm.WeightExponent(alpha))
            worst = max(worst, rep.rel_diff)
    elapsed = time.time() - t0
    _report("criterion 5", f"worst relative identity gap = {worst:.2e} over 60 checks, {elapsed:.1f}s")
    assert worst < 1e-6
    assert elapsed < 10.0


def test_criterion_06_rearrangement_suite():
    t0 = time.time()
    suite = [
        ("offcenter cone", wm.PolarSample.from_function(
            lambda x, y: np.maximum(1.0 - 2.0 * np.hypot(x - 0.3, y), 0.0))),
        ("offcenter smooth", wm.PolarSample.from_function(
            lambda x, y: np.maximum(1.0 - 4.0 * ((x - 0.25) ** 2 + (y + 0.1) ** 2), 0.0) ** 2)),
        ("centered cone", wm.PolarSample.from_function(
            lambda x, y: np.maximum(1.0 - 1.3 * np.hypot(x, y), 0.0))),
        ("radial smooth", wm.PolarSample.from_function(
            lambda x, y: np.maximum(1.0 - np.hypot(x, y) ** 2, 0.0) ** 1.5)),
        ("two bumps", wm.PolarSample.from_function(
            lambda x, y: np.maximum(1.0 - 3.0 * np.hypot(x - 0.4, y), 0.0)
            + 0.7 * np.maximum(1.0 - 3.0 * np.hypot(x + 0.35, y - 0.2), 0.0))),
    ]
    moments = [
        ("t", lambda t: t),
        ("t^2", lambda t: t * t),
        ("exp", lambda t: np.expm1(wm.FOUR_PI * t * t)),
    ]
    worst_moment, worst_ratio = 0.0, 0.0
    for name, sample in suite:
        for alpha in (0.0, 1.0):
            w = wm.WeightExponent(alpha)
            star = wm.mu_rearrange_general(sample, w)
            for mname, phi in moments:
                lhs = wm.mu_integral(sample, w, phi)
                rhs = wm.disk_integral(star, phi)
                rel = abs(lhs - rhs) / abs(lhs)
                worst_moment = max(worst_moment, rel)
            ratio = wm.polya_szego_check(sample, w).ratio
            worst_ratio = max(worst_ratio, ratio)
    elapsed = time.time() - t0
    _report(
        "criterion 6",
        f"worst moment error {worst_moment:.2e} (tol 1e-4), "
        f"worst PS ratio {worst_ratio:.4f} (tol 1.02), {elapsed:.1f}s",
    )
    assert worst_moment < 1e-4
    assert worst_ratio <= 1.02
    assert elapsed < 60.0


@pytest.mark.parametrize("alpha", [1.0, 4.0])
def test_criterion_07_radial_scaling_identity(alpha):
    t0 = time.time()
    rep = wm.radial_identity_check(wm.WeightExponent(alpha))
    _report(
        "criterion 7",
        f"alpha={alpha}: S_rad = {rep.lhs.value:.6f}, eps*S(0,.) = {rep.scaled_rhs:.6f}, "
        f"gap {rep.rel_gap:.2e}",
    )
    assert rep.rel_gap < 0.01
    assert time.time() - t0 < 300.0


def test_criterion_08_concentration_bound_shadow():
    t0 = time.time()
    for alpha in (0.0, 1.0):
        w = wm.WeightExponent(alpha)
        bound = wm.concentration_upper_bound(w)
        values = [
            math.pi * w.epsilon
            * (wm.halfline_functional(wm.concentrating_sequence(n), w) - 1.0)
            for n in range(1, 101)
        ]
        _report(
            "criterion 8",
            f"alpha={alpha}: max over family {max(values):.4f} vs bound {bound:.4f}",
        )
        assert max(values) <= bound + 0.05
    assert time.time() - t0 < 30.0


def test_criterion_09_supercritical_divergence():
    t0 = time.time()
    values = wm.supercritical_probe(wm.WeightExponent(1.0), 1.1 * wm.FOUR_PI, range(1, 41))
    diffs = np.diff(values)
    first_monotone = int(np.argmax(diffs > 0)) if np.any(diffs > 0) else len(diffs)
    _report(
        "criterion 9",
        f"final/initial = {values[-1] / values[0]:.1f} (target > 10), "
        f"increasing from n = {first_monotone + 1}",
    )
    assert values[-1] / values[0] > 10.0
    assert np.all(diffs[first_monotone:] > 0.0)
    assert first_monotone < 20
    assert time.time() - t0 < 10.0


def test_criterion_10_optimizer_lower_bound():
    t0 = time.time()
    res = wm.maximize_radial(wm.WeightExponent(0.0), wm.FOUR_PI)
    _report(
        "criterion 10",
        f"optimizer value {res.value:.4f} (targets >= 8.77 and >= pi e = {math.pi * E:.4f})",
    )
    assert res.value >= 8.77
    assert res.value >= math.pi * E
    assert time.time() - t0 < 300.0


def test_criterion_11_gradient_check():
    t0 = time.time()
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(10):
        nodes = int(rng.integers(32, 64))
        grid = np.linspace(0.0, float(rng.uniform(10.0, 30.0)), nodes)
        values = np.concatenate([[0.0], rng.uniform(0.05, 1.4, nodes - 1)])
        beta = float(rng.uniform(0.2, 1.0))
        _, grad = wm.objective_and_gradient(grid, values, beta)
        fd = np.zeros_like(grad)
        for i in range(1, nodes):
            h = 1e-6 * max(1.0, abs(values[i]))
            up, dn = values.copy(), values.copy()
            up[i] += h
            dn[i] -= h
            fd[i] = (
                wm.objective_and_gradient(grid, up, beta)[0]
                - wm.objective_and_gradient(grid, dn, beta)[0]
            ) / (2.0 * h)
        worst = max(worst, float(np.linalg.norm(fd - grad) / np.linalg.norm(grad)))
    elapsed = time.time() - t0
    _report("criterion 11", f"worst relative gradient error {worst:.2e} over 10 profiles")
    assert worst < 1e-5
    assert elapsed < 10.0
