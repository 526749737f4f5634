"""Acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion as it runs; the lines are also repeated in the terminal summary.
"""

import filecmp
import math
import os
import time

import mpmath as mp
import numpy as np
import pytest

from oammimo.cli import main
from oammimo.config import ScenarioConfig
from oammimo.geometry import UcaPair
from oammimo.metrics import capacity_mimo, capacity_mimo_logdet, capacity_oam
from oammimo.mimo import AngularSpread, LinkBudget, correlation_matrix, synthesize_channel
from oammimo.numerics import sample_complex_gaussian
from oammimo.oam import ModeSet, alias_canonical, demux_phase_sum, excitation, oam_channel_matrix
from oammimo.experiments import run_fig2, run_fig3, run_fig4

from oracles import capacity_oam_terms, los_dft_diagonal

pytestmark = pytest.mark.acceptance

THETA = math.pi / 6


def test_criterion_1_correlation_decay(acceptance_record):
    t0 = time.perf_counter()
    table = run_fig2(ScenarioConfig(M=4, std_dev=0.2, mean_aoa=THETA))
    elapsed = time.perf_counter() - t0
    radius = table.column("R_over_lambda")
    far, near = radius >= 7 - 1e-9, radius <= 1 + 1e-9
    worst_far = max(table.column(f"rho_1_{v}")[far].max() for v in (2, 3, 4))
    decays = all(table.column(f"rho_1_{v}")[far].max() < table.column(f"rho_1_{v}")[near].max()
                 for v in (2, 3, 4))
    ok = worst_far < 0.05 and decays and elapsed < 1.0
    acceptance_record(1, ok, f"max off-diagonal |rho| for R>=7: {worst_far:.3g} (< 0.05), "
                             f"envelope decays: {decays}, {elapsed:.2f}s (< 1s)")
    assert ok


def test_criterion_2_dof_plateau(acceptance_record):
    t0 = time.perf_counter()
    table = run_fig3(ScenarioConfig(fig3_cases=[[4, 4]], fig3_std_dev=0.005, mean_aoa=THETA,
                                    rank_tol=1e-3))
    elapsed = time.perf_counter() - t0
    radius = table.column("R_over_lambda")
    ratio = table.column("ratio_mimo_over_oam_4x4")
    beyond = ratio[radius > 3]
    at_small = ratio[np.isclose(radius, 0.1)][0]
    ok = bool(np.all(beyond == 1.0)) and at_small < 1.0 and elapsed < 5.0
    acceptance_record(2, ok, f"MIMO/OAM ratio for R>3 in [{beyond.min():g}, {beyond.max():g}] "
                             f"(need all 1), at R=0.1: {at_small:g} (need < 1), {elapsed:.2f}s (< 5s)")
    assert ok


def sign_changes(x):
    s = np.sign(x)
    return int(np.count_nonzero(s[1:] != s[:-1]))


def test_criterion_3_capacity_crossover(acceptance_record):
    cfg = ScenarioConfig(r=2.0, R=2.0, std_dev=0.2, mean_aoa=THETA, bandwidth=1e7, draws=1000,
                         fig4_sizes=[4, 8])
    t0 = time.perf_counter()
    table = run_fig4(cfg)
    elapsed = time.perf_counter() - t0
    parts = []
    ok = elapsed < 60.0
    for k in (4, 8):
        diff = table.column(f"c_oam_{k}") - table.column(f"c_mimo_{k}x{k}")
        changes = sign_changes(diff)
        ahead = diff[-1] > 0
        ok &= changes == 1 and ahead
        parts.append(f"{k}-element: {changes} sign changes, OAM-MIMO at top {diff[-1] / 1e6:+.1f} Mbit/s")
    dominate = (np.all(table.column("c_mimo_8x8") > table.column("c_mimo_4x4"))
                and np.all(table.column("c_oam_8") > table.column("c_oam_4")))
    ok &= bool(dominate)
    acceptance_record(3, ok, "; ".join(parts) + f"; 8 > 4 in both families: {dominate}, "
                             f"d={cfg.d:g}, {elapsed:.1f}s (< 60s)")
    assert ok


def test_criterion_4_bessel_channel_oracle(acceptance_record):
    errors, detail = [], []
    elapsed = 0.0
    for N in (8, 16, 32, 64):
        t0 = time.perf_counter()
        ch = oam_channel_matrix(UcaPair(N, N, 1.0, 1.0, 100.0), LinkBudget())
        elapsed += time.perf_counter() - t0
        ref = los_dft_diagonal(N, 1.0, 1.0, 100.0)
        per_mode = {l: abs(complex(ref[l]) - ch.gain(l)) / abs(complex(ref[l])) for l in ref}
        worst_mode = max(per_mode, key=per_mode.get)
        others = max(v for l, v in per_mode.items() if l != N // 2)
        errors.append(per_mode[worst_mode])
        detail.append(f"N={N}: max {per_mode[worst_mode]:.3g} at l={worst_mode}, other modes {others:.2g}")
    monotone = all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))
    ok = errors[-1] < 0.01 and monotone and elapsed < 5.0
    acceptance_record(4, ok, "; ".join(detail) + f"; non-increasing: {monotone}, {elapsed:.3f}s (< 5s)")
    assert ok


def test_criterion_5_aliasing_brute_force(acceptance_record):
    t0 = time.perf_counter()
    mismatches = 0
    for n in range(1, 17):
        for l in range(-3 * n, 3 * n + 1):
            if not np.array_equal(excitation(l, n), excitation(alias_canonical(l, n), n)):
                mismatches += 1
    worst, wrong_support = 0.0, 0
    for m in range(1, 17):
        k = np.arange(m)
        for l_r in ModeSet.for_count(m).modes:
            for l in range(-3 * m, 3 * m + 1):
                brute = np.exp(2j * np.pi * k * (l - l_r) / m).sum()
                closed = demux_phase_sum(l, int(l_r), m)
                worst = max(worst, abs(brute - closed))
                wrong_support += (closed != 0) != ((l - l_r) % m == 0)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and worst <= 1e-12 and wrong_support == 0 and elapsed < 5.0
    acceptance_record(5, ok, f"excitation mismatches {mismatches}, demux sum worst {worst:.2g} (<= 1e-12), "
                             f"support errors {wrong_support}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_6_capacity_identities(acceptance_record):
    t0 = time.perf_counter()
    lb = LinkBudget(power=10.0)
    worst_mimo = 0.0
    for i in range(100):
        m, n = 1 + i % 16, 1 + (7 * i + 3) % 16
        h = sample_complex_gaussian(m, n, 99, i)
        a, b = capacity_mimo(h, lb), capacity_mimo_logdet(h, lb)
        worst_mimo = max(worst_mimo, abs(a - b) / abs(b))
    worst_oam = 0.0
    for N, r, snr in [(4, 1.0, 1e3), (8, 2.0, 10.0), (16, 1.5, 1e5), (5, 0.7, 0.3)]:
        geo = UcaPair(N, N, r, r, 100.0)
        lb_oam = LinkBudget.for_channel_snr(snr, geo.d)
        got = capacity_oam(oam_channel_matrix(geo, lb_oam), lb_oam)
        with mp.workdps(50):
            alpha = 2 * mp.pi * mp.mpf(r) ** 2 / mp.sqrt(mp.mpf(100) ** 2 + 2 * mp.mpf(r) ** 2)
            jl = [mp.besselj(l, alpha) for l in range((2 - N) // 2, N // 2 + 1)]
            ref = float(capacity_oam_terms(jl, snr, lb_oam.bandwidth))
        worst_oam = max(worst_oam, abs(got - ref) / ref)
    elapsed = time.perf_counter() - t0
    ok = worst_mimo <= 1e-9 and worst_oam <= 1e-9 and elapsed < 5.0
    acceptance_record(6, ok, f"det vs eig worst {worst_mimo:.2g}, OAM vs high precision worst "
                             f"{worst_oam:.2g} (<= 1e-9), {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_7_kronecker_statistics(acceptance_record):
    spread = AngularSpread(THETA, 0.2)
    gt = correlation_matrix("tx", spread, 2.0, 4)
    gr = correlation_matrix("rx", spread, 2.0, 4)
    lb = LinkBudget()
    d = 20.0
    t0 = time.perf_counter()
    acc = np.zeros((4, 4), dtype=complex)
    draws = 10_000
    for k in range(draws):
        h = synthesize_channel(gt, gr, lb, d, seed=0, draw=k).matrix
        acc += h @ h.conj().T
    elapsed = time.perf_counter() - t0
    pg2 = lb.path_gain(d) ** 2
    cov = acc / (draws * gt.size)
    dev = np.abs(cov / pg2 - gr.matrix).max()
    ok = dev < 0.05 * spread.kappa and elapsed < 10.0
    acceptance_record(7, ok, f"max |cov/pg^2 - G_r| = {dev:.3g} (< {0.05 * spread.kappa:.3g}), "
                             f"{elapsed:.2f}s (< 10s)")
    assert ok


def test_criterion_8_determinism(acceptance_record, tmp_path, capsys):
    first, second = tmp_path / "first", tmp_path / "second"
    codes = [main(["all", "--seed", "7", "--out", str(first)]),
             main(["all", "--seed", "7", "--out", str(second)])]
    capsys.readouterr()
    names = sorted(f for f in os.listdir(first) if f.endswith(".csv"))
    match, mismatch, errors = filecmp.cmpfiles(first, second, names, shallow=False)
    ok = codes == [0, 0] and len(names) == 4 and not mismatch and not errors
    acceptance_record(8, ok, f"exit codes {codes}, {len(match)}/{len(names)} CSV files byte-identical")
    assert ok
