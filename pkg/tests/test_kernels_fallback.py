"""The numba kernels and their vectorized numpy twins must agree."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

import psispec as ps
from psispec import _kernels as kern
from psispec.prime_series import _base_primes

from conftest import ar1_sample


def test_mangoldt_segment_paths_agree():
    ranges = [(1, 513), (2, 10_001), (999_950, 1_000_051)]
    for lo, hi in ranges:
        primes, logs = _base_primes(hi - 1)
        a = kern._mangoldt_segment_numpy(lo, hi, primes, logs)
        b = np.asarray(kern.mangoldt_segment(lo, hi, primes, logs))
        assert np.array_equal(a == 0.0, b == 0.0)
        assert np.allclose(a, b, rtol=1e-15, atol=0)


def test_mangoldt_loop_variant_small():
    primes, logs = _base_primes(299)
    a = kern._mangoldt_segment_loop(2, 300, primes, logs)
    b = kern._mangoldt_segment_numpy(2, 300, primes, logs)
    assert np.allclose(a, b, rtol=1e-15, atol=0)


def test_prefix_paths_agree_and_match_fsum():
    lam = ps.sieve_prime_power_logs(10**5)[1:]
    a, sa, ca = kern._half_jump_prefix_numpy(lam, 0.0, 0.0)
    b, sb, cb = kern.half_jump_prefix(lam, 0.0, 0.0)
    assert float(np.max(np.abs(a - b))) < 1e-10
    assert abs((sa - ca) - (sb - cb)) < 1e-10
    for i in (10, 5000, 99_998):
        exact = math.fsum(lam[: i + 1].tolist()) - 0.5 * lam[i]
        assert abs(a[i] - exact) < 1e-10
        assert abs(b[i] - exact) < 1e-10


def test_prefix_carry_chains_across_segments():
    lam = ps.sieve_prime_power_logs(20_000)[1:]
    whole, _, _ = kern.half_jump_prefix(lam, 0.0, 0.0)
    mid = lam.size // 2
    first, s, c = kern.half_jump_prefix(lam[:mid], 0.0, 0.0)
    second, _, _ = kern.half_jump_prefix(lam[mid:].copy(), s, c)
    glued = np.concatenate([first, second])
    assert float(np.max(np.abs(glued - whole))) < 1e-10


def test_burg_paths_agree():
    y = ps.remove_mean(ar1_sample(42, 20_000, coeff=0.8))
    for order in (1, 2, 5):
        a_np, e_np = kern._burg_numpy(y, order)
        a_sel, e_sel = kern.burg_recursion(y, order)
        assert np.allclose(a_np, np.asarray(a_sel), rtol=1e-9, atol=1e-12)
        assert e_np == pytest.approx(e_sel, rel=1e-9)


def test_burg_loop_variant_small():
    y = ps.remove_mean(ar1_sample(7, 512, coeff=0.5))
    a_loop, e_loop = kern._burg_loop(y, 3)
    a_np, e_np = kern._burg_numpy(y, 3)
    assert np.allclose(a_loop, a_np, rtol=1e-10, atol=1e-13)
    assert e_loop == pytest.approx(e_np, rel=1e-10)


def test_zero_sum_paths_agree(zeros):
    xs = 5.5 + 26.0 * np.arange(20)
    t_desc = zeros.ordinates[::-1].copy()
    a = kern._zero_pair_sum_numpy(xs, t_desc)
    b = np.asarray(kern.zero_pair_sum(xs, t_desc))
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


def test_env_flag_forces_numpy_path():
    code = (
        "import psispec\n"
        "fl = psispec.fluctuation_series(2000)\n"
        "print(psispec.ACTIVE_IMPL, repr(float(fl.values[-1])))\n"
    )
    env = dict(os.environ, PSISPEC_NO_NUMBA="1")
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    impl, value = proc.stdout.split()
    assert impl == "numpy"
    here = ps.fluctuation_series(2000).values[-1]
    # the two prefix accumulators (Kahan loop vs chunked cumsum) may differ
    # by a few ulps of the running total
    assert abs(float(value) - here) < 1e-10
