"""Python smoke tests over the pybind module."""

from fractions import Fraction
from math import pi, sqrt

import rcs


def frac(s):
    return Fraction(s)


def test_codes_and_counts():
    assert rcs.binary_encode([3, 1, 2]) == "100110"
    assert rcs.binary_decode("100110") == [3, 1, 2]
    assert rcs.multinomial_count([3, 1, 2]) == "60"
    assert rcs.shape_count([2, 1, 1]) == "6"
    assert len(rcs.compositions(5)) == 16
    assert len(rcs.partitions(5)) == 7


def test_exact_qmatrix_and_tables():
    rows = rcs.qmatrix("ewens:theta=1", 4)
    assert rows[3] == ["1/4", "1/4", "1/4", "1/4"]
    cpf = rcs.cpf_table("two-param:alpha=1/2,theta=0", 3)
    assert frac(cpf["2,1"]) == Fraction(1, 8)
    assert sum(frac(v) for v in cpf.values()) == 1
    ppf = rcs.ppf_table("ewens:theta=1", 3)
    assert frac(ppf["2,1"]) == Fraction(1, 2)

    qf = rcs.qmatrix_float("ewens:theta=1", 4)
    assert abs(qf[3][0] - 0.25) < 1e-15


def test_expected_blocks_and_green():
    g = rcs.green("ewens:theta=1", 3)
    assert abs(g[0] - 1.0) < 1e-14
    assert abs(g[1] - 1 / 3) < 1e-14
    assert abs(g[2] - 1 / 2) < 1e-14
    e = rcs.expected_kn("ewens:theta=1", 3)
    assert abs(e - 11 / 6) < 1e-14
    assert abs(sum(g) - e) < 1e-12


def test_laplace_and_exponential_functional():
    assert abs(rcs.laplace_exponent("two-param:alpha=1/2,theta=0", 0.5) - pi / 2) < 1e-12
    assert abs(rcs.exp_functional_moment("two-param:alpha=1/2,theta=0", 0.5, 1) - 2 / pi) < 1e-12


def test_samplers_deterministic():
    a = rcs.sample_chain("ewens:theta=1", 8, 5, 42)
    b = rcs.sample_chain("ewens:theta=1", 8, 5, 42)
    assert a == b
    assert all(sum(c) == 8 for c in a)
    s = rcs.sample_stickbreaking(1.0, 1.0, 6, 4, 7)
    assert all(sum(c) == 6 for c in s)
    p = rcs.sample_crp(0.5, 0.5, 6, 4, 7)
    assert all(sorted(c, reverse=True) == c and sum(c) == 6 for c in p)
    assert rcs.arrangement(float("inf"), 5, 1) == [1, 2, 3, 4, 5]


def test_mc_blocks_matches_exact_mean():
    n, reps = 2000, 4000
    out = rcs.mc_blocks("ewens:theta=1", n, reps, 99, r_max=3)
    k = out["stats"]["K"]
    target = rcs.expected_kn("ewens:theta=1", n)
    assert abs(k["mean"] - target) < 4 * k["se"]
    # K_1 mean ~ theta n/(theta+n-1) ~ 1 for ewens(1)
    assert abs(out["stats"]["K_1"]["mean"] - n / (n - 1 + 1)) < 0.2


def test_checks_run_green():
    names = rcs.check_suites()
    assert "consistency" in names and "markovian" in names
    for suite in ("consistency", "stationarity"):
        res = rcs.run_check(suite, 5)
        assert res["pass"], res


def test_mc_scaling_two_param():
    # K_n grows like (2/sqrt(pi)) sqrt(n) for the (1/2,0) family
    out = rcs.mc_blocks("two-param:alpha=1/2,theta=0", 10000, 400, 5, r_max=1)
    mean = out["stats"]["K"]["mean"]
    assert abs(mean - 2 / sqrt(pi) * 100) / (2 / sqrt(pi) * 100) < 0.1
