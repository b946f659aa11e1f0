# Copyright 2026 The Skewlab Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the python extension."""

import math
from fractions import Fraction

import pytest

import skewlab as sl


def test_sieve_and_mertens():
    t = sl.sieve_moebius(10000)
    assert t.mu(1) == 1
    assert t.mu(12) == 0
    assert t.mu(6) == 1
    assert t.mertens(10) == -1
    assert all(t.mu(n) == sl.moebius_bruteforce(n) for n in range(1, 2000))


def test_ext_gcd():
    assert sl.ext_gcd(3, 5) == (1, 2, -1)
    g, a, b = sl.ext_gcd(252, 105)
    assert a * 252 + b * 105 == g == 21


def test_continued_fractions():
    cf = sl.cf_expand(5, 8)
    assert cf.quotients() == [1, 1, 1, 2]
    golden = sl.golden_cf()
    conv = golden.convergents()
    assert conv[4] == (5, 8)
    alpha = golden.to_angle()
    assert abs(alpha.to_double() - (math.sqrt(5) - 1) / 2) < 1e-15
    assert sl.best_approx_check(alpha, 3, 5, 10)
    assert not sl.best_approx_check(alpha, 2, 5, 10)
    lo, hi = sl.approx_quality(golden, 3)
    assert Fraction(lo) == Fraction(1, 13)
    assert Fraction(hi) == Fraction(1, 8)


def test_generic_alpha():
    cf, designated, verified = sl.construct_generic_alpha([(5, 1, 10**6)])
    assert verified
    q = cf.convergents()[designated[0]][1]
    assert q >= 5


def test_fourier_and_correlations():
    f = sl.FourierSeries.real_from_positive([(3, 0.5), (5, 0.5)])
    assert f.is_real()
    p = sl.correlation_parseval(f, 3, 5)
    assert abs(p - 0.5) < 1e-12
    q = sl.correlation_quadrature(f, 3, 5, 128)
    assert abs(p - q) < 1e-9
    # disjoint dilated supports
    single = sl.FourierSeries.real_from_positive([(1, 1.0)])
    assert sl.correlation_parseval(single, 3, 5) == 0


def test_cocycle_fourier_matches_direct_sum():
    golden = sl.golden_cf()
    alpha = golden.to_angle()
    f = sl.FourierSeries.real_from_positive([(1, 0.25), (2, -0.125)])
    fk = sl.cocycle_fourier(f, alpha, 50)
    x = sl.Angle.from_fraction(1, 7)
    direct = sum(
        f.evaluate(x + alpha.scaled(i)).real for i in range(50)
    )
    assert abs(fk.evaluate(x).real - direct) < 1e-10


def test_katok_and_epsilon():
    f = sl.FourierSeries([(7, 1.0)])
    assert sl.katok_lattice_ratio(f, 7) == (1.0, 1.0)
    assert sl.katok_lattice_ratio(f, 3) is None
    xs = [1.0 / n**3 for n in range(1, 100000)]
    lo, hi = sl.epsilon_diagnostic(xs, sl.DecayCertificate(1.0, 2.0), 8, 1)
    assert lo <= 1 / (1 + 1.2020569031595943) <= hi


def test_weyl_bound():
    v, bound = sl.weyl_sum(sl.golden_cf().to_angle(), 10000)
    assert abs(v) <= bound
    v0, b0 = sl.weyl_sum(sl.Angle(), 100)
    assert v0 == 1.0 and b0 == 1.0


def test_experiments():
    golden = sl.golden_cf()
    table = sl.sieve_moebius(20000)
    rot = sl.SkewSystem.make_affine(golden, 0, sl.Angle())
    rep = sl.sarnak_sum(rot, 0, 0, sl.Angle(), sl.Angle(), table, [100, 10000])
    assert rep["kind"] == "sarnak"
    for cp in rep["checkpoints"]:
        assert cp["value"].real == table.mertens(cp["N"]) / cp["N"]

    kb = sl.kbsz_correlation(rot, 1, 0, sl.Angle(), sl.Angle(), 3, 5, [1000, 10000])
    for cp in kb["checkpoints"]:
        assert abs(cp["value"]) <= cp["bound"] + 1e-12

    # worker count must not change a single bit
    a = sl.kbsz_correlation(rot, 1, 0, sl.Angle(), sl.Angle(), 3, 5, [5000], workers=1)
    b = sl.kbsz_correlation(rot, 1, 0, sl.Angle(), sl.Angle(), 3, 5, [5000], workers=4)
    assert a["checkpoints"][0]["value"] == b["checkpoints"][0]["value"]


def test_p1_pow2_zeros():
    f = sl.FourierSeries.real_from_positive([(2**k, 0.25) for k in range(1, 11)])
    rows = sl.p1_experiment(f, sl.golden_cf().to_angle(), [(3, 5), (5, 7)], 2000)
    for row in rows:
        assert row["parseval"] == 0


def test_solve_l0_k0():
    assert sl.solve_l0_k0(3, 5, (1, 0, 60), (0, 0, 1)) == (2, 1)
    assert sl.solve_l0_k0(3, 5, (0, 0, 1), (0, 0, 1)) == (1, 0)
    assert sl.solve_l0_k0(3, 5, (1, 0, 2**40), (0, 0, 1), 1000) is None


def test_error_paths():
    with pytest.raises(Exception):
        sl.sieve_moebius(0)
    with pytest.raises(Exception):
        sl.correlation_parseval(sl.FourierSeries([(1, 1.0)]), 4, 6)
    f = sl.FourierSeries([(1, 1.0)], mean=0.5)
    with pytest.raises(Exception):
        sl.cocycle_fourier(f, sl.golden_cf().to_angle(), 2)
