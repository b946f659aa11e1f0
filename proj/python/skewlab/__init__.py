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

"""Numerical laboratory for Anzai skew products, continued fractions and
Mobius correlation experiments."""

from ._core import (  # noqa: F401
    Angle,
    ContinuedFraction,
    DecayCertificate,
    FourierSeries,
    MoebiusTable,
    SkewSystem,
    __version__,
    approx_quality,
    best_approx_check,
    birkhoff_cocycle,
    cf_expand,
    cf_expand_angle,
    char_constant_on_I,
    cocycle_fourier,
    construct_generic_alpha,
    correlation_parseval,
    correlation_quadrature,
    epsilon_diagnostic,
    ext_gcd,
    f_q_sum,
    golden_cf,
    haar_equidistribution,
    is_prime,
    katok_approach_quantity,
    katok_lattice_ratio,
    katok_dilated_lattice_ratio,
    kbsz_correlation,
    load_moebius,
    moebius_bruteforce,
    p1_experiment,
    sarnak_sum,
    sieve_moebius,
    skew_orbit,
    solve_l0_k0,
    weyl_sum,
)
