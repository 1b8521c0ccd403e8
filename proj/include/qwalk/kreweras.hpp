// Copyright 2026 The qwalk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWALK_KREWERAS_HPP
#define QWALK_KREWERAS_HPP

#include "qwalk/cont.hpp"
#include "qwalk/series.hpp"

namespace qwalk::kreweras {

// The algebraic series W = z(2 + W^3), fixed-point iterated to 1e-14.
double solve_w(double z);

// Q(0,0) = (W - W^4/4) / (2z).
double q00_closed(double z);

// Q(x,0) = Q(0,x) = (1/(zx)) [1/(2z) - 1/x - (1/W - 1/x) sqrt(1 - x W^2)].
cplx qx0_closed(double z, cplx x);

// Roots of 4X^3 - g2 X + g3 = 0 with the Kreweras invariants; r is the
// branch analytic at z=0 with r(0) = 2/3.
struct CubicRoots {
    double r, rt, rh;
};
CubicRoots simili_roots(double z);

// Q(0,0) through the root r: (1/4z^3)(-1/3 + r/2 + 2 sqrt(-2/9 - r/3 + r^2 + 8 z^3)).
double q00_from_root(double z);

// Data of the index-2 lattice (w1, 2 w2).
struct DoubledLattice {
    double e2_12, g2_12, g3_12;
};
DoubledLattice doubled_lattice_data(double z);

// 2 p12(w) = p(w) + e2_12 +- sqrt((p - e2_12)^2 + g2_12 - 12 e2_12^2).
cplx wp12_from_wp(double z, cplx wp_value, int half_sign);

// x(w + w2/2) = sqrt(x1) (sqrt(x1) x + 1) / (x - x1).
cplx x_half_shift(double x1, cplx xval);

// The closed-form constants of the boundary-GF derivation, all evaluated
// numerically from a Kreweras uniformization.
struct Constants {
    double W = 0;
    CubicRoots roots{};
    double x1 = 0;
    double B0 = 0, B1 = 0, A0 = 0, C1 = 0;
    double c = 0;  // additive constant of the zeta expression
    cplx alpha, beta, gamma, delta;
    double p12_half = 0, p12_sixth = 0;    // p12(w2/2), p12(w2/6)
    double p12p_half = 0, p12p_sixth = 0;  // derivatives there
};
Constants constants(const Uniformization& u);

// Four-zeta expression for ry on the doubled lattice, additive constant
// pinned by ry = 0 at the zero of y.
cplx ry_zeta(const Uniformization& u, cplx w);

// Residuals |alpha - 1/2z|, |beta + 1|, |gamma + 1/W|, |delta - 1|.
std::array<double, 4> constants_residuals(const Uniformization& u);

}  // namespace qwalk::kreweras

namespace qwalk::srw {

// Simple-walk decomposition ry(w) = phi(w)[fy(w) + fy(w + w2/2)] + R(w) + const:
// evaluates both sides on a sample and reports the spread of the difference
// (which should be constant in w) and the ellipticity residual.
struct DecompositionReport {
    double spread = 0.0;       // stddev of the difference over the sample
    double periodicity = 0.0;  // max |G(w+w2) - G(w)|
    cplx constant{0.0, 0.0};   // fitted additive constant
};
DecompositionReport phi_decomposition(const Continuation& cont, const SeriesEvaluator& se,
                                      const SeriesEvaluator::Constants& consts,
                                      const SeriesConfig& cfg, int samples = 20,
                                      std::uint64_t seed = 31);

}  // namespace qwalk::srw

#endif  // QWALK_KREWERAS_HPP
