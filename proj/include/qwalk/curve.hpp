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

#ifndef QWALK_CURVE_HPP
#define QWALK_CURVE_HPP

#include <array>
#include <limits>

#include "qwalk/stepset.hpp"

namespace qwalk {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Discriminants of the kernel in y and in x, and their ordered real roots
// (branch points of the two algebraic branches Y(x), X(y)).
struct CurveData {
    StepSet s;
    double z = 0.0;
    KernelCoeffs k;

    Poly d;   // discriminant in x: b^2 - 4 a c
    Poly dt;  // discriminant in y

    // Ordered branch points; entry kInf marks the point at infinity.
    std::array<double, 4> xb{};  // x1 < x2 in (-1,1); x3 with d > 0 on (x2,x3)
    std::array<double, 4> yb{};
    bool ordered = false;
};

// Discriminant coefficients only; branch points not yet ordered.
CurveData discriminants(const StepSet& s, double z);

// Finds and orders the four roots of each discriminant (throws if the root
// pattern does not match the genus-1 regime).
void order_branch_points(CurveData* c);

// Two roots in y of K(x, y) = 0, |Y0| <= |Y1|; a root at infinity when
// a(x) = 0.
std::pair<cplx, cplx> y_branches(const CurveData& c, cplx x);

// The double root in x of K(x, y1) = 0, i.e. X(y1).
double x_at_y1(const CurveData& c);

}  // namespace qwalk

#endif  // QWALK_CURVE_HPP
