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

#ifndef QWALK_RAT_HPP
#define QWALK_RAT_HPP

#include <vector>

#include "qwalk/unif.hpp"

namespace qwalk {

struct RationalityResult {
    double ratio = 0.0;  // w3/w2
    bool detected = false;
    long k = 0, l = 0;  // l > k > 0, coprime
    double certified_error = 0.0;
};

// Continued-fraction detection of a rational w3/w2 with denominator <= l_max.
// Refuses (throws) when tol is below ten times the certified quadrature error.
RationalityResult detect_ratio(const Periods& p, long l_max = 64, double tol = 1e-8);

// Batched detection over a z grid.
std::vector<RationalityResult> scan_ratios(const StepSet& s, const std::vector<double>& z_grid,
                                           long l_max = 64, double tol = 1e-8);

// Finds z with w3(z)/w2(z) = k/l by bracketing + bisection on the ratio
// (monotonicity is checked empirically, not assumed).  The returned z is
// re-verified to |ratio - k/l| <= verify_tol.
double find_z_for_ratio(const StepSet& s, long k, long l, double z_lo = 0.0, double z_hi = 0.0,
                        double verify_tol = 1e-9);

}  // namespace qwalk

#endif  // QWALK_RAT_HPP
