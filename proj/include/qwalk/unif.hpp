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

#ifndef QWALK_UNIF_HPP
#define QWALK_UNIF_HPP

#include <memory>

#include "qwalk/curve.hpp"
#include "qwalk/wfun.hpp"

namespace qwalk {

struct Periods {
    cplx w1;          // purely imaginary
    double w2 = 0.0;  // real > 0
    double w3 = 0.0;  // real, 0 < w3 < w2
    double quad_err = 0.0;
};

// Periods of the kernel curve by quadrature over the branch cuts.
Periods compute_periods(const CurveData& c);

// Elliptic parametrization x(w), y(w) of {K(x,y;z) = 0} with periods
// (w1, w2); the y cell is the x cell shifted by w3/2.
class Uniformization {
public:
    Uniformization(const CurveData& c, const Periods& p);

    const CurveData& curve() const { return c_; }
    const Periods& periods() const { return p_; }
    const Weier& weier() const { return *wp_; }
    double z() const { return c_.z; }

    cplx x(cplx w) const;
    cplx y(cplx w) const;
    cplx x_prime(cplx w) const;
    cplx y_prime(cplx w) const;

    // Named points: x(omega_x[i]) = x_{i+1}, y(omega_y[i]) = y_{i+1}.
    cplx omega_x(int i) const;                           // i in 1..4
    cplx omega_y(int i) const { return omega_x(i) + p_.w3 / 2.0; }
    cplx center_x() const { return omega_x(2); }         // (w1+w2)/2
    cplx center_y() const { return omega_y(2); }         // (w1+w2+w3)/2

    // Lifted Galois involutions fixing x resp. y.
    cplx xi(cplx w) const { return -w + 2.0 * center_x(); }
    cplx eta(cplx w) const { return -w + 2.0 * center_y(); }

    // Membership in the strips Delta_x, Delta_y (and their union).
    bool in_delta_x(cplx w) const;
    bool in_delta_y(cplx w) const;
    bool in_delta(cplx w) const { return in_delta_x(w) || in_delta_y(w); }

    // Value of the rational map g_x (p(w) = g_x(x(w))) and its inverse.
    cplx g_x(cplx t) const;
    cplx g_y(cplx t) const;
    cplx g_x_inv(cplx p) const;
    cplx g_y_inv(cplx p) const;

    // Solutions w of x(w) = x0 in the fundamental cell (two values, +-).
    std::pair<cplx, cplx> solve_x(cplx x0) const;
    std::pair<cplx, cplx> solve_y(cplx y0) const;

private:
    CurveData c_;
    Periods p_;
    std::shared_ptr<Weier> wp_;
    // g_x data: finite-pole form v4 + dp4/(p - c4) or linear form.
    bool x4_finite_ = false, y4_finite_ = false;
    double gx_c_ = 0, gx_d_ = 0, gx_v4_ = 0;  // p = gx_c + gx_d/(t - v4) or p = gx_c + gx_d t
    double gy_c_ = 0, gy_d_ = 0, gy_v4_ = 0;
};

// Convenience: full pipeline from a step set.
Uniformization make_uniformization(const StepSet& s, double z);

}  // namespace qwalk

#endif  // QWALK_UNIF_HPP
