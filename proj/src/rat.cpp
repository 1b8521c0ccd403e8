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

#include "qwalk/rat.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

RationalityResult detect_ratio(const Periods& p, long l_max, double tol) {
    RationalityResult r;
    r.ratio = p.w3 / p.w2;
    double ratio_err = 2.0 * p.quad_err / p.w2 * (1.0 + r.ratio);
    if (tol < 10.0 * ratio_err)
        throw std::invalid_argument("detect_ratio: tol below the certified quadrature error floor");

    // Continued-fraction convergents of the ratio.
    double y = r.ratio;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(y);
        long pa = static_cast<long>(a) * p1 + p0;
        long qa = static_cast<long>(a) * q1 + q0;
        if (qa > l_max || qa < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = pa;
        q1 = qa;
        if (q1 > 0 && p1 > 0 && std::abs(r.ratio - static_cast<double>(p1) / q1) < tol) {
            r.detected = true;
            r.k = p1;
            r.l = q1;
            r.certified_error = std::abs(r.ratio - static_cast<double>(p1) / q1) + ratio_err;
            return r;
        }
        double frac = y - a;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    return r;
}

std::vector<RationalityResult> scan_ratios(const StepSet& s, const std::vector<double>& z_grid,
                                           long l_max, double tol) {
    std::vector<RationalityResult> out(z_grid.size());
    std::vector<std::string> errors(z_grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < z_grid.size(); ++i) {
        try {
            CurveData c = discriminants(s, z_grid[i]);
            order_branch_points(&c);
            out[i] = detect_ratio(compute_periods(c), l_max, tol);
        } catch (const std::exception& e) {
            errors[i] = e.what();  // rethrown outside the parallel region
        }
    }
    for (size_t i = 0; i < z_grid.size(); ++i)
        if (!errors[i].empty())
            throw std::runtime_error("scan_ratios at z=" + std::to_string(z_grid[i]) + ": " + errors[i]);
    return out;
}

double find_z_for_ratio(const StepSet& s, long k, long l, double z_lo, double z_hi,
                        double verify_tol) {
    if (!(l > k && k > 0)) throw std::invalid_argument("find_z_for_ratio: need l > k > 0");
    const double target = static_cast<double>(k) / l;
    const double zmax = 1.0 / s.size();
    if (z_lo <= 0.0) z_lo = 0.02 * zmax;
    if (z_hi <= 0.0) z_hi = 0.98 * zmax;

    auto ratio_at = [&](double z) {
        CurveData c = discriminants(s, z);
        order_branch_points(&c);
        Periods p = compute_periods(c);
        return p.w3 / p.w2;
    };

    // Bracket the target on a scan grid (the ratio is monotone in practice;
    // the scan verifies rather than assumes it).  Grid points where the
    // period quadrature gives up (z too close to the edges) are skipped.
    const int ngrid = 24;
    double za = 0.0, zb = 0.0, fa = 0.0;
    double prev_z = 0.0, prev_f = 0.0;
    bool have_prev = false, found = false;
    for (int i = 0; i <= ngrid && !found; ++i) {
        double z = z_lo + (z_hi - z_lo) * i / ngrid;
        double f;
        try {
            f = ratio_at(z) - target;
        } catch (const std::exception&) {
            have_prev = false;
            continue;
        }
        if (std::abs(f) < 1e-12) return z;
        if (have_prev && prev_f * f <= 0.0) {
            za = prev_z;
            zb = z;
            fa = prev_f;
            found = true;
            break;
        }
        prev_z = z;
        prev_f = f;
        have_prev = true;
    }
    if (!found) throw std::runtime_error("find_z_for_ratio: target ratio not bracketed on the scan grid");

    for (int it = 0; it < 200; ++it) {
        double zm = 0.5 * (za + zb);
        double fm = ratio_at(zm) - target;
        if (std::abs(fm) < 0.1 * verify_tol || zb - za < 1e-15 * zmax) {
            za = zb = zm;
            break;
        }
        if (fa * fm <= 0.0) {
            zb = zm;
        } else {
            za = zm;
            fa = fm;
        }
    }
    double z_star = 0.5 * (za + zb);
    if (std::abs(ratio_at(z_star) - target) > verify_tol)
        throw std::runtime_error("find_z_for_ratio: post-hoc verification failed");
    return z_star;
}

}  // namespace qwalk
