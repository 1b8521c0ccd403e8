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

#include "qwalk/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

CurveData discriminants(const StepSet& s, double z) {
    if (!(z > 0.0) || !(z < 1.0 / s.size()))
        throw std::invalid_argument("discriminants: z must lie in (0, 1/|S|)");
    {
        bool south = s.has(-1, -1) || s.has(0, -1) || s.has(1, -1);
        bool west = s.has(-1, -1) || s.has(-1, 0) || s.has(-1, 1);
        bool singular = !s.has(-1, 0) && !s.has(-1, -1) && !s.has(0, -1);
        if (!south || !west || singular)
            throw std::domain_error("discriminants: model outside the non-singular class");
    }
    CurveData c;
    c.s = s;
    c.z = z;
    c.k = kernel_coeffs(s, z);
    c.d = poly_sub(poly_mul(c.k.b, c.k.b), poly_mul(Poly{{4.0}}, poly_mul(c.k.a, c.k.c)));
    c.dt = poly_sub(poly_mul(c.k.bt, c.k.bt), poly_mul(Poly{{4.0}}, poly_mul(c.k.at, c.k.ct)));
    return c;
}

namespace {

std::array<double, 4> order_roots(const Poly& d, const char* what) {
    const int deg = d.degree();
    if (deg < 3 || deg > 4) throw std::runtime_error(std::string(what) + ": unexpected discriminant degree");
    std::vector<double> roots = poly_real_roots(d, 1e-7);
    if (static_cast<int>(roots.size()) != deg)
        throw std::runtime_error(std::string(what) + ": failed to isolate real branch points");

    // Newton polish on the discriminant itself.
    Poly dp = d.derivative();
    for (double& r : roots) {
        for (int it = 0; it < 6; ++it) {
            double f = d.eval(r), g = dp.eval(r);
            if (g == 0.0) break;
            double step = f / g;
            r -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(r))) break;
        }
    }
    std::sort(roots.begin(), roots.end());

    std::vector<double> inside, outside;
    for (double r : roots)
        (std::abs(r) < 1.0 ? inside : outside).push_back(r);
    if (inside.size() != 2)
        throw std::runtime_error(std::string(what) + ": expected exactly two branch points in (-1,1)");

    std::array<double, 4> b{};
    b[0] = inside[0];
    b[1] = inside[1];
    // x3: smallest remaining root beyond x2 (d > 0 on (x2, x3)); x4 the
    // leftover root or the point at infinity.
    double x3 = kInf, x4 = kInf;
    std::vector<double> above, below;
    for (double r : outside)
        (r > b[1] ? above : below).push_back(r);
    if (!above.empty()) {
        x3 = above[0];
        if (above.size() == 2)
            x4 = above[1];
        else if (!below.empty())
            x4 = below[0];
    } else if (!below.empty()) {
        // All remaining roots below x1; the positive segment extends to infinity.
        x3 = kInf;
        x4 = below.back();
    }
    b[2] = x3;
    b[3] = x4;

    // Sign sanity: d < 0 between the inner pair.
    double mid = 0.5 * (b[0] + b[1]);
    if (!(d.eval(mid) < 0.0))
        throw std::runtime_error(std::string(what) + ": discriminant not negative between x1 and x2");
    return b;
}

}  // namespace

void order_branch_points(CurveData* c) {
    c->xb = order_roots(c->d, "x branch points");
    c->yb = order_roots(c->dt, "y branch points");
    c->ordered = true;
}

std::pair<cplx, cplx> y_branches(const CurveData& c, cplx x) {
    cplx a = c.k.a.eval(x), b = c.k.b.eval(x), q = c.k.c.eval(x);
    if (std::abs(a) < 1e-300) {
        cplx y0 = -q / b;
        return {y0, cplx(kInf, 0.0)};
    }
    cplx disc = std::sqrt(b * b - 4.0 * a * q);
    cplx r1 = (-b + disc) / (2.0 * a), r2 = (-b - disc) / (2.0 * a);
    if (std::abs(r1) > std::abs(r2)) std::swap(r1, r2);
    return {r1, r2};
}

double x_at_y1(const CurveData& c) {
    if (!c.ordered) throw std::logic_error("x_at_y1: branch points not ordered");
    double y1 = c.yb[0];
    double at = c.k.at.eval(y1), bt = c.k.bt.eval(y1);
    // The double root escapes to infinity when the x^2 coefficient vanishes
    // at y1 (e.g. Gessel's model); the period integral then starts at -inf.
    if (std::abs(at) < 1e-11 * (std::abs(bt) + c.z)) return -kInf;
    return -bt / (2.0 * at);
}

}  // namespace qwalk
