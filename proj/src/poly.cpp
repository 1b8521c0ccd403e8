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

#include "qwalk/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

int Poly::degree() const {
    int d = static_cast<int>(c.size()) - 1;
    while (d > 0 && c[static_cast<size_t>(d)] == 0.0) --d;
    return d;
}

double Poly::eval(double x) const {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

cplx Poly::eval(cplx x) const {
    cplx r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly{{0.0}};
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return Poly{std::move(d)};
}

double Poly::deriv_at(double x, int order) const {
    Poly p = *this;
    for (int k = 0; k < order; ++k) p = p.derivative();
    return p.eval(x);
}

Poly poly_add(const Poly& p, const Poly& q) {
    std::vector<double> r(std::max(p.c.size(), q.c.size()), 0.0);
    for (size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
    for (size_t i = 0; i < q.c.size(); ++i) r[i] += q.c[i];
    return Poly{std::move(r)};
}

Poly poly_sub(const Poly& p, const Poly& q) {
    std::vector<double> r(std::max(p.c.size(), q.c.size()), 0.0);
    for (size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
    for (size_t i = 0; i < q.c.size(); ++i) r[i] -= q.c[i];
    return Poly{std::move(r)};
}

Poly poly_mul(const Poly& p, const Poly& q) {
    if (p.c.empty() || q.c.empty()) return Poly{{0.0}};
    std::vector<double> r(p.c.size() + q.c.size() - 1, 0.0);
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
    return Poly{std::move(r)};
}

std::vector<cplx> poly_roots(const Poly& p) {
    const int n = p.degree();
    if (n < 1) return {};
    if (n > 8) throw std::invalid_argument("poly_roots: degree > 8 unsupported");

    // Monic normalization.
    std::vector<cplx> a(static_cast<size_t>(n) + 1);
    const double lead = p.c[static_cast<size_t>(n)];
    for (int i = 0; i <= n; ++i) a[static_cast<size_t>(i)] = p.c[static_cast<size_t>(i)] / lead;

    auto eval_monic = [&](cplx x) {
        cplx r = 0.0;
        for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
        return r;
    };

    // Cauchy bound for the root radius.
    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[static_cast<size_t>(i)]));
    bound += 1.0;

    std::vector<cplx> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * M_PI * i / n + 0.35;
        x[static_cast<size_t>(i)] = 0.7 * bound * cplx(std::cos(ang), std::sin(ang));
    }

    for (int iter = 0; iter < 400; ++iter) {
        double move = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx num = eval_monic(x[static_cast<size_t>(i)]);
            cplx den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
            if (std::abs(den) == 0.0) { den = 1e-30; }
            cplx dx = num / den;
            x[static_cast<size_t>(i)] -= dx;
            move = std::max(move, std::abs(dx));
        }
        if (move < 1e-15 * bound) break;
    }

    // Newton polish against the original polynomial.
    Poly dp = p.derivative();
    for (auto& r : x) {
        for (int it = 0; it < 8; ++it) {
            cplx f = p.eval(r), g = dp.eval(r);
            if (std::abs(g) == 0.0) break;
            cplx step = f / g;
            r -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(r))) break;
        }
    }
    return x;
}

std::vector<double> poly_real_roots(const Poly& p, double imag_tol) {
    std::vector<double> out;
    for (const cplx& r : poly_roots(p)) {
        if (std::abs(r.imag()) <= imag_tol * (1.0 + std::abs(r.real()))) out.push_back(r.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qwalk
