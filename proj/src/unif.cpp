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

#include "qwalk/unif.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre01(int n, std::vector<double>* xs, std::vector<double>* ws) {
    xs->resize(static_cast<size_t>(n));
    ws->resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        (*xs)[static_cast<size_t>(i)] = 0.5 * (1.0 + x);
        (*ws)[static_cast<size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

// Integral with inverse-square-root singularities at both endpoints:
// int_a^b dx / sqrt((x-a)(b-x) g(x)) via Gauss-Chebyshev.
double cheb_singular(double a, double b, const std::function<double(double)>& g, int n) {
    double m = 0.5 * (a + b), h = 0.5 * (b - a);
    // Kahan compensation keeps the rounding floor independent of n.
    double acc = 0.0, comp = 0.0;
    for (int k = 1; k <= n; ++k) {
        double t = std::cos((2.0 * k - 1.0) * kPi / (2.0 * n));
        double gv = g(m + h * t);
        if (!(gv > 0.0)) throw std::runtime_error("period quadrature: integrand turned complex");
        double term = 1.0 / std::sqrt(gv) - comp;
        double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    return acc * kPi / n;
}

// Integral with an inverse-square-root singularity at b only:
// int_a^b dx / sqrt((b-x) h(x)) via x = b - (b-a) t^2, Gauss-Legendre.
double gl_one_sided(double a, double b, const std::function<double(double)>& h, int n) {
    std::vector<double> xs, ws;
    gauss_legendre01(n, &xs, &ws);
    double L = b - a, acc = 0.0;
    for (int k = 0; k < n; ++k) {
        double t = xs[static_cast<size_t>(k)];
        double x = b - L * t * t;
        double hv = h(x);
        if (!(hv > 0.0)) throw std::runtime_error("period quadrature: integrand turned complex");
        acc += ws[static_cast<size_t>(k)] * 2.0 * std::sqrt(L) / std::sqrt(hv);
    }
    return acc;
}

double refine(const std::function<double(int)>& eval, double rel_tol, double* err, int n_max) {
    double prev = eval(64);
    for (int n = 128; n <= n_max; n *= 2) {
        double cur = eval(n);
        double d = std::abs(cur - prev);
        double floor_tol = rel_tol * (1.0 + std::abs(cur)) +
                           8.0 * std::sqrt(static_cast<double>(n)) * 1.1e-16 * std::abs(cur);
        if (d < floor_tol) {
            *err = std::max(*err, d);
            return cur;
        }
        prev = cur;
    }
    throw std::runtime_error("period quadrature failed to converge");
}

}  // namespace

Periods compute_periods(const CurveData& c) {
    if (!c.ordered) throw std::logic_error("compute_periods: branch points not ordered");
    const Poly& d = c.d;
    const double lc = d.c[static_cast<size_t>(d.degree())];
    std::vector<double> finite;
    for (double r : c.xb)
        if (std::isfinite(r)) finite.push_back(r);

    auto prod_except = [&](double x, double skip1, double skip2) {
        double p = 1.0;
        for (double r : finite)
            if (r != skip1 && r != skip2) p *= (x - r);
        return p;
    };

    const double x1 = c.xb[0], x2 = c.xb[1], x3 = c.xb[2];
    if (!std::isfinite(x3))
        throw std::runtime_error("compute_periods: x3 at infinity not supported for this model");

    Periods P;
    P.quad_err = 0.0;
    double err = 0.0;

    // Close root pairs squeeze the analyticity ellipse; the node cap grows
    // accordingly and closed-form Chebyshev nodes keep large n cheap.
    const int n_max = 1 << 18;

    // w1 = i * int_{x1}^{x2} dx/sqrt(-d); -d = (x-x1)(x2-x) * lc * prod_others.
    auto g1 = [&](double x) { return lc * prod_except(x, x1, x2); };
    double I1 = refine([&](int n) { return cheb_singular(x1, x2, g1, n); }, 1e-13, &err, n_max);
    P.w1 = cplx(0.0, I1);

    // w2 = int_{x2}^{x3} dx/sqrt(d); d = (x-x2)(x3-x) * (-lc) * prod_others.
    auto g2 = [&](double x) { return -lc * prod_except(x, x2, x3); };
    P.w2 = refine([&](int n) { return cheb_singular(x2, x3, g2, n); }, 1e-13, &err, n_max);

    // w3 = int_{X(y1)}^{x1} dx/sqrt(d); only the x1 endpoint is singular,
    // d = (x1-x) * (-lc) * prod_others.
    double X1 = x_at_y1(c);
    auto h3 = [&](double x) { return -lc * prod_except(x, x1, x1); };
    if (std::isfinite(X1)) {
        if (!(X1 < x1)) throw std::runtime_error("compute_periods: X(y1) >= x1");
        P.w3 = refine([&](int n) { return gl_one_sided(X1, x1, h3, n); }, 1e-13, &err, 4096);
    } else {
        // X(y1) at infinity: integrate from -inf, splitting at x1 - L and
        // mapping the unbounded piece through u = 1/(cut + 1 - x).
        if (finite.front() < x1)
            throw std::runtime_error("compute_periods: root below x1 blocks the infinite path");
        const double L = std::max(2.0 * std::abs(x1) + 2.0, 8.0);
        const double cut = x1 - L;
        auto tail = [&](int n) {
            std::vector<double> xs, ws;
            gauss_legendre01(n, &xs, &ws);
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                double uu = xs[static_cast<size_t>(k)];
                double x = cut + 1.0 - 1.0 / uu;
                double q = uu * uu * uu * uu * d.eval(x);
                if (!(q > 0.0)) throw std::runtime_error("period quadrature: integrand turned complex");
                acc += ws[static_cast<size_t>(k)] / std::sqrt(q);
            }
            return acc;
        };
        P.w3 = refine([&](int n) { return gl_one_sided(cut, x1, h3, n); }, 1e-13, &err, 4096) +
               refine(tail, 1e-13, &err, 4096);
    }

    P.quad_err = std::max(err, 1e-13 * (std::abs(I1) + P.w2));
    if (!(P.w2 > 0.0) || !(I1 > 0.0)) throw std::runtime_error("compute_periods: bad period signs");
    if (!(P.w3 > 0.0 && P.w3 < P.w2)) throw std::runtime_error("compute_periods: w3 outside (0, w2)");
    return P;
}

Uniformization::Uniformization(const CurveData& c, const Periods& p) : c_(c), p_(p) {
    wp_ = std::make_shared<Weier>(Lattice{p.w1, p.w2});

    x4_finite_ = std::isfinite(c.xb[3]);
    if (x4_finite_) {
        gx_v4_ = c.xb[3];
        gx_c_ = c.d.deriv_at(gx_v4_, 2) / 6.0;
        gx_d_ = c.d.deriv_at(gx_v4_, 1);
    } else {
        gx_c_ = c.d.deriv_at(0.0, 2) / 6.0;
        gx_d_ = c.d.deriv_at(0.0, 3) / 6.0;
    }
    y4_finite_ = std::isfinite(c.yb[3]);
    if (y4_finite_) {
        gy_v4_ = c.yb[3];
        gy_c_ = c.dt.deriv_at(gy_v4_, 2) / 6.0;
        gy_d_ = c.dt.deriv_at(gy_v4_, 1);
    } else {
        gy_c_ = c.dt.deriv_at(0.0, 2) / 6.0;
        gy_d_ = c.dt.deriv_at(0.0, 3) / 6.0;
    }

    // Polish w3 so that K(x(w), y(w)) vanishes at a generic test point; the
    // quadrature value is the seed.
    cplx wt = 0.3127 * p_.w2 + 0.4371 * p_.w1;
    auto kres = [&](double s) {
        cplx yv = g_y_inv(wp_->wp(wt - s / 2.0));
        return kernel_eval(c_.s, x(wt), yv, c_.z);
    };
    double s = p_.w3, h = 1e-6 * p_.w2;
    for (int it = 0; it < 4; ++it) {
        cplx f = kres(s);
        cplx df = (kres(s + h) - kres(s - h)) / (2.0 * h);
        if (std::abs(df) == 0.0) break;
        double step = (f / df).real();
        if (std::abs(step) > 1e-4 * p_.w2) break;  // distrust; keep quadrature value
        s -= step;
    }
    if (std::abs(s - p_.w3) < 1e-4 * p_.w2) p_.w3 = s;
}

cplx Uniformization::g_x(cplx t) const {
    return x4_finite_ ? gx_c_ + gx_d_ / (t - gx_v4_) : gx_c_ + gx_d_ * t;
}
cplx Uniformization::g_y(cplx t) const {
    return y4_finite_ ? gy_c_ + gy_d_ / (t - gy_v4_) : gy_c_ + gy_d_ * t;
}
cplx Uniformization::g_x_inv(cplx p) const {
    return x4_finite_ ? gx_v4_ + gx_d_ / (p - gx_c_) : (p - gx_c_) / gx_d_;
}
cplx Uniformization::g_y_inv(cplx p) const {
    return y4_finite_ ? gy_v4_ + gy_d_ / (p - gy_c_) : (p - gy_c_) / gy_d_;
}

cplx Uniformization::x(cplx w) const { return g_x_inv(wp_->wp(w)); }
cplx Uniformization::y(cplx w) const { return g_y_inv(wp_->wp(w - p_.w3 / 2.0)); }

cplx Uniformization::x_prime(cplx w) const {
    cplx p = wp_->wp(w), pp = wp_->wp_prime(w);
    if (x4_finite_) {
        cplx q = p - gx_c_;
        return -gx_d_ * pp / (q * q);
    }
    return pp / gx_d_;
}

cplx Uniformization::y_prime(cplx w) const {
    cplx p = wp_->wp(w - p_.w3 / 2.0), pp = wp_->wp_prime(w - p_.w3 / 2.0);
    if (y4_finite_) {
        cplx q = p - gy_c_;
        return -gy_d_ * pp / (q * q);
    }
    return pp / gy_d_;
}

cplx Uniformization::omega_x(int i) const {
    switch (i) {
        case 1: return cplx(p_.w2 / 2.0, 0.0);
        case 2: return (p_.w1 + p_.w2) / 2.0;
        case 3: return p_.w1 / 2.0;
        case 4: return cplx(0.0, 0.0);
    }
    throw std::invalid_argument("omega_x: index in 1..4");
}

bool Uniformization::in_delta_x(cplx w) const {
    double re = w.real();
    if (re < 0.0 || re >= p_.w2) return false;
    cplx xv = x(w);
    return std::isfinite(xv.real()) && std::isfinite(xv.imag()) && std::abs(xv) < 1.0 - 1e-12;
}

bool Uniformization::in_delta_y(cplx w) const {
    double re = w.real() - p_.w3 / 2.0;
    if (re < 0.0 || re >= p_.w2) return false;
    cplx yv = y(w);
    return std::isfinite(yv.real()) && std::isfinite(yv.imag()) && std::abs(yv) < 1.0 - 1e-12;
}

namespace {

cplx to_cell(cplx w, const Periods& p) {
    double a = w.imag() / p.w1.imag();
    double b = w.real() / p.w2;
    a -= std::floor(a);
    b -= std::floor(b);
    return a * p.w1 + b * p.w2;
}

}  // namespace

std::pair<cplx, cplx> Uniformization::solve_x(cplx x0) const {
    auto w = wp_->wp_invert(g_x(x0));
    if (!w) throw std::runtime_error("solve_x: inversion failed");
    return {to_cell(*w, p_), to_cell(-*w, p_)};
}

std::pair<cplx, cplx> Uniformization::solve_y(cplx y0) const {
    auto w = wp_->wp_invert(g_y(y0));
    if (!w) throw std::runtime_error("solve_y: inversion failed");
    return {to_cell(*w + p_.w3 / 2.0, p_), to_cell(-*w + p_.w3 / 2.0, p_)};
}

Uniformization make_uniformization(const StepSet& s, double z) {
    CurveData c = discriminants(s, z);
    order_branch_points(&c);
    Periods p = compute_periods(c);
    return Uniformization(c, p);
}

}  // namespace qwalk
