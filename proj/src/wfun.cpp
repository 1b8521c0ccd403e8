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

#include "qwalk/wfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Reduced {
    cplx w;
    long j1;  // multiples of w1 removed
    long j2;  // multiples of w2 removed
};

}  // namespace

Invariants invariants_from_values(double e1, double e2, double e3) {
    Invariants inv;
    inv.g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3);
    inv.g3 = 4.0 * e1 * e2 * e3;
    return inv;
}

Weier::Weier(const Lattice& L) : lat_(L) {
    if (!(L.w2 > 0.0)) throw std::invalid_argument("Weier: w2 must be real positive");
    double t = L.w1.imag();
    if (std::abs(L.w1.real()) > 1e-10 * std::abs(t))
        throw std::invalid_argument("Weier: w1 must be purely imaginary");
    if (!(t != 0.0)) throw std::invalid_argument("Weier: w1 must be nonzero");
    lat_.w1 = cplx(0.0, std::abs(t));

    double aspect = std::abs(lat_.w1) / lat_.w2;
    aspect_warning_ = (aspect < 1e-3 || aspect > 1e3);

    // Closed-form sum runs along the shorter period: the row decay is then
    // exp(-2 pi * long/short) <= exp(-2 pi).
    if (lat_.w2 <= std::abs(lat_.w1)) {
        alpha_ = cplx(lat_.w2, 0.0);
        beta_ = lat_.w1;
    } else {
        alpha_ = lat_.w1;
        beta_ = cplx(lat_.w2, 0.0);
    }

    e1_ = wp(cplx(lat_.w2 / 2, 0.0)).real();
    e2_ = wp((lat_.w1 + lat_.w2) / 2.0).real();
    e3_ = wp(lat_.w1 / 2.0).real();
    inv_ = invariants_from_values(e1_, e2_, e3_);

    cplx p, pp, zt;
    eval_core(cplx(lat_.w2 / 2, 0.0), &p, &pp, &zt);
    eta_w2_half_ = zt;
    eval_core(lat_.w1 / 2.0, &p, &pp, &zt);
    eta_w1_half_ = zt;
}

cplx Weier::reduce(cplx w) const {
    double a = w.imag() / lat_.w1.imag();
    double b = w.real() / lat_.w2;
    a -= std::floor(a + 0.5);
    b -= std::floor(b + 0.5);
    return a * lat_.w1 + b * lat_.w2;
}

double Weier::dist_to_lattice(cplx w) const { return std::abs(reduce(w)); }

void Weier::eval_core(cplx w, cplx* p, cplx* pp, cplx* zt) const {
    const cplx c = kPi / alpha_;
    const cplx c2 = c * c, c3 = c2 * c;

    // Closed-form sums along alpha; asymptotic limits prevent overflow once
    // the row sits hundreds of scale heights away.
    auto S = [&](cplx u) {
        cplx cu = c * u;
        if (std::abs(cu.imag()) > 350.0) return cplx(0.0, 0.0);
        cplx s = std::sin(cu);
        return c2 / (s * s);
    };
    auto S3 = [&](cplx u) {
        cplx cu = c * u;
        if (std::abs(cu.imag()) > 350.0) return cplx(0.0, 0.0);
        cplx s = std::sin(cu);
        return c3 * std::cos(cu) / (s * s * s);
    };
    auto C = [&](cplx u) {
        cplx cu = c * u;
        if (cu.imag() > 350.0) return c * cplx(0.0, -1.0);
        if (cu.imag() < -350.0) return c * cplx(0.0, 1.0);
        return c * std::cos(cu) / std::sin(cu);
    };

    cplx acc_p = S(w) - c2 / 3.0;
    cplx acc_pp = -2.0 * S3(w);
    cplx acc_z = C(w) + w * c2 / 3.0;

    // Row decay is exp(-2 pi |beta/alpha|) per step; the loop ends on two
    // consecutive rows at the noise floor.
    const double row_height = std::abs((c * beta_).imag());
    const long m_cap = static_cast<long>(900.0 / std::max(row_height, 1e-3)) + 8;
    int quiet = 0;
    for (long m = 1; m <= m_cap; ++m) {
        cplx um = w - static_cast<double>(m) * beta_;
        cplx up = w + static_cast<double>(m) * beta_;
        cplx bm = static_cast<double>(m) * beta_;
        cplx dp = S(um) + S(up) - 2.0 * S(bm);
        cplx dpp = -2.0 * (S3(um) + S3(up));
        cplx dz = C(um) + C(up) + 2.0 * w * S(bm);
        acc_p += dp;
        acc_pp += dpp;
        acc_z += dz;
        double scale = std::abs(acc_p) + std::abs(acc_pp) + std::abs(acc_z) + 1.0;
        if (std::abs(dp) + std::abs(dpp) + std::abs(dz) < 1e-15 * scale)
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2 && m >= 4) break;
    }
    *p = acc_p;
    *pp = acc_pp;
    *zt = acc_z;
}

cplx Weier::wp(cplx w) const {
    cplx wr = reduce(w);
    if (std::abs(wr) < 1e-290) return cplx(std::numeric_limits<double>::infinity(), 0.0);
    cplx p, pp, zt;
    eval_core(wr, &p, &pp, &zt);
    return p;
}

cplx Weier::wp_prime(cplx w) const {
    cplx wr = reduce(w);
    if (std::abs(wr) < 1e-290) return cplx(std::numeric_limits<double>::infinity(), 0.0);
    cplx p, pp, zt;
    eval_core(wr, &p, &pp, &zt);
    return pp;
}

cplx Weier::wp_second(cplx w) const {
    cplx p = wp(w);
    return 6.0 * p * p - inv_.g2 / 2.0;
}

cplx Weier::zeta(cplx w) const {
    double a = w.imag() / lat_.w1.imag();
    double b = w.real() / lat_.w2;
    double ja = std::floor(a + 0.5);
    double jb = std::floor(b + 0.5);
    cplx wr = (a - ja) * lat_.w1 + (b - jb) * lat_.w2;
    if (std::abs(wr) < 1e-290) return cplx(std::numeric_limits<double>::infinity(), 0.0);
    cplx p, pp, zt;
    eval_core(wr, &p, &pp, &zt);
    return zt + 2.0 * ja * eta_w1_half_ + 2.0 * jb * eta_w2_half_;
}

cplx Weier::landen_sum(int p, cplx w) const {
    if (p < 1) throw std::invalid_argument("landen_sum: p >= 1 required");
    cplx acc = wp(w);
    for (int l = 1; l < p; ++l) {
        double sh = static_cast<double>(l) * lat_.w2 / p;
        acc += wp(w + sh) - wp(cplx(sh, 0.0));
    }
    return acc;
}

cplx Weier::wp_add(cplx w, cplx wt) const {
    cplx pw = wp(w), pt = wp(wt);
    if (std::abs(pw - pt) < 1e-12 * (1.0 + std::abs(pw)))
        throw std::domain_error("wp_add: degenerate denominator p(w) = p(wt)");
    cplx slope = (wp_prime(w) - wp_prime(wt)) / (pw - pt);
    return -pw - pt + 0.25 * slope * slope;
}

cplx Weier::zeta_add(cplx w, cplx wt) const {
    cplx pw = wp(w), pt = wp(wt);
    if (std::abs(pw - pt) < 1e-12 * (1.0 + std::abs(pw)))
        throw std::domain_error("zeta_add: degenerate denominator p(w) = p(wt)");
    return zeta(w) + zeta(wt) + 0.5 * (wp_prime(w) - wp_prime(wt)) / (pw - pt);
}

double Weier::legendre_residual() const {
    cplx lhs = eta_w2_half_ * lat_.w1 - eta_w1_half_ * lat_.w2;
    return std::abs(lhs - cplx(0.0, kPi));
}

cplx Weier::phi(cplx w) const {
    const cplx ipi(0.0, kPi);
    return lat_.w1 / (2.0 * ipi) * zeta(w) - w / ipi * eta_w1_half_;
}

cplx Weier::phi_prime(cplx w) const {
    const cplx ipi(0.0, kPi);
    return -lat_.w1 / (2.0 * ipi) * wp(w) - eta_w1_half_ / ipi;
}

std::optional<cplx> Weier::wp_invert(cplx target) const {
    const double t = lat_.w1.imag();
    const double scale = std::min(lat_.w2, t);

    auto newton = [&](cplx seed) -> std::optional<cplx> {
        cplx w = seed;
        for (int it = 0; it < 80; ++it) {
            cplx f = wp(w) - target;
            if (std::abs(f) < 1e-13 * (1.0 + std::abs(target))) return w;
            cplx d = wp_prime(w);
            if (std::abs(d) < 1e-14) {
                // Near a half period: quadratic local model p ~ e + p''/2 h^2.
                cplx h2 = 2.0 * f / wp_second(w);
                cplx h = std::sqrt(-h2);
                w += (std::abs(wp(w + h) - target) < std::abs(wp(w - h) - target)) ? h : -h;
                continue;
            }
            cplx step = f / d;
            double cap = 0.2 * scale;
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            w -= step;
            if (dist_to_lattice(w) < 1e-9 * scale) w += 0.05 * scale;
        }
        cplx f = wp(w) - target;
        if (std::abs(f) < 1e-12 * (1.0 + std::abs(target))) return w;
        return std::nullopt;
    };

    // Large target: the pole at 0 dominates, p(w) ~ 1/w^2.
    if (std::abs(target) > 1e6) {
        if (auto r = newton(1.0 / std::sqrt(target))) return r;
    }

    // Grid seeding over a half cell (the other half is -w).
    const int nb = 24, na = 24;
    cplx best_seed;
    double best = std::numeric_limits<double>::infinity();
    for (int ib = 0; ib <= nb; ++ib) {
        for (int ia = 0; ia <= na; ++ia) {
            cplx w = (ib + 0.5) / (nb + 1.0) * lat_.w2 + (ia + 0.5) / (na + 1.0) * 0.5 * lat_.w1;
            cplx f = wp(w) - target;
            double m = std::abs(f) / (1.0 + std::abs(wp(w)));
            if (m < best) {
                best = m;
                best_seed = w;
            }
        }
    }
    if (auto r = newton(best_seed)) return r;

    // Denser reseed as a fallback.
    for (int ib = 0; ib < 64; ++ib) {
        for (int ia = 0; ia < 64; ++ia) {
            cplx w = (ib + 0.37) / 64.0 * lat_.w2 + (ia + 0.61) / 64.0 * 0.5 * lat_.w1;
            if (std::abs(wp(w) - target) < 1e-2 * (1.0 + std::abs(target))) {
                if (auto r = newton(w)) return r;
            }
        }
    }
    return std::nullopt;
}

}  // namespace qwalk
