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

#include "qwalk/kreweras.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qwalk::kreweras {

namespace {

void invariants(double z, double* g2, double* g3) {
    *g2 = 4.0 / 3.0 - 32.0 * z * z * z;
    *g3 = -8.0 / 27.0 + 32.0 * z * z * z / 3.0 - 64.0 * std::pow(z, 6);
}

}  // namespace

double solve_w(double z) {
    if (!(z > 0.0 && z < 1.0 / 3.0)) throw std::invalid_argument("solve_w: z in (0, 1/3) required");
    double w = 2.0 * z;
    for (int it = 0; it < 500; ++it) {
        double next = z * (2.0 + w * w * w);
        if (std::abs(next - w) < 1e-16) {
            w = next;
            break;
        }
        w = next;
    }
    return w;
}

double q00_closed(double z) {
    double w = solve_w(z);
    return (w - std::pow(w, 4) / 4.0) / (2.0 * z);
}

cplx qx0_closed(double z, cplx x) {
    double w = solve_w(z);
    if (std::abs(x) < 1e-14) return q00_closed(z);
    cplx s = std::sqrt(1.0 - x * w * w);
    return (1.0 / (2.0 * z) - 1.0 / x - (1.0 / w - 1.0 / x) * s) / (z * x);
}

CubicRoots simili_roots(double z) {
    double g2, g3;
    invariants(z, &g2, &g3);
    // 4X^3 - g2 X + g3 = 0  ->  X^3 + pX + q = 0 with p = -g2/4, q = g3/4.
    double p = -g2 / 4.0, q = g3 / 4.0;
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::min(1.0, std::max(-1.0, arg));
    double theta = std::acos(arg);
    std::array<double, 3> roots;
    for (int k = 0; k < 3; ++k) roots[static_cast<size_t>(k)] = m * std::cos(theta / 3.0 - 2.0 * M_PI * k / 3.0);

    // r is the branch with r(0) = 2/3; the Puiseux pair splits as rt < rh.
    double guess = 2.0 / 3.0 - 8.0 * z * z * z - 48.0 * std::pow(z, 6);
    CubicRoots out{};
    size_t ir = 0;
    double best = 1e300;
    for (size_t i = 0; i < 3; ++i) {
        double d = std::abs(roots[i] - guess);
        if (d < best) {
            best = d;
            ir = i;
        }
    }
    out.r = roots[ir];
    std::array<double, 2> rest;
    size_t j = 0;
    for (size_t i = 0; i < 3; ++i)
        if (i != ir) rest[j++] = roots[i];
    out.rt = std::min(rest[0], rest[1]);
    out.rh = std::max(rest[0], rest[1]);
    return out;
}

double q00_from_root(double z) {
    double r = simili_roots(z).r;
    double rad = -2.0 / 9.0 - r / 3.0 + r * r + 8.0 * z * z * z;
    return (-1.0 / 3.0 + r / 2.0 + 2.0 * std::sqrt(rad)) / (4.0 * z * z * z);
}

DoubledLattice doubled_lattice_data(double z) {
    double g2, g3;
    invariants(z, &g2, &g3);
    double r = simili_roots(z).r;
    DoubledLattice d;
    d.e2_12 = r / 2.0;
    d.g2_12 = 15.0 * r * r / 4.0 - g2 / 4.0;
    d.g3_12 = 11.0 * g3 / 32.0 - 7.0 * r * g2 / 32.0;
    return d;
}

cplx wp12_from_wp(double z, cplx wp_value, int half_sign) {
    DoubledLattice d = doubled_lattice_data(z);
    cplx q = wp_value - d.e2_12;
    cplx rad = std::sqrt(q * q + d.g2_12 - 12.0 * d.e2_12 * d.e2_12);
    return 0.5 * (wp_value + d.e2_12 + static_cast<double>(half_sign) * rad);
}

cplx x_half_shift(double x1, cplx xval) {
    double s = std::sqrt(x1);
    return s * (s * xval + 1.0) / (xval - x1);
}

Constants constants(const Uniformization& u) {
    const double z = u.z();
    const Periods& P = u.periods();
    Constants c;
    c.W = solve_w(z);
    c.roots = simili_roots(z);
    c.x1 = u.curve().xb[0];

    const double sx1 = std::sqrt(c.x1);
    c.B0 = -(2.0 * c.x1 + 24.0 * z * z * sx1 + 3.0 * c.roots.r * c.x1);
    // Pinned against p12(w2/2) directly; see the doubled-lattice tests.
    c.B1 = 3.0 * (c.roots.r - 2.0 * c.roots.rt);
    double w2sq = c.W * c.W;
    c.A0 = std::pow(c.B0 + c.B1 * c.x1, 2) / (1.0 - c.x1 * w2sq);
    const double sqA = std::sqrt(c.A0);
    c.C1 = 2.0 * c.x1 * c.B1 * c.B0 - 2.0 * c.B1 * sqA * c.x1 - 2.0 * sqA * c.B0 +
           c.x1 * c.x1 * c.B1 * c.B1 + c.A0 + c.B0 * c.B0;

    // Doubled-lattice functions evaluated directly.
    Weier w12(Lattice{P.w1, 2.0 * P.w2});
    const double w2 = P.w2;
    c.p12_half = w12.wp(cplx(w2 / 2.0, 0.0)).real();
    c.p12_sixth = w12.wp(cplx(w2 / 6.0, 0.0)).real();
    c.p12p_half = w12.wp_prime(cplx(w2 / 2.0, 0.0)).real();
    c.p12p_sixth = w12.wp_prime(cplx(w2 / 6.0, 0.0)).real();

    cplx z13 = w12.zeta(cplx(w2 / 3.0, 0.0));
    cplx z43 = w12.zeta(cplx(4.0 * w2 / 3.0, 0.0));
    cplx z11 = w12.zeta(cplx(w2, 0.0));
    cplx z23 = w12.zeta(cplx(2.0 * w2 / 3.0, 0.0));
    c.c = ((z13 - z43) / (2.0 * z) + (z11 - z23) / z).real();

    cplx zh = w12.zeta(cplx(w2 / 2.0, 0.0));
    cplx zs = w12.zeta(cplx(w2 / 6.0, 0.0));
    c.alpha = c.c + zh / z - 2.0 * zs / z -
              6.0 * c.p12p_half * (c.B0 + c.B1 * c.x1) / (z * c.A0 * w2sq) +
              12.0 * c.x1 * c.p12p_sixth * (c.B0 - sqA + c.B1 * c.x1) / (c.C1 * z);
    c.beta = 12.0 * c.x1 * c.x1 * sqA * c.p12p_sixth / (c.C1 * z);
    c.gamma = 6.0 * c.p12p_half / (z * sqA * w2sq);
    c.delta = -12.0 * c.x1 * c.x1 * sqA * c.p12p_sixth / (c.C1 * z);
    return c;
}

cplx ry_zeta(const Uniformization& u, cplx w) {
    const double z = u.z();
    const Periods& P = u.periods();
    Weier w12(Lattice{P.w1, 2.0 * P.w2});
    const double w2 = P.w2;
    cplx c = (w12.zeta(cplx(w2 / 3.0, 0.0)) - w12.zeta(cplx(4.0 * w2 / 3.0, 0.0))) / (2.0 * z) +
             (w12.zeta(cplx(w2, 0.0)) - w12.zeta(cplx(2.0 * w2 / 3.0, 0.0))) / z;
    return c + w12.zeta(w + 2.0 * w2 / 3.0) / (2.0 * z) - w12.zeta(w + w2 / 3.0) / z +
           w12.zeta(w) / z - w12.zeta(w - w2 / 3.0) / (2.0 * z);
}

std::array<double, 4> constants_residuals(const Uniformization& u) {
    const double z = u.z();
    Constants c = constants(u);
    return {std::abs(c.alpha - 1.0 / (2.0 * z)), std::abs(c.beta + 1.0),
            std::abs(c.gamma + 1.0 / c.W), std::abs(c.delta - 1.0)};
}

}  // namespace qwalk::kreweras

namespace qwalk::srw {

DecompositionReport phi_decomposition(const Continuation& cont, const SeriesEvaluator& se,
                                      const SeriesEvaluator::Constants& consts,
                                      const SeriesConfig& cfg, int samples, std::uint64_t seed) {
    const Uniformization& u = cont.unif();
    const Periods& P = u.periods();
    const double z = u.z();
    const double w2 = P.w2;
    const Weier& W = u.weier();  // k = 1: phi lives on the base lattice

    auto G = [&](cplx w) {
        cplx ryv = se.sum_y(w, cfg).value + consts.cy;
        return ryv - W.phi(w) * (cont.fy(w) + cont.fy(w + w2 / 2.0));
    };
    auto R = [&](cplx w) {
        cplx acc = 0.0;
        const double q1 = w2 / 8.0, q3 = 3.0 * w2 / 8.0, q5 = 5.0 * w2 / 8.0, q7 = 7.0 * w2 / 8.0;
        const double f = 1.0 / (4.0 * z * z);
        acc += -(1.0 + W.phi(cplx(q1, 0)).real()) * f * W.wp(w - q1) -
               W.phi_prime(cplx(q1, 0)).real() * f * W.zeta(w - q1);
        acc += W.phi(cplx(q3, 0)).real() * f * W.wp(w - q3) +
               W.phi_prime(cplx(q3, 0)).real() * f * W.zeta(w - q3);
        acc += -W.phi(cplx(q5, 0)).real() * f * W.wp(w - q5) -
               W.phi_prime(cplx(q5, 0)).real() * f * W.zeta(w - q5);
        acc += W.phi(cplx(q7, 0)).real() * f * W.wp(w - q7) +
               W.phi_prime(cplx(q7, 0)).real() * f * W.zeta(w - q7);
        return acc;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U01(0.1, 0.9);
    std::vector<cplx> diffs;
    double per = 0.0;
    while (static_cast<int>(diffs.size()) < samples) {
        cplx w = U01(rng) * w2 + U01(rng) * P.w1;
        bool near = false;
        for (int j = 1; j <= 8 && !near; j += 2)
            for (int m = -1; m <= 2 && !near; ++m)
                if (std::abs(w - cplx(j * w2 / 8.0 + m * w2, 0.0) -
                             cplx(0, std::round(w.imag() / P.w1.imag()) * P.w1.imag())) <
                    0.06 * w2)
                    near = true;
        if (near) continue;
        try {
            cplx d = G(w) - R(w);
            diffs.push_back(d);
            if (diffs.size() <= 4) per = std::max(per, std::abs(G(w + w2) - G(w)));
        } catch (const std::exception&) {
            continue;
        }
    }
    cplx mean = 0.0;
    for (const cplx& d : diffs) mean += d;
    mean /= static_cast<double>(diffs.size());
    double var = 0.0;
    for (const cplx& d : diffs) var += std::norm(d - mean);
    DecompositionReport rep;
    rep.spread = std::sqrt(var / diffs.size());
    rep.periodicity = per;
    rep.constant = mean;
    return rep;
}

}  // namespace qwalk::srw
