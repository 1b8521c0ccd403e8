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

#include <random>

#include "doctest.h"
#include "qwalk/unif.hpp"

using namespace qwalk;

namespace {

Lattice kreweras_lattice(double z) {
    CurveData c = discriminants(StepSet::parse("NE,W,S"), z);
    order_branch_points(&c);
    Periods p = compute_periods(c);
    return Lattice{p.w1, p.w2};
}

std::vector<cplx> sample_points(const Lattice& L, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.06, 0.94);
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(U(rng) * L.w2 + U(rng) * L.w1);
    return out;
}

}  // namespace

TEST_CASE("differential equation across z lattices") {
    for (double z : {0.05, 0.1, 0.2}) {
        Weier W(kreweras_lattice(z));
        const auto [g2, g3] = W.invariants();
        for (cplx w : sample_points(W.lattice(), 34, 17)) {
            cplx p = W.wp(w), pp = W.wp_prime(w);
            double scale = 1.0 + std::abs(p * p * p);
            CHECK(std::abs(pp * pp - (4.0 * p * p * p - g2 * p - g3)) < 1e-9 * scale);
        }
    }
}

TEST_CASE("parity and periodicity") {
    Weier W(kreweras_lattice(0.1));
    for (cplx w : sample_points(W.lattice(), 12, 5)) {
        CHECK(std::abs(W.wp(-w) - W.wp(w)) < 1e-12 * (1.0 + std::abs(W.wp(w))));
        CHECK(std::abs(W.wp_prime(-w) + W.wp_prime(w)) < 1e-12 * (1.0 + std::abs(W.wp_prime(w))));
        CHECK(std::abs(W.wp(w + W.lattice().w1) - W.wp(w)) < 1e-10 * (1.0 + std::abs(W.wp(w))));
        CHECK(std::abs(W.wp(w + W.lattice().w2) - W.wp(w)) < 1e-10 * (1.0 + std::abs(W.wp(w))));
    }
    CHECK(std::isinf(W.wp(cplx(0.0, 0.0)).real()));
}

TEST_CASE("kreweras half-period third: wp(w2/3) = 1/3") {
    Weier W(kreweras_lattice(0.1));
    CHECK(W.wp(cplx(W.lattice().w2 / 3.0, 0.0)).real() == doctest::Approx(1.0 / 3).epsilon(1e-11));
}

TEST_CASE("invariants from branch-point values") {
    // Kreweras closed forms.
    for (double z : {0.05, 0.1, 0.2}) {
        Weier W(kreweras_lattice(z));
        CHECK(W.invariants().g2 == doctest::Approx(4.0 / 3 - 32 * z * z * z).epsilon(1e-10));
        CHECK(W.invariants().g3 ==
              doctest::Approx(-8.0 / 27 + 32 * z * z * z / 3 - 64 * std::pow(z, 6)).epsilon(1e-10));
    }
    // Direct formula from half-period values; equal inputs e,e,e.
    double e = 0.37;
    Invariants eq = invariants_from_values(e, e, e);
    CHECK(eq.g2 == doctest::Approx(-12 * e * e));
    CHECK(eq.g3 == doctest::Approx(4 * std::pow(e, 3)));
    Weier W(kreweras_lattice(0.1));
    Invariants fromg = invariants_from_values(W.e1(), W.e2(), W.e3());
    CHECK(fromg.g2 == doctest::Approx(W.invariants().g2));
    CHECK(fromg.g3 == doctest::Approx(W.invariants().g3));
}

TEST_CASE("zeta: derivative, residue, quasi-periodicity") {
    Weier W(kreweras_lattice(0.1));
    for (cplx w : sample_points(W.lattice(), 8, 23)) {
        double h = 1e-5;
        cplx fd = (W.zeta(w + h) - W.zeta(w - h)) / (2.0 * h);
        CHECK(std::abs(fd + W.wp(w)) < 1e-6);
    }
    // Contour residue of zeta at 0 equals 1.
    double r = 0.01 * W.lattice().w2;
    cplx acc = 0.0;
    const int n = 64;
    for (int k = 0; k < n; ++k) {
        double th = 2 * M_PI * (k + 0.5) / n;
        cplx pt = r * cplx(std::cos(th), std::sin(th));
        acc += W.zeta(pt) * pt;
    }
    acc /= static_cast<double>(n);
    CHECK(std::abs(acc - 1.0) < 1e-8);
    // zeta(w + period) - zeta(w) = 2 zeta(period/2)
    cplx w0 = 0.21 * W.lattice().w2 + 0.37 * W.lattice().w1;
    CHECK(std::abs(W.zeta(w0 + W.lattice().w2) - W.zeta(w0) - 2.0 * W.eta1()) < 1e-11);
    CHECK(std::abs(W.zeta(w0 + W.lattice().w1) - W.zeta(w0) - 2.0 * W.eta2()) < 1e-11);
}

TEST_CASE("addition theorems") {
    Weier W(kreweras_lattice(0.1));
    auto pts = sample_points(W.lattice(), 24, 29);
    for (size_t i = 0; i + 1 < pts.size(); i += 2) {
        cplx a = pts[i], b = pts[i + 1];
        if (std::abs(W.wp(a) - W.wp(b)) < 1e-3) continue;
        CHECK(std::abs(W.zeta_add(a, b) - W.zeta(a + b)) < 1e-10);
        CHECK(std::abs(W.wp_add(a, b) - W.wp(a + b)) < 1e-10);
    }
    // Near-parity limit b ~ -a: the formula holds relative to the blowup.
    cplx a = 0.31 * W.lattice().w2 + 0.22 * W.lattice().w1;
    cplx b = -a + cplx(1e-4, 0.0);
    cplx slope = (W.wp_prime(a) - W.wp_prime(b)) / (W.wp(a) - W.wp(b));
    CHECK(std::abs(W.wp(a + b) + W.wp(a) + W.wp(b) - 0.25 * slope * slope) <
          1e-9 * (1.0 + std::abs(W.wp(a + b))));
}

TEST_CASE("index-p period division") {
    Lattice L = kreweras_lattice(0.1);
    Weier W(L);
    Weier W2(Lattice{L.w1, L.w2 / 2});
    Weier W3(Lattice{L.w1, L.w2 / 3});
    for (cplx w : sample_points(Lattice{L.w1, L.w2 / 3}, 8, 31)) {
        CHECK(std::abs(W.landen_sum(1, w) - W.wp(w)) < 1e-12 * (1 + std::abs(W.wp(w))));
        CHECK(std::abs(W.landen_sum(2, w) - W2.wp(w)) < 1e-8 * (1 + std::abs(W2.wp(w))));
        CHECK(std::abs(W.landen_sum(3, w) - W3.wp(w)) < 1e-8 * (1 + std::abs(W3.wp(w))));
    }
    // Poles exactly on the refined lattice.
    CHECK(std::abs(W.landen_sum(2, cplx(L.w2 / 2 + 1e-7, 0.0))) > 1e10);
}

TEST_CASE("legendre identity, also scaled and doubled") {
    Lattice L = kreweras_lattice(0.1);
    CHECK(Weier(L).legendre_residual() < 1e-10);
    CHECK(Weier(Lattice{2.7 * L.w1, 2.7 * L.w2}).legendre_residual() < 1e-10);
    CHECK(Weier(Lattice{L.w1, 2.0 * L.w2}).legendre_residual() < 1e-10);
}

TEST_CASE("quasi-periodic phi") {
    Lattice L = kreweras_lattice(0.1);
    Weier W(L);
    for (cplx w : sample_points(L, 8, 41)) {
        CHECK(std::abs(W.phi(w + L.w1) - W.phi(w)) < 1e-11);
        CHECK(std::abs(W.phi(w + L.w2) - W.phi(w) - 1.0) < 1e-11);
        double h = 1e-5;
        CHECK(std::abs((W.phi(w + h) - W.phi(w - h)) / (2 * h) - W.phi_prime(w)) < 1e-6);
    }
    // Simple pole at 0; residue w1 / (2 pi i).  (The only pole in the cell.)
    double r = 0.01 * L.w2;
    cplx acc = 0.0;
    const int n = 64;
    for (int k = 0; k < n; ++k) {
        double th = 2 * M_PI * (k + 0.5) / n;
        cplx pt = r * cplx(std::cos(th), std::sin(th));
        acc += W.phi(pt) * pt;
    }
    acc /= static_cast<double>(n);
    cplx want = L.w1 / cplx(0.0, 2 * M_PI);
    CHECK(std::abs(acc - want) < 1e-9);
}

TEST_CASE("inversion of wp") {
    Lattice L = kreweras_lattice(0.1);
    Weier W(L);
    // Half-period target: parity fixed point.
    auto h = W.wp_invert(W.e1());
    REQUIRE(h.has_value());
    CHECK(std::abs(W.wp(*h) - W.e1()) < 1e-12 * (1 + std::abs(W.e1())));

    // Kreweras: target 1/3 lands on {w2/3, 2w2/3} mod the lattice.
    auto t = W.wp_invert(cplx(1.0 / 3, 0.0));
    REQUIRE(t.has_value());
    double d1 = W.dist_to_lattice(*t - L.w2 / 3.0);
    double d2 = W.dist_to_lattice(*t + L.w2 / 3.0);
    CHECK(std::min(d1, d2) < 1e-7);

    // Round trips at random points.
    for (cplx w : sample_points(L, 10, 47)) {
        auto r = W.wp_invert(W.wp(w));
        REQUIRE(r.has_value());
        CHECK(std::min(W.dist_to_lattice(*r - w), W.dist_to_lattice(*r + w)) < 1e-8);
    }
}

TEST_CASE("aspect ratio guard") {
    CHECK_FALSE(Weier(Lattice{cplx(0, 1.0), 1.7}).aspect_warning());
    CHECK(Weier(Lattice{cplx(0, 1.0), 2500.0}).aspect_warning());
}
