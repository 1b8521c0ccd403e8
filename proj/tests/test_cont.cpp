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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "qwalk/cont.hpp"

using namespace qwalk;

namespace {

// Random cell points staying clear of the increment poles and their w3 orbit.
std::vector<cplx> safe_points(const Continuation& c, int n, std::uint64_t seed) {
    const Periods& p = c.unif().periods();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.07, 0.93);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < n) {
        cplx w = U(rng) * p.w2 + U(rng) * p.w1;
        bool bad = false;
        for (const auto& pp : c.fy_poles())
            for (int t = -6; t <= 6 && !bad; ++t) {
                cplx d = w + static_cast<double>(t) * p.w3 - pp.pole;
                double da = d.imag() / p.w1.imag() - std::round(d.imag() / p.w1.imag());
                double db = d.real() / p.w2 - std::round(d.real() / p.w2);
                if (std::abs(da * p.w1 + db * p.w2) < 0.06 * p.w2) bad = true;
            }
        if (!bad) out.push_back(w);
    }
    return out;
}

}  // namespace

TEST_CASE("kreweras increment poles and residues") {
    double z = 0.1;
    Continuation c(make_uniformization(StepSet::parse("NE,W,S"), z), 40);
    const auto& poles = c.fy_poles();
    REQUIRE(poles.size() == 3);
    double w2 = c.unif().periods().w2;
    for (const auto& pp : poles) {
        CHECK(pp.order == 1);
        double frac = pp.pole.real() / w2;
        if (std::abs(frac) < 1e-6) {
            CHECK(pp.coef[0].real() == doctest::Approx(-1.0 / z).epsilon(1e-9));
        } else {
            CHECK((std::abs(frac - 1.0 / 3) < 1e-9 || std::abs(frac - 2.0 / 3) < 1e-9));
            CHECK(pp.coef[0].real() == doctest::Approx(0.5 / z).epsilon(1e-9));
        }
        CHECK(std::abs(pp.coef[0].imag()) < 1e-9);
    }
}

TEST_CASE("simple-walk double poles") {
    double z = 0.15;
    Continuation c(make_uniformization(StepSet::parse("E,W,N,S"), z), 40);
    const auto& poles = c.fy_poles();
    REQUIRE(poles.size() == 2);
    double w2 = c.unif().periods().w2;
    for (const auto& pp : poles) {
        CHECK(pp.order == 2);
        double frac = pp.pole.real() / w2;
        double want = std::abs(frac - 0.125) < 1e-9 ? 1.0 : -1.0;
        CHECK((std::abs(frac - 0.125) < 1e-9 || std::abs(frac - 0.875) < 1e-9));
        CHECK(pp.coef[1].real() == doctest::Approx(want / (4 * z * z)).epsilon(1e-7));
        CHECK(std::abs(pp.coef[0]) < 1e-7);
    }
}

TEST_CASE("increment forms agree and residues sum to zero") {
    for (const char* spec : {"NE,W,S", "E,W,N,S", "W,SW,S,NE"}) {
        StepSet s = StepSet::parse(spec);
        Continuation c(make_uniformization(s, 0.8 / (4.0 * s.size())), 30);
        cplx rsum = 0.0;
        for (const auto& pp : c.fy_poles()) rsum += pp.coef[0];
        CHECK(std::abs(rsum) < 1e-8);
        for (cplx w : safe_points(c, 100, 43)) {
            CHECK(std::abs(c.fy(w) - c.fy_product(w)) < 1e-9 * (1.0 + std::abs(c.fy(w))));
            CHECK(std::abs(c.fx(w) - c.fx_product(w)) < 1e-9 * (1.0 + std::abs(c.fx(w))));
        }
    }
}

TEST_CASE("continuation identities") {
    double z = 0.1;
    Continuation c(make_uniformization(StepSet::parse("NE,W,S"), z), 40);
    const Periods& p = c.unif().periods();
    for (cplx w : safe_points(c, 10, 47)) {
        CHECK(std::abs(c.ry(w + p.w3) - c.ry(w) - c.fy(w)) < 1e-8);
        CHECK(std::abs(c.rx(w - p.w3) - c.rx(w) - c.fx(w)) < 1e-8);
        CHECK(std::abs(c.ry(w + p.w1) - c.ry(w)) < 1e-9);
        CHECK(std::abs(c.ry(c.unif().eta(w)) - c.ry(w)) < 1e-8);
        CHECK(std::abs(c.rx(c.unif().xi(w)) - c.rx(w)) < 1e-8);
        CHECK(std::abs(c.rx(w) + c.ry(w) - c.q00_k00() - c.unif().x(w) * c.unif().y(w)) < 1e-8);
    }
}

TEST_CASE("kreweras: ry vanishes where y vanishes") {
    double z = 0.1;
    Continuation c(make_uniformization(StepSet::parse("NE,W,S"), z), 40);
    double w2 = c.unif().periods().w2;
    // y(2 w2/3) = 0 and the point lies in Delta_y.
    cplx w0(2.0 * w2 / 3.0, 0.0);
    CHECK(std::abs(c.unif().y(w0)) < 1e-10);
    CHECK(std::abs(c.ry_base(w0)) < 1e-12);
}

TEST_CASE("kreweras ledger against the continued function") {
    double z = 0.1;
    Continuation c(make_uniformization(StepSet::parse("NE,W,S"), z), 40);
    const Periods& p = c.unif().periods();
    double t = p.w1.imag();
    Region reg{-1.5 * p.w2, 0.5 * p.w2, -0.5 * t, 0.5 * t};
    auto led = c.ledger_y({2, 3}, reg);
    REQUIRE(led.size() == 4);

    struct Want {
        double frac, res;
    } wants[] = {{-2.0 / 3, 0.5 / z}, {-1.0 / 3, -1.0 / z}, {0.0, 1.0 / z}, {1.0 / 3, -0.5 / z}};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(led[i].pole.real() / p.w2 == doctest::Approx(wants[i].frac).epsilon(1e-9));
        CHECK(led[i].part.order == 1);
        CHECK(led[i].part.coef[0].real() == doctest::Approx(wants[i].res).epsilon(1e-9));
    }
    // Removable candidates -w2 and -4w2/3 dropped.
    for (const auto& e : led) {
        CHECK(std::abs(e.pole.real() / p.w2 + 1.0) > 1e-3);
        CHECK(std::abs(e.pole.real() / p.w2 + 4.0 / 3) > 1e-3);
    }
    // Contour cross-check of each listed principal part.
    for (const auto& e : led) {
        auto fn = [&](cplx w) { return c.ry(w); };
        cplx g1 = contour_coef(fn, e.pole, 0.04 * p.w2, 1, 32);
        CHECK(std::abs(g1 - e.part.coef[0]) < 1e-6 * (1.0 + std::abs(e.part.coef[0])));
    }
}

TEST_CASE("simple-walk ledger: quarter grid with a four-point gap") {
    double z = 0.15;
    Continuation c(make_uniformization(StepSet::parse("E,W,N,S"), z), 50);
    const Periods& p = c.unif().periods();
    double t = p.w1.imag();
    Region reg{-2.0 * p.w2, 2.0 * p.w2, -0.5 * t, 0.5 * t};

    // ry has double poles on w2/8 + n w2/4 + p w1 except n in {1,2,3,4}.
    auto led_y = c.ledger_y({1, 2}, reg);
    CHECK(!led_y.empty());
    std::vector<int> found;
    for (const auto& e : led_y) {
        CHECK(e.part.order == 2);
        double frac = (e.pole.real() / p.w2 - 0.125) * 4.0;
        long n = std::lround(frac);
        CHECK(std::abs(frac - static_cast<double>(n)) < 1e-7);
        if (std::abs(e.pole.imag()) < 1e-9) found.push_back(static_cast<int>(n));
    }
    for (int n = -8; n <= 7; ++n) {
        bool has = std::find(found.begin(), found.end(), n) != found.end();
        bool expected = !(n >= 1 && n <= 4);
        CHECK(has == expected);
    }

    // Both ledgers reproduce contour coefficients of the continued GFs.
    for (const auto& e : led_y) {
        if (std::abs(e.pole.imag()) > 1e-9) continue;
        auto fn = [&](cplx w) { return c.ry(w); };
        cplx g2 = contour_coef(fn, e.pole, 0.03 * p.w2, 2, 32);
        CHECK(std::abs(g2 - e.part.coef[1]) < 1e-5 * (1.0 + std::abs(e.part.coef[1])));
    }
    auto led_x = c.ledger_x({1, 2}, reg);
    CHECK(!led_x.empty());
    for (const auto& e : led_x) {
        if (std::abs(e.pole.imag()) > 1e-9) continue;
        CHECK(e.part.order == 2);
        auto fn = [&](cplx w) { return c.rx(w); };
        cplx g2 = contour_coef(fn, e.pole, 0.03 * p.w2, 2, 32);
        CHECK(std::abs(g2 - e.part.coef[1]) < 1e-5 * (1.0 + std::abs(e.part.coef[1])));
    }
}

TEST_CASE("orbit sums and algebraicity") {
    Continuation k(make_uniformization(StepSet::parse("NE,W,S"), 0.1), 30);
    CHECK(k.orbit_sum_max({2, 3}) < 1e-7);
    CHECK(k.algebraic({2, 3}));

    Continuation s(make_uniformization(StepSet::parse("E,W,N,S"), 0.15), 30);
    double scale = 0.0;
    for (cplx w : safe_points(s, 10, 59)) scale = std::max(scale, std::abs(s.fy(w)));
    CHECK(s.orbit_sum_max({1, 2}) > 1e-2 * scale);
    CHECK_FALSE(s.algebraic({1, 2}));

    // w2-periodicity of the increment forces the orbit-sum identity.
    const Periods& p = s.unif().periods();
    cplx cy = (p.w1 + p.w2 + p.w3) / 2.0;
    cplx a = s.orbit_sum({1, 2}, cy + p.w3 + 0.013 * p.w1);
    cplx b = s.orbit_sum({1, 2}, cy - 2.0 * p.w3 + 0.013 * p.w1);
    CHECK(std::abs(a - b) < 1e-9 * (1.0 + std::abs(a)));
}
