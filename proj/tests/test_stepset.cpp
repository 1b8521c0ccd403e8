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
#include "qwalk/stepset.hpp"

using namespace qwalk;

TEST_CASE("parse compass and pair tokens") {
    StepSet s = StepSet::parse("E,W,N,S");
    CHECK(s.size() == 4);
    CHECK(s.has(1, 0));
    CHECK(s.has(-1, 0));
    CHECK(s.has(0, 1));
    CHECK(s.has(0, -1));
    CHECK_FALSE(s.has(1, 1));

    StepSet k = StepSet::parse("NE,W,S");
    CHECK(k.size() == 3);
    CHECK(k.has(1, 1));
    CHECK(k.has(-1, 0));
    CHECK(k.has(0, -1));
    CHECK(k == StepSet::parse("(1,1),(-1,0),(0,-1)"));

    CHECK_THROWS_AS(StepSet::parse("(1,1),(1,1)"), std::invalid_argument);
    CHECK_THROWS_AS(StepSet::parse("NEE"), std::invalid_argument);
    CHECK_THROWS_AS(StepSet::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(StepSet::parse("(2,0)"), std::invalid_argument);
}

TEST_CASE("canonical serialization is row-major") {
    StepSet s = StepSet::parse("S,NE,W");
    CHECK(s.to_string() == "(-1,0),(0,-1),(1,1)");
}

TEST_CASE("kernel evaluation") {
    StepSet simple = StepSet::parse("E,W,N,S");
    CHECK(std::abs(kernel_eval(simple, 1.0, 1.0, 0.25)) < 1e-15);

    StepSet krew = StepSet::parse("NE,W,S");
    CHECK(kernel_eval(krew, 1.0, 1.0, 0.1).real() == doctest::Approx(-0.7).epsilon(1e-12));

    // K(0,0) through the polynomial form equals the limit of the raw form.
    for (const char* spec : {"NE,W,S", "E,W,N,S", "W,SW,S,NE"}) {
        StepSet s = StepSet::parse(spec);
        double z = 0.11;
        cplx poly00 = kernel_eval(s, 0.0, 0.0, z);
        double eps = 1e-5;
        auto raw = [&](double e) { return e * e * z * (s.step_poly(e, e) - 1.0 / z); };
        cplx lim = 2.0 * raw(eps / 2) - raw(eps);  // removes the O(eps) term
        CHECK(std::abs(poly00 - lim) < 1e-8);
        CHECK(std::abs(poly00 - z * s.delta(-1, -1)) < 1e-15);
    }
}

TEST_CASE("kernel regroupings agree as polynomials") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (const char* spec : {"NE,W,S", "E,W,N,S", "E,W,NE,SW", "W,SW,S,NE", "N,E,S,W,NW"}) {
        StepSet s = StepSet::parse(spec);
        KernelCoeffs k = kernel_coeffs(s, 0.17);
        for (int i = 0; i < 20; ++i) {
            cplx x(U(rng), U(rng)), y(U(rng), U(rng));
            cplx ky = (k.a.eval(x) * y + k.b.eval(x)) * y + k.c.eval(x);
            cplx kx = (k.at.eval(y) * x + k.bt.eval(y)) * x + k.ct.eval(y);
            CHECK(std::abs(ky - kx) < 1e-13);
        }
    }
}

TEST_CASE("generators are involutions preserving the step polynomial") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.4, 1.4);
    for (const char* spec : {"NE,W,S", "E,W,N,S", "E,W,NE,SW"}) {
        StepSet s = StepSet::parse(spec);
        auto xi = [&](cplx x, cplx y) {
            cplx num = s.delta(-1, -1) / x + s.delta(0, -1) + s.delta(1, -1) * x;
            cplx den = s.delta(-1, 1) / x + s.delta(0, 1) + s.delta(1, 1) * x;
            return std::pair{x, num / (den * y)};
        };
        auto eta = [&](cplx x, cplx y) {
            cplx num = s.delta(-1, -1) / y + s.delta(-1, 0) + s.delta(-1, 1) * y;
            cplx den = s.delta(1, -1) / y + s.delta(1, 0) + s.delta(1, 1) * y;
            return std::pair{num / (den * x), y};
        };
        for (int i = 0; i < 10; ++i) {
            cplx x(U(rng), U(rng)), y(U(rng), U(rng));
            auto [x1, y1] = xi(x, y);
            auto [x2, y2] = xi(x1, y1);
            CHECK(std::abs(x2 - x) + std::abs(y2 - y) < 1e-10 * (std::abs(x) + std::abs(y)));
            auto [x3, y3] = eta(x, y);
            auto [x4, y4] = eta(x3, y3);
            CHECK(std::abs(x4 - x) + std::abs(y4 - y) < 1e-10 * (std::abs(x) + std::abs(y)));
            CHECK(std::abs(s.step_poly(x1, y1) - s.step_poly(x, y)) < 1e-10);
            CHECK(std::abs(s.step_poly(x3, y3) - s.step_poly(x, y)) < 1e-10);
        }
    }
}

TEST_CASE("group orders of the four famous models") {
    CHECK(group_order(StepSet::parse("E,W,N,S")) == 4);
    CHECK(group_order(StepSet::parse("NE,W,S")) == 6);
    CHECK(group_order(StepSet::parse("E,W,NE,SW")) == 8);
    CHECK(group_order(StepSet::parse("E,W,NW,SE")) == 8);
}

TEST_CASE("group order is seed independent") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull, 1234ull, 777777ull}) {
        CHECK(group_order(StepSet::parse("NE,W,S"), 60, seed) == 6);
        CHECK(group_order(StepSet::parse("E,W,NE,SW"), 60, seed) == 8);
    }
}

TEST_CASE("classification") {
    Classification k = classify(StepSet::parse("NE,W,S"));
    CHECK(k.kind == WalkKind::non_singular);
    CHECK(k.group_order == 6);

    CHECK(classify(StepSet::parse("NE,SE,NW")).kind == WalkKind::singular);
    CHECK(classify(StepSet::parse("N,NE,E")).kind == WalkKind::trivial);
    CHECK(classify(StepSet::parse("E,W,N")).kind == WalkKind::half_plane_reducible);

    Classification ex = classify(StepSet::parse("N,E,S,W,NW"), 40);
    CHECK(ex.kind == WalkKind::non_singular);
    CHECK(ex.exceeds_bound);

    Classification inf = classify(StepSet::parse("W,SW,S,NE"), 40);
    CHECK(inf.kind == WalkKind::non_singular);
    CHECK(inf.exceeds_bound);
}
