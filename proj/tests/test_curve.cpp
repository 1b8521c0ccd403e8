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

#include "doctest.h"
#include "qwalk/curve.hpp"

using namespace qwalk;

TEST_CASE("kreweras discriminant coefficients") {
    double z = 0.1;
    CurveData c = discriminants(StepSet::parse("NE,W,S"), z);
    // d(x) = (z - x)^2 - 4 z^2 x^3
    REQUIRE(c.d.degree() == 3);
    CHECK(c.d.c[0] == doctest::Approx(z * z));
    CHECK(c.d.c[1] == doctest::Approx(-2 * z));
    CHECK(c.d.c[2] == doctest::Approx(1.0));
    CHECK(c.d.c[3] == doctest::Approx(-4 * z * z));
    order_branch_points(&c);
    CHECK(c.xb[3] == kInf);
    // Symmetric model: the two discriminants coincide.
    for (size_t i = 0; i < c.d.c.size(); ++i) CHECK(c.d.c[i] == doctest::Approx(c.dt.c[i]));
}

TEST_CASE("simple-walk discriminant matches its own expansion") {
    double z = 0.2;
    CurveData c = discriminants(StepSet::parse("E,W,N,S"), z);
    // (z x^2 - x + z)^2 - 4 z^2 x^2, expanded independently
    Poly b{{z, -1.0, z}};
    Poly expect = poly_sub(poly_mul(b, b), Poly{{0.0, 0.0, 4 * z * z}});
    REQUIRE(c.d.degree() == expect.degree());
    for (int i = 0; i <= expect.degree(); ++i)
        CHECK(c.d.c[static_cast<size_t>(i)] == doctest::Approx(expect.c[static_cast<size_t>(i)]));
}

TEST_CASE("branch point ordering and sign pattern") {
    for (double z : {0.05, 0.1, 0.15, 0.2, 0.24}) {
        CurveData c = discriminants(StepSet::parse("E,W,N,S"), z);
        order_branch_points(&c);
        CHECK(c.xb[0] > -1.0);
        CHECK(c.xb[1] < 1.0);
        CHECK(c.xb[0] < c.xb[1]);
        CHECK(std::abs(c.xb[2]) >= 1.0);
        if (std::isfinite(c.xb[3])) CHECK(std::abs(c.xb[3]) >= 1.0);
        CHECK(c.d.eval(0.5 * (c.xb[0] + c.xb[1])) < 0.0);
        for (int i = 0; i < 3; ++i) {
            double scale = std::abs(c.d.c[0]) + std::abs(c.xb[static_cast<size_t>(i)]);
            CHECK(std::abs(c.d.eval(c.xb[static_cast<size_t>(i)])) < 1e-10 * scale);
        }
    }
    CHECK_THROWS(discriminants(StepSet::parse("E,W,N,S"), 0.25));
    CHECK_THROWS(discriminants(StepSet::parse("NE,SE,NW"), 0.1));
}

TEST_CASE("kreweras vieta identities") {
    for (double z : {0.05, 0.1, 0.2}) {
        CurveData c = discriminants(StepSet::parse("NE,W,S"), z);
        order_branch_points(&c);
        double s = c.xb[0] + c.xb[1] + c.xb[2];
        double p = c.xb[0] * c.xb[1] * c.xb[2];
        CHECK(s == doctest::Approx(1.0 / (4 * z * z)).epsilon(1e-10));
        CHECK(p == doctest::Approx(0.25).epsilon(1e-10));
    }
}

TEST_CASE("y branches") {
    double z = 0.1;
    CurveData c = discriminants(StepSet::parse("NE,W,S"), z);
    order_branch_points(&c);

    // Double root at a branch point of Y.
    auto [ya, yb] = y_branches(c, c.xb[0]);
    CHECK(std::abs(ya - yb) < 1e-5);

    // Defining property and root-coefficient relation Y0 Y1 = c/a = 1/x.
    for (double xr : {0.3, 0.7, -0.4}) {
        cplx x(xr, 0.2);
        auto [y0, y1] = y_branches(c, x);
        CHECK(std::abs(kernel_eval(c.s, x, y0, z)) < 1e-12);
        CHECK(std::abs(kernel_eval(c.s, x, y1, z)) < 1e-12);
        CHECK(std::abs(y0 * y1 - 1.0 / x) < 1e-10);
        CHECK(std::abs(y0) <= std::abs(y1));
    }
}

TEST_CASE("double root in x at y1") {
    double z = 0.1;
    CurveData c = discriminants(StepSet::parse("NE,W,S"), z);
    order_branch_points(&c);
    double scale = 1.0 + std::abs(c.yb[0]);
    CHECK(std::abs(c.dt.eval(c.yb[0])) < 1e-10 * scale);
    double X1 = x_at_y1(c);
    CHECK(X1 < c.xb[0]);
    // Symmetric model: X(y1) equals the i<->j swap of Y(x1), i.e. the same
    // construction applied to the transposed kernel.
    CHECK(std::isfinite(X1));
}
