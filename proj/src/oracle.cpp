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

#include "qwalk/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qwalk {

CountTable::CountTable(const StepSet& s, int depth, bool parallel)
    : s_(s), depth_(depth), stride_(static_cast<size_t>(depth) + 1) {
    if (depth < 0) throw std::invalid_argument("CountTable: depth >= 0 required");
    if (depth > 128) throw std::invalid_argument("CountTable: depth > 128 exceeds exact range");
    tab_.assign(stride_ * stride_ * stride_, Big384{});
    fill(parallel);
}

void CountTable::fill(bool parallel) {
    tab_[index(0, 0, 0)] = Big384{1};
    const auto steps = s_.steps();
    for (int n = 1; n <= depth_; ++n) {
        const int lim = n;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) if (parallel && depth_ > 24)
#endif
        for (int i = 0; i <= lim; ++i) {
            for (int j = 0; j <= lim; ++j) {
                Big384 acc;
                for (auto [a, b] : steps) {
                    int pi = i - a, pj = j - b;
                    if (pi < 0 || pj < 0 || pi > depth_ || pj > depth_) continue;
                    acc += tab_[index(pi, pj, n - 1)];
                }
                tab_[index(i, j, n)] = acc;
            }
        }
    }
    (void)parallel;
}

double CountTable::layer_sum(int n) const {
    double acc = 0.0;
    for (int i = 0; i <= depth_; ++i)
        for (int j = 0; j <= depth_; ++j) acc += q(i, j, n).to_double();
    return acc;
}

namespace {

double rho_bound(const StepSet& s, cplx x, cplx y, double z) {
    return s.size() * z * std::max(std::abs(x), 1.0) * std::max(std::abs(y), 1.0);
}

void finish_tail(TruncatedGF* r, double rho, int N) {
    if (rho < 1.0) {
        r->tail_bound = std::pow(rho, N + 1) / (1.0 - rho);
    } else {
        r->divergent = true;
        r->tail_bound = std::numeric_limits<double>::infinity();
    }
}

}  // namespace

TruncatedGF q_truncated(const CountTable& t, cplx x, cplx y, double z, int N) {
    if (N > t.depth()) throw std::invalid_argument("q_truncated: N exceeds table depth");
    TruncatedGF r;
    std::vector<cplx> xp(static_cast<size_t>(N) + 1), yp(static_cast<size_t>(N) + 1);
    xp[0] = yp[0] = 1.0;
    for (int i = 1; i <= N; ++i) {
        xp[static_cast<size_t>(i)] = xp[static_cast<size_t>(i - 1)] * x;
        yp[static_cast<size_t>(i)] = yp[static_cast<size_t>(i - 1)] * y;
    }
    double zn = 1.0;
    for (int n = 0; n <= N; ++n) {
        cplx layer = 0.0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const Big384& c = t.q(i, j, n);
                if (!c.is_zero())
                    layer += c.to_double() * xp[static_cast<size_t>(i)] * yp[static_cast<size_t>(j)];
            }
        r.value += zn * layer;
        zn *= z;
    }
    r.terms = N + 1;
    finish_tail(&r, rho_bound(t.step_set(), x, y, z), N);
    return r;
}

TruncatedGF boundary_gf(const CountTable& t, Axis axis, cplx var, double z, int N) {
    if (N > t.depth()) throw std::invalid_argument("boundary_gf: N exceeds table depth");
    TruncatedGF r;
    std::vector<cplx> vp(static_cast<size_t>(N) + 1);
    vp[0] = 1.0;
    for (int i = 1; i <= N; ++i) vp[static_cast<size_t>(i)] = vp[static_cast<size_t>(i - 1)] * var;
    double zn = 1.0;
    for (int n = 0; n <= N; ++n) {
        cplx layer = 0.0;
        switch (axis) {
            case Axis::x_axis:
                for (int i = 0; i <= n; ++i) layer += t.q(i, 0, n).to_double() * vp[static_cast<size_t>(i)];
                break;
            case Axis::y_axis:
                for (int j = 0; j <= n; ++j) layer += t.q(0, j, n).to_double() * vp[static_cast<size_t>(j)];
                break;
            case Axis::origin:
                layer = t.q(0, 0, n).to_double();
                break;
        }
        r.value += zn * layer;
        zn *= z;
    }
    r.terms = N + 1;
    double rho = (axis == Axis::origin) ? t.step_set().size() * z
                                        : rho_bound(t.step_set(), axis == Axis::x_axis ? var : 1.0,
                                                    axis == Axis::y_axis ? var : 1.0, z);
    finish_tail(&r, rho, N);
    return r;
}

double check_functional_equation(const StepSet& s, double z, int N, int samples, std::uint64_t seed) {
    CountTable t(s, N);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);

    double worst = 0.0;
    for (int sm = 0; sm < samples; ++sm) {
        double rx = 0.15 + 0.8 * U(rng), ax = 2 * M_PI * U(rng);
        double ry = 0.15 + 0.8 * U(rng), ay = 2 * M_PI * U(rng);
        cplx x = rx * cplx(std::cos(ax), std::sin(ax));
        cplx y = ry * cplx(std::cos(ay), std::sin(ay));

        // Per-length moments from the table.
        std::vector<cplx> qf(static_cast<size_t>(N) + 1), qx(static_cast<size_t>(N) + 1),
            qy(static_cast<size_t>(N) + 1), q0(static_cast<size_t>(N) + 1);
        std::vector<cplx> xp(static_cast<size_t>(N) + 1), yp(static_cast<size_t>(N) + 1);
        xp[0] = yp[0] = 1.0;
        for (int i = 1; i <= N; ++i) {
            xp[static_cast<size_t>(i)] = xp[static_cast<size_t>(i - 1)] * x;
            yp[static_cast<size_t>(i)] = yp[static_cast<size_t>(i - 1)] * y;
        }
        for (int n = 0; n <= N; ++n) {
            cplx f = 0.0, bx = 0.0, by = 0.0;
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    const Big384& c = t.q(i, j, n);
                    if (c.is_zero()) continue;
                    f += c.to_double() * xp[static_cast<size_t>(i)] * yp[static_cast<size_t>(j)];
                }
            for (int i = 0; i <= n; ++i) bx += t.q(i, 0, n).to_double() * xp[static_cast<size_t>(i)];
            for (int j = 0; j <= n; ++j) by += t.q(0, j, n).to_double() * yp[static_cast<size_t>(j)];
            qf[static_cast<size_t>(n)] = f;
            qx[static_cast<size_t>(n)] = bx;
            qy[static_cast<size_t>(n)] = by;
            q0[static_cast<size_t>(n)] = t.q(0, 0, n).to_double();
        }

        // z-coefficients of both sides of the functional equation.
        cplx sxy = s.step_poly(x, y);
        cplx cpol = 0.0, ctpol = 0.0;  // K(x,0;z) = z*cpol, K(0,y;z) = z*ctpol
        cpol = s.delta(-1, -1) + s.delta(0, -1) * x + s.delta(1, -1) * x * x;
        ctpol = s.delta(-1, -1) + s.delta(-1, 0) * y + s.delta(-1, 1) * y * y;
        double d00 = s.delta(-1, -1);

        cplx diff = 0.0;
        double zn = 1.0;
        for (int n = 0; n <= N; ++n) {
            cplx prevf = n ? qf[static_cast<size_t>(n - 1)] : 0.0;
            cplx prevx = n ? qx[static_cast<size_t>(n - 1)] : 0.0;
            cplx prevy = n ? qy[static_cast<size_t>(n - 1)] : 0.0;
            cplx prev0 = n ? q0[static_cast<size_t>(n - 1)] : 0.0;
            cplx lhs = x * y * (sxy * prevf - qf[static_cast<size_t>(n)]);
            cplx rhs = cpol * prevx + ctpol * prevy - d00 * prev0 - (n == 0 ? x * y : cplx(0.0));
            diff += (lhs - rhs) * zn;
            zn *= z;
        }
        worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

}  // namespace qwalk
