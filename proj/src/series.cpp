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

#include "qwalk/series.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

cplx pp_eval(const PrincipalPart& pp, cplx w, bool deriv) {
    return deriv ? pp.eval_deriv(w) : pp.eval(w);
}

}  // namespace

SeriesEvaluator::SeriesEvaluator(const Continuation& cont, const RatioKL& kl)
    : u_(cont.unif()), kl_(kl) {
    const Periods& P = u_.periods();
    if (kl.l <= kl.k || kl.k <= 0) throw std::invalid_argument("SeriesEvaluator: need l > k > 0");
    if (std::abs(P.w3 / P.w2 - static_cast<double>(kl.k) / kl.l) > 1e-7)
        throw std::invalid_argument("SeriesEvaluator: k/l does not match w3/w2");
    guard_ = 1e-6 * P.w2;
    cy_ = (P.w1 + P.w2 + P.w3) / 2.0;
    cx_ = (P.w1 + P.w2) / 2.0;

    // fy poles translated into the cell Re/w2 in [-1/2, 1/2).
    for (PrincipalPart pp : cont.fy_poles()) {
        double b = pp.pole.real() / P.w2;
        b -= std::floor(b + 0.5);
        pp.pole = cplx(b * P.w2, pp.pole.imag());
        poles_y_.push_back(pp);
    }
    // fx poles translated into the cell Re in [w2/2 + w3/2, 3 w2/2 + w3/2).
    const double lo = P.w2 / 2.0 + P.w3 / 2.0;
    for (PrincipalPart pp : cont.fx_poles()) {
        double re = pp.pole.real();
        re -= std::floor((re - lo) / P.w2) * P.w2;
        pp.pole = cplx(re, pp.pole.imag());
        poles_x_.push_back(pp);
    }

    x0_ = u_.solve_x(0.0);
    y0_ = u_.solve_y(0.0);
    // Representatives inside the Delta_y band [w3/2, w2 + w3/2).
    auto fix_y = [&](cplx w) {
        if (w.real() < P.w3 / 2.0) w += P.w2;
        return w;
    };
    y0_.first = fix_y(y0_.first);
    y0_.second = fix_y(y0_.second);
}

cplx SeriesEvaluator::term_y(int s, long p, long n, cplx w, bool deriv) const {
    const Periods& P = u_.periods();
    const double mult = static_cast<double>(n / kl_.l + 1);
    const cplx shift = static_cast<double>(s) * P.w2 + static_cast<double>(n) * P.w3 +
                       static_cast<double>(p) * P.w1;
    cplx acc = 0.0;
    const cplx refl = 2.0 * cy_ - w;
    for (const auto& pp : poles_y_) {
        if (std::abs(w + shift - pp.pole) < guard_ || std::abs(refl + shift - pp.pole) < guard_)
            throw std::domain_error("series: evaluation point hits a translated pole");
        if (deriv) {
            acc -= mult * (pp.eval_deriv(w + shift) - pp.eval_deriv(refl + shift));
        } else {
            acc -= mult * (pp.eval(w + shift) + pp.eval(refl + shift) - 2.0 * pp.eval(cy_ + shift));
        }
    }
    return acc;
}

cplx SeriesEvaluator::term_x(int s, long p, long n, cplx w, bool deriv) const {
    const Periods& P = u_.periods();
    const double mult = static_cast<double>(n / kl_.l + 1);
    const cplx shift = static_cast<double>(s) * P.w2 + static_cast<double>(n) * P.w3 +
                       static_cast<double>(p) * P.w1;
    cplx acc = 0.0;
    const cplx refl = 2.0 * cx_ - w;
    for (const auto& pp : poles_x_) {
        if (std::abs(w - shift - pp.pole) < guard_ || std::abs(refl - shift - pp.pole) < guard_)
            throw std::domain_error("series: evaluation point hits a translated pole");
        if (deriv) {
            acc -= mult * (pp.eval_deriv(w - shift) - pp.eval_deriv(refl - shift));
        } else {
            acc -= mult * (pp.eval(w - shift) + pp.eval(refl - shift) - 2.0 * pp.eval(cx_ - shift));
        }
    }
    return acc;
}

cplx SeriesEvaluator::row_sum(bool yside, long n, long pmax, cplx w, bool deriv) const {
    // Fixed ascending p order keeps the reduction tree deterministic.
    cplx acc = 0.0;
    for (long p = -pmax; p <= pmax; ++p)
        for (int s = 0; s < kl_.k; ++s)
            acc += yside ? term_y(s, p, n, w, deriv) : term_x(s, p, n, w, deriv);
    return acc;
}

cplx SeriesEvaluator::sum_generic(bool yside, cplx w, const SeriesConfig& cfg, bool deriv,
                                  double* tail, long* terms) const {
    for (int block = cfg.block; block <= cfg.max_block; block *= 2) {
        const long n1 = block, n2 = 2L * block, n4 = 4L * block;
        cplx s1 = 0.0, s2 = 0.0, s4 = 0.0;
        long used = 0;
        // Exceptions (pole-guard hits) may not unwind out of a parallel
        // region; record and rethrow after the loop.
        bool guard_hit = false;

        if (cfg.order == SeriesConfig::Order::rectangular) {
            // Boxes (n,p) <= (N,N) for N = block, 2*block, 4*block.
            std::vector<cplx> rows(static_cast<size_t>(n4) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (cfg.parallel)
#endif
            for (long n = 0; n <= n4; ++n) {
                try {
                    rows[static_cast<size_t>(n)] = row_sum(yside, n, n4, w, deriv);
                } catch (const std::domain_error&) {
                    guard_hit = true;
                }
            }
            if (guard_hit) throw std::domain_error("series: evaluation point hits a translated pole");
            // Deterministic reduction plus box corrections row by row.
            for (long n = 0; n <= n4; ++n) {
                s4 += rows[static_cast<size_t>(n)];
                used += (2 * n4 + 1) * kl_.k;
            }
            // Smaller boxes need their own p-range; recompute the two inner
            // truncations directly (cheap relative to the big box).
            std::vector<cplx> rows1(static_cast<size_t>(n1) + 1), rows2(static_cast<size_t>(n2) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (cfg.parallel)
#endif
            for (long n = 0; n <= n2; ++n) {
                try {
                    if (n <= n1) rows1[static_cast<size_t>(n)] = row_sum(yside, n, n1, w, deriv);
                    rows2[static_cast<size_t>(n)] = row_sum(yside, n, n2, w, deriv);
                } catch (const std::domain_error&) {
                    guard_hit = true;
                }
            }
            if (guard_hit) throw std::domain_error("series: evaluation point hits a translated pole");
            for (long n = 0; n <= n1; ++n) s1 += rows1[static_cast<size_t>(n)];
            for (long n = 0; n <= n2; ++n) s2 += rows2[static_cast<size_t>(n)];
        } else {
            // Diagonal shells n + |p| = m.
            auto shell_sum = [&](long mmax) {
                std::vector<cplx> shells(static_cast<size_t>(mmax) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (cfg.parallel)
#endif
                for (long m = 0; m <= mmax; ++m) {
                    try {
                        cplx acc = 0.0;
                        for (long n = 0; n <= m; ++n) {
                            long ap = m - n;
                            for (int s = 0; s < kl_.k; ++s) {
                                acc += yside ? term_y(s, ap, n, w, deriv)
                                             : term_x(s, ap, n, w, deriv);
                                if (ap != 0)
                                    acc += yside ? term_y(s, -ap, n, w, deriv)
                                                 : term_x(s, -ap, n, w, deriv);
                            }
                        }
                        shells[static_cast<size_t>(m)] = acc;
                    } catch (const std::domain_error&) {
                        guard_hit = true;
                    }
                }
                if (guard_hit) throw std::domain_error("series: evaluation point hits a translated pole");
                cplx acc = 0.0;
                for (long m = 0; m <= mmax; ++m) acc += shells[static_cast<size_t>(m)];
                return acc;
            };
            s1 = shell_sum(n1);
            s2 = shell_sum(n2);
            s4 = shell_sum(n4);
            used = (n4 + 1) * (n4 + 2) * kl_.k;
        }

        // Two Richardson stages remove the 1/N and 1/N^2 tail terms.
        cplx r01 = 2.0 * s2 - s1;
        cplx r12 = 2.0 * s4 - s2;
        cplx val = (4.0 * r12 - r01) / 3.0;
        double est = std::abs(val - r12);
        if (terms) *terms = used;
        if (tail) *tail = est;
        if (est < cfg.target_tol || 2 * block > cfg.max_block) return val;
    }
    throw std::runtime_error("series: truncation cap reached without convergence");
}

SeriesResult SeriesEvaluator::sum_y(cplx w, const SeriesConfig& cfg, bool deriv) const {
    SeriesResult r;
    r.value = sum_generic(true, w, cfg, deriv, &r.est_tail, &r.terms_used);
    return r;
}

SeriesResult SeriesEvaluator::sum_x(cplx w, const SeriesConfig& cfg, bool deriv) const {
    SeriesResult r;
    r.value = sum_generic(false, w, cfg, deriv, &r.est_tail, &r.terms_used);
    return r;
}

namespace {

// Mean over a circle gives the value at the center; the first Fourier mode
// over r gives the derivative (Cauchy integral on the sampled values).
cplx circle_eval(const std::function<cplx(cplx)>& fn, cplx w, double r, bool deriv) {
    const int npts = 16;
    cplx acc = 0.0;
    for (int j = 0; j < npts; ++j) {
        double th = kTwoPi * (j + 0.31) / npts;
        cplx e(std::cos(th), std::sin(th));
        cplx v = fn(w + r * e);
        acc += deriv ? v * cplx(std::cos(th), -std::sin(th)) : v;
    }
    return deriv ? acc / (static_cast<double>(npts) * r) : acc / static_cast<double>(npts);
}

}  // namespace

cplx SeriesEvaluator::sum_y_mean(cplx w, const SeriesConfig& cfg, bool deriv, double radius) const {
    double r = radius > 0.0 ? radius : 0.08 * u_.periods().w2;
    return circle_eval([&](cplx q) { return sum_y(q, cfg).value; }, w, r, deriv);
}

cplx SeriesEvaluator::sum_x_mean(cplx w, const SeriesConfig& cfg, bool deriv, double radius) const {
    double r = radius > 0.0 ? radius : 0.08 * u_.periods().w2;
    return circle_eval([&](cplx q) { return sum_x(q, cfg).value; }, w, r, deriv);
}

SeriesEvaluator::Constants SeriesEvaluator::recover(const SeriesConfig& cfg) const {
    const Periods& P = u_.periods();
    // rx at a zero of x equals Q(0,0)K(0,0); same for ry at a zero of y.
    cplx A = sum_x_mean(x0_.first, cfg);
    cplx A2 = sum_x_mean(x0_.second, cfg);
    cplx B = sum_y_mean(y0_.first, cfg);

    // Generic-point closure of rx + ry - q00k00 - xy = 0.
    cplx K = 0.0;
    double spread = 0.0;
    std::array<cplx, 3> samples{cplx(0.231, 0.377), cplx(0.433, 0.191), cplx(0.687, 0.293)};
    std::array<cplx, 3> kvals{};
    int got = 0;
    for (const cplx& t : samples) {
        cplx w = t.real() * P.w2 + t.imag() * P.w1;
        try {
            cplx c = sum_x(w, cfg).value + sum_y(w, cfg).value - u_.x(w) * u_.y(w);
            kvals[static_cast<size_t>(got)] = A + B - c;
            ++got;
        } catch (const std::domain_error&) {
            continue;
        }
    }
    if (!got) throw std::runtime_error("recover: all sample points collided with poles");
    for (int i = 0; i < got; ++i) K += kvals[static_cast<size_t>(i)];
    K /= static_cast<double>(got);
    for (int i = 0; i < got; ++i) spread = std::max(spread, std::abs(kvals[static_cast<size_t>(i)] - K));

    Constants c;
    c.q00_k00 = K;
    c.cx = K - A;
    c.cy = K - B;
    c.consistency = std::max(spread, std::abs(A - A2));
    return c;
}

cplx SeriesEvaluator::ry(cplx w, const Constants& c, const SeriesConfig& cfg) const {
    return sum_y(w, cfg).value + c.cy;
}

cplx SeriesEvaluator::rx(cplx w, const Constants& c, const SeriesConfig& cfg) const {
    return sum_x(w, cfg).value + c.cx;
}

cplx SeriesEvaluator::q00(const Constants& c, const SeriesConfig& cfg) const {
    const StepSet& s = u_.curve().s;
    const double z = u_.z();
    double k00 = z * s.delta(-1, -1);
    if (std::abs(k00) > 1e-12 * z) return c.q00_k00 / k00;
    // K(0,0) = 0: l'Hopital along the curve at the zero of y.
    if (s.delta(-1, 0) == 0.0)
        throw std::runtime_error("q00: K(0,0)=0 with no west step; derivative route unavailable");
    cplx w0 = y0_.first;
    // d/dw K(0, y(w)) = z * delta(-1,0) * y'(w) at y = 0.
    cplx num = sum_y_mean(w0, cfg, /*deriv=*/true, 0.07 * u_.periods().w2);
    cplx den = z * s.delta(-1, 0) * u_.y_prime(w0);
    return num / den;
}

cplx SeriesEvaluator::branch_value(cplx x0, int branch, const Constants& c,
                                   const SeriesConfig& cfg) const {
    const Periods& P = u_.periods();
    if (branch < 1) throw std::invalid_argument("branch_value: branch >= 1");
    cplx kx0 = u_.curve().k.c.eval(x0);
    if (std::abs(kx0) < 1e-12) throw std::domain_error("branch_value: K(x0, 0) = 0");

    auto w0 = u_.solve_x(x0);
    const double lo = branch * P.w2 / 2.0, hi = (branch + 1) * P.w2 / 2.0;
    cplx w;
    bool found = false;
    for (cplx cand : {w0.first, w0.second}) {
        for (int m = -2; m <= branch / 2 + 2 && !found; ++m) {
            cplx t = cand + static_cast<double>(m) * P.w2;
            if (t.real() >= lo && t.real() < hi) {
                w = t;
                found = true;
            }
        }
    }
    if (!found) throw std::runtime_error("branch_value: no representative in the requested half-cell");
    return (sum_x(w, cfg).value + c.cx) / kx0;
}

}  // namespace qwalk
