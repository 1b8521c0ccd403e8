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

#include "qwalk/cont.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

cplx reduce_cell(cplx w, const Periods& p) {
    double a = w.imag() / p.w1.imag();
    double b = w.real() / p.w2;
    a -= std::floor(a);
    b -= std::floor(b);
    if (a > 1.0 - 1e-9) a = 0.0;
    if (b > 1.0 - 1e-9) b = 0.0;
    return a * p.w1 + b * p.w2;
}

double cell_dist(cplx a, cplx b, const Periods& p) {
    cplx d = a - b;
    double da = d.imag() / p.w1.imag();
    double db = d.real() / p.w2;
    da -= std::round(da);
    db -= std::round(db);
    return std::abs(da * p.w1 + db * p.w2);
}

}  // namespace

cplx contour_coef(const std::function<cplx(cplx)>& fn, cplx center, double radius, int k,
                  int npts) {
    // a_{-k} = (1/2 pi i) oint fn(w) (w-center)^{k-1} dw
    cplx acc = 0.0;
    for (int j = 0; j < npts; ++j) {
        double th = kTwoPi * (j + 0.5) / npts;
        cplx e(std::cos(th), std::sin(th));
        cplx pw = std::pow(radius * e, k);
        acc += fn(center + radius * e) * pw;
    }
    return acc / static_cast<double>(npts);
}

Continuation::Continuation(const Uniformization& u, int oracle_depth)
    : u_(u), depth_(oracle_depth), table_(u.curve().s, oracle_depth) {
    fy_poles_ = find_poles(true);
    fx_poles_ = find_poles(false);
}

double Continuation::oracle_tail() const {
    double rho = u_.curve().s.size() * u_.z();
    return std::pow(rho, depth_ + 1) / (1.0 - rho);
}

cplx Continuation::fy(cplx w) const {
    cplx xv = u_.x(w);
    cplx av = u_.curve().k.a.eval(xv);
    return u_.x_prime(w) * xv / (2.0 * av);
}

cplx Continuation::fx(cplx w) const {
    // Mirror of fy; the sign makes it the increment of rx under the -w3
    // shift, matching the product form below (checked against base strips).
    cplx yv = u_.y(w);
    cplx av = u_.curve().k.at.eval(yv);
    return -u_.y_prime(w) * yv / (2.0 * av);
}

cplx Continuation::fy_product(cplx w) const {
    return u_.x(w) * (u_.y(u_.xi(w)) - u_.y(w));
}

cplx Continuation::fx_product(cplx w) const {
    return u_.y(w) * (u_.x(u_.eta(w)) - u_.x(w));
}

std::vector<PrincipalPart> Continuation::find_poles(bool yside) const {
    const Periods& P = u_.periods();
    const double scale = std::min(P.w2, P.w1.imag());

    // Candidate locations: poles of x (resp. y) and points where the kernel's
    // leading coefficient a(x) (resp. at(y)) vanishes on the curve.
    std::vector<cplx> cand;
    auto push = [&](cplx w) {
        w = reduce_cell(w, P);
        for (const cplx& c : cand)
            if (cell_dist(c, w, P) < 1e-8 * P.w2) return;  // pole coincidence: merge
        cand.push_back(w);
    };

    const cplx half_shift = yside ? cplx(0.0, 0.0) : cplx(P.w3 / 2.0, 0.0);
    // x(w) = g_x^{-1}(p(w)) has poles where p(w) equals the g-pole value.
    const CurveData& c = u_.curve();
    bool v4_finite = yside ? std::isfinite(c.xb[3]) : std::isfinite(c.yb[3]);
    if (v4_finite) {
        // p(w +- shift) = d''(v4)/6
        const Poly& d = yside ? c.d : c.dt;
        double pv = d.deriv_at(yside ? c.xb[3] : c.yb[3], 2) / 6.0;
        auto w0 = u_.weier().wp_invert(cplx(pv, 0.0));
        if (!w0) throw std::runtime_error("find_poles: cannot locate pole of the coordinate map");
        push(*w0 + half_shift);
        push(-*w0 + half_shift);
    } else {
        push(half_shift);
    }

    // Zeros of the y^2 (resp. x^2) kernel coefficient along the curve.
    const Poly& lead = yside ? c.k.a : c.k.at;
    Poly lead_norm = lead;
    for (double& v : lead_norm.c) v /= c.z;
    if (lead_norm.degree() >= 1 || lead_norm.c[0] != 0.0) {
        for (const cplx& root : poly_roots(lead_norm)) {
            cplx target = yside ? u_.g_x(root) : u_.g_y(root);
            auto w0 = u_.weier().wp_invert(target);
            if (!w0) throw std::runtime_error("find_poles: cannot invert at a leading-coefficient zero");
            push(*w0 + half_shift);
            push(-*w0 + half_shift);
        }
        if (lead_norm.degree() == 1) {
            // Degree drop: one root of a(x) escaped to x = infinity; the pole
            // of the coordinate map is already a candidate.
        }
    }

    // Contour-extract Laurent coefficients at each candidate.
    double min_sep = 0.5 * scale;
    for (size_t i = 0; i < cand.size(); ++i)
        for (size_t j = i + 1; j < cand.size(); ++j)
            min_sep = std::min(min_sep, cell_dist(cand[i], cand[j], P));
    double radius = std::min(0.05 * min_sep, 0.1 * scale);
    radius = std::max(radius, 1e-4 * scale);

    auto f = [&](cplx w) { return yside ? fy(w) : fx(w); };

    std::vector<PrincipalPart> parts;
    for (const cplx& w0 : cand) {
        double fmax = 0.0;
        for (int j = 0; j < 16; ++j) {
            double th = kTwoPi * (j + 0.5) / 16;
            fmax = std::max(fmax, std::abs(f(w0 + radius * cplx(std::cos(th), std::sin(th)))));
        }
        PrincipalPart pp;
        pp.pole = w0;
        double rk = radius;
        for (int k = 1; k <= 3; ++k) {
            cplx g = contour_coef(f, w0, radius, k);
            if (std::abs(g) > 1e-9 * fmax * rk) {
                pp.coef[static_cast<size_t>(k - 1)] = g;
                pp.order = k;
            } else {
                pp.coef[static_cast<size_t>(k - 1)] = 0.0;
            }
            rk *= radius;
        }
        for (int k = 4; k <= 5; ++k) {
            cplx g = contour_coef(f, w0, radius, k);
            if (std::abs(g) > 1e-6 * fmax * rk)
                throw std::runtime_error("find_poles: pole order above 3 detected");
            rk *= radius;
        }
        if (pp.order > 0) parts.push_back(pp);
    }

    // Residue sum across the cell must vanish for an elliptic function.
    cplx rsum = 0.0;
    double rmag = 0.0;
    for (const auto& pp : parts) {
        rsum += pp.coef[0];
        rmag = std::max(rmag, std::abs(pp.coef[0]));
    }
    if (rmag > 0.0 && std::abs(rsum) > 1e-7 * (1.0 + rmag))
        throw std::runtime_error("find_poles: residues do not sum to zero across the cell");
    return parts;
}

cplx Continuation::ry_base(cplx w) const {
    const double z = u_.z();
    if (u_.in_delta_y(w)) {
        cplx yv = u_.y(w);
        return u_.curve().k.ct.eval(yv) * boundary_gf(table_, Axis::y_axis, yv, z, depth_).value;
    }
    if (u_.in_delta_x(w)) {
        return -rx_base(w) + q00_k00() + u_.x(w) * u_.y(w);
    }
    throw std::domain_error("ry_base: w outside Delta");
}

cplx Continuation::rx_base(cplx w) const {
    const double z = u_.z();
    if (u_.in_delta_x(w)) {
        cplx xv = u_.x(w);
        return u_.curve().k.c.eval(xv) * boundary_gf(table_, Axis::x_axis, xv, z, depth_).value;
    }
    if (u_.in_delta_y(w)) {
        return -ry_base(w) + q00_k00() + u_.x(w) * u_.y(w);
    }
    throw std::domain_error("rx_base: w outside Delta");
}

cplx Continuation::q00_k00() const {
    const double z = u_.z();
    double k00 = z * u_.curve().s.delta(-1, -1);
    return k00 * boundary_gf(table_, Axis::origin, 0.0, z, depth_).value;
}

cplx Continuation::continue_from_delta(cplx w, bool yside) const {
    const Periods& P = u_.periods();
    const auto& poles = yside ? fy_poles_ : fx_poles_;
    const double guard = 1e-6 * P.w2;

    // ry steps by +w3, rx by -w3.
    const double step = yside ? P.w3 : -P.w3;

    // Locate n with w - n*step in Delta.
    int n_found = INT32_MIN;
    double center = yside ? (P.w2 + P.w3) / 2.0 : P.w2 / 2.0;
    int n0 = static_cast<int>(std::lround((w.real() - center) / step));
    for (int d = 0; d <= 4 * (std::abs(n0) + 4) && n_found == INT32_MIN; ++d) {
        for (int sgn : {1, -1}) {
            int n = n0 + sgn * d;
            if (u_.in_delta(w - static_cast<double>(n) * step)) {
                n_found = n;
                break;
            }
            if (d == 0) break;
        }
    }
    if (n_found == INT32_MIN) throw std::runtime_error("continuation: no Delta translate found");

    // Collision check along the telescoping path.
    auto collides = [&](cplx wq) {
        int lim = std::abs(n_found);
        for (int t = 0; t <= lim; ++t) {
            cplx pt = wq - static_cast<double>(t) * step;
            for (const auto& pp : poles)
                if (cell_dist(pt, pp.pole, P) < guard) return true;
        }
        return false;
    };

    auto telescope = [&](cplx wq) {
        // value(wq) = value(wq - n*step) + sum of increments
        cplx base = yside ? ry_base(wq - static_cast<double>(n_found) * step)
                          : rx_base(wq - static_cast<double>(n_found) * step);
        cplx acc = base;
        if (n_found > 0) {
            // value(w) = value(w - n step) + sum_{t=1..n} f(w - t step)
            for (int t = 1; t <= n_found; ++t)
                acc += yside ? fy(wq - static_cast<double>(t) * step)
                             : fx(wq - static_cast<double>(t) * step);
        } else {
            for (int t = 0; t < -n_found; ++t)
                acc -= yside ? fy(wq + static_cast<double>(t) * step)
                             : fx(wq + static_cast<double>(t) * step);
        }
        return acc;
    };

    if (!collides(w)) return telescope(w);

    // Mean over a small circle (value at the center for a regular point).
    double r = 0.02 * P.w2;
    for (int attempt = 0; attempt < 5; ++attempt, r *= 1.7) {
        bool ok = true;
        cplx acc = 0.0;
        const int npts = 16;
        for (int j = 0; j < npts && ok; ++j) {
            double th = kTwoPi * (j + 0.37) / npts;
            cplx pt = w + r * cplx(std::cos(th), std::sin(th));
            if (collides(pt) || !u_.in_delta(pt - static_cast<double>(n_found) * step)) {
                ok = false;
                break;
            }
            acc += telescope(pt);
        }
        if (ok) return acc / static_cast<double>(npts);
    }
    throw std::runtime_error("continuation: persistent pole collision");
}

cplx Continuation::ry(cplx w) const { return continue_from_delta(w, true); }
cplx Continuation::rx(cplx w) const { return continue_from_delta(w, false); }

namespace {

// Looks up the principal part of the increment at point q (nullptr if q is
// not congruent to any increment pole mod the lattice).
const PrincipalPart* pole_at(const std::vector<PrincipalPart>& poles, cplx q, const Periods& P) {
    for (const auto& pp : poles)
        if (cell_dist(q, pp.pole, P) < 1e-7 * P.w2) return &pp;
    return nullptr;
}

}  // namespace

std::vector<LedgerEntry> Continuation::ledger_y(const RatioKL& kl, const Region& region) const {
    const Periods& P = u_.periods();
    const double w3 = P.w3, w2 = P.w2;
    const double line_poles = P.w2 / 2.0;           // Re omega_x1
    const double line_side = (P.w2 + P.w3) / 2.0;   // Re omega_y1

    // Candidate pole positions of ry in the region: increment-pole translates.
    std::vector<cplx> cand;
    auto push = [&](cplx d) {
        if (!region.contains(d)) return;
        for (const cplx& c : cand)
            if (std::abs(c - d) < 1e-8 * w2) return;
        cand.push_back(d);
    };
    double t = P.w1.imag();
    for (const auto& pp : fy_poles_) {
        cplx base = pp.pole;
        long n_lo = static_cast<long>(std::floor((region.re_lo - w2 - base.real()) / w3)) - kl.l;
        long n_hi = static_cast<long>(std::ceil((region.re_hi + w2 - base.real()) / w3)) + kl.l;
        for (long n = n_lo; n <= n_hi; ++n) {
            double re = base.real() + static_cast<double>(n) * w3;
            for (long m = static_cast<long>(std::floor((region.re_lo - re) / w2));
                 re + static_cast<double>(m) * w2 < region.re_hi; ++m) {
                double rr = re + static_cast<double>(m) * w2;
                if (rr < region.re_lo) continue;
                for (long p = static_cast<long>(std::floor((region.im_lo - base.imag()) / t));
                     base.imag() + static_cast<double>(p) * t < region.im_hi; ++p) {
                    double ii = base.imag() + static_cast<double>(p) * t;
                    if (ii < region.im_lo) continue;
                    push(cplx(rr, ii));
                }
            }
        }
    }

    std::vector<LedgerEntry> out;
    for (const cplx& d : cand) {
        PrincipalPart acc;
        acc.pole = d;
        if (d.real() < line_side) {
            // n >= 0 with d + n w3 an increment pole, Re in (line - k w2, line)
            long n_hi = static_cast<long>(std::floor((line_poles - d.real()) / w3)) + 1;
            for (long n = 0; n <= n_hi; ++n) {
                double re = d.real() + static_cast<double>(n) * w3;
                if (re <= line_poles - kl.k * w2 || re >= line_poles) continue;
                const PrincipalPart* pp = pole_at(fy_poles_, d + static_cast<double>(n) * w3, P);
                if (!pp) continue;
                double mult = static_cast<double>(n / kl.l + 1);
                for (int k = 0; k < 3; ++k)
                    acc.coef[static_cast<size_t>(k)] -= mult * pp->coef[static_cast<size_t>(k)];
            }
        } else {
            // n >= 1 with d - n w3 an increment pole, Re in (line, line + k w2)
            long n_hi = static_cast<long>(std::floor((d.real() - line_poles) / w3)) + 1;
            for (long n = 1; n <= n_hi; ++n) {
                double re = d.real() - static_cast<double>(n) * w3;
                if (re <= line_poles || re >= line_poles + kl.k * w2) continue;
                const PrincipalPart* pp = pole_at(fy_poles_, d - static_cast<double>(n) * w3, P);
                if (!pp) continue;
                double mult = static_cast<double>((n - 1) / kl.l + 1);
                for (int k = 0; k < 3; ++k)
                    acc.coef[static_cast<size_t>(k)] += mult * pp->coef[static_cast<size_t>(k)];
            }
        }
        acc.order = 0;
        for (int k = 3; k >= 1; --k)
            if (std::abs(acc.coef[static_cast<size_t>(k - 1)]) > 1e-10 / u_.z()) {
                acc.order = k;
                break;
            }
        if (acc.order > 0) out.push_back({d, acc});
    }
    std::sort(out.begin(), out.end(), [](const LedgerEntry& a, const LedgerEntry& b) {
        return a.pole.real() < b.pole.real();
    });
    return out;
}

std::vector<LedgerEntry> Continuation::ledger_x(const RatioKL& kl, const Region& region) const {
    const Periods& P = u_.periods();
    const double w3 = P.w3, w2 = P.w2;
    const double line_poles = (P.w2 + P.w3) / 2.0;  // Re omega_y1
    const double line_side = P.w2 / 2.0;            // Re omega_x1

    std::vector<cplx> cand;
    auto push = [&](cplx d) {
        if (!region.contains(d)) return;
        for (const cplx& c : cand)
            if (std::abs(c - d) < 1e-8 * w2) return;
        cand.push_back(d);
    };
    double t = P.w1.imag();
    for (const auto& pp : fx_poles_) {
        cplx base = pp.pole;
        long n_lo = static_cast<long>(std::floor((region.re_lo - w2 - base.real()) / w3)) - kl.l;
        long n_hi = static_cast<long>(std::ceil((region.re_hi + w2 - base.real()) / w3)) + kl.l;
        for (long n = n_lo; n <= n_hi; ++n) {
            double re = base.real() + static_cast<double>(n) * w3;
            for (long m = static_cast<long>(std::floor((region.re_lo - re) / w2));
                 re + static_cast<double>(m) * w2 < region.re_hi; ++m) {
                double rr = re + static_cast<double>(m) * w2;
                if (rr < region.re_lo) continue;
                for (long p = static_cast<long>(std::floor((region.im_lo - base.imag()) / t));
                     base.imag() + static_cast<double>(p) * t < region.im_hi; ++p) {
                    double ii = base.imag() + static_cast<double>(p) * t;
                    if (ii < region.im_lo) continue;
                    push(cplx(rr, ii));
                }
            }
        }
    }

    // rx steps leftward: rx(w - w3) = rx(w) + fx(w); the mirror of ledger_y.
    std::vector<LedgerEntry> out;
    for (const cplx& d : cand) {
        PrincipalPart acc;
        acc.pole = d;
        if (d.real() > line_side) {
            long n_hi = static_cast<long>(std::floor((d.real() - line_poles) / w3)) + 1 + kl.l;
            for (long n = 0; n <= n_hi; ++n) {
                double re = d.real() - static_cast<double>(n) * w3;
                if (re <= line_poles || re >= line_poles + kl.k * w2) continue;
                const PrincipalPart* pp = pole_at(fx_poles_, d - static_cast<double>(n) * w3, P);
                if (!pp) continue;
                double mult = static_cast<double>(n / kl.l + 1);
                for (int k = 0; k < 3; ++k)
                    acc.coef[static_cast<size_t>(k)] -= mult * pp->coef[static_cast<size_t>(k)];
            }
        } else {
            long n_hi = static_cast<long>(std::floor((line_poles - d.real()) / w3)) + 1 + kl.l;
            for (long n = 1; n <= n_hi; ++n) {
                double re = d.real() + static_cast<double>(n) * w3;
                if (re <= line_poles - kl.k * w2 || re >= line_poles) continue;
                const PrincipalPart* pp = pole_at(fx_poles_, d + static_cast<double>(n) * w3, P);
                if (!pp) continue;
                double mult = static_cast<double>((n - 1) / kl.l + 1);
                for (int k = 0; k < 3; ++k)
                    acc.coef[static_cast<size_t>(k)] += mult * pp->coef[static_cast<size_t>(k)];
            }
        }
        acc.order = 0;
        for (int k = 3; k >= 1; --k)
            if (std::abs(acc.coef[static_cast<size_t>(k - 1)]) > 1e-10 / u_.z()) {
                acc.order = k;
                break;
            }
        if (acc.order > 0) out.push_back({d, acc});
    }
    std::sort(out.begin(), out.end(), [](const LedgerEntry& a, const LedgerEntry& b) {
        return a.pole.real() < b.pole.real();
    });
    return out;
}

cplx Continuation::orbit_sum(const RatioKL& kl, cplx w) const {
    cplx acc = 0.0;
    for (int t = 0; t < kl.l; ++t) acc += fy(w + static_cast<double>(t) * u_.periods().w3);
    return acc;
}

double Continuation::orbit_sum_max(const RatioKL& kl, int samples, std::uint64_t seed) const {
    const Periods& P = u_.periods();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.1, 0.9);
    double worst = 0.0;
    int used = 0;
    while (used < samples) {
        cplx w = U(rng) * P.w2 + U(rng) * P.w1;
        bool near = false;
        for (int t = 0; t < kl.l && !near; ++t)
            for (const auto& pp : fy_poles_)
                if (cell_dist(w + static_cast<double>(t) * P.w3, pp.pole, P) < 0.05 * P.w2) near = true;
        if (near) continue;
        worst = std::max(worst, std::abs(orbit_sum(kl, w)));
        ++used;
    }
    return worst;
}

bool Continuation::algebraic(const RatioKL& kl, double tol) const {
    if (orbit_sum_max(kl) >= tol) return false;
    // Grouped principal parts must cancel coefficient-wise.
    const Periods& P = u_.periods();
    for (const auto& pp : fy_poles_) {
        std::array<cplx, 3> sum{};
        for (int t = 0; t < kl.l; ++t) {
            const PrincipalPart* q =
                pole_at(fy_poles_, pp.pole + static_cast<double>(t) * P.w3, P);
            if (!q) continue;
            for (int k = 0; k < 3; ++k) sum[static_cast<size_t>(k)] += q->coef[static_cast<size_t>(k)];
        }
        for (int k = 0; k < 3; ++k)
            if (std::abs(sum[static_cast<size_t>(k)]) > tol) return false;
    }
    return true;
}

}  // namespace qwalk
