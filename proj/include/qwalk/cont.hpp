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

#ifndef QWALK_CONT_HPP
#define QWALK_CONT_HPP

#include <functional>
#include <vector>

#include "qwalk/oracle.hpp"
#include "qwalk/unif.hpp"

namespace qwalk {

// Principal part at a pole: sum over k of coef[k-1] / (w - pole)^k.
struct PrincipalPart {
    cplx pole;
    int order = 0;
    std::array<cplx, 3> coef{};  // coefficient of (w-pole)^{-1}, ^{-2}, ^{-3}

    cplx eval(cplx w) const {
        cplx d = w - pole, inv = 1.0 / d, acc = 0.0, t = inv;
        for (int k = 0; k < order; ++k) {
            acc += coef[static_cast<size_t>(k)] * t;
            t *= inv;
        }
        return acc;
    }
    cplx eval_deriv(cplx w) const {
        cplx d = w - pole, inv = 1.0 / d, acc = 0.0, t = inv * inv;
        for (int k = 0; k < order; ++k) {
            acc += -static_cast<double>(k + 1) * coef[static_cast<size_t>(k)] * t;
            t *= inv;
        }
        return acc;
    }
};

struct RatioKL {
    int k = 0;
    int l = 0;  // w3/w2 = k/l, l > k > 0
};

struct LedgerEntry {
    cplx pole;
    PrincipalPart part;  // principal part of the continued GF at this pole
};

struct Region {
    double re_lo, re_hi, im_lo, im_hi;
    bool contains(cplx w) const {
        return w.real() >= re_lo && w.real() < re_hi && w.imag() >= im_lo && w.imag() < im_hi;
    }
};

// Meromorphic continuation of the lifted boundary generating functions
//   ry(w) = K(0, y(w)) Q(0, y(w)),   rx(w) = K(x(w), 0) Q(x(w), 0)
// from the base strips to the whole plane, together with the shift
// increments (fy, fx), their poles, and the induced pole ledger.
class Continuation {
public:
    Continuation(const Uniformization& u, int oracle_depth);

    const Uniformization& unif() const { return u_; }
    const CountTable& table() const { return table_; }
    double oracle_tail() const;

    // Shift increments: ry(w + w3) = ry(w) + fy(w), rx(w - w3) = rx(w) + fx(w).
    cplx fy(cplx w) const;
    cplx fx(cplx w) const;
    // Product forms x(w)[y(xi w) - y(w)] resp. y(w)[x(eta w) - x(w)].
    cplx fy_product(cplx w) const;
    cplx fx_product(cplx w) const;

    // Principal parts of fy (resp. fx) at its poles in the fundamental cell.
    const std::vector<PrincipalPart>& fy_poles() const { return fy_poles_; }
    const std::vector<PrincipalPart>& fx_poles() const { return fx_poles_; }

    // Base values on the strips (oracle truncation); throws outside Delta.
    cplx ry_base(cplx w) const;
    cplx rx_base(cplx w) const;

    // Values anywhere by telescoping through Delta.  Points whose telescoping
    // path collides with a pole of the increment are evaluated as the mean
    // over a small circle (exact for a regular point).
    cplx ry(cplx w) const;
    cplx rx(cplx w) const;

    // Principal parts of ry (resp. rx) at all its poles inside the region,
    // assembled from the increment poles; zero parts dropped.
    std::vector<LedgerEntry> ledger_y(const RatioKL& kl, const Region& region) const;
    std::vector<LedgerEntry> ledger_x(const RatioKL& kl, const Region& region) const;

    // Orbit sum: fy(w) + fy(w + w3) + ... + fy(w + (l-1) w3).
    cplx orbit_sum(const RatioKL& kl, cplx w) const;

    // True iff the orbit sum vanishes identically (sampled) and the grouped
    // principal parts cancel coefficient-wise.
    bool algebraic(const RatioKL& kl, double tol = 1e-7) const;
    double orbit_sum_max(const RatioKL& kl, int samples = 24, std::uint64_t seed = 99) const;

    // Q(0,0) K(0,0) from the base strip (oracle value).
    cplx q00_k00() const;

private:
    std::vector<PrincipalPart> find_poles(bool yside) const;
    cplx continue_from_delta(cplx w, bool yside) const;

    Uniformization u_;
    int depth_;
    CountTable table_;
    std::vector<PrincipalPart> fy_poles_, fx_poles_;
};

// Coefficient of (w-center)^{-k} of fn around center, 64-point contour.
cplx contour_coef(const std::function<cplx(cplx)>& fn, cplx center, double radius, int k,
                  int npts = 64);

}  // namespace qwalk

#endif  // QWALK_CONT_HPP
