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

#ifndef QWALK_WFUN_HPP
#define QWALK_WFUN_HPP

#include <complex>
#include <optional>

namespace qwalk {

using cplx = std::complex<double>;

// Rectangular period lattice: w1 purely imaginary (Im > 0), w2 real positive.
struct Lattice {
    cplx w1;
    double w2 = 0.0;
};

struct Invariants {
    double g2 = 0.0;
    double g3 = 0.0;
};

// Invariants from the three finite values e_i = g(x_i) taken by p at the
// half periods: g2 = -4(e1 e2 + e1 e3 + e2 e3), g3 = 4 e1 e2 e3.
Invariants invariants_from_values(double e1, double e2, double e3);

// Numerical evaluation of the Weierstrass functions p, p', zeta on a
// rectangular lattice.  The lattice sum is taken row by row: within a row the
// sum over one period direction is evaluated in closed form (csc^2 / cot),
// and the remaining row-by-row sum converges geometrically.  Summation runs
// along the shorter period so the decay per row is at least exp(-2*pi).
class Weier {
public:
    explicit Weier(const Lattice& L);

    const Lattice& lattice() const { return lat_; }
    const Invariants& invariants() const { return inv_; }
    bool aspect_warning() const { return aspect_warning_; }

    // e1 = p(w2/2), e2 = p((w1+w2)/2), e3 = p(w1/2).
    double e1() const { return e1_; }
    double e2() const { return e2_; }
    double e3() const { return e3_; }

    // Quasi-period constants zeta(w1/2), zeta(w2/2).
    cplx eta1() const { return eta_w2_half_; }  // zeta(w2/2)
    cplx eta2() const { return eta_w1_half_; }  // zeta(w1/2)

    cplx wp(cplx w) const;
    cplx wp_prime(cplx w) const;
    cplx wp_second(cplx w) const;  // 6 p^2 - g2/2
    cplx zeta(cplx w) const;

    // p(w + wt) and zeta(w + wt) through the addition theorems (requires
    // p(w) != p(wt)); agree with direct evaluation to ~1e-10.
    cplx wp_add(cplx w, cplx wt) const;
    cplx zeta_add(cplx w, cplx wt) const;

    // p with periods (w1, w2/p) assembled from index-p shifted copies.
    cplx landen_sum(int p, cplx w) const;

    // |zeta(w2/2) w1 - zeta(w1/2) w2 - i pi|
    double legendre_residual() const;

    // phi(w) = (w1 / 2 pi i) zeta(w) - (w / i pi) zeta(w1/2):
    // w1-periodic, phi(w + w2) = phi(w) + 1, simple pole at lattice points.
    cplx phi(cplx w) const;
    cplx phi_prime(cplx w) const;

    // Solve p(w) = target in the fundamental cell.  Returns a representative;
    // the second solution is -w mod lattice.  Empty on failure.
    std::optional<cplx> wp_invert(cplx target) const;

    // Reduce w modulo the lattice to the cell centered at (w1+w2)/2, i.e.
    // coordinates in [-1/2, 1/2) x [-1/2, 1/2) relative to the periods.
    cplx reduce(cplx w) const;

    // Distance from w to the nearest lattice point.
    double dist_to_lattice(cplx w) const;

private:
    // Row-sum evaluation of (wp, wp', zeta) relative to the summation frame.
    void eval_core(cplx w, cplx* p, cplx* pp, cplx* zt) const;

    Lattice lat_;
    // Summation frame: closed-form direction alpha, row direction beta.
    cplx alpha_, beta_;
    bool aspect_warning_ = false;
    double e1_ = 0, e2_ = 0, e3_ = 0;
    Invariants inv_;
    cplx eta_w1_half_{0.0, 0.0};
    cplx eta_w2_half_{0.0, 0.0};
};

}  // namespace qwalk

#endif  // QWALK_WFUN_HPP
