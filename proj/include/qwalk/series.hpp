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

#ifndef QWALK_SERIES_HPP
#define QWALK_SERIES_HPP

#include "qwalk/cont.hpp"

namespace qwalk {

struct SeriesConfig {
    int block = 256;          // base truncation; levels at block, 2x, 4x
    int max_block = 4096;     // hard cap for adaptive doubling
    double target_tol = 1e-6;
    bool parallel = true;
    enum class Order { rectangular, diagonal } order = Order::rectangular;
};

struct SeriesResult {
    cplx value{0.0, 0.0};
    double est_tail = 0.0;
    long terms_used = 0;
};

// Symmetrized principal-part series for the continued boundary GFs:
//   sum_y(w)  = ry(w) - ry(center_y),   sum_x(w) = rx(w) - rx(center_x),
// evaluated as a triple sum of translated principal parts of the shift
// increments, Richardson-extrapolated over three nested truncations.
class SeriesEvaluator {
public:
    SeriesEvaluator(const Continuation& cont, const RatioKL& kl);

    const RatioKL& kl() const { return kl_; }
    const Uniformization& unif() const { return u_; }

    // Single term group at fixed (s, p, n): the three-line combination summed
    // over the translated increment poles.  deriv selects d/dw.
    cplx term_y(int s, long p, long n, cplx w, bool deriv = false) const;
    cplx term_x(int s, long p, long n, cplx w, bool deriv = false) const;

    SeriesResult sum_y(cplx w, const SeriesConfig& cfg, bool deriv = false) const;
    SeriesResult sum_x(cplx w, const SeriesConfig& cfg, bool deriv = false) const;

    // Value and derivative through the mean over a small circle; exact at
    // regular points and usable at removable singularities of the sum.
    cplx sum_y_mean(cplx w, const SeriesConfig& cfg, bool deriv = false, double radius = 0.0) const;
    cplx sum_x_mean(cplx w, const SeriesConfig& cfg, bool deriv = false, double radius = 0.0) const;

    // Additive constants pinned through the zeros of x resp. y in Delta:
    //   ry(w) = sum_y(w) + cy,  rx(w) = sum_x(w) + cx,  q00_k00 = Q(0,0)K(0,0).
    struct Constants {
        cplx cx, cy, q00_k00;
        double consistency = 0.0;  // spread across independent recoveries
    };
    Constants recover(const SeriesConfig& cfg) const;

    cplx ry(cplx w, const Constants& c, const SeriesConfig& cfg) const;
    cplx rx(cplx w, const Constants& c, const SeriesConfig& cfg) const;

    // Q(0,0): direct quotient when K(0,0) != 0, else l'Hopital at the zero
    // of y in Delta_y.
    cplx q00(const Constants& c, const SeriesConfig& cfg) const;

    // Branch of Q(x,0) indexed by the half-cell of the covering.
    cplx branch_value(cplx x0, int branch, const Constants& c, const SeriesConfig& cfg) const;

    // Zeros of x (resp. y) on the curve inside Delta_x (resp. Delta_y).
    std::pair<cplx, cplx> x_zeros() const { return x0_; }
    std::pair<cplx, cplx> y_zeros() const { return y0_; }

private:
    cplx sum_generic(bool yside, cplx w, const SeriesConfig& cfg, bool deriv, double* tail,
                     long* terms) const;
    cplx row_sum(bool yside, long n, long pmax, cplx w, bool deriv) const;

    Uniformization u_;
    RatioKL kl_;
    std::vector<PrincipalPart> poles_y_, poles_x_;  // translated to the series cells
    cplx cy_, cx_;                                  // symmetry centers
    std::pair<cplx, cplx> x0_, y0_;
    double guard_;
};

}  // namespace qwalk

#endif  // QWALK_SERIES_HPP
