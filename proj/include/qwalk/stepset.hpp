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

#ifndef QWALK_STEPSET_HPP
#define QWALK_STEPSET_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/poly.hpp"

namespace qwalk {

// A set of small steps S subset {-1,0,1}^2 \ {(0,0)}.
class StepSet {
public:
    static StepSet parse(const std::string& spec);

    bool has(int i, int j) const { return mask_ & bit(i, j); }
    int size() const;

    // Steps in canonical (row-major over (i,j)) order.
    std::vector<std::pair<int, int>> steps() const;
    std::string to_string() const;

    // Sum over steps of x^i y^j.
    cplx step_poly(cplx x, cplx y) const;

    double delta(int i, int j) const { return has(i, j) ? 1.0 : 0.0; }

    friend bool operator==(const StepSet& a, const StepSet& b) { return a.mask_ == b.mask_; }

private:
    static unsigned bit(int i, int j);
    std::uint8_t mask_ = 0;
};

enum class WalkKind { trivial, half_plane_reducible, singular, non_singular };

struct Classification {
    WalkKind kind = WalkKind::non_singular;
    // Valid when kind == non_singular: even order >= 4, or 0 for exceeds-bound.
    int group_order = 0;
    bool exceeds_bound = false;
};

const char* walk_kind_name(WalkKind k);

// Kernel K(x,y;z) = a(x) y^2 + b(x) y + c(x) = at(y) x^2 + bt(y) x + ct(y).
struct KernelCoeffs {
    Poly a, b, c;     // y-quadratic grouping, polynomials in x
    Poly at, bt, ct;  // x-quadratic grouping, polynomials in y
};

KernelCoeffs kernel_coeffs(const StepSet& s, double z);

// K(x,y;z) evaluated through the polynomial form (finite at x=0, y=0).
cplx kernel_eval(const StepSet& s, cplx x, cplx y, double z);

// Smallest m with (eta o xi)^m = id on random points; group order is 2m.
// Returns 0 when m would exceed bound/2.  Throws on degenerate generators.
int group_order(const StepSet& s, int bound = 60, std::uint64_t seed = 12345);

Classification classify(const StepSet& s, int bound = 60, std::uint64_t seed = 12345);

}  // namespace qwalk

#endif  // QWALK_STEPSET_HPP
