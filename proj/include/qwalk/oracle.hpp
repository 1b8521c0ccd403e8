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

#ifndef QWALK_ORACLE_HPP
#define QWALK_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "qwalk/bigint.hpp"
#include "qwalk/stepset.hpp"

namespace qwalk {

// Exact counts q(i,j;n) of quarter-plane paths from the origin, filled by
// dynamic programming in big-integer arithmetic.
class CountTable {
public:
    CountTable(const StepSet& s, int depth, bool parallel = true);

    int depth() const { return depth_; }
    const StepSet& step_set() const { return s_; }

    const Big384& q(int i, int j, int n) const { return tab_[index(i, j, n)]; }

    // Sum over i,j of q(i,j;n).
    double layer_sum(int n) const;

private:
    size_t index(int i, int j, int n) const {
        return (static_cast<size_t>(n) * stride_ + static_cast<size_t>(i)) * stride_ +
               static_cast<size_t>(j);
    }
    void fill(bool parallel);

    StepSet s_;
    int depth_;
    size_t stride_;
    std::vector<Big384> tab_;
};

struct TruncatedGF {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;  // valid when !divergent
    bool divergent = false;
    int terms = 0;
};

enum class Axis { x_axis, y_axis, origin };

// Sum_{n<=N} z^n Sum_{i,j} q(i,j;n) x^i y^j with geometric tail bound.
TruncatedGF q_truncated(const CountTable& t, cplx x, cplx y, double z, int N);

// Restriction to j=0 (x_axis), i=0 (y_axis) or i=j=0 (origin).
TruncatedGF boundary_gf(const CountTable& t, Axis axis, cplx var, double z, int N);

// Max over random points on the unit polydisk of |LHS - RHS| of the kernel
// functional equation, both sides truncated consistently at z^N.
double check_functional_equation(const StepSet& s, double z, int N, int samples = 12,
                                 std::uint64_t seed = 777);

}  // namespace qwalk

#endif  // QWALK_ORACLE_HPP
