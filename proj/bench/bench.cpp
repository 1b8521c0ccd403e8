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
//
// Timings of the OpenMP kernels against their serial paths, with equality
// checks on the results.

#include <chrono>
#include <cstdio>

#include "qwalk/series.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qwalk;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int depth = argc > 1 ? std::atoi(argv[1]) : 56;
    int block = argc > 2 ? std::atoi(argv[2]) : 256;
#ifdef _OPENMP
    std::printf("openmp max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both paths run serial\n");
#endif

    StepSet s = StepSet::parse("NE,W,S");

    {
        auto t0 = std::chrono::steady_clock::now();
        CountTable ser(s, depth, /*parallel=*/false);
        double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        CountTable par(s, depth, /*parallel=*/true);
        double tp = seconds(t0);
        bool same = true;
        for (int i = 0; i <= depth && same; ++i)
            for (int j = 0; j <= depth && same; ++j) same = ser.q(i, j, depth) == par.q(i, j, depth);
        std::printf("count depth=%d: serial %.3fs, parallel %.3fs, speedup %.2fx, equal=%s\n", depth,
                    ts, tp, ts / tp, same ? "yes" : "NO");
    }

    {
        Continuation cont(make_uniformization(s, 0.1), 20);
        SeriesEvaluator se(cont, {2, 3});
        const Periods& p = cont.unif().periods();
        cplx w = 0.2312 * p.w2 + 0.4117 * p.w1;
        SeriesConfig ser;
        ser.block = block;
        ser.max_block = block;
        ser.parallel = false;
        SeriesConfig par = ser;
        par.parallel = true;

        auto t0 = std::chrono::steady_clock::now();
        SeriesResult rs = se.sum_y(w, ser);
        double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        SeriesResult rp = se.sum_y(w, par);
        double tp = seconds(t0);
        double diff = std::abs(rs.value - rp.value);
        std::printf("series block=%d (%ld terms): serial %.3fs, parallel %.3fs, speedup %.2fx, "
                    "|serial-parallel| = %.3g\n",
                    block, rp.terms_used, ts, tp, ts / tp, diff);
    }
    return 0;
}
