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

#include "qwalk/stepset.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qwalk {

namespace {

struct Compass {
    const char* name;
    int i, j;
};

constexpr Compass kCompass[] = {
    {"N", 0, 1}, {"NE", 1, 1}, {"E", 1, 0}, {"SE", 1, -1},
    {"S", 0, -1}, {"SW", -1, -1}, {"W", -1, 0}, {"NW", -1, 1},
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

unsigned StepSet::bit(int i, int j) {
    // Row-major over (i,j) in {-1,0,1}^2 skipping (0,0).
    static constexpr int idx[3][3] = {{0, 1, 2}, {3, -1, 4}, {5, 6, 7}};
    if (i < -1 || i > 1 || j < -1 || j > 1) return 0;
    int k = idx[i + 1][j + 1];
    return k < 0 ? 0 : (1u << k);
}

StepSet StepSet::parse(const std::string& spec) {
    StepSet s;
    std::stringstream ss(spec);
    std::string tok;
    bool any = false;
    // Split on commas, but keep "(i,j)" pairs together.
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char ch : spec) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    tokens.push_back(cur);

    for (auto& raw : tokens) {
        tok = trim(raw);
        if (tok.empty()) continue;
        int i = 9, j = 9;
        if (tok.front() == '(') {
            int ri, rj;
            if (std::sscanf(tok.c_str(), "(%d,%d)", &ri, &rj) != 2)
                throw std::invalid_argument("bad step token: " + tok);
            i = ri;
            j = rj;
        } else {
            for (const auto& c : kCompass)
                if (tok == c.name) {
                    i = c.i;
                    j = c.j;
                }
            if (i == 9) throw std::invalid_argument("unknown step token: " + tok);
        }
        unsigned b = bit(i, j);
        if (!b) throw std::invalid_argument("step out of range: " + tok);
        if (s.mask_ & b) throw std::invalid_argument("duplicate step: " + tok);
        s.mask_ |= static_cast<std::uint8_t>(b);
        any = true;
    }
    if (!any) throw std::invalid_argument("empty step set");
    return s;
}

int StepSet::size() const { return std::popcount(static_cast<unsigned>(mask_)); }

std::vector<std::pair<int, int>> StepSet::steps() const {
    std::vector<std::pair<int, int>> out;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            if ((i || j) && has(i, j)) out.emplace_back(i, j);
    return out;
}

std::string StepSet::to_string() const {
    std::string out;
    for (auto [i, j] : steps()) {
        if (!out.empty()) out += ",";
        out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return out;
}

cplx StepSet::step_poly(cplx x, cplx y) const {
    cplx acc = 0.0;
    for (auto [i, j] : steps()) {
        cplx t = 1.0;
        t *= (i == 1) ? x : (i == -1 ? 1.0 / x : 1.0);
        t *= (j == 1) ? y : (j == -1 ? 1.0 / y : 1.0);
        acc += t;
    }
    return acc;
}

const char* walk_kind_name(WalkKind k) {
    switch (k) {
        case WalkKind::trivial: return "trivial";
        case WalkKind::half_plane_reducible: return "half-plane-reducible";
        case WalkKind::singular: return "singular";
        case WalkKind::non_singular: return "non-singular";
    }
    return "?";
}

KernelCoeffs kernel_coeffs(const StepSet& s, double z) {
    KernelCoeffs k;
    // K = xyz [sum x^i y^j - 1/z]; group by powers of y (resp. x).
    k.a = Poly{{z * s.delta(-1, 1), z * s.delta(0, 1), z * s.delta(1, 1)}};
    k.b = Poly{{z * s.delta(-1, 0), -1.0, z * s.delta(1, 0)}};
    k.c = Poly{{z * s.delta(-1, -1), z * s.delta(0, -1), z * s.delta(1, -1)}};
    k.at = Poly{{z * s.delta(1, -1), z * s.delta(1, 0), z * s.delta(1, 1)}};
    k.bt = Poly{{z * s.delta(0, -1), -1.0, z * s.delta(0, 1)}};
    k.ct = Poly{{z * s.delta(-1, -1), z * s.delta(-1, 0), z * s.delta(-1, 1)}};
    return k;
}

cplx kernel_eval(const StepSet& s, cplx x, cplx y, double z) {
    KernelCoeffs k = kernel_coeffs(s, z);
    return (k.a.eval(x) * y + k.b.eval(x)) * y + k.c.eval(x);
}

namespace {

// One application of eta o xi in the (x,y) coordinates.
struct Generators {
    Poly ax, cx;  // xi: y -> cx(x) / (ax(x) y)
    Poly ay, cy;  // eta: x -> cy(y) / (ay(y) x)
};

Generators make_generators(const StepSet& s) {
    Generators g;
    g.ax = Poly{{s.delta(-1, 1), s.delta(0, 1), s.delta(1, 1)}};
    g.cx = Poly{{s.delta(-1, -1), s.delta(0, -1), s.delta(1, -1)}};
    g.ay = Poly{{s.delta(1, -1), s.delta(1, 0), s.delta(1, 1)}};
    g.cy = Poly{{s.delta(-1, -1), s.delta(-1, 0), s.delta(-1, 1)}};
    return g;
}

}  // namespace

int group_order(const StepSet& s, int bound, std::uint64_t seed) {
    Generators g = make_generators(s);
    if (g.ax.degree() == 0 && g.ax.c[0] == 0.0) throw std::domain_error("degenerate generator: no north steps");
    if (g.cx.degree() == 0 && g.cx.c[0] == 0.0) throw std::domain_error("degenerate generator: no south steps");
    if (g.ay.degree() == 0 && g.ay.c[0] == 0.0) throw std::domain_error("degenerate generator: no east steps");
    if (g.cy.degree() == 0 && g.cy.c[0] == 0.0) throw std::domain_error("degenerate generator: no west steps");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const int max_m = bound / 2;

    int agreed = -2;
    for (int pt = 0; pt < 3; ++pt) {
        cplx x0, y0;
        int found = -1;
        for (int attempt = 0; attempt < 20 && found == -1; ++attempt) {
            x0 = cplx(0.9 + 0.3 * U(rng), 0.7 + 0.3 * U(rng));
            y0 = cplx(0.8 + 0.3 * U(rng), -0.6 + 0.3 * U(rng));
            cplx x = x0, y = y0;
            bool bad = false;
            for (int m = 1; m <= max_m; ++m) {
                // xi then eta
                cplx axv = g.ax.eval(x), cxv = g.cx.eval(x);
                if (std::abs(axv) < 1e-13 || std::abs(y) < 1e-13) { bad = true; break; }
                y = cxv / (axv * y);
                cplx ayv = g.ay.eval(y), cyv = g.cy.eval(y);
                if (std::abs(ayv) < 1e-13 || std::abs(x) < 1e-13) { bad = true; break; }
                x = cyv / (ayv * x);
                if (std::abs(x - x0) < 1e-9 * (1.0 + std::abs(x0)) &&
                    std::abs(y - y0) < 1e-9 * (1.0 + std::abs(y0))) {
                    found = m;
                    break;
                }
            }
            if (bad) continue;  // retry with a fresh point
            if (found == -1) found = 0;  // exceeded bound
        }
        if (agreed == -2)
            agreed = found;
        else if (agreed != found)
            throw std::runtime_error("group_order: sample points disagree");
    }
    return agreed <= 0 ? 0 : 2 * agreed;
}

Classification classify(const StepSet& s, int bound, std::uint64_t seed) {
    Classification c;
    bool south = s.has(-1, -1) || s.has(0, -1) || s.has(1, -1);
    bool west = s.has(-1, -1) || s.has(-1, 0) || s.has(-1, 1);
    if (!south && !west) {
        c.kind = WalkKind::trivial;  // neither constraint ever binds
        return c;
    }
    if (!south || !west) {
        c.kind = WalkKind::half_plane_reducible;
        return c;
    }
    if (!s.has(-1, 0) && !s.has(-1, -1) && !s.has(0, -1)) {
        c.kind = WalkKind::singular;
        return c;
    }
    c.kind = WalkKind::non_singular;
    int m = group_order(s, bound, seed);
    if (m == 0)
        c.exceeds_bound = true;
    else
        c.group_order = m;
    return c;
}

}  // namespace qwalk
