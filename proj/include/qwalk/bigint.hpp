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

#ifndef QWALK_BIGINT_HPP
#define QWALK_BIGINT_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qwalk {

// Fixed-width 384-bit unsigned integer.  Path counts grow like |S|^n <= 8^n,
// so 384 bits cover walk lengths up to 128 exactly.
struct Big384 {
    std::array<std::uint64_t, 6> limb{};  // little endian

    Big384() = default;
    explicit Big384(std::uint64_t v) { limb[0] = v; }

    bool is_zero() const {
        for (auto l : limb)
            if (l) return false;
        return true;
    }

    Big384& operator+=(const Big384& o) {
        unsigned __int128 carry = 0;
        for (size_t i = 0; i < limb.size(); ++i) {
            unsigned __int128 s = static_cast<unsigned __int128>(limb[i]) + o.limb[i] + carry;
            limb[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        if (carry) throw std::overflow_error("Big384 overflow");
        return *this;
    }

    friend Big384 operator+(Big384 a, const Big384& b) { return a += b; }

    friend bool operator==(const Big384& a, const Big384& b) { return a.limb == b.limb; }
    friend bool operator!=(const Big384& a, const Big384& b) { return !(a == b); }

    double to_double() const {
        double r = 0.0;
        for (size_t i = limb.size(); i-- > 0;) r = r * 18446744073709551616.0 + static_cast<double>(limb[i]);
        return r;
    }

    // Decimal representation (exact).
    std::string to_string() const {
        Big384 v = *this;
        if (v.is_zero()) return "0";
        std::string out;
        while (!v.is_zero()) {
            unsigned __int128 rem = 0;
            for (size_t i = v.limb.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | v.limb[i];
                v.limb[i] = static_cast<std::uint64_t>(cur / 10);
                rem = cur % 10;
            }
            out.push_back(static_cast<char>('0' + static_cast<int>(rem)));
        }
        return std::string(out.rbegin(), out.rend());
    }
};

}  // namespace qwalk

#endif  // QWALK_BIGINT_HPP
