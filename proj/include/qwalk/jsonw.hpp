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

#ifndef QWALK_JSONW_HPP
#define QWALK_JSONW_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

namespace qwalk {

// Minimal ordered JSON writer.  Numbers print with 17 significant digits so
// doubles round-trip and identical runs emit byte-identical documents.
class JsonWriter {
public:
    std::string str() const { return out_; }

    JsonWriter& begin_obj() { return emit("{"); }
    JsonWriter& end_obj() { return close("}"); }
    JsonWriter& begin_arr() { return emit("["); }
    JsonWriter& end_arr() { return close("]"); }

    JsonWriter& key(const std::string& k) {
        sep();
        out_ += '"' + k + "\":";
        fresh_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        sep();
        if (!std::isfinite(v)) {
            out_ += v > 0 ? "\"inf\"" : (v < 0 ? "\"-inf\"" : "\"nan\"");
            return *this;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ += buf;
        return *this;
    }
    JsonWriter& value(long v) {
        sep();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(int v) { return value(static_cast<long>(v)); }
    JsonWriter& value(bool v) {
        sep();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(const std::string& s) {
        sep();
        out_ += '"';
        for (char c : s) {
            if (c == '"' || c == '\\') out_ += '\\';
            out_ += c;
        }
        out_ += '"';
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& value(std::complex<double> v) {
        sep();
        out_ += "[";
        fresh_ = true;
        value(v.real());
        value(v.imag());
        out_ += "]";
        return *this;
    }

private:
    JsonWriter& emit(const char* open) {
        sep();
        out_ += open;
        fresh_ = true;
        return *this;
    }
    JsonWriter& close(const char* tok) {
        out_ += tok;
        fresh_ = false;
        return *this;
    }
    void sep() {
        if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[') out_ += ',';
        fresh_ = false;
    }

    std::string out_;
    bool fresh_ = true;
};

}  // namespace qwalk

#endif  // QWALK_JSONW_HPP
